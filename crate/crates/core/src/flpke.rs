//! The trace-hidden Gabidulin encryption scheme: key generation, encryption
//! and decryption.

use crate::error::{Error, Result};
use crate::fieldtower::{dual_basis, Basis, Field, FqElem, FqmElem, LElem, Tower, TowerParams};
use crate::gabidulin::{sample_rank_error, GabCode};
use crate::matrix::{self, Matrix};
use crate::ranklin;
use rand::Rng;

/// Code parameters on top of a field tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeParams {
    pub tower: TowerParams,
    pub n: usize,
    pub k: usize,
    pub w: usize,
}

/// Public error budget ⌊(n - w - k)/2⌋ (zero when negative).
pub fn t_pub(n: usize, k: usize, w: usize) -> usize {
    n.saturating_sub(w + k) / 2
}

/// One checked inequality of a parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: &'static str,
    pub holds: bool,
}

/// Outcome of [`validate_params`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamReport {
    pub n: usize,
    pub k: usize,
    pub u: usize,
    pub w: usize,
    pub constraints: Vec<Constraint>,
    pub t_pub: usize,
    /// ⌊u (n - k) / (u + 1)⌋
    pub bound: usize,
    /// Whether u (n - w - k) >= w, i.e. the key-recovery attack applies.
    pub vulnerable: bool,
}

impl ParamReport {
    pub fn valid(&self) -> bool {
        self.constraints.iter().all(|c| c.holds)
    }

    pub fn first_violation(&self) -> Option<&'static str> {
        self.constraints.iter().find(|c| !c.holds).map(|c| c.name)
    }
}

/// Checks the scheme inequalities for `(n, k, u, w)` with F_q^m of degree `m`.
pub fn validate_params(m: usize, n: usize, k: usize, u: usize, w: usize) -> ParamReport {
    let nk = n.saturating_sub(k);
    let constraints = vec![
        Constraint { name: "u > 1", holds: u > 1 },
        Constraint { name: "u < k", holds: u < k },
        Constraint { name: "k < n", holds: k < n },
        Constraint { name: "n <= m", holds: n <= m },
        Constraint { name: "w < n - k", holds: k < n && w < nk },
        Constraint { name: "w > (n - k)/2", holds: w > nk / 2 },
    ];
    let vulnerable = k + w <= n && u * (n - w - k) >= w;
    ParamReport {
        n,
        k,
        u,
        w,
        constraints,
        t_pub: t_pub(n, k, w),
        bound: crate::attack::bound(n, k, u),
        vulnerable,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    pub tower: Tower,
    pub g: Vec<FqmElem>,
    pub k: usize,
    pub w: usize,
    pub big_k: Vec<LElem>,
    pub t_pub: usize,
}

impl PublicKey {
    pub fn n(&self) -> usize {
        self.g.len()
    }

    pub fn code(&self) -> Result<GabCode> {
        GabCode::new(self.tower.fqm(), self.g.clone(), self.k)
    }

    pub fn gen_matrix(&self) -> Result<Matrix<FqmElem>> {
        Ok(self.code()?.gen_matrix(self.tower.fqm()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrivateKey {
    pub x: Vec<LElem>,
    pub p: Matrix<FqElem>,
    pub s: Vec<LElem>,
    pub z: Vec<LElem>,
}

/// Overrides for the random choices of key generation.
#[derive(Clone, Debug, Default)]
pub struct KeygenHooks {
    pub g: Option<Vec<FqmElem>>,
    pub x: Option<Vec<LElem>>,
    pub s: Option<Vec<LElem>>,
    pub p: Option<Matrix<FqElem>>,
}

pub fn keygen<R: Rng + ?Sized>(params: &SchemeParams, rng: &mut R) -> Result<(PublicKey, PrivateKey)> {
    let tower = Tower::from_params(&params.tower)?;
    keygen_with(&tower, params.n, params.k, params.w, KeygenHooks::default(), rng)
}

/// Key generation over an existing tower, with optional injected values.
pub fn keygen_with<R: Rng + ?Sized>(
    tower: &Tower,
    n: usize,
    k: usize,
    w: usize,
    hooks: KeygenHooks,
    rng: &mut R,
) -> Result<(PublicKey, PrivateKey)> {
    let (fqm, l) = (tower.fqm(), tower.l());
    let u = tower.u();
    let report = validate_params(tower.m(), n, k, u, w);
    if let Some(v) = report.first_violation() {
        return Err(Error::ParamViolation(format!("{v} fails for (n, k, u, w) = ({n}, {k}, {u}, {w})")));
    }
    let g = match hooks.g {
        Some(g) => g,
        None => ranklin::random_full_rank_vector(fqm, n, rng)?,
    };
    let code = GabCode::new(fqm, g.clone(), k)?;
    let gm = code.gen_matrix(fqm);
    let x = match hooks.x {
        Some(x) => {
            if x.len() != k {
                return Err(Error::BadLength { expected: k, got: x.len() });
            }
            tail_dual(tower, &x, k)?;
            x
        }
        None => loop {
            let x: Vec<LElem> = (0..k).map(|_| l.random(rng)).collect();
            if tail_dual(tower, &x, k).is_ok() {
                break x;
            }
        },
    };
    let s = match hooks.s {
        Some(s) => s,
        None => ranklin::random_rank_vector(l, w, w, rng)?,
    };
    if s.len() != w || ranklin::rank_weight(l, &s) != w {
        return Err(Error::ParamViolation(format!("s must have length and rank weight {w}")));
    }
    let p = match hooks.p {
        Some(p) => p,
        None => ranklin::random_invertible(tower.fq(), n, rng),
    };
    let p_inv = matrix::inverse(tower.fq(), &p)?;
    let mut padded = s.clone();
    padded.resize(n, l.zero());
    let z = ranklin::apply_fq_matrix(l, &padded, &p_inv);
    let xg = lift_mul(tower, &x, &gm);
    let big_k: Vec<LElem> = xg.iter().zip(&z).map(|(&a, &b)| l.add(a, b)).collect();
    debug_assert_eq!(ranklin::rank_weight(l, &z), w);
    let pk = PublicKey { tower: tower.clone(), g, k, w, big_k, t_pub: report.t_pub };
    let sk = PrivateKey { x, p, s, z };
    Ok((pk, sk))
}

/// `x * G` for `x` over L and `G` over F_q^m.
pub fn lift_mul(tower: &Tower, x: &[LElem], g: &Matrix<FqmElem>) -> Vec<LElem> {
    let l = tower.l();
    let mut out = vec![l.zero(); g.cols()];
    for (i, &xi) in x.iter().enumerate() {
        if l.is_zero(xi) {
            continue;
        }
        for (o, &gij) in out.iter_mut().zip(g.row(i)) {
            if gij.0 != 0 {
                *o = l.add(*o, l.scale_fqm(xi, gij));
            }
        }
    }
    out
}

/// Coordinatewise Tr_{L/F_q^m}(alpha * v).
pub fn trace_vec(tower: &Tower, alpha: LElem, v: &[LElem]) -> Vec<FqmElem> {
    let l = tower.l();
    v.iter().map(|&x| l.trace(l.mul(alpha, x))).collect()
}

/// Dual basis of the last `u` entries of `x`.
fn tail_dual(tower: &Tower, x: &[LElem], k: usize) -> Result<Basis<LElem>> {
    let l = tower.l();
    let tail = Basis::new(l, x[k - tower.u()..k].to_vec());
    dual_basis(l, &tail)
}

fn check_plaintext(pk: &PublicKey, msg: &[FqmElem]) -> Result<()> {
    if msg.len() != pk.k {
        return Err(Error::BadLength { expected: pk.k, got: msg.len() });
    }
    if msg[pk.k - pk.tower.u()..].iter().any(|x| x.0 != 0) {
        return Err(Error::BadPlaintext);
    }
    Ok(())
}

/// Encrypts with a fresh `alpha` and an error of rank weight exactly `t_pub`.
pub fn encrypt<R: Rng + ?Sized>(pk: &PublicKey, msg: &[FqmElem], rng: &mut R) -> Result<Vec<FqmElem>> {
    encrypt_with_weight(pk, msg, pk.t_pub, rng)
}

pub fn encrypt_with_weight<R: Rng + ?Sized>(
    pk: &PublicKey,
    msg: &[FqmElem],
    weight: usize,
    rng: &mut R,
) -> Result<Vec<FqmElem>> {
    check_plaintext(pk, msg)?;
    let alpha = pk.tower.l().random(rng);
    let e = sample_rank_error(pk.tower.fqm(), pk.n(), weight, rng)?;
    encrypt_with(pk, msg, alpha, &e)
}

/// c = m G + Tr(alpha K) + e with caller-chosen `alpha` and `e`.
pub fn encrypt_with(pk: &PublicKey, msg: &[FqmElem], alpha: LElem, e: &[FqmElem]) -> Result<Vec<FqmElem>> {
    check_plaintext(pk, msg)?;
    if e.len() != pk.n() {
        return Err(Error::BadLength { expected: pk.n(), got: e.len() });
    }
    let f = pk.tower.fqm();
    let mg = matrix::vec_mul(f, msg, &pk.gen_matrix()?);
    let tr = trace_vec(&pk.tower, alpha, &pk.big_k);
    Ok((0..pk.n()).map(|j| f.add(f.add(mg[j], tr[j]), e[j])).collect())
}

pub fn decrypt(sk: &PrivateKey, pk: &PublicKey, c: &[FqmElem]) -> Result<Vec<FqmElem>> {
    decrypt_with(pk, &sk.x, &sk.p, c)
}

/// Decryption from any `(x, P)` such that `z P` vanishes outside its first
/// `w` coordinates.
pub fn decrypt_with(pk: &PublicKey, x: &[LElem], p: &Matrix<FqElem>, c: &[FqmElem]) -> Result<Vec<FqmElem>> {
    let (n, k, w) = (pk.n(), pk.k, pk.w);
    if c.len() != n {
        return Err(Error::BadLength { expected: n, got: c.len() });
    }
    let (f, l) = (pk.tower.fqm(), pk.tower.l());
    let cp = ranklin::apply_fq_matrix(f, c, p);
    let gp = ranklin::apply_fq_matrix(f, &pk.g, p);
    let punctured = GabCode::new(f, gp[w..].to_vec(), k)?;
    let (m_prime, _) = punctured.decode(f, &cp[w..])?;
    let dual = tail_dual(&pk.tower, x, k)?;
    let tail = &m_prime[k - pk.tower.u()..];
    let alpha = tail
        .iter()
        .zip(&dual.elems)
        .fold(l.zero(), |acc, (&mi, &xs)| l.add(acc, l.scale_fqm(xs, mi)));
    let tr = trace_vec(&pk.tower, alpha, x);
    Ok(m_prime.iter().zip(&tr).map(|(&a, &b)| f.sub(a, b)).collect())
}
