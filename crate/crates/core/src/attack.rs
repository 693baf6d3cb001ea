//! Polynomial-time recovery of an equivalent private key from the public key.

use crate::error::{Error, Result};
use crate::fieldtower::{dual_basis, Basis, Field, FqElem, FqmElem, LElem};
use crate::flpke::{self, PublicKey};
use crate::matrix::{self, Matrix};
use crate::ranklin::{self, CodeFqm, LinearCode};
use std::time::{Duration, Instant};

/// ⌊u (n - k) / (u + 1)⌋, the largest `w` the attack handles.
pub fn bound(n: usize, k: usize, u: usize) -> usize {
    u * n.saturating_sub(k) / (u + 1)
}

/// u (n - w - k) >= w, in exact integer arithmetic.
pub fn precondition_check(n: usize, k: usize, u: usize, w: usize) -> bool {
    k + w <= n && u * (n - w - k) >= w
}

/// The public code spanned by G and the trace projections of K.
#[derive(Clone, Debug)]
pub struct PublicCodeBundle {
    pub gammas: Basis<LElem>,
    /// K_i = Tr(gamma_i K)
    pub k_rows: Vec<Vec<FqmElem>>,
    /// G on top, then K_1 .. K_u.
    pub g_pub: Matrix<FqmElem>,
}

impl PublicCodeBundle {
    pub fn code(&self, pk: &PublicKey) -> CodeFqm {
        LinearCode::from_generator(pk.tower.fqm(), &self.g_pub)
    }
}

pub fn build_public_code(pk: &PublicKey, gammas: &Basis<LElem>) -> Result<PublicCodeBundle> {
    let l = pk.tower.l();
    dual_basis(l, gammas)?;
    let k_rows: Vec<Vec<FqmElem>> = gammas.elems.iter().map(|&g| flpke::trace_vec(&pk.tower, g, &pk.big_k)).collect();
    let g = pk.gen_matrix()?;
    let g_pub = g.vstack(&Matrix::from_rows(pk.n(), &k_rows));
    Ok(PublicCodeBundle { gammas: gammas.clone(), k_rows, g_pub })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackResult {
    pub x: Vec<LElem>,
    pub z: Vec<LElem>,
    /// T in GL_n(F_q) with z T = (z* | 0).
    pub t: Matrix<FqElem>,
    pub h_tilde: Vec<FqmElem>,
    pub dual_dim: usize,
    pub lambda_dim: usize,
    pub elapsed: Duration,
}

pub fn recover_key(pk: &PublicKey) -> Result<AttackResult> {
    recover_key_with_basis(pk, &Basis::power(pk.tower.l()))
}

pub fn recover_key_with_basis(pk: &PublicKey, gammas: &Basis<LElem>) -> Result<AttackResult> {
    let start = Instant::now();
    let (fq, f, l) = (pk.tower.fq(), pk.tower.fqm(), pk.tower.l());
    let (n, k, w) = (pk.n(), pk.k, pk.w);
    if k + w >= n {
        return Err(Error::ParamViolation(format!("need k + w < n, got k = {k}, w = {w}, n = {n}")));
    }
    let bundle = build_public_code(pk, gammas)?;
    let depth = n - w - k - 1;
    let space = ranklin::lambda_space(f, &bundle.g_pub, depth, |_| {});
    let lambda = LinearCode::from_space(&space);
    let dual = ranklin::dual_code(f, &lambda);
    if dual.dim() != 1 {
        return Err(Error::DualDimNotOne(dual.dim()));
    }
    let h_tilde = dual.generator().row(0).to_vec();
    let (s, w_found) = ranklin::zeroing_transform(f, &h_tilde)?;
    if w_found != w {
        return Err(Error::SupportMismatch { expected: w, found: w_found });
    }
    let t = matrix::inverse(fq, &s.transpose())?;
    let g = pk.gen_matrix()?;
    let g_star = ranklin::mat_times_fq(f, &g, &t);
    let k_star = ranklin::apply_fq_matrix(l, &pk.big_k, &t);
    // (n - w) x k system: column j of G* gives the equation for K*_j.
    let a = g_star.select_cols(w..n).transpose();
    let rank = matrix::rank(f, &a);
    if rank < k {
        return Err(Error::RankDeficient { rank, cols: k });
    }
    let a_l = a.map(|c| l.embed(c));
    let x = matrix::solve_unique(l, &a_l, &k_star[w..])?;
    let xg = flpke::lift_mul(&pk.tower, &x, &g);
    let z = pk.big_k.iter().zip(&xg).map(|(&a, &b)| l.sub(a, b)).collect();
    Ok(AttackResult {
        x,
        z,
        t,
        h_tilde,
        dual_dim: dual.dim(),
        lambda_dim: lambda.dim(),
        elapsed: start.elapsed(),
    })
}

/// Checks K = x G + z, rank(z) = w and z T = (z* | 0) with rank(z*) = w.
pub fn verify_equivalent_key(pk: &PublicKey, res: &AttackResult) -> bool {
    let l = pk.tower.l();
    let (n, w) = (pk.n(), pk.w);
    if res.x.len() != pk.k || res.z.len() != n || res.t.rows() != n || res.t.cols() != n {
        return false;
    }
    let Ok(g) = pk.gen_matrix() else { return false };
    let xg = flpke::lift_mul(&pk.tower, &res.x, &g);
    if (0..n).any(|j| l.add(xg[j], res.z[j]) != pk.big_k[j]) {
        return false;
    }
    if ranklin::rank_weight(l, &res.z) != w {
        return false;
    }
    if matrix::rank(pk.tower.fq(), &res.t) != n {
        return false;
    }
    let zt = ranklin::apply_fq_matrix(l, &res.z, &res.t);
    zt[w..].iter().all(|&v| l.is_zero(v)) && ranklin::rank_weight(l, &zt[..w]) == w
}

/// A scrambler `P'` with `z P' = (z* | 0)`, built from the zeroing
/// transform of `z` with its columns reversed.
pub fn support_transform(pk: &PublicKey, z: &[LElem]) -> Result<Matrix<FqElem>> {
    let l = pk.tower.l();
    let (s, zeros) = ranklin::zeroing_transform(l, z)?;
    let n = pk.n();
    if n - zeros != pk.w {
        return Err(Error::SupportMismatch { expected: pk.w, found: n - zeros });
    }
    Ok(s.select_cols((0..n).rev()))
}

/// Decrypts with the recovered key only.
pub fn attacker_decrypt(res: &AttackResult, pk: &PublicKey, c: &[FqmElem]) -> Result<Vec<FqmElem>> {
    let p = support_transform(pk, &res.z)?;
    flpke::decrypt_with(pk, &res.x, &p, c)
}

/// Rows `(i, dim Λ_i(code))` for `i = 0..=max_i`.
pub fn distinguisher_report(f: &crate::fieldtower::Fqm, code: &CodeFqm, max_i: usize) -> Vec<(usize, usize)> {
    ranklin::lambda_dims(f, code, max_i).into_iter().enumerate().collect()
}

pub const REPORT_HEADER: &str = "n,k,u,w,bound,dual_dim,success,elapsed_ms,verified";

/// One line of the attack CSV report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub n: usize,
    pub k: usize,
    pub u: usize,
    pub w: usize,
    pub bound: usize,
    pub dual_dim: usize,
    pub success: bool,
    pub elapsed_ms: u128,
    pub verified: bool,
}

impl ReportRow {
    pub fn new(pk: &PublicKey, outcome: &Result<AttackResult>, elapsed: Duration) -> Self {
        let u = pk.tower.u();
        let (dual_dim, success, verified) = match outcome {
            Ok(r) => (r.dual_dim, true, verify_equivalent_key(pk, r)),
            Err(Error::DualDimNotOne(d)) => (*d, false, false),
            Err(_) => (0, false, false),
        };
        ReportRow {
            n: pk.n(),
            k: pk.k,
            u,
            w: pk.w,
            bound: bound(pk.n(), pk.k, u),
            dual_dim,
            success,
            elapsed_ms: elapsed.as_millis(),
            verified,
        }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.u,
            self.w,
            self.bound,
            self.dual_dim,
            self.success,
            self.elapsed_ms,
            self.verified
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::Tower;
    use crate::flpke::{keygen_with, KeygenHooks};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn key(n: usize, k: usize, u: usize, w: usize, seed: u64) -> (PublicKey, flpke::PrivateKey) {
        let tower = Tower::build(2, n, u, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
        keygen_with(&tower, n, k, w, KeygenHooks::default(), &mut rng).unwrap()
    }

    #[test]
    fn bounds_match_table() {
        assert_eq!(bound(56, 28, 3), 21);
        assert_eq!(bound(54, 32, 4), 17);
        assert!(precondition_check(56, 28, 3, 16));
        assert!(precondition_check(54, 32, 4, 13));
        assert!(!precondition_check(56, 28, 3, 22));
        for w in 0..28 {
            assert_eq!(precondition_check(56, 28, 3, w), w <= 21);
        }
    }

    #[test]
    fn recovers_planted_key() {
        let (pk, sk) = key(20, 6, 2, 9, 1);
        let res = recover_key(&pk).unwrap();
        assert_eq!(res.dual_dim, 1);
        assert_eq!(res.lambda_dim, 19);
        assert_eq!(res.x, sk.x);
        assert_eq!(res.z, sk.z);
        assert!(verify_equivalent_key(&pk, &res));
        assert_eq!(ranklin::rank_weight(pk.tower.fqm(), &res.h_tilde), 20 - 9);
    }

    #[test]
    fn h_tilde_exposes_support() {
        let (pk, sk) = key(20, 6, 2, 9, 3);
        let res = recover_key(&pk).unwrap();
        let f = pk.tower.fqm();
        let p_inv_t = matrix::inverse(pk.tower.fq(), &sk.p).unwrap().transpose();
        let h = ranklin::apply_fq_matrix(f, &res.h_tilde, &p_inv_t);
        assert!(h[..9].iter().all(|&v| f.is_zero(v)));
        assert_eq!(ranklin::rank_weight(f, &h[9..]), 11);
    }

    #[test]
    fn perturbed_key_fails_verification() {
        let (pk, _) = key(20, 6, 2, 9, 2);
        let mut res = recover_key(&pk).unwrap();
        let l = pk.tower.l();
        res.x[0] = l.add(res.x[0], l.one());
        assert!(!verify_equivalent_key(&pk, &res));
    }

    #[test]
    fn attacker_matches_owner() {
        let (pk, sk) = key(20, 6, 2, 9, 4);
        let res = recover_key(&pk).unwrap();
        let f = pk.tower.fqm();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let msg: Vec<FqmElem> = (0..6).map(|i| if i < 4 { f.random(&mut rng) } else { f.zero() }).collect();
            let c = flpke::encrypt(&pk, &msg, &mut rng).unwrap();
            assert_eq!(attacker_decrypt(&res, &pk, &c).unwrap(), msg);
            assert_eq!(flpke::decrypt(&sk, &pk, &c).unwrap(), msg);
        }
    }

    #[test]
    fn basis_choice_is_irrelevant() {
        let (pk, _) = key(20, 6, 2, 9, 5);
        let l = pk.tower.l();
        let base = recover_key(&pk).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut tried = 0;
        while tried < 5 {
            let b = Basis::new(l, (0..2).map(|_| l.random(&mut rng)).collect());
            if dual_basis(l, &b).is_err() {
                continue;
            }
            tried += 1;
            assert_eq!(recover_key_with_basis(&pk, &b).unwrap().x, base.x);
        }
    }

    #[test]
    fn violated_bound_is_detected() {
        let (pk, _) = key(20, 6, 2, 10, 7);
        assert!(!precondition_check(20, 6, 2, 10));
        assert!(matches!(recover_key(&pk), Err(Error::DualDimNotOne(d)) if d > 1));
    }

    #[test]
    fn zero_z_gives_gabidulin_public_code() {
        let tower = Tower::build(2, 12, 2, 1).unwrap();
        let f = tower.fqm();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (pk, _) = keygen_with(&tower, 12, 4, 5, KeygenHooks::default(), &mut rng).unwrap();
        let mut pk0 = pk.clone();
        let g = pk.gen_matrix().unwrap();
        let x: Vec<LElem> = (0..4).map(|_| tower.l().random(&mut rng)).collect();
        pk0.big_k = flpke::lift_mul(&tower, &x, &g);
        let bundle = build_public_code(&pk0, &Basis::power(tower.l())).unwrap();
        assert_eq!(bundle.g_pub.select_rows(0..4), g);
        assert_eq!(bundle.code(&pk0), LinearCode::from_generator(f, &g));
    }

    #[test]
    fn report_row_format() {
        let (pk, _) = key(20, 6, 2, 9, 1);
        let out = recover_key(&pk);
        let row = ReportRow::new(&pk, &out, Duration::from_millis(7));
        assert_eq!(row.to_csv(), "20,6,2,9,9,1,true,7,true");
        assert_eq!(REPORT_HEADER.split(',').count(), 9);
    }
}
