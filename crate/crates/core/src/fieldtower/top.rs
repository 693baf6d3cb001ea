use super::{Field, FqElem, Fqm, FqmElem, PrimeField};
use crate::error::{Error, Result};
use rand::Rng;
use std::sync::Arc;

/// Largest supported degree of L over F_q^m.
pub const MAX_U: usize = 8;

/// Element of L: `u` coefficients over F_q^m in the power basis of `mod_L`,
/// constant term first. Slots at index `>= u` are always zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LElem {
    pub c: [FqmElem; MAX_U],
}

impl LElem {
    pub fn from_coeffs(c: &[FqmElem]) -> Self {
        let mut e = LElem::default();
        e.c[..c.len()].copy_from_slice(c);
        e
    }
}

/// The top field L = F_q^m[Y] / (mod_L), of degree `u` over F_q^m.
#[derive(Clone, Debug)]
pub struct LField {
    base: Arc<Fqm>,
    u: usize,
    modulus: Vec<FqmElem>,
    // conj[i][j] = (Y^j)^(Q^i) with Q = q^m
    conj: Vec<Vec<LElem>>,
    // Tr_{L/F_q^m}(Y^j)
    trace_basis: Vec<FqmElem>,
}

impl LField {
    /// `modulus` holds the `u + 1` coefficients of a monic polynomial over
    /// F_q^m, constant term first. Irreducibility is checked by the tower.
    pub fn new(base: Arc<Fqm>, modulus: &[FqmElem]) -> Result<Self> {
        let u = modulus.len().saturating_sub(1);
        if u < 2 {
            return Err(Error::DegreeTooSmall { m: base.m(), u });
        }
        if u > MAX_U {
            return Err(Error::TowerTooLarge(format!("u = {u} exceeds {MAX_U}")));
        }
        if modulus[u] != base.one() {
            return Err(Error::ParamViolation("mod_L must be monic".into()));
        }
        let mut l = LField {
            base,
            u,
            modulus: modulus.to_vec(),
            conj: Vec::new(),
            trace_basis: Vec::new(),
        };
        let basis: Vec<LElem> = (0..u).map(|j| l.monomial(j)).collect();
        let order = l.base.order();
        let first: Vec<LElem> = basis.iter().map(|&b| l.pow(b, order)).collect();
        let mut conj = vec![basis, first.clone()];
        for i in 2..u {
            let next = conj[i - 1].iter().map(|&x| l.apply_table(&first, x)).collect();
            conj.push(next);
        }
        l.conj = conj;
        l.trace_basis = (0..u)
            .map(|j| {
                let t = (0..u).fold(l.zero(), |acc, i| l.add(acc, l.conj[i][j]));
                debug_assert!(t.c[1..].iter().all(|x| x.0 == 0));
                t.c[0]
            })
            .collect();
        Ok(l)
    }

    fn apply_table(&self, table: &[LElem], x: LElem) -> LElem {
        let mut acc = self.zero();
        for (j, t) in table.iter().enumerate() {
            if x.c[j].0 != 0 {
                acc = self.add(acc, self.scale_fqm(*t, x.c[j]));
            }
        }
        acc
    }

    pub fn base(&self) -> &Fqm {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<Fqm> {
        &self.base
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn modulus(&self) -> &[FqmElem] {
        &self.modulus
    }

    pub fn monomial(&self, j: usize) -> LElem {
        assert!(j < self.u);
        let mut e = LElem::default();
        e.c[j] = self.base.one();
        e
    }

    pub fn embed(&self, a: FqmElem) -> LElem {
        let mut e = LElem::default();
        e.c[0] = a;
        e
    }

    pub fn coeffs(&self, a: LElem) -> Vec<FqmElem> {
        a.c[..self.u].to_vec()
    }

    /// `a * s` for `s` in F_q^m.
    pub fn scale_fqm(&self, a: LElem, s: FqmElem) -> LElem {
        let mut r = LElem::default();
        for j in 0..self.u {
            r.c[j] = self.base.mul(a.c[j], s);
        }
        r
    }

    /// a^(Q^i) with Q = q^m (the F_q^m-linear Frobenius of L).
    pub fn frobenius_qm(&self, a: LElem, i: usize) -> LElem {
        let i = i % self.u;
        if i == 0 {
            return a;
        }
        self.apply_table(&self.conj[i], a)
    }

    /// Tr_{L/F_q^m}(a) = sum of a^(Q^j), j = 0..u-1.
    pub fn trace(&self, a: LElem) -> FqmElem {
        let f = &*self.base;
        let mut acc = f.zero();
        for j in 0..self.u {
            if a.c[j].0 != 0 {
                acc = f.add(acc, f.mul(a.c[j], self.trace_basis[j]));
            }
        }
        acc
    }
}

impl Field for LField {
    type Elem = LElem;

    fn zero(&self) -> LElem {
        LElem::default()
    }

    fn one(&self) -> LElem {
        self.embed(self.base.one())
    }

    fn add(&self, a: LElem, b: LElem) -> LElem {
        let mut r = LElem::default();
        for j in 0..self.u {
            r.c[j] = self.base.add(a.c[j], b.c[j]);
        }
        r
    }

    fn neg(&self, a: LElem) -> LElem {
        let mut r = LElem::default();
        for j in 0..self.u {
            r.c[j] = self.base.neg(a.c[j]);
        }
        r
    }

    fn mul(&self, a: LElem, b: LElem) -> LElem {
        let f = &*self.base;
        let u = self.u;
        let mut prod = [FqmElem(0); 2 * MAX_U];
        for i in 0..u {
            if a.c[i].0 == 0 {
                continue;
            }
            for j in 0..u {
                if b.c[j].0 != 0 {
                    prod[i + j] = f.add(prod[i + j], f.mul(a.c[i], b.c[j]));
                }
            }
        }
        for d in (u..2 * u - 1).rev() {
            let c = prod[d];
            if c.0 == 0 {
                continue;
            }
            prod[d] = FqmElem(0);
            for j in 0..u {
                prod[d - u + j] = f.sub(prod[d - u + j], f.mul(c, self.modulus[j]));
            }
        }
        LElem::from_coeffs(&prod[..u])
    }

    /// Norm-based inversion: a^-1 = (a^Q ... a^(Q^(u-1))) / N(a).
    fn inv(&self, a: LElem) -> Result<LElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let mut rest = self.one();
        for i in 1..self.u {
            rest = self.mul(rest, self.frobenius_qm(a, i));
        }
        let norm = self.mul(a, rest);
        debug_assert!(norm.c[1..].iter().all(|x| x.0 == 0));
        let ninv = self.base.inv(norm.c[0])?;
        Ok(self.scale_fqm(rest, ninv))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> LElem {
        let mut e = LElem::default();
        for j in 0..self.u {
            e.c[j] = self.base.random(rng);
        }
        e
    }

    fn prime_degree(&self) -> usize {
        self.u * self.base.m()
    }

    fn prime_coords(&self, a: LElem) -> Vec<FqElem> {
        let mut v = Vec::with_capacity(self.prime_degree());
        for j in 0..self.u {
            v.extend(self.base.digits(a.c[j]));
        }
        v
    }

    fn from_prime_coords(&self, c: &[FqElem]) -> LElem {
        let m = self.base.m();
        let mut e = LElem::default();
        for j in 0..self.u {
            e.c[j] = self.base.pack(&c[j * m..(j + 1) * m]);
        }
        e
    }

    fn scale(&self, a: LElem, c: FqElem) -> LElem {
        let mut r = LElem::default();
        for j in 0..self.u {
            r.c[j] = self.base.scale(a.c[j], c);
        }
        r
    }

    fn embed_prime(&self, c: FqElem) -> LElem {
        self.embed(self.base.embed(c))
    }

    fn prime_field(&self) -> PrimeField {
        *self.base.base()
    }
}
