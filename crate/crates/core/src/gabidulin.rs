//! Linearized polynomials over F_q^m and Gabidulin codes.

use crate::error::{Error, Result};
use crate::fieldtower::{Field, Fqm, FqmElem};
use crate::matrix::{self, Matrix};
use crate::ranklin::{self, CodeFqm, LinearCode};
use rand::Rng;

/// A q-linearized polynomial `sum coeffs[i] X^(q^i)`, stored without
/// trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinPoly {
    coeffs: Vec<FqmElem>,
}

impl LinPoly {
    pub fn zero() -> Self {
        LinPoly { coeffs: Vec::new() }
    }

    /// The identity map `X`.
    pub fn identity(f: &Fqm) -> Self {
        LinPoly { coeffs: vec![f.one()] }
    }

    pub fn monomial(f: &Fqm, c: FqmElem, i: usize) -> Self {
        let mut coeffs = vec![f.zero(); i + 1];
        coeffs[i] = c;
        LinPoly::new(f, coeffs)
    }

    pub fn new(f: &Fqm, mut coeffs: Vec<FqmElem>) -> Self {
        while coeffs.last().is_some_and(|&c| f.is_zero(c)) {
            coeffs.pop();
        }
        LinPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[FqmElem] {
        &self.coeffs
    }

    /// Coefficients padded with zeros (or truncated) to `len`.
    pub fn coeffs_padded(&self, len: usize) -> Vec<FqmElem> {
        let mut c = self.coeffs.clone();
        c.resize(len, FqmElem(0));
        c
    }

    /// q-degree, `None` for the zero polynomial.
    pub fn qdeg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, f: &Fqm, x: FqmElem) -> FqmElem {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.0 != 0)
            .fold(f.zero(), |acc, (i, &c)| f.add(acc, f.mul(c, f.frobenius(x, i))))
    }

    pub fn add(&self, f: &Fqm, other: &LinPoly) -> LinPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let a = self.coeffs_padded(n);
        let b = other.coeffs_padded(n);
        LinPoly::new(f, a.iter().zip(&b).map(|(&x, &y)| f.add(x, y)).collect())
    }

    pub fn sub(&self, f: &Fqm, other: &LinPoly) -> LinPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let a = self.coeffs_padded(n);
        let b = other.coeffs_padded(n);
        LinPoly::new(f, a.iter().zip(&b).map(|(&x, &y)| f.sub(x, y)).collect())
    }

    /// The composition `self ∘ other`. Exponents wrap modulo m, since
    /// X^(q^m) acts as X on F_q^m.
    pub fn compose(&self, f: &Fqm, other: &LinPoly) -> LinPoly {
        if self.is_zero() || other.is_zero() {
            return LinPoly::zero();
        }
        let m = f.m();
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(m);
        let mut c = vec![f.zero(); len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if !f.is_zero(b) {
                    let d = (i + j) % m;
                    c[d] = f.add(c[d], f.mul(a, f.frobenius(b, i)));
                }
            }
        }
        LinPoly::new(f, c)
    }

    /// Left division: `(quo, rem)` with `self = divisor ∘ quo + rem` and
    /// `qdeg(rem) < qdeg(divisor)`.
    pub fn left_divide(&self, f: &Fqm, divisor: &LinPoly) -> Result<(LinPoly, LinPoly)> {
        let db = divisor.qdeg().ok_or(Error::DivisorZero)?;
        let lead_inv = f.inv(divisor.coeffs[db])?;
        let mut rem = self.clone();
        let mut quo = vec![f.zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(da) = rem.qdeg() {
            if da < db {
                break;
            }
            let d = da - db;
            let c = f.frobenius_inv(f.mul(rem.coeffs[da], lead_inv), db);
            quo[d] = c;
            let term = divisor.compose(f, &LinPoly::monomial(f, c, d));
            rem = rem.sub(f, &term);
            debug_assert!(rem.qdeg().is_none_or(|r| r < da));
        }
        Ok((LinPoly::new(f, quo), rem))
    }
}

/// The Gabidulin code of dimension `k` with support `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabCode {
    g: Vec<FqmElem>,
    k: usize,
}

impl GabCode {
    pub fn new(f: &Fqm, g: Vec<FqmElem>, k: usize) -> Result<Self> {
        let n = g.len();
        if n > f.m() {
            return Err(Error::LengthExceedsDegree { n, m: f.m() });
        }
        if k == 0 || k >= n {
            return Err(Error::ParamViolation(format!("need 0 < k < n, got k = {k}, n = {n}")));
        }
        let r = ranklin::rank_weight(f, &g);
        if r != n {
            return Err(Error::RankDeficient { rank: r, cols: n });
        }
        Ok(GabCode { g, k })
    }

    pub fn random<R: Rng + ?Sized>(f: &Fqm, n: usize, k: usize, rng: &mut R) -> Result<Self> {
        let g = ranklin::random_full_rank_vector(f, n, rng)?;
        GabCode::new(f, g, k)
    }

    pub fn support(&self) -> &[FqmElem] {
        &self.g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.g.len()
    }

    /// Correction radius ⌊(n - k)/2⌋.
    pub fn radius(&self) -> usize {
        (self.n() - self.k) / 2
    }

    /// The Moore matrix with rows g, g^q, ..., g^(q^(k-1)).
    pub fn gen_matrix(&self, f: &Fqm) -> Matrix<FqmElem> {
        let rows: Vec<Vec<FqmElem>> =
            (0..self.k).map(|i| ranklin::frobenius_vec(f, &self.g, i)).collect();
        Matrix::from_rows(self.n(), &rows)
    }

    pub fn code(&self, f: &Fqm) -> CodeFqm {
        LinearCode::from_generator(f, &self.gen_matrix(f))
    }

    pub fn encode(&self, f: &Fqm, msg: &[FqmElem]) -> Result<Vec<FqmElem>> {
        if msg.len() != self.k {
            return Err(Error::BadLength { expected: self.k, got: msg.len() });
        }
        Ok(matrix::vec_mul(f, msg, &self.gen_matrix(f)))
    }

    /// Evaluates the message polynomial at every support coordinate.
    pub fn encode_poly(&self, f: &Fqm, p: &LinPoly) -> Result<Vec<FqmElem>> {
        if p.coeffs().len() > self.k {
            return Err(Error::BadLength { expected: self.k, got: p.coeffs().len() });
        }
        Ok(self.g.iter().map(|&x| p.eval(f, x)).collect())
    }

    pub fn decode(&self, f: &Fqm, r: &[FqmElem]) -> Result<(Vec<FqmElem>, Vec<FqmElem>)> {
        self.decode_with_radius(f, r, self.radius())
    }

    /// Reconstruction decoder: finds `V` (q-degree ≤ t) and `N` (q-degree
    /// < k + t) with `V(r_j) = N(g_j)`, then `f = V \ N`.
    pub fn decode_with_radius(
        &self,
        f: &Fqm,
        r: &[FqmElem],
        t: usize,
    ) -> Result<(Vec<FqmElem>, Vec<FqmElem>)> {
        let (n, k) = (self.n(), self.k);
        if r.len() != n {
            return Err(Error::BadLength { expected: n, got: r.len() });
        }
        if t > self.radius() {
            return Err(Error::WeightTooLarge { t, max: self.radius() });
        }
        let nv = t + 1;
        let nn = k + t;
        let mut sys = Matrix::filled(n, nv + nn, f.zero());
        for j in 0..n {
            let mut rp = r[j];
            for a in 0..nv {
                sys.set(j, a, rp);
                rp = f.frobenius(rp, 1);
            }
            let mut gp = self.g[j];
            for b in 0..nn {
                sys.set(j, nv + b, f.neg(gp));
                gp = f.frobenius(gp, 1);
            }
        }
        let ker = matrix::right_kernel(f, &sys);
        let sol = ker.first().ok_or(Error::DecodingFailure)?;
        let v = LinPoly::new(f, sol[..nv].to_vec());
        let nume = LinPoly::new(f, sol[nv..].to_vec());
        if v.is_zero() {
            return Err(Error::DecodingFailure);
        }
        let (quo, rem) = nume.left_divide(f, &v)?;
        if !rem.is_zero() || quo.coeffs().len() > k {
            return Err(Error::DecodingFailure);
        }
        let msg = quo.coeffs_padded(k);
        let c = self.encode(f, &msg)?;
        let e: Vec<FqmElem> = r.iter().zip(&c).map(|(&a, &b)| f.sub(a, b)).collect();
        if ranklin::rank_weight(f, &e) > t {
            return Err(Error::DecodingFailure);
        }
        Ok((msg, e))
    }
}

/// The dual of Gab_k(g), which is Gab_(n-k)(h^(q^-(n-k-1))) where `h`
/// spans the dual of Gab_(n-1)(g).
pub fn dual_gabidulin(f: &Fqm, c: &GabCode) -> Result<GabCode> {
    let n = c.n();
    let wide = GabCode { g: c.g.clone(), k: n - 1 };
    let d = ranklin::dual_code(f, &wide.code(f));
    debug_assert_eq!(d.dim(), 1);
    let h = d.generator().row(0);
    let shift = n - c.k - 1;
    let support: Vec<FqmElem> = h.iter().map(|&x| f.frobenius_inv(x, shift)).collect();
    GabCode::new(f, support, n - c.k)
}

/// Vector of F_q^m^n with rank weight exactly `t`.
pub fn sample_rank_error<R: Rng + ?Sized>(f: &Fqm, n: usize, t: usize, rng: &mut R) -> Result<Vec<FqmElem>> {
    ranklin::random_rank_vector(f, n, t, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::{FqElem, PrimeField, Tower};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(m: usize, seed: u64) -> Fqm {
        Tower::build(2, m, 2, seed).unwrap().fqm().clone()
    }

    fn random_poly(f: &Fqm, len: usize, rng: &mut ChaCha8Rng) -> LinPoly {
        LinPoly::new(f, (0..len).map(|_| f.random(rng)).collect())
    }

    #[test]
    fn frobenius_monomial_on_f4() {
        let f = Fqm::new(PrimeField::new(2).unwrap(), &[FqElem(1), FqElem(1), FqElem(1)]).unwrap();
        let w = f.generator();
        let p = LinPoly::monomial(&f, f.one(), 1);
        assert_eq!(p.eval(&f, w), f.add(w, f.one()));
        assert_eq!(LinPoly::identity(&f).eval(&f, w), w);
        assert_eq!(p.eval(&f, f.zero()), f.zero());
    }

    #[test]
    fn compose_matches_evaluation() {
        let f = field(9, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_poly(&f, 3, &mut rng);
        let b = random_poly(&f, 4, &mut rng);
        let c = a.compose(&f, &b);
        assert_eq!(c.qdeg(), Some(5));
        for _ in 0..50 {
            let x = f.random(&mut rng);
            assert_eq!(c.eval(&f, x), a.eval(&f, b.eval(&f, x)));
        }
        let id = LinPoly::identity(&f);
        assert_eq!(id.compose(&f, &b), b);
        assert_eq!(a.compose(&f, &id), a);
    }

    #[test]
    fn left_division_reconstructs() {
        let f = field(11, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b = random_poly(&f, 3, &mut rng);
        let q = random_poly(&f, 4, &mut rng);
        let (quo, rem) = b.compose(&f, &q).left_divide(&f, &b).unwrap();
        assert_eq!((quo, rem), (q, LinPoly::zero()));

        let a = random_poly(&f, 7, &mut rng);
        let (quo, rem) = a.left_divide(&f, &b).unwrap();
        assert!(rem.qdeg().is_none_or(|d| d < 2));
        for _ in 0..20 {
            let x = f.random(&mut rng);
            let lhs = a.eval(&f, x);
            let rhs = f.add(b.eval(&f, quo.eval(&f, x)), rem.eval(&f, x));
            assert_eq!(lhs, rhs);
        }
        let small = random_poly(&f, 2, &mut rng);
        assert_eq!(small.left_divide(&f, &b).unwrap(), (LinPoly::zero(), small.clone()));
        assert_eq!(a.left_divide(&f, &LinPoly::zero()), Err(Error::DivisorZero));
    }

    #[test]
    fn moore_matrix_shape() {
        let f = field(4, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let c = GabCode::random(&f, 4, 2, &mut rng).unwrap();
        let g = c.gen_matrix(&f);
        assert_eq!(matrix::rank(&f, &g), 2);
        assert_eq!(g.row(1).to_vec(), ranklin::frobenius_vec(&f, g.row(0), 1));
    }

    #[test]
    fn encode_paths_agree() {
        let f = field(10, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let c = GabCode::random(&f, 10, 4, &mut rng).unwrap();
        let mut unit = vec![f.zero(); 4];
        unit[0] = f.one();
        assert_eq!(c.encode(&f, &unit).unwrap(), c.support());
        for _ in 0..100 {
            let msg: Vec<FqmElem> = (0..4).map(|_| f.random(&mut rng)).collect();
            let p = LinPoly::new(&f, msg.clone());
            assert_eq!(c.encode(&f, &msg).unwrap(), c.encode_poly(&f, &p).unwrap());
        }
        assert_eq!(c.encode(&f, &[f.one()]), Err(Error::BadLength { expected: 4, got: 1 }));
    }

    #[test]
    fn decodes_planted_errors() {
        let f = field(8, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let c = GabCode::random(&f, 8, 2, &mut rng).unwrap();
        assert_eq!(c.radius(), 3);
        for t in 0..=3 {
            for _ in 0..20 {
                let msg: Vec<FqmElem> = (0..2).map(|_| f.random(&mut rng)).collect();
                let e = sample_rank_error(&f, 8, t, &mut rng).unwrap();
                assert_eq!(ranklin::rank_weight(&f, &e), t);
                let cw = c.encode(&f, &msg).unwrap();
                let r: Vec<FqmElem> = cw.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect();
                assert_eq!(c.decode(&f, &r).unwrap(), (msg, e));
            }
        }
    }

    #[test]
    fn beyond_radius_never_returns_planted_message() {
        let f = field(8, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let c = GabCode::random(&f, 8, 2, &mut rng).unwrap();
        for _ in 0..30 {
            let msg: Vec<FqmElem> = (0..2).map(|_| f.random(&mut rng)).collect();
            let e = sample_rank_error(&f, 8, 4, &mut rng).unwrap();
            let cw = c.encode(&f, &msg).unwrap();
            let r: Vec<FqmElem> = cw.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect();
            if let Ok((m2, e2)) = c.decode(&f, &r) {
                assert_ne!(m2, msg);
                assert!(ranklin::rank_weight(&f, &e2) <= 3);
            }
        }
    }

    #[test]
    fn dual_is_gabidulin() {
        let f = field(12, 11);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for k in 1..11 {
            let c = GabCode::random(&f, 12, k, &mut rng).unwrap();
            let d = dual_gabidulin(&f, &c).unwrap();
            assert_eq!(d.k(), 12 - k);
            assert_eq!(d.code(&f), ranklin::dual_code(&f, &c.code(&f)));
            if d.k() < 12 {
                assert_eq!(ranklin::lambda(&f, &d.code(&f), 1).dim(), (d.k() + 1).min(12));
            }
        }
    }

    #[test]
    fn rejects_bad_codes() {
        let f = field(6, 1);
        let one = f.one();
        assert!(matches!(GabCode::new(&f, vec![one, one, one], 1), Err(Error::RankDeficient { .. })));
        assert!(matches!(GabCode::new(&f, vec![one; 7], 2), Err(Error::LengthExceedsDegree { .. })));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(GabCode::random(&f, 5, 5, &mut rng), Err(Error::ParamViolation(_))));
        assert!(matches!(sample_rank_error(&f, 5, 6, &mut rng), Err(Error::WeightTooLarge { .. })));
        assert_eq!(sample_rank_error(&f, 5, 0, &mut rng).unwrap(), vec![f.zero(); 5]);
    }
}
