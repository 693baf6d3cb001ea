//! Rank-metric toolkit: rank weight, canonical codes, duals, the Frobenius-sum
//! operator Λ_i and support-normalizing F_q transforms.

use crate::error::{Error, Result};
use crate::fieldtower::{coords, Basis, Field, FqElem, Fqm, FqmElem, PrimeField};
use crate::matrix::{self, Matrix};
use rand::Rng;

pub use crate::matrix::solve_unique;

/// Coordinates of every entry over F_q, one column per entry
/// (prime_degree × n), in the composite power basis.
pub fn expand_over_fq<F: Field>(f: &F, v: &[F::Elem]) -> Matrix<FqElem> {
    let d = f.prime_degree();
    let mut m = Matrix::filled(d, v.len(), FqElem::ZERO);
    for (j, &x) in v.iter().enumerate() {
        for (i, c) in f.prime_coords(x).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

/// Expansion of an F_q^m vector in an arbitrary basis of F_q^m / F_q.
pub fn expand_in_basis(f: &Fqm, v: &[FqmElem], basis: &Basis<FqmElem>) -> Result<Matrix<FqElem>> {
    let mut m = Matrix::filled(f.m(), v.len(), FqElem::ZERO);
    let dual = crate::fieldtower::dual_basis(f, basis)?;
    for (j, &x) in v.iter().enumerate() {
        for (i, c) in crate::fieldtower::coords_with_dual(f, x, &dual).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// Dimension over F_q of the span of the entries of `v`.
pub fn rank_weight<F: Field>(f: &F, v: &[F::Elem]) -> usize {
    if v.iter().all(|&x| f.is_zero(x)) {
        return 0;
    }
    matrix::rank(&f.prime_field(), &expand_over_fq(f, v))
}

pub fn hamming_weight<F: Field>(f: &F, v: &[F::Elem]) -> usize {
    v.iter().filter(|&&x| !f.is_zero(x)).count()
}

/// `v * P` for an F_q matrix `P`.
pub fn apply_fq_matrix<F: Field>(f: &F, v: &[F::Elem], p: &Matrix<FqElem>) -> Vec<F::Elem> {
    assert_eq!(v.len(), p.rows(), "dimension mismatch");
    let mut out = vec![f.zero(); p.cols()];
    for (i, &x) in v.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            let c = p.get(i, j);
            if c != FqElem::ZERO {
                *o = f.add(*o, f.scale(x, c));
            }
        }
    }
    out
}

/// `M * P` for an F_q matrix `P`.
pub fn mat_times_fq<F: Field>(f: &F, m: &Matrix<F::Elem>, p: &Matrix<FqElem>) -> Matrix<F::Elem> {
    let rows: Vec<Vec<F::Elem>> = (0..m.rows()).map(|r| apply_fq_matrix(f, m.row(r), p)).collect();
    Matrix::from_rows(p.cols(), &rows)
}

/// Incrementally maintained reduced row-echelon basis of a subspace of F^n.
#[derive(Clone, Debug)]
pub struct EchelonSpace<E> {
    n: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Copy> EchelonSpace<E> {
    pub fn new(n: usize) -> Self {
        EchelonSpace { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    /// Reduces `v` against the basis and returns the residue.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p];
            if f.is_zero(c) {
                continue;
            }
            for (dst, &src) in r[p..].iter_mut().zip(&row[p..]) {
                if !f.is_zero(src) {
                    *dst = f.sub(*dst, f.mul(c, src));
                }
            }
        }
        r
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|&x| f.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &[E]) -> bool {
        assert_eq!(v.len(), self.n, "length mismatch");
        let mut r = self.reduce(f, v);
        let Some(c) = r.iter().position(|&x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(r[c]).expect("nonzero pivot");
        for x in r[c..].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let k = row[c];
            if f.is_zero(k) {
                continue;
            }
            for (dst, &src) in row[c..].iter_mut().zip(&r[c..]) {
                if !f.is_zero(src) {
                    *dst = f.sub(*dst, f.mul(k, src));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, r);
        true
    }

    pub fn to_matrix(&self) -> Matrix<E> {
        Matrix::from_rows(self.n, &self.rows)
    }
}

/// A linear code stored by its canonical (RREF, zero-row-free) generator, so
/// equal codes have equal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode<E> {
    gen: Matrix<E>,
}

pub type CodeFqm = LinearCode<FqmElem>;

impl<E: Copy> LinearCode<E> {
    pub fn from_generator<F: Field<Elem = E>>(f: &F, g: &Matrix<E>) -> Self {
        let mut space = EchelonSpace::new(g.cols());
        for r in 0..g.rows() {
            space.insert(f, g.row(r));
        }
        LinearCode { gen: space.to_matrix() }
    }

    pub fn from_space(space: &EchelonSpace<E>) -> Self {
        LinearCode { gen: space.to_matrix() }
    }

    /// The zero code of length `n`.
    pub fn zero(n: usize) -> Self {
        LinearCode { gen: Matrix::from_vec(0, n, Vec::new()) }
    }

    pub fn generator(&self) -> &Matrix<E> {
        &self.gen
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }

    /// Echelon basis of the code, for incremental extension.
    pub fn space<F: Field<Elem = E>>(&self, f: &F) -> EchelonSpace<E> {
        let mut s = EchelonSpace::new(self.len());
        for r in self.gen.row_vecs() {
            let p = r.iter().position(|&x| !f.is_zero(x)).expect("canonical rows are nonzero");
            s.pivots.push(p);
            s.rows.push(r);
        }
        s
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.space(f).contains(f, v)
    }
}

pub fn sum_code<F: Field>(f: &F, a: &LinearCode<F::Elem>, b: &LinearCode<F::Elem>) -> LinearCode<F::Elem> {
    LinearCode::from_generator(f, &a.gen.vstack(&b.gen))
}

/// dim(A ∩ B) = dim A + dim B - dim(A + B).
pub fn intersection_dim<F: Field>(f: &F, a: &LinearCode<F::Elem>, b: &LinearCode<F::Elem>) -> usize {
    a.dim() + b.dim() - sum_code(f, a, b).dim()
}

/// Dual under the bilinear form Σ c_i z_i.
pub fn dual_code<F: Field>(f: &F, c: &LinearCode<F::Elem>) -> LinearCode<F::Elem> {
    let n = c.len();
    let ker = matrix::right_kernel(f, &c.gen);
    if ker.is_empty() {
        return LinearCode::zero(n);
    }
    LinearCode::from_generator(f, &Matrix::from_rows(n, &ker))
}

/// Coordinatewise x ↦ x^(q^i) on every entry.
pub fn frobenius_matrix(f: &Fqm, m: &Matrix<FqmElem>, i: usize) -> Matrix<FqmElem> {
    m.map(|x| f.frobenius(x, i))
}

pub fn frobenius_vec(f: &Fqm, v: &[FqmElem], i: usize) -> Vec<FqmElem> {
    v.iter().map(|&x| f.frobenius(x, i)).collect()
}

/// Λ_i(C) = C + C^q + ... + C^(q^i).
pub fn lambda(f: &Fqm, c: &CodeFqm, i: usize) -> CodeFqm {
    let space = lambda_space(f, c.generator(), i, |_| {});
    LinearCode::from_space(&space)
}

/// dim Λ_j(C) for j = 0..=max_i.
pub fn lambda_dims(f: &Fqm, c: &CodeFqm, max_i: usize) -> Vec<usize> {
    let mut dims = Vec::with_capacity(max_i + 1);
    lambda_space(f, c.generator(), max_i, |d| dims.push(d));
    dims
}

/// Builds the echelon basis of Λ_i(row space of `gen`), reporting the
/// dimension after each step. Λ_(j+1) = Λ_j + U^(q^(j+1)), and once a step adds
/// nothing the chain is stationary.
pub fn lambda_space(
    f: &Fqm,
    gen: &Matrix<FqmElem>,
    i: usize,
    mut on_step: impl FnMut(usize),
) -> EchelonSpace<FqmElem> {
    let n = gen.cols();
    let mut space = EchelonSpace::new(n);
    for r in 0..gen.rows() {
        space.insert(f, gen.row(r));
    }
    on_step(space.dim());
    let mut stationary = false;
    for step in 1..=i {
        if !stationary && space.dim() < n {
            let mut grew = false;
            for r in 0..gen.rows() {
                let img = frobenius_vec(f, gen.row(r), step);
                grew |= space.insert(f, &img);
            }
            stationary = !grew;
        }
        on_step(space.dim());
    }
    space
}

/// Finds `S` in GL_n(F_q) with `v S = (0, ..., 0 | v')`, the first `w` columns
/// of `S` spanning the right F_q-kernel of the expansion of `v`, completed by
/// standard unit vectors. Returns `(S, w)` with `w = n - rank_weight(v)`.
pub fn zeroing_transform<F: Field>(f: &F, v: &[F::Elem]) -> Result<(Matrix<FqElem>, usize)> {
    if v.iter().all(|&x| f.is_zero(x)) {
        return Err(Error::ZeroVector);
    }
    let fq = f.prime_field();
    let n = v.len();
    let expansion = expand_over_fq(f, v);
    let kernel = matrix::right_kernel(&fq, &expansion);
    let w = kernel.len();
    let mut space = EchelonSpace::new(n);
    let mut columns = Vec::with_capacity(n);
    for k in kernel {
        space.insert(&fq, &k);
        columns.push(k);
    }
    for j in 0..n {
        if columns.len() == n {
            break;
        }
        let mut e = vec![FqElem::ZERO; n];
        e[j] = FqElem::ONE;
        if space.insert(&fq, &e) {
            columns.push(e);
        }
    }
    let s = Matrix::from_rows(n, &columns).transpose();
    Ok((s, w))
}

pub fn random_invertible<R: Rng + ?Sized>(fq: &PrimeField, n: usize, rng: &mut R) -> Matrix<FqElem> {
    loop {
        let data = (0..n * n).map(|_| fq.random(rng)).collect();
        let p = Matrix::from_vec(n, n, data);
        if matrix::rank(fq, &p) == n {
            return p;
        }
    }
}

/// Random vector of length `n` whose entries are F_q-independent.
pub fn random_full_rank_vector<F: Field, R: Rng + ?Sized>(
    f: &F,
    n: usize,
    rng: &mut R,
) -> Result<Vec<F::Elem>> {
    let d = f.prime_degree();
    if n > d {
        return Err(Error::LengthExceedsDegree { n, m: d });
    }
    loop {
        let v: Vec<F::Elem> = (0..n).map(|_| f.random(rng)).collect();
        if rank_weight(f, &v) == n {
            return Ok(v);
        }
    }
}

/// Random F_q matrix of full row rank `r` (`r <= c`).
pub fn random_full_row_rank<R: Rng + ?Sized>(fq: &PrimeField, r: usize, c: usize, rng: &mut R) -> Matrix<FqElem> {
    assert!(r <= c);
    loop {
        let data = (0..r * c).map(|_| fq.random(rng)).collect();
        let m = Matrix::from_vec(r, c, data);
        if matrix::rank(fq, &m) == r {
            return m;
        }
    }
}

/// Random length-`n` vector of rank weight exactly `t`, built as `beta * M`
/// with `beta` a tuple of `t` F_q-independent elements and `M` an F_q matrix
/// of rank `t`.
pub fn random_rank_vector<F: Field, R: Rng + ?Sized>(
    f: &F,
    n: usize,
    t: usize,
    rng: &mut R,
) -> Result<Vec<F::Elem>> {
    let max = n.min(f.prime_degree());
    if t > max {
        return Err(Error::WeightTooLarge { t, max });
    }
    if t == 0 {
        return Ok(vec![f.zero(); n]);
    }
    let beta = random_full_rank_vector(f, t, rng)?;
    let m = random_full_row_rank(&f.prime_field(), t, n, rng);
    Ok(apply_fq_matrix(f, &beta, &m))
}

/// Coordinates of `x` in an arbitrary basis of F_q^m / F_q.
pub fn fq_coords(f: &Fqm, x: FqmElem, basis: &Basis<FqmElem>) -> Result<Vec<FqElem>> {
    coords(f, x, basis)
}
