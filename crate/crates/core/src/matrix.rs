//! Dense row-major matrices over any [`Field`] and Gaussian elimination.

use crate::error::{Error, Result};
use crate::fieldtower::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Copy> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> E {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [E] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<T: Copy>(&self, f: impl Fn(E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&e| f(e)).collect() }
    }

    pub fn select_cols(&self, cols: impl IntoIterator<Item = usize>) -> Self {
        let idx: Vec<usize> = cols.into_iter().collect();
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for r in 0..self.rows {
            for &c in &idx {
                data.push(self.get(r, c));
            }
        }
        Matrix { rows: self.rows, cols: idx.len(), data }
    }

    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> Self {
        let mut data = Vec::new();
        let mut count = 0;
        for r in rows {
            data.extend_from_slice(self.row(r));
            count += 1;
        }
        Matrix { rows: count, cols: self.cols, data }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for l in 0..a.cols {
            let x = a.get(i, l);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(l, j);
                if !f.is_zero(y) {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(x, y)));
                }
            }
        }
    }
    out
}

/// Row vector times matrix.
pub fn vec_mul<F: Field>(f: &F, v: &[F::Elem], a: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert_eq!(v.len(), a.rows, "dimension mismatch");
    let mut out = vec![f.zero(); a.cols];
    for (l, &x) in v.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            let y = a.get(l, j);
            if !f.is_zero(y) {
                *o = f.add(*o, f.mul(x, y));
            }
        }
    }
    out
}

/// Matrix times column vector.
pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(v.len(), a.cols, "dimension mismatch");
    (0..a.rows)
        .map(|r| {
            a.row(r).iter().zip(v).fold(f.zero(), |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
        })
        .collect()
}

/// Rank and pivot columns of a reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduces `m` in place to reduced row-echelon form.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Echelon {
    rref_limited(f, m, m.cols)
}

/// RREF that only pivots on the first `limit` columns.
pub fn rref_limited<F: Field>(f: &F, m: &mut Matrix<F::Elem>, limit: usize) -> Echelon {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit.min(cols) {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = m.get(r, j);
            m.set(r, j, f.mul(v, inv));
        }
        let pivot_row: Vec<F::Elem> = m.row(r)[c..].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c);
            if f.is_zero(factor) {
                continue;
            }
            let row = m.row_mut(i);
            for (dst, &src) in row[c..].iter_mut().zip(&pivot_row) {
                if !f.is_zero(src) {
                    *dst = f.sub(*dst, f.mul(factor, src));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rank: r, pivots }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut c = m.clone();
    rref(f, &mut c).rank
}

/// Inverse of a square matrix; `RankDeficient` when singular.
pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    assert_eq!(m.rows, m.cols, "inverse of non-square matrix");
    let n = m.rows;
    let mut aug = zeros(f, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, n + i, f.one());
    }
    let ech = rref_limited(f, &mut aug, n);
    if ech.rank < n {
        return Err(Error::RankDeficient { rank: ech.rank, cols: n });
    }
    Ok(aug.select_cols(n..2 * n))
}

/// The unique `x` with `A x = b`.
pub fn solve_unique<F: Field>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let (rows, cols) = (a.rows, a.cols);
    let mut aug = zeros(f, rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            aug.set(i, j, a.get(i, j));
        }
        aug.set(i, cols, b[i]);
    }
    let ech = rref_limited(f, &mut aug, cols);
    if ech.rank < cols {
        return Err(Error::RankDeficient { rank: ech.rank, cols });
    }
    if (ech.rank..rows).any(|i| !f.is_zero(aug.get(i, cols))) {
        return Err(Error::Inconsistent);
    }
    Ok((0..cols).map(|i| aug.get(i, cols)).collect())
}

/// Basis of `{x : M x = 0}`, one vector per free column in increasing order.
pub fn right_kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    let ech = rref(f, &mut r);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![f.zero(); m.cols];
            x[free] = f.one();
            for (i, &p) in ech.pivots.iter().enumerate() {
                x[p] = f.neg(r.get(i, free));
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::{FqElem, PrimeField};

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn m5(rows: &[&[u32]]) -> Matrix<FqElem> {
        let cols = rows[0].len();
        let v: Vec<Vec<FqElem>> = rows.iter().map(|r| r.iter().map(|&x| FqElem(x)).collect()).collect();
        Matrix::from_rows(cols, &v)
    }

    #[test]
    fn identity_and_zero_are_fixed_points() {
        let f = f5();
        let mut i = identity(&f, 4);
        let e = rref(&f, &mut i);
        assert_eq!(e.rank, 4);
        assert_eq!(i, identity(&f, 4));
        let mut z = zeros(&f, 3, 5);
        assert_eq!(rref(&f, &mut z).rank, 0);
        assert_eq!(z, zeros(&f, 3, 5));
    }

    #[test]
    fn inverse_round_trip() {
        let f = f5();
        let a = m5(&[&[1, 2, 0], &[0, 1, 4], &[3, 0, 2]]);
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(mul(&f, &a, &inv), identity(&f, 3));
        let s = m5(&[&[1, 2], &[2, 4]]);
        assert!(matches!(inverse(&f, &s), Err(Error::RankDeficient { rank: 1, cols: 2 })));
    }

    #[test]
    fn solve_errors() {
        let f = f5();
        let a = m5(&[&[1, 0], &[0, 1], &[1, 1]]);
        let b: Vec<FqElem> = [1, 2, 3].iter().map(|&x| FqElem(x)).collect();
        assert_eq!(solve_unique(&f, &a, &b).unwrap(), vec![FqElem(1), FqElem(2)]);
        let bad: Vec<FqElem> = [1, 2, 4].iter().map(|&x| FqElem(x)).collect();
        assert_eq!(solve_unique(&f, &a, &bad), Err(Error::Inconsistent));
        let dep = m5(&[&[1, 2], &[2, 4], &[3, 1]]);
        assert!(matches!(solve_unique(&f, &dep, &b), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = f5();
        let a = m5(&[&[1, 2, 3, 4], &[2, 4, 1, 3]]);
        let ker = right_kernel(&f, &a);
        assert_eq!(ker.len(), 4 - rank(&f, &a));
        for k in ker {
            assert!(mat_vec(&f, &a, &k).iter().all(|x| *x == FqElem(0)));
        }
    }
}
