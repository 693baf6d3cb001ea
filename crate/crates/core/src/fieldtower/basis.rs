use super::{Field, FqElem, Fqm, FqmElem, LElem, LField, PrimeField};
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};

/// Which step of the tower a basis spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// F_q^m over F_q.
    FqmOverFq,
    /// L over F_q^m.
    LOverFqm,
}

/// A field viewed as a vector space over the level directly beneath it.
pub trait Extension: Field {
    type Sub: Field;
    const LEVEL: Level;

    fn sub_field(&self) -> &Self::Sub;
    fn ext_degree(&self) -> usize;
    fn rel_trace(&self, a: Self::Elem) -> <Self::Sub as Field>::Elem;
    fn power_coords(&self, a: Self::Elem) -> Vec<<Self::Sub as Field>::Elem>;
    fn from_power_coords(&self, c: &[<Self::Sub as Field>::Elem]) -> Self::Elem;
    fn scale_sub(&self, a: Self::Elem, c: <Self::Sub as Field>::Elem) -> Self::Elem;
}

impl Extension for Fqm {
    type Sub = PrimeField;
    const LEVEL: Level = Level::FqmOverFq;

    fn sub_field(&self) -> &PrimeField {
        self.base()
    }

    fn ext_degree(&self) -> usize {
        self.m()
    }

    fn rel_trace(&self, a: FqmElem) -> FqElem {
        self.trace(a)
    }

    fn power_coords(&self, a: FqmElem) -> Vec<FqElem> {
        self.digits(a)
    }

    fn from_power_coords(&self, c: &[FqElem]) -> FqmElem {
        self.pack(c)
    }

    fn scale_sub(&self, a: FqmElem, c: FqElem) -> FqmElem {
        self.scale(a, c)
    }
}

impl Extension for LField {
    type Sub = Fqm;
    const LEVEL: Level = Level::LOverFqm;

    fn sub_field(&self) -> &Fqm {
        self.base()
    }

    fn ext_degree(&self) -> usize {
        self.u()
    }

    fn rel_trace(&self, a: LElem) -> FqmElem {
        self.trace(a)
    }

    fn power_coords(&self, a: LElem) -> Vec<FqmElem> {
        self.coeffs(a)
    }

    fn from_power_coords(&self, c: &[FqmElem]) -> LElem {
        LElem::from_coeffs(c)
    }

    fn scale_sub(&self, a: LElem, c: FqmElem) -> LElem {
        self.scale_fqm(a, c)
    }
}

/// Basis of one tower step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis<E> {
    pub elems: Vec<E>,
    pub level: Level,
}

impl<E: Copy> Basis<E> {
    pub fn new<X: Extension<Elem = E>>(_ext: &X, elems: Vec<E>) -> Self {
        Basis { elems, level: X::LEVEL }
    }

    /// The power basis 1, X, ..., X^(d-1) of the modulus.
    pub fn power<X: Extension<Elem = E>>(ext: &X) -> Self {
        let sub = ext.sub_field();
        let d = ext.ext_degree();
        let elems = (0..d)
            .map(|j| {
                let mut c = vec![sub.zero(); d];
                c[j] = sub.one();
                ext.from_power_coords(&c)
            })
            .collect();
        Basis { elems, level: X::LEVEL }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// The trace-orthogonal basis: Tr(b_i b*_j) = δ_ij.
pub fn dual_basis<X: Extension>(ext: &X, b: &Basis<X::Elem>) -> Result<Basis<X::Elem>> {
    let d = ext.ext_degree();
    if b.len() != d {
        return Err(Error::SingularBasis);
    }
    let sub = ext.sub_field();
    let power = Basis::power(ext);
    // gram[i][j] = Tr(b_i X^j)
    let mut gram = matrix::zeros(sub, d, d);
    for (i, &bi) in b.elems.iter().enumerate() {
        for (j, &pj) in power.elems.iter().enumerate() {
            gram.set(i, j, ext.rel_trace(ext.mul(bi, pj)));
        }
    }
    let y = matrix::inverse(sub, &gram.transpose()).map_err(|_| Error::SingularBasis)?;
    let elems = (0..d).map(|j| ext.from_power_coords(y.row(j))).collect();
    Ok(Basis { elems, level: X::LEVEL })
}

/// Coordinates of `x` in `basis`: entry i is Tr(x b*_i).
pub fn coords<X: Extension>(
    ext: &X,
    x: X::Elem,
    basis: &Basis<X::Elem>,
) -> Result<Vec<<X::Sub as Field>::Elem>> {
    let dual = dual_basis(ext, basis)?;
    Ok(coords_with_dual(ext, x, &dual))
}

/// Same as [`coords`] with the dual basis already computed.
pub fn coords_with_dual<X: Extension>(
    ext: &X,
    x: X::Elem,
    dual: &Basis<X::Elem>,
) -> Vec<<X::Sub as Field>::Elem> {
    dual.elems.iter().map(|&d| ext.rel_trace(ext.mul(x, d))).collect()
}

/// Matrix whose row i holds the power coordinates of basis element i.
pub fn coordinate_matrix<X: Extension>(
    ext: &X,
    b: &Basis<X::Elem>,
) -> Matrix<<X::Sub as Field>::Elem> {
    let rows: Vec<_> = b.elems.iter().map(|&e| ext.power_coords(e)).collect();
    Matrix::from_rows(ext.ext_degree(), &rows)
}
