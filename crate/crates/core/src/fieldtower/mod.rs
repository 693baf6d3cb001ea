//! The field tower F_q ⊂ F_q^m ⊂ L.
//!
//! Every level implements [`Field`], a context-style trait: the field object
//! owns the modulus and precomputed tables, elements are small `Copy` values,
//! and all arithmetic goes through `&self`. Generic code (matrices, echelon
//! forms, polynomials) is written once against the trait.
//!
//! Elements of F_q^m are packed base-q digits in a `u64` (power basis of
//! `mod_fqm`, constant term first). L is a degree-u extension of F_q^m with
//! elements stored as `u` F_q^m blocks.

mod basis;
mod fqm;
mod prime;
mod top;
mod tower;

pub use basis::{coordinate_matrix, coords, coords_with_dual, dual_basis, Basis, Extension, Level};
pub use fqm::{Fqm, FqmElem};
pub use prime::{is_prime, FqElem, PrimeField};
pub use top::{LElem, LField, MAX_U};
pub use tower::{Tower, TowerParams};

use crate::error::{Error, Result};
use rand::Rng;
use std::fmt::Debug;
use std::hash::Hash;

/// Arithmetic context for one level of the tower.
pub trait Field: Debug + Send + Sync {
    type Elem: Copy + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `DivisionByZero` on zero.
    fn inv(&self, a: Self::Elem) -> Result<Self::Elem>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Degree of this field over the prime field F_q.
    fn prime_degree(&self) -> usize;
    /// Coordinates over F_q in the canonical composite power basis.
    fn prime_coords(&self, a: Self::Elem) -> Vec<FqElem>;
    fn from_prime_coords(&self, c: &[FqElem]) -> Self::Elem;
    /// Multiplication by a prime-field scalar.
    fn scale(&self, a: Self::Elem, c: FqElem) -> Self::Elem;
    fn embed_prime(&self, c: FqElem) -> Self::Elem;
    /// The prime field at the bottom of the tower.
    fn prime_field(&self) -> PrimeField;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn div(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(b) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(a, self.inv(b)?))
    }

    fn pow(&self, a: Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(x) {
                return x;
            }
        }
    }
}
