use super::Field;
use crate::error::{Error, Result};
use rand::Rng;

/// Residue modulo the base prime `q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn value(self) -> u32 {
        self.0
    }
}

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NonPrimeBase(q));
        }
        Ok(PrimeField { q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn elem(&self, v: u64) -> FqElem {
        FqElem((v % self.q as u64) as u32)
    }
}

impl Field for PrimeField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(0)
    }

    fn one(&self) -> FqElem {
        FqElem(1)
    }

    fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let s = a.0 as u64 + b.0 as u64;
        FqElem((s % self.q as u64) as u32)
    }

    fn neg(&self, a: FqElem) -> FqElem {
        if a.0 == 0 {
            a
        } else {
            FqElem(self.q - a.0)
        }
    }

    fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(((a.0 as u64 * b.0 as u64) % self.q as u64) as u32)
    }

    fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u128 - 2))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        FqElem(rng.gen_range(0..self.q))
    }

    fn prime_degree(&self) -> usize {
        1
    }

    fn prime_coords(&self, a: FqElem) -> Vec<FqElem> {
        vec![a]
    }

    fn from_prime_coords(&self, c: &[FqElem]) -> FqElem {
        c[0]
    }

    fn scale(&self, a: FqElem, c: FqElem) -> FqElem {
        self.mul(a, c)
    }

    fn embed_prime(&self, c: FqElem) -> FqElem {
        c
    }

    fn prime_field(&self) -> PrimeField {
        *self
    }
}
