use super::{Field, Fqm, FqmElem, FqElem, LField, PrimeField};
use crate::error::{Error, Result};
use crate::poly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Defining data of the tower: everything needed to rebuild it bit-exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerParams {
    pub q: u32,
    pub m: usize,
    pub u: usize,
    /// `m + 1` coefficients over F_q, constant term first, monic.
    pub mod_fqm: Vec<FqElem>,
    /// `u + 1` coefficients over F_q^m, constant term first, monic.
    pub mod_l: Vec<FqmElem>,
}

/// The three-level tower F_q ⊂ F_q^m ⊂ L with arithmetic contexts.
/// Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Tower {
    params: TowerParams,
    fq: PrimeField,
    fqm: Arc<Fqm>,
    l: Arc<LField>,
}

impl Tower {
    /// Finds irreducible moduli by seeded rejection sampling.
    pub fn build(q: u32, m: usize, u: usize, seed: u64) -> Result<Self> {
        let fq = PrimeField::new(q)?;
        if m <= 1 || u <= 1 {
            return Err(Error::DegreeTooSmall { m, u });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mod_fqm = loop {
            let mut c: Vec<FqElem> = (0..m).map(|_| fq.random(&mut rng)).collect();
            c.push(FqElem::ONE);
            if c[0] == FqElem::ZERO || has_root_in_prime_field(&fq, &c) {
                continue;
            }
            if poly::is_irreducible(&fq, &c, q as u128) {
                break c;
            }
        };
        let fqm = Arc::new(Fqm::new(fq, &mod_fqm)?);
        let mod_l = loop {
            let mut c: Vec<FqmElem> = (0..u).map(|_| fqm.random(&mut rng)).collect();
            c.push(fqm.one());
            if fqm.is_zero(c[0]) {
                continue;
            }
            if poly::is_irreducible(&*fqm, &c, fqm.order()) {
                break c;
            }
        };
        let l = Arc::new(LField::new(fqm.clone(), &mod_l)?);
        Ok(Tower {
            params: TowerParams { q, m, u, mod_fqm, mod_l },
            fq,
            fqm,
            l,
        })
    }

    /// Rebuilds a tower from serialized moduli, re-checking irreducibility.
    pub fn from_params(p: &TowerParams) -> Result<Self> {
        let fq = PrimeField::new(p.q)?;
        if p.m <= 1 || p.u <= 1 {
            return Err(Error::DegreeTooSmall { m: p.m, u: p.u });
        }
        if p.mod_fqm.len() != p.m + 1 || p.mod_l.len() != p.u + 1 {
            return Err(Error::ParamViolation("modulus degree mismatch".into()));
        }
        if !poly::is_irreducible(&fq, &p.mod_fqm, p.q as u128) {
            return Err(Error::ParamViolation("mod_fqm is reducible".into()));
        }
        let fqm = Arc::new(Fqm::new(fq, &p.mod_fqm)?);
        if !poly::is_irreducible(&*fqm, &p.mod_l, fqm.order()) {
            return Err(Error::ParamViolation("mod_L is reducible".into()));
        }
        let l = Arc::new(LField::new(fqm.clone(), &p.mod_l)?);
        Ok(Tower { params: p.clone(), fq, fqm, l })
    }

    pub fn params(&self) -> &TowerParams {
        &self.params
    }

    pub fn fq(&self) -> &PrimeField {
        &self.fq
    }

    pub fn fqm(&self) -> &Fqm {
        &self.fqm
    }

    pub fn l(&self) -> &LField {
        &self.l
    }

    pub fn q(&self) -> u32 {
        self.params.q
    }

    pub fn m(&self) -> usize {
        self.params.m
    }

    pub fn u(&self) -> usize {
        self.params.u
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
    }
}

impl Eq for Tower {}

fn has_root_in_prime_field(fq: &PrimeField, c: &[FqElem]) -> bool {
    if fq.q() > 64 {
        return false;
    }
    (0..fq.q()).any(|v| {
        let x = FqElem(v);
        let val = c.iter().rev().fold(fq.zero(), |acc, &k| fq.add(fq.mul(acc, x), k));
        val == FqElem::ZERO
    })
}
