use super::{Field, FqElem, PrimeField};
use crate::error::{Error, Result};
use rand::Rng;

/// Element of F_q^m: base-q digits packed into a word, constant term in the
/// lowest digit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqmElem(pub u64);

/// The extension F_q^m = F_q[X] / (mod_fqm).
#[derive(Clone, Debug)]
pub struct Fqm {
    fq: PrimeField,
    m: usize,
    bits: u32,
    digit_mask: u64,
    mask: u64,
    modulus: Vec<FqElem>,
    // X^(m+j) mod f, j = 0..m-1
    red: Vec<FqmElem>,
    // byte-window reduction tables for q = 2
    red_bytes: Vec<[u64; 256]>,
    // frob[i][j] = (X^j)^(q^i)
    frob: Vec<Vec<FqmElem>>,
    trace_basis: Vec<FqElem>,
    order: u128,
}

fn digit_width(q: u32) -> u32 {
    32 - (q - 1).leading_zeros()
}

fn clmul(a: u64, b: u64) -> u128 {
    let mut tab = [0u128; 16];
    let a = a as u128;
    tab[1] = a;
    for v in 2..16 {
        tab[v] = if v & 1 == 0 { tab[v >> 1] << 1 } else { tab[v - 1] ^ a };
    }
    let mut acc = 0u128;
    for i in (0..16).rev() {
        acc = (acc << 4) ^ tab[((b >> (4 * i)) & 15) as usize];
    }
    acc
}

impl Fqm {
    /// Builds F_q^m from a monic modulus given as its `m + 1` coefficients,
    /// constant term first. Irreducibility is the caller's responsibility
    /// (see [`super::Tower`]).
    pub fn new(fq: PrimeField, modulus: &[FqElem]) -> Result<Self> {
        let m = modulus.len().saturating_sub(1);
        if m < 2 {
            return Err(Error::DegreeTooSmall { m, u: 0 });
        }
        if modulus[m] != FqElem::ONE {
            return Err(Error::ParamViolation("modulus must be monic".into()));
        }
        let q = fq.q();
        let bits = digit_width(q);
        if bits as usize * m > 64 {
            return Err(Error::TowerTooLarge(format!(
                "q = {q}, m = {m} needs {} bits per element (max 64)",
                bits as usize * m
            )));
        }
        let order = (q as u128).pow(m as u32);
        let digit_mask = (1u64 << bits) - 1;
        let mask = if bits as usize * m == 64 {
            u64::MAX
        } else {
            (1u64 << (bits as usize * m)) - 1
        };
        let mut field = Fqm {
            fq,
            m,
            bits,
            digit_mask,
            mask,
            modulus: modulus.to_vec(),
            red: Vec::new(),
            red_bytes: Vec::new(),
            frob: Vec::new(),
            trace_basis: Vec::new(),
            order,
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let m = self.m;
        // X^m = -(f_0 + ... + f_{m-1} X^{m-1})
        let top: Vec<FqElem> = (0..m).map(|j| self.fq.neg(self.modulus[j])).collect();
        let mut cur = self.pack(&top);
        self.red = Vec::with_capacity(m);
        for _ in 0..m.saturating_sub(1) {
            self.red.push(cur);
            cur = self.mul_by_x(cur);
        }
        if self.fq.q() == 2 {
            let nbytes = (m - 1).div_ceil(8);
            self.red_bytes = (0..nbytes)
                .map(|b| {
                    let mut tab = [0u64; 256];
                    for (v, slot) in tab.iter_mut().enumerate() {
                        let mut acc = 0u64;
                        for i in 0..8 {
                            let j = 8 * b + i;
                            if (v >> i) & 1 == 1 && j < self.red.len() {
                                acc ^= self.red[j].0;
                            }
                        }
                        *slot = acc;
                    }
                    tab
                })
                .collect();
        }

        let basis: Vec<FqmElem> = (0..m).map(|j| self.monomial(j)).collect();
        let q = self.fq.q() as u128;
        let first: Vec<FqmElem> = basis.iter().map(|&b| self.pow(b, q)).collect();
        let mut frob = vec![basis];
        frob.push(first.clone());
        for i in 2..m {
            let next = frob[i - 1]
                .iter()
                .map(|&x| Self::apply_table(self, &first, x))
                .collect();
            frob.push(next);
        }
        self.frob = frob;

        self.trace_basis = (0..m)
            .map(|j| {
                let t = (0..m).fold(self.zero(), |acc, i| self.add(acc, self.frob[i][j]));
                debug_assert_eq!(t.0 & !self.digit_mask, 0, "trace must lie in F_q");
                FqElem(t.0 as u32)
            })
            .collect();
    }

    fn mul_by_x(&self, a: FqmElem) -> FqmElem {
        let m = self.m;
        let top = self.digit(a, m - 1);
        let shifted = (a.0 << self.bits) & self.mask;
        let mut r = FqmElem(shifted);
        if top != 0 {
            let neg: Vec<FqElem> = (0..m).map(|j| self.fq.neg(self.modulus[j])).collect();
            let xm = self.pack(&neg);
            r = self.add(r, self.scale(xm, FqElem(top)));
        }
        r
    }

    fn apply_table(&self, table: &[FqmElem], x: FqmElem) -> FqmElem {
        if self.fq.q() == 2 {
            let mut acc = 0u64;
            let mut v = x.0;
            while v != 0 {
                let j = v.trailing_zeros() as usize;
                acc ^= table[j].0;
                v &= v - 1;
            }
            FqmElem(acc)
        } else {
            let mut acc = self.zero();
            for (j, t) in table.iter().enumerate() {
                let d = self.digit(x, j);
                if d != 0 {
                    acc = self.add(acc, self.scale(*t, FqElem(d)));
                }
            }
            acc
        }
    }

    pub fn base(&self) -> &PrimeField {
        &self.fq
    }

    pub fn q(&self) -> u32 {
        self.fq.q()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// q^m.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Bits used per base-field digit in the packed and serialized forms.
    pub fn digit_bits(&self) -> u32 {
        self.bits
    }

    pub fn modulus(&self) -> &[FqElem] {
        &self.modulus
    }

    pub fn digit(&self, a: FqmElem, i: usize) -> u32 {
        ((a.0 >> (i as u32 * self.bits)) & self.digit_mask) as u32
    }

    pub fn digits(&self, a: FqmElem) -> Vec<FqElem> {
        (0..self.m).map(|i| FqElem(self.digit(a, i))).collect()
    }

    pub fn pack(&self, c: &[FqElem]) -> FqmElem {
        let mut v = 0u64;
        for (i, d) in c.iter().enumerate().take(self.m) {
            v |= (d.0 as u64 % self.fq.q() as u64) << (i as u32 * self.bits);
        }
        FqmElem(v)
    }

    /// X^j in the power basis.
    pub fn monomial(&self, j: usize) -> FqmElem {
        assert!(j < self.m);
        FqmElem(1u64 << (j as u32 * self.bits))
    }

    /// The root X of `mod_fqm`.
    pub fn generator(&self) -> FqmElem {
        self.monomial(1)
    }

    pub fn embed(&self, c: FqElem) -> FqmElem {
        FqmElem(c.0 as u64)
    }

    /// x^(q^i), via the precomputed q-power tables of the power basis.
    pub fn frobenius(&self, x: FqmElem, i: usize) -> FqmElem {
        let i = i % self.m;
        if i == 0 {
            return x;
        }
        self.apply_table(&self.frob[i], x)
    }

    /// x^(q^-i).
    pub fn frobenius_inv(&self, x: FqmElem, i: usize) -> FqmElem {
        let i = i % self.m;
        self.frobenius(x, (self.m - i) % self.m)
    }

    /// Tr_{F_q^m / F_q}(x) = x + x^q + ... + x^(q^(m-1)).
    pub fn trace(&self, x: FqmElem) -> FqElem {
        let mut acc = FqElem::ZERO;
        for (j, t) in self.trace_basis.iter().enumerate() {
            let d = self.digit(x, j);
            if d != 0 && t.0 != 0 {
                acc = self.fq.add(acc, self.fq.mul(FqElem(d), *t));
            }
        }
        acc
    }

    fn mul_binary(&self, a: u64, b: u64) -> u64 {
        let p = clmul(a, b);
        let low = (p as u64) & self.mask;
        let high = (p >> self.m) as u64;
        let mut r = low;
        for (b, tab) in self.red_bytes.iter().enumerate() {
            r ^= tab[((high >> (8 * b)) & 0xff) as usize];
        }
        r
    }

    fn mul_general(&self, a: FqmElem, b: FqmElem) -> FqmElem {
        let m = self.m;
        let q = self.fq.q() as u64;
        let ad: Vec<u64> = (0..m).map(|i| self.digit(a, i) as u64).collect();
        let bd: Vec<u64> = (0..m).map(|i| self.digit(b, i) as u64).collect();
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in ad.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in bd.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % q;
            }
        }
        for d in (m..2 * m - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for j in 0..m {
                let f = self.modulus[j].0 as u64;
                prod[d - m + j] = (prod[d - m + j] + (q - c) * f) % q;
            }
        }
        let digits: Vec<FqElem> = prod[..m].iter().map(|&v| FqElem(v as u32)).collect();
        self.pack(&digits)
    }
}

impl Field for Fqm {
    type Elem = FqmElem;

    fn zero(&self) -> FqmElem {
        FqmElem(0)
    }

    fn one(&self) -> FqmElem {
        FqmElem(1)
    }

    fn add(&self, a: FqmElem, b: FqmElem) -> FqmElem {
        if self.fq.q() == 2 {
            return FqmElem(a.0 ^ b.0);
        }
        let q = self.fq.q();
        let mut v = 0u64;
        for i in 0..self.m {
            let s = (self.digit(a, i) + self.digit(b, i)) % q;
            v |= (s as u64) << (i as u32 * self.bits);
        }
        FqmElem(v)
    }

    fn neg(&self, a: FqmElem) -> FqmElem {
        if self.fq.q() == 2 {
            return a;
        }
        let q = self.fq.q();
        let mut v = 0u64;
        for i in 0..self.m {
            let d = self.digit(a, i);
            let n = if d == 0 { 0 } else { q - d };
            v |= (n as u64) << (i as u32 * self.bits);
        }
        FqmElem(v)
    }

    fn mul(&self, a: FqmElem, b: FqmElem) -> FqmElem {
        if a.0 == 0 || b.0 == 0 {
            return FqmElem(0);
        }
        if self.fq.q() == 2 {
            FqmElem(self.mul_binary(a.0, b.0))
        } else {
            self.mul_general(a, b)
        }
    }

    fn inv(&self, a: FqmElem) -> Result<FqmElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FqmElem {
        if self.fq.q() == 2 {
            FqmElem(rng.gen::<u64>() & self.mask)
        } else {
            let d: Vec<FqElem> = (0..self.m).map(|_| self.fq.random(rng)).collect();
            self.pack(&d)
        }
    }

    fn prime_degree(&self) -> usize {
        self.m
    }

    fn prime_coords(&self, a: FqmElem) -> Vec<FqElem> {
        self.digits(a)
    }

    fn from_prime_coords(&self, c: &[FqElem]) -> FqmElem {
        self.pack(c)
    }

    fn scale(&self, a: FqmElem, c: FqElem) -> FqmElem {
        match c.0 {
            0 => FqmElem(0),
            1 => a,
            _ => {
                let q = self.fq.q() as u64;
                let mut v = 0u64;
                for i in 0..self.m {
                    let d = self.digit(a, i) as u64 * c.0 as u64 % q;
                    v |= d << (i as u32 * self.bits);
                }
                FqmElem(v)
            }
        }
    }

    fn embed_prime(&self, c: FqElem) -> FqmElem {
        self.embed(c)
    }

    fn prime_field(&self) -> PrimeField {
        self.fq
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Fqm {
        let fq = PrimeField::new(2).unwrap();
        // X^2 + X + 1
        Fqm::new(fq, &[FqElem(1), FqElem(1), FqElem(1)]).unwrap()
    }

    #[test]
    fn omega_squared_is_omega_plus_one() {
        let f = f4();
        let w = f.generator();
        assert_eq!(f.mul(w, w), f.add(w, f.one()));
        assert_eq!(f.frobenius(w, 1), f.add(w, f.one()));
        assert_eq!(f.frobenius(w, 2), w);
    }

    #[test]
    fn trace_values_in_f4() {
        let f = f4();
        let w = f.generator();
        assert_eq!(f.trace(w), FqElem(1));
        assert_eq!(f.trace(f.one()), FqElem(0));
        assert_eq!(f.trace(f.zero()), FqElem(0));
    }

    #[test]
    fn clmul_matches_bit_loop() {
        let a = 0xdead_beef_1234_5678u64;
        let b = 0x0f0f_a5a5_ffff_0001u64;
        let mut expect = 0u128;
        for i in 0..64 {
            if (b >> i) & 1 == 1 {
                expect ^= (a as u128) << i;
            }
        }
        assert_eq!(clmul(a, b), expect);
    }

    #[test]
    fn ternary_field_axioms() {
        // X^3 - X + 1 = X^3 + 2X + 1 is irreducible over F_3
        let fq = PrimeField::new(3).unwrap();
        let f = Fqm::new(fq, &[FqElem(1), FqElem(2), FqElem(0), FqElem(1)]).unwrap();
        assert_eq!(f.order(), 27);
        let mut nonzero = 0;
        for a in 0..64u64 {
            let x = FqmElem(a);
            if f.digits(x).iter().any(|d| d.0 > 2) {
                continue;
            }
            if a != 0 {
                nonzero += 1;
                assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
                assert_eq!(f.frobenius(x, 3), x);
            }
            assert_eq!(f.add(x, f.neg(x)), f.zero());
        }
        assert_eq!(nonzero, 26);
    }

    #[test]
    fn too_large_rejected() {
        let fq = PrimeField::new(2).unwrap();
        let mut md = vec![FqElem(0); 66];
        md[0] = FqElem(1);
        md[65] = FqElem(1);
        assert!(matches!(Fqm::new(fq, &md), Err(Error::TowerTooLarge(_))));
    }
}
