//! Dense univariate polynomials over any [`Field`], constant term first.
//!
//! Only what tower construction needs: Euclidean division, gcd, modular
//! exponentiation and Rabin's irreducibility test.

use crate::error::{Error, Result};
use crate::fieldtower::Field;

pub fn trim<F: Field>(f: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|&c| f.is_zero(c)) {
        p.pop();
    }
}

pub fn degree<F: Field>(f: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|&c| !f.is_zero(c))
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let mut r: Vec<F::Elem> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(f.zero());
            let y = b.get(i).copied().unwrap_or(f.zero());
            f.sub(x, y)
        })
        .collect();
    trim(f, &mut r);
    r
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = f.add(r[i + j], f.mul(x, y));
        }
    }
    trim(f, &mut r);
    r
}

/// Euclidean division `a = q * b + r` with `deg r < deg b`.
pub fn divrem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
    let db = degree(f, b).ok_or(Error::DivisionByZero)?;
    let lead_inv = f.inv(b[db])?;
    let mut r = a.to_vec();
    trim(f, &mut r);
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        q[shift] = c;
        for j in 0..=db {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, b[j]));
        }
        trim(f, &mut r);
    }
    trim(f, &mut q);
    Ok((q, r))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, m).expect("nonzero modulus").1
}

/// Monic gcd.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = degree(f, &x) {
        let inv = f.inv(x[d]).expect("nonzero lead");
        for c in x.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
    x
}

pub fn powmod<F: Field>(f: &F, base: &[F::Elem], mut e: u128, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = vec![f.one()];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = rem(f, &mul(f, &b, &b), m);
        }
    }
    acc
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `p` of degree `d` over a field with `order` elements is
/// irreducible iff X^(order^d) = X mod p and gcd(X^(order^(d/r)) - X, p) = 1
/// for every prime r dividing d.
pub fn is_irreducible<F: Field>(f: &F, p: &[F::Elem], order: u128) -> bool {
    let d = match degree(f, p) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(d) => d,
    };
    let p = &p[..=d];
    let x = vec![f.zero(), f.one()];
    // powers[i] = X^(order^i) mod p
    let mut powers = Vec::with_capacity(d + 1);
    powers.push(rem(f, &x, p));
    for i in 1..=d {
        let next = powmod(f, &powers[i - 1], order, p);
        powers.push(next);
    }
    if sub(f, &powers[d], &powers[0]) != Vec::<F::Elem>::new() {
        return false;
    }
    for r in prime_factors(d) {
        let h = sub(f, &powers[d / r], &x);
        let g = gcd(f, &h, p);
        if degree(f, &g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::{FqElem, PrimeField};

    fn p2(bits: &[u32]) -> Vec<FqElem> {
        bits.iter().map(|&b| FqElem(b)).collect()
    }

    #[test]
    fn binary_irreducibility_small_degrees() {
        let f = PrimeField::new(2).unwrap();
        assert!(is_irreducible(&f, &p2(&[1, 1, 1]), 2));
        assert!(!is_irreducible(&f, &p2(&[1, 0, 1]), 2));
        assert!(is_irreducible(&f, &p2(&[1, 1, 0, 1]), 2));
        // X^4 + X^2 + 1 = (X^2 + X + 1)^2
        assert!(!is_irreducible(&f, &p2(&[1, 0, 1, 0, 1]), 2));
        assert!(is_irreducible(&f, &p2(&[1, 1, 0, 0, 1]), 2));
    }

    #[test]
    fn count_binary_irreducibles_of_degree_six() {
        // Necklace count: (2^6 - 2^3 - 2^2 + 2) / 6 = 9
        let f = PrimeField::new(2).unwrap();
        let count = (0..64u32)
            .filter(|v| {
                let mut c: Vec<FqElem> = (0..6).map(|i| FqElem((v >> i) & 1)).collect();
                c.push(FqElem(1));
                is_irreducible(&f, &c, 2)
            })
            .count();
        assert_eq!(count, 9);
    }

    #[test]
    fn divrem_reconstructs() {
        let f = PrimeField::new(5).unwrap();
        let a = vec![FqElem(3), FqElem(0), FqElem(4), FqElem(1), FqElem(2)];
        let b = vec![FqElem(1), FqElem(2), FqElem(3)];
        let (q, r) = divrem(&f, &a, &b).unwrap();
        let back = sub(&f, &a, &r);
        assert_eq!(back, mul(&f, &q, &b));
        assert!(r.len() < 3);
    }
}
