//! Small finite fields `GF(p^a)` as explicit tables.
//!
//! Element `e` stands for the polynomial whose coefficients are the base-`p`
//! digits of `e`, lowest degree first. So `0` is zero, `1` is one, and for
//! `a = 1` the field is the integers mod `p`.

use crate::error::{Error, Result};

/// Largest field size supported.
pub const MAX_FIELD_SIZE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: usize,
    a: usize,
    modulus: Vec<usize>,
    add: Vec<u8>,
    mul: Vec<u8>,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn digits(mut e: usize, p: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(e % p);
        e /= p;
    }
    out
}

fn undigits(coeffs: &[usize], p: usize) -> usize {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `f` modulo the monic polynomial `g` (coefficient lists,
/// lowest degree first) over `GF(p)`.
fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = r.pop().expect("nonempty");
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dg;
        for (k, &c) in g[..dg].iter().enumerate() {
            r[shift + k] = (r[shift + k] + p * p - lead * c % p) % p;
        }
    }
    r
}

fn poly_mul(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, &x) in f.iter().enumerate() {
        for (j, &y) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Monic polynomial of degree `deg` whose lower coefficients are the digits of `v`.
fn monic(v: usize, deg: usize, p: usize) -> Vec<usize> {
    let mut m = digits(v, p, deg);
    m.push(1);
    m
}

/// True when no monic polynomial of degree `1..=deg/2` divides `f`.
fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    (1..=deg / 2).all(|d| {
        (0..p.pow(d as u32)).all(|v| poly_rem(f, &monic(v, d, p), p).iter().any(|&c| c != 0))
    })
}

impl FiniteField {
    /// Builds `GF(p^a)` modulo the first monic irreducible polynomial of
    /// degree `a`, ordering candidates by their lower coefficients read as a
    /// base-`p` number with the highest degree most significant.
    pub fn new(p: u64, a: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 {
            return Err(Error::OrderTooSmall { order: 1, min: 2 });
        }
        let size = p.checked_pow(a).filter(|&s| s as usize <= MAX_FIELD_SIZE);
        let Some(size) = size else {
            return Err(Error::OrderTooLarge {
                order: p.saturating_pow(a) as usize,
                max: MAX_FIELD_SIZE,
            });
        };
        let (p, a, n) = (p as usize, a as usize, size as usize);
        let modulus = (0..n)
            .map(|v| monic(v, a, p))
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for x in 0..n {
            let dx = digits(x, p, a);
            for y in 0..n {
                let dy = digits(y, p, a);
                let sum: Vec<usize> = dx.iter().zip(&dy).map(|(u, v)| (u + v) % p).collect();
                add[x * n + y] = undigits(&sum, p) as u8;
                let prod = poly_rem(&poly_mul(&dx, &dy, p), &modulus, p);
                mul[x * n + y] = undigits(&prod, p) as u8;
            }
        }
        Ok(Self {
            p,
            a,
            modulus,
            add,
            mul,
        })
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.a
    }

    pub fn size(&self) -> usize {
        self.p.pow(self.a as u32)
    }

    /// Coefficients of the reducing polynomial, lowest degree first.
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size() + y] as usize
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size() + y] as usize
    }

    pub fn neg(&self, x: usize) -> usize {
        (0..self.size())
            .find(|&y| self.add(x, y) == 0)
            .expect("additive inverse")
    }

    pub fn inv(&self, x: usize) -> Option<usize> {
        (0..self.size()).find(|&y| self.mul(x, y) == 1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, x: usize) -> Option<usize> {
        if x == 0 {
            return None;
        }
        let mut y = x;
        let mut k = 1;
        while y != 1 {
            y = self.mul(y, x);
            k += 1;
        }
        Some(k)
    }

    /// Exhaustive check of the field axioms on the tables.
    pub fn check_axioms(&self) -> bool {
        let n = self.size();
        let e = 0..n;
        let pairs = || e.clone().flat_map(|x| (0..n).map(move |y| (x, y)));
        let triples = || pairs().flat_map(|(x, y)| (0..n).map(move |z| (x, y, z)));
        pairs().all(|(x, y)| self.add(x, y) == self.add(y, x) && self.mul(x, y) == self.mul(y, x))
            && e.clone()
                .all(|x| self.add(x, 0) == x && self.mul(x, 1) == x)
            && e.clone().all(|x| (0..n).any(|y| self.add(x, y) == 0))
            && (1..n).all(|x| self.inv(x).is_some())
            && triples().all(|(x, y, z)| {
                self.add(self.add(x, y), z) == self.add(x, self.add(y, z))
                    && self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))
                    && self.mul(x, self.add(y, z)) == self.add(self.mul(x, y), self.mul(x, z))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_is_xor_and() {
        let f = FiniteField::new(2, 1).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(f.add(x, y), x ^ y);
                assert_eq!(f.mul(x, y), x & y);
            }
        }
    }

    #[test]
    fn gf4_modulus_and_cyclic_group() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert!((1..4).any(|x| f.order_of(x) == Some(3)));
        assert!(f.check_axioms());
    }

    #[test]
    fn chosen_moduli() {
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn all_supported_fields_satisfy_axioms() {
        for (p, a) in [
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (7, 1),
            (2, 3),
            (3, 2),
            (11, 1),
            (13, 1),
            (2, 4),
        ] {
            let f = FiniteField::new(p, a).unwrap();
            assert!(f.check_axioms(), "GF({p}^{a})");
            let n = f.size();
            assert!(
                (1..n).any(|x| f.order_of(x) == Some(n - 1)),
                "GF({p}^{a}) cyclic"
            );
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FiniteField::new(2, 5),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!(matches!(
            FiniteField::new(17, 1),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!(matches!(
            FiniteField::new(2, 0),
            Err(Error::OrderTooSmall { .. })
        ));
    }
}
