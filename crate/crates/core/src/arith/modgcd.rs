//! Gcd in `Z[v, v^{-1}]` by the modular method.
//!
//! For each prime the monic gcd modulo that prime is computed; the image
//! scaled by `gcd(lc a, lc b)` is lifted to the integers by Chinese
//! remaindering and accepted once it divides both inputs over `Z`. A prime
//! whose gcd degree exceeds the smallest seen so far is discarded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::laurent::{gcd_i64, LaurentPolynomial};

const MERSENNE31: u64 = (1 << 31) - 1;

/// Primes below `2^31`, so products fit in a `u64`.
const PRIMES: [u64; 12] = [
    MERSENNE31,
    2_147_483_629,
    2_147_483_587,
    2_147_483_579,
    2_147_483_563,
    2_147_483_549,
    2_147_483_543,
    2_147_483_497,
    2_147_483_489,
    2_147_483_477,
    2_147_483_423,
    2_147_483_399,
];

#[derive(Clone, Copy)]
pub(crate) struct ModP {
    p: u64,
}

impl ModP {
    pub(crate) fn new(p: u64) -> Self {
        assert!(p < (1 << 32));
        Self { p }
    }

    #[inline]
    pub(crate) fn reduce(&self, x: u64) -> u64 {
        if self.p == MERSENNE31 {
            let y = (x & MERSENNE31) + (x >> 31);
            let y = (y & MERSENNE31) + (y >> 31);
            if y >= MERSENNE31 {
                y - MERSENNE31
            } else {
                y
            }
        } else {
            x % self.p
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub(crate) fn from_i64(&self, c: i64) -> u64 {
        let r = c.rem_euclid(self.p as i64);
        r as u64
    }

    pub(crate) fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd of two dense polynomials modulo `m.p` (coefficients low first).
pub(crate) fn gcd_mod(m: ModP, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a <- a mod b, with b made monic first.
        let inv = m.inv(*b.last().unwrap());
        for c in b.iter_mut() {
            *c = m.mul(*c, inv);
        }
        let db = b.len() - 1;
        let p = m.p;
        while a.len() > db {
            let top = a.len() - 1;
            let c = a[top];
            if c != 0 {
                let shift = top - db;
                let neg = p - c;
                for (j, bj) in b.iter().enumerate() {
                    let idx = shift + j;
                    a[idx] = m.reduce(a[idx] + m.mul(neg, *bj));
                }
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        let inv = m.inv(lead);
        for c in a.iter_mut() {
            *c = m.mul(*c, inv);
        }
    }
    a
}

fn primitive_part(p: &LaurentPolynomial) -> (i64, LaurentPolynomial) {
    let c = p.content();
    let prim = LaurentPolynomial::from_dense(0, p.dense().iter().map(|x| x / c).collect());
    (c, prim)
}

/// Normalized gcd; see [`LaurentPolynomial::gcd`].
pub(crate) fn gcd(a: &LaurentPolynomial, b: &LaurentPolynomial) -> LaurentPolynomial {
    if a.is_zero() {
        return primitive_normalized(b);
    }
    if b.is_zero() {
        return primitive_normalized(a);
    }
    let (ca, pa) = primitive_part(&a.normalize_unit());
    let (cb, pb) = primitive_part(&b.normalize_unit());
    let content = gcd_i64(ca, cb);
    if pa.max_exponent() == Some(0) || pb.max_exponent() == Some(0) {
        return LaurentPolynomial::monomial(content, 0);
    }
    let gamma = gcd_i64(pa.leading_coeff(), pb.leading_coeff());

    let mut best_degree = usize::MAX;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    for &p in PRIMES.iter() {
        let m = ModP::new(p);
        if pa.leading_coeff() % p as i64 == 0 || pb.leading_coeff() % p as i64 == 0 {
            continue;
        }
        let ra: Vec<u64> = pa.dense().iter().map(|c| m.from_i64(*c)).collect();
        let rb: Vec<u64> = pb.dense().iter().map(|c| m.from_i64(*c)).collect();
        let g = gcd_mod(m, &ra, &rb);
        let degree = g.len() - 1;
        if degree == 0 {
            return LaurentPolynomial::monomial(content, 0);
        }
        if degree > best_degree {
            continue;
        }
        let scale = m.from_i64(gamma);
        let image: Vec<u64> = g.iter().map(|c| m.mul(*c, scale)).collect();
        if degree < best_degree {
            best_degree = degree;
            residues = image.iter().map(|c| BigInt::from(*c)).collect();
            modulus = BigInt::from(p);
        } else {
            let pb_big = BigInt::from(p);
            let inv = BigInt::from(m.inv(m.reduce((&modulus % &pb_big).to_u64().unwrap())));
            for (r, c) in residues.iter_mut().zip(image.iter()) {
                // r' ≡ r mod modulus, r' ≡ c mod p.
                let diff = (BigInt::from(*c) - &*r).mod_floor(&pb_big);
                let t = (diff * &inv).mod_floor(&pb_big);
                *r += t * &modulus;
            }
            modulus *= pb_big;
        }
        let half = &modulus >> 1;
        let lifted: Option<Vec<i64>> = residues
            .iter()
            .map(|r| {
                let s = if r > &half { r - &modulus } else { r.clone() };
                s.to_i64()
            })
            .collect();
        let Some(lifted) = lifted else { continue };
        let candidate = LaurentPolynomial::from_dense(0, lifted);
        if candidate.is_zero() {
            continue;
        }
        let (_, candidate) = primitive_part(&candidate);
        if pa.div_exact(&candidate).is_some() && pb.div_exact(&candidate).is_some() {
            return candidate.normalize_unit().scale(content);
        }
    }
    panic!("modular gcd did not stabilise over the available primes; inputs have unexpectedly large coefficients");
}

fn primitive_normalized(p: &LaurentPolynomial) -> LaurentPolynomial {
    p.normalize_unit()
}
