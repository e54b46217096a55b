//! Prime fields `F_p` containing a primitive `N`-th root of unity.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::field::Field;
use super::primes::{factorize, is_prime};
use super::text::parse_terms;
use super::ArithError;

struct PrimeInner {
    p: u64,
    order: u64,
    powers: Vec<u64>,
}

/// `F_p` with `p ≡ 1 (mod N)`; the distinguished root is `g^{(p−1)/N}` for the
/// smallest generator `g` of `F_p^×`.
#[derive(Clone)]
pub struct PrimeField {
    inner: Arc<PrimeInner>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

impl PrimeField {
    pub fn new(p: u64, order: u64) -> Result<Self, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if order == 0 || (p - 1) % order != 0 {
            return Err(ArithError::NoRootOfUnity { p, order });
        }
        let cofactors: Vec<u64> = factorize(p - 1).iter().map(|(q, _)| (p - 1) / q).collect();
        let generator = (2..p)
            .find(|g| cofactors.iter().all(|c| powmod(*g, *c, p) != 1))
            .unwrap_or(1);
        let zeta = powmod(generator, (p - 1) / order, p);
        let powers = (0..order).map(|e| powmod(zeta, e, p)).collect();
        Ok(Self { inner: Arc::new(PrimeInner { p, order, powers }) })
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.inner.p
    }

    fn from_i64(&self, value: i64) -> u64 {
        value.rem_euclid(self.inner.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.inner.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        let p = self.inner.p;
        if a >= b {
            a - b
        } else {
            p - (b - a)
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.inner.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.inner.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| powmod(*a, self.inner.p - 2, self.inner.p))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn root_order(&self) -> u64 {
        self.inner.order
    }

    fn zeta_pow(&self, e: i64) -> u64 {
        self.inner.powers[e.rem_euclid(self.inner.order as i64) as usize]
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, text: &str) -> Result<u64, ArithError> {
        let p = BigInt::from(self.inner.p);
        let mut acc = 0u64;
        for (e, c) in parse_terms(text, 'z')? {
            let num = c.numer().mod_floor(&p).to_u64().unwrap_or(0);
            let den = c.denom().mod_floor(&p);
            if den.is_zero() {
                return Err(ArithError::Parse(format!(
                    "denominator divisible by {} in {text:?}",
                    self.inner.p
                )));
            }
            let den_inv = self.inv(&den.to_u64().unwrap_or(0)).ok_or(ArithError::DivisionByZero)?;
            let term = self.mul(&self.mul(&num, &den_inv), &self.zeta_pow(e));
            acc = self.add(&acc, &term);
        }
        Ok(acc)
    }

    fn name(&self) -> String {
        format!("F_{}", self.inner.p)
    }
}
