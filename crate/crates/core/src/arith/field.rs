//! The coefficient-field abstraction shared by every algorithm in the crate.
//!
//! A [`Field`] value is a context object (it knows the modulus, the chosen
//! root of unity, cached powers) and elements are plain data. Algorithms take
//! `&F` alongside elements, so the same code runs over `Q(ζ_N)` and over a
//! prime field `F_p` with `p ≡ 1 (mod N)`.

use std::fmt::Debug;
use std::hash::Hash;

use super::laurent::LaurentPolynomial;
use super::ArithError;

pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, value: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Order `N` of the distinguished primitive root of unity `ζ`.
    fn root_order(&self) -> u64;
    /// `ζ^e` for any integer `e`.
    fn zeta_pow(&self, e: i64) -> Self::Elem;

    /// Text form of an element (a polynomial in `z` for `Q(ζ_N)`).
    fn format(&self, a: &Self::Elem) -> String;
    /// Reads a polynomial in `z` with rational coefficients and evaluates it
    /// at the distinguished root.
    fn parse(&self, text: &str) -> Result<Self::Elem, ArithError>;
    /// Short description such as `Q(zeta_6)` or `F_7`.
    fn name(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `acc += a·b`.
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        if self.is_zero(a) || self.is_zero(b) {
            return;
        }
        let prod = self.mul(a, b);
        self.add_assign(acc, &prod);
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Evaluates an integer Laurent polynomial at `x` (Horner's rule); `None`
    /// when negative powers are present and `x` is zero.
    fn eval_laurent(&self, p: &LaurentPolynomial, x: &Self::Elem) -> Option<Self::Elem> {
        let Some(low) = p.min_exponent() else {
            return Some(self.zero());
        };
        let mut acc = self.zero();
        for c in p.dense().iter().rev() {
            acc = self.mul(&acc, x);
            if *c != 0 {
                acc = self.add(&acc, &self.from_i64(*c));
            }
        }
        let factor = if low >= 0 {
            self.pow(x, low as u64)
        } else {
            self.pow(&self.inv(x)?, low.unsigned_abs())
        };
        Some(self.mul(&acc, &factor))
    }
}
