//! Integer Laurent polynomials in the variable `v`.
//!
//! Coefficients are stored densely between the lowest and highest nonzero
//! exponent. Arithmetic on `i64` coefficients panics on overflow rather than
//! wrapping; every quantity this crate produces stays far below that range.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::text::{format_terms, parse_terms};
use super::ArithError;

/// A finite sum `Σ c_e v^e` with `e ∈ Z` and `c_e ∈ Z`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    /// Exponent of `coeffs[0]`; zero for the zero polynomial.
    low: i64,
    /// Dense coefficients; first and last entries are nonzero unless empty.
    coeffs: Vec<i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The variable `v`.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    /// `c·v^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        Self::from_dense(e, vec![c])
    }

    /// Builds `Σ coeffs[i] v^{low+i}`, trimming zeros at both ends.
    pub fn from_dense(low: i64, mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| **c == 0).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        Self { low: low + lead_zeros as i64, coeffs }
    }

    /// Builds a polynomial from (exponent, coefficient) pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let terms: Vec<(i64, i64)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(lo);
        let mut coeffs = vec![0i64; (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    /// Ordinary polynomial from coefficients listed from `v^0` upwards.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_dense(0, coeffs.to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    /// Lowest exponent with nonzero coefficient, `None` for zero.
    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with nonzero coefficient, `None` for zero.
    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `v^e`.
    pub fn coeff(&self, e: i64) -> i64 {
        let idx = e - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            0
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// Coefficient of the highest power, zero for the zero polynomial.
    pub fn leading_coeff(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Nonzero (exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(i, c)| (self.low + i as i64, *c))
    }

    /// Number of nonzero coefficients.
    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|c| **c != 0).count()
    }

    /// Dense coefficients starting at [`Self::min_exponent`].
    pub fn dense(&self) -> &[i64] {
        &self.coeffs
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_dense(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Substitutes `v ↦ v^k` (any nonzero `k`, including negative).
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution v -> v^0 is not a ring map on Laurent polynomials");
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c)))
    }

    /// The bar involution `v ↦ v^{-1}`.
    pub fn bar(&self) -> Self {
        self.substitute_power(-1)
    }

    /// Value at `v = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Raises to a nonnegative power.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Gcd of the integer coefficients (nonnegative, zero for zero).
    pub fn content(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |g, c| gcd_i64(g, *c))
    }

    /// Division with remainder by a divisor whose leading coefficient is ±1.
    ///
    /// Both polynomials are read as ordinary polynomials after moving their
    /// lowest exponents to zero; the quotient carries the exponent offset so
    /// that `self = q·divisor + r` holds exactly, and `r` has no term at or
    /// above `divisor`'s top exponent relative to `self`'s lowest one.
    pub fn div_rem_unit_lead(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading_coeff();
        assert!(lead == 1 || lead == -1, "divisor must have leading coefficient ±1");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let (quot, rem) = divide_unit_lead(self.coeffs.clone(), &divisor.coeffs);
        let q = Self::from_dense(self.low - divisor.low, quot);
        let r = Self::from_dense(self.low, rem);
        (q, r)
    }

    /// Exact quotient `self / divisor` in `Z[v, v^{-1}]`, if it exists.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = divisor.leading_coeff();
        if lead == 1 || lead == -1 {
            let (q, r) = self.div_rem_unit_lead(divisor);
            return r.is_zero().then_some(q);
        }
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![0i64; qlen];
        for qi in (0..qlen).rev() {
            let top = rem[qi + dlen - 1];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return None;
            }
            let qc = top / lead;
            quot[qi] = qc;
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[qi + j] -= qc * dj;
            }
        }
        rem.iter()
            .all(|c| *c == 0)
            .then(|| Self::from_dense(self.low - divisor.low, quot))
    }

    /// Remainder modulo a polynomial `modulus` with nonzero constant term and
    /// leading coefficient ±1; negative exponents are first cleared using the
    /// inverse of `v` modulo `modulus`. The result is an ordinary polynomial of
    /// degree below `deg(modulus)` and depends only on the class of `self`.
    pub fn reduce_mod(&self, modulus: &Self) -> Self {
        assert_eq!(modulus.min_exponent(), Some(0), "modulus must be an ordinary polynomial with nonzero constant term");
        let deg = modulus.max_exponent().unwrap_or(0);
        if deg == 0 {
            return Self::zero();
        }
        if self.is_zero() {
            return Self::zero();
        }
        let shift = (-self.low).max(0);
        let mut acc = self.shift(shift).rem_polynomial(modulus);
        if shift > 0 {
            let inv_v = inverse_of_v(modulus);
            for _ in 0..shift {
                acc = (&acc * &inv_v).rem_polynomial(modulus);
            }
        }
        acc
    }

    /// Remainder of an ordinary polynomial (no negative exponents) modulo a
    /// polynomial with leading coefficient ±1 and nonzero constant term.
    fn rem_polynomial(&self, modulus: &Self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        debug_assert!(self.low >= 0 && modulus.low == 0);
        let mut dense = vec![0i64; self.low as usize];
        dense.extend_from_slice(&self.coeffs);
        Self::from_dense(0, divide_unit_lead(dense, &modulus.coeffs).1)
    }

    /// Normalized gcd: lowest exponent 0, content-primitive, positive leading
    /// coefficient. Both arguments zero gives zero.
    pub fn gcd(&self, other: &Self) -> Self {
        super::modgcd::gcd(self, other)
    }

    /// Canonical associate up to units `±v^k` and positive content: lowest
    /// exponent 0 and positive leading coefficient.
    pub fn normalize_unit(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p = self.shift(-self.low);
        if p.leading_coeff() < 0 {
            -p
        } else {
            p
        }
    }

    /// Coefficients as big integers, for interfaces that need them.
    pub fn coeff_bigints(&self) -> Vec<(i64, BigInt)> {
        self.terms().map(|(e, c)| (e, BigInt::from(c))).collect()
    }
}

/// Long division of dense coefficient vectors (low first) by a divisor with
/// leading coefficient ±1; returns (quotient, remainder) as dense vectors
/// aligned at the dividend's lowest index.
fn divide_unit_lead(mut rem: Vec<i64>, divisor: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let dlen = divisor.len();
    let lead = divisor[dlen - 1];
    if rem.len() < dlen {
        return (Vec::new(), rem);
    }
    let sparse: Vec<(usize, i64)> = divisor
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (i, *c))
        .collect();
    let qlen = rem.len() - dlen + 1;
    let mut quot = vec![0i64; qlen];
    for qi in (0..qlen).rev() {
        let top = rem[qi + dlen - 1];
        if top == 0 {
            continue;
        }
        let qc = top * lead;
        quot[qi] = qc;
        for &(j, dj) in &sparse {
            rem[qi + j] -= qc * dj;
        }
    }
    (quot, rem)
}

/// `v^{-1}` modulo `f`, where `f(0) = ±1`: from `f = f(0) + v·g` we get
/// `v·(−f(0)·g) ≡ 1`.
fn inverse_of_v(f: &LaurentPolynomial) -> LaurentPolynomial {
    let c0 = f.coeff(0);
    assert!(c0 == 1 || c0 == -1, "v is invertible only modulo polynomials with unit constant term");
    let g = LaurentPolynomial::from_dense(0, f.coeffs[1..].to_vec());
    g.scale(-c0)
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

fn add_dense(a: &LaurentPolynomial, b: &LaurentPolynomial, sign: i64) -> LaurentPolynomial {
    if a.is_zero() {
        return b.scale(sign);
    }
    if b.is_zero() {
        return a.clone();
    }
    let lo = a.low.min(b.low);
    let hi = a.max_exponent().unwrap().max(b.max_exponent().unwrap());
    let mut out = vec![0i64; (hi - lo + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        out[(a.low - lo) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        out[(b.low - lo) as usize + i] += sign * c;
    }
    LaurentPolynomial::from_dense(lo, out)
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        add_dense(self, rhs, 1)
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        add_dense(self, rhs, -1)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPolynomial::from_dense(self.low + rhs.low, out)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: Self) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        (&self).neg()
    }
}

impl PartialOrd for LaurentPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPolynomial {
    /// An arbitrary but fixed total order (by exponent range, then coefficients).
    fn cmp(&self, other: &Self) -> Ordering {
        (self.low, &self.coeffs).cmp(&(other.low, &other.coeffs))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, num_rational::BigRational)> = self
            .terms()
            .map(|(e, c)| (e, num_rational::BigRational::from_integer(c.into())))
            .collect();
        f.write_str(&format_terms(terms.iter().map(|(e, c)| (*e, c)), 'v'))
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl FromStr for LaurentPolynomial {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let terms = parse_terms(s, 'v')?;
        let mut out = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if !c.is_integer() {
                return Err(ArithError::Parse(format!("non-integer coefficient {c} in {s:?}")));
            }
            let c = c
                .to_integer()
                .to_i64()
                .ok_or_else(|| ArithError::Parse(format!("coefficient out of range in {s:?}")))?;
            if !c.is_zero() {
                out.push((e, c));
            }
        }
        Ok(Self::from_terms(out))
    }
}

impl serde::Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `[a]_v = 1 + v + … + v^{a-1}`.
pub fn q_integer(a: u64) -> LaurentPolynomial {
    LaurentPolynomial::from_dense(0, vec![1; a as usize])
}

/// Gaussian binomial `[a choose b]_v`, built from the Pascal-type recursion
/// `[a,b] = [a-1,b-1] + v^b [a-1,b]`.
pub fn quantum_binomial(a: u64, b: u64) -> Result<LaurentPolynomial, ArithError> {
    if b > a {
        return Err(ArithError::BinomialRange { a, b });
    }
    let b = b as usize;
    // row[j] holds [r choose j] for the current r.
    let mut row: Vec<LaurentPolynomial> = vec![LaurentPolynomial::one()];
    for r in 1..=a as usize {
        let width = r.min(b) + 1;
        let mut next = Vec::with_capacity(width);
        for j in 0..width {
            let left = if j == 0 { LaurentPolynomial::zero() } else { row[j - 1].clone() };
            let right = if j < row.len() && j < r {
                row[j].shift(j as i64)
            } else {
                LaurentPolynomial::zero()
            };
            next.push(&left + &right);
        }
        row = next;
    }
    Ok(row[b].clone())
}
