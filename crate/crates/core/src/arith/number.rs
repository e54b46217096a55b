//! Exact elements of the cyclotomic field `Q(ζ_N)`.
//!
//! An element is a rational polynomial in `ζ` of degree below `φ(N)`, kept
//! reduced modulo `Φ_N`. [`CyclotomicField`] is the matching [`Field`]
//! context; the standalone operator impls on [`CyclotomicNumber`] look the
//! modulus up in the shared cyclotomic cache.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclo::cyclotomic_shared;
use super::field::Field;
use super::laurent::LaurentPolynomial;
use super::text::{format_terms, parse_terms};
use super::ArithError;

/// An element of `Q(ζ_N)` in the power basis `1, ζ, …, ζ^{φ(N)−1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u64,
    coords: Vec<BigRational>,
}

fn modulus_of(conductor: u64) -> Arc<LaurentPolynomial> {
    cyclotomic_shared(conductor).expect("conductor is positive")
}

/// Reduces a coefficient vector modulo the monic `modulus` (low first).
fn reduce(mut t: Vec<BigRational>, modulus: &[i64]) -> Vec<BigRational> {
    let deg = modulus.len() - 1;
    if t.len() <= deg {
        t.resize(deg, BigRational::zero());
        return t;
    }
    for i in (deg..t.len()).rev() {
        if t[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut t[i], BigRational::zero());
        for (j, mj) in modulus[..deg].iter().enumerate() {
            if *mj != 0 {
                let idx = i - deg + j;
                t[idx] -= &c * BigRational::from_integer((*mj).into());
            }
        }
    }
    t.truncate(deg);
    t
}

fn is_scalar(a: &[BigRational]) -> bool {
    a.iter().skip(1).all(Zero::is_zero)
}

fn mul_coords(a: &[BigRational], b: &[BigRational], modulus: &[i64]) -> Vec<BigRational> {
    let deg = modulus.len() - 1;
    if is_scalar(a) {
        return scale(b, &a[0]);
    }
    if is_scalar(b) {
        return scale(a, &b[0]);
    }
    let mut t = vec![BigRational::zero(); 2 * deg - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                t[i + j] += x * y;
            }
        }
    }
    reduce(t, modulus)
}

fn scale(a: &[BigRational], c: &BigRational) -> Vec<BigRational> {
    if c.is_zero() {
        return vec![BigRational::zero(); a.len()];
    }
    if c.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| if x.is_zero() { x.clone() } else { x * c }).collect()
}

fn trim_poly(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Inverse of `a` modulo the irreducible `modulus` by the extended Euclidean
/// algorithm over `Q`.
fn inv_coords(a: &[BigRational], modulus: &[i64]) -> Option<Vec<BigRational>> {
    let deg = modulus.len() - 1;
    let mut r0: Vec<BigRational> = modulus.iter().map(|c| BigRational::from_integer((*c).into())).collect();
    let mut r1 = a.to_vec();
    trim_poly(&mut r1);
    if r1.is_empty() {
        return None;
    }
    // Invariant: s_i · a ≡ r_i (mod modulus).
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while r1.len() > 1 {
        let (q, r) = divrem_q(&r0, &r1);
        let qs = poly_mul_q(&q, &s1);
        let s2 = poly_sub_q(&s0, &qs);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        if r1.is_empty() {
            return None;
        }
    }
    let c = r1[0].recip();
    let mut out: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
    if out.len() > deg {
        let mut m = modulus.to_vec();
        m.truncate(deg + 1);
        out = reduce(out, &m);
    }
    out.resize(deg, BigRational::zero());
    Some(out)
}

fn divrem_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim_poly(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = &r[i] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[i - db + j] -= &c * bj;
            }
        }
        q[i - db] = c;
    }
    r.truncate(db);
    trim_poly(&mut r);
    trim_poly(&mut q);
    (q, r)
}

fn poly_mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_poly(&mut out);
    out
}

fn poly_sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim_poly(&mut out);
    out
}

impl CyclotomicNumber {
    /// The element with the given power-basis coordinates (padded or reduced
    /// as needed).
    pub fn from_coords(conductor: u64, coords: Vec<BigRational>) -> Self {
        let modulus = modulus_of(conductor);
        Self { conductor, coords: reduce(coords, modulus.dense()) }
    }

    pub fn from_integer(conductor: u64, value: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(value.into()))
    }

    pub fn from_rational(conductor: u64, value: BigRational) -> Self {
        let deg = modulus_of(conductor).dense().len() - 1;
        let mut coords = vec![BigRational::zero(); deg];
        coords[0] = value;
        Self { conductor, coords }
    }

    pub fn zero(conductor: u64) -> Self {
        Self::from_integer(conductor, 0)
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_integer(conductor, 1)
    }

    /// `ζ^e` for the generator `ζ` of `Q(ζ_N)`.
    pub fn zeta_power(conductor: u64, e: i64) -> Self {
        let e = e.rem_euclid(conductor as i64) as usize;
        let mut t = vec![BigRational::zero(); e + 1];
        t[e] = BigRational::one();
        Self::from_coords(conductor, t)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coordinates, length `φ(N)`.
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && is_scalar(&self.coords)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self, ArithError> {
        let modulus = modulus_of(self.conductor);
        inv_coords(&self.coords, modulus.dense())
            .map(|coords| Self { conductor: self.conductor, coords })
            .ok_or(ArithError::DivisionByZero)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.conductor);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Multiplicative order if it divides `2N` (the roots of unity in
    /// `Q(ζ_N)`), otherwise `None`.
    pub fn root_order(&self) -> Option<u64> {
        let bound = 2 * self.conductor;
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// True iff this is a primitive `N`-th root of unity for its conductor.
    pub fn is_primitive_root(&self) -> bool {
        self.root_order() == Some(self.conductor)
    }

    /// Reads a polynomial in `z`, reducing it modulo `Φ_N`.
    pub fn parse(conductor: u64, text: &str) -> Result<Self, ArithError> {
        let terms = parse_terms(text, 'z')?;
        let mut acc = Self::zero(conductor);
        for (e, c) in terms {
            let term = &Self::zeta_power(conductor, e) * &Self::from_rational(conductor, c);
            acc = &acc + &term;
        }
        Ok(acc)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.conductor, other.conductor,
            "cyclotomic numbers from different fields"
        );
    }
}

/// The generator `ζ` of `Q(ζ_N)`, whose minimal polynomial is `Φ_N`.
pub fn root_of_unity(conductor: u64) -> Result<CyclotomicNumber, ArithError> {
    if conductor == 0 {
        return Err(ArithError::ZeroIndex);
    }
    Ok(CyclotomicNumber::zeta_power(conductor, 1))
}

/// `p(x)` by Horner's rule.
pub fn evaluate(p: &LaurentPolynomial, x: &CyclotomicNumber) -> Result<CyclotomicNumber, ArithError> {
    CyclotomicField::new(x.conductor)?
        .eval_laurent(p, x)
        .ok_or(ArithError::DivisionByZero)
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        self.check_same(rhs);
        CyclotomicNumber {
            conductor: self.conductor,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self.check_same(rhs);
        CyclotomicNumber {
            conductor: self.conductor,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        self.check_same(rhs);
        let modulus = modulus_of(self.conductor);
        CyclotomicNumber {
            conductor: self.conductor,
            coords: mul_coords(&self.coords, &rhs.coords, modulus.dense()),
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coords.iter().enumerate().rev().map(|(e, c)| (e as i64, c));
        f.write_str(&format_terms(terms, 'z'))
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in Q(zeta_{})", self, self.conductor)
    }
}

struct CyclotomicInner {
    order: u64,
    modulus: Vec<i64>,
    powers: Vec<CyclotomicNumber>,
}

/// The field `Q(ζ_N)` as a [`Field`] context.
#[derive(Clone)]
pub struct CyclotomicField {
    inner: Arc<CyclotomicInner>,
}

impl CyclotomicField {
    pub fn new(order: u64) -> Result<Self, ArithError> {
        if order == 0 {
            return Err(ArithError::ZeroIndex);
        }
        let modulus = modulus_of(order).dense().to_vec();
        let powers = (0..order as i64)
            .map(|e| CyclotomicNumber::zeta_power(order, e))
            .collect();
        Ok(Self { inner: Arc::new(CyclotomicInner { order, modulus, powers }) })
    }

    /// Degree `φ(N)` of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    fn wrap(&self, coords: Vec<BigRational>) -> CyclotomicNumber {
        CyclotomicNumber { conductor: self.inner.order, coords }
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Field for CyclotomicField {
    type Elem = CyclotomicNumber;

    fn zero(&self) -> CyclotomicNumber {
        self.wrap(vec![BigRational::zero(); self.degree()])
    }

    fn one(&self) -> CyclotomicNumber {
        self.from_i64(1)
    }

    fn from_i64(&self, value: i64) -> CyclotomicNumber {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[0] = BigRational::from_integer(value.into());
        self.wrap(coords)
    }

    fn add(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.wrap(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    fn sub(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.wrap(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    fn mul(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.wrap(mul_coords(&a.coords, &b.coords, &self.inner.modulus))
    }

    fn neg(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        self.wrap(a.coords.iter().map(|x| -x).collect())
    }

    fn inv(&self, a: &CyclotomicNumber) -> Option<CyclotomicNumber> {
        inv_coords(&a.coords, &self.inner.modulus).map(|c| self.wrap(c))
    }

    fn is_zero(&self, a: &CyclotomicNumber) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &CyclotomicNumber) -> bool {
        a.is_one()
    }

    fn add_assign(&self, a: &mut CyclotomicNumber, b: &CyclotomicNumber) {
        for (x, y) in a.coords.iter_mut().zip(&b.coords) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }

    fn root_order(&self) -> u64 {
        self.inner.order
    }

    fn zeta_pow(&self, e: i64) -> CyclotomicNumber {
        self.inner.powers[e.rem_euclid(self.inner.order as i64) as usize].clone()
    }

    fn format(&self, a: &CyclotomicNumber) -> String {
        a.to_string()
    }

    fn parse(&self, text: &str) -> Result<CyclotomicNumber, ArithError> {
        CyclotomicNumber::parse(self.inner.order, text)
    }

    fn name(&self) -> String {
        format!("Q(zeta_{})", self.inner.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta(n: u64) -> CyclotomicNumber {
        root_of_unity(n).unwrap()
    }

    #[test]
    fn sixth_roots() {
        let z = zeta(6);
        assert_eq!(z.pow(3).unwrap(), CyclotomicNumber::from_integer(6, -1));
        let sum = &z + &z.inv().unwrap();
        assert!(sum.is_one());
        assert!(z.is_primitive_root());
        assert!(!z.pow(2).unwrap().is_primitive_root());
        assert_eq!(z.pow(6).unwrap(), CyclotomicNumber::one(6));
    }

    #[test]
    fn trivial_conductor() {
        let z = zeta(1);
        assert!(z.is_one());
        assert!(root_of_unity(0).is_err());
    }

    #[test]
    fn parse_and_format() {
        let x = CyclotomicNumber::parse(12, "1/2*z^3 - 1").unwrap();
        assert_eq!(x.to_string(), "1/2*z^3 - 1");
        // z^4 = z^2 - 1 modulo Φ12.
        let y = CyclotomicNumber::parse(12, "z^4").unwrap();
        assert_eq!(y.to_string(), "z^2 - 1");
        let w = CyclotomicNumber::parse(6, "z^-1").unwrap();
        assert_eq!(w.to_string(), "-z + 1");
    }

    #[test]
    fn evaluations() {
        let p5 = LaurentPolynomial::from_dense(0, vec![1; 5]);
        assert!(evaluate(&p5, &zeta(5)).unwrap().is_zero());
        let b31 = crate::arith::quantum_binomial(3, 1).unwrap();
        assert!(evaluate(&b31, &zeta(3)).unwrap().is_zero());
        let v2 = LaurentPolynomial::monomial(1, 2);
        assert_eq!(evaluate(&v2, &zeta(6)).unwrap(), zeta(6).pow(2).unwrap());
        let vm = LaurentPolynomial::monomial(1, -1);
        assert_eq!(evaluate(&vm, &zeta(6)).unwrap(), zeta(6).inv().unwrap());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(CyclotomicNumber::zero(7).inv().is_err());
        let f = CyclotomicField::new(7).unwrap();
        assert!(f.inv(&f.zero()).is_none());
    }

    fn arb_elem(order: u64) -> impl Strategy<Value = CyclotomicNumber> {
        let deg = crate::arith::totient(order) as usize;
        proptest::collection::vec((-5i64..=5, 1i64..=3), deg).prop_map(move |pairs| {
            let coords = pairs
                .into_iter()
                .map(|(a, b)| BigRational::new(a.into(), b.into()))
                .collect();
            CyclotomicNumber::from_coords(order, coords)
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_elem(12), b in arb_elem(12), c in arb_elem(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn field_context_matches_operators(a in arb_elem(10), b in arb_elem(10)) {
            let f = CyclotomicField::new(10).unwrap();
            prop_assert_eq!(f.mul(&a, &b), &a * &b);
            prop_assert_eq!(f.sub(&a, &b), &a - &b);
            prop_assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
        }
    }
}
