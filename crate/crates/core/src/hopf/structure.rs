//! Numerical data attached to `n`: primes, radical, root-of-unity order,
//! generator degrees, and the degree of the integral.

use std::sync::{Arc, OnceLock};

use crate::arith::{factorize, q_integer, CyclotomicField, Field, LaurentPolynomial, PrimeField};

use super::{Bosonization, HopfError};

/// The constants describing `H_n` over a chosen field.
///
/// Prime indices are 0-based in this API (`d_0, …, d_{t−1}`); text formats
/// use 1-based names such as `d1`.
#[derive(Debug)]
pub struct HnStructure<F: Field> {
    n: u64,
    primes: Vec<(u64, u32)>,
    radical: u64,
    root_order: u64,
    degrees: Vec<i64>,
    ell: i64,
    /// Mixed-radix strides for exponent vectors, last index fastest.
    strides: Vec<usize>,
    hn_dim: usize,
    field: F,
    /// The bosonization over a private copy of this structure, built on first use.
    algebra: OnceLock<Box<Bosonization<F>>>,
}

impl<F: Field> Clone for HnStructure<F> {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            primes: self.primes.clone(),
            radical: self.radical,
            root_order: self.root_order,
            degrees: self.degrees.clone(),
            ell: self.ell,
            strides: self.strides.clone(),
            hn_dim: self.hn_dim,
            field: self.field.clone(),
            algebra: OnceLock::new(),
        }
    }
}

/// Shared handle used by modules and algebra elements.
pub type Structure<F> = Arc<HnStructure<F>>;

impl HnStructure<CyclotomicField> {
    /// `H_n` over `Q(ζ_N)`.
    pub fn rational(n: u64) -> Result<Structure<CyclotomicField>, HopfError> {
        if n < 2 {
            return Err(HopfError::TooSmall(n));
        }
        let order = Self::root_order_for(n);
        let field = CyclotomicField::new(order)?;
        Self::new(n, field)
    }
}

impl HnStructure<PrimeField> {
    /// `H_n` over `F_p`; requires `p ≡ 1 (mod N)`.
    pub fn modular(n: u64, p: u64) -> Result<Structure<PrimeField>, HopfError> {
        if n < 2 {
            return Err(HopfError::TooSmall(n));
        }
        let field = PrimeField::new(p, Self::root_order_for(n))?;
        Self::new(n, field)
    }
}

impl<F: Field> HnStructure<F> {
    /// `N = n²/m` for the radical `m` of `n`.
    pub fn root_order_for(n: u64) -> u64 {
        let m: u64 = factorize(n).iter().map(|(p, _)| p).product();
        n / m * n
    }

    /// Builds the structure over `field`, whose distinguished root must have
    /// order `N = n²/m`.
    pub fn new(n: u64, field: F) -> Result<Structure<F>, HopfError> {
        if n < 2 {
            return Err(HopfError::TooSmall(n));
        }
        let primes = factorize(n);
        let radical: u64 = primes.iter().map(|(p, _)| p).product();
        let root_order = n / radical * n;
        if field.root_order() != root_order {
            return Err(HopfError::FieldMismatch { expected: root_order, found: field.root_order() });
        }
        let degrees: Vec<i64> = primes.iter().map(|(p, _)| (n / p) as i64).collect();
        let ell = primes
            .iter()
            .zip(&degrees)
            .map(|((p, _), d)| d * (*p as i64 - 1))
            .sum();
        let mut strides = vec![1usize; primes.len()];
        for k in (0..primes.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * primes[k + 1].0 as usize;
        }
        Ok(Arc::new(Self {
            n,
            primes,
            radical,
            root_order,
            degrees,
            ell,
            strides,
            hn_dim: radical as usize,
            field,
            algebra: OnceLock::new(),
        }))
    }

    /// The bosonization `H_n ⋊ kC_N`, cached.
    pub fn algebra(&self) -> &Bosonization<F> {
        self.algebra.get_or_init(|| Box::new(Bosonization::new(Arc::new(self.clone()))))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number `t` of distinct primes.
    pub fn num_primes(&self) -> usize {
        self.primes.len()
    }

    /// `(p_k, a_k)` pairs.
    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.primes
    }

    /// The prime `p_k`.
    pub fn prime(&self, k: usize) -> u64 {
        self.primes[k].0
    }

    /// Radical `m = ∏ p_k`, also the dimension of `H_n`.
    pub fn radical(&self) -> u64 {
        self.radical
    }

    /// Order `N = n²/m` of the root of unity `q`.
    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    /// Degree `n_k = n/p_k` of `d_k`.
    pub fn degree(&self, k: usize) -> i64 {
        self.degrees[k]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// `m_k = m/p_k`.
    pub fn radical_cofactor(&self, k: usize) -> u64 {
        self.radical / self.prime(k)
    }

    /// Degree `ℓ = Σ n_k (p_k − 1)` of the integral.
    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `q^e`.
    pub fn q_pow(&self, e: i64) -> F::Elem {
        self.field.zeta_pow(e)
    }

    /// `ξ_k = q^{n_k}`.
    pub fn xi(&self, k: usize) -> F::Elem {
        self.q_pow(self.degrees[k])
    }

    /// `ξ = q^{n/m}`.
    pub fn xi_radical(&self) -> F::Elem {
        self.q_pow((self.n / self.radical) as i64)
    }

    /// Dimension of `H_n` (number of exponent vectors).
    pub fn hn_dim(&self) -> usize {
        self.hn_dim
    }

    /// Dimension `m·N` of the bosonization.
    pub fn bosonization_dim(&self) -> usize {
        self.hn_dim * self.root_order as usize
    }

    /// Exponent vector of the PBW monomial with index `alpha`.
    pub fn exponents(&self, alpha: usize) -> Vec<u32> {
        self.strides
            .iter()
            .zip(&self.primes)
            .map(|(s, (p, _))| ((alpha / s) % *p as usize) as u32)
            .collect()
    }

    /// Index of an exponent vector, or `None` if some `a_k ≥ p_k`.
    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        let mut idx = 0;
        for ((a, s), (p, _)) in exps.iter().zip(&self.strides).zip(&self.primes) {
            if *a as u64 >= *p {
                return None;
            }
            idx += *a as usize * s;
        }
        Some(idx)
    }

    /// Index of `d_k` itself.
    pub fn generator_index(&self, k: usize) -> usize {
        self.strides[k]
    }

    /// Stride of the `k`-th exponent in the mixed-radix index.
    pub fn stride(&self, k: usize) -> usize {
        self.strides[k]
    }

    /// Index of the top monomial `d_1^{p_1−1}⋯d_t^{p_t−1}`.
    pub fn top_index(&self) -> usize {
        self.hn_dim - 1
    }

    /// Internal degree `Σ a_k n_k` of `d^a`.
    pub fn monomial_degree(&self, alpha: usize) -> i64 {
        self.exponents(alpha)
            .iter()
            .zip(&self.degrees)
            .map(|(a, d)| *a as i64 * d)
            .sum()
    }

    /// Index of `d^α · d_k`, or `None` when the exponent overflows.
    pub fn raise(&self, alpha: usize, k: usize) -> Option<usize> {
        let a = (alpha / self.strides[k]) % self.prime(k) as usize;
        (a + 1 < self.prime(k) as usize).then(|| alpha + self.strides[k])
    }

    /// Graded dimension of `H_n` read off its monomial basis.
    pub fn graded_dimension(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms((0..self.hn_dim).map(|a| (self.monomial_degree(a), 1)))
    }

    /// The product `∏_k [n]/[n_k]` of string polynomials.
    pub fn graded_dimension_product(&self) -> LaurentPolynomial {
        let total = q_integer(self.n);
        self.degrees.iter().fold(LaurentPolynomial::one(), |acc, d| {
            let factor = total
                .div_exact(&q_integer(*d as u64))
                .expect("[n] is divisible by [n/p]");
            &acc * &factor
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_for_six() {
        let s = HnStructure::rational(6).unwrap();
        assert_eq!(s.num_primes(), 2);
        assert_eq!((s.prime(0), s.prime(1)), (2, 3));
        assert_eq!(s.radical(), 6);
        assert_eq!(s.root_order(), 6);
        assert_eq!((s.degree(0), s.degree(1)), (3, 2));
        assert_eq!(s.ell(), 7);
    }

    #[test]
    fn constants_for_primes_and_twelve() {
        let s = HnStructure::rational(7).unwrap();
        assert_eq!((s.num_primes(), s.radical(), s.root_order(), s.degree(0), s.ell()), (1, 7, 7, 1, 6));
        let s = HnStructure::rational(12).unwrap();
        assert_eq!((s.radical(), s.root_order(), s.degree(0), s.degree(1), s.ell()), (6, 24, 6, 4, 14));
        assert!(HnStructure::rational(1).is_err());
    }

    #[test]
    fn ell_two_ways() {
        for n in 2..60 {
            let s = HnStructure::rational(n).unwrap();
            let alt: i64 = (0..s.num_primes()).map(|k| n as i64 - s.degree(k)).sum();
            assert_eq!(s.ell(), alt);
        }
    }

    #[test]
    fn xi_power_is_primitive_prime_root() {
        let s = HnStructure::rational(12).unwrap();
        let f = s.field();
        for k in 0..s.num_primes() {
            let w = f.pow(&s.xi(k), s.degree(k) as u64);
            let p = s.prime(k);
            assert!(f.is_one(&f.pow(&w, p)));
            assert!(!f.is_one(&w));
        }
    }

    #[test]
    fn mixed_radix_round_trip() {
        let s = HnStructure::rational(30).unwrap();
        for a in 0..s.hn_dim() {
            assert_eq!(s.index_of(&s.exponents(a)), Some(a));
        }
        assert_eq!(s.exponents(s.top_index()), vec![1, 2, 4]);
        assert_eq!(s.monomial_degree(s.top_index()), s.ell());
    }

    #[test]
    fn modular_structure_checks_prime() {
        assert!(HnStructure::modular(6, 7).is_ok());
        assert!(HnStructure::modular(6, 5).is_err());
    }
}
