//! Exact arithmetic: integer Laurent polynomials, cyclotomic polynomials,
//! quantum integers and binomials, and the fields `Q(ζ_N)` and `F_p`.

mod cyclo;
mod field;
mod laurent;
pub(crate) mod modgcd;
mod number;
mod prime_field;
mod primes;
mod text;

pub use cyclo::{
    cyclotomic_polynomial, cyclotomic_shared, gcd_of_strings, string_quotient,
    verify_cyclotomic_identities, CyclotomicIdentityReport,
};
pub use field::Field;
pub use laurent::{q_integer, quantum_binomial, LaurentPolynomial};
pub use number::{evaluate, root_of_unity, CyclotomicField, CyclotomicNumber};
pub use prime_field::PrimeField;
pub use primes::{divisors, factorize, is_prime, radical, totient};
pub use text::{format_terms, parse_terms};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("index must be positive")]
    ZeroIndex,
    #[error("n = {n} is too small (need n >= {min})")]
    TooSmall { n: u64, min: u64 },
    #[error("quantum binomial [{a} choose {b}] needs b <= a")]
    BinomialRange { a: u64, b: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("F_{p} has no primitive root of unity of order N = {order} (need p = 1 mod {order})")]
    NoRootOfUnity { p: u64, order: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}
