//! Cyclotomic polynomials and the identities relating `Φ_n`, `Φ_m` for the
//! radical `m` of `n`, and the string polynomials `[m]/[m/p]`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use super::laurent::{q_integer, LaurentPolynomial};
use super::primes::{divisors, factorize};
use super::ArithError;

type Cache = RwLock<HashMap<u64, Arc<LaurentPolynomial>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Φ_n(v)`, obtained by dividing `v^n − 1` by every `Φ_d` with `d | n`,
/// `d < n`. Results are memoized process-wide.
pub fn cyclotomic_polynomial(n: u64) -> Result<LaurentPolynomial, ArithError> {
    cyclotomic_shared(n).map(|p| (*p).clone())
}

/// Shared handle to the memoized `Φ_n`.
pub fn cyclotomic_shared(n: u64) -> Result<Arc<LaurentPolynomial>, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroIndex);
    }
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return Ok(Arc::clone(p));
    }
    let mut acc = LaurentPolynomial::from_terms([(n as i64, 1), (0, -1)]);
    let mut proper: Vec<u64> = divisors(n).into_iter().filter(|d| *d < n).collect();
    // Dividing by the large factors first shrinks the dividend fastest.
    proper.sort_unstable_by(|a, b| b.cmp(a));
    for d in proper {
        let phi_d = cyclotomic_shared(d)?;
        let (q, r) = acc.div_rem_unit_lead(&phi_d);
        debug_assert!(r.is_zero());
        acc = q;
    }
    let shared = Arc::new(acc);
    let mut guard = cache().write().expect("cyclotomic cache poisoned");
    Ok(Arc::clone(guard.entry(n).or_insert(shared)))
}

/// The string polynomial `[m]_v / [m/p]_v = 1 + v^{m/p} + … + v^{(p−1)m/p}`,
/// computed by exact division.
pub fn string_quotient(m: u64, p: u64) -> LaurentPolynomial {
    q_integer(m)
        .div_exact(&q_integer(m / p))
        .expect("[m] is divisible by [m/p] whenever p divides m")
}

/// Outcome of [`verify_cyclotomic_identities`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicIdentityReport {
    pub n: u64,
    pub radical: u64,
    /// `Φ_m = gcd_k [m]/[m/p_k]`.
    pub radical_is_gcd_of_strings: bool,
    /// `Φ_{p_k}(v^{m/p_k}) = [m]/[m/p_k]` for every `k`.
    pub strings_are_substituted_prime_cyclotomics: bool,
    /// `Φ_n(v) = Φ_m(v^{n/m})`.
    pub substitution_from_radical: bool,
}

impl CyclotomicIdentityReport {
    pub fn all_pass(&self) -> bool {
        self.radical_is_gcd_of_strings
            && self.strings_are_substituted_prime_cyclotomics
            && self.substitution_from_radical
    }
}

/// Gcd of the string polynomials `[m]/[m/p]` over the prime divisors `p` of
/// `m` (the radical of `n`), normalized.
pub fn gcd_of_strings(m: u64) -> LaurentPolynomial {
    factorize(m)
        .iter()
        .map(|(p, _)| string_quotient(m, *p))
        .fold(LaurentPolynomial::zero(), |g, s| g.gcd(&s))
}

/// Checks the three identities exactly for `n ≥ 2`.
pub fn verify_cyclotomic_identities(n: u64) -> Result<CyclotomicIdentityReport, ArithError> {
    if n < 2 {
        return Err(ArithError::TooSmall { n, min: 2 });
    }
    let primes = factorize(n);
    let m: u64 = primes.iter().map(|(p, _)| p).product();
    let phi_m = cyclotomic_shared(m)?;
    let phi_n = cyclotomic_shared(n)?;

    let radical_is_gcd_of_strings = gcd_of_strings(m) == *phi_m;

    let mut strings_ok = true;
    for (p, _) in &primes {
        let lhs = cyclotomic_shared(*p)?.substitute_power((m / p) as i64);
        strings_ok &= lhs == string_quotient(m, *p);
    }

    let substitution_from_radical = phi_m.substitute_power((n / m) as i64) == *phi_n;

    Ok(CyclotomicIdentityReport {
        n,
        radical: m,
        radical_is_gcd_of_strings,
        strings_are_substituted_prime_cyclotomics: strings_ok,
        substitution_from_radical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), lp("v - 1"));
        assert_eq!(cyclotomic_polynomial(2).unwrap(), lp("v + 1"));
        assert_eq!(cyclotomic_polynomial(7).unwrap(), q_integer(7));
        assert_eq!(cyclotomic_polynomial(6).unwrap(), lp("v^2 - v + 1"));
        assert_eq!(cyclotomic_polynomial(12).unwrap(), lp("v^4 - v^2 + 1"));
        assert_eq!(
            cyclotomic_polynomial(30).unwrap(),
            lp("v^8 + v^7 - v^5 - v^4 - v^3 + v + 1")
        );
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn identities_small() {
        for n in 2..200 {
            let r = verify_cyclotomic_identities(n).unwrap();
            assert!(r.all_pass(), "{r:?}");
        }
        assert!(verify_cyclotomic_identities(1).is_err());
    }

    #[test]
    fn gcd_of_strings_for_six() {
        assert_eq!(gcd_of_strings(6), lp("v^2 - v + 1"));
    }
}
