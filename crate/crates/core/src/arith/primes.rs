//! Trial-division number theory for small integers.

/// Prime factorization `n = ∏ p^a` with primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Product of the distinct prime factors.
pub fn radical(n: u64) -> u64 {
    factorize(n).iter().map(|(p, _)| p).product()
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, a) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..a {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(30), vec![(2, 1), (3, 1), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(radical(72), 6);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(totient(30), 8);
        assert!(is_prime(2) && is_prime(7) && !is_prime(1) && !is_prime(9));
    }
}
