//! Process-wide cache of the primes in natural order.

use std::sync::{OnceLock, RwLock};

fn cache() -> &'static RwLock<Vec<u64>> {
    static CACHE: OnceLock<RwLock<Vec<u64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(sieve(100)))
}

/// Primes up to and including `limit`, by the sieve of Eratosthenes.
pub fn sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for n in 2..=limit {
        if composite[n] {
            continue;
        }
        out.push(n as u64);
        let mut m = n * n;
        while m <= limit {
            composite[m] = true;
            m += n;
        }
    }
    out
}

/// Upper bound on the n-th prime (Rosser's bound for n >= 6).
fn nth_prime_bound(n: usize) -> u64 {
    if n < 6 {
        return 15;
    }
    let n = n as f64;
    (n * (n.ln() + n.ln().ln())).ceil() as u64 + 1
}

fn grow_until(done: impl Fn(&[u64]) -> bool, mut limit: u64) {
    if done(&cache().read().unwrap()) {
        return;
    }
    let mut primes = cache().write().unwrap();
    while !done(&primes) {
        limit = limit.max(primes.last().copied().unwrap_or(2) * 2);
        *primes = sieve(limit);
    }
}

/// The `index`-th prime, counting from 1: `nth_prime(1) == 2`.
///
/// # Panics
/// If `index` is zero.
pub fn nth_prime(index: usize) -> u64 {
    assert!(index >= 1, "prime indices start at 1");
    grow_until(|p| p.len() >= index, nth_prime_bound(index));
    cache().read().unwrap()[index - 1]
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    grow_until(|p| p.len() >= count, nth_prime_bound(count));
    cache().read().unwrap()[..count].to_vec()
}

/// 1-based index of `p` if it is prime.
pub fn prime_index(p: u64) -> Option<usize> {
    grow_until(|primes| primes.last().is_some_and(|&last| last >= p), p);
    cache().read().unwrap().binary_search(&p).ok().map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn small_indices() {
        assert_eq!(nth_prime(1), 2);
        assert_eq!(nth_prime(5), 11);
        assert_eq!(nth_prime(100), 541);
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let from_sieve = sieve(2000);
        let naive: Vec<u64> = (0..=2000).filter(|&n| naive_is_prime(n)).collect();
        assert_eq!(from_sieve, naive);
    }

    #[test]
    fn ten_thousandth_prime() {
        assert_eq!(nth_prime(10_000), 104_729);
        assert_eq!(prime_index(104_729), Some(10_000));
        assert_eq!(prime_index(104_730), None);
    }
}
