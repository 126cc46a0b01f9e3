use crate::error::{Error, Result};

/// Whether every factorization `n = kl` has `k ≤ c` or `l ≤ c`.
///
/// It suffices to look at `k ≤ √n`: then `k ≤ l`, and the pair fails only
/// when `k > c`.
pub fn almost_prime(n: u64, c: u64) -> bool {
    let mut k = 1u64;
    while k * k <= n {
        if n.is_multiple_of(k) && k > c && n / k > c {
            return false;
        }
        k += 1;
    }
    true
}

/// A prime `p | n` with `n/p ≤ c²`.
///
/// Writes `n = kl` with `k < l` and `k` as large as possible, then returns
/// the smallest prime factor of `l`.
pub fn almost_prime_witness(n: u64, c: u64) -> Result<u64> {
    if n <= 1 || !almost_prime(n, c) {
        return Err(Error::InvalidArgument(format!(
            "{n} is not a {c}-almost prime greater than 1"
        )));
    }
    let mut k = 1u64;
    let mut d = 1u64;
    while d * d < n {
        if n.is_multiple_of(d) {
            k = d;
        }
        d += 1;
    }
    let l = n / k;
    let mut p = 2u64;
    while !l.is_multiple_of(p) {
        p += 1;
    }
    debug_assert!(n / p <= c.saturating_mul(c));
    Ok(p)
}
