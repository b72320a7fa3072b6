//! Counting multiplicative quadruples: the number `M(N)` of tuples
//! `(n1, n2, n3, n4)` in `[1, N]⁴` with `n1·n4 = n2·n3`.
//!
//! This grows like `(12/π²)·N² ln N` and serves as the arithmetic model
//! for how often a line of a grid's line family meets the others.
//!
//! The identity used: `n1·n4 = n2·n3` says `n1/n2 = n3/n4`. Writing the
//! common value in lowest terms `a/b`, the number of representations with
//! both entries in `[1, N]` is `⌊N/max(a,b)⌋`, so
//!
//! ```text
//! M(N) = Σ_{gcd(a,b)=1, a,b ≤ N} ⌊N/max(a,b)⌋²
//!      = N² + 2·Σ_{m=2}^{N} φ(m)·⌊N/m⌋²
//! ```
//!
//! grouping by `m = max(a,b)`: `m = 1` gives the single pair `(1,1)`, and
//! for `m ≥ 2` there are `φ(m)` coprime pairs with each of the two maximum
//! positions. A linear-memory totient sieve evaluates this in `O(N log log N)`.

use crate::error::{Error, Result};

/// Largest argument accepted; the sieve allocates 4 bytes per integer.
pub const MAX_QUADRUPLE_N: u64 = 20_000_000;

/// Exact value of `M(N)`.
pub fn quadruple_count(n: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "quadruple count needs N ≥ 1".into(),
        ));
    }
    if n > MAX_QUADRUPLE_N {
        return Err(Error::SizeLimit {
            what: "quadruple count sieve",
            limit: MAX_QUADRUPLE_N as usize,
            actual: n as usize,
        });
    }
    let size = n as usize;
    let mut phi: Vec<u32> = (0..=size as u32).collect();
    for i in 2..=size {
        if phi[i] == i as u32 {
            // i is prime: apply the (1 − 1/p) factor to all multiples.
            let mut m = i;
            while m <= size {
                phi[m] -= phi[m] / i as u32;
                m += i;
            }
        }
    }
    let mut total = (n as u128) * (n as u128);
    for m in 2..=size {
        let q = (n / m as u64) as u128;
        total += 2 * (phi[m] as u128) * q * q;
    }
    Ok(total)
}

/// `M(N)/(N² ln N)`, the normalized growth the sieve is compared against.
pub fn quadruple_ratio(n: u64) -> Result<f64> {
    let count = quadruple_count(n)?;
    if n < 2 {
        return Err(Error::InvalidParameter(
            "normalized quadruple ratio needs N ≥ 2".into(),
        ));
    }
    let denom = (n as f64) * (n as f64) * (n as f64).ln();
    Ok(count as f64 / denom)
}
