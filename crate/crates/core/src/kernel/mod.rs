//! Integer and analytic primitives: sieves, windowed factorization,
//! prime-reciprocal sums, the alpha threshold, and the normal CDF.

pub mod factor;
pub mod normal;
pub mod sieve;

pub use factor::{factor_u128, is_prime_u128, omega_window, OmegaWindow};
pub use normal::{erfc, normal_cdf};
pub use sieve::{omega_range, primes_upto, OmegaTable, PrimeTable};

use crate::error::{Error, Result};
use crate::kahan::KahanSum;

/// The small/large prime threshold n^(1/log log n).
///
/// Below n = 16 the exponent is at least 1 and the threshold stops
/// partitioning anything (alpha >= n), so those inputs are refused.
pub fn alpha(n: u64) -> Result<f64> {
    if n < 16 {
        return Err(Error::domain(format!(
            "alpha({n}): defined for n >= 16 (log log n must exceed 1)"
        )));
    }
    let ln_n = (n as f64).ln();
    Ok((ln_n / ln_n.ln()).exp())
}

/// Sum of 1/p over primes p <= n, compensated, ascending.
pub fn mertens_sum(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::usage(format!("mertens_sum({n}): no primes below 2")));
    }
    let primes = primes_upto(n)?;
    let mut acc = KahanSum::new();
    for p in primes {
        acc += (p as f64).recip();
    }
    Ok(acc.value())
}
