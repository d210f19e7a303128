//! Exact-rational slow path for the built-in laws whose masses are
//! rational: the harmonic law and power laws with integer exponent.
//! Everything here is exact integer arithmetic; it exists so the fast
//! binary64 path can be checked against an independent route at
//! modest supports. Reciprocal-power sums use binary splitting (merge
//! unreduced halves, reduce once) so the support cap stays cheap.

use num::bigint::BigInt;
use num::traits::Pow;
use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest support the exact path accepts; beyond this the reduced
/// fractions grow past any sensible oracle budget.
pub const EXACT_SUPPORT_CAP: u64 = 10_000;

/// A law with rational masses: harmonic (mass proportional to 1/i) or
/// a power law with integer exponent (mass proportional to i^-s).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactLaw {
    Harmonic,
    /// Integer exponent s >= 2; the exponent-one case is the
    /// harmonic law.
    Zipf(u32),
}

impl ExactLaw {
    fn power(self) -> u32 {
        match self {
            ExactLaw::Harmonic => 1,
            ExactLaw::Zipf(s) => s,
        }
    }
}

fn check_support(law: ExactLaw, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::usage("support must be positive"));
    }
    if n > EXACT_SUPPORT_CAP {
        return Err(Error::resource(format!(
            "support {n} exceeds the exact-path cap {EXACT_SUPPORT_CAP}"
        )));
    }
    if let ExactLaw::Zipf(s) = law {
        if s < 2 {
            return Err(Error::domain(
                "the exact power law needs an integer exponent of at least 2; \
                 exponent one is the harmonic law",
            ));
        }
    }
    Ok(())
}

/// Unreduced sum of 1/i^s over lo..=hi as (numerator, denominator).
fn split_sum(lo: u64, hi: u64, s: u32) -> (BigInt, BigInt) {
    if lo == hi {
        return (BigInt::one(), BigInt::from(lo).pow(s));
    }
    let mid = lo + (hi - lo) / 2;
    let (n1, d1) = split_sum(lo, mid, s);
    let (n2, d2) = split_sum(mid + 1, hi, s);
    (&n1 * &d2 + &n2 * &d1, d1 * d2)
}

/// Sum of 1/i^s for i = 1..=k, reduced; zero for k = 0.
pub fn reciprocal_power_sum(k: u64, s: u32) -> BigRational {
    if k == 0 {
        return BigRational::zero();
    }
    let (numer, denom) = split_sum(1, k, s);
    BigRational::new(numer, denom)
}

/// The k-th harmonic number as an exact fraction.
pub fn harmonic_number(k: u64) -> BigRational {
    reciprocal_power_sum(k, 1)
}

/// Exact mass at i: (1/i^s) / sum_{j<=n} 1/j^s.
pub fn pmf(law: ExactLaw, n: u64, i: u64) -> Result<BigRational> {
    check_support(law, n)?;
    if i < 1 || i > n {
        return Err(Error::usage(format!("index {i} outside support 1..={n}")));
    }
    let s = law.power();
    let term = BigRational::new(BigInt::one(), BigInt::from(i).pow(s));
    Ok(term / reciprocal_power_sum(n, s))
}

/// Exact perturbation at i: mass minus 1/n.
pub fn epsilon(law: ExactLaw, n: u64, i: u64) -> Result<BigRational> {
    let uniform = BigRational::new(BigInt::one(), BigInt::from(n));
    Ok(pmf(law, n, i)? - uniform)
}

/// Exact probability that `product` divides a draw: with a = floor(n /
/// product), the mass on the multiples collapses to
/// (1/product^s) * (sum_{l<=a} 1/l^s) / (sum_{j<=n} 1/j^s).
pub fn event_probability(law: ExactLaw, n: u64, product: u64) -> Result<BigRational> {
    check_support(law, n)?;
    if product == 0 || product > n {
        return Err(Error::usage(format!(
            "divisor product {product} outside support 1..={n}"
        )));
    }
    let s = law.power();
    let a = n / product;
    let scale = BigRational::new(BigInt::one(), BigInt::from(product).pow(s));
    Ok(scale * reciprocal_power_sum(a, s) / reciprocal_power_sum(n, s))
}

/// Exact partial perturbation sum over the multiples of `product`:
/// the divisibility probability minus floor(n/product)/n.
pub fn partial_sum(law: ExactLaw, n: u64, product: u64) -> Result<BigRational> {
    let event = event_probability(law, n, product)?;
    let a = n / product;
    Ok(event - BigRational::new(BigInt::from(a), BigInt::from(n)))
}

/// Nearest binary64 to an exact fraction, safe for operands far past
/// f64 range: scale to a ~65-bit integer quotient, convert, and shift
/// back. Relative error is within a few units in the last place.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.numer().is_zero() {
        return 0.0;
    }
    let negative = r.numer().is_negative();
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    let shift: i64 = 64 + d.bits() as i64 - n.bits() as i64;
    let q = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    let magnitude = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-shift as i32);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}
