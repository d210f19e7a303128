//! Distributional statistics of the distinct-prime-divisor count:
//! its exact law under a perturbed distribution, the normalized step
//! CDF against the standard normal with an exact Kolmogorov-Smirnov
//! distance, the truncated count restricted to small primes, the
//! independent Bernoulli (Poisson-binomial) model with its moments,
//! moment-gap reports, tail sums over large primes, and independence
//! gaps for divisibility events.

use serde::Serialize;

use crate::config::SUPPORT_ENUM_CAP;
use crate::constraints::{partial_epsilon_sum, PrimeTuple, SIGN_NOISE_TOL};
use crate::dist::PerturbedDistribution;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::kernel::{alpha, factor_u128, normal_cdf, omega_range, primes_upto};

/// Reports cap their witness lists; counts stay exact.
const VIOLATION_CAP: usize = 32;

/// log log n, defined (positive) only for n >= 3.
fn log_log(n: u64) -> Result<f64> {
    if n < 3 {
        return Err(Error::domain(format!(
            "log log {n} is not positive; the normalization needs n >= 3"
        )));
    }
    Ok((n as f64).ln().ln())
}

/// Largest integer that counts as a small prime for support n:
/// floor(alpha(n)). For integer p, p <= alpha(n) iff p <= this bound.
pub fn small_prime_bound(n: u64) -> Result<u64> {
    Ok(alpha(n)?.floor() as u64)
}

/// The exact law of the distinct-prime-divisor count of X ~ dist.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaDistribution {
    pub n: u64,
    /// masses[w] = P(X has exactly w distinct prime divisors).
    pub masses: Vec<f64>,
}

impl OmegaDistribution {
    /// Total mass, compensated; 1 within 1e-12 for a valid input law.
    pub fn total(&self) -> f64 {
        let mut acc = KahanSum::new();
        for &m in &self.masses {
            acc += m;
        }
        acc.value()
    }

    /// First moment, compensated, ascending in the count.
    pub fn mean(&self) -> f64 {
        let mut acc = KahanSum::new();
        for (w, &m) in self.masses.iter().enumerate() {
            acc += w as f64 * m;
        }
        acc.value()
    }
}

/// Exact bucket masses of the distinct-prime-divisor count over the
/// whole support, by one additive sieve pass plus a compensated
/// accumulation per bucket in ascending m.
pub fn omega_distribution(dist: &PerturbedDistribution) -> Result<OmegaDistribution> {
    let n = dist.support();
    if n > SUPPORT_ENUM_CAP {
        return Err(Error::resource(format!(
            "support {n} exceeds the exact-enumeration cap {SUPPORT_ENUM_CAP}; \
             draw seeded samples with SampleStream instead"
        )));
    }
    let table = omega_range(1, n)?;
    let max_w = table.counts().iter().copied().max().unwrap_or(0) as usize;
    let mut buckets = vec![KahanSum::new(); max_w + 1];
    for (m, w) in table.iter() {
        buckets[w as usize] += dist.pmf_unchecked(m);
    }
    Ok(OmegaDistribution {
        n,
        masses: buckets.into_iter().map(f64::from).collect(),
    })
}

/// Which location parameter centers the normalized statistic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Centering {
    /// log log n — the default.
    LogLog,
    /// The exact mean of the count under the distribution; a
    /// diagnostic alternative (the two differ by a slowly-decaying
    /// finite-size offset). The scale stays sqrt(log log n).
    EmpiricalMean,
}

/// Step CDF of (count - center) / sqrt(log log n) at its jump points.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizedCdf {
    pub n: u64,
    pub distribution: String,
    pub centering: Centering,
    pub center: f64,
    pub scale: f64,
    /// (x_j, F(x_j)) with x strictly increasing, F nondecreasing to 1.
    pub points: Vec<(f64, f64)>,
}

pub fn normalized_cdf(dist: &PerturbedDistribution, centering: Centering) -> Result<NormalizedCdf> {
    let n = dist.support();
    let ll = log_log(n)?;
    let od = omega_distribution(dist)?;
    let center = match centering {
        Centering::LogLog => ll,
        Centering::EmpiricalMean => od.mean(),
    };
    let scale = ll.sqrt();
    let mut points = Vec::with_capacity(od.masses.len());
    let mut acc = KahanSum::new();
    for (w, &mass) in od.masses.iter().enumerate() {
        acc += mass;
        points.push(((w as f64 - center) / scale, acc.value()));
    }
    Ok(NormalizedCdf {
        n,
        distribution: dist.kind_name().to_string(),
        centering,
        center,
        scale,
        points,
    })
}

/// Which one-sided limit of the step function attains the supremum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Supremum distance between the normalized step CDF and the standard
/// normal CDF, with the jump where it is attained.
#[derive(Clone, Debug, Serialize)]
pub struct KsResult {
    pub n: u64,
    #[serde(rename = "ks")]
    pub statistic: f64,
    #[serde(rename = "argmax")]
    pub argmax_x: f64,
    pub side: Side,
}

/// Exact supremum over the whole line: for a step function against a
/// continuous CDF the supremum is attained as a one-sided limit at
/// some jump, so both gaps are checked at every jump (the left gap at
/// the first jump also covers the tail x -> -infinity, and the final
/// F = 1 covers x -> +infinity).
pub fn ks_from_cdf(cdf: &NormalizedCdf) -> Result<KsResult> {
    let mut best_gap = -1.0f64;
    let mut best_x = f64::NAN;
    let mut best_side = Side::Left;
    let mut prev_f = 0.0f64;
    for &(x, f) in &cdf.points {
        let phi = normal_cdf(x)?;
        let left = (prev_f - phi).abs();
        let right = (f - phi).abs();
        if left > best_gap {
            best_gap = left;
            best_x = x;
            best_side = Side::Left;
        }
        if right > best_gap {
            best_gap = right;
            best_x = x;
            best_side = Side::Right;
        }
        prev_f = f;
    }
    Ok(KsResult {
        n: cdf.n,
        statistic: best_gap,
        argmax_x: best_x,
        side: best_side,
    })
}

/// Kolmogorov-Smirnov distance under the default centering.
pub fn ks_statistic(dist: &PerturbedDistribution) -> Result<KsResult> {
    ks_from_cdf(&normalized_cdf(dist, Centering::LogLog)?)
}

/// Number of small primes (at most alpha(n)) dividing m: the count
/// truncated to the small-prime range.
pub fn truncated_omega(n: u64, m: u64) -> Result<u32> {
    if m < 1 || m > n {
        return Err(Error::usage(format!("m = {m} outside the support 1..={n}")));
    }
    let bound = small_prime_bound(n)? as u128;
    let mut count = 0u32;
    let mut last = 0u128;
    for p in factor_u128(m as u128)? {
        if p != last && p <= bound {
            count += 1;
        }
        last = p;
    }
    Ok(count)
}

/// Truncated counts for every m in 1..=n by one additive sieve pass
/// over the small primes only; entry m-1 holds the count for m.
pub fn truncated_omega_table(n: u64) -> Result<Vec<u8>> {
    if n > SUPPORT_ENUM_CAP {
        return Err(Error::resource(format!(
            "support {n} exceeds the exact-enumeration cap {SUPPORT_ENUM_CAP}"
        )));
    }
    let bound = small_prime_bound(n)?;
    let primes = primes_upto(bound)?;
    let mut counts = vec![0u8; n as usize];
    for &p in &primes {
        let mut m = p;
        while m <= n {
            counts[(m - 1) as usize] += 1;
            m += p;
        }
    }
    Ok(counts)
}

/// The independent Bernoulli model over the small primes: one
/// success-probability-1/p variable per prime p <= alpha(n), their sum
/// an exact Poisson-binomial law.
#[derive(Clone, Debug, Serialize)]
pub struct ModelMoments {
    pub n: u64,
    pub alpha: f64,
    pub primes: Vec<u64>,
    /// Model mean: sum of 1/p over the small primes.
    pub b_n: f64,
    /// Model variance: sum of 1/p - 1/p^2.
    pub a_n_sq: f64,
    /// pmf[k] = P(exactly k of the events occur).
    pub pmf: Vec<f64>,
    /// raw_moments[r] = E(S^r) for r = 0..=r_max; index 0 is exactly 1.
    pub raw_moments: Vec<f64>,
}

/// Builds the model law by iterated convolution over the small primes
/// in ascending order, then reads off the requested raw moments.
pub fn model_sn(n: u64, r_max: u32) -> Result<ModelMoments> {
    let a = alpha(n)?;
    let primes = primes_upto(small_prime_bound(n)?)?;
    let mut b = KahanSum::new();
    let mut v = KahanSum::new();
    for &p in &primes {
        let q = (p as f64).recip();
        b += q;
        v += q - q * q;
    }
    let mut pmf = vec![1.0f64];
    for &p in &primes {
        let q = (p as f64).recip();
        let mut next = vec![0.0f64; pmf.len() + 1];
        for (k, &mass) in pmf.iter().enumerate() {
            next[k] += mass * (1.0 - q);
            next[k + 1] += mass * q;
        }
        pmf = next;
    }
    let mut raw_moments = Vec::with_capacity(r_max as usize + 1);
    for r in 0..=r_max {
        if r == 0 {
            // The zeroth moment of any law is identically one.
            raw_moments.push(1.0);
            continue;
        }
        let mut acc = KahanSum::new();
        for (k, &mass) in pmf.iter().enumerate() {
            acc += mass * (k as f64).powi(r as i32);
        }
        raw_moments.push(acc.value());
    }
    Ok(ModelMoments {
        n,
        alpha: a,
        primes,
        b_n: b.value(),
        a_n_sq: v.value(),
        pmf,
        raw_moments,
    })
}

/// Exact raw moments of the truncated count under the distribution:
/// entry r is the expectation of the r-th power, r = 0..=r_max
/// (entry 0 is exactly 1).
pub fn empirical_moments(dist: &PerturbedDistribution, r_max: u32) -> Result<Vec<f64>> {
    let n = dist.support();
    let table = truncated_omega_table(n)?;
    let mut sums = vec![KahanSum::new(); r_max as usize + 1];
    for m in 1..=n {
        let p = dist.pmf_unchecked(m);
        let g = table[(m - 1) as usize] as f64;
        let mut power = 1.0f64;
        for acc in sums.iter_mut() {
            acc.add(p * power);
            power *= g;
        }
    }
    let mut out: Vec<f64> = sums.into_iter().map(f64::from).collect();
    out[0] = 1.0;
    Ok(out)
}

/// Model moment vs. truncated-count moment with the scaled gap bound
/// max{C, 1/2} * alpha^r / n. The bound is asymptotic: the pass flag
/// is informational at small supports.
#[derive(Clone, Debug, Serialize)]
pub struct MomentGapReport {
    pub n: u64,
    pub r: u32,
    pub model: f64,
    pub empirical: f64,
    pub gap: f64,
    pub bound: f64,
    pub pass: bool,
}

pub fn moment_gap(dist: &PerturbedDistribution, r: u32, c: f64) -> Result<MomentGapReport> {
    let n = dist.support();
    let model = model_sn(n, r)?;
    let empirical = empirical_moments(dist, r)?;
    let gap = (model.raw_moments[r as usize] - empirical[r as usize]).abs();
    let bound = c.max(0.5) * model.alpha.powi(r as i32) / n as f64;
    Ok(MomentGapReport {
        n,
        r,
        model: model.raw_moments[r as usize],
        empirical: empirical[r as usize],
        gap,
        bound,
        pass: gap <= bound,
    })
}

/// Sum over the large primes (alpha(n) < p <= n) of 1/p + T(n; (p)),
/// normalized by sqrt(log log n), with each summand checked against
/// the per-prime box [0, (d+1)/p].
#[derive(Clone, Debug, Serialize)]
pub struct TailSumReport {
    pub n: u64,
    pub primes_scanned: u64,
    /// Unnormalized sum of 1/p + T(n; (p)).
    pub raw_sum: f64,
    /// raw_sum / sqrt(log log n) — the quantity whose decay matters.
    pub normalized: f64,
    /// The d of the per-prime box [0, (d+1)/p].
    pub box_d: f64,
    pub box_violation_count: u64,
    /// (p, summand) pairs outside the box, capped.
    pub box_violations: Vec<(u64, f64)>,
}

pub fn tail_sum(dist: &PerturbedDistribution, box_d: f64) -> Result<TailSumReport> {
    let n = dist.support();
    let ll = log_log(n)?;
    let bound = small_prime_bound(n)?;
    let primes = primes_upto(n)?;
    let mut acc = KahanSum::new();
    let mut scanned = 0u64;
    let mut box_violation_count = 0u64;
    let mut box_violations = Vec::new();
    for &p in primes.iter().filter(|&&p| p > bound) {
        let tuple = PrimeTuple::from_known_primes(vec![p]);
        let t = partial_epsilon_sum(dist, &tuple)?.value;
        let inv_p = (p as f64).recip();
        let summand = inv_p + t;
        acc += summand;
        scanned += 1;
        if summand < -SIGN_NOISE_TOL || summand > (box_d + 1.0) * inv_p + SIGN_NOISE_TOL {
            box_violation_count += 1;
            if box_violations.len() < VIOLATION_CAP {
                box_violations.push((p, summand));
            }
        }
    }
    let raw_sum = acc.value();
    Ok(TailSumReport {
        n,
        primes_scanned: scanned,
        raw_sum,
        normalized: raw_sum / ll.sqrt(),
        box_d,
        box_violation_count,
        box_violations,
    })
}

/// Probability that every prime in the tuple divides X ~ dist:
/// the compensated total mass on the multiples of the product.
pub fn event_probability(dist: &PerturbedDistribution, tuple: &PrimeTuple) -> Result<f64> {
    let n = dist.support();
    if tuple.product() > n as u128 {
        return Err(Error::usage(format!(
            "tuple {tuple} has product {} beyond support {n}",
            tuple.product()
        )));
    }
    let p = tuple.product() as u64;
    let mut acc = KahanSum::new();
    let mut m = p;
    while m <= n {
        acc += dist.pmf_unchecked(m);
        m += p;
    }
    Ok(acc.value())
}

/// |P(all divide X) - product of P(p divides X)| — how far the
/// divisibility events sit from exact independence.
pub fn independence_gap(dist: &PerturbedDistribution, tuple: &PrimeTuple) -> Result<f64> {
    let joint = event_probability(dist, tuple)?;
    let mut product = 1.0f64;
    for &p in tuple.primes() {
        let single = PrimeTuple::from_known_primes(vec![p]);
        product *= event_probability(dist, &single)?;
    }
    Ok((joint - product).abs())
}
