use serde::Serialize;

use crate::config;
use crate::dist::{Family, PerturbedDistribution};
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::kernel::{alpha, is_prime_u128, primes_upto};

/// Partial sums cleaner than ~1e-15 are treated as zero when hunting
/// sign violations; genuine violations in this problem sit many
/// orders of magnitude above compensated-summation noise.
pub const SIGN_NOISE_TOL: f64 = 1e-12;

/// Witness lists in reports are capped; counts are always exact.
const WITNESS_CAP: usize = 32;

/// A strictly increasing tuple of distinct primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTuple {
    primes: Vec<u64>,
    product: u128,
}

impl PrimeTuple {
    pub fn new(primes: Vec<u64>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::usage("empty prime tuple"));
        }
        if !primes.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::usage(format!(
                "tuple {primes:?} is not strictly increasing"
            )));
        }
        let mut product: u128 = 1;
        for &p in &primes {
            if !is_prime_u128(p as u128)? {
                return Err(Error::usage(format!("{p} is not prime")));
            }
            product = product
                .checked_mul(p as u128)
                .ok_or_else(|| Error::usage("tuple product overflows 128 bits"))?;
        }
        Ok(PrimeTuple { primes, product })
    }

    /// Crate-internal fast path for primes already known to be valid
    /// (drawn from a sieve or an existing tuple).
    pub(crate) fn from_known_primes(primes: Vec<u64>) -> Self {
        let product = primes.iter().map(|&p| p as u128).product();
        PrimeTuple { primes, product }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn product(&self) -> u128 {
        self.product
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl std::fmt::Display for PrimeTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.primes.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The partial perturbation sum T(n; p1..pk) = sum of epsilon over
/// the multiples of the tuple product inside {1..n}.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonPartialSum {
    pub n: u64,
    pub primes: Vec<u64>,
    pub terms: u64,
    pub value: f64,
}

/// Compensated sum of epsilon(l * P) for l = 1 .. floor(n / P),
/// ascending. The tuple product must not exceed the support.
pub fn partial_epsilon_sum(
    dist: &PerturbedDistribution,
    tuple: &PrimeTuple,
) -> Result<EpsilonPartialSum> {
    let n = dist.support();
    if tuple.product() > n as u128 {
        return Err(Error::usage(format!(
            "tuple {tuple} has product {} beyond support {n}",
            tuple.product()
        )));
    }
    let p = tuple.product() as u64;
    let count = n / p;
    let mut acc = KahanSum::new();
    let mut m = p;
    for _ in 0..count {
        acc += dist.epsilon_unchecked(m);
        m += p;
    }
    Ok(EpsilonPartialSum {
        n,
        primes: tuple.primes().to_vec(),
        terms: count,
        value: acc.value(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintStatus {
    Satisfied,
    Violated,
    Vacuous,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub n: u64,
    pub primes: Vec<u64>,
    #[serde(rename = "T")]
    pub t: f64,
    pub bound: f64,
}

/// One constraint's outcome in the report shape emitted by tooling.
#[derive(Clone, Debug, Serialize)]
pub struct ConstraintReport {
    pub constraint: String,
    pub status: ConstraintStatus,
    pub inferred_constants: std::collections::BTreeMap<String, f64>,
    pub witnesses: Vec<Witness>,
    pub truncated: bool,
}

/// Outcome of the pointwise axioms: the perturbations sum to zero and
/// each lies in [-1/n, 1 - 1/n].
#[derive(Clone, Debug)]
pub struct AxiomScan {
    pub n: u64,
    pub epsilon_sum: f64,
    pub out_of_range: Vec<(u64, f64)>,
    pub status: ConstraintStatus,
}

pub fn check_axioms(dist: &PerturbedDistribution) -> Result<AxiomScan> {
    let n = dist.support();
    if n > config::SUPPORT_ENUM_CAP {
        return Err(Error::resource(format!(
            "axiom scan over {n} exceeds cap {}",
            config::SUPPORT_ENUM_CAP
        )));
    }
    let inv_n = (n as f64).recip();
    let mut acc = KahanSum::new();
    let mut out_of_range = Vec::new();
    for i in 1..=n {
        let e = dist.epsilon_unchecked(i);
        acc += e;
        if e < -inv_n - 1e-15 || e > 1.0 - inv_n + 1e-15 {
            if out_of_range.len() < WITNESS_CAP {
                out_of_range.push((i, e));
            }
        }
    }
    let epsilon_sum = acc.value();
    let status = if epsilon_sum.abs() <= 1e-12 && out_of_range.is_empty() {
        ConstraintStatus::Satisfied
    } else {
        ConstraintStatus::Violated
    };
    Ok(AxiomScan {
        n,
        epsilon_sum,
        out_of_range,
        status,
    })
}

impl AxiomScan {
    /// The total-mass side alone: the perturbations sum to zero.
    pub fn sum_report(&self) -> ConstraintReport {
        let mut constants = std::collections::BTreeMap::new();
        constants.insert("epsilon_sum".to_string(), self.epsilon_sum);
        ConstraintReport {
            constraint: "epsilon_sum".to_string(),
            status: if self.epsilon_sum.abs() <= 1e-12 {
                ConstraintStatus::Satisfied
            } else {
                ConstraintStatus::Violated
            },
            inferred_constants: constants,
            witnesses: Vec::new(),
            truncated: false,
        }
    }

    /// The range side alone: every perturbation inside [-1/n, 1-1/n].
    /// Witnesses carry the offending index in the primes slot.
    pub fn range_report(&self) -> ConstraintReport {
        ConstraintReport {
            constraint: "epsilon_range".to_string(),
            status: if self.out_of_range.is_empty() {
                ConstraintStatus::Satisfied
            } else {
                ConstraintStatus::Violated
            },
            inferred_constants: std::collections::BTreeMap::new(),
            witnesses: self
                .out_of_range
                .iter()
                .map(|&(i, e)| Witness {
                    n: self.n,
                    primes: vec![i],
                    t: e,
                    bound: 0.0,
                })
                .collect(),
            truncated: false,
        }
    }

    pub fn report(&self) -> ConstraintReport {
        let mut constants = std::collections::BTreeMap::new();
        constants.insert("epsilon_sum".to_string(), self.epsilon_sum);
        ConstraintReport {
            constraint: "axioms".to_string(),
            status: self.status,
            inferred_constants: constants,
            witnesses: self
                .out_of_range
                .iter()
                .map(|&(i, e)| Witness {
                    n: self.n,
                    primes: vec![i],
                    t: e,
                    bound: 0.0,
                })
                .collect(),
            truncated: false,
        }
    }
}

/// Trend of T(n; tuple) along an ascending schedule of supports,
/// judged against "consistent with a zero limit".
#[derive(Clone, Debug)]
pub struct LimitTrend {
    pub primes: Vec<u64>,
    pub entries: Vec<(u64, f64)>,
    pub threshold: f64,
    pub nonincreasing_after_peak: bool,
    pub final_below_threshold: bool,
    pub status: ConstraintStatus,
}

/// Evaluates the vanishing-partial-sum condition along n_list. The
/// verdict is heuristic by nature (a finite schedule cannot prove a
/// limit): consistent means |T| never grows again after its peak and
/// the last value sits below the threshold (default 10 / min n).
pub fn check_limit_condition(
    family: Family,
    tuple: &PrimeTuple,
    n_list: &[u64],
    threshold: Option<f64>,
) -> Result<LimitTrend> {
    if n_list.is_empty() {
        return Err(Error::usage("empty n schedule"));
    }
    let mut schedule = n_list.to_vec();
    schedule.sort_unstable();
    schedule.dedup();
    if (tuple.product() as u64 as u128) != tuple.product() || tuple.product() > schedule[0] as u128
    {
        return Err(Error::usage(format!(
            "tuple product {} exceeds the smallest scheduled support {}",
            tuple.product(),
            schedule[0]
        )));
    }
    let threshold = threshold.unwrap_or(10.0 / schedule[0] as f64);
    let mut entries = Vec::with_capacity(schedule.len());
    for &n in &schedule {
        let dist = family.instantiate(n)?;
        let t = partial_epsilon_sum(&dist, tuple)?.value;
        entries.push((n, t));
    }
    let peak = entries
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.abs().total_cmp(&b.1 .1.abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let nonincreasing_after_peak = entries[peak..]
        .windows(2)
        .all(|w| w[1].1.abs() <= w[0].1.abs() + SIGN_NOISE_TOL);
    let final_below_threshold = entries.last().unwrap().1.abs() < threshold;
    let status = if nonincreasing_after_peak && final_below_threshold {
        ConstraintStatus::Satisfied
    } else {
        ConstraintStatus::Inconclusive
    };
    Ok(LimitTrend {
        primes: tuple.primes().to_vec(),
        entries,
        threshold,
        nonincreasing_after_peak,
        final_below_threshold,
        status,
    })
}

impl LimitTrend {
    pub fn report(&self) -> ConstraintReport {
        let mut constants = std::collections::BTreeMap::new();
        constants.insert("threshold".to_string(), self.threshold);
        ConstraintReport {
            constraint: "limit".to_string(),
            status: self.status,
            inferred_constants: constants,
            witnesses: self
                .entries
                .iter()
                .map(|&(n, t)| Witness {
                    n,
                    primes: self.primes.clone(),
                    t,
                    bound: self.threshold,
                })
                .collect(),
            truncated: false,
        }
    }
}

/// The verifier's small/large split. Above the alpha domain threshold
/// this is alpha(n); at tiny supports (n <= 15) alpha formally sits
/// at or above n, so every prime up to n counts as small and the
/// large-prime range is empty.
pub fn effective_small_bound(n: u64) -> Result<f64> {
    if n >= 16 {
        alpha(n)
    } else {
        Ok(n as f64)
    }
}

#[derive(Clone, Debug)]
pub struct LargePrimeScan {
    pub n: u64,
    pub small_bound: f64,
    pub given_c: Option<f64>,
    pub c_min: f64,
    pub scanned: u64,
    pub worst: Option<Witness>,
    pub violations: Vec<Witness>,
    pub violation_count: usize,
    pub status: ConstraintStatus,
}

/// Checks T(n; (p)) <= C/p over every prime p with alpha < p <= n.
/// With no C supplied, infers the minimal admissible constant
/// c_min = max(p * T, 0).
pub fn check_large_prime_bound(
    dist: &PerturbedDistribution,
    given_c: Option<f64>,
) -> Result<LargePrimeScan> {
    let n = dist.support();
    let small_bound = effective_small_bound(n)?;
    let primes = primes_upto(n)?;
    let mut c_min = 0.0f64;
    let mut worst: Option<Witness> = None;
    let mut worst_scaled = f64::NEG_INFINITY;
    let mut violations = Vec::new();
    let mut violation_count = 0usize;
    let mut scanned = 0u64;
    for &p in primes.iter().filter(|&&p| p as f64 > small_bound) {
        let tuple = PrimeTuple {
            primes: vec![p],
            product: p as u128,
        };
        let t = partial_epsilon_sum(dist, &tuple)?.value;
        scanned += 1;
        let scaled = p as f64 * t;
        if scaled > c_min {
            c_min = scaled;
        }
        if scaled > worst_scaled {
            worst_scaled = scaled;
            worst = Some(Witness {
                n,
                primes: vec![p],
                t,
                bound: 0.0,
            });
        }
        if let Some(c) = given_c {
            if t > c / p as f64 + SIGN_NOISE_TOL {
                violation_count += 1;
                if violations.len() < WITNESS_CAP {
                    violations.push(Witness {
                        n,
                        primes: vec![p],
                        t,
                        bound: c / p as f64,
                    });
                }
            }
        }
    }
    let status = if scanned == 0 {
        ConstraintStatus::Vacuous
    } else if given_c.is_some() {
        if violation_count == 0 {
            ConstraintStatus::Satisfied
        } else {
            ConstraintStatus::Violated
        }
    } else {
        ConstraintStatus::Satisfied
    };
    if let Some(w) = worst.as_mut() {
        w.bound = match given_c {
            Some(c) => c / w.primes[0] as f64,
            None => c_min / w.primes[0] as f64,
        };
    }
    Ok(LargePrimeScan {
        n,
        small_bound,
        given_c,
        c_min,
        scanned,
        worst,
        violations,
        violation_count,
        status,
    })
}

impl LargePrimeScan {
    pub fn report(&self) -> ConstraintReport {
        let mut constants = std::collections::BTreeMap::new();
        constants.insert("c_min".to_string(), self.c_min);
        if let Some(c) = self.given_c {
            constants.insert("c".to_string(), c);
        }
        let witnesses = if self.violations.is_empty() {
            self.worst.clone().into_iter().collect()
        } else {
            self.violations.clone()
        };
        ConstraintReport {
            constraint: "large_prime".to_string(),
            status: self.status,
            inferred_constants: constants,
            witnesses,
            truncated: self.violation_count > self.violations.len(),
        }
    }
}

/// Ascending-lexicographic enumeration of tuples of distinct primes
/// drawn from `pool`, pruned at `product_cap`, depth `k_max`, stopped
/// at `budget` tuples.
pub fn enumerate_prime_tuples(
    pool: &[u64],
    product_cap: u64,
    k_max: usize,
    budget: usize,
) -> (Vec<Vec<u64>>, bool) {
    let mut out = Vec::new();
    let mut truncated = false;
    let mut stack: Vec<u64> = Vec::new();

    fn dfs(
        pool: &[u64],
        from: usize,
        product: u128,
        cap: u128,
        k_max: usize,
        budget: usize,
        stack: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        truncated: &mut bool,
    ) {
        if stack.len() == k_max || *truncated {
            return;
        }
        for idx in from..pool.len() {
            let p = pool[idx] as u128;
            let next = product * p;
            if next > cap {
                break;
            }
            stack.push(pool[idx]);
            if out.len() == budget {
                *truncated = true;
                stack.pop();
                return;
            }
            out.push(stack.clone());
            dfs(
                pool,
                idx + 1,
                next,
                cap,
                k_max,
                budget,
                stack,
                out,
                truncated,
            );
            stack.pop();
            if *truncated {
                return;
            }
        }
    }

    dfs(
        pool,
        0,
        1,
        product_cap as u128,
        k_max,
        budget,
        &mut stack,
        &mut out,
        &mut truncated,
    );
    (out, truncated)
}

#[derive(Clone, Debug)]
pub struct SmallTupleScan {
    pub n: u64,
    pub small_bound: f64,
    pub k_max: usize,
    pub given_d: Option<f64>,
    pub d_min: f64,
    pub enumerated: usize,
    pub truncated: bool,
    pub upper_violations: Vec<Witness>,
    pub upper_violation_count: usize,
    pub lower_violations: Vec<Witness>,
    pub lower_violation_count: usize,
    pub upper_status: ConstraintStatus,
    pub lower_status: ConstraintStatus,
}

/// Checks 0 <= T(n; tuple) <= D/n over every tuple of distinct small
/// primes with product inside the support. The two sides are judged
/// separately: the upper side carries the inferred d_min, the lower
/// side lists sign violations.
pub fn check_small_tuple_bound(
    dist: &PerturbedDistribution,
    given_d: Option<f64>,
    k_max: usize,
    budget: usize,
) -> Result<SmallTupleScan> {
    let n = dist.support();
    let small_bound = effective_small_bound(n)?;
    let pool: Vec<u64> = primes_upto(n.min(small_bound as u64))?
        .into_iter()
        .filter(|&p| p as f64 <= small_bound)
        .collect();
    let (tuples, truncated) = enumerate_prime_tuples(&pool, n, k_max, budget);
    let mut d_min = 0.0f64;
    let mut upper_violations = Vec::new();
    let mut lower_violations = Vec::new();
    let (mut upper_violation_count, mut lower_violation_count) = (0usize, 0usize);
    for primes in &tuples {
        let tuple = PrimeTuple {
            primes: primes.clone(),
            product: primes.iter().map(|&p| p as u128).product(),
        };
        let t = partial_epsilon_sum(dist, &tuple)?.value;
        let scaled = n as f64 * t;
        if scaled > d_min {
            d_min = scaled;
        }
        if let Some(d) = given_d {
            if t > d / n as f64 + SIGN_NOISE_TOL {
                upper_violation_count += 1;
                if upper_violations.len() < WITNESS_CAP {
                    upper_violations.push(Witness {
                        n,
                        primes: primes.clone(),
                        t,
                        bound: d / n as f64,
                    });
                }
            }
        }
        if t < -SIGN_NOISE_TOL {
            lower_violation_count += 1;
            if lower_violations.len() < WITNESS_CAP {
                lower_violations.push(Witness {
                    n,
                    primes: primes.clone(),
                    t,
                    bound: 0.0,
                });
            }
        }
    }
    let upper_status = if tuples.is_empty() {
        ConstraintStatus::Vacuous
    } else if truncated {
        ConstraintStatus::Inconclusive
    } else if given_d.is_none() || upper_violation_count == 0 {
        ConstraintStatus::Satisfied
    } else {
        ConstraintStatus::Violated
    };
    let lower_status = if tuples.is_empty() {
        ConstraintStatus::Vacuous
    } else if lower_violation_count > 0 {
        ConstraintStatus::Violated
    } else if truncated {
        ConstraintStatus::Inconclusive
    } else {
        ConstraintStatus::Satisfied
    };
    Ok(SmallTupleScan {
        n,
        small_bound,
        k_max,
        given_d,
        d_min,
        enumerated: tuples.len(),
        truncated,
        upper_violations,
        upper_violation_count,
        lower_violations,
        lower_violation_count,
        upper_status,
        lower_status,
    })
}

impl SmallTupleScan {
    pub fn reports(&self) -> Vec<ConstraintReport> {
        let mut constants = std::collections::BTreeMap::new();
        constants.insert("d_min".to_string(), self.d_min);
        if let Some(d) = self.given_d {
            constants.insert("d".to_string(), d);
        }
        vec![
            ConstraintReport {
                constraint: "small_tuple_upper".to_string(),
                status: self.upper_status,
                inferred_constants: constants.clone(),
                witnesses: self.upper_violations.clone(),
                truncated: self.truncated
                    || self.upper_violation_count > self.upper_violations.len(),
            },
            ConstraintReport {
                constraint: "small_tuple_lower".to_string(),
                status: self.lower_status,
                inferred_constants: constants,
                witnesses: self.lower_violations.clone(),
                truncated: self.truncated
                    || self.lower_violation_count > self.lower_violations.len(),
            },
        ]
    }
}

/// Minimal constants consistent with the scans, plus the lower-bound
/// facts the caller must not lose.
#[derive(Clone, Debug)]
pub struct InferredConstants {
    pub c_min: f64,
    pub d_min: f64,
    pub lower_violation_count: usize,
    pub lower_violations: Vec<Witness>,
    pub truncated: bool,
}

pub fn infer_constants(
    dist: &PerturbedDistribution,
    k_max: usize,
    budget: usize,
) -> Result<InferredConstants> {
    let large = check_large_prime_bound(dist, None)?;
    let small = check_small_tuple_bound(dist, None, k_max, budget)?;
    Ok(InferredConstants {
        c_min: large.c_min,
        d_min: small.d_min,
        lower_violation_count: small.lower_violation_count,
        lower_violations: small.lower_violations,
        truncated: small.truncated,
    })
}
