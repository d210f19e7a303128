//! Exact statistics of distinct-prime-divisor counts under perturbed
//! distributions on {1..n}.
//!
//! The library provides:
//!
//! - near-uniform laws 1/n + epsilon(i) with built-in uniform,
//!   harmonic and power-law (zipf) rules plus user tables
//!   ([`dist`]);
//! - verification of the summation constraints those perturbations
//!   must satisfy, with witnesses and inferred minimal constants
//!   ([`constraints`]);
//! - the exact law of the distinct-prime-divisor count, its
//!   normalized step CDF against the standard normal with an exact
//!   Kolmogorov-Smirnov distance, the independent-Bernoulli model
//!   over small primes, moment comparisons, tail sums and
//!   independence gaps ([`stats`]);
//! - the integer kernels underneath: sieves, prime-reciprocal sums,
//!   deterministic primality testing and wide-integer factorization
//!   for counting prime divisors near 2^79, and a high-accuracy
//!   normal CDF ([`kernel`]);
//! - an exact-rational slow path used to cross-check the binary64
//!   fast path ([`exact`]).
//!
//! All floating-point accumulation uses compensated summation in a
//! fixed ascending order, so serial results are bit-for-bit
//! reproducible; range work can be partitioned without changing
//! results because merges happen over fixed segment boundaries.

pub mod config;
pub mod constraints;
pub mod dist;
pub mod error;
pub mod exact;
pub mod kahan;
pub mod kernel;
pub mod stats;
pub mod wide;

pub use constraints::{
    check_axioms, check_large_prime_bound, check_limit_condition, check_small_tuple_bound,
    effective_small_bound, enumerate_prime_tuples, infer_constants, partial_epsilon_sum, AxiomScan,
    ConstraintReport, ConstraintStatus, EpsilonPartialSum, InferredConstants, LargePrimeScan,
    LimitTrend, PrimeTuple, SmallTupleScan, Witness,
};
pub use dist::{sup_distance, Family, PerturbedDistribution, SampleStream};
pub use error::{Error, Result};
pub use kahan::{kahan_sum, KahanSum};
pub use kernel::{
    alpha, erfc, factor_u128, is_prime_u128, mertens_sum, normal_cdf, omega_range, omega_window,
    primes_upto, OmegaTable, OmegaWindow, PrimeTable,
};
pub use stats::{
    empirical_moments, event_probability, independence_gap, ks_from_cdf, ks_statistic, model_sn,
    moment_gap, normalized_cdf, omega_distribution, small_prime_bound, tail_sum, truncated_omega,
    truncated_omega_table, Centering, KsResult, ModelMoments, MomentGapReport, NormalizedCdf,
    OmegaDistribution, Side, TailSumReport,
};
pub use wide::WideInteger;
