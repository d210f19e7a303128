//! Budgets and fixed tuning constants.
//!
//! Every hard limit an operation enforces lives here so the refusal
//! thresholds are documented in one place. Exceeding a budget yields a
//! resource error, never silent truncation (enumeration reports carry
//! an explicit `truncated` flag instead).

/// Largest smallest-prime-factor table. 2^31 entries of u32 is the
/// point where the table stops being a desk-scale object.
pub const SPF_LIMIT_CAP: u64 = 1 << 31;

/// `primes_upto` ceiling; a bit sieve of 10^9 is ~125 MB and a few
/// seconds of work, anything larger belongs to segmented machinery.
pub const PRIMES_UPTO_CAP: u64 = 1_000_000_000;

/// `omega_range` starting at 1 uses one additive sieve pass over the
/// whole range; the count table is one byte per integer.
pub const OMEGA_FULL_HI_CAP: u64 = 200_000_000;

/// `omega_range` on a detached window keeps a u64 residual per
/// element, so the window is capped tighter than the full-range path.
pub const OMEGA_WINDOW_WIDTH_CAP: u64 = 1 << 25;

/// Detached `omega_range` windows need the primes up to sqrt(hi);
/// 10^16 keeps that sieve at 10^8. Wider integers belong to
/// `omega_window`, which factors survivors instead.
pub const OMEGA_RANGE_HI_CAP: u64 = 10_000_000_000_000_000;

/// Trial bound for window factorization: every prime up to this bound
/// is removed by sieving before any per-integer factoring runs.
pub const WINDOW_TRIAL_BOUND: u64 = 10_000_000;

/// Window radius ceiling for `omega_window`.
pub const WINDOW_RADIUS_CAP: u64 = 2_000_000;

/// Windows are processed in fixed-size segments so that results are
/// identical for any worker-thread count.
pub const WINDOW_SEGMENT_WIDTH: usize = 1 << 16;

/// Iteration budget for one Pollard-Brent seed; the hardest cofactor
/// in range (a balanced ~79-bit semiprime) needs ~2e6 expected steps,
/// so one seed almost always suffices and twelve is a generous retry
/// schedule before the stuck cofactor is reported.
pub const RHO_BUDGET_PER_SEED: u64 = 1 << 24;
pub const RHO_SEED_RETRIES: u64 = 12;

/// Default cap on enumerated prime tuples in constraint scans.
pub const TUPLE_ENUM_BUDGET: usize = 1_000_000;

/// Largest support size for exact enumeration over {1..n} (omega
/// distributions, empirical moments, exact sampling tables).
pub const SUPPORT_ENUM_CAP: u64 = 100_000_000;
