use crate::config;
use crate::error::{Error, Result};

/// Smallest-prime-factor table for 2..=limit.
///
/// `spf[m]` is the least prime dividing m, so factorization walks
/// `m -> m / spf[m]` and primality is `spf[m] == m`.
pub struct PrimeTable {
    limit: u64,
    spf: Vec<u32>,
}

impl PrimeTable {
    pub fn build(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::usage(format!("sieve limit {limit} < 2")));
        }
        if limit > config::SPF_LIMIT_CAP {
            return Err(Error::resource(format!(
                "sieve limit {limit} exceeds cap {}",
                config::SPF_LIMIT_CAP
            )));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                for j in (i..=n).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
            }
        }
        Ok(PrimeTable { limit, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Least prime factor of m. Requires 2 <= m <= limit.
    pub fn smallest_factor(&self, m: u64) -> u64 {
        assert!(
            (2..=self.limit).contains(&m),
            "smallest_factor({m}) outside table range 2..={}",
            self.limit
        );
        self.spf[m as usize] as u64
    }

    pub fn is_prime(&self, m: u64) -> bool {
        m >= 2 && m <= self.limit && self.spf[m as usize] as u64 == m
    }

    /// Number of distinct prime factors; omega(1) = 0.
    pub fn omega(&self, m: u64) -> u32 {
        assert!(
            (1..=self.limit).contains(&m),
            "omega({m}) outside table range 1..={}",
            self.limit
        );
        let mut m = m as usize;
        let mut count = 0;
        while m > 1 {
            let p = self.spf[m] as usize;
            count += 1;
            while m % p == 0 {
                m /= p;
            }
        }
        count
    }

    /// Prime factorization as (prime, exponent) pairs in ascending order.
    pub fn factorize(&self, m: u64) -> Vec<(u64, u32)> {
        assert!(
            (1..=self.limit).contains(&m),
            "factorize({m}) outside table range 1..={}",
            self.limit
        );
        let mut m = m as usize;
        let mut out = Vec::new();
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out
    }
}

/// All primes <= x, ascending. Independent plain bit sieve, kept
/// separate from `PrimeTable` so the two can cross-check each other.
pub fn primes_upto(x: u64) -> Result<Vec<u64>> {
    if x > config::PRIMES_UPTO_CAP {
        return Err(Error::resource(format!(
            "primes_upto({x}) exceeds cap {}",
            config::PRIMES_UPTO_CAP
        )));
    }
    if x < 2 {
        return Ok(Vec::new());
    }
    let n = x as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            for j in ((i * i)..=n).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    Ok((2..=n)
        .filter(|&m| !composite[m])
        .map(|m| m as u64)
        .collect())
}

/// Exact omega values for a contiguous range of u64 integers.
pub struct OmegaTable {
    lo: u64,
    counts: Vec<u8>,
}

impl OmegaTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.counts.len() as u64 - 1
    }

    pub fn get(&self, m: u64) -> Option<u8> {
        m.checked_sub(self.lo)
            .and_then(|i| self.counts.get(i as usize))
            .copied()
    }

    pub fn counts(&self) -> &[u8] {
        &self.counts
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u8)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.lo + i as u64, c))
    }

    /// Arithmetic mean of the counts. The numerator is an exact
    /// integer sum, so the result is deterministic.
    pub fn mean(&self) -> f64 {
        let total: u64 = self.counts.iter().map(|&c| c as u64).sum();
        total as f64 / self.counts.len() as f64
    }

    pub(crate) fn from_parts(lo: u64, counts: Vec<u8>) -> Self {
        OmegaTable { lo, counts }
    }
}

/// omega(m) for every m in lo..=hi by sieving; no per-integer
/// factorization is ever attempted on this path.
///
/// Ranges starting at 1 use a single additive pass with the primes up
/// to hi. Detached windows mark the primes up to sqrt(hi) and keep a
/// residual per element: whatever survives the marking is either 1 or
/// a single prime > sqrt(hi), so one final pass completes the counts.
pub fn omega_range(lo: u64, hi: u64) -> Result<OmegaTable> {
    if lo < 1 || lo > hi {
        return Err(Error::usage(format!("bad omega range {lo}..={hi}")));
    }
    if lo == 1 {
        if hi > config::OMEGA_FULL_HI_CAP {
            return Err(Error::resource(format!(
                "omega_range(1, {hi}) exceeds full-range cap {}",
                config::OMEGA_FULL_HI_CAP
            )));
        }
        let n = hi as usize;
        let mut counts = vec![0u8; n];
        let primes = primes_upto(hi)?;
        for p in primes {
            let p = p as usize;
            for j in (p..=n).step_by(p) {
                counts[j - 1] += 1;
            }
        }
        return Ok(OmegaTable::from_parts(1, counts));
    }

    let width = hi - lo + 1;
    if width > config::OMEGA_WINDOW_WIDTH_CAP {
        return Err(Error::resource(format!(
            "omega_range window width {width} exceeds cap {}",
            config::OMEGA_WINDOW_WIDTH_CAP
        )));
    }
    if hi > config::OMEGA_RANGE_HI_CAP {
        return Err(Error::resource(format!(
            "omega_range hi {hi} exceeds cap {}; use omega_window for wider integers",
            config::OMEGA_RANGE_HI_CAP
        )));
    }
    let w = width as usize;
    let mut counts = vec![0u8; w];
    let mut residual: Vec<u64> = (lo..=hi).collect();
    let root = (hi as f64).sqrt() as u64 + 1;
    let primes = primes_upto(root)?;
    for p in primes {
        if p * p > hi {
            break;
        }
        let start = match lo % p {
            0 => 0,
            r => (p - r) as usize,
        };
        let mut idx = start;
        while idx < w {
            counts[idx] += 1;
            let r = &mut residual[idx];
            while *r % p == 0 {
                *r /= p;
            }
            idx += p as usize;
        }
    }
    for (idx, &r) in residual.iter().enumerate() {
        if r > 1 {
            counts[idx] += 1;
        }
    }
    Ok(OmegaTable::from_parts(lo, counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial-division omega, definitely correct, for oracle checks.
    fn omega_trial(mut m: u64) -> u8 {
        let mut count = 0u8;
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                count += 1;
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 {
            count += 1;
        }
        count
    }

    #[test]
    fn spf_table_agrees_with_trial_division() {
        let table = PrimeTable::build(2000).unwrap();
        for m in 1..=2000u64 {
            assert_eq!(table.omega(m) as u8, omega_trial(m), "omega({m})");
        }
        assert_eq!(table.smallest_factor(2), 2);
        assert_eq!(table.smallest_factor(1991), 11); // 11 * 181
        assert!(table.is_prime(1999));
        assert!(!table.is_prime(1));
    }

    #[test]
    fn factorize_reconstructs_the_integer() {
        let table = PrimeTable::build(100_000).unwrap();
        for m in [1u64, 2, 1400, 99_991, 65_536, 72_930] {
            let f = table.factorize(m);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, m);
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn omega_of_1400_is_3() {
        // 1400 = 2^3 * 5^2 * 7
        let table = PrimeTable::build(1400).unwrap();
        assert_eq!(table.omega(1400), 3);
        assert_eq!(omega_range(1400, 1400).unwrap().get(1400), Some(3));
    }

    #[test]
    fn prime_count_at_one_million() {
        let primes = primes_upto(1_000_000).unwrap();
        assert_eq!(primes.len(), 78_498);
        assert_eq!(primes[0], 2);
        assert_eq!(*primes.last().unwrap(), 999_983);
    }

    #[test]
    fn primes_upto_small_edges() {
        assert!(primes_upto(0).unwrap().is_empty());
        assert!(primes_upto(1).unwrap().is_empty());
        assert_eq!(primes_upto(2).unwrap(), vec![2]);
        assert_eq!(primes_upto(30).unwrap().len(), 10);
    }

    #[test]
    fn omega_range_full_matches_trial_division() {
        let table = omega_range(1, 5000).unwrap();
        for m in 1..=5000u64 {
            assert_eq!(table.get(m).unwrap(), omega_trial(m), "omega({m})");
        }
        assert_eq!(table.get(1), Some(0));
        assert_eq!(table.get(0), None);
        assert_eq!(table.get(5001), None);
    }

    #[test]
    fn omega_range_window_matches_trial_division() {
        // Detached window crossing a square (1024) and a prime gap.
        let table = omega_range(1000, 1100).unwrap();
        for m in 1000..=1100u64 {
            assert_eq!(table.get(m).unwrap(), omega_trial(m), "omega({m})");
        }
        // Window around 10^12 exercises the residual-prime path.
        let base = 1_000_000_000_000u64;
        let table = omega_range(base, base + 40).unwrap();
        for m in base..=base + 40 {
            assert_eq!(table.get(m).unwrap(), omega_trial(m), "omega({m})");
        }
    }

    #[test]
    fn omega_range_rejects_bad_input() {
        assert!(omega_range(0, 10).is_err());
        assert!(omega_range(10, 9).is_err());
        assert!(omega_range(2, 2 + config::OMEGA_WINDOW_WIDTH_CAP).is_err());
        assert!(omega_range(1, config::OMEGA_FULL_HI_CAP + 1).is_err());
    }

    #[test]
    fn table_mean_is_exact_ratio() {
        let t = omega_range(1, 10).unwrap();
        // omega over 1..10: 0,1,1,1,1,2,1,1,1,2 -> sum 11
        assert_eq!(t.mean(), 11.0 / 10.0);
    }

    #[test]
    fn build_rejects_out_of_range_limits() {
        assert!(PrimeTable::build(1).is_err());
        assert!(PrimeTable::build(config::SPF_LIMIT_CAP + 1).is_err());
    }
}
