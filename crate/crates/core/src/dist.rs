use std::io::BufRead;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;

/// Probability laws on {1..n} of the form 1/n + epsilon_i.
///
/// The rule-based families keep their normalizer cached; a custom law
/// carries its table. In every case pmf(i) is evaluated the same way
/// on every call, so downstream sums are reproducible bit for bit.
#[derive(Clone, Debug)]
enum Law {
    Uniform,
    Harmonic { h_n: f64 },
    Zipf { s: f64, z: f64 },
    Custom { table: Vec<f64>, adjustment: f64 },
}

#[derive(Clone, Debug)]
pub struct PerturbedDistribution {
    n: u64,
    law: Law,
}

impl PerturbedDistribution {
    pub fn uniform(n: u64) -> Result<Self> {
        check_support(n)?;
        Ok(Self {
            n,
            law: Law::Uniform,
        })
    }

    pub fn harmonic(n: u64) -> Result<Self> {
        check_support(n)?;
        check_enumerable(n)?;
        let mut h = KahanSum::new();
        for i in 1..=n {
            h += (i as f64).recip();
        }
        Ok(Self {
            n,
            law: Law::Harmonic { h_n: h.value() },
        })
    }

    pub fn zipf(n: u64, s: f64) -> Result<Self> {
        check_support(n)?;
        check_enumerable(n)?;
        if !s.is_finite() || s <= 1.0 {
            return Err(Error::domain(format!(
                "zipf exponent must be finite and exceed 1, got {s}"
            )));
        }
        let mut z = KahanSum::new();
        for j in 1..=n {
            z += (j as f64).powf(-s);
        }
        Ok(Self {
            n,
            law: Law::Zipf { s, z: z.value() },
        })
    }

    /// Custom table over 1..=n. The table must sum to 1 within 1e-9;
    /// it is then renormalized by its exact sum and the adjustment
    /// |sum - 1| is recorded.
    pub fn custom(table: Vec<f64>) -> Result<Self> {
        let n = table.len() as u64;
        check_support(n)?;
        if n > config::SUPPORT_ENUM_CAP {
            return Err(Error::resource(format!(
                "custom table with {n} entries exceeds cap {}",
                config::SUPPORT_ENUM_CAP
            )));
        }
        for (idx, &p) in table.iter().enumerate() {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::usage(format!(
                    "probability at index {} is {p}, outside [0, 1]",
                    idx + 1
                )));
            }
        }
        let mut sum = KahanSum::new();
        for &p in &table {
            sum += p;
        }
        let total = sum.value();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::usage(format!(
                "probabilities sum to {total}, outside 1 +/- 1e-9"
            )));
        }
        let table: Vec<f64> = table.into_iter().map(|p| p / total).collect();
        Ok(Self {
            n,
            law: Law::Custom {
                table,
                adjustment: (total - 1.0).abs(),
            },
        })
    }

    /// Reads a custom table from CSV with header `i,probability` and
    /// 1-based indices in order. Rejections carry the offending line.
    pub fn custom_from_csv(reader: impl BufRead) -> Result<Self> {
        let mut lines = reader.lines();
        let header = match lines.next() {
            Some(h) => h?,
            None => return Err(Error::validation(1, "empty input, expected header")),
        };
        if header.trim_end_matches('\r').trim() != "i,probability" {
            return Err(Error::validation(
                1,
                format!("header must be exactly `i,probability`, got {header:?}"),
            ));
        }
        let mut table = Vec::new();
        let mut line_no = 1usize;
        for line in lines {
            let line = line?;
            line_no += 1;
            let row = line.trim_end_matches('\r').trim();
            if row.is_empty() {
                return Err(Error::validation(line_no, "blank row"));
            }
            let mut fields = row.split(',');
            let (i_str, p_str) = match (fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), None) => (a.trim(), b.trim()),
                _ => return Err(Error::validation(line_no, "expected exactly two fields")),
            };
            let i: u64 = i_str
                .parse()
                .map_err(|_| Error::validation(line_no, format!("bad index {i_str:?}")))?;
            let expected = table.len() as u64 + 1;
            if i != expected {
                return Err(Error::validation(
                    line_no,
                    format!("index {i} out of order, expected {expected}"),
                ));
            }
            let p: f64 = p_str
                .parse()
                .map_err(|_| Error::validation(line_no, format!("bad probability {p_str:?}")))?;
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::validation(
                    line_no,
                    format!("probability {p} outside [0, 1]"),
                ));
            }
            table.push(p);
        }
        if table.is_empty() {
            return Err(Error::validation(line_no.max(1), "no data rows"));
        }
        Self::custom(table).map_err(|e| match e {
            Error::Usage(msg) => Error::validation(line_no, msg),
            other => other,
        })
    }

    pub fn support(&self) -> u64 {
        self.n
    }

    pub fn kind_name(&self) -> &'static str {
        match self.law {
            Law::Uniform => "uniform",
            Law::Harmonic { .. } => "harmonic",
            Law::Zipf { .. } => "zipf",
            Law::Custom { .. } => "custom",
        }
    }

    pub fn zipf_exponent(&self) -> Option<f64> {
        match self.law {
            Law::Zipf { s, .. } => Some(s),
            _ => None,
        }
    }

    /// |sum - 1| absorbed when a custom table was renormalized.
    pub fn renormalization_adjustment(&self) -> f64 {
        match self.law {
            Law::Custom { adjustment, .. } => adjustment,
            _ => 0.0,
        }
    }

    /// P(X = i). Requires 1 <= i <= n.
    pub fn pmf(&self, i: u64) -> Result<f64> {
        self.check_index(i)?;
        Ok(self.pmf_unchecked(i))
    }

    #[inline]
    pub(crate) fn pmf_unchecked(&self, i: u64) -> f64 {
        match &self.law {
            Law::Uniform => (self.n as f64).recip(),
            Law::Harmonic { h_n } => (i as f64 * h_n).recip(),
            Law::Zipf { s, z } => (i as f64).powf(-s) / z,
            Law::Custom { table, .. } => table[(i - 1) as usize],
        }
    }

    /// The perturbation epsilon_i = P(X = i) - 1/n.
    pub fn epsilon(&self, i: u64) -> Result<f64> {
        self.check_index(i)?;
        Ok(self.epsilon_unchecked(i))
    }

    #[inline]
    pub(crate) fn epsilon_unchecked(&self, i: u64) -> f64 {
        match &self.law {
            // Written as pmf - 1/n everywhere; for the uniform law the
            // two expressions are identical, so epsilon is exactly 0.
            Law::Uniform => 0.0,
            _ => self.pmf_unchecked(i) - (self.n as f64).recip(),
        }
    }

    /// P(X <= i), a compensated prefix sum in ascending order.
    pub fn cdf(&self, i: u64) -> Result<f64> {
        self.check_index(i)?;
        let mut acc = KahanSum::new();
        for j in 1..=i {
            acc += self.pmf_unchecked(j);
        }
        Ok(acc.value())
    }

    fn check_index(&self, i: u64) -> Result<()> {
        if i < 1 || i > self.n {
            return Err(Error::usage(format!(
                "index {i} outside support 1..={}",
                self.n
            )));
        }
        Ok(())
    }
}

fn check_support(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::usage("support size must be at least 1"));
    }
    Ok(())
}

fn check_enumerable(n: u64) -> Result<()> {
    if n > config::SUPPORT_ENUM_CAP {
        return Err(Error::resource(format!(
            "support {n} exceeds enumeration cap {}",
            config::SUPPORT_ENUM_CAP
        )));
    }
    Ok(())
}

/// A rule-based family instantiable at any support size, used by
/// checks that track a quantity along a schedule of n values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    Uniform,
    Harmonic,
    Zipf(f64),
}

impl Family {
    pub fn instantiate(&self, n: u64) -> Result<PerturbedDistribution> {
        match *self {
            Family::Uniform => PerturbedDistribution::uniform(n),
            Family::Harmonic => PerturbedDistribution::harmonic(n),
            Family::Zipf(s) => PerturbedDistribution::zipf(n, s),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Harmonic => "harmonic",
            Family::Zipf(_) => "zipf",
        }
    }
}

/// max_i |P_a(X = i) - P_b(X = i)| over a shared support.
pub fn sup_distance(a: &PerturbedDistribution, b: &PerturbedDistribution) -> Result<f64> {
    if a.support() != b.support() {
        return Err(Error::usage(format!(
            "sup_distance over different supports {} and {}",
            a.support(),
            b.support()
        )));
    }
    check_enumerable(a.support())?;
    let mut best = 0.0f64;
    for i in 1..=a.support() {
        let d = (a.pmf_unchecked(i) - b.pmf_unchecked(i)).abs();
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// Seeded inverse-transform sampler over a precomputed CDF table.
pub struct SampleStream {
    prefix: Vec<f64>,
    rng: ChaCha8Rng,
}

impl SampleStream {
    pub fn new(dist: &PerturbedDistribution, seed: u64) -> Result<Self> {
        if dist.support() > config::SUPPORT_ENUM_CAP {
            return Err(Error::resource(format!(
                "sampling table for n = {} exceeds cap {}",
                dist.support(),
                config::SUPPORT_ENUM_CAP
            )));
        }
        let n = dist.support() as usize;
        let mut prefix = Vec::with_capacity(n);
        let mut acc = KahanSum::new();
        for i in 1..=dist.support() {
            acc += dist.pmf_unchecked(i);
            prefix.push(acc.value());
        }
        Ok(SampleStream {
            prefix,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Next index in 1..=n.
    pub fn next_index(&mut self) -> u64 {
        let u: f64 = self.rng.gen();
        let pos = self.prefix.partition_point(|&c| c <= u);
        (pos as u64 + 1).min(self.prefix.len() as u64)
    }
}

impl Iterator for SampleStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        Some(self.next_index())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn uniform_has_identically_zero_epsilon() {
        let d = PerturbedDistribution::uniform(10).unwrap();
        for i in 1..=10 {
            assert_eq!(d.pmf(i).unwrap(), 0.1);
            assert_eq!(d.epsilon(i).unwrap(), 0.0);
        }
        assert_relative_eq!(d.cdf(10).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn harmonic_small_values() {
        let d = PerturbedDistribution::harmonic(3).unwrap();
        assert_relative_eq!(d.pmf(2).unwrap(), 3.0 / 11.0, max_relative = 1e-14);
        let d2 = PerturbedDistribution::harmonic(2).unwrap();
        assert_relative_eq!(d2.epsilon(1).unwrap(), 1.0 / 6.0, max_relative = 1e-14);
        // cdf has a closed second route: H_i / H_n.
        let d100 = PerturbedDistribution::harmonic(100).unwrap();
        let h = |k: u64| -> f64 { (1..=k).map(|i| (i as f64).recip()).sum() };
        for i in [1u64, 7, 50, 100] {
            assert_relative_eq!(d100.cdf(i).unwrap(), h(i) / h(100), max_relative = 1e-12);
        }
    }

    #[test]
    fn zipf_values_and_domain() {
        let d = PerturbedDistribution::zipf(2, 2.0).unwrap();
        assert_relative_eq!(d.pmf(1).unwrap(), 0.8, max_relative = 1e-14);
        assert!(PerturbedDistribution::zipf(10, 1.0).is_err());
        assert!(PerturbedDistribution::zipf(10, 0.5).is_err());
        assert!(PerturbedDistribution::zipf(10, f64::NAN).is_err());
        assert_eq!(d.zipf_exponent(), Some(2.0));
    }

    #[test]
    fn single_point_support_is_degenerate() {
        for d in [
            PerturbedDistribution::uniform(1).unwrap(),
            PerturbedDistribution::harmonic(1).unwrap(),
            PerturbedDistribution::zipf(1, 1.5).unwrap(),
        ] {
            assert_eq!(d.pmf(1).unwrap(), 1.0);
            assert_eq!(d.epsilon(1).unwrap(), 0.0);
            assert!(d.pmf(2).is_err());
        }
    }

    #[test]
    fn rejects_empty_support_and_bad_indices() {
        assert!(PerturbedDistribution::uniform(0).is_err());
        let d = PerturbedDistribution::harmonic(5).unwrap();
        assert!(d.pmf(0).is_err());
        assert!(d.pmf(6).is_err());
        assert!(d.cdf(0).is_err());
    }

    #[test]
    fn sup_distance_two_point_laws() {
        let z = PerturbedDistribution::zipf(2, 2.0).unwrap();
        let h = PerturbedDistribution::harmonic(2).unwrap();
        assert_relative_eq!(
            sup_distance(&z, &h).unwrap(),
            2.0 / 15.0,
            max_relative = 1e-12
        );
        let u = PerturbedDistribution::uniform(3).unwrap();
        assert!(sup_distance(&z, &u).is_err());
    }

    #[test]
    fn custom_renormalizes_and_records_adjustment() {
        let d = PerturbedDistribution::custom(vec![0.5, 0.25, 0.25 + 3e-10]).unwrap();
        assert!(d.renormalization_adjustment() > 0.0);
        assert!(d.renormalization_adjustment() < 1e-9);
        assert_relative_eq!(d.cdf(3).unwrap(), 1.0, max_relative = 1e-12);
        assert!(PerturbedDistribution::custom(vec![0.5, 0.4]).is_err());
        assert!(PerturbedDistribution::custom(vec![0.5, 0.5, -0.0000001]).is_err());
        assert!(PerturbedDistribution::custom(vec![]).is_err());
    }

    #[test]
    fn csv_ingestion_accepts_well_formed_tables() {
        let src = "i,probability\r\n1,0.5\r\n2,0.25\r\n3,0.25\r\n";
        let d = PerturbedDistribution::custom_from_csv(src.as_bytes()).unwrap();
        assert_eq!(d.support(), 3);
        assert_eq!(d.kind_name(), "custom");
        assert_relative_eq!(d.pmf(1).unwrap(), 0.5, max_relative = 1e-12);
    }

    #[test]
    fn csv_ingestion_rejects_with_line_numbers() {
        let cases: &[(&str, usize)] = &[
            ("", 1),
            ("index,p\n1,1.0\n", 1),
            ("i,probability\n2,1.0\n", 2),
            ("i,probability\n1,0.5\n3,0.5\n", 3),
            ("i,probability\n1,0.5\n2,0.6\n", 3),
            ("i,probability\n1,0.5\n2,xyz\n", 3),
            ("i,probability\n1,0.5,9\n2,0.5\n", 2),
            ("i,probability\n1,-0.5\n2,1.5\n", 2),
            ("i,probability\n", 1),
        ];
        for (src, want_line) in cases {
            match PerturbedDistribution::custom_from_csv(src.as_bytes()) {
                Err(Error::Validation { line, .. }) => {
                    assert_eq!(line, *want_line, "wrong line for {src:?}")
                }
                other => panic!("expected validation error for {src:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let d = PerturbedDistribution::harmonic(50).unwrap();
        let a: Vec<u64> = SampleStream::new(&d, 7).unwrap().take(100).collect();
        let b: Vec<u64> = SampleStream::new(&d, 7).unwrap().take(100).collect();
        let c: Vec<u64> = SampleStream::new(&d, 8).unwrap().take(100).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.iter().all(|&i| (1..=50).contains(&i)));
    }

    #[test]
    fn sampling_frequencies_follow_the_pmf() {
        // 10^6 draws over 1000 uniform cells: every cell within 5
        // sigma, at most a handful past 3 sigma.
        let n = 1000u64;
        let draws = 1_000_000usize;
        let d = PerturbedDistribution::uniform(n).unwrap();
        let mut counts = vec![0u64; n as usize];
        let stream = SampleStream::new(&d, 20_240_817).unwrap();
        for i in stream.take(draws) {
            counts[(i - 1) as usize] += 1;
        }
        let expected = draws as f64 / n as f64;
        let sigma = (draws as f64 * (1.0 / n as f64) * (1.0 - 1.0 / n as f64)).sqrt();
        let mut beyond3 = 0;
        for &c in &counts {
            let dev = (c as f64 - expected).abs();
            assert!(dev <= 5.0 * sigma, "cell deviates {dev} (> 5 sigma)");
            if dev > 3.0 * sigma {
                beyond3 += 1;
            }
        }
        assert!(beyond3 <= 10, "{beyond3} cells past 3 sigma");
    }

    proptest! {
        #[test]
        fn pmf_in_range_and_epsilon_bounded(n in 1u64..400, pick in 0u8..3) {
            let d = match pick {
                0 => PerturbedDistribution::uniform(n).unwrap(),
                1 => PerturbedDistribution::harmonic(n).unwrap(),
                _ => PerturbedDistribution::zipf(n, 1.0 + (n % 7 + 1) as f64 / 4.0).unwrap(),
            };
            let inv_n = (n as f64).recip();
            let mut total = KahanSum::new();
            let mut eps_total = KahanSum::new();
            let mut prev_cdf = 0.0;
            for i in 1..=n {
                let p = d.pmf(i).unwrap();
                prop_assert!((0.0..=1.0).contains(&p));
                let e = d.epsilon(i).unwrap();
                prop_assert!(e >= -inv_n - 1e-15 && e <= 1.0 - inv_n + 1e-15);
                prop_assert!((p - e - inv_n).abs() <= 1e-15);
                total += p;
                eps_total += e;
                let c = d.cdf(i).unwrap();
                prop_assert!(c >= prev_cdf - 1e-15);
                prev_cdf = c;
            }
            prop_assert!((total.value() - 1.0).abs() <= 1e-12);
            prop_assert!(eps_total.value().abs() <= 1e-12);
        }
    }
}
