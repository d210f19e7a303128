use rayon::prelude::*;

use crate::config;
use crate::error::{Error, Result};
use crate::kernel::sieve::primes_upto;
use crate::wide::WideInteger;

/// Upper end of the range on which the fixed Miller-Rabin base set
/// below is a proven primality certificate (first 13 primes; the
/// smallest composite they all miss is 3317044064679887385961981).
pub const PRIMALITY_DETERMINISTIC_CAP: u128 = 3_317_044_064_679_887_385_961_981;

const MR_BASES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

#[inline]
pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Full 128x128 -> 256 bit product as (hi, lo).
#[inline]
fn mul_128_full(a: u128, b: u128) -> (u128, u128) {
    let (a1, a0) = ((a >> 64) as u64, a as u64);
    let (b1, b0) = ((b >> 64) as u64, b as u64);
    let ll = a0 as u128 * b0 as u128;
    let lh = a0 as u128 * b1 as u128;
    let hl = a1 as u128 * b0 as u128;
    let hh = a1 as u128 * b1 as u128;
    let mid = lh + (ll >> 64);
    let (mid, carry) = mid.overflowing_add(hl);
    let hi = hh + (mid >> 64) + ((carry as u128) << 64);
    let lo = (mid << 64) | (ll & 0xFFFF_FFFF_FFFF_FFFF);
    (hi, lo)
}

#[inline]
fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= n {
        s.wrapping_sub(n)
    } else {
        s
    }
}

/// Montgomery arithmetic modulo an odd n, R = 2^128. Residues stay in
/// [0, n); products never touch the hardware divider.
struct Montgomery {
    n: u128,
    neg_inv: u128,
    one: u128,
    r2: u128,
}

impl Montgomery {
    fn new(n: u128) -> Self {
        debug_assert!(n > 1 && n & 1 == 1);
        // Newton lifting: n * inv == 1 (mod 2^128) after 6 doublings
        // of the 3 valid low bits of inv = n.
        let mut inv = n;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let one = (u128::MAX % n) + 1;
        let mut r2 = one;
        for _ in 0..128 {
            r2 = add_mod(r2, r2, n);
        }
        Montgomery {
            n,
            neg_inv: inv.wrapping_neg(),
            one,
            r2,
        }
    }

    /// REDC(hi * 2^128 + lo); input must be < n * 2^128.
    #[inline]
    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.neg_inv);
        let (mn_hi, _mn_lo) = mul_128_full(m, self.n);
        // lo + mn_lo is 0 mod 2^128 by construction, so the carry out
        // of the low half is exactly (lo != 0).
        let carry = (lo != 0) as u128;
        let (s, c1) = hi.overflowing_add(mn_hi);
        let (t, c2) = s.overflowing_add(carry);
        if c1 || c2 {
            t.wrapping_sub(self.n)
        } else if t >= self.n {
            t - self.n
        } else {
            t
        }
    }

    #[inline]
    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_128_full(a, b);
        self.redc(hi, lo)
    }

    fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    /// Production code folds the exit conversion into `redc` calls;
    /// kept for the round-trip tests.
    #[cfg_attr(not(test), allow(dead_code))]
    fn from_mont(&self, a: u128) -> u128 {
        self.redc(0, a)
    }

    fn pow_mont(&self, base_m: u128, mut e: u128) -> u128 {
        let mut acc = self.one;
        let mut b = base_m;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
}

/// Deterministic primality for n < PRIMALITY_DETERMINISTIC_CAP.
pub fn is_prime_u128(n: u128) -> Result<bool> {
    if n >= PRIMALITY_DETERMINISTIC_CAP {
        return Err(Error::Unsupported(format!(
            "primality certification covers n < {PRIMALITY_DETERMINISTIC_CAP}, got {n}"
        )));
    }
    if n < 2 {
        return Ok(false);
    }
    for &p in &SMALL_PRIMES {
        let p = p as u128;
        if n == p {
            return Ok(true);
        }
        if n % p == 0 {
            return Ok(false);
        }
    }
    let mont = Montgomery::new(n);
    let minus_one = n - mont.one;
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        if a % n == 0 {
            continue;
        }
        let mut x = mont.pow_mont(mont.to_mont(a), d);
        if x == mont.one || x == minus_one {
            continue;
        }
        for _ in 1..s {
            x = mont.mul(x, x);
            if x == minus_one {
                continue 'bases;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    let mut b = base;
    let mut e = exp;
    loop {
        if e & 1 == 1 {
            acc = acc.checked_mul(b)?;
        }
        e >>= 1;
        if e == 0 {
            return Some(acc);
        }
        b = b.checked_mul(b)?;
    }
}

/// Floor of the k-th root, exact. Newton from an f64 seed padded to
/// sit above the true root, then a final downward correction.
pub fn integer_root(n: u128, k: u32) -> u128 {
    assert!(k >= 1);
    if n <= 1 || k == 1 {
        return if k == 1 { n } else { n };
    }
    if k >= 128 {
        return 1;
    }
    let seed = (n as f64).powf(1.0 / k as f64) * (1.0 + 1e-9) + 2.0;
    let mut x = seed as u128;
    loop {
        let q = match checked_pow(x, k - 1) {
            Some(v) if v > 0 => n / v,
            _ => 0,
        };
        let y = ((k as u128 - 1) * x + q) / k as u128;
        if y >= x {
            break;
        }
        x = y;
    }
    while checked_pow(x, k).map_or(true, |v| v > n) {
        x -= 1;
    }
    x
}

/// Some (r, k) with r^k == n and k >= 2, if n is a perfect power.
fn perfect_power(n: u128) -> Option<(u128, u32)> {
    if n < 4 {
        return None;
    }
    let bits = 128 - n.leading_zeros();
    for k in 2..=bits {
        let r = integer_root(n, k);
        if r < 2 {
            break;
        }
        if checked_pow(r, k) == Some(n) {
            return Some((r, k));
        }
    }
    None
}

/// Brent-cycle rho with batched gcds, run on raw Montgomery residues
/// (the iteration x -> x*x*R^{-1} + c is itself a quadratic map mod
/// every prime divisor, which is all the cycle argument needs).
fn pollard_brent(mont: &Montgomery, x0: u128, c: u128, budget: u64) -> Option<u128> {
    let n = mont.n;
    let step = |x: u128| add_mod(mont.mul(x, x), c, n);
    const BATCH: u64 = 128;
    let mut y = x0 % n;
    let mut q = mont.one;
    let mut g: u128 = 1;
    let mut x = y;
    let mut ys = y;
    let mut r: u64 = 1;
    let mut spent: u64 = 0;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        spent += r;
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            let lim = BATCH.min(r - k);
            for _ in 0..lim {
                y = step(y);
                q = mont.mul(q, x.abs_diff(y));
            }
            g = gcd_u128(q, n);
            k += lim;
            spent += lim;
            if spent > budget {
                return None;
            }
        }
        r <<= 1;
    }
    if g == n {
        // The batch that tripped contained the collision; replay it
        // one step at a time to isolate the factor.
        for _ in 0..=BATCH {
            ys = step(ys);
            g = gcd_u128(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    if g > 1 && g < n {
        Some(g)
    } else {
        None
    }
}

fn split_rough(n: u128, out: &mut Vec<u128>, original: u128) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if is_prime_u128(n)? {
        out.push(n);
        return Ok(());
    }
    if let Some((root, k)) = perfect_power(n) {
        let before = out.len();
        split_rough(root, out, original)?;
        let base: Vec<u128> = out[before..].to_vec();
        for f in base {
            for _ in 1..k {
                out.push(f);
            }
        }
        return Ok(());
    }
    let mont = Montgomery::new(n);
    for attempt in 0..config::RHO_SEED_RETRIES {
        let c = 2 * attempt as u128 + 1;
        let x0 = 2 + attempt as u128;
        if let Some(d) = pollard_brent(&mont, x0, c, config::RHO_BUDGET_PER_SEED) {
            split_rough(d, out, original)?;
            split_rough(n / d, out, original)?;
            return Ok(());
        }
    }
    Err(Error::Factorization {
        input: original,
        cofactor: n,
    })
}

/// Prime factorization with multiplicity, ascending. Exact for every
/// n below the deterministic primality cap.
pub fn factor_u128(n: u128) -> Result<Vec<u128>> {
    if n == 0 {
        return Err(Error::usage("factor_u128(0)"));
    }
    if n >= PRIMALITY_DETERMINISTIC_CAP {
        return Err(Error::Unsupported(format!(
            "factorization certified only below {PRIMALITY_DETERMINISTIC_CAP}, got {n}"
        )));
    }
    let mut m = n;
    let mut out = Vec::new();
    for &p in &SMALL_PRIMES {
        let p = p as u128;
        while m % p == 0 {
            out.push(p);
            m /= p;
        }
    }
    split_rough(m, &mut out, n)?;
    out.sort_unstable();
    Ok(out)
}

/// Exact omega counts over a 128-bit window.
pub struct OmegaWindow {
    lo: u128,
    counts: Vec<u8>,
}

impl OmegaWindow {
    pub fn lo(&self) -> u128 {
        self.lo
    }

    pub fn hi(&self) -> u128 {
        self.lo + self.counts.len() as u128 - 1
    }

    pub fn counts(&self) -> &[u8] {
        &self.counts
    }

    pub fn iter(&self) -> impl Iterator<Item = (u128, u8)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.lo + i as u128, c))
    }

    pub fn mean(&self) -> f64 {
        let total: u64 = self.counts.iter().map(|&c| c as u64).sum();
        total as f64 / self.counts.len() as f64
    }
}

/// omega(m) for every m in center-radius ..= center+radius.
///
/// Strategy: remove every prime factor up to WINDOW_TRIAL_BOUND by
/// sieving the window, then close each surviving cofactor, which is
/// trial-bound-rough, with a primality certificate, a perfect-power
/// root, or a deterministic-seed rho split. The window is processed
/// in fixed segments so any thread count produces identical output.
pub fn omega_window(
    center: WideInteger,
    radius: u64,
    threads: usize,
    progress: Option<&(dyn Fn(u64, u64) + Sync)>,
) -> Result<OmegaWindow> {
    if radius > config::WINDOW_RADIUS_CAP {
        return Err(Error::resource(format!(
            "window radius {radius} exceeds cap {}",
            config::WINDOW_RADIUS_CAP
        )));
    }
    let lo = center.checked_sub(radius as u128)?.get();
    let hi = center.checked_add(radius as u128)?.get();
    if lo < 2 {
        return Err(Error::usage(format!(
            "window must start at 2 or above, got {lo}"
        )));
    }
    if hi >= PRIMALITY_DETERMINISTIC_CAP {
        return Err(Error::Unsupported(format!(
            "window top {hi} is beyond the primality certification cap {PRIMALITY_DETERMINISTIC_CAP}"
        )));
    }
    let trial_bound = config::WINDOW_TRIAL_BOUND.min(u64::try_from(hi).unwrap_or(u64::MAX));
    let primes = primes_upto(trial_bound)?;
    let width = (hi - lo + 1) as u64;
    let seg_width = config::WINDOW_SEGMENT_WIDTH as u64;
    let seg_count = width.div_ceil(seg_width);
    let segments: Vec<(u128, usize)> = (0..seg_count)
        .map(|s| {
            let seg_lo = lo + (s * seg_width) as u128;
            let len = seg_width.min(width - s * seg_width) as usize;
            (seg_lo, len)
        })
        .collect();

    let done = std::sync::atomic::AtomicU64::new(0);
    let run_segment = |&(seg_lo, len): &(u128, usize)| -> Result<Vec<u8>> {
        let counts = window_segment(seg_lo, len, &primes)?;
        let d = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
        if let Some(cb) = progress {
            cb(d, seg_count);
        }
        Ok(counts)
    };

    let pieces: Vec<Vec<u8>> = if threads <= 1 {
        segments.iter().map(run_segment).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::resource(format!("thread pool: {e}")))?;
        pool.install(|| segments.par_iter().map(run_segment).collect::<Result<_>>())?
    };

    let mut counts = Vec::with_capacity(width as usize);
    for piece in pieces {
        counts.extend_from_slice(&piece);
    }
    Ok(OmegaWindow { lo, counts })
}

fn window_segment(seg_lo: u128, len: usize, primes: &[u64]) -> Result<Vec<u8>> {
    let seg_hi = seg_lo + len as u128 - 1;
    let mut counts = vec![0u8; len];
    let mut residual: Vec<u128> = (0..len).map(|i| seg_lo + i as u128).collect();
    for &p in primes {
        let pu = p as u128;
        if pu > seg_hi {
            break;
        }
        let start = match (seg_lo % pu) as u64 {
            0 => 0usize,
            r => (p - r) as usize,
        };
        let mut idx = start;
        while idx < len {
            counts[idx] += 1;
            let r = &mut residual[idx];
            *r /= pu;
            while *r % pu == 0 {
                *r /= pu;
            }
            idx += p as usize;
        }
    }
    let rough_floor = {
        let b = *primes.last().unwrap_or(&1) as u128;
        (b + 1) * (b + 1)
    };
    for (idx, &r) in residual.iter().enumerate() {
        if r == 1 {
            continue;
        }
        if r < rough_floor || is_prime_u128(r)? {
            counts[idx] += 1;
        } else {
            let mut fs = factor_u128(r)?;
            fs.dedup();
            counts[idx] += fs.len() as u8;
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::sieve::omega_range;

    #[test]
    fn montgomery_round_trip_and_products() {
        for &n in &[
            3u128,
            97,
            (1u128 << 61) - 1,
            1_000_000_007u128 * 1_000_000_009,
            514_843_556_263_457_212_366_849,
        ] {
            let mont = Montgomery::new(n);
            for &a in &[0u128, 1, 2, 12345 % n, n - 1, n / 2] {
                assert_eq!(mont.from_mont(mont.to_mont(a)), a, "n = {n}, a = {a}");
            }
            let (a, b) = (n / 3, n % 7);
            let got = mont.from_mont(mont.mul(mont.to_mont(a), mont.to_mont(b)));
            // Reference product via 256-bit schoolbook reduction.
            let (hi, lo) = mul_128_full(a, b);
            let reference = rem_256(hi, lo, n);
            assert_eq!(got, reference, "n = {n}");
        }
    }

    fn rem_256(hi: u128, lo: u128, n: u128) -> u128 {
        // (hi * 2^128 + lo) mod n by shifting in bits.
        let mut r = 0u128;
        for word in [hi, lo] {
            for i in (0..128).rev() {
                r = add_mod(r, r, n);
                if (word >> i) & 1 == 1 {
                    r = add_mod(r, 1, n);
                }
            }
        }
        r
    }

    fn omega_trial(mut m: u128) -> u8 {
        let mut count = 0u8;
        let mut p = 2u128;
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
    fn primality_agrees_with_trial_division_below_1e5() {
        let mut p = 2u64;
        let mut primes = std::collections::HashSet::new();
        let mut sieve = vec![true; 100_001];
        while p * p <= 100_000 {
            if sieve[p as usize] {
                let mut j = p * p;
                while j <= 100_000 {
                    sieve[j as usize] = false;
                    j += p;
                }
            }
            p += 1;
        }
        for m in 2..=100_000u64 {
            if sieve[m as usize] {
                primes.insert(m);
            }
        }
        for m in 0..=100_000u64 {
            assert_eq!(
                is_prime_u128(m as u128).unwrap(),
                primes.contains(&m),
                "is_prime({m})"
            );
        }
    }

    #[test]
    fn primality_known_large_cases() {
        // Mersenne primes and the largest prime below 2^64.
        assert!(is_prime_u128(2_305_843_009_213_693_951).unwrap()); // 2^61 - 1
        assert!(is_prime_u128(u64::MAX as u128 - 58).unwrap()); // 2^64 - 59
        assert!(!is_prime_u128(2047).unwrap()); // strong pseudoprime base 2
        assert!(!is_prime_u128(3_215_031_751).unwrap()); // spsp bases 2,3,5,7
        assert!(!is_prime_u128(561).unwrap()); // Carmichael
        let m61 = 2_305_843_009_213_693_951u128;
        // Composite with no small factor, just under the cap.
        assert!(!is_prime_u128(m61 * 999_983).unwrap());
        // At or beyond the cap the API refuses rather than guesses.
        assert!(is_prime_u128(PRIMALITY_DETERMINISTIC_CAP).is_err());
        assert!(is_prime_u128(m61 * m61).is_err());
    }

    #[test]
    fn integer_roots_are_exact_floors() {
        assert_eq!(integer_root(0, 2), 0);
        assert_eq!(integer_root(1, 7), 1);
        assert_eq!(integer_root(8, 3), 2);
        assert_eq!(integer_root(9, 3), 2);
        let r = (1u128 << 63) - 25;
        assert_eq!(integer_root(r * r, 2), r);
        assert_eq!(integer_root(r * r - 1, 2), r - 1);
        assert_eq!(integer_root(r * r + 1, 2), r);
        let c = 3_037_000_499u128; // floor(sqrt(2^63))
        assert_eq!(integer_root(c * c * c, 3), c);
        assert_eq!(integer_root(u128::MAX, 2), (1u128 << 64) - 1);
        assert_eq!(integer_root(u128::MAX, 127), 2);
    }

    #[test]
    fn perfect_power_detection() {
        // The smallest exponent is reported; recursion peels the rest.
        assert_eq!(perfect_power(36), Some((6, 2)));
        assert_eq!(perfect_power(27), Some((3, 3)));
        assert_eq!(perfect_power(2u128.pow(126)), Some((1u128 << 63, 2)));
        assert_eq!(perfect_power(97), None);
        let p = 1_000_003u128;
        assert_eq!(perfect_power(p * p), Some((p, 2)));
        assert_eq!(perfect_power(p * p * p), Some((p, 3)));
    }

    #[test]
    fn factors_known_semiprimes() {
        let m61 = 2_305_843_009_213_693_951u128;
        // Asymmetric: a six-digit prime times a Mersenne prime.
        assert_eq!(factor_u128(999_983 * m61).unwrap(), vec![999_983, m61]);
        let p = 1_000_000_007u128;
        let q = 1_000_000_009u128;
        assert_eq!(factor_u128(p * q).unwrap(), vec![p, q]);
        // Balanced ~80-bit semiprime and a large prime square, with the
        // primes located at runtime to keep the fixture honest.
        let mut a = 1_000_000_000_000u128;
        while !is_prime_u128(a).unwrap() {
            a += 1;
        }
        let mut b = 2_000_000_000_000u128;
        while !is_prime_u128(b).unwrap() {
            b += 1;
        }
        assert_eq!(factor_u128(a * b).unwrap(), vec![a, b]);
        assert_eq!(factor_u128(a * a).unwrap(), vec![a, a]);
        assert_eq!(factor_u128(1).unwrap(), Vec::<u128>::new());
        assert_eq!(factor_u128(2).unwrap(), vec![2]);
        assert!(factor_u128(0).is_err());
        // Beyond the certification cap the API refuses rather than
        // risking an uncertified answer.
        assert!(factor_u128(m61 * m61).is_err());
    }

    #[test]
    fn factorization_reconstructs_inputs() {
        // Mixed small/large structure around the 64-bit boundary.
        for n in [
            u64::MAX as u128,
            u64::MAX as u128 + 1,
            2u128 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29 * 31 * 37 * 41 * 43 * 47,
            999_999_999_999_999_989u128, // prime
            1_234_567_890_123_456_789u128,
        ] {
            let fs = factor_u128(n).unwrap();
            assert_eq!(fs.iter().product::<u128>(), n, "product for {n}");
            for &f in &fs {
                assert!(is_prime_u128(f).unwrap(), "{f} not prime in {n}");
            }
            assert!(fs.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn window_matches_trial_division_around_1e6() {
        let w = omega_window(WideInteger::from(1_000_003u64), 2, 1, None).unwrap();
        let expected: Vec<u8> = (1_000_001u128..=1_000_005).map(omega_trial).collect();
        assert_eq!(w.counts(), expected.as_slice());
        assert_eq!(w.lo(), 1_000_001);
        assert_eq!(w.hi(), 1_000_005);
    }

    #[test]
    fn window_agrees_with_sieve_route_on_64_bit_sub_windows() {
        // Same integers, two independent routes: sieve residuals
        // versus certify-and-split.
        let base = 999_999_000_000u64;
        let sieved = omega_range(base - 50, base + 50).unwrap();
        let windowed = omega_window(WideInteger::from(base), 50, 1, None).unwrap();
        assert_eq!(sieved.counts(), windowed.counts());
        let small = omega_window(WideInteger::from(7u64), 5, 1, None).unwrap();
        let small_sieved = omega_range(2, 12).unwrap();
        assert_eq!(small.counts(), small_sieved.counts());
    }

    #[test]
    fn window_thread_count_does_not_change_output() {
        let a = omega_window(WideInteger::from(10_000_000_000u64), 300, 1, None).unwrap();
        let b = omega_window(WideInteger::from(10_000_000_000u64), 300, 4, None).unwrap();
        assert_eq!(a.counts(), b.counts());
        assert_eq!(a.mean(), b.mean());
    }

    #[test]
    fn window_spot_checks_beyond_64_bits() {
        // Values independently verified with a separate factorization
        // system around the 2^79-scale center of interest.
        let center: WideInteger = "514843556263457212366848".parse().unwrap();
        let w = omega_window(center, 4, 1, None).unwrap();
        let expected: &[(u128, u8)] = &[
            (514_843_556_263_457_212_366_844, 4),
            (514_843_556_263_457_212_366_845, 5),
            (514_843_556_263_457_212_366_846, 5),
            (514_843_556_263_457_212_366_847, 4),
            (514_843_556_263_457_212_366_848, 6),
            (514_843_556_263_457_212_366_849, 1),
            (514_843_556_263_457_212_366_850, 5),
            (514_843_556_263_457_212_366_851, 5),
            (514_843_556_263_457_212_366_852, 3),
        ];
        let got: Vec<(u128, u8)> = w.iter().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn window_rejects_bad_requests() {
        assert!(omega_window(WideInteger::from(5u64), 5, 1, None).is_err());
        assert!(omega_window(
            WideInteger::from(100u64),
            config::WINDOW_RADIUS_CAP + 1,
            1,
            None
        )
        .is_err());
        assert!(omega_window(WideInteger(PRIMALITY_DETERMINISTIC_CAP), 1, 1, None).is_err());
    }
}
