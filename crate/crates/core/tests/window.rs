//! Wide-window factorization: frozen spot values, thread-count
//! invariance, progress reporting, and refusal boundaries.

use std::str::FromStr;
use std::sync::Mutex;

use ekstats_core::{omega_window, Error, WideInteger};

const CENTER: &str = "514843556263457212366848";

#[test]
fn window_mean_spot_is_frozen() {
    let center = WideInteger::from_str(CENTER).unwrap();
    let w = omega_window(center, 100, 1, None).unwrap();
    assert_eq!(w.counts().len(), 201);
    assert_eq!(w.lo(), center.get() - 100);
    assert_eq!(w.hi(), center.get() + 100);
    assert!(w.counts().iter().all(|&c| c >= 1));
    // 846 distinct-prime-divisor hits over 201 integers.
    assert_eq!(w.mean(), 846.0 / 201.0);
    assert_eq!(w.mean(), 4.208955223880597);
}

#[test]
fn window_is_invariant_under_thread_count() {
    let center = WideInteger::from_str(CENTER).unwrap();
    let serial = omega_window(center, 600, 1, None).unwrap();
    let parallel = omega_window(center, 600, 3, None).unwrap();
    assert_eq!(serial.counts(), parallel.counts());
    assert_eq!(serial.lo(), parallel.lo());
}

#[test]
fn window_reports_progress_per_segment() {
    let center = WideInteger::from_str("500000000000000").unwrap();
    let seen = Mutex::new(Vec::new());
    let progress = |done: u64, total: u64| {
        seen.lock().unwrap().push((done, total));
    };
    let w = omega_window(center, 70_000, 1, Some(&progress)).unwrap();
    // 140_001 integers split into fixed 2^16-wide segments.
    assert_eq!(seen.into_inner().unwrap(), vec![(1, 3), (2, 3), (3, 3)]);
    let mean = w.mean();
    assert!((3.0..4.6).contains(&mean), "mean = {mean}");
}

#[test]
fn window_refusals() {
    let center = WideInteger::from_str(CENTER).unwrap();
    assert!(matches!(
        omega_window(center, 2_000_001, 1, None),
        Err(Error::Resource(_))
    ));

    // Underflow past zero on the low side.
    let small = WideInteger::from_str("2").unwrap();
    assert!(omega_window(small, 5, 1, None).is_err());

    // Window touching 1, where counting prime divisors is undefined.
    let low = WideInteger::from_str("4").unwrap();
    assert!(matches!(
        omega_window(low, 3, 1, None),
        Err(Error::Usage(_))
    ));

    // Beyond the deterministic-primality certification range.
    let huge = WideInteger::from_str("3317044064679887385961981").unwrap();
    assert!(matches!(
        omega_window(huge, 0, 1, None),
        Err(Error::Unsupported(_))
    ));
}
