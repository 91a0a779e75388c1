mod common;

use common::*;
use logint::primes::*;
use logint::{Error, Precision, Real};
use proptest::prelude::*;

const MODERN: CountingConvention = CountingConvention::Modern;

#[test]
fn sieve_matches_trial_division() {
    let n = 100_000;
    let sieved = primes_upto(n);
    let trial: Vec<u64> = (0..=n).filter(|&k| is_prime_trial(k)).collect();
    assert_eq!(sieved, trial);
}

#[test]
fn segment_size_does_not_matter() {
    for x in [2, 3, 1_000, 65_536, 999_983, 1_000_000] {
        let base = prime_pi_with_segment(x, MODERN, SEGMENT_SIZES[0]).unwrap();
        for &s in &SEGMENT_SIZES[1..] {
            assert_eq!(prime_pi_with_segment(x, MODERN, s).unwrap(), base, "x={x} segment {s}");
        }
        assert_eq!(prime_pi_with_segment(x, MODERN, 7).unwrap(), base);
    }
}

#[test]
fn segments_cover_range() {
    let segs: Vec<_> = segments(1000, 64).collect();
    assert_eq!(segs[0].lo(), 2);
    assert_eq!(segs.last().unwrap().hi(), 1000);
    assert!(segs.windows(2).all(|w| w[0].hi() == w[1].lo()));
    let seg = SieveSegment::new(90, 110, &small_primes(11));
    assert_eq!(seg.primes().collect::<Vec<_>>(), [97, 101, 103, 107, 109]);
    assert!(seg.is_prime(101) && !seg.is_prime(91));
}

#[test]
fn known_counts() {
    assert_eq!(prime_pi(2, MODERN).unwrap(), 1);
    assert_eq!(prime_pi(1_000, MODERN).unwrap(), 168);
    assert_eq!(prime_pi(1_000_000, MODERN).unwrap(), 78_498);
    assert_eq!(prime_pi(10_000_000, MODERN).unwrap(), 664_579);
    assert_eq!(prime_pi_many(&[1_000_000, 10, 100, 10]).unwrap(), [78_498, 4, 25, 4]);
}

#[test]
fn convention_adds_one() {
    for x in [2, 10, 1_000, 100_000] {
        let m = prime_pi(x, MODERN).unwrap();
        assert_eq!(prime_pi(x, CountingConvention::Bessel1810).unwrap(), m + 1);
    }
}

#[test]
fn domain_errors() {
    assert!(matches!(prime_pi(1, MODERN), Err(Error::Domain(_))));
    assert!(matches!(prime_pi(PI_LIMIT + 1, MODERN), Err(Error::LimitExceeded { .. })));
    assert!(matches!(block_counts(1_500, CHILIAD), Err(Error::Alignment { .. })));
    assert!(matches!(block_counts(10_000, 500), Err(Error::Alignment { .. })));
    assert!(matches!(block_counts(0, CHILIAD), Err(Error::Alignment { .. })));
    assert!(mobius_upto(MOBIUS_LIMIT + 1).is_err());
}

#[test]
fn blocks_sum_to_pi() {
    let c = block_counts(1_000_000, CHILIAD).unwrap();
    assert_eq!(c.block_counts.len(), 1000);
    assert_eq!(c.total(), 78_498);
    assert_eq!(c.block_counts[0], 168);
    assert_eq!(c.pi_at(100_000, MODERN), Some(9_592));
    assert_eq!(c.pi_at(100_000, CountingConvention::Bessel1810), Some(9_593));
    let m = block_counts(1_000_000, MYRIAD).unwrap();
    assert_eq!(m.block_counts[0], 1_229);
    assert_eq!(m.total(), c.total());
    assert_eq!(c.truncated(10_000).unwrap().total(), 1_229);
    assert!(c.truncated(10_500).is_none());
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.bin");
    let fresh = block_counts_cached(100_000, CHILIAD, Some(&path)).unwrap();
    assert!(path.exists());
    assert_eq!(load_counts(&path).unwrap(), fresh);
    let reused = block_counts_cached(50_000, CHILIAD, Some(&path)).unwrap();
    assert_eq!(reused, block_counts(50_000, CHILIAD).unwrap());
    // larger request refreshes the file
    let bigger = block_counts_cached(200_000, CHILIAD, Some(&path)).unwrap();
    assert_eq!(load_counts(&path).unwrap().limit, 200_000);
    assert_eq!(bigger.total(), 17_984);

    let junk = dir.path().join("junk.bin");
    std::fs::write(&junk, b"not a cache").unwrap();
    assert!(matches!(load_counts(&junk), Err(Error::Cache(_))));
    let mut bytes = std::fs::read(&path).unwrap();
    bytes.truncate(bytes.len() - 4);
    std::fs::write(&junk, bytes).unwrap();
    assert!(matches!(load_counts(&junk), Err(Error::Cache(_))));
}

#[test]
fn mobius_matches_factorisation() {
    let mu = mobius_upto(20_000).unwrap();
    assert_eq!(mu[0], 0);
    assert_eq!(&mu[1..=12], &[1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    for (n, &m) in mu.iter().enumerate().skip(1) {
        assert_eq!(m, mobius_trial(n as u64), "n={n}");
    }
    // Σ_{d|n} μ(d) = [n = 1]
    for n in 1..=500usize {
        let s: i32 = (1..=n).filter(|d| n % d == 0).map(|d| mu[d] as i32).sum();
        assert_eq!(s, (n == 1) as i32);
    }
}

#[test]
fn euler_product_partials() {
    let p = Precision::new(30);
    let pi = Real::pi(p);
    let (sum, prod) = euler_product_partial(&Real::from_i64(2, p), 10_000).unwrap();
    let zeta2 = &pi * &pi / 6i64;
    assert!(abs_err(&sum, &zeta2) < 1e-4);
    assert!(abs_err(&prod, &zeta2) < 1e-4);
    let (sum4, prod4) = euler_product_partial(&Real::from_i64(4, p), 1_000).unwrap();
    let zeta4 = pi.powi(4) / 90i64;
    assert!(abs_err(&sum4, &zeta4) < 1e-8);
    assert!(abs_err(&prod4, &zeta4) < 1e-8);
    assert!(sum4 < zeta4 && prod4 < zeta4);
    let (s, q) = euler_product_partial(&real("2.5", p), 2_000).unwrap();
    assert!(abs_err(&s, &q) < 1e-3);
    assert!(euler_product_partial(&Real::one(p), 10).is_err());
}

#[test]
fn chebyshev_bounds_hold() {
    for x in [1_000_000u64, 10_000_000] {
        let pi = prime_pi(x, MODERN).unwrap() as f64;
        let r = pi / (x as f64 / (x as f64).ln());
        assert!((0.92129..=1.10555).contains(&r), "x={x}: {r}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pi_is_monotone_and_matches_list(a in 2u64..200_000, b in 2u64..200_000) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let v = prime_pi_many(&[lo, hi]).unwrap();
        prop_assert!(v[0] <= v[1]);
        let gap = primes_upto(hi).into_iter().filter(|&p| p > lo).count() as u64;
        prop_assert_eq!(v[1] - v[0], gap);
    }
}
