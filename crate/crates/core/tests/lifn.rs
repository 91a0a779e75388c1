mod common;

use common::*;
use logint::historical::BESSEL_1810;
use logint::lifn::{ei, li, li_delta, li_two, LiConvention};
use logint::{Precision, Real};
use proptest::prelude::*;

const PV: LiConvention = LiConvention::PvFromZero;
const FROM2: LiConvention = LiConvention::FromTwo;

fn p40() -> Precision {
    Precision::new(40)
}

#[test]
fn ei_at_plus_minus_one() {
    let p = p40();
    for y in [1.0, -1.0, 0.25, -3.5, 7.0] {
        let v = ei(&Real::from_f64(y, p)).unwrap();
        let o = ei_oracle(y, p);
        assert!(abs_err(&v, &o) < 1e-36, "Ei({y}) = {v}, oracle {o}");
    }
    let e1 = ei(&Real::one(p)).unwrap();
    assert!(e1.to_fixed(30).starts_with("1.895117816355936755466520934"));
}

#[test]
fn ei_large_negative_keeps_relative_accuracy() {
    let p = p40();
    let v = ei(&Real::from_i64(-40, p)).unwrap();
    let o = ei_oracle(-40.0, p);
    assert!(v.is_negative());
    assert!(rel_err(&v, &o) < 1e-30, "{v} vs {o}");
}

#[test]
fn li_two_value() {
    let p = p40();
    let v = li_two(p).unwrap();
    assert!(abs_err(&v, &real(LI2_50, p)) < 1e-36);
}

#[test]
fn li_half_value() {
    let p = p40();
    let v = li(&real("0.5", p), PV).unwrap();
    assert!(v.to_fixed(24).starts_with("-0.378671043061087976727"), "{v}");
    let o = li_pv_oracle(&real("0.5", p));
    assert!(abs_err(&v, &o) < 1e-30);
}

#[test]
fn pv_matches_quadrature_oracle() {
    let p = p40();
    for x in ["1.5", "2", "10", "1280", "0.9", "1.01"] {
        let x = real(x, p);
        let v = li(&x, PV).unwrap();
        let o = li_pv_oracle(&x);
        let rel = rel_err(&v, &o);
        assert!(rel < 1e-25, "li({x}) = {v}, quadrature {o}, rel {rel:e}");
    }
}

#[test]
fn derivative_is_reciprocal_log() {
    let p = p40();
    let h = Real::pow10(-10, p);
    for x in [1.5, 3.0, 100.0, 1e5] {
        let x = Real::from_f64(x, p);
        let up = li(&(&x + &h), PV).unwrap();
        let down = li(&(&x - &h), PV).unwrap();
        let slope = (up - down) / (&h * 2i64);
        let expect = Real::one(p) / x.ln().unwrap();
        assert!(rel_err(&slope, &expect) < 1e-15);
    }
}

#[test]
fn sign_structure() {
    let p = p40();
    let mu = real("1.4513692348833810502839684858920", p);
    for x in ["0.1", "0.5", "0.99", "1.01", "1.4"] {
        assert!(li(&real(x, p), PV).unwrap().is_negative(), "li({x}) should be negative");
    }
    for x in ["1.46", "2", "10", "1e6"] {
        assert!(li(&real(x, p), PV).unwrap().is_positive(), "li({x}) should be positive");
    }
    assert!(li(&mu, PV).unwrap().abs() < Real::pow10(-25, p));
    assert!(li(&real("1.0000001", p), PV).unwrap() < -15i64);
}

#[test]
fn domain_errors() {
    let p = p40();
    assert!(ei(&Real::zero(p)).is_err());
    assert!(li(&Real::zero(p), PV).is_err());
    assert!(li(&Real::from_i64(-3, p), PV).is_err());
    assert!(li(&Real::one(p), PV).is_err());
    assert!(li(&real("1.5", p), FROM2).is_err());
    assert!(li_delta(&Real::one(p), &Real::from_i64(3, p)).is_err());
    assert!(li_delta(&Real::from_i64(5, p), &Real::from_i64(3, p)).is_err());
}

#[test]
fn from_two_at_two_is_zero() {
    let p = p40();
    assert!(li(&Real::from_i64(2, p), FROM2).unwrap().abs() < Real::pow10(-38, p));
}

#[test]
fn delta_examples() {
    let p = p40();
    let a = Real::from_i64(100_000, p);
    let b = Real::from_i64(200_000, p);
    let d = li_delta(&a, &b).unwrap();
    let o = li_pv_oracle(&b) - li_pv_oracle(&a);
    assert!(rel_err(&d, &o) < 1e-25);
    assert!(d.to_fixed(4) == "8406.2431", "{d}");
    assert!(li_delta(&a, &a).unwrap().is_zero());
}

#[test]
fn bessel_million_within_tolerance() {
    let p = p40();
    let v = li(&Real::from_i64(1_000_000, p), PV).unwrap();
    let printed = real(BESSEL_1810[6].1, p);
    assert!(abs_err(&v, &printed) <= 5e-4);
    assert!(v.to_fixed(6).starts_with("78627.549159"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn convention_identity(x in 2.0f64..1e7) {
        let p = p40();
        let x = Real::from_f64(x, p);
        let d = li(&x, PV).unwrap() - li(&x, FROM2).unwrap() - li_two(p).unwrap();
        prop_assert!(d.abs() < Real::pow10(-30, p));
    }

    #[test]
    fn monotone_above_one(a in 1.001f64..1e6, b in 1.001f64..1e6) {
        prop_assume!((a - b).abs() > 1e-9);
        let p = Precision::new(30);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let lo = li(&Real::from_f64(lo, p), PV).unwrap();
        let hi = li(&Real::from_f64(hi, p), PV).unwrap();
        prop_assert!(lo < hi);
    }
}
