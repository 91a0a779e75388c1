mod common;

use common::*;
use logint::lifn::li_delta;
use logint::quadrature::*;
use logint::{Precision, Real};

fn p() -> Precision {
    Precision::new(40)
}

#[test]
fn weights_and_symmetry() {
    for n in 1..=MAX_ORDER {
        let rule = legendre_rule(n, p()).unwrap();
        assert_eq!(rule.nodes().len(), n);
        let total = rule.weights().iter().fold(Real::zero(p()), |s, w| s + w);
        assert!(abs_err(&total, &Real::from_i64(2, p())) < 1e-30, "n={n}");
        for i in 0..n {
            let j = n - 1 - i;
            assert!((&rule.nodes()[i] + &rule.nodes()[j]).abs() < Real::pow10(-32, p()));
            assert!(abs_err(&rule.weights()[i], &rule.weights()[j]) < 1e-32);
            assert!(rule.weights()[i].is_positive());
        }
        assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn nodes_match_independent_newton() {
    for n in [2, 5, 10, 16, 33] {
        let rule = legendre_rule(n, p()).unwrap();
        let (mut nodes, weights) = gl_rule(n, p());
        nodes.reverse();
        let weights: Vec<Real> = weights.into_iter().rev().collect();
        for i in 0..n {
            assert!(abs_err(&rule.nodes()[i], &nodes[i]) < 1e-34);
            assert!(abs_err(&rule.weights()[i], &weights[i]) < 1e-34);
        }
    }
}

#[test]
fn monomial_exactness() {
    let p = p();
    let one = Real::one(p);
    let minus_one = -&one;
    for n in 1..=20usize {
        let rule = legendre_rule(n, p).unwrap();
        for k in 0..2 * n as i64 {
            let v = rule.integrate(|t| Ok(t.powi(k)), &minus_one, &one, 1).unwrap();
            let exact = if k % 2 == 1 { Real::zero(p) } else { Real::from_i64(2, p) / (k + 1) };
            assert!(abs_err(&v, &exact) < 1e-28, "n={n} k={k}");
        }
    }
}

#[test]
fn order_ten_on_degree_nineteen() {
    let p = p();
    let rule = legendre_rule(10, p).unwrap();
    let (a, b) = (Real::zero(p), Real::one(p));
    let v = rule.integrate(|t| Ok(t.powi(19)), &a, &b, 1).unwrap();
    assert!(abs_err(&v, &(Real::one(p) / 20i64)) < 1e-30);
    let v20 = rule.integrate(|t| Ok(t.powi(20)), &a, &b, 1).unwrap();
    assert!(abs_err(&v20, &(Real::one(p) / 21i64)) > 1e-12);
}

#[test]
fn gauss_interval_order_ten() {
    let p = p();
    let (a, b) = (Real::from_i64(100_000, p), Real::from_i64(200_000, p));
    let rule = legendre_rule(10, p).unwrap();
    let v = integrate_recip_log(&a, &b, &rule, 1).unwrap();
    let reference = li_delta(&a, &b).unwrap();
    assert!(rel_err(&v, &reference) < 1e-6);
    assert!(abs_err(&v, &real(BESSEL_1810_DIFFERENCE, p)) < 1e-3);
}

#[test]
fn demo_errors_decrease_with_order() {
    let report = gauss_1815_demo(p()).unwrap();
    let orders: Vec<usize> = report.rows.iter().map(|r| r.nodes).collect();
    assert_eq!(orders, DEMO_ORDERS);
    assert!(report.rows.windows(2).all(|w| w[1].rel_error < w[0].rel_error));
    let n16 = report.rows.iter().find(|r| r.nodes == 16).unwrap();
    assert!(n16.rel_error < 1e-10);
}

#[test]
fn panel_refinement_never_hurts() {
    let p = p();
    let (a, b) = (Real::from_i64(2, p), Real::from_i64(1000, p));
    let reference = li_delta(&a, &b).unwrap();
    for n in [3, 6, 10] {
        let rule = legendre_rule(n, p).unwrap();
        let mut prev = f64::INFINITY;
        for panels in [1, 2, 4, 8, 16] {
            let v = integrate_recip_log(&a, &b, &rule, panels).unwrap();
            let e = abs_err(&v, &reference);
            assert!(e <= prev, "n={n} panels={panels}");
            prev = e;
        }
    }
}

#[test]
fn agreement_triangle() {
    // quadrature, li_delta and the independent oracle agree pairwise
    let p = p();
    let (a, b) = (Real::from_i64(10, p), Real::from_i64(50, p));
    let rule = legendre_rule(20, p).unwrap();
    let q = integrate_recip_log(&a, &b, &rule, 4).unwrap();
    let d = li_delta(&a, &b).unwrap();
    let o = li_pv_oracle(&b) - li_pv_oracle(&a);
    assert!(rel_err(&q, &d) < 1e-25);
    assert!(rel_err(&q, &o) < 1e-25);
    assert!(rel_err(&d, &o) < 1e-25);
}

#[test]
fn domain_errors() {
    let p = p();
    assert!(legendre_rule(0, p).is_err());
    assert!(legendre_rule(MAX_ORDER + 1, p).is_err());
    let rule = legendre_rule(4, p).unwrap();
    let half = real("0.5", p);
    let two = Real::from_i64(2, p);
    assert!(integrate_recip_log(&half, &two, &rule, 1).is_err());
    assert!(integrate_recip_log(&Real::zero(p), &half, &rule, 1).is_err());
    assert!(rule.integrate(|t| Ok(t.clone()), &half, &two, 0).is_err());
    assert!(integrate_recip_log(&two, &two, &rule, 1).unwrap().is_zero());
}
