//! Gauss–Legendre quadrature and composite integration of `1/ln t`.

use crate::error::{Error, Result};
use crate::lifn::li_delta;
use crate::realnum::{Precision, Real};

pub const MAX_ORDER: usize = 40;
const MAX_NEWTON_ITERATIONS: usize = 100;

/// Printed increment `li(200000) − li(100000)` from Bessel's 1810 table.
pub const BESSEL_1810_DIFFERENCE: &str = "8406.243118";

/// Orders compared in the 1815 demonstration.
pub const DEMO_ORDERS: [usize; 4] = [4, 7, 10, 16];

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`, nodes ascending.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<Real>,
    weights: Vec<Real>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[Real] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Real] {
        &self.weights
    }

    pub fn precision(&self) -> Precision {
        self.weights[0].precision()
    }

    /// Composite rule over `panels` equal subintervals of `[a, b]`.
    pub fn integrate<F>(&self, f: F, a: &Real, b: &Real, panels: usize) -> Result<Real>
    where
        F: Fn(&Real) -> Result<Real>,
    {
        if panels == 0 {
            return Err(Error::Domain("at least one panel is required".into()));
        }
        let width = (b - a) / panels as i64;
        let half = &width / 2i64;
        let mut total = Real::zero(a.precision().max(self.precision()));
        for k in 0..panels {
            let mid = a + &(&width * k as i64) + &half;
            let mut panel = Real::zero(total.precision());
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                let t = &mid + &(&half * x);
                panel = panel + w * &f(&t)?;
            }
            total = total + panel * &half;
        }
        Ok(total)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_eval(n: usize, x: &Real) -> (Real, Real) {
    let mut prev = Real::one(x.precision());
    let mut cur = x.clone();
    for k in 1..n {
        let k = k as i64;
        let next = (x * &cur * (2 * k + 1) - &prev * k) / (k + 1);
        prev = cur;
        cur = next;
    }
    let deriv = (x * &cur - &prev) * n as i64 / (x * x - 1i64);
    (cur, deriv)
}

/// Roots of `P_n` by Newton iteration and weights `2/((1 − x²) P_n'(x)²)`.
pub fn legendre_rule(n: usize, prec: Precision) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Domain(format!("rule order must be in 1..={MAX_ORDER}, got {n}")));
    }
    if n == 1 {
        return Ok(QuadratureRule {
            order: 1,
            nodes: vec![Real::zero(prec)],
            weights: vec![Real::from_i64(2, prec)],
        });
    }
    let tol = Real::pow10(-(prec.digits() as i32) + 4, prec);
    let mut positive = Vec::with_capacity(n / 2);
    for i in 1..=n / 2 {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = Real::from_f64(guess, prec);
        let mut converged = false;
        for _ in 0..MAX_NEWTON_ITERATIONS {
            let (p, dp) = legendre_eval(n, &x);
            let dx = p / dp;
            x = &x - &dx;
            if dx.abs() < tol {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence(format!("Legendre root {i} of order {n}")));
        }
        let (_, dp) = legendre_eval(n, &x);
        let w = Real::from_i64(2, prec) / ((Real::one(prec) - &x * &x) * &dp * &dp);
        positive.push((x, w));
    }

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (x, w) in &positive {
        nodes.push(-x);
        weights.push(w.clone());
    }
    if n % 2 == 1 {
        let zero = Real::zero(prec);
        let (_, dp) = legendre_eval(n, &zero);
        nodes.push(zero);
        weights.push(Real::from_i64(2, prec) / (&dp * &dp));
    }
    for (x, w) in positive.into_iter().rev() {
        nodes.push(x);
        weights.push(w);
    }
    Ok(QuadratureRule { order: n, nodes, weights })
}

/// `∫_a^b dt / ln t` by the composite rule.
pub fn integrate_recip_log(a: &Real, b: &Real, rule: &QuadratureRule, panels: usize) -> Result<Real> {
    if !a.is_positive() {
        return Err(Error::Domain("integration interval must lie in t > 0".into()));
    }
    if a > b {
        return Err(Error::Domain("integration requires a <= b".into()));
    }
    if *a <= 1 && *b >= 1 {
        return Err(Error::Domain("interval contains the singularity at t = 1".into()));
    }
    if a == b {
        return Ok(Real::zero(a.precision()));
    }
    rule.integrate(|t| Ok(Real::one(t.precision()) / t.ln()?), a, b, panels)
}

#[derive(Debug, Clone)]
pub struct Gauss1815Row {
    pub nodes: usize,
    pub value: Real,
    pub abs_error: Real,
    pub rel_error: f64,
}

/// Gauss's single example: `∫_{100000}^{200000} dt/ln t` at several rule orders.
#[derive(Debug, Clone)]
pub struct Gauss1815Report {
    pub from: Real,
    pub to: Real,
    pub reference: Real,
    pub bessel_difference: Real,
    pub rows: Vec<Gauss1815Row>,
}

pub fn gauss_1815_demo(prec: Precision) -> Result<Gauss1815Report> {
    gauss_demo_with_orders(&DEMO_ORDERS, 1, prec)
}

pub fn gauss_demo_with_orders(orders: &[usize], panels: usize, prec: Precision) -> Result<Gauss1815Report> {
    let from = Real::from_i64(100_000, prec);
    let to = Real::from_i64(200_000, prec);
    let reference = li_delta(&from, &to)?;
    let mut rows = Vec::with_capacity(orders.len());
    for &n in orders {
        let rule = legendre_rule(n, prec)?;
        let value = integrate_recip_log(&from, &to, &rule, panels)?;
        let abs_error = (&value - &reference).abs();
        let rel_error = (&abs_error / &reference).to_f64();
        rows.push(Gauss1815Row { nodes: n, value, abs_error, rel_error });
    }
    Ok(Gauss1815Report {
        from,
        to,
        reference,
        bessel_difference: Real::parse(BESSEL_1810_DIFFERENCE, prec)?,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::DEFAULT
    }

    fn close(a: &Real, b: &Real, tol_exp: i32) -> bool {
        (a - b).abs() < Real::pow10(tol_exp, a.precision())
    }

    #[test]
    fn two_point_rule() {
        let r = legendre_rule(2, p()).unwrap();
        let inv_sqrt3 = Real::one(p()) / Real::from_i64(3, p()).sqrt().unwrap();
        assert!(close(&r.nodes()[1], &inv_sqrt3, -60));
        assert!(close(&r.nodes()[0], &(-&inv_sqrt3), -60));
        for w in r.weights() {
            assert!(close(w, &Real::one(p()), -60));
        }
    }

    #[test]
    fn three_point_rule() {
        let r = legendre_rule(3, p()).unwrap();
        let s = (Real::from_i64(3, p()) / 5i64).sqrt().unwrap();
        assert!(r.nodes()[1].is_zero());
        assert!(close(&r.nodes()[2], &s, -60));
        assert!(close(&r.weights()[1], &(Real::from_i64(8, p()) / 9i64), -60));
        assert!(close(&r.weights()[0], &(Real::from_i64(5, p()) / 9i64), -60));
    }

    #[test]
    fn order_bounds() {
        assert!(legendre_rule(0, p()).is_err());
        assert!(legendre_rule(41, p()).is_err());
        assert!(legendre_rule(40, p()).is_ok());
    }

    #[test]
    fn interval_checks() {
        let r = legendre_rule(4, p()).unwrap();
        let x = Real::from_i64(10, p());
        assert!(integrate_recip_log(&x, &x, &r, 1).unwrap().is_zero());
        assert!(integrate_recip_log(&Real::from_f64(0.5, p()), &x, &r, 1).is_err());
        assert!(integrate_recip_log(&Real::one(p()), &x, &r, 1).is_err());
        assert!(integrate_recip_log(&x, &Real::from_i64(20, p()), &r, 0).is_err());
    }
}
