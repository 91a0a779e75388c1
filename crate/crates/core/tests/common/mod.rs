//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use logint::{Precision, Real};

/// γ to 50 decimals.
pub const GAMMA_50: &str = "0.57721566490153286060651209008240243104215933593992";
/// li(2) to 50 decimals.
pub const LI2_50: &str = "1.04516378011749278484458888919461313652261557815120";

pub fn real(s: &str, prec: Precision) -> Real {
    Real::parse(s, prec).unwrap()
}

pub fn rel_err(a: &Real, b: &Real) -> f64 {
    ((a - b) / b).abs().to_f64()
}

pub fn abs_err(a: &Real, b: &Real) -> f64 {
    (a - b).abs().to_f64()
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on `P_n`.
pub fn gl_rule(n: usize, prec: Precision) -> (Vec<Real>, Vec<Real>) {
    let tol = Real::pow10(-(prec.digits() as i32) + 3, prec);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 1..=n {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = Real::from_f64(guess, prec);
        for _ in 0..100 {
            let (p, dp) = legendre_p(n, &x);
            let dx = &p / &dp;
            x = &x - &dx;
            if dx.abs() < tol {
                break;
            }
        }
        let (_, dp) = legendre_p(n, &x);
        let one = Real::one(prec);
        let w = Real::from_i64(2, prec) / ((&one - &x * &x) * &dp * &dp);
        nodes.push(x);
        weights.push(w);
    }
    (nodes, weights)
}

fn legendre_p(n: usize, x: &Real) -> (Real, Real) {
    let prec = x.precision();
    let mut p0 = Real::one(prec);
    let mut p1 = x.clone();
    for k in 2..=n as i64 {
        let p2 = (x * &p1 * (2 * k - 1) - &p0 * (k - 1)) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = (x * &p1 - &p0) * n as i64 / (x * x - Real::one(prec));
    (p1, dp)
}

pub fn gl_integrate(rule: &(Vec<Real>, Vec<Real>), a: &Real, b: &Real, f: impl Fn(&Real) -> Real) -> Real {
    let half = (b - a) / 2i64;
    let mid = (a + b) / 2i64;
    let mut sum = Real::zero(a.precision());
    for (x, w) in rule.0.iter().zip(&rule.1) {
        sum = sum + w * f(&(&mid + &half * x));
    }
    sum * half
}

/// Principal value `∫_0^x dt/ln t` by direct quadrature.
///
/// On (0, 1/2] substitute `t = e^{−u}`; on [1/2, x] integrate the smooth
/// remainder `1/ln t − 1/(t − 1)` and add `ln|x − 1| − ln(1/2)`.
pub fn li_pv_oracle(x: &Real) -> Real {
    let out = x.precision();
    let prec = out.extended(30);
    let x = x.with_precision(prec);
    let rule = gl_rule(40, prec);
    let one = Real::one(prec);
    let half = &one / 2i64;

    // ∫_{u0}^∞ −e^{−u}/u du, cut off where e^{−u} is far below working precision
    let tail = |u0: &Real| {
        let mut sum = Real::zero(prec);
        let mut a = u0.clone();
        for _ in 0..170 {
            let b = &a + &one;
            sum = sum + gl_integrate(&rule, &a, &b, |u| -(Real::zero(prec) - u).exp().unwrap() / u);
            a = b;
        }
        sum
    };
    if x <= half {
        return tail(&(Real::zero(prec) - x.ln().unwrap())).with_precision(out);
    }

    let g = |t: &Real| Real::one(prec) / t.ln().unwrap() - Real::one(prec) / (t - Real::one(prec));
    let ratio = Real::from_f64(1.5, prec);
    let mut smooth = Real::zero(prec);
    let mut a = half.clone();
    while a < x {
        let b = (&a * &ratio).min(&x);
        smooth = smooth + gl_integrate(&rule, &a, &b, g);
        a = b;
    }
    let log_part = (&x - &one).abs().ln().unwrap() - half.ln().unwrap();
    (tail(&half.ln().unwrap().abs()) + smooth + log_part).with_precision(out)
}

/// `Ei(y) = γ + ln|y| + Σ y^k/(k·k!)` with a hard-coded γ.
pub fn ei_oracle(y: f64, prec: Precision) -> Real {
    let wp = prec.extended(40);
    let y = Real::from_f64(y, wp);
    let tol = Real::pow10(-(wp.digits() as i32), wp);
    let mut power = Real::one(wp);
    let mut sum = Real::zero(wp);
    let mut k = 1i64;
    loop {
        power = &power * &y / k;
        let term = &power / k;
        sum = &sum + &term;
        if k > 10 && term.abs() < tol {
            break;
        }
        k += 1;
    }
    (real(GAMMA_50, wp) + y.abs().ln().unwrap() + sum).with_precision(prec)
}

pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Möbius function by trial factorisation.
pub fn mobius_trial(mut n: u64) -> i8 {
    let mut mu = 1i8;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}
