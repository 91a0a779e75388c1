//! Euler–Mascheroni `γ` and the Soldner–Ramanujan root `μ` of `li`,
//! together with the digit strings printed for them historically.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lifn::{li, LiConvention};
use crate::realnum::{Precision, Real};

/// Mascheroni (1790), 32 decimals.
pub const MASCHERONI_GAMMA: &str = "0.57721566490153286061811209008239";
/// Soldner (1809), 22 decimals.
pub const SOLDNER_GAMMA: &str = "0.5772156649015328606065";
/// Soldner (1809), root of `li`.
pub const SOLDNER_MU: &str = "1.4513692346";

pub const MAX_GAMMA_DIGITS: u32 = 100;
pub const MAX_MU_DIGITS: u32 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantMethod {
    BrentMcMillan,
    BisectionNewton,
}

impl ConstantMethod {
    pub fn tag(self) -> &'static str {
        match self {
            ConstantMethod::BrentMcMillan => "brent-mcmillan",
            ConstantMethod::BisectionNewton => "bisection-newton",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstantResult {
    pub value: Real,
    pub digits_requested: u32,
    pub method: ConstantMethod,
}

impl ConstantResult {
    /// The value truncated to the requested number of decimals.
    pub fn digits_string(&self) -> String {
        self.value.to_fixed_truncated(self.digits_requested)
    }
}

/// Number of leading decimals on which two fixed-point strings agree.
///
/// Returns 0 when the integer parts differ.
pub fn matching_decimals(a: &str, b: &str) -> usize {
    let (ai, af) = a.split_once('.').unwrap_or((a, ""));
    let (bi, bf) = b.split_once('.').unwrap_or((b, ""));
    if ai != bi {
        return 0;
    }
    af.bytes().zip(bf.bytes()).take_while(|(x, y)| x == y).count()
}

fn check_digits(digits: u32, max: u32, prec: Precision) -> Result<()> {
    if digits == 0 || digits > max {
        return Err(Error::Domain(format!("digits must be in 1..={max}, got {digits}")));
    }
    if digits > prec.output_cap() {
        return Err(Error::PrecisionOverflow { requested: digits, cap: prec.output_cap() });
    }
    Ok(())
}

thread_local! {
    static GAMMA_CACHE: RefCell<HashMap<u32, Real>> = RefCell::new(HashMap::new());
}

/// `γ` at working precision `prec`, memoised per thread.
pub fn gamma(prec: Precision) -> Real {
    if let Some(v) = GAMMA_CACHE.with(|c| c.borrow().get(&prec.digits()).cloned()) {
        return v;
    }
    let v = brent_mcmillan(prec);
    GAMMA_CACHE.with(|c| c.borrow_mut().insert(prec.digits(), v.clone()));
    v
}

// Brent–McMillan: γ = U(n)/V(n) − ln n + O(e^{−4n}), with
// U = Σ (n^k/k!)^2 (H_k − ln n), V = Σ (n^k/k!)^2.
fn brent_mcmillan(prec: Precision) -> Real {
    let target = prec.digits() + 4;
    let n = (target as f64 * std::f64::consts::LN_10 / 4.0).ceil() as i64 + 1;
    // terms peak near e^{2n}
    let extra = (2.0 * n as f64 * std::f64::consts::LOG10_E).ceil() as u32;
    let wp = prec.extended(extra + 8);

    let nn = Real::from_i64(n * n, wp);
    let mut a = -Real::from_i64(n, wp).ln().expect("ln n");
    let mut b = Real::one(wp);
    let mut u = a.clone();
    let mut v = b.clone();
    let tol = Real::pow10(-(wp.digits() as i32), wp);
    let mut k: i64 = 1;
    loop {
        b = &b * &nn / (k * k);
        a = (&a * &nn / k + &b) / k;
        u = &u + &a;
        v = &v + &b;
        if k > n && a.abs() < &tol * &u.abs() && &b < &(&tol * &v) {
            break;
        }
        k += 1;
    }
    (u / v).with_precision(prec)
}

pub fn euler_gamma(digits: u32, prec: Precision) -> Result<ConstantResult> {
    check_digits(digits, MAX_GAMMA_DIGITS, prec)?;
    Ok(ConstantResult {
        value: gamma(prec),
        digits_requested: digits,
        method: ConstantMethod::BrentMcMillan,
    })
}

/// `H_N − ln N`, the partial expression whose limit defines `γ`.
pub fn harmonic_gamma_limit(n: u64, prec: Precision) -> Result<Real> {
    if n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let one = Real::one(prec);
    // summing smallest terms first
    let mut h = Real::zero(prec);
    for k in (1..=n).rev() {
        h = h + &one / &Real::from_u64(k, prec);
    }
    Ok(h - Real::from_u64(n, prec).ln()?)
}

/// Unique positive root of `li`.
///
/// Bisection on `[1.1, 1.9]` down to width `1e-3`, then Newton steps using
/// `li'(x) = 1/ln x`.
pub fn soldner_mu(digits: u32, prec: Precision) -> Result<ConstantResult> {
    check_digits(digits, MAX_MU_DIGITS, prec)?;
    let li_pv = |x: &Real| li(x, LiConvention::PvFromZero);

    let mut lo = Real::parse("1.1", prec)?;
    let mut hi = Real::parse("1.9", prec)?;
    if !(li_pv(&lo)?.is_negative() && li_pv(&hi)?.is_positive()) {
        return Err(Error::Convergence("li does not change sign on [1.1, 1.9]".into()));
    }
    let width = Real::parse("1e-3", prec)?;
    while &hi - &lo > width {
        let mid = (&lo + &hi) / 2i64;
        if li_pv(&mid)?.is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut x = (&lo + &hi) / 2i64;
    let step_tol = Real::pow10(-(prec.digits() as i32) + 6, prec);
    let residual_tol = Real::pow10(-(digits as i32) - 2, prec);
    for _ in 0..60 {
        let fx = li_pv(&x)?;
        let step = &fx * &x.ln()?;
        x = &x - &step;
        if step.abs() < step_tol {
            let r = li_pv(&x)?.abs();
            if r < residual_tol {
                return Ok(ConstantResult {
                    value: x,
                    digits_requested: digits,
                    method: ConstantMethod::BisectionNewton,
                });
            }
        }
        if x <= lo || x >= hi {
            return Err(Error::Convergence("Newton step left the bracket".into()));
        }
    }
    Err(Error::Convergence("Newton iteration for the root of li did not settle".into()))
}
