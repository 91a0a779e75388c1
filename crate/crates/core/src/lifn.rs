//! Reference evaluator for `li(x)` and `Ei(y)`.
//!
//! `Ei(y) = γ + ln|y| + Σ_{k≥1} y^k / (k·k!)` converges for every real `y`
//! and yields the principal value across the singularity at `0`, so
//! `li(x) = Ei(ln x)` is the principal value across `t = 1` as well.

use crate::constants::gamma;
use crate::error::{Error, Result};
use crate::realnum::{Precision, Real};

/// Which lower limit `li` is measured from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiConvention {
    /// Principal value of `∫_0^x dt/ln t`.
    PvFromZero,
    /// `∫_2^x dt/ln t = li(x) − li(2)`.
    FromTwo,
}

impl LiConvention {
    pub fn tag(self) -> &'static str {
        match self {
            LiConvention::PvFromZero => "pv",
            LiConvention::FromTwo => "from2",
        }
    }
}

const SERIES_GUARD: u32 = 8;

/// Extra digits needed to keep `Ei(y)` accurate relative to its value.
///
/// For `y < 0` the series alternates with terms of order `e^{|y|}` while the
/// result is of order `e^{−|y|}`.
fn escalation(y: f64) -> u32 {
    if y < -1.0 {
        (2.0 * -y * std::f64::consts::LOG10_E).ceil() as u32
    } else {
        0
    }
}

/// Exponential integral `Ei(y)`, principal value at the pole.
pub fn ei(y: &Real) -> Result<Real> {
    if y.is_zero() {
        return Err(Error::Domain("Ei has a logarithmic singularity at 0".into()));
    }
    let prec = y.precision();
    let wp = prec.extended(SERIES_GUARD + escalation(y.to_f64()));
    let y = y.with_precision(wp);

    let tol = Real::pow10(-(wp.digits() as i32) - 4, wp);
    let mut power = Real::one(wp); // y^k / k!
    let mut sum = Real::zero(wp);
    let mut abs_sum = Real::zero(wp);
    let mut small_run = 0;
    let mut k: i64 = 1;
    while small_run < 3 {
        power = &power * &y / k;
        let term = &power / k;
        sum = &sum + &term;
        abs_sum = &abs_sum + &term.abs();
        if term.abs() < &tol * &abs_sum {
            small_run += 1;
        } else {
            small_run = 0;
        }
        k += 1;
    }
    let value = gamma(wp) + y.abs().ln()? + sum;
    Ok(value.with_precision(prec))
}

/// Logarithmic integral under the chosen convention.
pub fn li(x: &Real, conv: LiConvention) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::Domain("li requires x > 0".into()));
    }
    match conv {
        LiConvention::PvFromZero => {
            if *x == 1 {
                return Err(Error::Domain("li has a non-integrable singularity at x = 1".into()));
            }
            ei(&x.ln()?)
        }
        LiConvention::FromTwo => {
            if *x < 2 {
                return Err(Error::Domain("li measured from 2 requires x >= 2".into()));
            }
            Ok(ei(&x.ln()?)? - li_two(x.precision())?)
        }
    }
}

/// `li(2)` in the principal-value convention.
pub fn li_two(prec: Precision) -> Result<Real> {
    li(&Real::from_i64(2, prec), LiConvention::PvFromZero)
}

/// `li(b) − li(a)` for `1 < a <= b`.
pub fn li_delta(a: &Real, b: &Real) -> Result<Real> {
    if *a <= 1 {
        return Err(Error::Domain("li_delta requires a > 1".into()));
    }
    if a > b {
        return Err(Error::Domain("li_delta requires a <= b".into()));
    }
    if a == b {
        return Ok(Real::zero(a.precision().max(b.precision())));
    }
    Ok(li(b, LiConvention::PvFromZero)? - li(a, LiConvention::PvFromZero)?)
}
