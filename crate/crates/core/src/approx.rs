//! Approximations to `π(x)` and the tables that compare them.

use std::fmt;

use crate::error::{Error, Result};
use crate::lifn::{li, LiConvention};
use crate::primes::{block_counts, mobius_upto, prime_pi, prime_pi_many, CountingConvention, PrimeCounts, PI_LIMIT};
use crate::realnum::{Precision, Real};

/// Legendre's constant as printed in 1808.
pub const LEGENDRE_A: &str = "1.08366";
pub const DEFAULT_RIEMANN_TERMS: usize = 100;
pub const DEFAULT_FIT_SAMPLES: usize = 64;

/// Lower and upper Chebyshev bounds on `π(x)/(x/ln x)`.
pub const CHEBYSHEV_BOUNDS: (f64, f64) = (0.92129, 1.10555);

/// The rows of the comparative table.
pub const COMPARISON_NS: [u64; 7] = [1_000, 10_000, 50_000, 100_000, 500_000, 1_000_000, 10_000_000];

#[derive(Debug, Clone, PartialEq)]
pub enum ApproxMethod {
    XOverLnX,
    Legendre(Real),
    DiscreteSum,
    Encke,
    LiPv,
    LiFrom2,
    RiemannR(usize),
}

impl ApproxMethod {
    pub fn legendre(prec: Precision) -> Self {
        ApproxMethod::Legendre(Real::parse(LEGENDRE_A, prec).expect("valid literal"))
    }

    /// Parses `x-over-lnx`, `legendre[:A]`, `discrete-sum`, `encke`, `li-pv`,
    /// `li-from2` and `riemann-r[:nmax]`.
    pub fn parse(name: &str, prec: Precision) -> Result<Self> {
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (name, None),
        };
        let bad = || Error::Domain(format!("unknown approximation method '{name}'"));
        let method = match (head.to_ascii_lowercase().replace('_', "-").as_str(), arg) {
            ("x-over-lnx", None) => ApproxMethod::XOverLnX,
            ("legendre", None) => ApproxMethod::legendre(prec),
            ("legendre", Some(a)) => ApproxMethod::Legendre(Real::parse(a, prec)?),
            ("discrete-sum", None) => ApproxMethod::DiscreteSum,
            ("encke", None) => ApproxMethod::Encke,
            ("li-pv", None) => ApproxMethod::LiPv,
            ("li-from2", None) => ApproxMethod::LiFrom2,
            ("riemann-r", None) => ApproxMethod::RiemannR(DEFAULT_RIEMANN_TERMS),
            ("riemann-r", Some(n)) => ApproxMethod::RiemannR(n.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        Ok(method)
    }
}

impl fmt::Display for ApproxMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApproxMethod::XOverLnX => write!(f, "x-over-lnx"),
            ApproxMethod::Legendre(a) => {
                let digits = a.to_fixed(a.precision().output_cap().min(20));
                let trimmed = digits.trim_end_matches('0').trim_end_matches('.');
                write!(f, "legendre:{trimmed}")
            }
            ApproxMethod::DiscreteSum => write!(f, "discrete-sum"),
            ApproxMethod::Encke => write!(f, "encke"),
            ApproxMethod::LiPv => write!(f, "li-pv"),
            ApproxMethod::LiFrom2 => write!(f, "li-from2"),
            ApproxMethod::RiemannR(n) => write!(f, "riemann-r:{n}"),
        }
    }
}

pub fn approx_value(method: &ApproxMethod, x: &Real) -> Result<Real> {
    if *x < 2 {
        return Err(Error::Domain("approximations are defined for x >= 2".into()));
    }
    let prec = x.precision();
    let log_x = x.ln()?;
    match method {
        ApproxMethod::XOverLnX => Ok(x / &log_x),
        ApproxMethod::Legendre(a) => {
            if log_x <= *a {
                return Err(Error::Domain(format!("Legendre's formula needs ln x > {a}")));
            }
            Ok(x / &(&log_x - a))
        }
        ApproxMethod::DiscreteSum => discrete_sum(x),
        ApproxMethod::Encke => {
            // 10^{1/(2 ln x)} with the natural logarithm
            let exponent = Real::one(prec) / (&log_x * 2i64);
            let factor = Real::from_i64(10, prec).pow(&exponent)?;
            Ok(x / &log_x * factor)
        }
        ApproxMethod::LiPv => li(x, LiConvention::PvFromZero),
        ApproxMethod::LiFrom2 => li(x, LiConvention::FromTwo),
        ApproxMethod::RiemannR(n) => riemann_r(x, *n),
    }
}

/// `Σ_{2≤n≤x} 1/ln n` in compensated double precision.
fn discrete_sum(x: &Real) -> Result<Real> {
    if *x > PI_LIMIT as i64 {
        return Err(Error::LimitExceeded { value: x.to_f64() as u64, limit: PI_LIMIT });
    }
    let top = x.to_f64().floor() as u64;
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for n in 2..=top {
        let t = 1.0 / (n as f64).ln();
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    Ok(Real::from_f64(sum + comp, x.precision()))
}

/// `Σ_{n≤nmax} μ(n)/n · li(x^{1/n})`, stopping once `x^{1/n} < 2`.
pub fn riemann_r(x: &Real, nmax: usize) -> Result<Real> {
    if *x < 2 {
        return Err(Error::Domain("riemann_r requires x >= 2".into()));
    }
    if nmax == 0 {
        return Err(Error::Domain("riemann_r needs at least one term".into()));
    }
    let prec = x.precision();
    let log_x = x.ln()?;
    let natural_end = (log_x.to_f64() / std::f64::consts::LN_2).floor() as usize + 1;
    let mu = mobius_upto(nmax.min(natural_end))?;
    let mut sum = Real::zero(prec);
    for (n, &m) in mu.iter().enumerate().skip(1) {
        let root = (&log_x / n as i64).exp()?;
        if root < 2 {
            break;
        }
        if m == 0 {
            continue;
        }
        let term = li(&root, LiConvention::PvFromZero)? / n as i64;
        sum = if m > 0 { sum + term } else { sum - term };
    }
    Ok(sum)
}

/// `π(x) / (x / ln x)`.
pub fn chebyshev_ratio(x: u64, prec: Precision) -> Result<Real> {
    let pi = prime_pi(x, CountingConvention::Modern)?;
    let xr = Real::from_u64(x, prec);
    Ok(Real::from_u64(pi, prec) * xr.ln()? / xr)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LegendreRatioRow {
    pub k: u32,
    pub a: u64,
    pub pi_a: u64,
    pub ratio: f64,
    /// `1/(2·log10 a) = 1/(2k)`.
    pub predicted: f64,
}

/// `π(a)/a` beside `1/(2k)` for `a = 10^k`, `k = 1..=5`.
///
/// Legendre wrote `b = a/(2 la)` with a common logarithm; only base 10
/// reproduces his 1/2, 1/4, … pattern.
pub fn legendre_ratio_table() -> Result<Vec<LegendreRatioRow>> {
    let points: Vec<u64> = (1..=5).map(|k| 10u64.pow(k)).collect();
    let pis = prime_pi_many(&points)?;
    Ok((1..=5u32)
        .zip(points.iter().zip(pis))
        .map(|(k, (&a, pi_a))| LegendreRatioRow {
            k,
            a,
            pi_a,
            ratio: pi_a as f64 / a as f64,
            predicted: 1.0 / (2.0 * k as f64),
        })
        .collect())
}

const FIT_SCAN: (f64, f64, f64) = (0.0, 2.0, 1e-3);

/// Least-squares `A` in `π(x) ≈ x/(ln x − A)` over log-spaced samples.
///
/// A coarse scan over `[0, 2]` brackets the minimum, which is then refined by
/// golden-section search. With one sample the equation is solved exactly at
/// `x_lo`.
pub fn fit_legendre_constant(x_lo: u64, x_hi: u64, samples: usize) -> Result<f64> {
    if x_lo < 1_000 || x_hi > PI_LIMIT || x_lo >= x_hi {
        return Err(Error::Domain(format!(
            "fit requires 1000 <= x_lo < x_hi <= {PI_LIMIT}, got [{x_lo}, {x_hi}]"
        )));
    }
    if samples == 0 {
        return Err(Error::Domain("fit needs at least one sample".into()));
    }
    let points = log_spaced(x_lo, x_hi, samples);
    let pis = prime_pi_many(&points)?;
    let data: Vec<(f64, f64, f64)> = points
        .iter()
        .zip(&pis)
        .map(|(&x, &p)| (x as f64, (x as f64).ln(), p as f64))
        .collect();
    if samples == 1 {
        let (x, lx, p) = data[0];
        return Ok(lx - x / p);
    }
    let objective = |a: f64| -> f64 {
        data.iter()
            .map(|&(x, lx, p)| {
                let r = p - x / (lx - a);
                r * r
            })
            .sum()
    };

    let (lo, hi, step) = FIT_SCAN;
    let steps = ((hi - lo) / step).round() as usize;
    let (best, _) = (0..=steps)
        .map(|i| lo + i as f64 * step)
        .map(|a| (a, objective(a)))
        .fold((lo, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });

    let (mut a, mut b) = (best - step, best + step);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    while b - a > 1e-12 {
        if objective(c) < objective(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    Ok((a + b) / 2.0)
}

fn log_spaced(lo: u64, hi: u64, samples: usize) -> Vec<u64> {
    if samples == 1 {
        return vec![lo];
    }
    let (l, h) = ((lo as f64).ln(), (hi as f64).ln());
    let mut out: Vec<u64> = (0..samples)
        .map(|i| (l + (h - l) * i as f64 / (samples - 1) as f64).exp().round() as u64)
        .map(|x| x.clamp(lo, hi))
        .collect();
    out.dedup();
    out
}

/// One row of the comparative table.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub n: u64,
    pub pi_n: u64,
    pub x_over_lnx: Real,
    pub legendre: Real,
    pub li_pv: Real,
    pub li_from2: Real,
}

impl ComparisonRow {
    /// Display cells rounded half-up: `(π, x/ln x, Legendre, li_pv, li_from2)`.
    pub fn rounded(&self) -> (u64, i64, i64, i64, i64) {
        (
            self.pi_n,
            self.x_over_lnx.round_to_i64(),
            self.legendre.round_to_i64(),
            self.li_pv.round_to_i64(),
            self.li_from2.round_to_i64(),
        )
    }
}

pub fn comparison_table(ns: &[u64], prec: Precision) -> Result<Vec<ComparisonRow>> {
    comparison_table_with_counts(ns, None, prec)
}

/// As [`comparison_table`], reading `π` from precomputed block counts where aligned.
pub fn comparison_table_with_counts(
    ns: &[u64],
    counts: Option<&PrimeCounts>,
    prec: Precision,
) -> Result<Vec<ComparisonRow>> {
    let legendre = ApproxMethod::legendre(prec);
    let owned;
    let counts = match counts {
        Some(c) => Some(c),
        None => {
            let top = ns.iter().copied().max().unwrap_or(0);
            if top >= 1_000 && top % 1_000 == 0 {
                owned = block_counts(top, 1_000)?;
                Some(&owned)
            } else {
                None
            }
        }
    };
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let pi_n = match counts.and_then(|c| c.pi_at(n, CountingConvention::Modern)) {
            Some(p) => p,
            None => prime_pi(n, CountingConvention::Modern)?,
        };
        let x = Real::from_u64(n, prec);
        rows.push(ComparisonRow {
            n,
            pi_n,
            x_over_lnx: approx_value(&ApproxMethod::XOverLnX, &x)?,
            legendre: approx_value(&legendre, &x)?,
            li_pv: approx_value(&ApproxMethod::LiPv, &x)?,
            li_from2: approx_value(&ApproxMethod::LiFrom2, &x)?,
        });
    }
    Ok(rows)
}
