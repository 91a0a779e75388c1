//! Soldner's additive recursion and Bessel's multiplicative recursion for `li`.
//!
//! Soldner (1809) steps from `li(a)` to `li(a + x)`:
//!
//! ```text
//! li(a+x) = li(a) + x/L − 1·a·A''/(1·2·L²)·y² + 2·a·A'''/(1·2·3·L³)·y³ − …
//! ```
//!
//! with `L = ln a`, `y = ln(1 + x/a)` and `A'' = 1`,
//! `A^(k+1) = (k−1)·A^(k) + (−1)^(k+1)·L^(k−1)`.
//! The term in `y^k` is `(−1)^(k+1)·(k−1)·a·A^(k)·y^k / (k!·L^k)`.
//!
//! Bessel (1810) relates `li(x/a)` to `li(x)`:
//!
//! ```text
//! li(x/a) = li(x) + x·(A'/ln x + A''/(ln x)² + A'''/(ln x)³ + …)
//! ```
//!
//! with `A' = 1/a − 1` and `A^(m+1) = m·A^(m) + (ln a)^m / a`. The series
//! converges whenever `ln a < ln x`, with ratio close to `ln a / ln x`.

use crate::error::{Error, Result};
use crate::lifn::{li, LiConvention};
use crate::realnum::{Precision, Real};

/// Largest admissible Soldner step relative to the base point.
pub const MAX_STEP_RATIO: f64 = 0.5;
pub const SOLDNER_TABLE_LIMIT: i64 = 10_000;

/// Bessel's 1810 table: `(x, printed li, printed prime count, printed excess)`.
///
/// The prime counts include 1 and inherit errors of Vega's tables; they are
/// stored verbatim and never recomputed.
pub const BESSEL_1810: [(u64, &str, Option<u64>, Option<&str>); 7] = [
    (1_000, "177.609655", Some(169), Some("8.61")),
    (10_000, "1246.137247", Some(1230), Some("16.14")),
    (100_000, "9629.809041", Some(9593), Some("36.81")),
    (200_000, "18036.052159", Some(17983), Some("53.05")),
    (300_000, "26080.215589", Some(25997), Some("83.21")),
    (400_000, "33922.621995", Some(33859), Some("63.62")),
    (1_000_000, "78627.549277", None, None),
];

#[derive(Debug, Clone)]
pub struct SoldnerCoeffs {
    pub a: Real,
    pub log_a: Real,
    /// `A'', A''', A'''', …`
    pub coeffs: Vec<Real>,
}

impl SoldnerCoeffs {
    pub fn new(a: &Real, count: usize) -> Result<Self> {
        if *a <= 1 {
            return Err(Error::Domain("Soldner base point must exceed 1".into()));
        }
        let log_a = a.ln()?;
        let mut coeffs = Vec::with_capacity(count);
        if count > 0 {
            coeffs.push(Real::one(a.precision()));
        }
        let mut power = Real::one(a.precision()); // L^(k−1)
        for k in 2..count + 1 {
            power = &power * &log_a;
            let prev = &coeffs[k - 2];
            let next = if k % 2 == 1 {
                prev * (k as i64 - 1) + &power
            } else {
                prev * (k as i64 - 1) - &power
            };
            coeffs.push(next);
        }
        coeffs.truncate(count);
        Ok(SoldnerCoeffs { a: a.clone(), log_a, coeffs })
    }
}

#[derive(Debug, Clone)]
pub struct BesselCoeffs {
    pub a: Real,
    pub log_a: Real,
    /// `A', A'', A''', …`
    pub coeffs: Vec<Real>,
}

/// First `count` Bessel coefficients for the ratio `a`.
pub fn bessel_coeffs(a: &Real, count: usize) -> Result<BesselCoeffs> {
    if *a <= 1 {
        return Err(Error::Domain("Bessel ratio must exceed 1".into()));
    }
    if count == 0 {
        return Err(Error::Domain("at least one Bessel coefficient is required".into()));
    }
    let prec = a.precision();
    let log_a = a.ln()?;
    let inv_a = Real::one(prec) / a;
    let mut coeffs = Vec::with_capacity(count);
    coeffs.push(&inv_a - 1i64);
    let mut power = Real::one(prec); // (ln a)^m
    for m in 1..count {
        power = &power * &log_a;
        let next = &coeffs[m - 1] * m as i64 + &power * &inv_a;
        coeffs.push(next);
    }
    Ok(BesselCoeffs { a: a.clone(), log_a, coeffs })
}

/// Outcome of one recursive step.
#[derive(Debug, Clone)]
pub struct Step {
    pub value: Real,
    /// Bound on the truncation tail plus the working-precision rounding.
    pub error_estimate: Real,
    pub terms_used: usize,
    /// Terms started growing before the truncation point was reached.
    pub diverging: bool,
}

// |next| / (1 − q) with q = |next/last| once the terms decrease, else |next|.
fn tail_bound(last: &Real, next: &Real) -> Real {
    let next = next.abs();
    let last = last.abs();
    if last.is_zero() || next >= last {
        return next;
    }
    let q = &next / &last;
    &next / (Real::one(q.precision()) - q)
}

fn rounding_allowance(value: &Real, terms: usize) -> Real {
    let prec = value.precision();
    value.abs() * Real::pow10(-(prec.digits() as i32) + 2, prec) * (terms as i64 + 1)
}

struct Summation {
    sum: Real,
    terms: usize,
    truncation_error: Real,
    diverging: bool,
}

/// Sums `term(0), term(1), …` with optimal truncation.
///
/// Stops after `max_terms`, once a term falls below `negligible`, or when the
/// terms grow three times in a row; in the last case the sum is rolled back to
/// just before the smallest term seen.
fn sum_series(
    mut term: impl FnMut(usize) -> Real,
    max_terms: usize,
    negligible: Option<&Real>,
    prec: Precision,
) -> Summation {
    struct Best {
        sum: Real,
        terms: usize,
        term: Real,
    }
    let mut sum = Real::zero(prec);
    let mut prev: Option<Real> = None;
    let mut best: Option<Best> = None;
    let mut growth_run = 0;
    let mut settled = false;
    let mut i = 0;
    loop {
        let t = term(i);
        if settled || i >= max_terms {
            let truncation_error = match &prev {
                Some(p) => tail_bound(p, &t),
                None => t.abs(),
            };
            return Summation { sum, terms: i, truncation_error, diverging: false };
        }
        if let Some(p) = &prev {
            if t.abs() > p.abs() {
                growth_run += 1;
            } else {
                growth_run = 0;
            }
        }
        if growth_run >= 3 {
            let b = best.expect("a smallest term exists once terms have grown");
            return Summation {
                sum: b.sum,
                terms: b.terms,
                truncation_error: b.term.abs(),
                diverging: true,
            };
        }
        if best.as_ref().map_or(true, |b| t.abs() < b.term.abs()) {
            best = Some(Best { sum: sum.clone(), terms: i, term: t.clone() });
        }
        sum = &sum + &t;
        if let Some(eps) = negligible {
            settled = t.abs() < *eps;
        }
        prev = Some(t);
        i += 1;
    }
}

/// One Soldner step `li(a) → li(a + x)`.
///
/// Uses at most `max_terms` terms (the leading `x / ln a` counts as the first)
/// and stops early at the smallest-magnitude term.
pub fn soldner_step(li_a: &Real, a: &Real, x: &Real, max_terms: usize) -> Result<Step> {
    if *a <= 1 {
        return Err(Error::Domain("Soldner base point must exceed 1".into()));
    }
    if x.is_negative() {
        return Err(Error::Domain("Soldner step must be non-negative".into()));
    }
    if max_terms < 2 {
        return Err(Error::Domain("Soldner step needs at least two terms".into()));
    }
    let ratio = (x / a).to_f64();
    if ratio > MAX_STEP_RATIO {
        return Err(Error::StepTooLarge { ratio });
    }
    let prec = li_a.precision().max(a.precision());
    if x.is_zero() {
        return Ok(Step {
            value: li_a.clone(),
            error_estimate: Real::zero(prec),
            terms_used: 0,
            diverging: false,
        });
    }

    let coeffs = SoldnerCoeffs::new(a, max_terms + 1)?;
    let log_a = &coeffs.log_a;
    let y = (Real::one(prec) + x / a).ln()?;
    let negligible = li_a.abs().max(&(x / log_a)) * Real::pow10(-(prec.digits() as i32) - 2, prec);

    let mut scaled = &y / log_a; // y^k / (k! L^k)
    let summed = sum_series(
        |i| {
            if i == 0 {
                return x / log_a;
            }
            let k = i + 1;
            scaled = &scaled * &y / &(log_a * k as i64);
            let term = a * &coeffs.coeffs[k - 2] * &scaled * (k as i64 - 1);
            if k % 2 == 0 {
                -term
            } else {
                term
            }
        },
        max_terms,
        Some(&negligible),
        prec,
    );
    let value = li_a + &summed.sum;
    let error_estimate = summed.truncation_error + rounding_allowance(&value, summed.terms);
    Ok(Step { value, error_estimate, terms_used: summed.terms, diverging: summed.diverging })
}

/// How a Soldner table advances from one row to the next.
#[derive(Debug, Clone)]
pub enum StepSchedule {
    /// Fixed increment (Soldner's unit steps for `step = 1`).
    Uniform(Real),
    /// Increment proportional to the current point, `x = ratio · a`.
    Proportional(f64),
}

impl StepSchedule {
    pub fn unit(prec: Precision) -> Self {
        StepSchedule::Uniform(Real::one(prec))
    }
}

#[derive(Debug, Clone)]
pub struct LiTableRow {
    pub x: Real,
    pub li_value: Real,
    pub error_estimate: Option<Real>,
    pub historical_li: Option<Real>,
    pub historical_pi: Option<u64>,
    pub excess: Option<Real>,
}

impl LiTableRow {
    fn computed(x: Real, li_value: Real, error_estimate: Option<Real>) -> Self {
        LiTableRow {
            x,
            li_value,
            error_estimate,
            historical_li: None,
            historical_pi: None,
            excess: None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct LiTable {
    pub rows: Vec<LiTableRow>,
}

impl LiTable {
    pub fn last(&self) -> Option<&LiTableRow> {
        self.rows.last()
    }

    pub fn find(&self, x: i64) -> Option<&LiTableRow> {
        self.rows.iter().find(|r| r.x == x)
    }
}

pub const SOLDNER_TABLE_TERMS: usize = 60;

/// Chains Soldner steps from the anchor `li(2)` up to `x_max`.
///
/// Each row carries the accumulated error estimate of the chain so far.
pub fn soldner_table(x_max: &Real, schedule: &StepSchedule) -> Result<LiTable> {
    let prec = x_max.precision();
    if *x_max < 2 {
        return Err(Error::Domain("Soldner table starts at 2".into()));
    }
    if *x_max > SOLDNER_TABLE_LIMIT {
        return Err(Error::LimitExceeded {
            value: x_max.to_f64() as u64,
            limit: SOLDNER_TABLE_LIMIT as u64,
        });
    }
    let mut a = Real::from_i64(2, prec);
    let mut value = li(&a, LiConvention::PvFromZero)?;
    let mut accumulated = Real::zero(prec);
    let mut table = LiTable::default();
    table
        .rows
        .push(LiTableRow::computed(a.clone(), value.clone(), Some(accumulated.clone())));
    while a < *x_max {
        let mut step = match schedule {
            StepSchedule::Uniform(h) => h.clone(),
            StepSchedule::Proportional(r) => &a * &Real::from_f64(*r, prec),
        };
        if !step.is_positive() {
            return Err(Error::Domain("schedule step must be positive".into()));
        }
        let remaining = x_max - &a;
        if step > remaining {
            step = remaining;
        }
        let s = soldner_step(&value, &a, &step, SOLDNER_TABLE_TERMS)?;
        a = &a + &step;
        value = s.value;
        accumulated = accumulated + s.error_estimate;
        table
            .rows
            .push(LiTableRow::computed(a.clone(), value.clone(), Some(accumulated.clone())));
    }
    Ok(table)
}

/// How many Bessel terms to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Stop at the smallest-magnitude term or once terms are negligible.
    Optimal,
    /// Exactly this many terms.
    Terms(usize),
}

pub const BESSEL_MAX_TERMS: usize = 400;

/// `li(x)` from `li(x/a)` by Bessel's expansion in powers of `1/ln x`.
pub fn bessel_step(li_low: &Real, x: &Real, coeffs: &BesselCoeffs, truncation: Truncation) -> Result<Step> {
    let prec = li_low.precision().max(x.precision());
    if *x <= coeffs.a {
        return Err(Error::Domain("Bessel step requires x > a".into()));
    }
    let log_x = x.ln()?;
    let limit = match truncation {
        Truncation::Optimal => coeffs.coeffs.len(),
        Truncation::Terms(n) => {
            if n + 1 > coeffs.coeffs.len() {
                return Err(Error::Domain(format!(
                    "{n} terms requested but only {} coefficients available",
                    coeffs.coeffs.len()
                )));
            }
            n
        }
    };
    let inv_log = Real::one(prec) / &log_x;
    let mut scale = x.clone(); // x / (ln x)^m
    let terms = |m: usize| {
        scale = &scale * &inv_log;
        &coeffs.coeffs[m] * &scale
    };
    let summed = match truncation {
        Truncation::Optimal => {
            let negligible = li_low.abs().max(x) * Real::pow10(-(prec.digits() as i32) - 2, prec);
            sum_series(terms, limit - 1, Some(&negligible), prec)
        }
        Truncation::Terms(n) => sum_series(terms, n, None, prec),
    };
    let value = li_low - &summed.sum;
    let error_estimate = summed.truncation_error + rounding_allowance(&value, summed.terms);
    Ok(Step { value, error_estimate, terms_used: summed.terms, diverging: summed.diverging })
}

/// `li(10^n)` from `li(10^(n−1))`, Bessel's power-of-ten stepping.
pub fn bessel_pow10_step(li_prev: &Real, n: u32, coeffs: &BesselCoeffs, truncation: Truncation) -> Result<Step> {
    if n < 2 {
        return Err(Error::Domain("power-of-ten stepping starts at n = 2".into()));
    }
    if coeffs.a != 10 {
        return Err(Error::Domain("power-of-ten stepping needs coefficients built with a = 10".into()));
    }
    let x = Real::pow10(n as i32, li_prev.precision());
    bessel_step(li_prev, &x, coeffs, truncation)
}

/// Chains power-of-ten steps from `li(10^start)` to `li(10^end)`.
pub fn bessel_pow10_chain(li_start: &Real, start: u32, end: u32) -> Result<Vec<(u32, Step)>> {
    let prec = li_start.precision();
    let coeffs = bessel_coeffs(&Real::from_i64(10, prec), BESSEL_MAX_TERMS)?;
    let mut out = Vec::new();
    let mut value = li_start.clone();
    let mut accumulated = Real::zero(prec);
    for n in start + 1..=end {
        let mut step = bessel_pow10_step(&value, n, &coeffs, Truncation::Optimal)?;
        accumulated = accumulated + &step.error_estimate;
        step.error_estimate = accumulated.clone();
        value = step.value.clone();
        out.push((n, step));
    }
    Ok(out)
}

/// Bessel's 1810 table recomputed with his recursions.
///
/// `li(1000)` comes from a chained Soldner table (as Bessel extended
/// Soldner's), powers of ten from power-of-ten stepping, and the
/// intermediate rows from ratio steps `a = 2, 3` off earlier rows.
pub fn bessel_table_1810(prec: Precision) -> Result<LiTable> {
    let thousand = Real::from_i64(1000, prec);
    let soldner = soldner_table(&thousand, &StepSchedule::unit(prec))?;
    let anchor = soldner.last().expect("non-empty table").clone();
    let li_1e3 = anchor.li_value.clone();
    let err_1e3 = anchor.error_estimate.clone().unwrap_or_else(|| Real::zero(prec));

    let chain = bessel_pow10_chain(&li_1e3, 3, 6)?;
    let pow = |n: u32| -> &Step { &chain.iter().find(|(k, _)| *k == n).expect("chain").1 };

    let ratio_step = |li_low: &Step, a: i64, x: i64| -> Result<Step> {
        let coeffs = bessel_coeffs(&Real::from_i64(a, prec), BESSEL_MAX_TERMS)?;
        let mut s = bessel_step(&li_low.value, &Real::from_i64(x, prec), &coeffs, Truncation::Optimal)?;
        s.error_estimate = s.error_estimate + &li_low.error_estimate;
        Ok(s)
    };

    let s2e5 = ratio_step(pow(5), 2, 200_000)?;
    let s3e5 = ratio_step(pow(5), 3, 300_000)?;
    let s4e5 = ratio_step(&s2e5, 2, 400_000)?;

    let computed: Vec<(Real, Real)> = vec![
        (li_1e3.clone(), err_1e3.clone()),
        (pow(4).value.clone(), &pow(4).error_estimate + &err_1e3),
        (pow(5).value.clone(), &pow(5).error_estimate + &err_1e3),
        (s2e5.value.clone(), &s2e5.error_estimate + &err_1e3),
        (s3e5.value.clone(), &s3e5.error_estimate + &err_1e3),
        (s4e5.value.clone(), &s4e5.error_estimate + &err_1e3),
        (pow(6).value.clone(), &pow(6).error_estimate + &err_1e3),
    ];

    let mut table = LiTable::default();
    for ((x, printed, pi, excess), (value, err)) in BESSEL_1810.iter().zip(computed) {
        table.rows.push(LiTableRow {
            x: Real::from_u64(*x, prec),
            li_value: value,
            error_estimate: Some(err),
            historical_li: Some(Real::parse(printed, prec)?),
            historical_pi: *pi,
            excess: excess.map(|e| Real::parse(e, prec)).transpose()?,
        });
    }
    Ok(table)
}
