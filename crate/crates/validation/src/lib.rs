//! Acceptance criteria, each checked against independent reference values.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use logint::approx::{self, ApproxMethod, CHEBYSHEV_BOUNDS, COMPARISON_NS, DEFAULT_RIEMANN_TERMS};
use logint::complexpath::{self, DEFAULT_PAIRS, DEFAULT_SEED};
use logint::constants::{self, matching_decimals, MASCHERONI_GAMMA, SOLDNER_GAMMA};
use logint::historical::{self, StepSchedule};
use logint::lifn::{li, li_delta, li_two, LiConvention};
use logint::primes::{self, CountingConvention};
use logint::quadrature::{self, BESSEL_1810_DIFFERENCE};
use logint::{Precision, Real, Result};

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {} ({}): {} [{:.2} s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Collects sub-checks; the criterion passes only if all of them do.
struct Checks {
    ok: bool,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { ok: true, notes: Vec::new() }
    }

    fn check(&mut self, cond: bool, note: String) {
        if cond {
            self.notes.push(note);
        } else {
            self.ok = false;
            self.notes.push(format!("NOT {note}"));
        }
    }
}

fn run(id: u32, name: &'static str, limit: Option<Duration>, body: impl FnOnce(&mut Checks) -> Result<()>) -> Outcome {
    let start = Instant::now();
    let mut checks = Checks::new();
    let result = body(&mut checks);
    let elapsed = start.elapsed();
    if let Err(e) = result {
        checks.check(false, format!("error: {e}"));
    }
    if let Some(limit) = limit {
        checks.check(elapsed < limit, format!("runtime {:.2} s < {} s", elapsed.as_secs_f64(), limit.as_secs()));
    }
    Outcome { id, name, passed: checks.ok, detail: checks.notes.join("; "), elapsed }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const PREC: Precision = Precision::DEFAULT;

pub fn constants_criterion() -> Outcome {
    run(1, "constants", secs(1), |c| {
        let g = constants::gamma(PREC).to_fixed_truncated(50);
        let soldner = matching_decimals(&g, SOLDNER_GAMMA);
        c.check(soldner == 22, format!("gamma matches {soldner} of Soldner's 22 decimals"));
        let masch = matching_decimals(&g, MASCHERONI_GAMMA);
        c.check(masch == 19, format!("Mascheroni first differs at decimal {}", masch + 1));
        let mu = constants::soldner_mu(30, PREC)?;
        let residual = li(&mu.value, LiConvention::PvFromZero)?.abs();
        c.check(residual < Real::pow10(-22, PREC), format!("|li(mu)| = {:.1e} < 1e-22", residual.to_f64()));
        let m9 = mu.value.to_fixed_truncated(9);
        c.check(m9 == "1.451369234", format!("mu to 9 decimals = {m9}"));
        Ok(())
    })
}

pub fn bessel_table_criterion() -> Outcome {
    run(2, "Bessel 1810 table", secs(5), |c| {
        let table = historical::bessel_table_1810(PREC)?;
        let mut worst_rel = 0f64;
        for row in &table.rows {
            let printed = row.historical_li.as_ref().expect("printed column");
            let gap = (&row.li_value - printed).abs().to_f64();
            c.check(gap <= 5e-4, format!("x={} |computed - printed| = {gap:.2e} <= 5e-4", row.x.to_fixed(0)));
            let truth = li(&row.x, LiConvention::PvFromZero)?;
            worst_rel = worst_rel.max(((&row.li_value - &truth) / &truth).abs().to_f64());
        }
        c.check(worst_rel <= 1e-9, format!("max relative error vs li = {worst_rel:.1e} <= 1e-9"));
        Ok(())
    })
}

pub fn gauss_criterion() -> Outcome {
    run(3, "Gauss 1815 quadrature", secs(1), |c| {
        let a = Real::from_i64(100_000, PREC);
        let b = Real::from_i64(200_000, PREC);
        let rule = quadrature::legendre_rule(10, PREC)?;
        let v = quadrature::integrate_recip_log(&a, &b, &rule, 1)?;
        let reference = li_delta(&a, &b)?;
        let rel = ((&v - &reference) / &reference).abs().to_f64();
        c.check(rel < 1e-6, format!("relative error vs li_delta = {rel:.1e} < 1e-6"));
        let bessel = Real::parse(BESSEL_1810_DIFFERENCE, PREC)?;
        let gap = (&v - &bessel).abs().to_f64();
        c.check(gap < 1e-3, format!("|value - {BESSEL_1810_DIFFERENCE}| = {gap:.1e} < 1e-3"));
        Ok(())
    })
}

/// `(n, π, n/ln n, Legendre, ∫_2^n)` as printed in the comparative table.
pub const PRINTED_COMPARISON: [(u64, u64, i64, i64, i64); 7] = [
    (1_000, 168, 145, 172, 177),
    (10_000, 1_229, 1_086, 1_230, 1_246),
    (50_000, 5_133, 4_621, 5_136, 5_166),
    (100_000, 9_592, 8_686, 9_588, 9_630),
    (500_000, 41_538, 38_103, 41_533, 41_607),
    (1_000_000, 78_498, 72_382, 78_543, 78_628),
    (10_000_000, 664_579, 620_421, 665_140, 664_918),
];

pub fn comparison_criterion() -> Outcome {
    run(4, "comparative table", secs(30), |c| {
        let rows = approx::comparison_table(&COMPARISON_NS, PREC)?;
        let mut worst = 0i64;
        let mut cells = 0;
        for (row, printed) in rows.iter().zip(PRINTED_COMPARISON) {
            let (pi, xl, leg, pv, _) = row.rounded();
            c.check(row.n == printed.0 && pi == printed.1, format!("pi({}) = {pi}", row.n));
            for (got, want) in [(xl, printed.2), (leg, printed.3), (pv, printed.4)] {
                cells += 1;
                worst = worst.max((got - want).abs());
                if (got - want).abs() > 2 {
                    c.check(false, format!("n={}: computed {got} vs printed {want}", row.n));
                }
            }
        }
        c.check(rows.len() == 7 && worst <= 2, format!("{cells} approximation cells, max |diff| = {worst} <= 2"));
        Ok(())
    })
}

pub fn chebyshev_criterion() -> Outcome {
    run(5, "Chebyshev ratios", None, |c| {
        let (lo, hi) = CHEBYSHEV_BOUNDS;
        for x in [1_000_000u64, 10_000_000] {
            let r = approx::chebyshev_ratio(x, PREC)?.to_f64();
            c.check((lo..=hi).contains(&r), format!("ratio at {x} = {r:.5} in [{lo}, {hi}]"));
        }
        Ok(())
    })
}

pub fn riemann_criterion() -> Outcome {
    run(6, "Riemann improvement", None, |c| {
        let x = Real::from_i64(1_000_000, PREC);
        let r = approx::approx_value(&ApproxMethod::RiemannR(DEFAULT_RIEMANN_TERMS), &x)?.to_f64();
        let l = li(&x, LiConvention::PvFromZero)?.to_f64();
        let pi = primes::prime_pi(1_000_000, CountingConvention::Modern)? as f64;
        c.check(
            (r - pi).abs() < (l - pi).abs(),
            format!("|R - pi| = {:.2} < |li - pi| = {:.2}", (r - pi).abs(), (l - pi).abs()),
        );
        let brute = oracle::riemann_r_f64(1e6);
        c.check((r - 78_527.4).abs() <= 0.2, format!("R(1e6) = {r:.4} = 78527.4 +- 0.2"));
        c.check((r - brute).abs() < 1e-6, format!("brute-force Mobius series = {brute:.4}"));
        Ok(())
    })
}

pub fn complex_criterion() -> Outcome {
    run(7, "complex contour properties", None, |c| {
        let diffs = complexpath::path_independence(DEFAULT_PAIRS, DEFAULT_SEED, PREC)?;
        let worst = diffs.iter().cloned().fold(0.0, f64::max);
        c.check(diffs.len() == 20 && worst < 1e-10, format!("{} homotopic pairs, max diff {worst:.1e} < 1e-10", diffs.len()));
        let winding = complexpath::winding_increments(&[1, 2, 3], PREC)?;
        let worst = winding.iter().map(|w| w.1).fold(0.0, f64::max);
        c.check(worst < 1e-9, format!("winding k=1..3 residual {worst:.1e} < 1e-9"));
        let pi = Real::pi(PREC);
        let mut worst = 0f64;
        for x in [Real::parse("0.1", PREC)?, Real::one(PREC), pi] {
            let check = complexpath::bessel_art18_check(&x)?;
            worst = worst.max(check.ci_residual.to_f64()).max(check.si_residual.to_f64());
        }
        c.check(worst < 1e-12, format!("Si/Ci identity residual at 0.1, 1, pi = {worst:.1e} < 1e-12"));
        Ok(())
    })
}

pub fn equivalence_criterion() -> Outcome {
    run(8, "oracle equivalences", secs(120), |c| {
        let p = Precision::new(40);
        let truth = |x: &Real| li(x, LiConvention::PvFromZero);

        let soldner = historical::soldner_table(&Real::from_i64(1280, p), &StepSchedule::unit(p))?;
        let mut worst = 0f64;
        let mut bounded = true;
        for row in &soldner.rows {
            let err = (&row.li_value - truth(&row.x)?).abs();
            worst = worst.max(err.to_f64());
            bounded &= row.error_estimate.as_ref().is_some_and(|e| *e >= err);
        }
        c.check(worst <= 1e-5, format!("Soldner chain to 1280 max error {worst:.1e} <= 1e-5"));
        c.check(bounded, "Soldner error estimates bound the true error".into());

        let thousand = Real::from_i64(1000, p);
        let s = soldner.find(1000).expect("row 1000").li_value.clone();
        let ten = truth(&Real::from_i64(10, p))?;
        let chain = historical::bessel_pow10_chain(&ten, 1, 3)?;
        let b = chain.last().expect("chain").1.value.clone();
        let t = truth(&thousand)?;
        let gap = (&s - &b).abs().max(&(&s - &t).abs()).max(&(&b - &t).abs()).to_f64();
        c.check(gap < 1e-5, format!("Soldner, Bessel and li agree at 1000 to {gap:.1e} < 1e-5"));

        let sieved = primes::primes_upto(100_000);
        let trial: Vec<u64> = (2..=100_000).filter(|&n| oracle::is_prime(n)).collect();
        c.check(sieved == trial, format!("sieve equals trial division to 1e5 ({} primes)", trial.len()));

        let one = Real::one(p);
        let mut worst = 0f64;
        for n in 1..=20usize {
            let rule = quadrature::legendre_rule(n, p)?;
            for k in 0..2 * n as i64 {
                let v = rule.integrate(|t| Ok(t.powi(k)), &-&one, &one, 1)?;
                let exact = if k % 2 == 1 { Real::zero(p) } else { Real::from_i64(2, p) / (k + 1) };
                worst = worst.max((v - exact).abs().to_f64());
            }
        }
        c.check(worst < 1e-28, format!("monomials to degree 2n-1, n <= 20, max error {worst:.1e} < 1e-28"));

        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        let l2 = li_two(p)?;
        let mut worst = 0f64;
        for _ in 0..100 {
            let x = Real::from_f64(rng.gen_range(2.0..1e7), p);
            let d = li(&x, LiConvention::PvFromZero)? - li(&x, LiConvention::FromTwo)? - &l2;
            worst = worst.max(d.abs().to_f64());
        }
        c.check(worst < 1e-30, format!("li_from2 = li_pv - li(2) over 100 points, max {worst:.1e} < 1e-30"));
        Ok(())
    })
}

pub fn all() -> Vec<Outcome> {
    vec![
        constants_criterion(),
        bessel_table_criterion(),
        gauss_criterion(),
        comparison_criterion(),
        chebyshev_criterion(),
        riemann_criterion(),
        complex_criterion(),
        equivalence_criterion(),
    ]
}

/// Reference computations that do not use the library.
pub mod oracle {
    pub fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    pub fn mobius(mut n: u64) -> i64 {
        let mut mu = 1;
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
            -mu
        } else {
            mu
        }
    }

    /// `li(x)` by Ramanujan's series in double precision.
    pub fn li_f64(x: f64) -> f64 {
        const GAMMA: f64 = 0.577_215_664_901_532_9;
        let l = x.ln();
        let (mut sum, mut fact, mut inner) = (0.0, 1.0, 0.0);
        for n in 1..200 {
            fact *= n as f64;
            if (n - 1) % 2 == 0 {
                inner += 1.0 / (n as f64);
            }
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let term = sign * l.powi(n) / (fact * 2f64.powi(n - 1)) * inner;
            sum += term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        GAMMA + l.ln() + x.sqrt() * sum
    }

    /// `Σ μ(n)/n · li(x^{1/n})` over `n` with `x^{1/n} ≥ 2`.
    pub fn riemann_r_f64(x: f64) -> f64 {
        (1..)
            .map(|n: u64| (n, x.powf(1.0 / n as f64)))
            .take_while(|&(_, root)| root >= 2.0)
            .map(|(n, root)| mobius(n) as f64 / n as f64 * li_f64(root))
            .sum()
    }
}
