//! The `logint` command line.
//!
//! [`run`] parses arguments, dispatches to the library and returns the exit
//! code: 0 on success, 1 on a domain or computation error, 2 on a golden-file
//! mismatch and 3 on a usage error. Errors are written to stderr as one line
//! prefixed `ERROR:<code>:`.

mod golden;
mod output;

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use logint::approx::{self, ApproxMethod};
use logint::complexpath;
use logint::constants::{self, matching_decimals};
use logint::historical::{self, StepSchedule};
use logint::lifn::{self, LiConvention};
use logint::primes::{self, CountingConvention};
use logint::quadrature;
use logint::{Precision, Real};

pub use golden::{verify, GoldenTable, Report};
pub use output::{Format, Table};

pub const PRECISION_ENV: &str = "LOGINT_PRECISION";
pub const DEFAULT_DIGITS: u32 = 30;
/// Decimals shown for table cells unless `--digits` says otherwise.
pub const DEFAULT_TABLE_DIGITS: u32 = 6;
const MAX_PRECISION: u32 = 10_000;

#[derive(Debug, Parser)]
#[command(name = "logint", version, about = "Logarithmic integral, prime counts and their historical tables")]
pub struct Cli {
    /// Decimal digits to print (at most precision − 8).
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    /// Working precision in decimal digits (default 64, or $LOGINT_PRECISION).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// `pv` or `from2` for li; `modern` or `bessel1810` for pi.
    #[arg(long, global = true)]
    pub convention: Option<String>,
    /// Soldner schedule for `table soldner`: `unit`, `step:<h>` or `ratio:<r>`.
    #[arg(long, global = true)]
    pub method: Option<String>,
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Persisted block counts reused across runs.
    #[arg(long, global = true)]
    pub sieve_cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Bessel1810,
    Soldner,
    Comparativa,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Logarithmic integral li(x).
    Li { x: String },
    /// Exponential integral Ei(y).
    Ei { y: String },
    /// γ and μ beside their historical digit strings.
    Constants,
    /// Prime counting function π(x).
    Pi {
        #[arg(value_parser = parse_count)]
        x: u64,
    },
    /// Primes per chiliad (1000) or myriad (10000).
    Blocks {
        #[arg(value_parser = parse_count)]
        limit: u64,
        #[arg(value_parser = parse_count)]
        size: u64,
    },
    /// Gauss–Legendre integration of 1/ln t; without bounds runs the 1815 demonstration.
    Quad {
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value_t = 10)]
        nodes: usize,
        #[arg(long, default_value_t = 1)]
        panels: usize,
        #[arg(long)]
        demo: bool,
    },
    /// Emit one of the reproduced tables.
    Table {
        #[arg(value_enum)]
        which: TableKind,
        /// Compare against a golden file; the report goes to stderr.
        #[arg(long)]
        verify: Option<PathBuf>,
        /// Last point of the Soldner table.
        #[arg(long, default_value = "1280")]
        x_max: String,
    },
    /// Evaluate an approximation to π(x).
    Approx { method: String, x: String },
    /// Least-squares fit of Legendre's constant.
    FitLegendre {
        #[arg(long, default_value_t = 10_000, value_parser = parse_count)]
        from: u64,
        #[arg(long, default_value_t = 1_000_000, value_parser = parse_count)]
        to: u64,
        #[arg(long, default_value_t = approx::DEFAULT_FIT_SAMPLES)]
        samples: usize,
    },
    /// Contour integral and identity checks in the complex plane.
    ComplexDemo,
    /// Check a golden file cell by cell.
    Verify {
        #[arg(value_enum)]
        table: GoldenTable,
        golden: PathBuf,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(logint::Error),
    Verify(usize),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Compute(_) | CliError::Io(_) => 1,
            CliError::Verify(_) => 2,
            CliError::Usage(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Verify(n) => write!(f, "verification failed: {n} mismatched cell(s)"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<logint::Error> for CliError {
    fn from(e: logint::Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs the command line with `$LOGINT_PRECISION` taken from the process environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(PRECISION_ENV).ok();
    run_with_env(args, env.as_deref(), out, err)
}

pub fn run_with_env<I, T>(args: I, env_precision: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("invalid arguments");
            let first = first.trim_start_matches("error: ");
            let _ = writeln!(err, "ERROR:3: {first}");
            return 3;
        }
    };
    match execute(&cli, env_precision, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "ERROR:{}: {e}", e.code());
            e.code()
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    prec: Precision,
}

impl Ctx<'_> {
    /// Requested digits, clamped to the output cap with a warning.
    fn digits(&self, default: u32, err: &mut dyn Write) -> u32 {
        let cap = self.prec.output_cap();
        let d = self.cli.digits.unwrap_or(default.min(cap));
        if d > cap {
            let _ = writeln!(
                err,
                "WARNING: --digits {d} exceeds precision {} minus 8 guard digits; using {cap}",
                self.prec.digits()
            );
            cap
        } else {
            d
        }
    }

    fn real(&self, s: &str) -> CliResult<Real> {
        Real::parse(s, self.prec).map_err(|_| CliError::Usage(format!("not a number: '{s}'")))
    }

    fn emit(&self, text: &str, out: &mut dyn Write) -> CliResult<()> {
        match &self.cli.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => Ok(out.write_all(text.as_bytes())?),
        }
    }

    fn li_convention(&self) -> CliResult<LiConvention> {
        match self.cli.convention.as_deref() {
            None | Some("pv") => Ok(LiConvention::PvFromZero),
            Some("from2") => Ok(LiConvention::FromTwo),
            Some(c) => Err(CliError::Usage(format!("li convention must be pv or from2, got '{c}'"))),
        }
    }

    fn counting_convention(&self) -> CliResult<CountingConvention> {
        match self.cli.convention.as_deref() {
            None | Some("modern") => Ok(CountingConvention::Modern),
            Some("bessel1810") => Ok(CountingConvention::Bessel1810),
            Some(c) => Err(CliError::Usage(format!("counting convention must be modern or bessel1810, got '{c}'"))),
        }
    }
}

/// Parses a non-negative integer, also written as `1e6` or `2.5e5` when exact.
fn parse_count(s: &str) -> Result<u64, String> {
    let bad = || format!("'{s}' is not a non-negative integer");
    let s = s.trim().replace('_', "");
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m.to_string(), e.parse::<u32>().map_err(|_| bad())?),
        None => (s.clone(), 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((&mant, ""));
    let frac = frac.trim_end_matches('0');
    if int.is_empty() && frac.is_empty() || frac.len() as u32 > exp {
        return Err(bad());
    }
    let digits = format!("{int}{frac}{}", "0".repeat((exp - frac.len() as u32) as usize));
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    digits.parse().map_err(|_| bad())
}

fn resolve_precision(flag: Option<u32>, env: Option<&str>) -> CliResult<Precision> {
    let digits = match (flag, env) {
        (Some(d), _) => d,
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{PRECISION_ENV} must be an integer, got '{s}'")))?,
        (None, None) => Precision::DEFAULT.digits(),
    };
    if !(Precision::MIN..=MAX_PRECISION).contains(&digits) {
        return Err(CliError::Usage(format!(
            "precision must be in {}..={MAX_PRECISION}, got {digits}",
            Precision::MIN
        )));
    }
    Ok(Precision::new(digits))
}

fn execute(cli: &Cli, env_precision: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let ctx = Ctx { cli, prec: resolve_precision(cli.precision, env_precision)? };
    match &cli.command {
        Command::Li { x } => {
            let d = ctx.digits(DEFAULT_DIGITS, err);
            let v = lifn::li(&ctx.real(x)?, ctx.li_convention()?)?;
            ctx.emit(&format!("{}\n", v.to_fixed(d)), out)
        }
        Command::Ei { y } => {
            let d = ctx.digits(DEFAULT_DIGITS, err);
            let v = lifn::ei(&ctx.real(y)?)?;
            ctx.emit(&format!("{}\n", v.to_fixed(d)), out)
        }
        Command::Constants => cmd_constants(&ctx, out, err),
        Command::Pi { x } => {
            let conv = ctx.counting_convention()?;
            let n = match (&cli.sieve_cache, *x % primes::CHILIAD == 0 && *x >= 2) {
                (Some(path), true) => {
                    let counts = primes::block_counts_cached(*x, primes::CHILIAD, Some(path))?;
                    counts.pi_at(*x, conv).expect("aligned checkpoint")
                }
                _ => primes::prime_pi(*x, conv)?,
            };
            ctx.emit(&format!("{n}\n"), out)
        }
        Command::Blocks { limit, size } => {
            let counts = primes::block_counts_cached(*limit, *size, cli.sieve_cache.as_deref())?;
            let mut t = Table::new(["start", "end", "count", "cumulative"]);
            let mut total = 0;
            for (k, c) in counts.block_counts.iter().enumerate() {
                total += c;
                let start = k as u64 * size;
                t.push(vec![start.to_string(), (start + size).to_string(), c.to_string(), total.to_string()]);
            }
            ctx.emit(&t.render(cli.format), out)
        }
        Command::Quad { from, to, nodes, panels, demo } => cmd_quad(&ctx, from, to, *nodes, *panels, *demo, out, err),
        Command::Table { which, verify, x_max } => cmd_table(&ctx, *which, verify.as_deref(), x_max, out, err),
        Command::Approx { method, x } => {
            let m = ApproxMethod::parse(method, ctx.prec).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut d = ctx.digits(DEFAULT_DIGITS, err);
            if m == ApproxMethod::DiscreteSum {
                // summed in double precision
                d = d.min(6);
            }
            let v = approx::approx_value(&m, &ctx.real(x)?)?;
            ctx.emit(&format!("{}\n", v.to_fixed(d)), out)
        }
        Command::FitLegendre { from, to, samples } => {
            let a = approx::fit_legendre_constant(*from, *to, *samples)?;
            let d = ctx.digits(6, err).min(12);
            ctx.emit(&format!("{a:.*}\n", d as usize), out)
        }
        Command::ComplexDemo => cmd_complex(&ctx, out, err),
        Command::Verify { table, golden } => {
            let report = golden::verify(*table, golden, ctx.prec, cli.sieve_cache.as_deref())?;
            ctx.emit(&report.render(), out)?;
            report.into_result()
        }
    }
}

fn cmd_constants(ctx: &Ctx, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let d = ctx.digits(DEFAULT_DIGITS, err);
    let g = constants::euler_gamma(d.min(constants::MAX_GAMMA_DIGITS), ctx.prec)?;
    let mu = constants::soldner_mu(d.min(constants::MAX_MU_DIGITS), ctx.prec)?;
    let g_full = g.value.to_fixed_truncated(ctx.prec.output_cap());
    let mu_full = mu.value.to_fixed_truncated(ctx.prec.output_cap());

    let mut t = Table::new(["name", "value", "source", "matching_decimals"]);
    t.push(vec!["gamma".into(), g.digits_string(), g.method.tag().into(), String::new()]);
    for (name, printed) in [
        ("gamma_soldner_1809", constants::SOLDNER_GAMMA),
        ("gamma_mascheroni_1790", constants::MASCHERONI_GAMMA),
    ] {
        let n = matching_decimals(&g_full, printed);
        t.push(vec![name.into(), printed.into(), "printed".into(), n.to_string()]);
    }
    t.push(vec!["mu".into(), mu.digits_string(), mu.method.tag().into(), String::new()]);
    let n = matching_decimals(&mu_full, constants::SOLDNER_MU);
    t.push(vec!["mu_soldner_1809".into(), constants::SOLDNER_MU.into(), "printed".into(), n.to_string()]);
    ctx.emit(&t.render(ctx.cli.format), out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_quad(
    ctx: &Ctx,
    from: &Option<String>,
    to: &Option<String>,
    nodes: usize,
    panels: usize,
    demo: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    let d = ctx.digits(DEFAULT_TABLE_DIGITS + 4, err);
    let mut t = Table::new(["from", "to", "nodes", "panels", "value", "reference", "abs_error", "rel_error"]);
    match (from, to) {
        (Some(a), Some(b)) if !demo => {
            let (a, b) = (ctx.real(a)?, ctx.real(b)?);
            let rule = quadrature::legendre_rule(nodes, ctx.prec)?;
            let value = quadrature::integrate_recip_log(&a, &b, &rule, panels)?;
            let reference = lifn::li_delta(&a, &b)?;
            let abs = (&value - &reference).abs();
            let rel = if reference.is_zero() { 0.0 } else { (&abs / &reference).to_f64() };
            t.push(vec![
                point(&a, d),
                point(&b, d),
                nodes.to_string(),
                panels.to_string(),
                value.to_fixed(d),
                reference.to_fixed(d),
                format!("{:.3e}", abs.to_f64()),
                format!("{rel:.3e}"),
            ]);
        }
        (None, None) => {
            let report = quadrature::gauss_demo_with_orders(&quadrature::DEMO_ORDERS, panels, ctx.prec)?;
            for row in &report.rows {
                t.push(vec![
                    report.from.to_fixed(0),
                    report.to.to_fixed(0),
                    row.nodes.to_string(),
                    panels.to_string(),
                    row.value.to_fixed(d),
                    report.reference.to_fixed(d),
                    format!("{:.3e}", row.abs_error.to_f64()),
                    format!("{:.3e}", row.rel_error),
                ]);
            }
        }
        (Some(_), Some(_)) => return Err(CliError::Usage("--demo cannot be combined with --from/--to".into())),
        _ => return Err(CliError::Usage("--from and --to must be given together".into())),
    }
    ctx.emit(&t.render(ctx.cli.format), out)
}

fn soldner_schedule(ctx: &Ctx) -> CliResult<StepSchedule> {
    let spec = ctx.cli.method.as_deref().unwrap_or("unit");
    let bad = || CliError::Usage(format!("schedule must be unit, step:<h> or ratio:<r>, got '{spec}'"));
    match spec.split_once(':') {
        None if spec == "unit" => Ok(StepSchedule::unit(ctx.prec)),
        Some(("step", h)) => Ok(StepSchedule::Uniform(ctx.real(h)?)),
        Some(("ratio", r)) => Ok(StepSchedule::Proportional(r.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

fn point(x: &Real, digits: u32) -> String {
    let n = x.round_to_i64();
    if *x == n {
        n.to_string()
    } else {
        x.to_fixed(digits)
    }
}

/// The table as written by `table <which>`.
pub(crate) fn build_table(
    which: TableKind,
    prec: Precision,
    digits: u32,
    x_max: &Real,
    schedule: &StepSchedule,
    cache: Option<&Path>,
) -> CliResult<Table> {
    let sci = |r: &Option<Real>| r.as_ref().map(|e| format!("{:.3e}", e.to_f64())).unwrap_or_default();
    match which {
        TableKind::Bessel1810 => {
            let table = historical::bessel_table_1810(prec)?;
            let points: Vec<u64> = historical::BESSEL_1810.iter().map(|r| r.0).collect();
            let modern = primes::prime_pi_many(&points)?;
            let mut t = Table::new([
                "x",
                "li_computed",
                "error_estimate",
                "li_printed",
                "computed_minus_printed",
                "pi_printed",
                "pi_modern_plus_one",
                "excess_printed",
            ]);
            for (row, pi) in table.rows.iter().zip(modern) {
                let printed = row.historical_li.as_ref().expect("historical column");
                t.push(vec![
                    row.x.to_fixed(0),
                    row.li_value.to_fixed(digits),
                    sci(&row.error_estimate),
                    printed.to_fixed(6),
                    (&row.li_value - printed).to_fixed(digits),
                    row.historical_pi.map(|p| p.to_string()).unwrap_or_default(),
                    (pi + 1).to_string(),
                    row.excess.as_ref().map(|e| e.to_fixed(2)).unwrap_or_default(),
                ]);
            }
            Ok(t)
        }
        TableKind::Soldner => {
            let table = historical::soldner_table(x_max, schedule)?;
            let mut t = Table::new(["x", "li", "error_estimate"]);
            for row in &table.rows {
                t.push(vec![point(&row.x, digits), row.li_value.to_fixed(digits), sci(&row.error_estimate)]);
            }
            Ok(t)
        }
        TableKind::Comparativa => {
            let top = *approx::COMPARISON_NS.iter().max().expect("rows");
            let counts = primes::block_counts_cached(top, primes::CHILIAD, cache)?;
            let rows = approx::comparison_table_with_counts(&approx::COMPARISON_NS, Some(&counts), prec)?;
            let mut t = Table::new(["n", "pi", "x_over_lnx", "legendre", "li_pv", "li_from2"]);
            for row in &rows {
                let (pi, xl, leg, pv, f2) = row.rounded();
                t.push(vec![
                    row.n.to_string(),
                    pi.to_string(),
                    xl.to_string(),
                    leg.to_string(),
                    pv.to_string(),
                    f2.to_string(),
                ]);
            }
            Ok(t)
        }
    }
}

fn cmd_table(
    ctx: &Ctx,
    which: TableKind,
    verify: Option<&Path>,
    x_max: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    let d = ctx.digits(DEFAULT_TABLE_DIGITS, err);
    let table = build_table(which, ctx.prec, d, &ctx.real(x_max)?, &soldner_schedule(ctx)?, ctx.cli.sieve_cache.as_deref())?;
    ctx.emit(&table.render(ctx.cli.format), out)?;
    if let Some(path) = verify {
        let kind = match which {
            TableKind::Bessel1810 => GoldenTable::Bessel1810,
            TableKind::Comparativa => GoldenTable::Comparativa,
            TableKind::Soldner => return Err(CliError::Usage("the Soldner table has no golden file".into())),
        };
        let report = golden::verify(kind, path, ctx.prec, ctx.cli.sieve_cache.as_deref())?;
        err.write_all(report.render().as_bytes())?;
        report.into_result()?;
    }
    Ok(())
}

fn cmd_complex(ctx: &Ctx, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let prec = ctx.prec;
    let d = ctx.digits(20, err);
    let report = complexpath::contour_report(prec)?;
    let mut s = String::new();
    let max = report.path_independence.iter().copied().fold(0.0, f64::max);
    s += &format!(
        "path_independence pairs={} seed={} max_difference={max:.3e}\n",
        report.path_independence.len(),
        complexpath::DEFAULT_SEED
    );
    for (k, r) in &report.winding {
        s += &format!("winding loops={k} residual={r:.3e}\n");
    }
    s += &format!("upper_minus_lower {:.*}\n", d as usize, report.upper_minus_lower);
    for ((x, y), w, r) in &report.fundamental {
        s += &format!("fundamental end={x}{y:+}i winding={w} residual={r:.3e}\n");
    }
    let pi = Real::pi(prec);
    for x in [Real::parse("0.1", prec)?, Real::one(prec), pi] {
        let c = complexpath::bessel_art18_check(&x)?;
        s += &format!(
            "art18 x={} ci_residual={:.3e} si_residual={:.3e} printed_ci_residual={:.3e} printed_si_residual={:.3e}\n",
            x.to_fixed(6),
            c.ci_residual.to_f64(),
            c.si_residual.to_f64(),
            c.printed_ci_residual.to_f64(),
            c.printed_si_residual.to_f64()
        );
    }
    ctx.emit(&s, out)
}

#[cfg(test)]
mod tests {
    use super::parse_count;

    #[test]
    fn counts_accept_exact_scientific_notation() {
        assert_eq!(parse_count("1000000"), Ok(1_000_000));
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("2.5E5"), Ok(250_000));
        assert_eq!(parse_count("1_000"), Ok(1000));
        for bad in ["", "1.5", "2.55e1", "-3", "1e-2", "1e30", "e5", "x"] {
            assert!(parse_count(bad).is_err(), "{bad}");
        }
    }
}
