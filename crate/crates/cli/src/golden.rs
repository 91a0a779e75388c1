//! Cell-by-cell comparison of golden CSV files.
//!
//! Tolerances: Bessel 1810 transcription 5e-4 on li, exact prime counts and
//! 0.01 on the excess; comparative table ±2 on rounded cells and exact π;
//! constants an exact count of correct leading decimals.

use std::path::Path;

use clap::ValueEnum;

use logint::approx;
use logint::constants::{self, matching_decimals};
use logint::historical::{self, BESSEL_1810};
use logint::primes;
use logint::{Precision, Real};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GoldenTable {
    #[value(alias = "bessel_1810")]
    Bessel1810,
    Comparativa,
    Constants,
}

pub const BESSEL_LI_TOLERANCE: f64 = 5e-4;
pub const BESSEL_EXCESS_TOLERANCE: f64 = 0.01;
pub const COMPARATIVA_TOLERANCE: i64 = 2;

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub failures: usize,
    pub cells: usize,
}

impl Report {
    fn fail(&mut self, line: String) {
        self.failures += 1;
        self.lines.push(format!("FAIL {line}"));
    }

    fn info(&mut self, line: String) {
        self.lines.push(format!("INFO {line}"));
    }

    pub fn render(&self) -> String {
        let mut s: String = self.lines.iter().map(|l| format!("{l}\n")).collect();
        s += &format!("checked {} cells, {} mismatches\n", self.cells, self.failures);
        s
    }

    pub fn into_result(self) -> CliResult<()> {
        if self.failures == 0 {
            Ok(())
        } else {
            Err(CliError::Verify(self.failures))
        }
    }
}

type Records = Vec<csv::StringRecord>;

fn read_golden(path: &Path, expected: &[&str]) -> CliResult<Records> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let headers = reader.headers().map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let found: Vec<&str> = headers.iter().map(str::trim).collect();
    if found != expected {
        return Err(CliError::Usage(format!(
            "{}: expected columns {}, found {}",
            path.display(),
            expected.join(","),
            found.join(",")
        )));
    }
    reader
        .records()
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn cell<'a>(rec: &'a csv::StringRecord, i: usize) -> &'a str {
    rec.get(i).map(str::trim).unwrap_or("")
}

fn parse_int(s: &str, what: &str) -> CliResult<i64> {
    s.parse().map_err(|_| CliError::Usage(format!("{what}: not an integer: '{s}'")))
}

pub fn verify(table: GoldenTable, path: &Path, prec: Precision, cache: Option<&Path>) -> CliResult<Report> {
    match table {
        GoldenTable::Bessel1810 => verify_bessel(path, prec),
        GoldenTable::Comparativa => verify_comparativa(path, prec, cache),
        GoldenTable::Constants => verify_constants(path, prec),
    }
}

fn verify_bessel(path: &Path, prec: Precision) -> CliResult<Report> {
    let records = read_golden(path, &["x", "li", "pi", "excess"])?;
    let mut report = Report::default();
    if records.len() != BESSEL_1810.len() {
        report.fail(format!("expected {} rows, found {}", BESSEL_1810.len(), records.len()));
    }
    let computed = historical::bessel_table_1810(prec)?;
    let points: Vec<u64> = BESSEL_1810.iter().map(|r| r.0).collect();
    let modern = primes::prime_pi_many(&points)?;
    let real = |s: &str| Real::parse(s, prec).map_err(|_| CliError::Usage(format!("not a number: '{s}'")));

    for (i, rec) in records.iter().enumerate() {
        let Some(&(x, li_s, pi, excess)) = BESSEL_1810.get(i) else { break };
        let gx = parse_int(cell(rec, 0), "x")?;
        report.cells += 1;
        if gx != x as i64 {
            report.fail(format!("row {} x: golden {gx}, expected {x}", i + 1));
            continue;
        }
        let golden_li = real(cell(rec, 1))?;
        let printed = real(li_s)?;
        report.cells += 1;
        let diff = (&golden_li - &printed).abs().to_f64();
        if diff > BESSEL_LI_TOLERANCE {
            report.fail(format!("x={x} li: golden {}, printed {li_s} (|diff| {diff:.3e} > {BESSEL_LI_TOLERANCE:e})", cell(rec, 1)));
        }
        match (cell(rec, 2), pi) {
            ("", None) => {}
            (g, Some(p)) if !g.is_empty() => {
                report.cells += 1;
                if parse_int(g, "pi")? != p as i64 {
                    report.fail(format!("x={x} pi: golden {g}, printed {p}"));
                }
            }
            (g, p) => report.fail(format!("x={x} pi: golden '{g}', printed {p:?}")),
        }
        match (cell(rec, 3), excess) {
            ("", None) => {}
            (g, Some(e)) if !g.is_empty() => {
                report.cells += 1;
                let d = (real(g)? - real(e)?).abs().to_f64();
                if d > BESSEL_EXCESS_TOLERANCE + 1e-12 {
                    report.fail(format!("x={x} excess: golden {g}, printed {e}"));
                }
            }
            (g, e) => report.fail(format!("x={x} excess: golden '{g}', printed {e:?}")),
        }

        let row = &computed.rows[i];
        let gap = (&row.li_value - &golden_li).to_f64();
        report.info(format!(
            "x={x} li computed {} minus golden {} = {gap:+.6e}{}",
            row.li_value.to_fixed(6),
            cell(rec, 1),
            if gap.abs() > BESSEL_LI_TOLERANCE { " (historical error)" } else { "" }
        ));
        if let Some(p) = pi {
            let m = modern[i] + 1;
            if p != m {
                report.info(format!("x={x} printed prime count {p} differs from modern count plus one {m}"));
            }
        }
    }
    Ok(report)
}

fn verify_comparativa(path: &Path, prec: Precision, cache: Option<&Path>) -> CliResult<Report> {
    let records = read_golden(path, &["n", "pi", "x_over_lnx", "legendre", "li"])?;
    let mut report = Report::default();
    let mut ns = Vec::with_capacity(records.len());
    for rec in &records {
        let n = parse_int(cell(rec, 0), "n")?;
        if n < 2 || n as u64 > primes::PI_LIMIT {
            return Err(CliError::Usage(format!("n out of range: {n}")));
        }
        ns.push(n as u64);
    }
    let top = ns.iter().copied().max().unwrap_or(0);
    let counts = if top >= primes::CHILIAD && top % primes::CHILIAD == 0 {
        Some(primes::block_counts_cached(top, primes::CHILIAD, cache)?)
    } else {
        None
    };
    let rows = approx::comparison_table_with_counts(&ns, counts.as_ref(), prec)?;
    for (rec, row) in records.iter().zip(&rows) {
        let (pi, xl, leg, pv, _) = row.rounded();
        let n = row.n;
        report.cells += 1;
        let g = parse_int(cell(rec, 1), "pi")?;
        if g != pi as i64 {
            report.fail(format!("n={n} pi: golden {g}, computed {pi}"));
        }
        for (col, i, value) in [("x_over_lnx", 2, xl), ("legendre", 3, leg), ("li", 4, pv)] {
            report.cells += 1;
            let g = parse_int(cell(rec, i), col)?;
            if (g - value).abs() > COMPARATIVA_TOLERANCE {
                report.fail(format!("n={n} {col}: golden {g}, computed {value} (tolerance ±{COMPARATIVA_TOLERANCE})"));
            }
        }
    }
    Ok(report)
}

fn verify_constants(path: &Path, prec: Precision) -> CliResult<Report> {
    let records = read_golden(path, &["name", "printed", "correct_decimals"])?;
    let mut report = Report::default();
    let decimals = prec.output_cap();
    let gamma = constants::gamma(prec).to_fixed_truncated(decimals);
    let mut mu = None;
    for rec in &records {
        let name = cell(rec, 0);
        let printed = cell(rec, 1);
        let expected = parse_int(cell(rec, 2), "correct_decimals")?;
        let reference = match name {
            "gamma_soldner_1809" | "gamma_mascheroni_1790" => gamma.clone(),
            "mu_soldner_1809" => mu
                .get_or_insert_with(|| {
                    constants::soldner_mu(decimals.min(constants::MAX_MU_DIGITS), prec).map(|r| r.digits_string())
                })
                .clone()?,
            _ => return Err(CliError::Usage(format!("unknown constant '{name}'"))),
        };
        report.cells += 1;
        let found = matching_decimals(&reference, printed) as i64;
        if found != expected {
            report.fail(format!("{name}: printed {printed} has {found} correct decimals, golden says {expected}"));
        }
    }
    Ok(report)
}
