//! Command-line front end for `mfhh`.
//!
//! ```text
//! mfhh <group|milnor|hh|verify|oracle> --exponents k1,k2,... [--stabilize]
//!      [--k-min I --k-max I] [--format table|json|csv] [--witnesses]
//!      [--parallel N] [--a0-bound B --u-bound U]
//! ```
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 mismatch (`verify`,
//! `oracle`), 3 hypotheses not met (`verify`), 4 arithmetic failure
//! (`Overflow`, `AmbiguousGrading`, ...).

use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, ValueEnum};
use mfhh_core::{
    hh_bruteforce, DiagonalPolynomial, EngineKind, Error, HHEngine, HHReport, PropositionStatus, Summand,
};
pub mod report;

pub use report::{JsonDegree, JsonReport, JsonWitness};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_HYPOTHESES: i32 = 3;
pub const EXIT_ARITHMETIC: i32 = 4;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Character group, |ker chi| and the elements of ker chi.
    Group,
    /// Milnor number.
    Milnor,
    /// Hochschild cohomology dimensions per degree.
    Hh,
    /// Check dim HH^0 = k_3 - 1 and dim HH^n = mu.
    Verify,
    /// Compare the closed-form engine with the exhaustive scan.
    Oracle,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Parser, Debug, Clone)]
#[command(name = "mfhh", version, about = "Hochschild cohomology of equivariant matrix factorizations of diagonal polynomials")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Exponents k_1,...,k_N of w = z_1^k_1 + ... + z_N^k_N, each at least 2.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub exponents: Vec<u32>,
    /// Add the stabilizing variable z0.
    #[arg(long)]
    pub stabilize: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub k_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k_max: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// List the contributing basis elements of each degree.
    #[arg(long)]
    pub witnesses: bool,
    /// Worker threads for the per-sector fan-out.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub parallel: u16,
    /// Largest z0 exponent scanned by `oracle` (default: engine maximum + 10).
    #[arg(long)]
    pub a0_bound: Option<u32>,
    /// Largest |u| scanned by `oracle` (default: 20, raised to cover the range).
    #[arg(long)]
    pub u_bound: Option<u32>,
}

impl RunConfig {
    fn polynomial(&self) -> Result<DiagonalPolynomial, Error> {
        DiagonalPolynomial::new(self.exponents.clone(), self.stabilize)
    }

    /// Requested degree range; `[-2n, 2n]` when unspecified.
    pub fn k_range(&self) -> Result<(i64, i64), String> {
        let n = self.exponents.len() as i64 - 1;
        let lo = self.k_min.unwrap_or(-2 * n);
        let hi = self.k_max.unwrap_or(2 * n);
        if lo > hi {
            return Err(format!("--k-min {lo} exceeds --k-max {hi}"));
        }
        Ok((lo, hi))
    }
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(msg) => Failure::Usage(msg),
            e => Failure::Engine(e),
        }
    }
}

/// Parses `argv` (including the program name), runs the command, writes the
/// report to `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut buf = String::new();
    let code = match dispatch(&cfg, &mut buf) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Engine(e)) => {
            let _ = writeln!(err, "error: {}: {}", e.name(), e);
            return EXIT_ARITHMETIC;
        }
    };
    let _ = out.write_all(buf.as_bytes());
    code
}

fn dispatch(cfg: &RunConfig, out: &mut String) -> Result<i32, Failure> {
    let p = cfg.polynomial()?;
    match cfg.command {
        Command::Milnor => {
            let mu = p.milnor_number()?;
            match cfg.format {
                Format::Table => writeln!(out, "{mu}").unwrap(),
                Format::Csv => writeln!(out, "milnor\n{mu}").unwrap(),
                Format::Json => {
                    let v = report::MilnorJson {
                        exponents: p.exponents().to_vec(),
                        stabilized: p.is_stabilized(),
                        milnor: mu,
                    };
                    out.push_str(&report::to_json(&v));
                }
            }
            Ok(EXIT_OK)
        }
        Command::Group => {
            let engine = HHEngine::new(&p)?;
            report::write_group(&engine, cfg.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Hh => {
            let (lo, hi) = cfg.k_range().map_err(Failure::Usage)?;
            let engine = HHEngine::with_threads(&p, cfg.parallel.into())?;
            let rep = engine.range(lo, hi, cfg.witnesses)?;
            report::write_hh(&engine, &rep, cfg.format, out);
            Ok(EXIT_OK)
        }
        Command::Verify => verify(&p, cfg.format, out),
        Command::Oracle => oracle(cfg, &p, out),
    }
}

fn verify(p: &DiagonalPolynomial, format: Format, out: &mut String) -> Result<i32, Failure> {
    let rep = mfhh_core::verify_proposition(p);
    let (status, code) = match &rep.status {
        PropositionStatus::Pass => ("pass".to_string(), EXIT_OK),
        PropositionStatus::Mismatch => ("mismatch".to_string(), EXIT_MISMATCH),
        PropositionStatus::HypothesesNotMet(why) => (format!("hypotheses not met: {why}"), EXIT_HYPOTHESES),
        PropositionStatus::EngineError(e) => return Err(Failure::Engine(e.clone())),
    };
    match format {
        Format::Table => {
            writeln!(out, "polynomial: {p}").unwrap();
            for c in &rep.checks {
                writeln!(
                    out,
                    "HH^{}: computed {}, expected {} [{}]",
                    c.k,
                    c.computed,
                    c.expected,
                    if c.holds() { "ok" } else { "MISMATCH" }
                )
                .unwrap();
            }
            writeln!(out, "status: {status}").unwrap();
        }
        Format::Csv => {
            writeln!(out, "k,computed,expected,ok").unwrap();
            for c in &rep.checks {
                writeln!(out, "{},{},{},{}", c.k, c.computed, c.expected, c.holds()).unwrap();
            }
        }
        Format::Json => {
            let v = report::VerifyJson {
                exponents: p.exponents().to_vec(),
                stabilized: p.is_stabilized(),
                status,
                checks: rep
                    .checks
                    .iter()
                    .map(|c| report::CheckJson {
                        k: c.k,
                        computed: c.computed,
                        expected: c.expected,
                    })
                    .collect(),
            };
            out.push_str(&report::to_json(&v));
        }
    }
    Ok(code)
}

fn oracle(cfg: &RunConfig, p: &DiagonalPolynomial, out: &mut String) -> Result<i32, Failure> {
    let (lo, hi) = cfg.k_range().map_err(Failure::Usage)?;
    let engine = HHEngine::with_threads(p, cfg.parallel.into())?;
    let closed = engine.range(lo, hi, false)?;
    let a0_bound = cfg.a0_bound.unwrap_or_else(|| closed.max_a0().unwrap_or(0) + 10);
    // |u| <= (|k| + N + 2) / 2 covers every admissible sector
    let needed = (lo.abs().max(hi.abs()) + p.num_vars() as i64 + 2) / 2;
    let u_bound = cfg.u_bound.unwrap_or_else(|| 20.max(needed as u32));

    let mut brute = closed.clone();
    brute.engine = EngineKind::Oracle;
    for d in &mut brute.degrees {
        d.dim = hh_bruteforce(p, d.k, a0_bound, u_bound)?;
        d.max_a0 = None;
    }
    let agree = closed.degrees.iter().zip(&brute.degrees).all(|(a, b)| a.dim == b.dim);

    match cfg.format {
        Format::Table => {
            writeln!(out, "polynomial: {p}").unwrap();
            writeln!(out, "bounds: a0 <= {a0_bound}, |u| <= {u_bound}").unwrap();
            writeln!(out, "{:>6} {:>12} {:>12}  status", "k", "closed-form", "oracle").unwrap();
            for (a, b) in closed.degrees.iter().zip(&brute.degrees) {
                let st = if a.dim == b.dim { "ok" } else { "MISMATCH" };
                writeln!(out, "{:>6} {:>12} {:>12}  {}", a.k, a.dim, b.dim, st).unwrap();
            }
            writeln!(out, "agreement: {}", if agree { "yes" } else { "no" }).unwrap();
        }
        Format::Csv => {
            writeln!(out, "k,closed_form,oracle").unwrap();
            for (a, b) in closed.degrees.iter().zip(&brute.degrees) {
                writeln!(out, "{},{},{}", a.k, a.dim, b.dim).unwrap();
            }
        }
        Format::Json => report::write_hh(&engine, &brute, Format::Json, out),
    }
    Ok(if agree { EXIT_OK } else { EXIT_MISMATCH })
}

/// Label of a summand as printed in tables.
pub(crate) fn summand_label(s: Summand) -> &'static str {
    match s {
        Summand::Even => "even",
        Summand::Odd => "odd",
    }
}

/// Convenience for callers holding an already computed report.
pub fn report_to_json(engine: &HHEngine, rep: &HHReport) -> String {
    let mut s = String::new();
    report::write_hh(engine, rep, Format::Json, &mut s);
    s
}
