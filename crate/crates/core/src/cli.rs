//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::genus::Genus;
use crate::polyring::{format_rational, FactoredRational};
use crate::strata::{self, StratumId, StratumReport};
use crate::stringy::{self, DivisorSubset, StringyReport};
use crate::verify::{self, Status, VerificationOutcome};

pub const DEFAULT_MAX_GENUS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    ChecksFailed = 1,
    ConfigError = 2,
    IoError = 3,
}

impl From<ExitStatus> for ExitCode {
    fn from(s: ExitStatus) -> Self {
        ExitCode::from(s as u8)
    }
}

/// Inclusive genus range written `A..B`, `A..=B` or `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusRange {
    pub min: u32,
    pub max: u32,
}

impl FromStr for GenusRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad genus `{t}`"));
        let (min, max) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let g = parse(s)?;
                (g, g)
            }
        };
        if min > max {
            return Err(format!("empty genus range {min}..{max}"));
        }
        Ok(Self { min, max })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StratumChoice {
    Stable,
    Type1,
    Type2,
    Type3,
    Type4,
    Unstable,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "hodge-stringy", version, about = "Exact E-polynomials of Higgs moduli strata and their stringy E-function")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Genus or inclusive range, e.g. `3` or `3..6`.
    #[arg(long, global = true, default_value = "3")]
    pub genus: GenusRange,
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Treat the known differences from the closed-form display as failures.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Largest genus accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_GENUS)]
    pub max_genus: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assemble the stringy E-function for each genus.
    Compute,
    /// E-polynomials of the strata of the stable locus.
    Stratum {
        #[arg(long, alias = "type", value_enum, default_value = "all")]
        stratum: StratumChoice,
    },
    /// Run every registered identity check.
    Verify,
    /// Stringy Euler numbers against the closed formula.
    EulerTable,
    /// Closed and open divisor E-polynomials.
    Divisors,
}

/// Rendered output and the status it implies.
#[derive(Debug)]
pub struct Rendered {
    pub body: String,
    pub status: ExitStatus,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Config(e.to_string())
    }
}

/// Parses `args` and runs; messages go to stderr.
pub fn main_with_args<I, T>(args: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::ConfigError
            } else {
                ExitStatus::Success
            };
        }
    };
    let mut warnings = Vec::new();
    let rendered = match execute(&cli, &mut warnings) {
        Ok(r) => r,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            return ExitStatus::ConfigError;
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            return ExitStatus::IoError;
        }
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    if let Err(e) = emit(&rendered.body, cli.common.out.as_ref()) {
        eprintln!("error: cannot write output: {e}");
        return ExitStatus::IoError;
    }
    rendered.status
}

/// Writes to `path`, or to stdout.
pub fn emit(body: &str, path: Option<&PathBuf>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, body),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()
        }
    }
}

/// Runs a parsed command without touching the filesystem.
pub fn execute(cli: &Cli, warnings: &mut Vec<String>) -> Result<Rendered, CliError> {
    let c = &cli.common;
    let range = c.genus;
    if range.min < Genus::MIN {
        return Err(CliError::Config(format!("genus must be at least {}", Genus::MIN)));
    }
    if range.max > c.max_genus {
        return Err(CliError::Config(format!(
            "genus {} exceeds the cap {} (raise it with --max-genus)",
            range.max, c.max_genus
        )));
    }
    match &cli.command {
        Command::Stratum { stratum } => stratum_command(range, *stratum, c.format),
        Command::Verify => verify_command(range, c.strict, c.format),
        Command::Compute => compute_command(stringy_range(range, warnings)?, c.format),
        Command::EulerTable => euler_table_command(stringy_range(range, warnings)?, c.format),
        Command::Divisors => divisors_command(stringy_range(range, warnings)?, c.format),
    }
}

fn stringy_range(range: GenusRange, warnings: &mut Vec<String>) -> Result<Vec<Genus>, CliError> {
    let min = range.min.max(stringy::MIN_GENUS);
    if min > range.min {
        warnings.push(format!(
            "divisor data needs genus >= {}; starting at {min}",
            stringy::MIN_GENUS
        ));
    }
    if min > range.max {
        return Err(CliError::Config(format!(
            "no genus in {}..{} has divisor data",
            range.min, range.max
        )));
    }
    genera(min, range.max)
}

fn genera(min: u32, max: u32) -> Result<Vec<Genus>, CliError> {
    (min..=max).map(|g| Genus::new(g).map_err(CliError::from)).collect()
}

fn ok(body: String) -> Result<Rendered, CliError> {
    Ok(Rendered {
        body,
        status: ExitStatus::Success,
    })
}

fn json_body(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn stratum_ids(g: Genus, choice: StratumChoice) -> Vec<StratumId> {
    match choice {
        StratumChoice::Stable => vec![StratumId::StableBundle],
        StratumChoice::Type1 => vec![StratumId::TypeI],
        StratumChoice::Type2 => vec![StratumId::TypeII],
        StratumChoice::Type3 => vec![StratumId::TypeIII],
        StratumChoice::Type4 => vec![StratumId::TypeIV],
        StratumChoice::Unstable => {
            let mut ids: Vec<_> = (1..g.get()).map(StratumId::Unstable).collect();
            ids.push(StratumId::UnstableTotal);
            ids
        }
        StratumChoice::All => StratumId::all(g),
    }
}

fn show_e(e: &FactoredRational) -> String {
    match e.as_polynomial() {
        Some(p) => p.to_string(),
        None => e.to_string(),
    }
}

fn stratum_command(range: GenusRange, choice: StratumChoice, format: Format) -> Result<Rendered, CliError> {
    let mut reports: Vec<StratumReport> = Vec::new();
    for g in genera(range.min, range.max)? {
        for id in stratum_ids(g, choice) {
            reports.push(strata::stratum_report(g, id)?);
        }
    }
    let status = if reports.iter().all(|r| r.dim_check && r.symmetric) {
        ExitStatus::Success
    } else {
        ExitStatus::ChecksFailed
    };
    let body = match format {
        Format::Json => json_body(&reports),
        Format::Csv => {
            let mut s = String::from("genus,stratum,dim,uv_degree,dim_check,symmetric\n");
            for r in &reports {
                let dim = r.expected_dim.map(|d| d.to_string()).unwrap_or_default();
                let deg = r.e_poly.uv_degree().map(|d| d.to_string()).unwrap_or_default();
                let _ = writeln!(s, "{},{},{dim},{deg},{},{}", r.genus, r.id, r.dim_check, r.symmetric);
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for r in &reports {
                let dim = r.expected_dim.map(|d| d.to_string()).unwrap_or_else(|| "empty".into());
                let _ = writeln!(
                    s,
                    "g={} {} dim={dim} dim_check={} symmetric={}\n  E = {}",
                    r.genus,
                    r.id,
                    r.dim_check,
                    r.symmetric,
                    show_e(&r.e_poly)
                );
            }
            s
        }
    };
    Ok(Rendered { body, status })
}

fn verify_command(range: GenusRange, strict: bool, format: Format) -> Result<Rendered, CliError> {
    let outcomes = verify::run_all(range.min..=range.max, strict);
    let status = if verify::failures(&outcomes) == 0 {
        ExitStatus::Success
    } else {
        ExitStatus::ChecksFailed
    };
    let body = match format {
        Format::Json => json_body(&outcomes),
        Format::Csv => {
            let mut s = String::from("genus,check_name,status,passed\n");
            for o in &outcomes {
                let _ = writeln!(s, "{},{},{},{}", o.genus, o.check_name, o.status.label().to_lowercase(), o.passed());
            }
            s
        }
        Format::Pretty => pretty_outcomes(&outcomes),
    };
    Ok(Rendered { body, status })
}

fn pretty_outcomes(outcomes: &[VerificationOutcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        let _ = write!(s, "{} g={} {}", o.status.label(), o.genus, o.check_name);
        if let Some(d) = &o.detail {
            let _ = write!(s, " ({d})");
        }
        s.push('\n');
        if let Some(delta) = &o.delta {
            if o.status != Status::Pass {
                let _ = writeln!(s, "  delta = {}", show_e(delta));
            }
        }
    }
    let count = |st: Status| outcomes.iter().filter(|o| o.status == st).count();
    let _ = writeln!(
        s,
        "{} passed, {} warnings, {} failed, {} skipped",
        count(Status::Pass),
        count(Status::Warn),
        count(Status::Fail),
        count(Status::Skip)
    );
    s
}

fn compute_command(genera: Vec<Genus>, format: Format) -> Result<Rendered, CliError> {
    let mut reports: Vec<(StringyReport, FactoredRational)> = Vec::new();
    for g in genera {
        reports.push((stringy::stringy_e(g)?, strata::compare_theorem(g).difference));
    }
    let body = match format {
        Format::Json => {
            let values: Vec<Value> = reports
                .iter()
                .map(|(r, diff)| {
                    let mut v = serde_json::to_value(r).expect("reports serialize");
                    v["display_difference"] = serde_json::to_value(diff).expect("reports serialize");
                    v
                })
                .collect();
            json_body(&values)
        }
        Format::Csv => {
            let mut s = String::from("genus,euler,euler_formula,euler_stable_part,euler_correction,is_polynomial,uv_degree\n");
            for (r, _) in &reports {
                let deg = r.e_st.uv_degree().map(|d| d.to_string()).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{deg}",
                    r.genus,
                    format_rational(&r.euler),
                    format_rational(&r.euler_formula),
                    format_rational(&r.euler_ms),
                    format_rational(&r.euler_correction),
                    r.is_polynomial
                );
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for (r, diff) in &reports {
                let _ = writeln!(s, "genus {}", r.genus);
                let _ = writeln!(
                    s,
                    "  euler          {} (stable part {} + correction {})",
                    r.euler, r.euler_ms, r.euler_correction
                );
                let _ = writeln!(s, "  euler formula  {}", r.euler_formula);
                let _ = writeln!(s, "  polynomial     {}", r.is_polynomial);
                for entry in &r.breakdown {
                    let _ = writeln!(s, "  {} weights {:?}", entry.subset, entry.weight_exponents);
                }
                let _ = writeln!(s, "  display minus stratum sum = {}", show_e(diff));
                let _ = writeln!(s, "  E_st = {}", show_e(&r.e_st));
            }
            s
        }
    };
    ok(body)
}

fn euler_table_command(genera: Vec<Genus>, format: Format) -> Result<Rendered, CliError> {
    let mut rows = Vec::new();
    for g in genera {
        let r = stringy::stringy_e(g)?;
        let matches = r.euler == r.euler_formula;
        rows.push((g.get(), format_rational(&r.euler), format_rational(&r.euler_formula), matches));
    }
    let status = if rows.iter().all(|r| r.3) {
        ExitStatus::Success
    } else {
        ExitStatus::ChecksFailed
    };
    let body = match format {
        Format::Json => json_body(
            &rows
                .iter()
                .map(|(g, e, f, m)| json!({"genus": g, "euler_exact": e, "euler_formula": f, "match": m}))
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut s = String::from("genus,euler_exact,euler_formula,match\n");
            for (g, e, f, m) in &rows {
                let _ = writeln!(s, "{g},{e},{f},{m}");
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("{:>5}  {:>24}  {:>24}  match\n", "genus", "euler", "formula");
            for (g, e, f, m) in &rows {
                let _ = writeln!(s, "{g:>5}  {e:>24}  {f:>24}  {m}");
            }
            s
        }
    };
    Ok(Rendered { body, status })
}

struct DivisorRow {
    genus: Genus,
    subset: DivisorSubset,
    closed: Option<FactoredRational>,
    open: FactoredRational,
}

fn divisors_command(genera: Vec<Genus>, format: Format) -> Result<Rendered, CliError> {
    let mut rows = Vec::new();
    for g in genera {
        for subset in DivisorSubset::open_strata() {
            let closed = match stringy::e_divisor_closed(subset, g) {
                Ok(e) => Some(e),
                Err(Error::UnsupportedSubset(_)) => None,
                Err(e) => return Err(e.into()),
            };
            rows.push(DivisorRow {
                genus: g,
                subset,
                closed,
                open: stringy::e_open_stratum(subset, g)?,
            });
        }
    }
    let degree = |e: &FactoredRational| e.uv_degree().map(|d| d.to_string()).unwrap_or_default();
    let body = match format {
        Format::Json => json_body(
            &rows
                .iter()
                .map(|r| json!({"genus": r.genus.get(), "J": r.subset, "closed": r.closed, "open": r.open}))
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut s = String::from("genus,J,closed_uv_degree,open_uv_degree\n");
            for r in &rows {
                let closed = r.closed.as_ref().map(degree).unwrap_or_default();
                let _ = writeln!(s, "{},{},{closed},{}", r.genus, r.subset, degree(&r.open));
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(s, "g={} {}", r.genus, r.subset);
                match &r.closed {
                    Some(c) => {
                        let _ = writeln!(s, "  closed = {}", show_e(c));
                    }
                    None => s.push_str("  closed = (no closed form)\n"),
                }
                let _ = writeln!(s, "  open   = {}", show_e(&r.open));
            }
            s
        }
    };
    ok(body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Rendered, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("hodge-stringy").chain(args.iter().copied())).unwrap();
        execute(&cli, &mut Vec::new())
    }

    #[test]
    fn genus_ranges() {
        assert_eq!("3..6".parse(), Ok(GenusRange { min: 3, max: 6 }));
        assert_eq!("3..=6".parse(), Ok(GenusRange { min: 3, max: 6 }));
        assert_eq!("4".parse(), Ok(GenusRange { min: 4, max: 4 }));
        assert!("6..3".parse::<GenusRange>().is_err());
        assert!("x".parse::<GenusRange>().is_err());
    }

    #[test]
    fn euler_table_csv() {
        let r = run(&["euler-table", "--genus", "3..4", "--format", "csv"]).unwrap();
        let mut lines = r.body.lines();
        assert_eq!(lines.next(), Some("genus,euler_exact,euler_formula,match"));
        assert_eq!(lines.next(), Some("3,560,128,false"));
        assert_eq!(r.status, ExitStatus::ChecksFailed);
    }

    #[test]
    fn config_guards() {
        assert!(matches!(run(&["verify", "--genus", "13"]), Err(CliError::Config(_))));
        assert!(matches!(run(&["verify", "--genus", "1..3"]), Err(CliError::Config(_))));
        assert!(matches!(run(&["compute", "--genus", "2"]), Err(CliError::Config(_))));
        assert!(run(&["stratum", "--genus", "13", "--max-genus", "13", "--type", "type3"]).is_ok());
    }

    #[test]
    fn stringy_commands_clamp_with_warning() {
        let cli = Cli::try_parse_from(["hodge-stringy", "divisors", "--genus", "2..3", "--format", "csv"]).unwrap();
        let mut warnings = Vec::new();
        let r = execute(&cli, &mut warnings).unwrap();
        assert_eq!(warnings.len(), 1);
        assert!(r.body.lines().skip(1).all(|l| l.starts_with("3,")));
    }
}
