//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or precondition
//! error, 3 resource guard. Errors are written to stderr as a JSON object.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::compression::{compress_to_fixpoint_with, CompressionTrace};
use crate::counting::{self, m_tilde, ExtremalReport};
use crate::error::{Error, Result};
use crate::exec::{configure_threads, Exec};
use crate::oracle::{self, Mode, OracleOptions};
use crate::perm::{PermFamily, Permutation};
use crate::verify::{self, Suite, SuiteReport, VerifyParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cycle-ekr", version, about = "Extremal t-cycle-intersecting permutation families")]
pub struct Cli {
    /// Output format (default: json, or csv for `table`).
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
    /// Worker threads for searches and suites.
    #[arg(long, global = true, env = "CYCLE_EKR_THREADS")]
    pub threads: Option<usize>,
    /// Abort exhaustive searches after this many nodes.
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
    /// Permit the clique oracle at n = 6.
    #[arg(long, global = true)]
    pub allow_n6: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity.
    Compute(ComputeArgs),
    /// Tabulate the extremal report over ranges of n and t.
    Table(TableArgs),
    /// Run a verification suite (or `all`).
    Verify(VerifyArgs),
    /// Exhaustive search for the maximum family.
    Oracle(OracleArgs),
    /// Compress a permutation family to its fixpoint.
    Compress(CompressArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// Derangements f(n).
    F,
    /// Frontier ratio at ell (or ell = t + 2r).
    Gamma,
    /// M(n,t); with --r, the frontier family size for that r.
    M,
    /// |U(H_i)| in S_n.
    Nu,
    /// Closed form for S_i, with the printed variant and nu for comparison.
    S,
    /// The nontrivial maximum and its report.
    Mtilde,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(value_enum)]
    pub quantity: Quantity,
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Inclusive range A..B.
    #[arg(long, default_value = "3..10")]
    pub n_range: Span,
    #[arg(long, default_value = "1..2")]
    pub t_range: Span,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    pub suite: String,
    /// Largest n for oracle comparisons (default 5).
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Largest m for derangement checks (default 12).
    #[arg(long)]
    pub max_m: Option<usize>,
    /// Random trials for the compression and generator suites (default 200).
    #[arg(long)]
    pub trials: Option<usize>,
    /// Ground set size for compression trials (default 5).
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest t for compression trials (default 1).
    #[arg(long)]
    pub t: Option<usize>,
    /// RNG seed for the random suites.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Trivial,
    Nontrivial,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long, value_enum, default_value = "trivial")]
    pub mode: OracleMode,
    /// Search generated families instead of all of S_n.
    #[arg(long)]
    pub structured: bool,
    /// List every maximum family instead of one witness.
    #[arg(long, conflicts_with = "structured")]
    pub maximizers: bool,
}

#[derive(Debug, Args)]
pub struct CompressArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    /// Members in cycle notation separated by `;`, e.g. "(1 2)(3); (1)(2)(3)".
    #[arg(long, required_unless_present = "file")]
    pub family: Option<String>,
    /// File with one permutation per line.
    #[arg(long)]
    pub file: Option<std::path::PathBuf>,
    /// Include every operator application.
    #[arg(long)]
    pub trace: bool,
}

/// Inclusive integer range written `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn range(self) -> RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("bad bound {x:?}: {e}"));
        let (start, end) = (parse(a)?, parse(b)?);
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { start, end })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// What a command produced, before formatting.
enum Report {
    Object(Value),
    Rows(Vec<Value>),
    Suites(Vec<SuiteReport>),
}

fn error_exit(e: &Error) -> i32 {
    match e {
        Error::ResourceGuard(_) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

fn write_error(stderr: &mut dyn Write, kind: &str, message: &str) {
    let _ = writeln!(stderr, "{}", json!({ "error": kind, "message": message }));
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let message = e.render().to_string();
            write_error(stderr, "usage", message.trim());
            return EXIT_USAGE;
        }
    };
    if let Some(k) = cli.threads {
        if k == 0 {
            write_error(stderr, "usage", "--threads must be at least 1");
            return EXIT_USAGE;
        }
        configure_threads(k);
    }
    let exec = if cli.threads == Some(1) { Exec::Sequential } else { Exec::available_parallel() };
    let default_format = if matches!(cli.command, Command::Table(_)) { OutputFormat::Csv } else { OutputFormat::Json };
    let format = cli.output.unwrap_or(default_format);
    let outcome = dispatch(&cli, exec);
    match outcome {
        Ok(report) => {
            let failed = matches!(&report, Report::Suites(s) if s.iter().any(|r| !r.pass));
            if let Err(e) = render(&report, format, stdout) {
                write_error(stderr, "io", &e.to_string());
                return EXIT_USAGE;
            }
            if failed {
                EXIT_VERIFY_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            write_error(stderr, e.kind(), &e.to_string());
            error_exit(&e)
        }
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str, quantity: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidArgument(format!("compute {quantity} needs --{flag}")))
}

fn to_usize(n: i64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::OutOfRange(format!("n must be nonnegative, got {n}")))
}

fn dispatch(cli: &Cli, exec: Exec) -> Result<Report> {
    let oracle_opts = OracleOptions { exec, budget_nodes: cli.budget_nodes, allow_n6: cli.allow_n6, unpruned: false };
    match &cli.command {
        Command::Compute(args) => compute(args).map(Report::Object),
        Command::Table(args) => table(args).map(Report::Rows),
        Command::Verify(args) => verify_cmd(args, exec, cli).map(Report::Suites),
        Command::Oracle(args) => oracle_cmd(args, &oracle_opts).map(Report::Object),
        Command::Compress(args) => compress(args, exec).map(Report::Object),
    }
}

fn compute(args: &ComputeArgs) -> Result<Value> {
    let name = args.quantity.to_possible_value().expect("no skipped variants").get_name().to_string();
    let n = need(args.n, "n", &name)?;
    let value = match args.quantity {
        Quantity::F => json!({ "quantity": name, "n": n, "value": counting::f(n)? }),
        Quantity::Gamma => {
            let (n, t) = (to_usize(n)?, need(args.t, "t", &name)?);
            let ell = match (args.ell, args.r) {
                (Some(ell), _) => ell,
                (None, Some(r)) => t + 2 * r,
                (None, None) => return Err(Error::InvalidArgument("compute gamma needs --ell or --r".into())),
            };
            let ratio = counting::gamma(ell, n, t)?;
            json!({
                "quantity": name, "n": n, "t": t, "ell": ell,
                "value": ratio,
                "passes_frontier_test": counting::frontier_condition(ell, n, t)?,
            })
        }
        Quantity::M => {
            let (n, t) = (to_usize(n)?, need(args.t, "t", &name)?);
            match args.r {
                Some(r) => json!({ "quantity": name, "n": n, "t": t, "r": r, "value": counting::m_theorem1(n, t, r)? }),
                None => {
                    let (value, r_star) = counting::m_max(n, t)?;
                    json!({ "quantity": name, "n": n, "t": t, "ell_star": counting::ell_star(n, t)?, "r_star": r_star, "value": value })
                }
            }
        }
        Quantity::Nu => {
            let (n, t, i) = (to_usize(n)?, need(args.t, "t", &name)?, need(args.i, "i", &name)?);
            json!({ "quantity": name, "n": n, "t": t, "i": i, "value": counting::nu(n, t, i)? })
        }
        Quantity::S => {
            let (n, t, i) = (to_usize(n)?, need(args.t, "t", &name)?, need(args.i, "i", &name)?);
            let closed = counting::s_closed(n, t, i)?;
            let nu = counting::nu(n, t, i)?;
            json!({
                "quantity": name, "n": n, "t": t, "i": i,
                "value": closed,
                "printed_form": counting::s_printed(n, t, i)?.to_string(),
                "nu": nu,
            })
        }
        Quantity::Mtilde => {
            let (n, t) = (to_usize(n)?, need(args.t, "t", &name)?);
            let report = m_tilde(n, t)?;
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["quantity"] = json!(name);
            value["value"] = json!(report.m_tilde);
            value
        }
    };
    Ok(value)
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    t: usize,
    ell_star: usize,
    r_star: usize,
    m: String,
    nu: String,
    nu_endpoints: String,
    nu_h1_h2: String,
    m_tilde: String,
    regime: crate::counting::Regime,
}

impl From<ExtremalReport> for TableRow {
    fn from(r: ExtremalReport) -> Self {
        TableRow {
            n: r.n,
            t: r.t,
            ell_star: r.ell_star,
            r_star: r.r_star,
            m: r.m_value.to_string(),
            nu: r.nu_values.iter().map(|v| format!("{}:{}", v.i, v.value)).collect::<Vec<_>>().join(";"),
            nu_endpoints: r.nu_endpoints.to_string(),
            nu_h1_h2: r.nu_h1_h2.to_string(),
            m_tilde: r.m_tilde.to_string(),
            regime: r.regime,
        }
    }
}

/// Rows for every (n, t) in range with n ≥ t + 2, ordered by t then n.
fn table(args: &TableArgs) -> Result<Vec<Value>> {
    if args.t_range.start == 0 {
        return Err(Error::OutOfRange("t must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for t in args.t_range.range() {
        for n in args.n_range.range().filter(|&n| n >= t + 2) {
            let row = TableRow::from(m_tilde(n, t)?);
            rows.push(serde_json::to_value(row).expect("row serializes"));
        }
    }
    if rows.is_empty() {
        return Err(Error::OutOfRange(format!(
            "no (n, t) with n >= t + 2 in n {} and t {}",
            args.n_range, args.t_range
        )));
    }
    Ok(rows)
}

fn verify_cmd(args: &VerifyArgs, exec: Exec, cli: &Cli) -> Result<Vec<SuiteReport>> {
    let defaults = VerifyParams::default();
    let params = VerifyParams {
        max_m: args.max_m.unwrap_or(defaults.max_m),
        max_n: args.max_n.unwrap_or(defaults.max_n),
        n: args.n.unwrap_or(defaults.n),
        t: args.t.unwrap_or(defaults.t),
        trials: args.trials.unwrap_or(defaults.trials),
        seed: args.seed.unwrap_or(defaults.seed),
        exec,
        allow_n6: cli.allow_n6,
        budget_nodes: cli.budget_nodes,
    };
    let suites: Vec<Suite> = if args.suite == "all" { Suite::ALL.to_vec() } else { vec![args.suite.parse()?] };
    suites.into_iter().map(|s| verify::run(s, &params)).collect()
}

fn oracle_cmd(args: &OracleArgs, opts: &OracleOptions) -> Result<Value> {
    let mode = match args.mode {
        OracleMode::Trivial => Mode::TrivialAllowed,
        OracleMode::Nontrivial => Mode::NontrivialOnly,
    };
    if args.maximizers {
        let m = oracle::enumerate_maximizers_with(args.n, args.t, mode, opts)?;
        let families: Vec<Vec<String>> = m.families.iter().map(|f| f.iter().map(|p| p.to_string()).collect()).collect();
        return Ok(json!({
            "n": m.n, "t": m.t, "mode": m.mode,
            "maximum": m.maximum.to_string(),
            "count": families.len(),
            "families": families,
            "node_count": m.node_count,
        }));
    }
    let result = if args.structured {
        oracle::structured_max_with(args.n, args.t, mode, opts)?
    } else {
        oracle::max_clique_exact_with(args.n, args.t, mode, opts)?
    };
    let mut value = serde_json::to_value(&result).expect("result serializes");
    value["search"] = json!(if args.structured { "structured" } else { "clique" });
    Ok(value)
}

fn parse_family(n: usize, text: &str) -> Result<PermFamily> {
    let perms = text
        .split(['\n', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
        .map(|s| s.parse::<Permutation>())
        .collect::<Result<Vec<_>>>()?;
    PermFamily::from_perms(n, perms)
}

fn compress(args: &CompressArgs, exec: Exec) -> Result<Value> {
    let text = match (&args.family, &args.file) {
        (Some(inline), _) => inline.clone(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?,
        (None, None) => return Err(Error::InvalidArgument("compress needs --family or --file".into())),
    };
    let family = parse_family(args.n, &text)?;
    let (out, trace) = compress_to_fixpoint_with(&family, args.t, exec)?;
    let members = |f: &PermFamily| f.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    let CompressionTrace { steps, sweeps, initial_size, final_size } = trace;
    let mut value = json!({
        "n": args.n,
        "t": args.t,
        "input": members(&family),
        "output": members(&out),
        "sweeps": sweeps,
        "initial_size": initial_size,
        "final_size": final_size,
        "moved_total": steps.iter().map(|s| s.moved).sum::<usize>(),
        "pairwise_fixed_points_min": crate::compression::min_pairwise_fixed_intersection(&out),
    });
    if args.trace {
        value["steps"] = serde_json::to_value(&steps).expect("steps serialize");
    }
    Ok(value)
}

fn render(report: &Report, format: OutputFormat, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            let value = match report {
                Report::Object(v) => v.clone(),
                Report::Rows(rows) => Value::Array(rows.clone()),
                Report::Suites(s) if s.len() == 1 => serde_json::to_value(&s[0]).expect("report serializes"),
                Report::Suites(s) => serde_json::to_value(s).expect("report serializes"),
            };
            writeln!(out, "{value}")
        }
        OutputFormat::Csv => {
            let rows: Vec<Value> = match report {
                Report::Object(v) => vec![v.clone()],
                Report::Rows(rows) => rows.clone(),
                Report::Suites(suites) => suites
                    .iter()
                    .flat_map(|s| {
                        s.checks.iter().map(move |c| {
                            let mut row = serde_json::to_value(c).expect("check serializes");
                            row["suite"] = json!(s.suite);
                            row
                        })
                    })
                    .collect(),
            };
            write_csv(&rows, out)
        }
        OutputFormat::Text => write_text(report, out),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(";"),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

/// CSV with the column order of the first row; later rows may only reuse it.
fn write_csv(rows: &[Value], out: &mut dyn Write) -> std::io::Result<()> {
    let empty = Map::new();
    let columns: Vec<String> = rows.first().and_then(Value::as_object).unwrap_or(&empty).keys().cloned().collect();
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(&columns)?;
    for row in rows {
        let record: Vec<String> = columns.iter().map(|c| row.get(c).map(scalar).unwrap_or_default()).collect();
        writer.write_record(&record)?;
    }
    writer.flush()
}

fn write_text(report: &Report, out: &mut dyn Write) -> std::io::Result<()> {
    match report {
        Report::Object(Value::Object(map)) => {
            for (k, v) in map {
                writeln!(out, "{k}: {}", scalar(v))?;
            }
        }
        Report::Object(v) => writeln!(out, "{}", scalar(v))?,
        Report::Rows(rows) => {
            for row in rows {
                let fields: Vec<String> = row
                    .as_object()
                    .map(|m| m.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect())
                    .unwrap_or_default();
                writeln!(out, "{}", fields.join("  "))?;
            }
        }
        Report::Suites(suites) => {
            for s in suites {
                for c in &s.checks {
                    let tag = serde_json::to_value(c.status).expect("status serializes");
                    writeln!(out, "[{}] {} {}: expected {}, got {}", tag.as_str().unwrap_or_default(), s.suite, c.label, c.expected, c.actual)?;
                }
                writeln!(
                    out,
                    "{}: {} passed, {} failed, {} findings, {} skipped",
                    s.suite, s.passed, s.failed, s.findings, s.skipped
                )?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("cycle-ekr").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn span_parsing() {
        assert_eq!("3..8".parse::<Span>().unwrap().range().count(), 6);
        assert!("8..3".parse::<Span>().is_err());
        assert!("3-8".parse::<Span>().is_err());
    }

    #[test]
    fn compute_values() {
        let (code, out, _) = run_args(&["compute", "f", "--n", "6"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], "265");
        let (_, out, _) = run_args(&["compute", "m", "--n", "5", "--t", "1"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!((v["value"].as_str(), v["r_star"].as_u64()), (Some("24"), Some(0)));
    }

    #[test]
    fn errors_are_json_with_exit_codes() {
        let (code, _, err) = run_args(&["compute", "f", "--n", "-1"]);
        assert_eq!(code, EXIT_USAGE);
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "domain");
        let (code, _, _) = run_args(&["oracle", "--n", "7", "--t", "1"]);
        assert_eq!(code, EXIT_RESOURCE);
        let (code, _, _) = run_args(&["bogus"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_args(&["table", "--n-range", "5..3"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn table_has_one_row_per_n() {
        let (code, out, _) = run_args(&["table", "--n-range", "3..8", "--t-range", "1..1"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 7);
        assert!(lines[0].starts_with("n,t,ell_star,r_star,m,nu,"));
    }
}
