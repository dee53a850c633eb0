//! The `ising-pbw` command line.
//!
//! Results go to standard output (or `--output`), diagnostics to standard
//! error. Exit status: 0 when everything requested passed, 1 when a check
//! failed, 2 for usage and I/O errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::label::ModuleLabel;
use crate::partitions::Partition;
use crate::qseries::{
    catalogued_transformations, character_combination, check_transformation, random_transformations, theorem_rhs,
    ClosedFormGroup, Discrepancy, IdentityCheck,
};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::reduction::{echelon_csv, refined_character_of, CrossCheckReport, ModuleSpec};
use crate::virasoro::{Verma, VermaSpec};

/// Stable version tag carried by every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Characters,
    Lemma1,
    Tails,
    Theorems,
    All,
}

#[derive(Parser, Debug)]
#[command(name = "ising-pbw", version, about = "PBW bases and characters of the Ising Virasoro modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Output format.
    #[arg(long = "output-format", alias = "format", value_enum, default_value = "text", global = true)]
    pub format: OutputFormat,
    /// Write results to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "ISING_PBW_THREADS", default_value_t = 0, global = true)]
    pub threads: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pivot and basis partitions of A^W_n for every weight up to --max-weight.
    Pivots {
        #[arg(long)]
        module: ModuleLabel,
        #[arg(long)]
        max_weight: Option<u32>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Module to check; all three when omitted.
        #[arg(long)]
        module: Option<ModuleLabel>,
        #[arg(long)]
        max_weight: Option<u32>,
        #[arg(long = "q-trunc")]
        q_trunc: Option<u32>,
        /// Seed for the random transformation instances.
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Number of random transformation instances.
        #[arg(long, default_value_t = 50)]
        random: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Singular vectors of M(c, h) at a level.
    Singular {
        #[arg(long, value_parser = parse_rational_arg)]
        c: Rational,
        #[arg(long, value_parser = parse_rational_arg)]
        h: Rational,
        #[arg(long)]
        level: u32,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The matrix A^W_n (or A_n with --unreduced) at one weight.
    Matrix {
        #[arg(long)]
        module: ModuleLabel,
        #[arg(long)]
        weight: u32,
        /// Print every entry as CSV.
        #[arg(long)]
        dump: bool,
        /// Use A_n itself instead of its reduced echelon form.
        #[arg(long)]
        unreduced: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The echelon row whose pivot is --partition, and its maximal-length part.
    Row {
        #[arg(long)]
        module: ModuleLabel,
        /// Comma-separated parts, e.g. 6,5,3,1.
        #[arg(long, value_parser = parse_partition_arg)]
        partition: Partition,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn parse_rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_partition_arg(s: &str) -> std::result::Result<Partition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Settings shared by all commands after defaults are applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub module: Option<ModuleLabel>,
    pub max_weight: Option<u32>,
    pub q_truncation: Option<u32>,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub threads: usize,
}

impl RunConfig {
    fn new(common: &CommonArgs) -> Self {
        RunConfig {
            module: None,
            max_weight: None,
            q_truncation: None,
            format: common.format,
            output: common.output.clone(),
            threads: common.threads,
        }
    }

    /// `max_weight` for `label`, defaulting to the smallest weight that
    /// covers every exceptional pivot.
    pub fn max_weight_for(&self, label: ModuleLabel) -> u32 {
        self.max_weight.unwrap_or_else(|| label.default_max_weight())
    }

    pub fn q_truncation_for(&self, label: ModuleLabel) -> u32 {
        self.q_truncation.unwrap_or_else(|| self.max_weight_for(label))
    }

    /// A q-truncation below the max weight would compare series past the
    /// range the linear algebra computed.
    pub fn validate(&self) -> Result<()> {
        if let (Some(q), Some(n)) = (self.q_truncation, self.max_weight) {
            if q < n {
                return Err(Error::TruncationTooSmall { q_truncation: q, max_weight: n });
            }
        }
        Ok(())
    }
}

/// Text or JSON output of a command, plus whether it passed.
pub struct Report {
    pub body: String,
    pub passed: bool,
}

/// Runs the parsed command line and returns the exit status.
pub fn run(cli: Cli) -> i32 {
    let common = match &cli.command {
        Command::Pivots { common, .. }
        | Command::Verify { common, .. }
        | Command::Singular { common, .. }
        | Command::Matrix { common, .. }
        | Command::Row { common, .. } => common.clone(),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(common.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start {} worker threads: {e}", common.threads);
            return 2;
        }
    };
    let started = Instant::now();
    let outcome = pool.install(|| dispatch(&cli.command));
    match outcome.and_then(|report| emit(&common, report)) {
        Ok(passed) => {
            eprintln!("done in {:.2?}", started.elapsed());
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Parses `std::env::args` and runs.
pub fn main() -> i32 {
    run(Cli::parse())
}

fn emit(common: &CommonArgs, report: Report) -> Result<bool> {
    match &common.output {
        Some(path) => std::fs::write(path, &report.body)?,
        None => print!("{}", report.body),
    }
    Ok(report.passed)
}

fn dispatch(command: &Command) -> Result<Report> {
    match command {
        Command::Pivots { module, max_weight, common } => {
            let cfg = RunConfig { module: Some(*module), max_weight: *max_weight, ..RunConfig::new(common) };
            cmd_pivots(&cfg)
        }
        Command::Verify { suite, module, max_weight, q_trunc, seed, random, common } => {
            let cfg = RunConfig {
                module: *module,
                max_weight: *max_weight,
                q_truncation: *q_trunc,
                ..RunConfig::new(common)
            };
            cmd_verify(&cfg, *suite, *seed, *random)
        }
        Command::Singular { c, h, level, common } => cmd_singular(&RunConfig::new(common), c, h, *level),
        Command::Matrix { module, weight, dump, unreduced, common } => {
            cmd_matrix(&RunConfig::new(common), *module, *weight, *dump, *unreduced)
        }
        Command::Row { module, partition, common } => cmd_row(&RunConfig::new(common), *module, partition),
    }
}

fn json_body(value: serde_json::Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

fn partition_list(ps: &[Partition]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

/// Per-weight pivots and quotient basis.
pub fn cmd_pivots(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let label = cfg.module.ok_or_else(|| Error::UnknownModule(String::new()))?;
    let spec = ModuleSpec::new(label)?;
    let records = spec.pivots_up_to(cfg.max_weight_for(label));
    let body = match cfg.format {
        OutputFormat::Json => json_body(json!({ "schema": SCHEMA_VERSION, "records": records }))?,
        OutputFormat::Csv => {
            let mut out = String::from("label,n,kind,partition\n");
            for r in &records {
                for (kind, list) in [("pivot", &r.pivots), ("basis", &r.basis)] {
                    for p in list {
                        let _ = writeln!(out, "{},{},{kind},{}", r.label, r.n, p.plus_notation());
                    }
                }
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for r in &records {
                let pivots = if r.pivots.is_empty() { "(none)".to_string() } else { partition_list(&r.pivots) };
                let _ = writeln!(out, "{} n={} pivots: {pivots}", r.label, r.n);
                let _ = writeln!(out, "{} n={} basis: {}", r.label, r.n, partition_list(&r.basis));
            }
            out
        }
    };
    Ok(Report { body, passed: true })
}

/// One line of a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckLine {
    fn from_identity(suite: &'static str, check: IdentityCheck) -> Self {
        CheckLine { suite, passed: check.passed(), detail: check.discrepancy.as_ref().map(describe), name: check.name }
    }
}

fn describe(d: &Discrepancy) -> String {
    d.to_string()
}

fn modules(cfg: &RunConfig) -> Vec<ModuleLabel> {
    cfg.module.map_or_else(|| ModuleLabel::ALL.to_vec(), |m| vec![m])
}

fn character_checks(report: &CrossCheckReport, lines: &mut Vec<CheckLine>) {
    for w in &report.weights {
        let mut detail = Vec::new();
        if !w.unexpected_pivots.is_empty() {
            detail.push(format!("pivots avoiding every pattern: {}", partition_list(&w.unexpected_pivots)));
        }
        if !w.missing_pivots.is_empty() {
            detail.push(format!("pattern-containing non-pivots: {}", partition_list(&w.missing_pivots)));
        }
        if !w.count_matches {
            detail.push(format!("basis {} != p(n) {} - rank {}", w.basis_size, w.partitions, w.rank));
        }
        lines.push(CheckLine {
            suite: "characters",
            name: format!("{} weight {}: basis = P(n), pivots = complement, dim = p(n) - rank", report.label, w.n),
            passed: w.passed(),
            detail: (!detail.is_empty()).then(|| detail.join("; ")),
        });
    }
}

fn theorem_checks(
    spec: &ModuleSpec,
    report: &CrossCheckReport,
    bases: &[Vec<Partition>],
    q: u32,
    lines: &mut Vec<CheckLine>,
) {
    let label = spec.label;
    let failing: Vec<String> = report.weights.iter().filter(|w| !w.passed()).map(|w| w.n.to_string()).collect();
    lines.push(CheckLine {
        suite: "theorems",
        name: format!("{label}: quotient basis = pattern-avoiding partitions for n <= {}", report.max_weight),
        passed: failing.is_empty(),
        detail: (!failing.is_empty()).then(|| format!("failing weights {}", failing.join(","))),
    });
    if let Err(e) = spec.check_basis(bases) {
        lines.push(CheckLine {
            suite: "theorems",
            name: format!("{label}: basis admissibility"),
            passed: false,
            detail: Some(e.to_string()),
        });
        return;
    }
    let character = refined_character_of(label, bases);
    // Beyond the computed weights the left side knows nothing, so compare
    // only up to the smaller of the two truncations.
    let rhs = theorem_rhs(label, q).truncated(report.max_weight.min(q));
    let lhs = character.truncated(report.max_weight.min(q));
    lines.push(CheckLine::from_identity(
        "theorems",
        IdentityCheck::compare(
            format!("{label}: refined character = q^h ({})", character_combination(label)),
            &lhs,
            &rhs,
        ),
    ));
    let dims = character.at_t_one();
    let expected: BTreeMap<Rational, Rational> = bases
        .iter()
        .enumerate()
        .filter(|(_, b)| !b.is_empty())
        .map(|(k, b)| {
            (label.highest_weight() + Rational::from_integer(k.into()), Rational::from_integer(b.len().into()))
        })
        .collect();
    lines.push(CheckLine {
        suite: "theorems",
        name: format!("{label}: character at t = 1 = graded dimensions"),
        passed: dims == expected,
        detail: None,
    });
}

/// Runs the selected suite; passes iff every line passes.
pub fn cmd_verify(cfg: &RunConfig, suite: Suite, seed: u64, random: usize) -> Result<Report> {
    cfg.validate()?;
    let mut lines: Vec<CheckLine> = Vec::new();
    let wants = |s: Suite| suite == s || suite == Suite::All;

    if wants(Suite::Lemma1) {
        let q = cfg.q_truncation.unwrap_or(25);
        let mut instances = catalogued_transformations();
        instances.extend(random_transformations(seed, random));
        for (rule, p) in instances {
            lines.push(CheckLine::from_identity("lemma1", check_transformation(&rule, p, q)?));
        }
    }
    if wants(Suite::Tails) {
        let q = cfg.q_truncation.unwrap_or(25);
        for group in ClosedFormGroup::ALL {
            if cfg.module.is_some_and(|m| m != group.label()) {
                continue;
            }
            for cf in group.members() {
                lines.push(CheckLine::from_identity("tails", cf.check(q)));
            }
        }
    }
    if wants(Suite::Characters) || wants(Suite::Theorems) {
        for label in modules(cfg) {
            let spec = ModuleSpec::new(label)?;
            let echelons = spec.echelons_up_to(cfg.max_weight_for(label));
            let report = spec.cross_check_echelons(&echelons);
            if wants(Suite::Characters) {
                character_checks(&report, &mut lines);
            }
            if wants(Suite::Theorems) {
                let bases: Vec<Vec<Partition>> = echelons.into_iter().map(|e| e.non_pivots).collect();
                theorem_checks(&spec, &report, &bases, cfg.q_truncation_for(label), &mut lines);
            }
        }
    }

    let passed = lines.iter().all(|l| l.passed);
    let body = match cfg.format {
        OutputFormat::Json => json_body(json!({ "schema": SCHEMA_VERSION, "passed": passed, "checks": lines }))?,
        OutputFormat::Csv => {
            let mut out = String::from("suite\tresult\tcheck\tdetail\n");
            for l in &lines {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    l.suite,
                    if l.passed { "pass" } else { "FAIL" },
                    l.name,
                    l.detail.as_deref().unwrap_or("")
                );
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for l in &lines {
                let _ = write!(out, "{}  [{}] {}", if l.passed { "pass" } else { "FAIL" }, l.suite, l.name);
                if let Some(d) = &l.detail {
                    let _ = write!(out, ": {d}");
                }
                out.push('\n');
            }
            let failed = lines.iter().filter(|l| !l.passed).count();
            let _ = writeln!(out, "{} checks, {} failed", lines.len(), failed);
            out
        }
    };
    Ok(Report { body, passed })
}

/// Singular vectors at `level` in `M(c, h)`.
pub fn cmd_singular(cfg: &RunConfig, c: &Rational, h: &Rational, level: u32) -> Result<Report> {
    let spec = VermaSpec::new(c.clone(), h.clone());
    let vectors = Verma::new(spec).singular_vectors(level);
    // The kernel basis is always reported as PBW-vector JSON; text mode
    // adds a readable line per vector on standard error.
    if cfg.format == OutputFormat::Text {
        eprintln!(
            "M({}, {}) level {level}: {} singular vector(s)",
            format_rational(c),
            format_rational(h),
            vectors.len()
        );
        for v in &vectors {
            eprintln!("  {v}");
        }
    }
    let body = json_body(json!({
        "schema": SCHEMA_VERSION,
        "c": format_rational(c),
        "h": format_rational(h),
        "level": level,
        "vectors": vectors,
    }))?;
    Ok(Report { body, passed: true })
}

/// `A_n` or `A^W_n` at one weight.
pub fn cmd_matrix(cfg: &RunConfig, label: ModuleLabel, weight: u32, dump: bool, unreduced: bool) -> Result<Report> {
    let spec = ModuleSpec::new(label)?;
    let a = spec.build_an(weight);
    let e = spec.echelon(weight);
    let csv = dump || cfg.format == OutputFormat::Csv;
    let body = if csv {
        if unreduced {
            let mut out = a.columns.iter().map(|p| p.plus_notation()).collect::<Vec<_>>().join(", ");
            out.push('\n');
            for row in a.matrix.to_dense() {
                let _ = writeln!(out, "{}", row.iter().map(format_rational).collect::<Vec<_>>().join(", "));
            }
            out
        } else {
            echelon_csv(&e)
        }
    } else if cfg.format == OutputFormat::Json {
        let rows: Vec<Vec<String>> = if unreduced { a.matrix.to_dense() } else { e.to_dense() }
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        json_body(json!({
            "schema": SCHEMA_VERSION,
            "label": label,
            "n": weight,
            "reduced": !unreduced,
            "columns": e.column_order,
            "rows": rows,
            "pivots": e.pivots,
        }))?
    } else {
        format!(
            "{label} n={weight}: A_n is {}x{}, rank {}\npivots: {}\nbasis: {}\n",
            a.matrix.nrows(),
            a.columns.len(),
            e.rank(),
            partition_list(&e.pivots),
            partition_list(&e.non_pivots)
        )
    };
    Ok(Report { body, passed: true })
}

/// The row `u^W_lambda` and its maximal-length part.
pub fn cmd_row(cfg: &RunConfig, label: ModuleLabel, lambda: &Partition) -> Result<Report> {
    let spec = ModuleSpec::new(label)?;
    let e = spec.echelon(lambda.weight());
    let Some(row) = e.row_for(lambda) else {
        let body = match cfg.format {
            OutputFormat::Text | OutputFormat::Csv => {
                format!("{label}: {lambda} is not a pivot at weight {}\n", lambda.weight())
            }
            OutputFormat::Json => {
                json_body(json!({ "schema": SCHEMA_VERSION, "label": label, "partition": lambda, "pivot": false }))?
            }
        };
        return Ok(Report { body, passed: false });
    };
    let leading = row.length_leading_part();
    let body = match cfg.format {
        OutputFormat::Json => json_body(json!({
            "schema": SCHEMA_VERSION,
            "label": label,
            "partition": lambda,
            "pivot": true,
            "row": row,
            "leading": leading,
        }))?,
        _ => format!("u^W = {row}\nu^K = {leading}\n"),
    };
    Ok(Report { body, passed: true })
}
