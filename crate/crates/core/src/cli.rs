//! Command-line front end. Parsing lives in [`Cli`]; [`run`] dispatches a
//! validated [`RunConfig`] and renders the report.
//!
//! Exit status: `0` on success, `1` when a `verify-*` run finds a
//! counterexample or violation, `2` on usage or validation errors.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::is_prime;
use crate::error::Error;
use crate::integrality::{is_mu_integral, passes_a1, passes_all, witness_grid, MuWitness};
use crate::isometry::{classify_perfect, is_perfect, IsometryReport};
use crate::modfun::{interpolate, w_set, ModFunction, PolyModN};
use crate::search::{
    verify_conjecture, verify_stothers, verify_theorem, SearchConfig, SearchReport, BUDGET_ENV, DEFAULT_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("output: {0}")]
    Output(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "rootavg",
    version,
    about = "Integrality of averages of roots of unity over Z/nZ"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads for exhaustive runs (default: available cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Maximum number of functions (or bijections) a run may visit.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Scan only tables with f(0) = 0 and expand over constant shifts.
    #[arg(long, global = true)]
    pub symmetry: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct Modulus {
    /// The modulus n (or the prime p).
    #[arg(long = "n", visible_alias = "p", value_name = "N")]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    /// Function table f(0),…,f(n-1), comma separated.
    #[arg(long, value_name = "LIST", conflicts_with = "poly", required_unless_present = "poly")]
    pub table: Option<String>,

    /// Polynomial coefficients in ascending degree, comma separated.
    #[arg(long, value_name = "LIST")]
    pub poly: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// One numerator μ^{a,b} and its integrality.
    Mu {
        #[command(flatten)]
        modulus: Modulus,
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
    },
    /// Full (a, b) grid for one function.
    Check {
        #[command(flatten)]
        modulus: Modulus,
        #[command(flatten)]
        function: FunctionArgs,
    },
    /// Interpolating polynomial over Z_p.
    Interp {
        #[command(flatten)]
        modulus: Modulus,
        #[command(flatten)]
        function: FunctionArgs,
    },
    /// Slopes λ with x ↦ f(x) + λx a permutation of Z_p.
    Wset {
        #[command(flatten)]
        modulus: Modulus,
        #[command(flatten)]
        function: FunctionArgs,
    },
    /// Exhaustive a = 1 scan over all f: Z_p → Z_p.
    VerifyTheorem {
        #[command(flatten)]
        modulus: Modulus,
    },
    /// Exhaustive full-grid scan over all f: Z_n → Z_n.
    VerifyConjecture {
        #[command(flatten)]
        modulus: Modulus,
    },
    /// Exhaustive check of the slope-set degree bound over Z_p.
    VerifyStothers {
        #[command(flatten)]
        modulus: Modulus,
    },
    /// Perfection report for the isometry induced by a bijection.
    Isometry {
        #[command(flatten)]
        modulus: Modulus,
        #[command(flatten)]
        function: FunctionArgs,
    },
    /// All perfect isometries of C_p induced by character bijections.
    Classify {
        #[command(flatten)]
        modulus: Modulus,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Mu,
    Check,
    Interp,
    Wset,
    VerifyTheorem,
    VerifyConjecture,
    VerifyStothers,
    Isometry,
    Classify,
}

impl CommandKind {
    pub fn requires_prime(self) -> bool {
        !matches!(self, Self::Mu | Self::Check | Self::VerifyConjecture)
    }

    pub fn requires_function(self) -> bool {
        matches!(
            self,
            Self::Mu | Self::Check | Self::Interp | Self::Wset | Self::Isometry
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Mu => "mu",
            Self::Check => "check",
            Self::Interp => "interp",
            Self::Wset => "wset",
            Self::VerifyTheorem => "verify-theorem",
            Self::VerifyConjecture => "verify-conjecture",
            Self::VerifyStothers => "verify-stothers",
            Self::Isometry => "isometry",
            Self::Classify => "classify",
        }
    }
}

/// Where the function under study comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSource {
    Table(Vec<usize>),
    Poly(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n_or_p: usize,
    pub function: Option<FunctionSource>,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub workers: usize,
    pub budget: u64,
    pub symmetry: bool,
    pub format: Format,
}

fn parse_list<T: std::str::FromStr>(flag: &str, raw: &str) -> Result<Vec<T>, CliError> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Usage(format!("--{flag}: cannot parse `{s}`")))
        })
        .collect()
}

fn function_source(args: FunctionArgs) -> Result<Option<FunctionSource>, CliError> {
    match (args.table, args.poly) {
        (Some(t), _) => Ok(Some(FunctionSource::Table(parse_list("table", &t)?))),
        (None, Some(p)) => Ok(Some(FunctionSource::Poly(parse_list("poly", &p)?))),
        (None, None) => Ok(None),
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (command, modulus, function, a, b) = match cli.command {
            CliCommand::Mu {
                modulus,
                function,
                a,
                b,
            } => (CommandKind::Mu, modulus, Some(function), Some(a), Some(b)),
            CliCommand::Check { modulus, function } => (CommandKind::Check, modulus, Some(function), None, None),
            CliCommand::Interp { modulus, function } => (CommandKind::Interp, modulus, Some(function), None, None),
            CliCommand::Wset { modulus, function } => (CommandKind::Wset, modulus, Some(function), None, None),
            CliCommand::VerifyTheorem { modulus } => (CommandKind::VerifyTheorem, modulus, None, None, None),
            CliCommand::VerifyConjecture { modulus } => (CommandKind::VerifyConjecture, modulus, None, None, None),
            CliCommand::VerifyStothers { modulus } => (CommandKind::VerifyStothers, modulus, None, None, None),
            CliCommand::Isometry { modulus, function } => (CommandKind::Isometry, modulus, Some(function), None, None),
            CliCommand::Classify { modulus } => (CommandKind::Classify, modulus, None, None, None),
        };
        let function = match function {
            Some(f) => function_source(f)?,
            None => None,
        };
        let config = RunConfig {
            command,
            n_or_p: modulus.n,
            function,
            a,
            b,
            workers: cli.workers.unwrap_or_else(|| SearchConfig::default().workers),
            budget: cli.budget,
            symmetry: cli.symmetry,
            format: cli.format,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_or_p == 0 {
            return Err(CliError::Usage("modulus must be positive".into()));
        }
        if self.command.requires_prime() && !is_prime(self.n_or_p) {
            return Err(CliError::Usage(format!(
                "{} requires a prime, got {}",
                self.command.name(),
                self.n_or_p
            )));
        }
        if self.command.requires_function() && self.function.is_none() {
            return Err(CliError::Usage(format!(
                "{} requires --table or --poly",
                self.command.name()
            )));
        }
        if self.command == CommandKind::Mu && (self.a.is_none() || self.b.is_none()) {
            return Err(CliError::Usage("mu requires --a and --b".into()));
        }
        if self.workers == 0 {
            return Err(CliError::Usage("--workers must be positive".into()));
        }
        Ok(())
    }

    fn search_config(&self) -> SearchConfig {
        SearchConfig::default()
            .with_workers(self.workers)
            .with_budget(self.budget)
            .with_symmetry_reduction(self.symmetry)
    }

    fn function(&self) -> Result<ModFunction, CliError> {
        let n = self.n_or_p;
        match &self.function {
            Some(FunctionSource::Table(t)) => Ok(ModFunction::new(n, t.clone())?),
            Some(FunctionSource::Poly(c)) => Ok(ModFunction::from_poly(&PolyModN::from_i64s(n, c)?)),
            None => Err(CliError::Usage(format!(
                "{} requires --table or --poly",
                self.command.name()
            ))),
        }
    }
}

/// Output of `check`: the whole `(a, b)` grid plus the summary verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub n: usize,
    pub table: Vec<usize>,
    pub passes_all: bool,
    /// Only computed for prime `n`.
    pub passes_a1: Option<bool>,
    pub linear_representation: Option<(usize, usize)>,
    pub witnesses: Vec<MuWitness>,
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    let n = config.n_or_p;
    let format = config.format;
    let ok = |stdout| Outcome {
        status: EXIT_OK,
        stdout,
    };
    match config.command {
        CommandKind::Mu => {
            let w = is_mu_integral(&config.function()?, config.a.unwrap_or(0), config.b.unwrap_or(0));
            Ok(ok(render_witnesses(format, std::slice::from_ref(&w), &w)?))
        }
        CommandKind::Check => {
            let f = config.function()?;
            let report = CheckReport {
                n,
                table: f.table().to_vec(),
                passes_all: passes_all(&f),
                passes_a1: is_prime(n).then(|| passes_a1(&f)).transpose()?,
                linear_representation: f.linear_representation(),
                witnesses: witness_grid(&f),
            };
            Ok(ok(render_check(format, &report)?))
        }
        CommandKind::Interp => {
            let poly = interpolate(&config.function()?)?;
            let text = || format!("{poly}\ndegree: {}\n", poly.degree());
            Ok(ok(render(format, &poly, text, || {
                csv_rows(&["n", "coeffs"], [[n.to_string(), join(poly.coeffs())]])
            })?))
        }
        CommandKind::Wset => {
            let w = w_set(&config.function()?)?;
            let text = || {
                format!(
                    "W_f = {{{}}} (|W_f| = {}, p = {})\n",
                    join_with(w.members(), ", "),
                    w.len(),
                    w.p()
                )
            };
            Ok(ok(render(format, &w, text, || {
                csv_rows(&["p", "members"], [[n.to_string(), join(w.members())]])
            })?))
        }
        CommandKind::VerifyTheorem => search_outcome(format, verify_theorem(n, &config.search_config())?),
        CommandKind::VerifyConjecture => search_outcome(format, verify_conjecture(n, &config.search_config())?),
        CommandKind::VerifyStothers => {
            let r = verify_stothers(n, &config.search_config())?;
            let text = || {
                let mut s = format!(
                    "p = {}: {} functions, {} violations\n",
                    r.p,
                    r.total,
                    r.violations.len()
                );
                for v in &r.violations {
                    let _ = writeln!(s, "  violation: ({})", join(v));
                }
                s
            };
            let csv = || {
                csv_rows(
                    &["p", "total", "violations", "elapsed_ms", "workers"],
                    [[
                        r.p.to_string(),
                        r.total.to_string(),
                        join_tables(&r.violations),
                        r.elapsed_ms.to_string(),
                        r.workers.to_string(),
                    ]],
                )
            };
            let status = if r.violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            };
            Ok(Outcome {
                status,
                stdout: render(format, &r, text, csv)?,
            })
        }
        CommandKind::Isometry => {
            let r = is_perfect(&config.function()?)?;
            Ok(ok(render_isometries(format, std::slice::from_ref(&r), &r)?))
        }
        CommandKind::Classify => {
            let all = classify_perfect(n, &config.search_config())?;
            Ok(ok(render_isometries(format, &all, &all)?))
        }
    }
}

/// Parses `args` (including the program name), runs, and returns
/// `(status, stdout, stderr)`.
pub fn execute<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                (code, String::new(), rendered)
            } else {
                (code, rendered, String::new())
            };
        }
    };
    match RunConfig::from_cli(cli).and_then(|c| run(&c)) {
        Ok(out) => (out.status, out.stdout, String::new()),
        Err(e) => (EXIT_USAGE, String::new(), format!("error: {e}\n")),
    }
}

fn search_outcome(format: Format, r: SearchReport) -> Result<Outcome, CliError> {
    let text = || {
        let mut s = format!(
            "n = {}: {} functions, {} passing ({} linear), {} counterexamples [{} ms, {} workers]\n",
            r.n,
            r.total_functions,
            r.passing,
            r.passing_linear,
            r.counterexamples.len(),
            r.elapsed_ms,
            r.workers
        );
        for c in &r.counterexamples {
            let _ = writeln!(s, "  counterexample: ({})", join(c));
        }
        s
    };
    let csv = || {
        csv_rows(
            &[
                "n",
                "total_functions",
                "passing",
                "passing_linear",
                "counterexamples",
                "elapsed_ms",
                "workers",
            ],
            [[
                r.n.to_string(),
                r.total_functions.to_string(),
                r.passing.to_string(),
                r.passing_linear.to_string(),
                join_tables(&r.counterexamples),
                r.elapsed_ms.to_string(),
                r.workers.to_string(),
            ]],
        )
    };
    let status = if r.counterexamples.is_empty() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    };
    Ok(Outcome {
        status,
        stdout: render(format, &r, text, csv)?,
    })
}

fn render<T: Serialize>(
    format: Format,
    value: &T,
    text: impl FnOnce() -> String,
    csv: impl FnOnce() -> Result<String, CliError>,
) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(value).map_err(|e| CliError::Output(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Text => Ok(text()),
        Format::Csv => csv(),
    }
}

fn render_witnesses<T: Serialize>(format: Format, rows: &[MuWitness], json: &T) -> Result<String, CliError> {
    let text = || {
        rows.iter()
            .map(|w| {
                format!(
                    "a={} b={}: sum = {} ; integral: {}\n",
                    w.a, w.b, w.numerator, w.integral
                )
            })
            .collect()
    };
    render(format, json, text, || {
        csv_rows(&["a", "b", "integral", "numerator"], rows.iter().map(witness_row))
    })
}

fn witness_row(w: &MuWitness) -> [String; 4] {
    let coeffs: Vec<String> = w.numerator.coeffs().iter().map(ToString::to_string).collect();
    [
        w.a.to_string(),
        w.b.to_string(),
        w.integral.to_string(),
        coeffs.join(";"),
    ]
}

fn render_check(format: Format, r: &CheckReport) -> Result<String, CliError> {
    match format {
        Format::Text => {
            let mut s = format!("f = ({}) mod {}\n", join(&r.table), r.n);
            let _ = writeln!(s, "passes_all: {}", r.passes_all);
            if let Some(a1) = r.passes_a1 {
                let _ = writeln!(s, "passes_a1: {a1}");
            }
            match r.linear_representation {
                Some((alpha, beta)) => {
                    let _ = writeln!(s, "linear representation: {alpha}x + {beta}");
                }
                None => s.push_str("linear representation: none\n"),
            }
            for w in r.witnesses.iter().filter(|w| !w.integral) {
                let _ = writeln!(s, "  fails at a={} b={}: sum = {}", w.a, w.b, w.numerator);
            }
            Ok(s)
        }
        _ => render_witnesses(format, &r.witnesses, r),
    }
}

fn render_isometries<T: Serialize>(format: Format, rows: &[IsometryReport], json: &T) -> Result<String, CliError> {
    let text = || {
        let mut s = String::new();
        for r in rows {
            let form = r
                .linear_form
                .map_or_else(|| "none".to_string(), |(a, b)| format!("{a}x + {b}"));
            let _ = writeln!(
                s,
                "p={} f=({}) integrality={} separation={} perfect={} linear_form={}",
                r.p,
                join(r.f.table()),
                r.integrality_ok,
                r.separation_ok,
                r.perfect,
                form
            );
        }
        if rows.len() != 1 {
            let _ = writeln!(s, "{} perfect isometries", rows.iter().filter(|r| r.perfect).count());
        }
        s
    };
    let csv = || {
        csv_rows(
            &["p", "f", "integrality_ok", "separation_ok", "perfect", "alpha", "beta"],
            rows.iter().map(|r| {
                let (alpha, beta) = r
                    .linear_form
                    .map_or((String::new(), String::new()), |(a, b)| (a.to_string(), b.to_string()));
                [
                    r.p.to_string(),
                    join(r.f.table()),
                    r.integrality_ok.to_string(),
                    r.separation_ok.to_string(),
                    r.perfect.to_string(),
                    alpha,
                    beta,
                ]
            }),
        )
    };
    render(format, json, text, csv)
}

fn csv_rows<R, const N: usize>(header: &[&str], rows: R) -> Result<String, CliError>
where
    R: IntoIterator<Item = [String; N]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let out = |e: csv::Error| CliError::Output(e.to_string());
    w.write_record(header).map_err(out)?;
    for row in rows {
        w.write_record(&row).map_err(out)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn join_with<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn join<T: ToString>(items: &[T]) -> String {
    join_with(items, ",")
}

fn join_tables(tables: &[Vec<usize>]) -> String {
    tables.iter().map(|t| join_with(t, ";")).collect::<Vec<_>>().join("|")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("rootavg").chain(args.iter().copied()))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        RunConfig::from_cli(cli)
    }

    #[test]
    fn parses_function_sources() {
        let c = parse(&["check", "--n", "6", "--poly", "0,1,0,1"]).unwrap();
        assert_eq!(c.function, Some(FunctionSource::Poly(vec![0, 1, 0, 1])));
        let c = parse(&["mu", "--n", "5", "--table", "0,1,4,4,1", "--a", "1", "--b", "0"]).unwrap();
        assert_eq!(c.function, Some(FunctionSource::Table(vec![0, 1, 4, 4, 1])));
        assert_eq!((c.a, c.b), (Some(1), Some(0)));
        let c = parse(&["verify-theorem", "--p", "3", "--workers", "2"]).unwrap();
        assert_eq!((c.command, c.n_or_p, c.workers), (CommandKind::VerifyTheorem, 3, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse(&["verify-theorem", "--p", "4"]).is_err());
        assert!(parse(&["interp", "--n", "6", "--table", "0,1,2,3,4,5"]).is_err());
        assert!(parse(&["check", "--n", "5", "--table", "0,x"]).is_err());
        assert!(parse(&["check", "--n", "5"]).is_err());
        assert!(parse(&["check", "--n", "5", "--table", "0", "--poly", "1"]).is_err());
        let c = parse(&["check", "--n", "5", "--table", "0,1"]).unwrap();
        assert!(matches!(run(&c), Err(CliError::Domain(Error::TableLength { .. }))));
    }

    #[test]
    fn csv_check_has_one_row_per_cell() {
        let c = parse(&["check", "--n", "3", "--table", "0,1,1", "--format", "csv"]).unwrap();
        let out = run(&c).unwrap();
        assert_eq!(out.stdout.lines().count(), 1 + 9);
        assert!(out.stdout.starts_with("a,b,integral,numerator\n0,0,true,3;0\n"));
    }

    #[test]
    fn counterexamples_set_exit_status() {
        let report = SearchReport {
            n: 4,
            total_functions: 256,
            passing: 17,
            passing_linear: 16,
            counterexamples: vec![vec![0, 0, 1, 3]],
            elapsed_ms: 0,
            workers: 1,
        };
        let out = search_outcome(Format::Csv, report.clone()).unwrap();
        assert_eq!(out.status, EXIT_COUNTEREXAMPLE);
        assert!(out.stdout.ends_with("4,256,17,16,0;0;1;3,0,1\n"), "{}", out.stdout);
        let clean = SearchReport {
            counterexamples: vec![],
            passing: 16,
            ..report
        };
        assert_eq!(search_outcome(Format::Json, clean).unwrap().status, EXIT_OK);
    }
}
