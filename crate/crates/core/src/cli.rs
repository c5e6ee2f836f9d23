//! Command-line front end: problem files, subcommands and report output.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cache::{ExactCache, ValueStore};
use crate::combinatorics::ThetaTable;
use crate::error::{Error, Result};
use crate::format_rational;
use crate::nodal::{rt_lookup, CacheStats, Calculator, ComputationReport, RTFixtureTable};
use crate::problem::ProblemSpec;
use crate::selftest::run_selftest;

/// Contents of a problem file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    n: u32,
    d: u32,
    constraints: Vec<u32>,
    #[serde(default)]
    rt_fixtures: Option<PathBuf>,
}

/// A parsed problem file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInput {
    pub spec: ProblemSpec,
    /// As written in the file; relative paths are resolved by the caller.
    pub rt_fixtures: Option<PathBuf>,
}

/// Parses `{"n": .., "d": .., "constraints": [..], "rt_fixtures": ".."}`.
/// Only the codimension range is checked here; dimension conditions depend on
/// what is being computed.
pub fn parse_problem(contents: &str) -> Result<ProblemInput> {
    let file: ProblemFile = serde_json::from_str(contents).map_err(|e| {
        Error::Parse(format!(
            "problem file, line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    Ok(ProblemInput {
        spec: ProblemSpec::new(file.n, file.d, file.constraints)?,
        rt_fixtures: file.rt_fixtures,
    })
}

#[derive(Debug, Parser)]
#[command(
    name = "nodalcount",
    version,
    about = "Exact one-nodal and rational curve counts in P^n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Problem file (JSON with n, d, constraints).
    #[arg(long, conflicts_with_all = ["n", "d", "constraints"])]
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    /// Comma-separated codimensions, e.g. 2,2,3.
    #[arg(long, value_delimiter = ',')]
    constraints: Option<Vec<u32>>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// JSON-lines file of previously computed values.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rational curves through the constraints.
    Rational {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One-nodal rational curves; needs an RT fixture file.
    Nodal {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        rt_fixtures: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The correction term, by both routes.
    Cr1 {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One-point descendant <ψ^b h^c ; constraints>.
    Descendant {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The coefficient Θ(k, m).
    Theta {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Runs the invariant suite.
    Selftest {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Serialize)]
struct ThetaReport {
    inputs: ThetaInputs,
    result: String,
}

#[derive(Debug, Serialize)]
struct ThetaInputs {
    k: u32,
    m: u32,
}

impl ProblemArgs {
    fn load(&self) -> Result<ProblemInput> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            let mut input = parse_problem(&text)?;
            input.rt_fixtures = input.rt_fixtures.map(|p| relative_to(path, p));
            return Ok(input);
        }
        match (self.n, self.d) {
            (Some(n), Some(d)) => Ok(ProblemInput {
                spec: ProblemSpec::new(n, d, self.constraints.clone().unwrap_or_default())?,
                rt_fixtures: None,
            }),
            _ => Err(Error::InvalidProblem(
                "give --input or both --n and --d".into(),
            )),
        }
    }
}

fn relative_to(problem_file: &Path, target: PathBuf) -> PathBuf {
    if target.is_absolute() {
        return target;
    }
    match problem_file.parent() {
        Some(dir) => dir.join(target),
        None => target,
    }
}

struct Session {
    calc: Calculator,
    cache: Option<Arc<ExactCache>>,
}

impl Session {
    fn open(n: u32, cache: Option<&Path>) -> Result<Self> {
        let Some(path) = cache else {
            return Ok(Self {
                calc: Calculator::new(n),
                cache: None,
            });
        };
        let cache = Arc::new(ExactCache::open(path)?);
        let store: Arc<dyn ValueStore> = cache.clone();
        Ok(Self {
            calc: Calculator::with_store(n, store),
            cache: Some(cache),
        })
    }

    fn finish(&self, mut report: ComputationReport) -> Result<ComputationReport> {
        if let Some(cache) = &self.cache {
            if let Some(e) = cache.take_write_error() {
                return Err(Error::Io(e));
            }
            report.cache = cache.stats();
        } else {
            report.cache = CacheStats::default();
        }
        Ok(report)
    }
}

fn render_report(report: &ComputationReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Text => {
            let mut out = format!("{}\n", report.result);
            if let (Some(eta), Some(theta)) = (&report.cr1_eta, &report.cr1_theta) {
                out += &format!("cr1 (eta route)   {eta}\ncr1 (theta route) {theta}\n");
                for t in &report.terms {
                    out += &format!("  k={}: {} / {}\n", t.k, t.eta_route, t.theta_route);
                }
            }
            if let Some(rt) = &report.rt_value {
                out += &format!("rt                {rt}\n");
            }
            out
        }
    }
}

fn execute(command: Command) -> Result<(String, bool)> {
    match command {
        Command::Theta { k, m, format } => {
            if k == 0 {
                return Err(Error::InvalidProblem("Θ(k, m) needs k >= 1".into()));
            }
            let value = ThetaTable::new().theta(k, m);
            let text = match format {
                Format::Text => format!("{}\n", format_rational(&value)),
                Format::Json => {
                    let report = ThetaReport {
                        inputs: ThetaInputs { k, m },
                        result: format_rational(&value),
                    };
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
            };
            Ok((text, true))
        }
        Command::Selftest { format } => {
            let report = run_selftest();
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            Ok((text, report.passed))
        }
        Command::Rational { problem, output } => {
            let input = problem.load()?;
            let session = Session::open(input.spec.n, output.cache.as_deref())?;
            let value = session.calc.count_rational(&input.spec)?;
            let report = session.finish(ComputationReport::new(&input.spec, &value))?;
            Ok((render_report(&report, output.format), true))
        }
        Command::Descendant {
            problem,
            b,
            c,
            output,
        } => {
            let input = problem.load()?;
            let session = Session::open(input.spec.n, output.cache.as_deref())?;
            let value = session.calc.descendant(&input.spec, b, c)?;
            let mut report = ComputationReport::new(&input.spec, &value);
            report.inputs.b = Some(b);
            report.inputs.c = Some(c);
            let report = session.finish(report)?;
            Ok((render_report(&report, output.format), true))
        }
        Command::Cr1 { problem, output } => {
            let input = problem.load()?;
            let session = Session::open(input.spec.n, output.cache.as_deref())?;
            let values = session.calc.cr1(&input.spec)?;
            let report = session
                .finish(ComputationReport::new(&input.spec, &values.eta).with_cr1(&values))?;
            Ok((render_report(&report, output.format), true))
        }
        Command::Nodal {
            problem,
            rt_fixtures,
            output,
        } => {
            let input = problem.load()?;
            let path = rt_fixtures.or(input.rt_fixtures).ok_or_else(|| {
                Error::InvalidProblem(
                    "nodal counts need --rt-fixtures or an rt_fixtures entry".into(),
                )
            })?;
            let fixtures = RTFixtureTable::load(&path)?;
            let spec = &input.spec;
            let rt = rt_lookup(spec, &fixtures)?;
            let session = Session::open(spec.n, output.cache.as_deref())?;
            let values = session.calc.cr1(spec)?;
            let count = crate::nodal::nodal_from_parts(spec, &rt, &values.eta)?;
            let mut report = ComputationReport::new(spec, &count).with_cr1(&values);
            report.rt_value = Some(rt.to_string());
            report.nodal_count = Some(format_rational(&count));
            let report = session.finish(report)?;
            Ok((render_report(&report, output.format), true))
        }
    }
}

/// Runs the command line `argv` (program name first), writing the report to
/// `out` and diagnostics to `err`. Returns the process exit code: 0 on
/// success, 1 on a failed computation or selftest, 2 on a usage error.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, passed)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
