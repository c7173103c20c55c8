//! Command-line front end for `lukstable`.
//!
//! [`run`] does all the work and returns the outcome instead of printing, so
//! the binary is a thin wrapper and tests can drive commands in-process.

#![forbid(unsafe_code)]

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lukstable::random::InstanceLimits;
use lukstable::{
    check_consequence_rho, ddagger, estar, eval_luk, find_countermodel, nnf, parse_bool, parse_luk,
    reduce, stable_bruteforce, Budget, ConsequenceVerdict, Error, Formula, InstanceFile,
    Rational01, StabilityOracle, StableInstance, Valuation, VarId,
};
use serde_json::{json, Value};

pub const EXIT_AFFIRMATIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn json(exit_code: i32, value: &Value) -> Self {
        Self {
            exit_code,
            stdout: format!("{value}\n"),
            stderr: String::new(),
        }
    }

    fn with_stderr(mut self, stderr: String) -> Self {
        self.stderr = stderr;
        self
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lukstable",
    version,
    about = "Stable consequence via Łukasiewicz logic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula and print its minimal and canonical forms.
    Parse(FormulaArg),
    /// Evaluate a formula at a point.
    Eval {
        #[command(flatten)]
        formula: FormulaArg,
        /// Assignment such as `X1=1/3`; repeat or comma-separate.
        #[arg(long = "at", value_delimiter = ',')]
        at: Vec<String>,
    },
    /// Negation normal form of a boolean formula.
    Nnf { formula: String },
    /// Łukasiewicz translation of a boolean formula.
    Ddagger { formula: String },
    /// Reduce a stable-consequence instance to a pair of Łukasiewicz formulas.
    Reduce {
        instance: PathBuf,
        /// Also print a size summary on stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Decide stability by enumeration.
    CheckStable {
        instance: PathBuf,
        #[arg(long, default_value_t = Budget::DEFAULT_STEPS)]
        budget: u64,
    },
    /// Decide whether phi follows from theta.
    CheckConsequence(ConsequenceArgs),
    /// Largest number of dubious premises that can be dropped.
    Estar {
        #[arg(long = "delta")]
        delta: Vec<String>,
        #[arg(long = "nabla", required = true)]
        nabla: Vec<String>,
        #[arg(long)]
        omega: String,
        #[arg(long, value_enum, default_value_t = OracleArg::Reduction)]
        oracle: OracleArg,
        #[arg(long, default_value_t = Budget::DEFAULT_STEPS)]
        budget: u64,
    },
    /// Compare brute-force stability with the reduction on random instances.
    Harness {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = InstanceLimits::default().max_k)]
        max_k: usize,
        #[arg(long, default_value_t = InstanceLimits::default().max_u)]
        max_u: usize,
        #[arg(long, default_value_t = InstanceLimits::default().max_n)]
        max_n: u32,
        #[arg(long, default_value_t = InstanceLimits::default().max_size)]
        max_size: usize,
        #[arg(long, default_value_t = Budget::DEFAULT_STEPS)]
        budget: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct FormulaArg {
    #[arg(long = "bool")]
    boolean: Option<String>,
    #[arg(long)]
    luk: Option<String>,
}

#[derive(Debug, Args)]
struct ConsequenceArgs {
    /// Instance file; checks its reduction on the grid.
    #[arg(conflicts_with_all = ["theta", "phi"], required_unless_present_all = ["theta", "phi"])]
    instance: Option<PathBuf>,
    #[arg(long, requires = "phi")]
    theta: Option<String>,
    #[arg(long, requires = "theta")]
    phi: Option<String>,
    #[arg(long, default_value_t = 12)]
    max_denominator: u64,
    #[arg(long, default_value_t = Budget::DEFAULT_STEPS)]
    budget: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleArg {
    Reduction,
    BruteForce,
}

impl From<OracleArg> for StabilityOracle {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Reduction => StabilityOracle::Reduction,
            OracleArg::BruteForce => StabilityOracle::BruteForce,
        }
    }
}

/// Failure of a command, mapped to exit code 2 or 3 with a JSON error object.
#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Json(PathBuf, serde_json::Error),
    Argument(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<lukstable::ParseError> for Failure {
    fn from(e: lukstable::ParseError) -> Self {
        Failure::Lib(Error::Parse(e))
    }
}

impl Failure {
    fn outcome(&self) -> CommandOutcome {
        let (code, error) = match self {
            Failure::Lib(Error::Parse(p)) => (
                EXIT_USAGE,
                json!({"kind": "parse", "message": p.message, "offset": p.offset}),
            ),
            Failure::Lib(Error::BudgetExceeded { needed, budget }) => (
                EXIT_BUDGET,
                json!({"kind": "budget_exceeded", "message": self.to_string(), "needed": needed.to_string(), "budget": budget}),
            ),
            Failure::Lib(_) => (
                EXIT_USAGE,
                json!({"kind": "invalid_input", "message": self.to_string()}),
            ),
            Failure::Io(..) => (
                EXIT_USAGE,
                json!({"kind": "io", "message": self.to_string()}),
            ),
            Failure::Json(..) => (
                EXIT_USAGE,
                json!({"kind": "json", "message": self.to_string()}),
            ),
            Failure::Argument(_) => (
                EXIT_USAGE,
                json!({"kind": "argument", "message": self.to_string()}),
            ),
        };
        CommandOutcome::json(code, &json!({ "error": error }))
            .with_stderr(format!("error: {self}\n"))
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Json(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Argument(m) => f.write_str(m),
        }
    }
}

type CmdResult = Result<CommandOutcome, Failure>;

/// Runs one command line. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if !e.use_stderr() {
                // --help and --version
                return CommandOutcome {
                    exit_code: EXIT_AFFIRMATIVE,
                    stdout: rendered,
                    stderr: String::new(),
                };
            }
            let first = rendered
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ");
            return CommandOutcome::json(
                EXIT_USAGE,
                &json!({"error": {"kind": "usage", "message": first}}),
            )
            .with_stderr(rendered);
        }
    };
    dispatch(cli.command).unwrap_or_else(|f| f.outcome())
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Parse(f) => parse_cmd(&f),
        Command::Eval { formula, at } => eval_cmd(&formula, &at),
        Command::Nnf { formula } => Ok(formula_doc(&nnf(&parse_bool(&formula)?))),
        Command::Ddagger { formula } => Ok(formula_doc(&ddagger(&parse_bool(&formula)?))),
        Command::Reduce { instance, stats } => reduce_cmd(&instance, stats),
        Command::CheckStable { instance, budget } => {
            let verdict = stable_bruteforce(&load_instance(&instance)?, Budget::new(budget))?;
            let code = if verdict.stable {
                EXIT_AFFIRMATIVE
            } else {
                EXIT_NEGATIVE
            };
            Ok(CommandOutcome::json(code, &to_value(&verdict)))
        }
        Command::CheckConsequence(args) => consequence_cmd(&args),
        Command::Estar {
            delta,
            nabla,
            omega,
            oracle,
            budget,
        } => {
            let delta = delta
                .iter()
                .map(|s| parse_bool(s))
                .collect::<Result<Vec<_>, _>>()?;
            let nabla = nabla
                .iter()
                .map(|s| parse_bool(s))
                .collect::<Result<Vec<_>, _>>()?;
            let omega = parse_bool(&omega)?;
            let r = estar(&delta, &nabla, &omega, oracle.into(), Budget::new(budget))?;
            let code = if r.no_entailment() {
                EXIT_NEGATIVE
            } else {
                EXIT_AFFIRMATIVE
            };
            Ok(CommandOutcome::json(code, &to_value(&r)))
        }
        Command::Harness {
            seed,
            trials,
            max_k,
            max_u,
            max_n,
            max_size,
            budget,
        } => {
            let limits = InstanceLimits {
                max_k,
                max_u,
                max_n,
                max_size,
            };
            if max_k == 0 || max_u == 0 || max_n == 0 {
                return Err(Failure::Argument(
                    "--max-k, --max-u and --max-n must be at least 1".into(),
                ));
            }
            let report = lukstable::harness::equivalence_harness(
                seed,
                trials,
                &limits,
                Budget::new(budget),
            )?;
            let bad = report.disagreements().count();
            Ok(CommandOutcome {
                exit_code: if bad == 0 {
                    EXIT_AFFIRMATIVE
                } else {
                    EXIT_NEGATIVE
                },
                stdout: report.to_json_lines(),
                stderr: format!("{trials} trials, {bad} disagreements\n"),
            })
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn formula_doc<F: Formula + std::fmt::Display>(f: &F) -> CommandOutcome {
    CommandOutcome::json(EXIT_AFFIRMATIVE, &json!({ "formula": f.to_string() }))
}

fn parse_cmd(arg: &FormulaArg) -> CmdResult {
    fn describe<F: Formula + std::fmt::Display>(dialect: &str, f: &F) -> Value {
        let len = f.length();
        json!({
            "dialect": dialect,
            "formula": f.to_string(),
            "canonical": f.canonical(),
            "vars": f.vars().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "token_count": len.token_count,
            "paper_symbol_count": len.paper_symbol_count,
        })
    }
    let doc = match (&arg.boolean, &arg.luk) {
        (Some(text), _) => describe("bool", &parse_bool(text)?),
        (_, Some(text)) => describe("luk", &parse_luk(text)?),
        _ => unreachable!("clap enforces exactly one"),
    };
    Ok(CommandOutcome::json(EXIT_AFFIRMATIVE, &doc))
}

fn parse_assignment(items: &[String]) -> Result<Valuation, Failure> {
    let mut x = Valuation::new();
    for item in items {
        let bad = || Failure::Argument(format!("expected Xi=p/q, got {item:?}"));
        let (var, value) = item.split_once('=').ok_or_else(bad)?;
        let index: u32 = var
            .trim()
            .strip_prefix('X')
            .and_then(|i| i.parse().ok())
            .ok_or_else(bad)?;
        let value: Rational01 = value.trim().parse()?;
        x.set(VarId::new(index).ok_or_else(bad)?, value);
    }
    Ok(x)
}

fn eval_cmd(arg: &FormulaArg, at: &[String]) -> CmdResult {
    let x = parse_assignment(at)?;
    let value = match (&arg.boolean, &arg.luk) {
        (Some(text), _) => {
            let f = parse_bool(text)?;
            if let Some((v, q)) = x.iter().find(|(_, q)| !q.is_zero() && !q.is_one()) {
                return Err(Failure::Argument(format!(
                    "boolean value of {v} must be 0 or 1, got {q}"
                )));
            }
            json!(eval_luk(&f.embed(), &x)?.is_one())
        }
        (_, Some(text)) => json!(eval_luk(&parse_luk(text)?, &x)?.to_string()),
        _ => unreachable!("clap enforces exactly one"),
    };
    Ok(CommandOutcome::json(
        EXIT_AFFIRMATIVE,
        &json!({ "value": value }),
    ))
}

fn load_instance(path: &Path) -> Result<StableInstance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))?;
    let file: InstanceFile =
        serde_json::from_str(&text).map_err(|e| Failure::Json(path.to_owned(), e))?;
    Ok(file.to_instance()?)
}

fn reduce_cmd(path: &Path, stats: bool) -> CmdResult {
    let r = reduce(&load_instance(path)?)?;
    let mut out = CommandOutcome::json(EXIT_AFFIRMATIVE, &to_value(&r.to_json()));
    if stats {
        let s = &r.stats;
        let mut text = String::new();
        writeln!(text, "instance length: {}", s.instance_length).unwrap();
        writeln!(text, "output length: {}", s.output_length).unwrap();
        writeln!(text, "ratio / (n*|I|): {} (n = {})", s.ratio, s.n).unwrap();
        out.stderr = text;
    }
    Ok(out)
}

fn consequence_cmd(args: &ConsequenceArgs) -> CmdResult {
    let budget = Budget::new(args.budget);
    let verdict = match (&args.instance, &args.theta, &args.phi) {
        (Some(path), _, _) => check_consequence_rho(&reduce(&load_instance(path)?)?, budget)?,
        (None, Some(theta), Some(phi)) => find_countermodel(
            &parse_luk(theta)?,
            &parse_luk(phi)?,
            args.max_denominator,
            budget,
        )?,
        _ => unreachable!("clap enforces an instance or both formulas"),
    };
    let code = match verdict {
        ConsequenceVerdict::Consequence { .. } => EXIT_AFFIRMATIVE,
        ConsequenceVerdict::Countermodel { .. } => EXIT_NEGATIVE,
        ConsequenceVerdict::InconclusiveAtBound { .. } => EXIT_BUDGET,
    };
    Ok(CommandOutcome::json(code, &to_value(&verdict)))
}
