//! Command-line front end: computes spaces of forms vanishing on an ideal,
//! analyzes the distribution a form defines, and replays the worked examples
//! as self-checking scenarios.

pub mod commands;
pub mod golden;
pub mod scenario;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use syzforms::groebner::Ideal;
use syzforms::{Error, OrderKind};

pub use golden::{run_example, ExampleOptions, EXAMPLE_NAMES};
pub use scenario::{Assertion, Inputs, ScenarioResult};

pub const EXIT_OK: i32 = 0;
/// A scenario assertion or an oracle comparison failed.
pub const EXIT_FAILED: i32 = 1;
/// Unreadable or invalid input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "syzforms", version, about = "Differential forms vanishing on projective schemes, via syzygies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Monomial order for reported Gröbner bases.
    #[arg(long, global = true, value_enum, default_value_t = Order::Degrevlex)]
    pub order: Order,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest `d` swept by `forms` when `--d` is absent (default: regularity + 2).
    #[arg(long, global = true)]
    pub degree_bound: Option<i64>,
    /// Cross-check form spaces against the brute-force linear solver.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Print JSON.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Print text (the default).
    #[arg(long, global = true)]
    pub text: bool,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Degrevlex,
    Deglex,
    Lex,
}

impl From<Order> for OrderKind {
    fn from(o: Order) -> Self {
        match o {
            Order::Degrevlex => OrderKind::Degrevlex,
            Order::Deglex => OrderKind::Deglex,
            Order::Lex => OrderKind::Lex,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basis of the p-forms of degree d vanishing on the scheme of an ideal file.
    Forms {
        ideal: PathBuf,
        #[arg(long)]
        p: usize,
        /// Single degree; omit to sweep 0..=degree bound.
        #[arg(long)]
        d: Option<i64>,
    },
    /// Singular scheme, decomposability, integrability, Chern classes and cohomology of a form.
    Analyze {
        /// Form file (`vars: N` header, then the form).
        form: Option<PathBuf>,
        /// Ideal file; with `--random` the form is drawn from it, otherwise the singular scheme is compared with it.
        #[arg(long)]
        ideal: Option<PathBuf>,
        /// Draw a random element of the (p, d) space of the ideal.
        #[arg(long, num_args = 2, value_names = ["P", "D"], requires = "ideal", conflicts_with = "form")]
        random: Option<Vec<i64>>,
        /// Twist of the conormal sheaf (default: the degree of the distribution).
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<i64>,
        /// `I:T` requests h^I(F(T)); repeatable. Defaults to 1:-2.
        #[arg(long = "cohomology", value_name = "I:T", allow_hyphen_values = true)]
        cohomology: Vec<String>,
    },
    /// Run a worked example end-to-end and check its expected outcomes.
    Example {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(EXAMPLE_NAMES))]
        name: String,
    },
    /// Betti table, regularity and Gröbner basis of an ideal file.
    #[command(alias = "resolve")]
    Betti {
        ideal: PathBuf,
        /// Include the matrices of the minimal resolution.
        #[arg(long)]
        dump: bool,
    },
}

/// What a command produced: exit code, text for stdout, and the JSON document.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub json: Option<Value>,
}

fn input_error(e: &Error) -> bool {
    !matches!(
        e,
        Error::NotMinimal
            | Error::NotAComplex
            | Error::NotLds
            | Error::NonIntegralChern(_)
            | Error::RetryBudgetExhausted(_)
    )
}

fn fail(e: Error) -> Outcome {
    let code = if input_error(&e) { EXIT_INPUT } else { EXIT_FAILED };
    Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n"), json: None }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn read_ideal(path: &PathBuf) -> Result<Ideal, Error> {
    Ideal::parse(&read(path)?)
}

fn parse_cohomology(request: &str) -> Result<(usize, i64), Error> {
    let bad = || Error::InvalidInput(format!("cohomology request `{request}` is not of the form I:T"));
    let (i, t) = request.split_once(':').ok_or_else(bad)?;
    Ok((i.trim().parse().map_err(|_| bad())?, t.trim().parse().map_err(|_| bad())?))
}

/// Runs a parsed command line. Writes `--out` but never prints.
pub fn execute(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let result: Result<(Value, String, bool), Error> = match &cli.command {
        Command::Forms { ideal, p, d } => read_ideal(ideal).and_then(|i| {
            let opts = commands::FormsOptions { p: *p, d: *d, degree_bound: g.degree_bound, oracle: g.oracle };
            let (v, ok) = commands::forms(&i, &opts)?;
            let text = commands::forms_text(&v);
            Ok((v, text, ok))
        }),
        Command::Analyze { form, ideal, random, twist, cohomology } => (|| {
            let ideal = ideal.as_ref().map(read_ideal).transpose()?;
            let omega = match (form, random) {
                (_, Some(pd)) => {
                    let p = usize::try_from(pd[0]).map_err(|_| Error::InvalidInput("p must be positive".into()))?;
                    commands::random_form(ideal.as_ref().expect("clap enforces --ideal"), p, pd[1], g.seed)?
                }
                (Some(path), None) => commands::parse_form_file(&read(path)?)?,
                (None, None) => return Err(Error::InvalidInput("give a form file or --random P D".into())),
            };
            let requests: Vec<String> =
                if cohomology.is_empty() { vec!["1:-2".to_string()] } else { cohomology.clone() };
            let opts = commands::AnalyzeOptions {
                twist: *twist,
                cohomology: requests.iter().map(|s| parse_cohomology(s)).collect::<Result<_, _>>()?,
                ideal,
            };
            let v = commands::analyze(&omega, &opts)?;
            let text = commands::analyze_text(&v);
            Ok((v, text, true))
        })(),
        Command::Example { name } => run_example(name, &ExampleOptions { seed: g.seed, oracle: g.oracle })
            .map(|r| (r.to_json(), r.to_text(), r.passed())),
        Command::Betti { ideal, dump } => read_ideal(ideal).and_then(|i| {
            let v = commands::betti(&i, g.order.into(), *dump)?;
            let text = commands::betti_text(&v);
            Ok((v, text, true))
        }),
    };
    let (json, text, ok) = match result {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let rendered = serde_json::to_string_pretty(&json).expect("serializable") + "\n";
    if let Some(path) = &g.out {
        if let Err(e) = std::fs::write(path, &rendered) {
            return fail(Error::InvalidInput(format!("cannot write {}: {e}", path.display())));
        }
    }
    Outcome {
        code: if ok { EXIT_OK } else { EXIT_FAILED },
        stdout: if g.json { rendered } else { text },
        stderr: if ok { String::new() } else { "error: some checks failed\n".into() },
        json: Some(json),
    }
}
