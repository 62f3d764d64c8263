//! Command-line front end. [`run`] does all the work and returns the text
//! and exit code, so the binary is a thin wrapper and tests can call it directly.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::automata::{analyze, parse_dfa, AnalysisOptions, DEFAULT_SIMON_CAP, DEFAULT_SUBSET_CAP};
use crate::error::Error;
use crate::semigroup::{close_with_cap, DEFAULT_CLOSURE_CAP};
use crate::transform::{emit_transformation_list, parse_transformation_list};
use crate::verify::{bounds_report, bounds_text, bounds_tsv, BoundsOptions, DEFAULT_BRUTE_CAP};
use crate::witness::{WitnessBundle, WitnessKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const ANALYZE_ABOUT: &str = "Analyze the language of a DFA.

TSV columns, in order: reachable_states, quotient_complexity, \
syntactic_complexity, monoid_size, partially_ordered, r_trivial, l_trivial, \
j_trivial, h_trivial, simon_component_ok";

const BOUNDS_ABOUT: &str = "Print closed-form bounds next to the values the witnesses reach.

TSV columns, in order: n, r_trivial_bound, j_trivial_bound, floor_e_form, \
reversal_bound, witnessed_sigma_r, witnessed_sigma_j, witnessed_rev, brute_max_j. \
A skipped cell is written as `-`.";

#[derive(Debug, Parser)]
#[command(name = "greenbench", version, about = "Syntactic complexity workbench for R- and J-trivial languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// DFA with n! syntactic complexity and an R-trivial language
    Rtrivial,
    /// DFA with n states whose reverse needs 2^(n-1) states
    JtrivialDfa,
    /// generators of the largest J-trivial monoid
    JtrivialGens,
    /// every element of the largest J-trivial monoid
    JtrivialMonoid,
}

impl From<Kind> for WitnessKind {
    fn from(kind: Kind) -> Self {
        match kind {
            Kind::Rtrivial => WitnessKind::RTrivialDfa,
            Kind::JtrivialDfa => WitnessKind::JTrivialDfa,
            Kind::JtrivialGens => WitnessKind::JTrivialGenerators,
            Kind::JtrivialMonoid => WitnessKind::JTrivialMonoid,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(about = "Analyze the language of a DFA", long_about = ANALYZE_ABOUT)]
    Analyze {
        file: PathBuf,
        /// Largest alphabet for the subset-by-subset component check
        #[arg(long, default_value_t = DEFAULT_SIMON_CAP)]
        simon_cap: usize,
        /// Largest transition semigroup that will be generated
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        closure_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit a witness automaton or monoid
    Witness {
        #[arg(value_enum)]
        kind: Kind,
        /// Number of states
        #[arg(short = 'n')]
        n: usize,
        /// Write to this file instead of standard output
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Print the quotient complexity of a DFA's language and of its reverse
    Reverse {
        file: PathBuf,
        /// Largest number of subset-states the determinization may create
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        subset_cap: usize,
    },
    #[command(about = "Print bounds next to witnessed values", long_about = BOUNDS_ABOUT)]
    Bounds {
        #[arg(long)]
        max_n: usize,
        /// Largest n for the exhaustive submonoid search
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        brute_max_n: usize,
        /// Allow --brute-max-n above its default cap
        #[arg(long)]
        force_brute: bool,
        /// Largest n whose witness closures are computed
        #[arg(long, default_value_t = 8)]
        closure_max_n: usize,
        /// Largest n whose reversal is determinized
        #[arg(long, default_value_t = 16)]
        reversal_max_n: usize,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        closure_cap: usize,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        subset_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Transformation semigroup operations
    Semigroup {
        #[command(subcommand)]
        action: SemigroupAction,
    },
}

#[derive(Debug, Subcommand)]
enum SemigroupAction {
    /// Generate the semigroup of a transformation list and print its size
    Close {
        file: PathBuf,
        /// Also print every element in canonical order
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        closure_cap: usize,
    },
}

/// What an invocation printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Violations(String, Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::Invariant(_) => EXIT_INVARIANT,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(cli.command) {
        Ok(stdout) => Outcome::ok(stdout),
        Err(Failure::Lib(e)) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
        Err(Failure::Io(path, e)) => {
            Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) }
        }
        Err(Failure::Violations(stdout, lines)) => Outcome {
            code: EXIT_INVARIANT,
            stdout,
            stderr: lines.iter().map(|l| format!("invariant violated: {l}\n")).collect(),
        },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Analyze { file, simon_cap, closure_cap, format } => {
            let dfa = parse_dfa(&read(&file)?)?;
            let report = analyze(&dfa, &AnalysisOptions { simon_cap, closure_cap })?;
            Ok(match format {
                Format::Text => report.to_string(),
                Format::Tsv => format!("{}\n", report.to_tsv_row()),
            })
        }
        Command::Witness { kind, n, output } => {
            let text = WitnessBundle::build(kind.into(), n)?.emit();
            match output {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| Failure::Io(path, e))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Reverse { file, subset_cap } => {
            let dfa = parse_dfa(&read(&file)?)?;
            let kappa = dfa.quotient_complexity();
            let reversed = dfa.reversal_complexity_with_cap(subset_cap)?;
            Ok(format!("quotient_complexity: {kappa}\nreversal_complexity: {reversed}\n"))
        }
        Command::Bounds {
            max_n,
            brute_max_n,
            force_brute,
            closure_max_n,
            reversal_max_n,
            closure_cap,
            subset_cap,
            format,
        } => {
            let options = BoundsOptions {
                sigma_r_max_n: closure_max_n,
                sigma_j_max_n: closure_max_n,
                reversal_max_n,
                brute_max_n,
                force_brute,
                closure_cap,
                subset_cap,
            };
            let rows = bounds_report(max_n, &options)?;
            let text = match format {
                Format::Text => bounds_text(&rows),
                Format::Tsv => bounds_tsv(&rows),
            };
            let violations: Vec<String> = rows.iter().flat_map(|r| r.violations()).collect();
            if violations.is_empty() {
                Ok(text)
            } else {
                Err(Failure::Violations(text, violations))
            }
        }
        Command::Semigroup { action: SemigroupAction::Close { file, list, closure_cap } } => {
            let parsed = parse_transformation_list(&read(&file)?)?;
            let semigroup = close_with_cap(&parsed.items, closure_cap)?;
            if let Some((x, y)) = semigroup.closure_violation() {
                return Err(Error::Invariant(format!("{x}·{y} escapes the computed closure")).into());
            }
            Ok(if list {
                format!("# size {}\n{}", semigroup.len(), emit_transformation_list(semigroup.n(), semigroup.elements()))
            } else {
                format!("size: {}\n", semigroup.len())
            })
        }
    }
}
