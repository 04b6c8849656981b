//! The `sgp` command line.
//!
//! ```text
//! sgp compile FILE [-o OUT]
//! sgp validate FILE [--deep B]
//! sgp normalize FILE WORD
//! sgp equal FILE U V
//! sgp member FILE --gens NF,NF,... --query NF [--window W]
//! sgp selfcheck FILE --bound B
//! ```
//!
//! Exit codes: 0 success or a positive answer, 1 a negative answer
//! (`not-equal`, `not-member`), 2 bad input, 3 failed validation or oracle
//! check.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::element::{Letter, Word};
use crate::error::Error;
use crate::membership;
use crate::oracle;
use crate::presentation::{self, compile, ActionTable, Presentation, RawPresentation};
use crate::wordproblem;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sgp",
    version,
    about = "Word problem and subsemigroup membership for unions of monogenic semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile a raw presentation into an action table.
    Compile {
        file: PathBuf,
        /// Write the table here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a table for structural problems.
    Validate {
        file: PathBuf,
        /// Also check associativity for exponents up to this bound.
        #[arg(long)]
        deep: Option<u64>,
    },
    /// Print the normal form of a word.
    Normalize { file: PathBuf, word: String },
    /// Decide whether two words are equal.
    Equal { file: PathBuf, u: String, v: String },
    /// Decide membership in a finitely generated subsemigroup.
    Member {
        file: PathBuf,
        /// Comma-separated generators, e.g. "a^3,b^2".
        #[arg(long)]
        gens: String,
        #[arg(long)]
        query: String,
        /// Sampling limit for action profiles.
        #[arg(long)]
        window: Option<u64>,
    },
    /// Run the brute-force oracle checks.
    Selfcheck {
        file: PathBuf,
        #[arg(long)]
        bound: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn answer(yes: bool, stdout: String) -> Self {
        Outcome {
            code: if yes { EXIT_OK } else { EXIT_NO },
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn input_error(e: impl std::fmt::Display) -> Outcome {
    Outcome::failure(EXIT_INPUT, format!("error: {e}\n"))
}

fn read(path: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<(ActionTable, Option<RawPresentation>), Outcome> {
    let text = read(path)?;
    match presentation::parse_presentation(&text).map_err(input_error)? {
        Presentation::Raw(raw) => {
            let table = compile(&raw).map_err(|e| match e {
                Error::Inconsistent { .. } => Outcome::failure(EXIT_CHECK, format!("error: {e}\n")),
                e => input_error(e),
            })?;
            Ok((table, Some(raw)))
        }
        Presentation::Compiled(table) => Ok((table, None)),
    }
}

/// Runs `sgp` with `argv` (program name first).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::failure(code, text)
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(|o| o)
}

fn dispatch(command: Command) -> Result<Outcome, Outcome> {
    match command {
        Command::Compile { file, output } => {
            let (table, _) = load(&file)?;
            let text = table.to_sgp_string();
            match output {
                Some(out) => {
                    std::fs::write(&out, text)
                        .map_err(|e| input_error(format!("{}: {e}", out.display())))?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Validate { file, deep } => {
            let (table, _) = load(&file)?;
            let diagnostics = presentation::validate_with(&table, deep);
            if diagnostics.is_empty() {
                Ok(Outcome::ok("valid\n".into()))
            } else {
                Ok(Outcome {
                    code: EXIT_CHECK,
                    stdout: String::new(),
                    stderr: diagnostics.to_string(),
                })
            }
        }
        Command::Normalize { file, word } => {
            let (table, _) = load(&file)?;
            let w = table.alphabet().parse_word(&word).map_err(input_error)?;
            let nf = wordproblem::normalize(&table, &w).map_err(input_error)?;
            Ok(Outcome::ok(format!(
                "{}\n",
                table.alphabet().format_nf(&nf)
            )))
        }
        Command::Equal { file, u, v } => {
            let (table, _) = load(&file)?;
            let u = table.alphabet().parse_word(&u).map_err(input_error)?;
            let v = table.alphabet().parse_word(&v).map_err(input_error)?;
            let eq = wordproblem::equal(&table, &u, &v).map_err(input_error)?;
            Ok(Outcome::answer(
                eq,
                if eq { "equal\n" } else { "not-equal\n" }.into(),
            ))
        }
        Command::Member {
            file,
            gens,
            query,
            window,
        } => {
            let (table, _) = load(&file)?;
            let alphabet = table.alphabet();
            let gens = alphabet.parse_normal_forms(&gens).map_err(input_error)?;
            let x = alphabet.parse_normal_form(&query).map_err(input_error)?;
            let window = window.unwrap_or_else(|| membership::default_window(&table));
            let state = membership::saturate_with(&table, &gens, window).map_err(|e| match e {
                Error::WindowExhausted { .. } | Error::Inconsistent { .. } => {
                    Outcome::failure(EXIT_CHECK, format!("error: {e}\n"))
                }
                e => input_error(e),
            })?;
            let yes = membership::is_member(&state, &x);
            let triples: Vec<String> = state
                .copies()
                .map(|(l, c)| format!("{}: {}", alphabet.name(l), c.triple()))
                .collect();
            let stdout = format!(
                "{}\n{}\n",
                if yes { "member" } else { "not-member" },
                triples.join("  ")
            );
            Ok(Outcome::answer(yes, stdout))
        }
        Command::Selfcheck { file, bound } => {
            let (table, raw) = load(&file)?;
            selfcheck(&table, raw.as_ref(), bound)
        }
    }
}

/// Words `x^i y^j z^l` over all letter triples, exponents up to `bound`.
fn short_words(table: &ActionTable, bound: u64) -> Vec<Word> {
    let letters: Vec<Letter> = table.alphabet().letters().collect();
    let mut words = Vec::new();
    for &x in &letters {
        for &y in &letters {
            for &z in &letters {
                for i in 1..=bound {
                    for j in 1..=bound {
                        for l in 1..=bound {
                            words.push(
                                Word::from_runs(&[(x, i), (y, j), (z, l)])
                                    .expect("positive exponents"),
                            );
                        }
                    }
                }
            }
        }
    }
    words
}

fn selfcheck(
    table: &ActionTable,
    raw: Option<&RawPresentation>,
    bound: u64,
) -> Result<Outcome, Outcome> {
    if bound == 0 {
        return Err(input_error("--bound must be at least 1"));
    }
    let alphabet = table.alphabet();
    let mut report = String::new();
    let mut failed = false;

    let diagnostics = presentation::validate(table);
    if diagnostics.is_empty() {
        report.push_str("ok validate\n");
    } else {
        failed = true;
        let _ = write!(report, "FAIL validate\n{diagnostics}");
    }

    match oracle::check_associativity(table, bound) {
        None => {
            let _ = writeln!(report, "ok associativity (exponents <= {bound})");
        }
        Some((x, y, z)) => {
            failed = true;
            let _ = writeln!(
                report,
                "FAIL associativity: ({})({})({})",
                alphabet.format_nf(&x),
                alphabet.format_nf(&y),
                alphabet.format_nf(&z)
            );
        }
    }

    match oracle::check_disjointness(table, bound) {
        None => {
            let _ = writeln!(report, "ok disjointness (exponents <= {bound})");
        }
        Some((u, v)) => {
            failed = true;
            let _ = writeln!(
                report,
                "FAIL disjointness: {} = {}",
                alphabet.format_nf(&u),
                alphabet.format_nf(&v)
            );
        }
    }

    if let Some(raw) = raw {
        let rewriter = oracle::Rewriter::new(raw).map_err(input_error)?;
        let mut compared = 0usize;
        let mut mismatch = None;
        for w in short_words(table, bound) {
            let by_rewriting = match rewriter.normalize(&w) {
                Ok(nf) => nf,
                Err(Error::BoundExceeded { .. }) => continue,
                Err(e) => return Err(input_error(e)),
            };
            compared += 1;
            match wordproblem::normalize(table, &w) {
                Ok(nf) if nf == by_rewriting => {}
                _ => {
                    mismatch = Some(w);
                    break;
                }
            }
        }
        match mismatch {
            None => {
                let _ = writeln!(report, "ok rewriting agrees on {compared} words");
            }
            Some(w) => {
                failed = true;
                let _ = writeln!(
                    report,
                    "FAIL rewriting disagrees on {}",
                    alphabet.format_word(&w)
                );
            }
        }
    }

    Ok(Outcome {
        code: if failed { EXIT_CHECK } else { EXIT_OK },
        stdout: report,
        stderr: String::new(),
    })
}
