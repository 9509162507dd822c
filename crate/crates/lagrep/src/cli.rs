//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lagrep_core::alexander::{self, TwoStrandOp};
use lagrep_core::burau;
use lagrep_core::tanglecat::{self, Token};
use lagrep_core::LambdaMatrix;
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::corpus;
use crate::error::{CliError, CliResult};
use crate::json::{self, RelationDump};
use crate::parse;
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "lagrep", version, about = "Lagrangian relations, Burau matrices and Alexander polynomials of tangle words")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print diagnostics on stderr.
    #[arg(long, short, global = true, env = "LAGREP_VERBOSE")]
    pub verbose: bool,
    /// Write the result to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct WordArgs {
    /// Bottom signs, e.g. "+,-".
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub bottom: String,
    /// Tokens: s<i>, s<i>', cup+, cup-, cap, cup±@<k>, cap@<k>.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub word: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The Lagrangian relation of a tangle word.
    Relation {
        #[command(flatten)]
        word: WordArgs,
        /// Compose elementary relations only, without block updates.
        #[arg(long)]
        generic: bool,
        /// Include the objects at every level (JSON only).
        #[arg(long)]
        objects: bool,
    },
    /// Burau matrices of a braid word.
    Burau {
        /// Number of strands.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        word: String,
        /// The reduced representation (n − 1 dimensional).
        #[arg(long, conflicts_with = "eps")]
        reduced: bool,
        /// Strand signs: the oriented matrix from these signs to the top.
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
    },
    /// Alexander polynomial of the closure of a tangle word.
    Alexander {
        #[command(flatten)]
        word: WordArgs,
    },
    /// Alexander polynomial of the rational link C(a₁, …, aₙ).
    Rational {
        /// Continued-fraction coefficients, e.g. "3,2".
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Orientation sign, +1 or -1.
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        eps: String,
        /// Linking number of a two-component link.
        #[arg(long, allow_hyphen_values = true)]
        linking: Option<i32>,
    },
    /// The pair (m₁, m₂) of a two-strand tangle and its closures.
    Twostrand {
        #[arg(long, default_value = "-,+", allow_hyphen_values = true)]
        bottom: String,
        #[arg(long, default_value = "")]
        word: String,
        /// Moves applied to the pair in order: reflect, rotate, twist-right, twist-top.
        #[arg(long = "op", value_delimiter = ',')]
        ops: Vec<String>,
    },
    /// Run the verification suites over the bundled word corpus.
    Verify {
        /// Check only the first N words.
        #[arg(long)]
        limit: Option<usize>,
    },
}

/// What a run produced: exit status and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
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
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut log = String::new();
    let result = dispatch(&cli, &mut log).and_then(|(code, text)| match &cli.output {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok((code, String::new()))
        }
        None => Ok((code, text)),
    });
    match result {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: log },
        Err(e) => {
            log.push_str(&format!("error: {e}\n"));
            Outcome { code: e.exit_code(), stdout: String::new(), stderr: log }
        }
    }
}

fn matrix_text(m: &LambdaMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|p| p.to_string()).collect()).collect();
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for row in &cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        s.push_str(&format!("[ {} ]\n", padded.join("  ")));
    }
    if m.rows() == 0 {
        s.push_str(&format!("(empty {}x{})\n", m.rows(), m.cols()));
    }
    s
}

fn dispatch(cli: &Cli, log: &mut String) -> CliResult<(i32, String)> {
    let out = |v: Value, text: String| if cli.json { json::render(&v) } else { text };
    match &cli.command {
        Command::Relation { word, generic, objects } => {
            let w = parse::word(&word.bottom, &word.word)?;
            let rel = if *generic { Cache::new().generic_relation(&w)? } else { tanglecat::relation_of_word(&w)? };
            let dump = RelationDump::of(&rel)?;
            if cli.verbose {
                log.push_str(&format!("word spans {} to {}; transversal: {}\n", w.bottom(), w.top(), rel.transversal()));
            }
            let mut v = dump.to_json();
            if *objects {
                let objs = tanglecat::level_objects(&w)?;
                v["objects"] = Value::Array(objs.iter().map(json::object_to_json).collect());
            }
            let text = format!(
                "source rank {}, target rank {}, {} generators\ncertified saturated: {}\nlagrangian: {}\nM =\n{}M' =\n{}",
                dump.source_rank,
                dump.target_rank,
                dump.m.cols(),
                dump.certified_saturated,
                dump.lagrangian_checked,
                matrix_text(&dump.m),
                matrix_text(&dump.m_prime)
            );
            Ok((0, out(v, text)))
        }
        Command::Burau { n, word, reduced, eps } => {
            let b = parse::braid(*n, word)?;
            let (m, extra) = match (eps, reduced) {
                (Some(e), _) => {
                    let eps = parse::signs(e)?;
                    if eps.len() != *n {
                        return Err(CliError::Parse(format!("--eps has {} signs but --n is {n}", eps.len())));
                    }
                    let (m, top) = burau::as_functor(&b, &eps)?;
                    (m, Some(top))
                }
                (None, true) => (burau::as_group_rep(&b)?, None),
                (None, false) => (burau::burau_unreduced(&b), None),
            };
            let mut v = json::matrix_to_json(&m);
            let mut text = matrix_text(&m);
            if let Some(top) = extra {
                v["top"] = json!(top.to_string());
                text = format!("top signs: {top}\n{text}");
            }
            Ok((0, out(v, text)))
        }
        Command::Alexander { word } => {
            let w = parse::word(&word.bottom, &word.word)?;
            let braid: Option<Vec<(usize, i8)>> =
                w.tokens().iter().map(|t| if let Token::Sigma { i, sign } = *t { Some((i, sign)) } else { None }).collect();
            let r = match braid {
                Some(letters) if !w.bottom().is_empty() => {
                    if cli.verbose {
                        log.push_str("braid word: using the braid-closure formula\n");
                    }
                    alexander::alexander_braid_closure(&burau::BraidWord::new(w.bottom().len(), letters)?, w.bottom())?
                }
                _ => alexander::alexander_trivial_tangle_closure(&w)?,
            };
            Ok((0, out(json::alexander_to_json(&r), format!("{r}\n"))))
        }
        Command::Rational { coeffs, eps, linking } => {
            let a = parse::coeffs(coeffs)?;
            let sign = parse::orientation(eps)?;
            let (r, signs) = alexander::rational_link_oriented(&a, sign, *linking)?;
            if cli.verbose {
                log.push_str(&format!("strand signs {signs}\n"));
            }
            Ok((0, out(json::alexander_to_json(&r), format!("{r}\n"))))
        }
        Command::Twostrand { bottom, word, ops } => {
            let w = parse::word(bottom, word)?;
            let ops = ops.iter().map(|s| s.parse::<TwoStrandOp>()).collect::<lagrep_core::Result<Vec<_>>>()?;
            let mut inv = alexander::two_strand_invariant(&w)?;
            for op in ops {
                inv = alexander::transform_two_strand(&inv, op, w.bottom(), w.top())?;
                if cli.verbose {
                    log.push_str(&format!("{op:?}: {inv}\n"));
                }
            }
            let (den, num) = alexander::closure_modules(&inv);
            let mut v = json::two_strand_to_json(&inv);
            v["denominator"] = json::alexander_to_json(&den);
            v["numerator"] = json::alexander_to_json(&num);
            let text = format!("(m1, m2) = {inv}\ndenominator closure: {den}\nnumerator closure: {num}\n");
            Ok((0, out(v, text)))
        }
        Command::Verify { limit } => {
            let mut words = corpus::bundled();
            if let Some(k) = limit {
                words.truncate(*k);
            }
            let report = verify::run_suite(&words);
            let code = if report.passed() { 0 } else { 1 };
            Ok((code, out(report.to_json(), report.render_text())))
        }
    }
}
