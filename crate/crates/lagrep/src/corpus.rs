//! The bundled word corpus used by `verify`.
//!
//! One word per line as `<bottom signs> | <tokens>`; `#` starts a comment.
//! The file is regenerated with `cargo run -p lagrep --example gen_corpus`.

use lagrep_core::tanglecat::TangleWord;

use crate::error::{CliError, CliResult};
use crate::parse;

pub const WORDS: &str = include_str!("../corpus/words.txt");

/// Parses corpus text into validated words.
pub fn parse_corpus(text: &str) -> CliResult<Vec<TangleWord>> {
    text.lines()
        .enumerate()
        .filter_map(|(n, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then_some((n + 1, line))
        })
        .map(|(n, line)| {
            let (bottom, tokens) = line.split_once('|').ok_or_else(|| CliError::Parse(format!("corpus line {n}: missing '|'")))?;
            parse::word(bottom.trim(), tokens.trim()).map_err(|e| CliError::Parse(format!("corpus line {n}: {e}")))
        })
        .collect()
}

/// The bundled corpus.
pub fn bundled() -> Vec<TangleWord> {
    parse_corpus(WORDS).expect("the bundled corpus is valid")
}

/// Renders a word as a corpus line.
pub fn render_line(w: &TangleWord) -> String {
    let bottom: Vec<&str> = w.bottom().signs().iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
    format!("{} | {}", bottom.join(","), lagrep_core::tanglecat::render_tokens(w.tokens()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_round_trips() {
        let words = bundled();
        assert!(words.len() >= 100);
        let text: String = words.iter().map(|w| render_line(w) + "\n").collect();
        assert_eq!(parse_corpus(&text).unwrap(), words);
    }

    #[test]
    fn bad_lines_are_parse_errors() {
        assert_eq!(parse_corpus("+,+ s1").unwrap_err().exit_code(), 2);
        assert_eq!(parse_corpus("+,+ | cap").unwrap_err().exit_code(), 2);
        assert!(parse_corpus("# only a comment\n\n").unwrap().is_empty());
    }
}
