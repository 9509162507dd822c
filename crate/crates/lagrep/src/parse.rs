//! Flag values: sign sequences, tangle words, braid words, coefficients.

use lagrep_core::burau::BraidWord;
use lagrep_core::diskhomology::SignSeq;
use lagrep_core::tanglecat::{self, TangleWord, Token};

use crate::error::{CliError, CliResult};

/// A sign sequence such as `+,-`, `+-` or `+1,-1`; empty text is ε = ().
pub fn signs(src: &str) -> CliResult<SignSeq> {
    src.parse::<SignSeq>().map_err(|e| CliError::Parse(format!("bad sign sequence {src:?}: {e}")))
}

/// A tangle word checked against its bottom signs.
pub fn word(bottom: &str, src: &str) -> CliResult<TangleWord> {
    let bottom = signs(bottom)?;
    let tokens = tanglecat::parse_tokens(src)?;
    Ok(tanglecat::validate(&bottom, &tokens)?)
}

/// A braid word on `n` strands: crossings `s<i>` and `s<i>'` only.
pub fn braid(n: usize, src: &str) -> CliResult<BraidWord> {
    let letters = tanglecat::parse_tokens(src)?
        .into_iter()
        .enumerate()
        .map(|(k, t)| match t {
            Token::Sigma { i, sign } => Ok((i, sign)),
            other => Err(CliError::Parse(format!("token {k}: {other} is not a braid generator"))),
        })
        .collect::<CliResult<Vec<_>>>()?;
    BraidWord::new(n, letters).map_err(|e| CliError::Parse(e.to_string()))
}

/// A comma-separated list of nonzero integers, e.g. `3,2`.
pub fn coeffs(src: &str) -> CliResult<Vec<i64>> {
    let out = src
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| CliError::Parse(format!("bad coefficient {s:?} in {src:?}"))))
        .collect::<CliResult<Vec<_>>>()?;
    if out.contains(&0) {
        return Err(CliError::Parse(format!("coefficients must be nonzero: {src:?}")));
    }
    Ok(out)
}

/// An orientation sign: `+1`, `1`, `+`, `-1` or `-`.
pub fn orientation(src: &str) -> CliResult<i8> {
    match src.trim() {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        other => Err(CliError::Parse(format!("orientation must be +1 or -1, got {other:?}"))),
    }
}
