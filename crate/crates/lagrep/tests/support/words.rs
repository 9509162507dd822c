//! Seeded random tangle words, shared by tests and the corpus generator.
#![allow(dead_code)]

use lagrep_core::diskhomology::SignSeq;
use lagrep_core::tanglecat::{apply_token, validate, TangleWord, Token};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn all_signs(n: usize) -> Vec<SignSeq> {
    (0..1u32 << n).map(|m| SignSeq::new((0..n).map(|k| if m >> k & 1 == 1 { 1 } else { -1 }).collect()).unwrap()).collect()
}

/// Tokens applicable to `cur`; caps are weighted double so words also shrink.
fn options(cur: &SignSeq, max_points: usize) -> Vec<Token> {
    let mut opts = Vec::new();
    if cur.len() + 2 <= max_points {
        opts.extend([Token::Cup { sign: 1 }, Token::Cup { sign: -1 }]);
    }
    if cur.len() >= 2 && cur.get(0) == -cur.get(1) {
        opts.extend([Token::Cap, Token::Cap]);
    }
    for i in 1..cur.len() {
        opts.extend([Token::Sigma { i, sign: 1 }, Token::Sigma { i, sign: -1 }]);
    }
    opts
}

/// A random valid word with at most `max_bottom` bottom points, at most
/// `max_len` tokens and never more than `max_points` points at any level.
pub fn random_word(rng: &mut ChaCha8Rng, max_bottom: usize, max_len: usize, max_points: usize) -> TangleWord {
    let n = rng.gen_range(0..=max_bottom);
    let bottom = all_signs(n).choose(rng).unwrap().clone();
    let len = rng.gen_range(1..=max_len);
    let mut cur = bottom.clone();
    let mut tokens = Vec::new();
    for _ in 0..len {
        let Some(&t) = options(&cur, max_points).choose(rng) else { break };
        cur = apply_token(t, &cur).unwrap();
        tokens.push(t);
    }
    validate(&bottom, &tokens).unwrap()
}

/// Random braid letters on `n` strands.
pub fn random_letters(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<(usize, i8)> {
    (0..len).map(|_| (rng.gen_range(1..n), if rng.gen_bool(0.5) { 1 } else { -1 })).collect()
}

pub const CORPUS_SEED: u64 = 0x1a9_2e9;
pub const CORPUS_SIZE: usize = 160;

/// The bundled corpus: a few named words, then distinct random words with
/// up to four bottom points and six tokens.
pub fn corpus_text() -> String {
    let mut lines = vec![
        "# Generated by `cargo run -p lagrep --example gen_corpus`; do not edit.".to_string(),
        "# <bottom signs> | <tokens>".to_string(),
        "+,+ | ".to_string(),
        "+,+ | s1 s1 s1".to_string(),
        "+,+,+ | s1 s2' s1 s2'".to_string(),
        "-,+ | s1 s1".to_string(),
        " | cup+ cap".to_string(),
        " | cup- cup-@2 s1 s1 cap@2 cap".to_string(),
        "+,-,+ | cap cup+@1".to_string(),
    ];
    let mut seen: Vec<TangleWord> = Vec::new();
    let mut rng = rng(CORPUS_SEED);
    while seen.len() < CORPUS_SIZE {
        let w = random_word(&mut rng, 4, 6, 5);
        if !seen.contains(&w) {
            seen.push(w);
        }
    }
    for w in &seen {
        lines.push(lagrep::corpus::render_line(w));
    }
    lines.join("\n") + "\n"
}
