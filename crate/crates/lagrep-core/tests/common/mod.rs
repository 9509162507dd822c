//! Shared generators for the integration tests.
#![allow(dead_code)]

use lagrep_core::diskhomology::SignSeq;
use lagrep_core::tanglecat::{apply_token, validate, TangleWord, Token};

/// Small deterministic generator so that words are a pure function of a seed.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

pub fn all_signs(n: usize) -> Vec<SignSeq> {
    (0..1u32 << n).map(|m| SignSeq::new((0..n).map(|k| if m >> k & 1 == 1 { 1 } else { -1 }).collect()).unwrap()).collect()
}

/// Tokens applicable to `cur`, with caps doubled so words do not only grow.
pub fn options(cur: &SignSeq, max_points: usize) -> Vec<Token> {
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

/// A random valid word of the given length starting at `bottom`.
pub fn random_tokens(rng: &mut Lcg, bottom: &SignSeq, len: usize, max_points: usize) -> Vec<Token> {
    let mut cur = bottom.clone();
    let mut out = Vec::new();
    for _ in 0..len {
        let opts = options(&cur, max_points);
        if opts.is_empty() {
            break;
        }
        let t = opts[rng.below(opts.len())];
        cur = apply_token(t, &cur).unwrap();
        out.push(t);
    }
    out
}

/// Random word with at most 4 bottom points and at most 6 tokens.
pub fn random_word(seed: u64) -> TangleWord {
    let mut rng = Lcg(seed);
    let n = rng.below(5);
    let signs = all_signs(n);
    let bottom = signs[rng.below(signs.len())].clone();
    let len = 1 + rng.below(6);
    let tokens = random_tokens(&mut rng, &bottom, len, 5);
    validate(&bottom, &tokens).unwrap()
}
