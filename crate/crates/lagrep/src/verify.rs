//! The built-in verification suites, run in parallel over a word list.

use lagrep_core::burau::oriented_letter;
use lagrep_core::diskhomology::gram_form;
use lagrep_core::lagrangian::compose;
use lagrep_core::linalg;
use lagrep_core::tanglecat::{expected_rank, relation_of_word, render_tokens, validate, TangleWord, Token};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::Cache;

/// The checks run on each word, in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    /// The generators have a unit maximal-minor gcd (required when the
    /// word is straight, informational otherwise).
    Certified,
    /// Certified relations are Lagrangian.
    Lagrangian,
    /// The relation has the predicted rank.
    Rank,
    /// Every object along the word has a form with nonzero determinant.
    NonDegenerate,
    /// Every crossing matrix preserves the forms of its end objects.
    Unitarity,
    /// Splitting the word anywhere and composing gives the same relation.
    Functoriality,
    /// Direct block updates agree with plain composition.
    Shortcut,
}

impl Check {
    pub const ALL: [Check; 7] =
        [Check::Certified, Check::Lagrangian, Check::Rank, Check::NonDegenerate, Check::Unitarity, Check::Functoriality, Check::Shortcut];

    pub fn name(self) -> &'static str {
        match self {
            Check::Certified => "certified",
            Check::Lagrangian => "lagrangian",
            Check::Rank => "rank",
            Check::NonDegenerate => "nondegenerate",
            Check::Unitarity => "unitarity",
            Check::Functoriality => "functoriality",
            Check::Shortcut => "shortcut",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skip,
}

fn status(ok: lagrep_core::Result<bool>, why: impl FnOnce() -> String) -> Status {
    match ok {
        Ok(true) => Status::Pass,
        Ok(false) => Status::Fail(why()),
        Err(e) => Status::Fail(e.to_string()),
    }
}

/// Results of every check on one word.
#[derive(Clone, Debug)]
pub struct WordOutcome {
    pub word: String,
    pub statuses: Vec<(Check, Status)>,
}

fn describe(w: &TangleWord) -> String {
    format!("({}) {}", w.bottom(), render_tokens(w.tokens()))
}

pub fn check_word(w: &TangleWord, cache: &Cache) -> WordOutcome {
    let mut statuses = Vec::with_capacity(Check::ALL.len());
    let straight = w.trace().straight();
    match relation_of_word(w) {
        Err(e) => {
            for c in [Check::Certified, Check::Lagrangian, Check::Rank] {
                statuses.push((c, Status::Fail(e.to_string())));
            }
        }
        Ok(rel) => {
            let certified = rel.gens().certified_free_basis();
            statuses.push((
                Check::Certified,
                match (certified, straight) {
                    (true, _) => Status::Pass,
                    (false, true) => Status::Fail(format!("minor gcd {:?}", rel.gens().verdict())),
                    (false, false) => Status::Skip,
                },
            ));
            statuses
                .push((Check::Lagrangian, if certified { status(rel.is_lagrangian(), || "not Lagrangian".into()) } else { Status::Skip }));
            let expected = expected_rank(w.bottom().len(), w.top().len(), w.trace().ell);
            let found = rel.gens().len();
            statuses.push((
                Check::Rank,
                status(Ok(found == expected && (certified || !straight)), || format!("rank {found}, expected {expected}")),
            ));
        }
    }
    statuses.push((Check::NonDegenerate, nondegenerate(w, cache)));
    statuses.push((Check::Unitarity, unitarity(w)));
    statuses.push((Check::Functoriality, functoriality(w)));
    statuses.push((Check::Shortcut, shortcut(w, cache)));
    WordOutcome { word: describe(w), statuses }
}

fn nondegenerate(w: &TangleWord, cache: &Cache) -> Status {
    for k in 0..=w.tokens().len() {
        let ok = cache.object(w.level(k)).and_then(|obj| linalg::det(obj.module().gram())).map(|d| !d.is_zero());
        let s = status(ok, || format!("degenerate form on {}", w.level(k)));
        if s != Status::Pass {
            return s;
        }
    }
    Status::Pass
}

fn unitarity(w: &TangleWord) -> Status {
    let mut any = false;
    for (k, &t) in w.tokens().iter().enumerate() {
        let Token::Sigma { i, sign } = t else { continue };
        any = true;
        let (eps, top) = (w.level(k), w.level(k + 1));
        let ok = oriented_letter(i, sign, eps).and_then(|m| Ok(m.adjoint().mul(&gram_form(top))?.mul(&m)? == gram_form(eps)));
        let s = status(ok, || format!("{t} on {eps} is not unitary"));
        if s != Status::Pass {
            return s;
        }
    }
    if any {
        Status::Pass
    } else {
        Status::Skip
    }
}

fn functoriality(w: &TangleWord) -> Status {
    let whole = match relation_of_word(w) {
        Ok(r) => r,
        Err(e) => return Status::Fail(e.to_string()),
    };
    for cut in 0..=w.tokens().len() {
        let ok = (|| {
            let lower = validate(w.bottom(), &w.tokens()[..cut])?;
            let upper = validate(lower.top(), &w.tokens()[cut..])?;
            compose(&relation_of_word(&lower)?, &relation_of_word(&upper)?)?.same_as(&whole)
        })();
        let s = status(ok, || format!("split at {cut} differs"));
        if s != Status::Pass {
            return s;
        }
    }
    Status::Pass
}

fn shortcut(w: &TangleWord, cache: &Cache) -> Status {
    if w.trace().ell == 0 {
        return Status::Skip;
    }
    let ok = (|| relation_of_word(w)?.same_as(&cache.generic_relation(w)?))();
    status(ok, || "block updates disagree with composition".into())
}

/// Tally of one check across the corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

/// Aggregated results, in corpus order.
#[derive(Clone, Debug)]
pub struct Report {
    pub words: usize,
    pub tallies: Vec<(Check, Tally)>,
    /// (word, check, reason) for every failure.
    pub failures: Vec<(String, Check, String)>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tally(&self, c: Check) -> &Tally {
        &self.tallies.iter().find(|(k, _)| *k == c).expect("every check is tallied").1
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("{:<14} {:>5} {:>5} {:>5}\n", "check", "pass", "fail", "skip");
        for (c, t) in &self.tallies {
            s.push_str(&format!("{:<14} {:>5} {:>5} {:>5}\n", c.name(), t.pass, t.fail, t.skip));
        }
        for (w, c, why) in &self.failures {
            s.push_str(&format!("FAIL {} {w}: {why}\n", c.name()));
        }
        s.push_str(&format!("{} words, {}\n", self.words, if self.passed() { "all checks passed" } else { "failures" }));
        s
    }

    pub fn to_json(&self) -> Value {
        let checks: serde_json::Map<String, Value> =
            self.tallies.iter().map(|(c, t)| (c.name().to_string(), json!({ "pass": t.pass, "fail": t.fail, "skip": t.skip }))).collect();
        let failures: Vec<Value> = self.failures.iter().map(|(w, c, why)| json!({ "word": w, "check": c.name(), "reason": why })).collect();
        json!({ "words": self.words, "checks": checks, "failures": failures, "passed": self.passed() })
    }
}

/// Runs every check on every word, fanning the words out over the rayon
/// pool; the report does not depend on scheduling.
pub fn run_suite(words: &[TangleWord]) -> Report {
    let cache = Cache::new();
    let outcomes: Vec<WordOutcome> = words.par_iter().map(|w| check_word(w, &cache)).collect();
    let mut tallies: Vec<(Check, Tally)> = Check::ALL.iter().map(|&c| (c, Tally::default())).collect();
    let mut failures = Vec::new();
    for o in outcomes {
        for (c, s) in o.statuses {
            let t = &mut tallies.iter_mut().find(|(k, _)| *k == c).expect("every check is tallied").1;
            match s {
                Status::Pass => t.pass += 1,
                Status::Skip => t.skip += 1,
                Status::Fail(why) => {
                    t.fail += 1;
                    failures.push((o.word.clone(), c, why));
                }
            }
        }
    }
    Report { words: words.len(), tallies, failures }
}
