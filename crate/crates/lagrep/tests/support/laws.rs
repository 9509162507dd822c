//! Randomised instances of the category laws on small Hermitian modules.
#![allow(dead_code)]

use lagrep_core::diskhomology::{build_object, SignSeq};
use lagrep_core::lagrangian::{annihilator, closure, compose, compose_bar, diagonal, HermitianModule, Relation};
use lagrep_core::linalg::{self, GeneratorSet, LambdaMatrix, Verdict};
use lagrep_core::tanglecat::{relation_of_word, validate, Token};
use lagrep_core::{Error, LaurentPoly};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::words::all_signs;

fn small(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let low = rng.gen_range(-1..=1);
    let coeffs = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(-2..=2)).collect();
    LaurentPoly::from_coeffs(low, coeffs)
}

/// An object's module in a random basis: unit diagonal plus one small
/// off-diagonal entry.
pub fn random_module(rng: &mut ChaCha8Rng) -> HermitianModule {
    loop {
        let n = rng.gen_range(2..=5);
        let obj = build_object(all_signs(n).choose(rng).unwrap()).unwrap();
        let r = obj.rank();
        if r == 0 {
            continue;
        }
        let (a, b) = (rng.gen_range(0..r), rng.gen_range(0..r));
        let extra = small(rng);
        let p = LambdaMatrix::from_fn(r, r, |i, j| {
            if i == j {
                LaurentPoly::unit(if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(-1..=1))
            } else if (i, j) == (a, b) {
                extra.clone()
            } else {
                LaurentPoly::zero()
            }
        });
        let gram = p.adjoint().mul(obj.module().gram()).unwrap().mul(&p).unwrap();
        return HermitianModule::new(gram, "random").unwrap();
    }
}

/// Independent random columns, sometimes with a non-unit common factor.
pub fn random_submodule(rng: &mut ChaCha8Rng, rank: usize) -> GeneratorSet {
    loop {
        let k = rng.gen_range(1..=rank);
        let mut m = LambdaMatrix::from_fn(rank, k, |_, _| small(rng));
        if rng.gen_range(0..3) == 0 {
            m = m.scale(&"t + 1".parse().unwrap());
        }
        if let Ok(g) = GeneratorSet::new(m) {
            return g;
        }
    }
}

/// Relations of consecutive random words, each ending where the next
/// begins.
pub fn chain(rng: &mut ChaCha8Rng, pieces: usize) -> Vec<Relation> {
    let mut bottom: SignSeq = all_signs(rng.gen_range(1..=3)).choose(rng).unwrap().clone();
    (0..pieces)
        .map(|_| {
            let len = rng.gen_range(1..=3);
            let mut cur = bottom.clone();
            let mut tokens = Vec::new();
            for _ in 0..len {
                let mut opts = Vec::new();
                if cur.len() + 2 <= 4 {
                    opts.extend([Token::Cup { sign: 1 }, Token::Cup { sign: -1 }]);
                }
                if cur.len() >= 2 && cur.get(0) == -cur.get(1) {
                    opts.push(Token::Cap);
                }
                for i in 1..cur.len() {
                    opts.extend([Token::Sigma { i, sign: 1 }, Token::Sigma { i, sign: -1 }]);
                }
                let t = *opts.choose(rng).unwrap();
                cur = lagrep_core::tanglecat::apply_token(t, &cur).unwrap();
                tokens.push(t);
            }
            let w = validate(&bottom, &tokens).unwrap();
            bottom = w.top().clone();
            relation_of_word(&w).unwrap()
        })
        .collect()
}

fn scaled(n: &Relation, by: &str) -> Relation {
    let g = GeneratorSet::new(n.gens().gens().scale(&by.parse().unwrap())).unwrap();
    Relation::new(n.source().clone(), n.target().clone(), g).unwrap()
}

fn intersection(a: &GeneratorSet, b: &GeneratorSet) -> Result<GeneratorSet, Error> {
    let k = linalg::kernel(&a.gens().hstack(&b.gens().neg())?);
    if let Verdict::Uncertified(m) = k.verdict() {
        return Err(Error::Unsaturatable { minor_gcd: m.clone() });
    }
    if k.is_empty() {
        return Ok(GeneratorSet::empty(a.ambient_rank()));
    }
    GeneratorSet::new(a.gens().mul(&k.gens().slice_rows(0..a.len())?)?)
}

/// The laws exercised, one per case in rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// Ann(Ann(A)) = Ā and Ann(Ā) = Ann(A).
    DoubleAnnihilator,
    /// Ann(A + B) = Ann A ∩ Ann B and Ann(A ∩ B) = closure(Ann A + Ann B).
    SumIntersection,
    /// closure(N₂N₁) = closure(N̄₂ N̄₁).
    ClosureFunctorial,
    /// compose_bar is associative with the diagonals as identities.
    Associative,
}

pub const LAWS: [Law; 4] = [Law::DoubleAnnihilator, Law::SumIntersection, Law::ClosureFunctorial, Law::Associative];

/// Checks one random instance; `Err(Unsaturatable)` means the instance
/// left unit-certified territory and should be discarded.
pub fn check_law(law: Law, rng: &mut ChaCha8Rng) -> Result<bool, Error> {
    match law {
        Law::DoubleAnnihilator => {
            let h = random_module(rng);
            let a = random_submodule(rng, h.rank());
            let ann = annihilator(&h, &a)?;
            let cl = closure(&a)?;
            Ok(linalg::span_eq(&annihilator(&h, &ann)?, &cl)? && linalg::span_eq(&annihilator(&h, &cl)?, &ann)?)
        }
        Law::SumIntersection => {
            let h = random_module(rng);
            let a = closure(&random_submodule(rng, h.rank()))?;
            let b = closure(&random_submodule(rng, h.rank()))?;
            let sum = linalg::saturated_span(&a.gens().hstack(b.gens())?)?;
            let (ann_a, ann_b) = (annihilator(&h, &a)?, annihilator(&h, &b)?);
            let first = linalg::span_eq(&annihilator(&h, &sum)?, &intersection(&ann_a, &ann_b)?)?;
            let ann_sum = linalg::saturated_span(&ann_a.gens().hstack(ann_b.gens())?)?;
            let second = linalg::span_eq(&annihilator(&h, &intersection(&a, &b)?)?, &ann_sum)?;
            Ok(first && second)
        }
        Law::ClosureFunctorial => {
            let rels = chain(rng, 2);
            let (s1, s2) = (scaled(&rels[0], "t - 2"), scaled(&rels[1], "3"));
            let lhs = compose(&s1, &s2)?.closure()?;
            let rhs = compose(&s1.closure()?, &s2.closure()?)?.closure()?;
            Ok(lhs.same_as(&rhs)? && lhs.is_lagrangian()?)
        }
        Law::Associative => {
            let rels = chain(rng, 3).iter().map(Relation::closure).collect::<Result<Vec<_>, _>>()?;
            let left = compose_bar(&compose_bar(&rels[0], &rels[1])?, &rels[2])?;
            let right = compose_bar(&rels[0], &compose_bar(&rels[1], &rels[2])?)?;
            let n = &rels[0];
            Ok(left.same_as(&right)?
                && compose_bar(&diagonal(n.source()), n)?.same_as(n)?
                && compose_bar(n, &diagonal(n.target()))?.same_as(n)?)
        }
    }
}
