mod common;

use common::{all_signs, random_tokens, Lcg};
use lagrep_core::diskhomology::{build_object, SignSeq};
use lagrep_core::lagrangian::*;
use lagrep_core::linalg::{self, GeneratorSet, LambdaMatrix, Verdict};
use lagrep_core::tanglecat::{relation_of_word, validate};
use lagrep_core::{Error, LaurentPoly};
use proptest::prelude::*;

fn small(rng: &mut Lcg) -> LaurentPoly {
    let low = rng.below(3) as i32 - 1;
    let coeffs = (0..1 + rng.below(2)).map(|_| rng.below(5) as i128 - 2).collect();
    LaurentPoly::from_coeffs(low, coeffs)
}

/// A disk/sphere object in a random basis: the standard one changed by a
/// unit diagonal and one elementary column operation.
fn random_module(rng: &mut Lcg) -> HermitianModule {
    loop {
        let n = 2 + rng.below(4);
        let signs = all_signs(n);
        let obj = build_object(&signs[rng.below(signs.len())]).unwrap();
        let r = obj.rank();
        if r == 0 {
            continue;
        }
        let (a, b) = (rng.below(r), rng.below(r));
        let extra = small(rng);
        let p = LambdaMatrix::from_fn(r, r, |i, j| {
            if i == j {
                LaurentPoly::unit(if rng.below(2) == 0 { 1 } else { -1 }, rng.below(3) as i32 - 1)
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

/// Random independent columns, sometimes multiplied by a non-unit.
fn random_submodule(rng: &mut Lcg, rank: usize) -> GeneratorSet {
    loop {
        let k = 1 + rng.below(rank);
        let mut m = LambdaMatrix::from_fn(rank, k, |_, _| small(rng));
        if rng.below(3) == 0 {
            m = m.scale(&"t + 1".parse().unwrap());
        }
        if let Ok(g) = GeneratorSet::new(m) {
            return g;
        }
    }
}

/// A ∩ B for saturated A, B: A·X over the kernel (X; Y) of (A | −B).
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

fn chain(rng: &mut Lcg, pieces: usize) -> Vec<Relation> {
    let n = 1 + rng.below(3);
    let signs = all_signs(n);
    let mut bottom: SignSeq = signs[rng.below(signs.len())].clone();
    (0..pieces)
        .map(|_| {
            let len = 1 + rng.below(3);
            let w = validate(&bottom, &random_tokens(rng, &bottom, len, 4)).unwrap();
            bottom = w.top().clone();
            relation_of_word(&w).unwrap()
        })
        .collect()
}

fn scaled(n: &Relation, by: &LaurentPoly) -> Relation {
    Relation::new(n.source().clone(), n.target().clone(), GeneratorSet::new(n.gens().gens().scale(by)).unwrap()).unwrap()
}

/// Runs a law on unit-certified data only: an `Unsaturatable` error from
/// any intermediate closure discards the case.
fn certified(law: impl FnOnce() -> Result<bool, Error>) -> Result<(), TestCaseError> {
    match law() {
        Ok(holds) => {
            prop_assert!(holds);
            Ok(())
        }
        Err(Error::Unsaturatable { .. }) => Err(TestCaseError::reject("uncertified closure")),
        Err(e) => Err(TestCaseError::fail(format!("{e}"))),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn double_annihilator_is_closure(seed in any::<u64>()) {
        let mut rng = Lcg(seed);
        let h = random_module(&mut rng);
        let a = random_submodule(&mut rng, h.rank());
        certified(|| {
            let ann = annihilator(&h, &a)?;
            let cl = closure(&a)?;
            Ok(linalg::span_eq(&annihilator(&h, &ann)?, &cl)? && linalg::span_eq(&annihilator(&h, &cl)?, &ann)?)
        })?;
    }

    #[test]
    fn annihilator_exchanges_sum_and_intersection(seed in any::<u64>()) {
        let mut rng = Lcg(seed);
        let h = random_module(&mut rng);
        let a = random_submodule(&mut rng, h.rank());
        let b = random_submodule(&mut rng, h.rank());
        certified(|| {
            let (a, b) = (closure(&a)?, closure(&b)?);
            let sum = linalg::saturated_span(&a.gens().hstack(b.gens())?)?;
            let (ann_a, ann_b) = (annihilator(&h, &a)?, annihilator(&h, &b)?);
            let first = linalg::span_eq(&annihilator(&h, &sum)?, &intersection(&ann_a, &ann_b)?)?;
            let ann_sum = linalg::saturated_span(&ann_a.gens().hstack(ann_b.gens())?)?;
            let second = linalg::span_eq(&annihilator(&h, &intersection(&a, &b)?)?, &ann_sum)?;
            Ok(first && second)
        })?;
    }

    #[test]
    fn closure_commutes_with_composition(seed in any::<u64>()) {
        let mut rng = Lcg(seed);
        let rels = chain(&mut rng, 2);
        let (s1, s2) = (scaled(&rels[0], &"t - 2".parse().unwrap()), scaled(&rels[1], &"3".parse().unwrap()));
        let lhs = compose(&s1, &s2).unwrap().closure().unwrap();
        let rhs = compose(&s1.closure().unwrap(), &s2.closure().unwrap()).unwrap().closure().unwrap();
        prop_assert!(lhs.same_as(&rhs).unwrap());
        prop_assert!(lhs.is_lagrangian().unwrap());
    }

    #[test]
    fn closed_composition_is_associative_with_identities(seed in any::<u64>()) {
        let mut rng = Lcg(seed);
        let rels: Vec<Relation> = chain(&mut rng, 3).iter().map(|r| r.closure().unwrap()).collect();
        let left = compose_bar(&compose_bar(&rels[0], &rels[1]).unwrap(), &rels[2]).unwrap();
        let right = compose_bar(&rels[0], &compose_bar(&rels[1], &rels[2]).unwrap()).unwrap();
        prop_assert!(left.same_as(&right).unwrap());
        let n = &rels[0];
        prop_assert!(compose_bar(&diagonal(n.source()), n).unwrap().same_as(n).unwrap());
        prop_assert!(compose_bar(n, &diagonal(n.target())).unwrap().same_as(n).unwrap());
    }

    #[test]
    fn rank_criterion_matches_explicit_check(seed in any::<u64>()) {
        let mut rng = Lcg(seed);
        let h = random_module(&mut rng);
        let a = random_submodule(&mut rng, h.rank());
        if let Ok(explicit) = is_lagrangian_explicit(&h, &a) {
            prop_assert_eq!(explicit, is_lagrangian(&h, &a).unwrap());
        }
    }
}
