use lagrep_core::linalg::{self, GeneratorSet, LambdaMatrix, Verdict};
use lagrep_core::LaurentPoly;
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    (-1i32..=1, prop::collection::vec(-3i128..=3, 0..3)).prop_map(|(low, c)| LaurentPoly::from_coeffs(low, c))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = LambdaMatrix> {
    prop::collection::vec(small_poly(), rows * cols).prop_map(move |e| LambdaMatrix::new(rows, cols, e).unwrap())
}

fn square() -> impl Strategy<Value = LambdaMatrix> {
    (1usize..=3).prop_flat_map(|n| matrix(n, n))
}

/// Unimodular upper-triangular matrix with unit diagonal.
fn unimodular(n: usize) -> impl Strategy<Value = LambdaMatrix> {
    (prop::collection::vec(small_poly(), n * n), prop::collection::vec((prop::bool::ANY, -2i32..=2), n)).prop_map(move |(e, d)| {
        LambdaMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            core::cmp::Ordering::Less => e[i * n + j].clone(),
            core::cmp::Ordering::Equal => LaurentPoly::unit(if d[i].0 { -1 } else { 1 }, d[i].1),
            core::cmp::Ordering::Greater => LaurentPoly::zero(),
        })
    })
}

/// Cofactor expansion along the first row, as an independent determinant.
fn laplace(a: &LambdaMatrix) -> LaurentPoly {
    let n = a.rows();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut acc = LaurentPoly::zero();
    for j in 0..n {
        let minor = a.select_rows(&(1..n).collect::<Vec<_>>()).select_cols(&(0..n).filter(|&c| c != j).collect::<Vec<_>>());
        let term = a.get(0, j) * &laplace(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..=3).prop_flat_map(|n| (matrix(n, n), matrix(n, n)))) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(linalg::det(&ab).unwrap(), &linalg::det(&a).unwrap() * &linalg::det(&b).unwrap());
    }

    #[test]
    fn small_determinants_agree_with_cofactors(a in square()) {
        prop_assert_eq!(linalg::det(&a).unwrap(), laplace(&a));
    }

    #[test]
    fn elimination_agrees_with_cofactors(a in (5usize..=6).prop_flat_map(|n| matrix(n, n))) {
        prop_assert_eq!(linalg::det(&a).unwrap(), laplace(&a));
    }

    #[test]
    fn unimodular_inverse(u in (1usize..=4).prop_flat_map(unimodular)) {
        let inv = linalg::inverse(&u).unwrap();
        prop_assert_eq!(u.mul(&inv).unwrap(), LambdaMatrix::identity(u.rows()));
        prop_assert!(linalg::det(&u).unwrap().is_unit());
    }

    #[test]
    fn kernel_is_annihilated_and_saturated(a in (1usize..=3, 2usize..=4).prop_flat_map(|(r, c)| matrix(r, c))) {
        let k = linalg::kernel(&a);
        prop_assert!(a.mul(k.gens()).unwrap().is_zero());
        prop_assert_eq!(k.len(), a.cols() - linalg::rank_q(&a));
        if k.certified_free_basis() {
            prop_assert_eq!(linalg::saturate(&k).unwrap().len(), k.len());
        }
    }

    #[test]
    fn transposes_and_adjoints(a in matrix(2, 3), b in matrix(3, 2)) {
        prop_assert_eq!(a.mul(&b).unwrap().transpose(), b.transpose().mul(&a.transpose()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().adjoint(), b.adjoint().mul(&a.adjoint()).unwrap());
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn unit_minor_certifies(u in unimodular(3), k in 1usize..=3) {
        let cols = u.slice_cols(0..k).unwrap();
        let g = GeneratorSet::new(cols.clone()).unwrap();
        prop_assert_eq!(g.verdict(), &Verdict::CertifiedSaturated);
        for j in 0..k {
            prop_assert!(linalg::contains_vector(&g, &cols.col(j)).unwrap());
        }
    }

    #[test]
    fn scaled_generators_saturate_back(u in unimodular(3), s in small_poly().prop_filter("non-unit", |p| !p.is_zero() && !p.is_unit())) {
        let base = GeneratorSet::new(u.slice_cols(0..2).unwrap()).unwrap();
        let scaled = GeneratorSet::new(u.slice_cols(0..2).unwrap().scale(&s)).unwrap();
        prop_assert!(!scaled.certified_free_basis());
        prop_assert!(linalg::span_eq(&linalg::saturate(&scaled).unwrap(), &base).unwrap());
        prop_assert!(linalg::contains(&base, &scaled).unwrap());
    }
}
