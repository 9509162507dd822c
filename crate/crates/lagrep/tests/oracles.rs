mod support;

use lagrep_core::diskhomology::{gram_form, SignSeq};
use support::gram_oracles::{bootstrap_gram, geometric_gram};
use support::words::all_signs;

#[test]
fn geometric_oracle_is_the_transpose_of_the_form() {
    for n in 1..=5 {
        for eps in all_signs(n) {
            assert_eq!(geometric_gram(&eps).transpose(), gram_form(&eps), "{eps}");
        }
    }
}

#[test]
fn bootstrap_oracle_is_unique_and_matches() {
    for n in 2..=5 {
        for plus in 0..=n {
            let eps = SignSeq::new((0..n).map(|k| if k < plus { 1 } else { -1 }).collect()).unwrap();
            let solved = bootstrap_gram(&eps).unwrap_or_else(|| panic!("no unique solution for {eps}"));
            for (e, g) in solved.forms {
                assert_eq!(g, gram_form(&e), "{e}");
            }
        }
    }
}
