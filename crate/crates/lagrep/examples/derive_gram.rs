//! Prints the intersection forms derived geometrically and by bootstrap,
//! next to `gram_form`, for every sign sequence of length `n` (default 3).
//!
//! `cargo run -p lagrep --example derive_gram -- 4`

#[path = "../tests/support/gram_oracles.rs"]
mod gram_oracles;
#[path = "../tests/support/words.rs"]
mod words;

use lagrep_core::diskhomology::gram_form;
use lagrep_core::LambdaMatrix;

fn rows(m: &LambdaMatrix) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|i| format!("[{}]", m.row(i).iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn main() {
    let n: usize = std::env::args().nth(1).map_or(3, |s| s.parse().expect("n must be a small integer"));
    for eps in words::all_signs(n) {
        let form = gram_form(&eps);
        let geometric = gram_oracles::geometric_gram(&eps).transpose();
        let boot = gram_oracles::bootstrap_gram(&eps).and_then(|b| b.forms.into_iter().find(|(e, _)| *e == eps)).map(|(_, g)| g);
        let verdict = if Some(&form) == boot.as_ref() && form == geometric { "agree" } else { "DIFFER" };
        println!("{:>6}  {verdict}  {}", eps.to_string(), rows(&form));
    }
}
