//! Regenerates `corpus/words.txt`: `cargo run -p lagrep --example gen_corpus > crates/lagrep/corpus/words.txt`.

#[path = "../tests/support/words.rs"]
mod words;

fn main() {
    print!("{}", words::corpus_text());
}
