//! Runs every finitely checkable claim and prints one line per criterion.
//!
//! Run with `cargo run --example full_suite [SEED]`.

use dmk3::suite::{run_suite, DEFAULT_SEED};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let results = run_suite(seed);
    for r in &results {
        println!("{r}");
        for d in &r.details {
            println!("      {d}");
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
