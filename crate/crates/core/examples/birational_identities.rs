//! The birational maps κ and ψ, checked by reduction modulo the defining
//! equations, with negative controls that must fail.
//!
//! Run with `cargo run --example birational_identities`.

use dmk3::identity::{identity_checks, kappa, psi, RewriteSystem};

fn main() {
    println!("relations: {}", RewriteSystem::full());
    let [u, v, y, t] = kappa();
    println!("κ: u = {u}, v = {v}, y = {y}, t = {t}");
    let [s, x1, t] = psi();
    println!("ψ: s = {s}, x1 = {x1}, t = {t}");
    println!();
    for c in identity_checks() {
        let mark = if c.passed() { "ok  " } else { "FAIL" };
        println!("{mark} {:<50} expected {:<5} residual {}", c.name, c.expected, c.normal_form);
    }
}
