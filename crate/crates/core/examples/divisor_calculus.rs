//! Canonical class bookkeeping on the blow-up of ℙ² at p and the points
//! infinitely near to it.
//!
//! Run with `cargo run --example divisor_calculus`.

use dmk3::fibration::{canonical_class_check, DivisorClass};

fn main() {
    let l = DivisorClass::line();
    let e = DivisorClass::eps_p();
    println!("ℓ² = {}, ε_p² = {}, ℓ·ε_p = {}", l.square(), e.square(), l.dot(&e));

    let r = canonical_class_check();
    println!("K̂   = {}", r.k_hat);
    println!("Ê_p = {}", r.e_p_hat);
    println!("K_R = {}", r.k_r);
    println!("2K_R + K̂ + Ê_p = {}", r.twice_cover_canonical);
    println!("Ê_p² = {}, on the cover {}", r.e_p_hat_square, r.e_p_hat_cover_square);
    println!("K̂·Ê_p = {}", r.k_hat_dot_e_p_hat);
    println!("all relations hold: {}", r.ok());
}
