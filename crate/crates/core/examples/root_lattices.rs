//! Root counts, determinants and discriminant forms of the ADE lattices.
//!
//! Run with `cargo run --example root_lattices`.

use dmk3::arith::int;
use dmk3::lattices::parse_lattice_expr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for expr in ["A1", "A2", "A3", "D4", "D5", "E6", "E7", "E8"] {
        let l = parse_lattice_expr(expr)?;
        let roots = l.root_count(&int(2))?;
        let q = l.discriminant_form()?;
        println!("{expr:>3}: {} roots, {}", roots, l.fingerprint());
        println!("     discriminant form {q}");
    }
    Ok(())
}
