//! Chevalley–Weil multiplicities and the ΣINT condition for weighted points
//! on ℙ¹, starting from the weights (1/3)³ (1/6)⁶.
//!
//! Run with `cargo run --example deligne_mostow`.

use dmk3::covers::{
    cw_multiplicities, dm_signature, genus_riemann_hurwitz, kunneth_invariant_dim, parse_weights, sigma_int_check,
    standard_weights, BranchData,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = standard_weights();
    let b = BranchData::from_weights(&w)?;
    println!("μ_{} cover with exponents {:?}", b.degree, b.exponents);
    let cw = cw_multiplicities(&b);
    println!("genus {} (Riemann–Hurwitz {})", cw.genus, genus_riemann_hurwitz(&b));
    for (j, m) in cw.multiplicities.iter().enumerate() {
        println!("  m_{j} = {m}");
    }
    let (p, q) = dm_signature(&b)?;
    println!("signature of the ζ-eigenspace ({p},{q})");
    println!("μ_d-invariants of the Künneth component: {}", kunneth_invariant_dim(&b)?);

    for src in ["1/3,1/3,1/3,1/6,1/6,1/6,1/6,1/6,1/6", "1/2,1/4,1/4,1/4,1/4,1/2"] {
        let report = sigma_int_check(&parse_weights(src)?)?;
        println!("ΣINT for [{src}]: {} ({} violations)", report.ok, report.violations.len());
    }
    Ok(())
}
