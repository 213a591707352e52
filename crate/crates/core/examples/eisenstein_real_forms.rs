//! The Hermitian lattice E(−3) ⊕ Λ₁², its underlying real lattice and the
//! eigenspace of the μ₃ action.
//!
//! Run with `cargo run --example eisenstein_real_forms`.

use dmk3::arith::rat;
use dmk3::eisenstein::{eigenspace_hermitian, mu3_checks, omega_check, real_form, HermitianLattice};
use dmk3::lattices::parse_lattice_expr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = HermitianLattice::eisenstein().rescale(&rat(-3, 1))?;
    let l1 = HermitianLattice::lambda1();
    println!("Λ₁ Hermitian signature {}", l1.signature());
    let lam = HermitianLattice::direct_sum(&[e, l1.clone(), l1])?;

    let r = real_form(&lam);
    let fp = r.lattice()?.fingerprint()?;
    println!("real form: {fp}");
    for expr in ["A2+E6(-1)^2", "A2(-1)+E6^2"] {
        let target = parse_lattice_expr(expr)?.fingerprint();
        println!("  same invariants as {expr}: {}", fp == target);
    }

    let mu3 = mu3_checks(&r);
    println!(
        "μ₃: order three {}, fixed point free {}, trivial on A_L {}",
        mu3.order_three, mu3.fixed_point_free, mu3.trivial_on_discriminant
    );

    let eig = eigenspace_hermitian(&r)?;
    println!("ζ₃-eigenspace signature {} (unordered {:?})", eig.signature, eig.unordered_signature());

    let omega = omega_check();
    println!("ξ(ω, ω̄) = {} (sign {})", omega.xi_omega_omegabar, omega.sign);
    Ok(())
}
