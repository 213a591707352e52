//! The Jacobian fibration y² = x³ + F3(t)²F6(t): singular fibers, trivial
//! lattice and the ample class.
//!
//! Run with `cargo run --example elliptic_fibration [PENCIL]` where PENCIL
//! names a shipped pencil (default `standard`).

use dmk3::fibration::{
    ample_class_table, fiber_survey, line_intersection_multiplicities, trivial_lattice, weierstrass_b,
};
use dmk3::fixtures::{pencil_named, pencils};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "standard".into());
    let Some(fixture) = pencil_named(&name) else {
        let known: Vec<String> = pencils().into_iter().map(|p| p.name).collect();
        return Err(format!("unknown pencil `{name}`, known: {}", known.join(", ")).into());
    };
    let pencil = fixture.pencil;
    println!("F3 = {}", pencil.f3());
    println!("F6 = {}", pencil.f6());
    println!("b = {}", weierstrass_b(&pencil));

    let survey = fiber_survey(&pencil)?;
    print!("{}", survey.table());
    println!("Euler numbers sum to {}", survey.euler_sum);
    println!("trivial lattice: {}", trivial_lattice(&survey)?.fingerprint());

    for (label, point) in &fixture.points {
        let a = dmk3::fibration::parse_point(point)?;
        let li = line_intersection_multiplicities(&pencil, &a);
        println!("line towards {label} [{point}]: multiplicities {:?}", li.partition);
    }

    let h = ample_class_table();
    println!(
        "h = {:?}: h² = {}, h·f = {}, h·s = {}, all checks {}",
        h.h,
        h.h_squared,
        h.h_dot_fiber,
        h.h_dot_section,
        h.ok()
    );
    Ok(())
}
