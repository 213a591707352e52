//! Checks that U ⊕ A2(−1)³ and A2 ⊕ E6(−1)² can be glued to the K3 lattice
//! and that an explicit embedding of the first has the second as complement.
//!
//! Run with `cargo run --example lattice_pair`.

use dmk3::lattices::{
    disc_forms_opposite, glue_determinant_check, k3_lattice, transcendental_lattice_model, trivial_lattice_embedding,
    trivial_lattice_model, Signature,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = trivial_lattice_model();
    let q = transcendental_lattice_model();
    println!("P: {}", p.fingerprint());
    println!("Q: {}", q.fingerprint());

    let glue = glue_determinant_check(&p, &q, 22, Signature::new(3, 19));
    println!("rank, signature and square determinant: {} (index {:?})", glue.ok, glue.index);

    let qp = p.discriminant_form()?;
    let qq = q.discriminant_form()?;
    println!("q_P = {qp}");
    println!("q_Q = {qq}");
    println!("q_P ≅ −q_Q: {}", disc_forms_opposite(&qp, &qq)?);

    let k3 = k3_lattice();
    let comp = k3.orthogonal_complement(&trivial_lattice_embedding())?;
    println!("complement of the embedding: {}", comp.fingerprint());
    println!("fingerprint of the complement matches Q: {}", comp.fingerprint() == q.fingerprint());
    Ok(())
}
