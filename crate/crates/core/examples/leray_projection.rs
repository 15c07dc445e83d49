//! The free Leray projection: ranks of the divergence-free blocks, the
//! split of a field into divergence-free part and cyclic gradient, and
//! pressure recovery.

use free_euler::leray::{build_leray_basis, is_divergence_free, leray_project_full, recover_pressure};
use free_euler::random::{random_field, seeded};
use free_euler::text::{format_field, format_poly, parse_field};
use free_euler::{GaussRational as Q, VectorField};

fn main() -> free_euler::Result<()> {
    for n in 2..=3 {
        let ranks: Vec<String> = (0..=4)
            .map(|k| build_leray_basis(n, k).map(|b| format!("{}/{}", b.rank(), b.dim())))
            .collect::<Result<_, _>>()?;
        println!("n = {n}: rank X_k / n^(k+1) for k = 0..4: {}", ranks.join("  "));
    }

    for text in ["(s1, s2)", "(s2, -s1)", "(s1*s2, s1^2)", "(s2*s1*s2, s1)"] {
        let a: VectorField<Q> = parse_field(text, None)?;
        let pa = leray_project_full(&a)?;
        let p = recover_pressure(&a.checked_sub(&pa)?)?;
        println!("a = {text}\n  Πa = {}\n  p  = {}", format_field(&pa), format_poly(&p));
    }

    let a: VectorField<Q> = random_field(&mut seeded(1), 2, 3, 4, false);
    let pa = leray_project_full(&a)?;
    println!(
        "random a: residual {:.3}, after Π: divergence-free = {}",
        is_divergence_free(&a)?.residual,
        is_divergence_free(&pa)?.divergence_free
    );
    Ok(())
}
