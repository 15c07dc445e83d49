//! Cyclic vorticity `Ω = i Σ [s_j, v_j]`: its moments, and the
//! instantaneous transport rates `τ(D_v Ω^m)` that vanish for
//! divergence-free `v`.

use free_euler::euler::{check_vorticity_transport, vorticity, vorticity_moments, vorticity_transport_direct};
use free_euler::leray::c_map;
use free_euler::random::{random_divergence_free, seeded};
use free_euler::text::{format_field, format_poly, parse_field};
use free_euler::{GaussRational as Q, VectorField};

fn main() -> free_euler::Result<()> {
    let rot: VectorField<Q> = parse_field("(s2, -s1)", None)?;
    let omega = vorticity(&rot);
    println!("Ω = {}, C(Ω) = {}", format_poly(&omega), format_poly(&c_map(&omega)));
    let m: Vec<String> = vorticity_moments(&rot, 6).iter().map(ToString::to_string).collect();
    println!("τ(Ω^m), m = 1..6: {}", m.join(", "));

    let mut rng = seeded(17);
    for _ in 0..3 {
        let v: VectorField<Q> = random_divergence_free(&mut rng, 2, 2)?;
        println!("v = {}", format_field(&v));
        let moments: Vec<String> = vorticity_moments(&v, 4).iter().map(ToString::to_string).collect();
        println!("  τ(Ω^m) = {}", moments.join(", "));
        for m in 1..=3 {
            println!(
                "  m = {m}: τ(D_v Ω^m) = {} (expanded: {})",
                check_vorticity_transport(&v, m)?,
                vorticity_transport_direct(&v, m)?
            );
        }
    }
    Ok(())
}
