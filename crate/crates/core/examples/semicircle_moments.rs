//! Moments of a semicircular system: non-crossing pairings, Catalan
//! numbers and mixed moments of free semicirculars.

use free_euler::semicircular::{inner_herm, inner_sym, pairing_count, trace};
use free_euler::text::{format_poly, parse_field, parse_poly};
use free_euler::{GaussRational as Q, NcPoly, VectorField, Word};

fn main() -> free_euler::Result<()> {
    for m in 0..=8 {
        let w = Word::from_letters(&vec![1; 2 * m]);
        println!("τ(s^{:<2}) = {}", 2 * m, pairing_count(&w));
    }
    for text in ["s1*s2*s1*s2", "s1*s2*s2*s1", "s1^2*s2^2*s1^2", "(s1 + s2)^4", "(s1*s2 - s2*s1)^2"] {
        let p: NcPoly<Q> = parse_poly(text, 2)?;
        println!("τ({text}) = {}   [{} terms]", trace(&p), p.num_terms());
        let _ = format_poly(&p);
    }
    let a: VectorField<Q> = parse_field("(s2, -s1)", None)?;
    let b: VectorField<Q> = parse_field("(i*s1, s2^2)", None)?;
    println!("⟨a, a⟩ = {}", inner_sym(&a, &a)?);
    println!("⟨a, b⟩ sym = {}, herm = {}", inner_sym(&a, &b)?, inner_herm(&a, &b)?);
    Ok(())
}
