//! Free difference quotients, cyclic derivatives, derivations and the
//! bracket on polynomial vector fields, in exact arithmetic.

use free_euler::algebra::{bracket, cyclic_grad, directional, free_diff};
use free_euler::text::{format_bitensor, format_field, format_poly, parse_field, parse_poly};
use free_euler::{GaussRational as Q, NcPoly, VectorField};

fn main() -> free_euler::Result<()> {
    let p: NcPoly<Q> = parse_poly("s1*s2*s1 - (1/3)*i*s2^2 + 2", 2)?;
    println!("P        = {}", format_poly(&p));
    println!("P*       = {}", format_poly(&p.adjoint()));
    for j in 1..=2 {
        println!("∂_{j} P    = {}", format_bitensor(&free_diff(j, &p)?));
    }
    println!("δP       = {}", format_field(&cyclic_grad(&p)));

    let rot: VectorField<Q> = parse_field("(s2, -s1)", None)?;
    let grad: VectorField<Q> = parse_field("(s1, s2)", None)?;
    println!("D_rot P  = {}", format_poly(&directional(&rot, &p)?));
    println!("[rot, grad] = {}", format_field(&bracket(&rot, &grad)?));

    let q: NcPoly<Q> = parse_poly("s1^2*s2 + s2*s1^2", 2)?;
    let c = p.commutator(&q)?;
    println!("[P, Q]   = {} terms, δ[P,Q] has degree {:?}", c.num_terms(), cyclic_grad(&c).degree());
    Ok(())
}
