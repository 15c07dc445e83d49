//! The Fock identification: polynomials acting on the vacuum, Wick
//! polynomials, and the Ornstein–Uhlenbeck semigroup / number operator.

use free_euler::semicircular::{apply_number_op, apply_ou_rational, fock_to_poly, poly_to_fock, wick_polynomial};
use free_euler::text::{format_poly, parse_poly};
use free_euler::{GaussRational as Q, NcPoly, Word};
use num_rational::BigRational;

fn main() -> free_euler::Result<()> {
    for letters in [&[1u8][..], &[1, 1], &[1, 1, 1], &[1, 2, 1], &[1, 1, 2, 2]] {
        let w = Word::from_letters(letters);
        let p: NcPoly<Q> = wick_polynomial(2, &w);
        println!("W({w}) = {}", format_poly(&p));
    }

    let p: NcPoly<Q> = parse_poly("s1^3 + s1*s2*s1 - 2", 2)?;
    let xi = poly_to_fock(&p);
    println!("P·1 coordinates:");
    for (w, c) in xi.entries() {
        println!("  e[{w:?}] {c}");
    }
    assert_eq!(fock_to_poly(&xi), p);

    let half = BigRational::new(1.into(), 2.into());
    let contracted = apply_ou_rational(&half, &xi)?;
    println!("P_t with e^(-t) = 1/2: {}", format_poly(&fock_to_poly(&contracted)));
    println!("N(P·1):               {}", format_poly(&fock_to_poly(&apply_number_op(&xi))));
    Ok(())
}
