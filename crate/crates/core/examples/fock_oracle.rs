//! Cross-check against explicit matrices on a truncated Fock space:
//! vacuum expectations versus the pairing-count trace, and the
//! divergence-free blocks re-derived by SVD.

use free_euler::oracle::{oracle_xk_check, TruncatedFock};
use free_euler::random::{random_word, seeded};
use free_euler::semicircular::trace;
use free_euler::{GaussRational as Q, NcPoly, Scalar};

fn main() -> free_euler::Result<()> {
    let one = TruncatedFock::build(1, 12)?;
    for m in 0..=6 {
        let w = free_euler::Word::from_letters(&vec![1; 2 * m]);
        let p = NcPoly::monomial(1, w, Q::one());
        println!("⟨s^{} 1, 1⟩ = {:.12}", 2 * m, one.vacuum_expectation(&p)?.re);
    }

    let fock = TruncatedFock::build(3, 8)?;
    let mut rng = seeded(5);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let len = rand::Rng::random_range(&mut rng, 0..=8);
        let p = NcPoly::monomial(3, random_word(&mut rng, 3, len), Q::one());
        worst = worst.max((fock.vacuum_expectation(&p)? - trace(&p).to_complex()).norm());
    }
    println!("n = 3, level 8 (dim {}): max |oracle − τ| = {worst:.1e}", fock.dim());

    for (n, k) in [(2, 1), (2, 3), (3, 1), (3, 2), (4, 1)] {
        let c = oracle_xk_check(n, k)?;
        println!(
            "X_{k} for n = {n}: rank {} (SVD) vs {} (exact), projection difference {:.1e}",
            c.numeric_rank, c.symbolic_rank, c.max_projection_diff
        );
    }
    Ok(())
}
