//! Seeded random polynomials and fields for property checks and demos.
//!
//! Coefficients are small Gaussian rationals so exact-mode identities stay
//! cheap; float callers get the same values converted.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{NcPoly, VectorField};
use crate::error::Result;
use crate::leray::build_leray_basis;
use crate::scalar::{GaussRational, Scalar};
use crate::semicircular::GradedFieldCoords;
use crate::word::Word;

/// The generator used everywhere a seed is accepted.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> Word {
    let letters: Vec<u8> = (0..len).map(|_| rng.random_range(1..=n as u8)).collect();
    Word::from_letters(&letters)
}

/// `p/q` with `|p| <= 4`, `1 <= q <= 4`, optionally plus an imaginary part.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, complex: bool) -> GaussRational {
    let part = |rng: &mut R| GaussRational::from_frac(rng.random_range(-4..=4), rng.random_range(1..=4));
    let re = part(rng);
    if complex && rng.random_bool(0.5) {
        let im = part(rng);
        re + im * GaussRational::imag()
    } else {
        re
    }
}

/// Up to `max_terms` monomials of degree at most `max_degree`.
pub fn random_poly<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_degree: usize,
    max_terms: usize,
    complex: bool,
) -> NcPoly<S> {
    let terms = rng.random_range(1..=max_terms.max(1));
    let mut p = NcPoly::zero(n);
    for _ in 0..terms {
        let len = rng.random_range(0..=max_degree);
        let w = random_word(rng, n, len);
        p.add_term(w, &S::from_gauss(&random_scalar(rng, complex)));
    }
    p
}

/// `(p + p*)/2` for a random `p`.
pub fn random_self_adjoint_poly<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_degree: usize,
    max_terms: usize,
) -> NcPoly<S> {
    let p: NcPoly<S> = random_poly(rng, n, max_degree, max_terms, true);
    (&p + &p.adjoint()).scale(&S::from_gauss(&GaussRational::from_frac(1, 2)))
}

pub fn random_field<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_degree: usize,
    max_terms: usize,
    complex: bool,
) -> VectorField<S> {
    let comps = (0..n).map(|_| random_poly(rng, n, max_degree, max_terms, complex)).collect();
    VectorField::new(n, comps).expect("components share n")
}

/// A nonzero self-adjoint divergence-free field of degree at most
/// `max_degree`.
///
/// Built from small integer combinations of the spanning vectors of each
/// `X_k`, `1 <= k <= max_degree`, then symmetrized; adjoining preserves every
/// `X_k`, so the result stays divergence-free.
pub fn random_divergence_free<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_degree: usize,
) -> Result<VectorField<S>> {
    loop {
        let mut coords = GradedFieldCoords::<S>::zero(n);
        for k in 1..=max_degree {
            let basis = build_leray_basis(n, k)?;
            let gens = basis.generators();
            let mut block = vec![S::zero(); basis.dim()];
            let picks = rng.random_range(0..=2usize);
            for _ in 0..picks {
                let g = &gens[rng.random_range(0..gens.len())];
                let c = rng.random_range(-2..=2i64);
                for &(idx, val) in g {
                    block[idx].add_assign_ref(&S::from_i64(c * val));
                }
            }
            coords.set_block(k, &block);
        }
        let v = coords.to_field().self_adjoint_part();
        if !v.is_zero() {
            return Ok(v);
        }
    }
}
