//! The free `*`-algebra `C<s_1, ..., s_n>` and its derivations.
//!
//! Provides free difference quotients `∂_j`, cyclic derivatives `δ_j`, the
//! derivations `D_b = Σ_j m_{b_j} ∘ ∂_j` and the Lie bracket on vector fields.

mod field;
mod poly;
mod tensor;

use std::collections::HashMap;

pub use field::VectorField;
pub use poly::{Accumulator, NcPoly};
pub use tensor::BiTensor;

use crate::error::Result;
use crate::scalar::Scalar;
use crate::word::{check_index, Word};

/// Free difference quotient `∂_j P`.
///
/// A word is split at every occurrence of `s_j`:
/// `∂_j(s_{i1}...s_{im}) = Σ_{i_k = j} s_{i1}...s_{i(k-1)} ⊗ s_{i(k+1)}...s_{im}`.
pub fn free_diff<S: Scalar>(j: usize, p: &NcPoly<S>) -> Result<BiTensor<S>> {
    check_index(j, p.n())?;
    let j = j as u8;
    let mut map: HashMap<(Word, Word), S> = HashMap::new();
    for (w, c) in p.terms() {
        let l = w.letters();
        for (k, _) in l.iter().enumerate().filter(|(_, &x)| x == j) {
            let key = (Word::from_letters(&l[..k]), Word::from_letters(&l[k + 1..]));
            map.entry(key).or_insert_with(S::zero).add_assign_ref(c);
        }
    }
    Ok(BiTensor::from_map(p.n(), map))
}

/// Cyclic derivative `δ_j = μ ∘ flip ∘ ∂_j`: each occurrence of `s_j`
/// contributes the cyclic rotation of the word that starts right after it.
pub fn cyclic_diff<S: Scalar>(j: usize, p: &NcPoly<S>) -> Result<NcPoly<S>> {
    check_index(j, p.n())?;
    let j = j as u8;
    let mut acc = Accumulator::new(p.n());
    for (w, c) in p.terms() {
        let l = w.letters();
        for (k, _) in l.iter().enumerate().filter(|(_, &x)| x == j) {
            acc.add(Word::concat3(&l[k + 1..], &[], &l[..k]), c.clone());
        }
    }
    Ok(acc.finish())
}

/// Cyclic gradient `δP = (δ_1 P, ..., δ_n P)`.
pub fn cyclic_grad<S: Scalar>(p: &NcPoly<S>) -> VectorField<S> {
    let comps = (1..=p.n())
        .map(|j| cyclic_diff(j, p).expect("index in range"))
        .collect();
    VectorField::new(p.n(), comps).expect("components share n")
}

/// `m_b(P ⊗ Q) = P b Q`, extended linearly.
pub fn insert<S: Scalar>(b: &NcPoly<S>, t: &BiTensor<S>) -> Result<NcPoly<S>> {
    b.check_same_n(&NcPoly::zero(t.n()))?;
    let mut acc = Accumulator::new(t.n());
    for (l, r, c) in t.terms() {
        for (u, d) in b.terms() {
            acc.add_product(Word::concat3(l.letters(), u.letters(), r.letters()), c, d);
        }
    }
    Ok(acc.finish())
}

/// `m_b(flip(∂_k P))`: every occurrence of `s_k` in a word `L s_k R`
/// contributes `R b L`.
pub fn flipped_insert<S: Scalar>(b: &NcPoly<S>, k: usize, p: &NcPoly<S>) -> Result<NcPoly<S>> {
    p.check_same_n(b)?;
    check_index(k, p.n())?;
    let k = k as u8;
    let mut acc = Accumulator::new(p.n());
    for (w, c) in p.terms() {
        let l = w.letters();
        for (pos, _) in l.iter().enumerate().filter(|(_, &x)| x == k) {
            for (u, d) in b.terms() {
                acc.add_product(Word::concat3(&l[pos + 1..], u.letters(), &l[..pos]), c, d);
            }
        }
    }
    Ok(acc.finish())
}

/// The derivation `D_b P = Σ_j m_{b_j}(∂_j P)`, i.e. `d/dε P(s + ε b)` at 0.
///
/// Computed in one pass: each letter `s_j` of each word is replaced by `b_j`.
pub fn directional<S: Scalar>(b: &VectorField<S>, p: &NcPoly<S>) -> Result<NcPoly<S>> {
    p.check_same_n(&NcPoly::zero(b.n()))?;
    let mut acc = Accumulator::new(p.n());
    for (w, c) in p.terms() {
        let l = w.letters();
        for (pos, &j) in l.iter().enumerate() {
            for (u, d) in b.component(j as usize).terms() {
                acc.add_product(Word::concat3(&l[..pos], u.letters(), &l[pos + 1..]), c, d);
            }
        }
    }
    Ok(acc.finish())
}

/// Componentwise `D_b`.
pub fn directional_field<S: Scalar>(b: &VectorField<S>, a: &VectorField<S>) -> Result<VectorField<S>> {
    b.check_same_n(a)?;
    let comps = a
        .components()
        .iter()
        .map(|p| directional(b, p))
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(a.n(), comps)
}

/// The Poisson-type bracket `{P, Q}_j = D_P Q_j − D_Q P_j`.
pub fn poisson_bracket<S: Scalar>(p: &VectorField<S>, q: &VectorField<S>) -> Result<VectorField<S>> {
    let dpq = directional_field(p, q)?;
    let dqp = directional_field(q, p)?;
    dpq.checked_sub(&dqp)
}

/// The Lie bracket used for the Euler equations, `[P, Q] = −{P, Q}`.
pub fn bracket<S: Scalar>(p: &VectorField<S>, q: &VectorField<S>) -> Result<VectorField<S>> {
    Ok(poisson_bracket(p, q)?.neg())
}
