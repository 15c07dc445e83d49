use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use crate::algebra::{NcPoly, VectorField};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::word::Word;

// Keyed by word only; the count does not depend on n. Write-once entries,
// so racing writers store identical values.
static PAIRINGS: LazyLock<RwLock<HashMap<Word, u64>>> = LazyLock::new(Default::default);

/// Number of non-crossing pair partitions of the positions of `w` in which
/// paired positions carry the same letter. This is `τ(w)` for a semicircular
/// system.
pub fn pairing_count(w: &Word) -> u64 {
    pairing_count_slice(w.letters())
}

fn pairing_count_slice(l: &[u8]) -> u64 {
    if l.len() % 2 == 1 {
        return 0;
    }
    if l.is_empty() {
        return 1;
    }
    if l.len() == 2 {
        return (l[0] == l[1]) as u64;
    }
    let key = Word::from_letters(l);
    if let Some(&v) = PAIRINGS.read().expect("trace cache poisoned").get(&key) {
        return v;
    }
    // Pair the first position with each later position at odd offset
    // carrying the same letter; inside and outside factor independently.
    let mut total = 0u64;
    for p in (1..l.len()).step_by(2) {
        if l[p] != l[0] {
            continue;
        }
        let inside = pairing_count_slice(&l[1..p]);
        if inside == 0 {
            continue;
        }
        total += inside * pairing_count_slice(&l[p + 1..]);
    }
    PAIRINGS
        .write()
        .expect("trace cache poisoned")
        .insert(key, total);
    total
}

/// The semicircular trace `τ(P)`.
pub fn trace<S: Scalar>(p: &NcPoly<S>) -> S {
    let mut acc = S::zero();
    for (w, c) in p.terms() {
        let k = pairing_count(w);
        if k != 0 {
            acc.add_assign_ref(&c.scale_i64(k as i64));
        }
    }
    acc
}

/// `τ(PQ)` without materializing the product.
pub fn trace_of_product<S: Scalar>(p: &NcPoly<S>, q: &NcPoly<S>) -> S {
    let mut acc = S::zero();
    let mut buf = Vec::new();
    for (u, a) in p.terms() {
        let mut partial = S::zero();
        for (v, b) in q.terms() {
            if (u.len() + v.len()) % 2 == 1 {
                continue;
            }
            buf.clear();
            buf.extend_from_slice(u.letters());
            buf.extend_from_slice(v.letters());
            let k = pairing_count_slice(&buf);
            if k != 0 {
                partial.add_assign_ref(&b.scale_i64(k as i64));
            }
        }
        acc.add_mul(a, &partial);
    }
    acc
}

/// The symmetric bilinear form `⟨a, b⟩ = Σ_j τ(a_j b_j)`.
pub fn inner_sym<S: Scalar>(a: &VectorField<S>, b: &VectorField<S>) -> Result<S> {
    a.check_same_n(b)?;
    let mut acc = S::zero();
    for (x, y) in a.components().iter().zip(b.components()) {
        acc.add_assign_ref(&trace_of_product(x, y));
    }
    Ok(acc)
}

/// The Hermitian form `⟨a, b⟩ = Σ_j τ(a_j b_j*)`, linear in `a`.
pub fn inner_herm<S: Scalar>(a: &VectorField<S>, b: &VectorField<S>) -> Result<S> {
    a.check_same_n(b)?;
    let mut acc = S::zero();
    for (x, y) in a.components().iter().zip(b.components()) {
        acc.add_assign_ref(&trace_of_product(x, &y.adjoint()));
    }
    Ok(acc)
}
