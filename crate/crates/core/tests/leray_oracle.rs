//! The Leray projection against an independent description: in Fock
//! coordinates, coordinate `(j, u)` of a field is indexed by the word `j·u`,
//! cyclic gradients are exactly the vectors constant on rotation orbits of
//! these words, so `Π` subtracts the orbit mean.

use std::collections::{BTreeMap, BTreeSet};

use free_euler::algebra::VectorField;
use free_euler::leray::{build_leray_basis, leray_project_full};
use free_euler::random::{random_field, seeded};
use free_euler::semicircular::GradedFieldCoords;
use free_euler::{GaussRational as Q, Scalar, Word};
use proptest::prelude::*;

fn rotations(w: &[u8]) -> BTreeSet<Vec<u8>> {
    (0..w.len().max(1))
        .map(|r| w[r..].iter().chain(&w[..r]).copied().collect())
        .collect()
}

fn coordinates(a: &VectorField<Q>) -> BTreeMap<Vec<u8>, Q> {
    let coords = GradedFieldCoords::from_field(a);
    let mut out = BTreeMap::new();
    for (j, v) in coords.components().iter().enumerate() {
        for (u, c) in v.entries() {
            let mut w = vec![j as u8 + 1];
            w.extend_from_slice(u.letters());
            out.insert(w, c.clone());
        }
    }
    out
}

fn orbit_projection(x: &BTreeMap<Vec<u8>, Q>) -> BTreeMap<Vec<u8>, Q> {
    let mut out = BTreeMap::new();
    for w in x.keys() {
        for r in rotations(w) {
            if out.contains_key(&r) {
                continue;
            }
            let orbit = rotations(&r);
            let sum = orbit.iter().fold(Q::zero(), |acc, o| acc + x.get(o).cloned().unwrap_or_else(Q::zero));
            let mean = sum.mul_ref(&Q::from_i64(orbit.len() as i64).inv().unwrap());
            let value = x.get(&r).cloned().unwrap_or_else(Q::zero) - mean;
            out.insert(r, value);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn necklaces(n: usize, len: usize) -> usize {
    Word::all_of_length(n, len)
        .map(|w| rotations(w.letters()).into_iter().next().unwrap())
        .collect::<BTreeSet<_>>()
        .len()
}

#[test]
fn rank_is_words_minus_necklaces() {
    for n in 1..=4usize {
        for k in 0..=4usize {
            if n.pow(k as u32 + 1) > 1024 {
                continue;
            }
            let rank = build_leray_basis(n, k).unwrap().rank();
            assert_eq!(rank, n.pow(k as u32 + 1) - necklaces(n, k + 1), "n={n} k={k}");
        }
    }
}

#[test]
fn rank_of_degree_one_block() {
    for n in 1..=5usize {
        assert_eq!(build_leray_basis(n, 1).unwrap().rank(), n * (n - 1) / 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_subtracts_orbit_means(seed in any::<u64>(), n in 1usize..=3, deg in 0usize..=4) {
        let a: VectorField<Q> = random_field(&mut seeded(seed), n, deg, 6, true);
        let expected = orbit_projection(&coordinates(&a));
        let got = coordinates(&leray_project_full(&a).unwrap());
        prop_assert_eq!(got, expected);
    }
}
