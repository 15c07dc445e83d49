use std::collections::{BTreeMap, HashMap};

use crate::algebra::poly::{Accumulator, NcPoly};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::word::Word;

/// An element of `C<n> ⊗ C<n>`, stored as a sparse map over word pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct BiTensor<S> {
    n: usize,
    terms: BTreeMap<(Word, Word), S>,
}

impl<S: Scalar> BiTensor<S> {
    pub fn zero(n: usize) -> Self {
        BiTensor {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// `c * (left ⊗ right)`
    pub fn simple(n: usize, left: Word, right: Word, c: S) -> Self {
        let mut t = Self::zero(n);
        t.add_term(left, right, c);
        t
    }

    pub(crate) fn from_map(n: usize, map: HashMap<(Word, Word), S>) -> Self {
        BiTensor {
            n,
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &S)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: S) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.terms.entry(key.clone()).or_insert_with(S::zero);
        entry.add_assign_ref(&c);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    /// The flip `a ⊗ b ↦ b ⊗ a`.
    pub fn flip(&self) -> Self {
        BiTensor {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
                .collect(),
        }
    }

    /// The multiplication map `a ⊗ b ↦ ab`.
    pub fn multiply(&self) -> NcPoly<S> {
        let mut acc = Accumulator::new(self.n);
        for (a, b, c) in self.terms() {
            acc.add(a.concat(b), c.clone());
        }
        acc.finish()
    }

    /// `(ξ ⊗ η)* = ξ* ⊗ η*`
    pub fn adjoint(&self) -> Self {
        BiTensor {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((a.reversed(), b.reversed()), c.conj()))
                .collect(),
        }
    }

    /// `(p ⊗ 1) · self`
    pub fn left_mul(&self, p: &NcPoly<S>) -> Result<Self> {
        p.check_same_n(&NcPoly::zero(self.n))?;
        let mut map = HashMap::new();
        for (a, b, c) in self.terms() {
            for (u, d) in p.terms() {
                let e = map.entry((u.concat(a), b.clone())).or_insert_with(S::zero);
                e.add_mul(d, c);
            }
        }
        Ok(Self::from_map(self.n, map))
    }

    /// `self · (1 ⊗ q)`
    pub fn right_mul(&self, q: &NcPoly<S>) -> Result<Self> {
        q.check_same_n(&NcPoly::zero(self.n))?;
        let mut map = HashMap::new();
        for (a, b, c) in self.terms() {
            for (u, d) in q.terms() {
                let e = map.entry((a.clone(), b.concat(u))).or_insert_with(S::zero);
                e.add_mul(c, d);
            }
        }
        Ok(Self::from_map(self.n, map))
    }
}
