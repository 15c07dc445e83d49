use std::collections::btree_map;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::{check_index, Word};

/// A non-commutative polynomial in `s_1, ..., s_n`.
///
/// Terms are kept in canonical form: each word appears at most once and no
/// zero coefficient is stored. Iteration follows the (length, lex) word order.
#[derive(Clone, Debug, PartialEq)]
pub struct NcPoly<S> {
    n: usize,
    terms: BTreeMap<Word, S>,
}

/// Scratch map used while building a polynomial out of many contributions.
pub struct Accumulator<S> {
    n: usize,
    terms: HashMap<Word, S>,
}

impl<S: Scalar> Accumulator<S> {
    pub fn new(n: usize) -> Self {
        Accumulator {
            n,
            terms: HashMap::new(),
        }
    }

    pub fn add(&mut self, w: Word, c: S) {
        match self.terms.entry(w) {
            std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&c),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Adds `a * b` at `w`.
    pub fn add_product(&mut self, w: Word, a: &S, b: &S) {
        match self.terms.entry(w) {
            std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_mul(a, b),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(a.mul_ref(b));
            }
        }
    }

    pub fn add_poly(&mut self, p: &NcPoly<S>) {
        for (w, c) in p.terms() {
            self.add(w.clone(), c.clone());
        }
    }

    pub fn finish(self) -> NcPoly<S> {
        NcPoly {
            n: self.n,
            terms: self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl<S: Scalar> NcPoly<S> {
    pub fn zero(n: usize) -> Self {
        NcPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, S::one())
    }

    pub fn constant(n: usize, c: S) -> Self {
        Self::monomial(n, Word::empty(), c)
    }

    /// The generator `s_j`, `1 <= j <= n`.
    pub fn generator(n: usize, j: usize) -> Result<Self> {
        check_index(j, n)?;
        Ok(Self::monomial(n, Word::letter(j as u8), S::one()))
    }

    /// `c * w`. Letters of `w` are assumed to lie in `1..=n`.
    pub fn monomial(n: usize, w: Word, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { n, terms }
    }

    /// Sums repeated words and drops zeros. Fails if a letter exceeds `n`.
    pub fn from_terms<I: IntoIterator<Item = (Word, S)>>(n: usize, terms: I) -> Result<Self> {
        let mut acc = Accumulator::new(n);
        for (w, c) in terms {
            if w.max_letter() as usize > n || w.letters().contains(&0) {
                return Err(Error::IndexOutOfRange {
                    index: w.max_letter() as usize,
                    n,
                });
            }
            acc.add(w, c);
        }
        Ok(acc.finish())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Word, S> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length; `None` stands for the degree −∞ of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::GeneratorMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        out.add_assign_poly(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        out.sub_assign_poly(other);
        Ok(out)
    }

    /// Word-concatenation product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut acc = Accumulator::new(self.n);
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                acc.add_product(u.concat(v), a, b);
            }
        }
        Ok(acc.finish())
    }

    pub(crate) fn add_assign_poly(&mut self, other: &Self) {
        for (w, c) in other.terms() {
            self.add_term(w.clone(), c);
        }
    }

    pub(crate) fn sub_assign_poly(&mut self, other: &Self) {
        for (w, c) in other.terms() {
            self.add_term(w.clone(), &c.neg_ref());
        }
    }

    /// Adds `c * w` in place, keeping the canonical form.
    pub fn add_term(&mut self, w: Word, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        self.map_coeffs(|x| x.mul_ref(c))
    }

    /// Applies `f` to every coefficient, dropping results that vanish.
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> NcPoly<T> {
        NcPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter_map(|(w, c)| {
                    let v = f(c);
                    (!v.is_zero()).then(|| (w.clone(), v))
                })
                .collect(),
        }
    }

    /// The involution: words reversed, coefficients conjugated.
    pub fn adjoint(&self) -> Self {
        NcPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.reversed(), c.conj()))
                .collect(),
        }
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    /// Terms of word length exactly `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        NcPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// `[self, other] = self*other - other*self`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.checked_mul(other)?;
        let ba = other.checked_mul(self)?;
        ab.checked_sub(&ba)
    }

    pub fn pow(&self, m: usize) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..m {
            out = &out * self;
        }
        out
    }
}

// Operator forms panic on a generator-count mismatch; the `checked_*`
// methods report it instead.

impl<S: Scalar> Add for &NcPoly<S> {
    type Output = NcPoly<S>;
    fn add(self, rhs: Self) -> NcPoly<S> {
        self.checked_add(rhs).expect("generator count mismatch")
    }
}

impl<S: Scalar> Sub for &NcPoly<S> {
    type Output = NcPoly<S>;
    fn sub(self, rhs: Self) -> NcPoly<S> {
        self.checked_sub(rhs).expect("generator count mismatch")
    }
}

impl<S: Scalar> Mul for &NcPoly<S> {
    type Output = NcPoly<S>;
    fn mul(self, rhs: Self) -> NcPoly<S> {
        self.checked_mul(rhs).expect("generator count mismatch")
    }
}

impl<S: Scalar> Neg for &NcPoly<S> {
    type Output = NcPoly<S>;
    fn neg(self) -> NcPoly<S> {
        self.map_coeffs(|c| c.neg_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational as Q;

    fn s(j: usize) -> NcPoly<Q> {
        NcPoly::generator(2, j).unwrap()
    }

    fn c(v: i64) -> NcPoly<Q> {
        NcPoly::constant(2, Q::from_i64(v))
    }

    #[test]
    fn product_examples() {
        let w = |l: &[u8]| Word::from_letters(l);
        assert_eq!(&s(1) * &s(2), NcPoly::monomial(2, w(&[1, 2]), Q::one()));
        let lhs = &(&s(1) + &c(1)) * &(&s(1) - &c(1));
        assert_eq!(lhs, &(&s(1) * &s(1)) - &c(1));
        let a = &c(2) * &(&s(1) * &s(2));
        let b = &c(3) * &s(2);
        assert_eq!(&a * &b, NcPoly::monomial(2, w(&[1, 2, 2]), Q::from_i64(6)));
    }

    #[test]
    fn adjoint_examples() {
        let w = |l: &[u8]| Word::from_letters(l);
        assert_eq!((&s(1) * &s(2)).adjoint(), &s(2) * &s(1));
        let is1 = s(1).scale(&Q::imag());
        assert_eq!(is1.adjoint(), s(1).scale(&Q::imag().neg_ref()));
        let sym = NcPoly::from_terms(2, [(w(&[1, 1]), Q::one()), (w(&[2, 2]), Q::one())]).unwrap();
        assert!(sym.is_self_adjoint());
    }

    #[test]
    fn degree_and_zero() {
        assert_eq!(NcPoly::<Q>::zero(2).degree(), None);
        assert_eq!(c(5).degree(), Some(0));
        assert_eq!((&s(1) * &s(2)).degree(), Some(2));
        assert!((&s(1) - &s(1)).is_zero());
    }

    #[test]
    fn mismatch_is_reported() {
        let a: NcPoly<Q> = NcPoly::generator(2, 1).unwrap();
        let b: NcPoly<Q> = NcPoly::generator(3, 1).unwrap();
        assert_eq!(
            a.checked_mul(&b),
            Err(Error::GeneratorMismatch { left: 2, right: 3 })
        );
        assert!(NcPoly::<Q>::generator(2, 3).is_err());
    }
}
