use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, LazyLock, RwLock};

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::{Accumulator, NcPoly, VectorField};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::Word;

type Expansion = Arc<Vec<(Word, i64)>>;

// Both tables are integral and independent of n.
static MONOMIAL_TO_FOCK: LazyLock<RwLock<HashMap<Word, Expansion>>> = LazyLock::new(Default::default);
static WICK: LazyLock<RwLock<HashMap<Word, Expansion>>> = LazyLock::new(Default::default);

/// A vector of the full Fock space `⊕_k (C^n)^{⊗k}` in the basis of word
/// tensors, equivalently `Σ_w c_w W(w)` with `W(w)` the Wick polynomials.
///
/// The degree-`k` block is the set of entries whose word has length `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedVector<S> {
    n: usize,
    coeffs: BTreeMap<Word, S>,
}

impl<S: Scalar> GradedVector<S> {
    pub fn zero(n: usize) -> Self {
        GradedVector {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn vacuum(n: usize) -> Self {
        Self::basis(n, Word::empty())
    }

    pub fn basis(n: usize, w: Word) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w, S::one());
        GradedVector { n, coeffs }
    }

    pub fn from_entries<I: IntoIterator<Item = (Word, S)>>(n: usize, entries: I) -> Self {
        let mut v = Self::zero(n);
        for (w, c) in entries {
            v.add_entry(w, &c);
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, w: &Word) -> S {
        self.coeffs.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().map(Word::len)
    }

    /// Entries of the degree-`k` block.
    pub fn block(&self, k: usize) -> impl Iterator<Item = (&Word, &S)> {
        self.coeffs.iter().filter(move |(w, _)| w.len() == k)
    }

    pub fn add_entry(&mut self, w: Word, c: &S) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(w.clone()).or_insert_with(S::zero);
        e.add_assign_ref(c);
        if e.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.entries() {
            out.add_entry(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_blocks(|_| c.clone())
    }

    /// Multiplies block `k` by `factor(k)`.
    pub fn map_blocks(&self, factor: impl Fn(usize) -> S) -> Self {
        let mut cache: Vec<Option<S>> = Vec::new();
        let mut coeffs = BTreeMap::new();
        for (w, c) in &self.coeffs {
            let k = w.len();
            if cache.len() <= k {
                cache.resize(k + 1, None);
            }
            let f = cache[k].get_or_insert_with(|| factor(k));
            let v = c.mul_ref(f);
            if !v.is_zero() {
                coeffs.insert(w.clone(), v);
            }
        }
        GradedVector { n: self.n, coeffs }
    }

    /// The antiunitary `J(c e_{k1} ⊗ ... ⊗ e_{km}) = c̄ e_{km} ⊗ ... ⊗ e_{k1}`,
    /// which corresponds to the adjoint on polynomials.
    pub fn antiunitary(&self) -> Self {
        GradedVector {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, c)| (w.reversed(), c.conj()))
                .collect(),
        }
    }

    /// Fock inner product `Σ_w a_w conj(b_w)`.
    pub fn inner(&self, other: &Self) -> S {
        let mut acc = S::zero();
        for (w, a) in &self.coeffs {
            if let Some(b) = other.coeffs.get(w) {
                acc.add_mul(a, &b.conj());
            }
        }
        acc
    }

    pub fn norm_sqr_f64(&self) -> f64 {
        self.coeffs.values().map(Scalar::norm_sqr_f64).sum()
    }

    /// `s_j ξ = l_j ξ + l_j* ξ`: prepend `j`, plus delete a leading `j`.
    pub fn apply_generator(&self, j: u8) -> Self {
        let mut out: HashMap<Word, S> = HashMap::with_capacity(2 * self.coeffs.len());
        for (w, c) in &self.coeffs {
            out.entry(w.prepend(j))
                .or_insert_with(S::zero)
                .add_assign_ref(c);
            if w.first() == Some(j) {
                out.entry(w.tail()).or_insert_with(S::zero).add_assign_ref(c);
            }
        }
        GradedVector {
            n: self.n,
            coeffs: out.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// Fock coordinates of `P·1`, the vacuum vector acted on by `P(s_1, ..., s_n)`.
pub fn poly_to_fock<S: Scalar>(p: &NcPoly<S>) -> GradedVector<S> {
    let mut out: HashMap<Word, S> = HashMap::new();
    for (w, c) in p.terms() {
        for (x, k) in monomial_expansion(w).iter() {
            let v = c.scale_i64(*k);
            out.entry(x.clone()).or_insert_with(S::zero).add_assign_ref(&v);
        }
    }
    GradedVector {
        n: p.n(),
        coeffs: out.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    }
}

/// Inverse of [`poly_to_fock`]: `Σ_w c_w W(w)`.
pub fn fock_to_poly<S: Scalar>(v: &GradedVector<S>) -> NcPoly<S> {
    let mut acc = Accumulator::new(v.n());
    for (w, c) in v.entries() {
        for (x, k) in wick_polynomial_terms(w).iter() {
            acc.add(x.clone(), c.scale_i64(*k));
        }
    }
    acc.finish()
}

/// The Wick polynomial `W(w)`, with `W(∅) = 1` and
/// `W(j·u) = s_j W(u) − [u starts with j] W(u without its first letter)`.
pub fn wick_polynomial<S: Scalar>(n: usize, w: &Word) -> NcPoly<S> {
    let terms = wick_polynomial_terms(w);
    let mut acc = Accumulator::new(n);
    for (x, k) in terms.iter() {
        acc.add(x.clone(), S::from_i64(*k));
    }
    acc.finish()
}

fn monomial_expansion(w: &Word) -> Expansion {
    if let Some(e) = MONOMIAL_TO_FOCK.read().expect("fock cache poisoned").get(w) {
        return e.clone();
    }
    let e: Expansion = match w.first() {
        None => Arc::new(vec![(Word::empty(), 1)]),
        Some(j) => {
            let mut out: HashMap<Word, i64> = HashMap::new();
            for (x, k) in monomial_expansion(&w.tail()).iter() {
                *out.entry(x.prepend(j)).or_default() += k;
                if x.first() == Some(j) {
                    *out.entry(x.tail()).or_default() += k;
                }
            }
            let mut v: Vec<_> = out.into_iter().filter(|(_, k)| *k != 0).collect();
            v.sort();
            Arc::new(v)
        }
    };
    MONOMIAL_TO_FOCK
        .write()
        .expect("fock cache poisoned")
        .insert(w.clone(), e.clone());
    e
}

fn wick_polynomial_terms(w: &Word) -> Expansion {
    if let Some(e) = WICK.read().expect("wick cache poisoned").get(w) {
        return e.clone();
    }
    let e: Expansion = match w.first() {
        None => Arc::new(vec![(Word::empty(), 1)]),
        Some(j) => {
            let u = w.tail();
            let mut out: HashMap<Word, i64> = HashMap::new();
            for (x, k) in wick_polynomial_terms(&u).iter() {
                *out.entry(x.prepend(j)).or_default() += k;
            }
            if u.first() == Some(j) {
                for (x, k) in wick_polynomial_terms(&u.tail()).iter() {
                    *out.entry(x.clone()).or_default() -= k;
                }
            }
            let mut v: Vec<_> = out.into_iter().filter(|(_, k)| *k != 0).collect();
            v.sort();
            Arc::new(v)
        }
    };
    WICK.write()
        .expect("wick cache poisoned")
        .insert(w.clone(), e.clone());
    e
}

/// `P·ξ` for a polynomial acting on a Fock vector by `s_j = l_j + l_j*`.
///
/// Words are consumed right to left along a suffix trie, so a shared
/// suffix is applied once.
pub fn apply_poly<S: Scalar>(p: &NcPoly<S>, x: &GradedVector<S>) -> GradedVector<S> {
    let mut suffixes: HashSet<Word> = HashSet::new();
    for (w, _) in p.terms() {
        let l = w.letters();
        for start in 0..=l.len() {
            suffixes.insert(Word::from_letters(&l[start..]));
        }
    }
    let mut out = GradedVector::zero(x.n());
    visit_suffix(p, &suffixes, &Word::empty(), x, &mut out);
    out
}

fn visit_suffix<S: Scalar>(
    p: &NcPoly<S>,
    suffixes: &HashSet<Word>,
    suffix: &Word,
    current: &GradedVector<S>,
    out: &mut GradedVector<S>,
) {
    let c = p.coeff(suffix);
    if !c.is_zero() {
        for (w, a) in current.entries() {
            out.add_entry(w.clone(), &a.mul_ref(&c));
        }
    }
    for j in 1..=p.n() as u8 {
        let next = suffix.prepend(j);
        if suffixes.contains(&next) {
            let applied = current.apply_generator(j);
            visit_suffix(p, suffixes, &next, &applied, out);
        }
    }
}

/// Free Ornstein–Uhlenbeck semigroup: block `k` scaled by `e^{−kt}`.
pub fn apply_ou<S: Scalar>(t: f64, v: &GradedVector<S>) -> Result<GradedVector<S>> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    Ok(v.map_blocks(|k| S::from_f64((-(k as f64) * t).exp())))
}

/// Exact substitute for [`apply_ou`]: block `k` scaled by `r^k`, `0 < r <= 1`
/// standing in for `e^{−t}`.
pub fn apply_ou_rational<S: Scalar>(r: &BigRational, v: &GradedVector<S>) -> Result<GradedVector<S>> {
    if !r.is_positive() || *r > BigRational::one() {
        return Err(Error::BadContraction);
    }
    let base = S::from_ratio(r);
    Ok(v.map_blocks(|k| {
        let mut f = S::one();
        for _ in 0..k {
            f = f.mul_ref(&base);
        }
        f
    }))
}

/// Number operator: block `k` scaled by `k`.
pub fn apply_number_op<S: Scalar>(v: &GradedVector<S>) -> GradedVector<S> {
    v.map_blocks(|k| S::from_i64(k as i64))
}

/// Per-component Fock coordinates of a vector field.
///
/// The degree-`k` block of all components, flattened, is a vector of length
/// `n^{k+1}`; coordinate `(j, u)` sits at index `(j−1)·n^k + index(u)`, which
/// is the index of the word `j·u` among words of length `k+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedFieldCoords<S> {
    n: usize,
    components: Vec<GradedVector<S>>,
}

impl<S: Scalar> GradedFieldCoords<S> {
    pub fn zero(n: usize) -> Self {
        GradedFieldCoords {
            n,
            components: vec![GradedVector::zero(n); n],
        }
    }

    pub fn from_parts(n: usize, components: Vec<GradedVector<S>>) -> Self {
        assert_eq!(components.len(), n, "one graded vector per generator");
        GradedFieldCoords { n, components }
    }

    pub fn add(&self, other: &Self) -> Self {
        GradedFieldCoords {
            n: self.n,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_components(|x| x.scale(c))
    }

    pub fn from_field(a: &VectorField<S>) -> Self {
        GradedFieldCoords {
            n: a.n(),
            components: a.components().iter().map(poly_to_fock).collect(),
        }
    }

    pub fn to_field(&self) -> VectorField<S> {
        VectorField::new(self.n, self.components.iter().map(fock_to_poly).collect())
            .expect("components share n")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[GradedVector<S>] {
        &self.components
    }

    pub fn degree(&self) -> Option<usize> {
        self.components.iter().filter_map(GradedVector::degree).max()
    }

    /// Dense degree-`k` block, length `n^{k+1}`.
    pub fn block_vector(&self, k: usize) -> Vec<S> {
        let n = self.n;
        let stride = n.pow(k as u32);
        let mut out = vec![S::zero(); stride * n];
        for (j, comp) in self.components.iter().enumerate() {
            for (w, c) in comp.block(k) {
                out[j * stride + w.index(n)] = c.clone();
            }
        }
        out
    }

    /// Replaces the degree-`k` block with `values` (layout of [`Self::block_vector`]).
    pub fn set_block(&mut self, k: usize, values: &[S]) {
        let n = self.n;
        let stride = n.pow(k as u32);
        for (j, comp) in self.components.iter_mut().enumerate() {
            comp.coeffs.retain(|w, _| w.len() != k);
            for (i, c) in values[j * stride..(j + 1) * stride].iter().enumerate() {
                if !c.is_zero() {
                    comp.coeffs.insert(Word::from_index(i, k, n), c.clone());
                }
            }
        }
    }

    /// Drops every block above `max_degree`.
    pub fn truncate(&mut self, max_degree: usize) {
        for comp in &mut self.components {
            comp.coeffs.retain(|w, _| w.len() <= max_degree);
        }
    }

    pub fn map_components(&self, f: impl Fn(&GradedVector<S>) -> GradedVector<S>) -> Self {
        GradedFieldCoords {
            n: self.n,
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn norm_sqr_f64(&self) -> f64 {
        self.components.iter().map(GradedVector::norm_sqr_f64).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational as Q;
    use num_bigint::BigInt;

    fn w(l: &[u8]) -> Word {
        Word::from_letters(l)
    }

    fn mono(n: usize, l: &[u8]) -> NcPoly<Q> {
        NcPoly::monomial(n, w(l), Q::one())
    }

    #[test]
    fn poly_to_fock_examples() {
        let v = poly_to_fock(&mono(2, &[1, 1]));
        assert_eq!(
            v,
            GradedVector::from_entries(2, [(Word::empty(), Q::one()), (w(&[1, 1]), Q::one())])
        );
        assert_eq!(poly_to_fock(&mono(2, &[1, 2])), GradedVector::basis(2, w(&[1, 2])));
        assert_eq!(poly_to_fock(&NcPoly::<Q>::one(2)), GradedVector::vacuum(2));
    }

    #[test]
    fn wick_examples_are_chebyshev() {
        let p2 = &mono(1, &[1, 1]) - &NcPoly::one(1);
        assert_eq!(fock_to_poly(&GradedVector::basis(1, w(&[1, 1]))), p2);
        let p3 = &mono(1, &[1, 1, 1]) - &mono(1, &[1]).scale(&Q::from_i64(2));
        assert_eq!(fock_to_poly(&GradedVector::basis(1, w(&[1, 1, 1]))), p3);
        assert_eq!(fock_to_poly(&GradedVector::basis(2, w(&[1, 2]))), mono(2, &[1, 2]));
    }

    #[test]
    fn chebyshev_three_term_recursion() {
        // P_{k+1} = x P_k − P_{k−1}
        let x = mono(1, &[1]);
        let mut prev = NcPoly::<Q>::one(1);
        let mut cur = x.clone();
        for k in 1..8 {
            let next = &(&x * &cur) - &prev;
            assert_eq!(wick_polynomial::<Q>(1, &Word::from_letters(&vec![1; k + 1])), next);
            prev = cur;
            cur = next;
        }
    }

    #[test]
    fn ou_and_number_operator() {
        let v = GradedVector::from_entries(
            2,
            [
                (Word::empty(), Q::from_i64(3)),
                (w(&[1, 2]), Q::from_i64(4)),
            ],
        );
        let c = apply_ou(0.0, &poly_to_fock(&mono(2, &[1, 2]))).unwrap();
        assert_eq!(c, GradedVector::basis(2, w(&[1, 2])));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let r = apply_ou_rational(&half, &v).unwrap();
        assert_eq!(r.coeff(&w(&[1, 2])), Q::one());
        assert_eq!(r.coeff(&Word::empty()), Q::from_i64(3));
        let n = apply_number_op(&v);
        assert_eq!(n, GradedVector::basis(2, w(&[1, 2])).scale(&Q::from_i64(8)));
        assert!(apply_ou(-1.0, &v).is_err());
        assert!(apply_ou_rational(&BigRational::from_integer(2.into()), &v).is_err());
    }

    #[test]
    fn ou_float_law() {
        use num_complex::Complex64 as C;
        let v = GradedVector::from_entries(2, [(w(&[2, 1]), C::new(1.0, 0.0)), (Word::empty(), C::new(5.0, 0.0))]);
        let r = apply_ou(std::f64::consts::LN_2, &v).unwrap();
        assert!((r.coeff(&w(&[2, 1])) - C::new(0.25, 0.0)).norm() < 1e-15);
        assert_eq!(r.coeff(&Word::empty()), C::new(5.0, 0.0));
    }

    #[test]
    fn block_vector_layout() {
        let a = VectorField::new(2, vec![mono(2, &[2]), &mono(2, &[1]) + &NcPoly::one(2)]).unwrap();
        let coords = GradedFieldCoords::from_field(&a);
        // (j, u) ↦ word j·u: (1, [2]) → [1,2] index 1; (2, [1]) → [2,1] index 2
        assert_eq!(coords.block_vector(1), vec![Q::zero(), Q::one(), Q::one(), Q::zero()]);
        assert_eq!(coords.block_vector(0), vec![Q::zero(), Q::one()]);
        let mut c2 = coords.clone();
        c2.set_block(1, &coords.block_vector(1));
        assert_eq!(c2, coords);
    }
}
