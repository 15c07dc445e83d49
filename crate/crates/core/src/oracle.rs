//! Numeric cross-check: truncated full Fock space with explicit sparse
//! creation matrices.
//!
//! Everything here is `f64`; it shares no code path with the symbolic trace
//! or the symbolic Leray basis beyond the [`Word`] type.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::NcPoly;
use crate::error::{Error, Result};
use crate::leray::build_leray_basis;
use crate::scalar::Scalar;
use crate::word::Word;

/// Default cap on the truncated Fock dimension.
pub const DEFAULT_DIM_CAP: usize = 1 << 22;
/// Cap on `n^{k+1}` for the dense `X_k` cross-check.
pub const XK_CHECK_CAP: usize = 1 << 11;

/// Coordinate-format sparse matrix, used only through matrix-vector products.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    dim: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl SparseMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        y
    }

    pub fn transpose_matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        for &(r, c, v) in &self.entries {
            y[c] += v * x[r];
        }
        y
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }
}

/// The full Fock space of `C^n` truncated at tensor degree `level`.
#[derive(Debug, Clone)]
pub struct TruncatedFock {
    n: usize,
    level: usize,
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
    creation: Vec<SparseMatrix>,
}

impl TruncatedFock {
    /// Builds the space with the default dimension cap.
    pub fn build(n: usize, level: usize) -> Result<Self> {
        Self::build_with_cap(n, level, DEFAULT_DIM_CAP)
    }

    pub fn build_with_cap(n: usize, level: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        let dim: u128 = (0..=level as u32).map(|k| (n as u128).pow(k)).sum();
        if dim > cap as u128 {
            return Err(Error::ResourceCap {
                what: "truncated Fock dimension",
                needed: dim,
                cap: cap as u128,
            });
        }
        let basis: Vec<Word> = (0..=level).flat_map(|k| Word::all_of_length(n, k)).collect();
        let index: HashMap<Word, usize> = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let dim = basis.len();
        let creation = (1..=n as u8)
            .map(|j| {
                let entries = basis
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| w.len() < level)
                    .map(|(c, w)| (index[&w.prepend(j)], c, 1.0))
                    .collect();
                SparseMatrix { dim, entries }
            })
            .collect();
        Ok(TruncatedFock {
            n,
            level,
            basis,
            index,
            creation,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis words in length-then-lex order.
    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Left creation operator `l_j`, `1 <= j <= n`.
    pub fn creation(&self, j: usize) -> &SparseMatrix {
        &self.creation[j - 1]
    }

    /// `s_j = l_j + l_j*` as a dense matrix.
    pub fn field_operator_dense(&self, j: usize) -> DMatrix<f64> {
        let l = self.creation(j).to_dense();
        &l + l.transpose()
    }

    pub fn vacuum(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.dim()];
        v[0] = 1.0;
        v
    }

    /// `s_j x`
    pub fn apply_field(&self, j: usize, x: &[f64]) -> Vec<f64> {
        let c = self.creation(j);
        let mut y = c.matvec(x);
        for (a, b) in y.iter_mut().zip(c.transpose_matvec(x)) {
            *a += b;
        }
        y
    }

    /// `s_{w1} ... s_{wm} x`, rightmost letter first.
    pub fn apply_word(&self, w: &Word, x: &[f64]) -> Vec<f64> {
        let mut v = x.to_vec();
        for &j in w.letters().iter().rev() {
            v = self.apply_field(j as usize, &v);
        }
        v
    }

    /// `⟨P(S_1, ..., S_n) 1, 1⟩`. Refuses polynomials whose degree exceeds
    /// the truncation level, where the result would be silently wrong.
    pub fn vacuum_expectation<S: Scalar>(&self, p: &NcPoly<S>) -> Result<Complex64> {
        if p.n() > self.n {
            return Err(Error::GeneratorMismatch {
                left: self.n,
                right: p.n(),
            });
        }
        if let Some(d) = p.degree() {
            if d > self.level {
                return Err(Error::DegreeExceedsLevel {
                    degree: d,
                    level: self.level,
                });
            }
        }
        let vac = self.vacuum();
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, c) in p.terms() {
            let v = self.apply_word(w, &vac);
            acc += c.to_complex() * v[0];
        }
        Ok(acc)
    }

    /// `P(S) 1` as a dense real vector; coefficients must be real.
    pub fn apply_real_poly<S: Scalar>(&self, p: &NcPoly<S>, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for (w, c) in p.terms() {
            let v = self.apply_word(w, x);
            let c = c.to_complex().re;
            for (o, a) in out.iter_mut().zip(v) {
                *o += c * a;
            }
        }
        out
    }
}

/// Result of the numeric re-derivation of `X_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct XkCheck {
    pub numeric_rank: usize,
    pub symbolic_rank: usize,
    /// Largest entry of the difference between the two projection matrices.
    pub max_projection_diff: f64,
    pub agrees: bool,
}

/// Rebuilds `X_k = {((l_j* − r_j*) ξ)_j}` from explicit annihilation
/// matrices on `(C^n)^{⊗(k+1)}`, then compares rank and projection (via SVD)
/// against [`build_leray_basis`] to `1e-10`.
pub fn oracle_xk_check(n: usize, k: usize) -> Result<XkCheck> {
    let dim_in = (n as u128).checked_pow(k as u32 + 1).unwrap_or(u128::MAX);
    if dim_in > XK_CHECK_CAP as u128 {
        return Err(Error::ResourceCap {
            what: "dense X_k check",
            needed: dim_in,
            cap: XK_CHECK_CAP as u128,
        });
    }
    let dim_in = dim_in as usize;
    let dim_out_one = n.pow(k as u32);
    // Row block j holds l_j* − r_j* : (C^n)^{⊗(k+1)} → (C^n)^{⊗k}.
    let mut g = DMatrix::<f64>::zeros(n * dim_out_one, dim_in);
    for j in 1..=n as u8 {
        let row0 = (j as usize - 1) * dim_out_one;
        for u in Word::all_of_length(n, k) {
            let r = row0 + u.index(n);
            let left = Word::concat3(&[j], u.letters(), &[]);
            let right = Word::concat3(u.letters(), &[j], &[]);
            g[(r, left.index(n))] += 1.0;
            g[(r, right.index(n))] -= 1.0;
        }
    }
    let svd = g.clone().svd(true, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let tol = 1e-10 * smax.max(1.0);
    let u = svd.u.expect("requested U");
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > tol)
        .collect();
    let numeric_rank = keep.len();
    let ur = u.select_columns(keep.iter());
    let p_numeric = &ur * ur.transpose();

    let basis = build_leray_basis(n, k)?;
    let p_sym = basis.projection_matrix();
    let mut max_diff: f64 = 0.0;
    for (i, row) in p_sym.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let d = (Scalar::to_complex(&crate::scalar::GaussRational::from_ratio(v)).re - p_numeric[(i, j)]).abs();
            max_diff = max_diff.max(d);
        }
    }
    let symbolic_rank = basis.rank();
    Ok(XkCheck {
        numeric_rank,
        symbolic_rank,
        max_projection_diff: max_diff,
        agrees: numeric_rank == symbolic_rank && max_diff <= 1e-10,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational as Q;

    #[test]
    fn dimensions() {
        assert_eq!(TruncatedFock::build(1, 2).unwrap().dim(), 3);
        assert_eq!(TruncatedFock::build(2, 1).unwrap().dim(), 3);
        assert_eq!(TruncatedFock::build(2, 3).unwrap().dim(), 15);
        assert!(matches!(
            TruncatedFock::build_with_cap(3, 10, 1000),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn jacobi_matrix_for_one_generator() {
        let f = TruncatedFock::build(1, 2).unwrap();
        let s = f.field_operator_dense(1);
        let expected = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        assert_eq!(s, expected);
    }

    #[test]
    fn vacuum_expectations() {
        let f = TruncatedFock::build(2, 4).unwrap();
        let m = |l: &[u8]| NcPoly::<Q>::monomial(2, Word::from_letters(l), Q::one());
        assert!((f.vacuum_expectation(&m(&[1, 1, 1, 1])).unwrap().re - 2.0).abs() < 1e-14);
        assert_eq!(f.vacuum_expectation(&NcPoly::<Q>::one(2)).unwrap().re, 1.0);
        assert_eq!(f.vacuum_expectation(&m(&[1, 2, 1, 2])).unwrap().re, 0.0);
        assert!(matches!(
            f.vacuum_expectation(&m(&[1, 1, 1, 1, 1, 1])),
            Err(Error::DegreeExceedsLevel { .. })
        ));
    }

    #[test]
    fn xk_small_cases() {
        let c = oracle_xk_check(2, 1).unwrap();
        assert_eq!((c.numeric_rank, c.symbolic_rank), (1, 1));
        assert!(c.agrees);
        assert_eq!(oracle_xk_check(2, 0).unwrap().numeric_rank, 0);
        assert!(oracle_xk_check(3, 2).unwrap().agrees);
    }
}
