use crate::algebra::poly::NcPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An `n`-tuple of polynomials, an element of `Vect C<n>`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField<S> {
    n: usize,
    components: Vec<NcPoly<S>>,
}

impl<S: Scalar> VectorField<S> {
    pub fn zero(n: usize) -> Self {
        VectorField {
            n,
            components: vec![NcPoly::zero(n); n],
        }
    }

    /// Requires exactly `n` components, all over `n` generators.
    pub fn new(n: usize, components: Vec<NcPoly<S>>) -> Result<Self> {
        if components.len() != n {
            return Err(Error::GeneratorMismatch {
                left: n,
                right: components.len(),
            });
        }
        if let Some(bad) = components.iter().find(|p| p.n() != n) {
            return Err(Error::GeneratorMismatch {
                left: n,
                right: bad.n(),
            });
        }
        Ok(VectorField { n, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[NcPoly<S>] {
        &self.components
    }

    /// Component `j`, 1-based.
    pub fn component(&self, j: usize) -> &NcPoly<S> {
        &self.components[j - 1]
    }

    pub fn into_components(self) -> Vec<NcPoly<S>> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(NcPoly::is_zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.components.iter().filter_map(NcPoly::degree).max()
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
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&NcPoly<S>, &NcPoly<S>) -> NcPoly<S>) -> Self {
        VectorField {
            n: self.n,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn map(&self, f: impl Fn(&NcPoly<S>) -> NcPoly<S>) -> Self {
        VectorField {
            n: self.n,
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> VectorField<T> {
        VectorField {
            n: self.n,
            components: self.components.iter().map(|p| p.map_coeffs(&f)).collect(),
        }
    }

    /// Componentwise involution.
    pub fn adjoint(&self) -> Self {
        self.map(NcPoly::adjoint)
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.components.iter().all(NcPoly::is_self_adjoint)
    }

    /// `(a + a*) / 2`
    pub fn self_adjoint_part(&self) -> Self {
        let half = S::one().scale_i64(2).inv().expect("2 is invertible");
        self.checked_add(&self.adjoint())
            .expect("same n")
            .scale(&half)
    }
}

impl<S: Scalar> std::ops::Add for &VectorField<S> {
    type Output = VectorField<S>;
    fn add(self, rhs: Self) -> VectorField<S> {
        self.checked_add(rhs).expect("generator count mismatch")
    }
}

impl<S: Scalar> std::ops::Sub for &VectorField<S> {
    type Output = VectorField<S>;
    fn sub(self, rhs: Self) -> VectorField<S> {
        self.checked_sub(rhs).expect("generator count mismatch")
    }
}
