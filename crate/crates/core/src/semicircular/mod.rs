//! The semicircular trace, the Fock-space grading of `C<n>` and the
//! Ornstein–Uhlenbeck semigroup.

mod fock;
mod trace;

pub use fock::{
    apply_number_op, apply_ou, apply_ou_rational, apply_poly, fock_to_poly, poly_to_fock, wick_polynomial,
    GradedFieldCoords, GradedVector,
};
pub use trace::{inner_herm, inner_sym, pairing_count, trace, trace_of_product};
