//! Degreewise exact linear algebra over ℚ.

mod echelon;
mod matrix;
mod monomial;
mod subquotient;

pub use echelon::Echelon;
pub use matrix::{RatMatrix, SparseVec};
pub use monomial::{
    mult_matrix, quotient_slice, reduce_map, Monomial, MonomialBasis, QuotientSlice,
};
pub use subquotient::{induced_map, subquotient, Subquotient};
