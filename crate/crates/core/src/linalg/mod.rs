//! Matrices over the polynomial ring: partial Smith form, minors, and exact
//! ranks at specialized points.

mod matrix;
mod minors;
mod psf;
mod rank;
mod smith;

pub use matrix::{MatrixJson, PolyMatrix};
pub use minors::{distinct_minors, minors, MinorSummary};
pub use psf::{partial_smith_form, ElementaryOp, PartialSmithForm};
pub use rank::{
    bareiss, determinant, determinant_cofactor, rank_at, rank_constant, rank_gauss, rank_rational, BareissResult,
    RankAt,
};
pub use smith::{smith_univariate, SmithForm};

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("matrix is not square")]
    NotSquare,
    #[error("assignment leaves variables unset: {}", .0.join(", "))]
    IncompleteAssignment(Vec<String>),
    #[error("matrix has a non-constant entry")]
    NonConstantEntry,
    #[error("minor size {size} out of range 1..={max}")]
    MinorSize { size: usize, max: usize },
    #[error("entries involve more than one variable")]
    NotUnivariate,
    #[error(transparent)]
    Poly(#[from] PolyError),
}
