//! Operator identities on associative algebras: operator monomials, partial
//! compositions, matrices of consequences over polynomial rings, and the
//! commutative-algebra machinery (partial Smith forms, determinantal ideals,
//! Gröbner bases) used to stratify identities by the rank of that matrix.

pub mod classify;
pub mod compose;
pub mod conmatrix;
pub mod golden;
pub mod ideals;
pub mod linalg;
pub mod monomial;
pub mod poly;
