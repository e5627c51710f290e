//! Exact multivariate polynomials over the rationals.

mod factor;
mod json;
mod order;
mod parse;
mod polynomial;
pub mod univariate;

pub use factor::{display_factored, factor_trial};
pub use json::PolyJson;
pub use order::{Monomial, MonomialOrder, Tiebreak, MAX_VARS};
pub use parse::parse;
pub use polynomial::{sum_all, Assignment, Polynomial, Ring};

#[allow(unused_imports)]
pub(crate) use polynomial::same_ring;

/// Arbitrary-precision rational coefficient.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Parses `"3"`, `"-1/2"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: num_bigint::BigInt = n.trim().parse().ok()?;
        let d: num_bigint::BigInt = d.trim().parse().ok()?;
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        Some(Rational::from_integer(s.parse().ok()?))
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
