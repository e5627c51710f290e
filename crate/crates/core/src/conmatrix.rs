//! The matrix of consequences of an identity with indeterminate coefficients.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::compose::{consequences, ComposeError, Consequence, ConsequenceSpec, OperatorPolynomial};
use crate::linalg::PolyMatrix;
use crate::monomial::{enumerate_monomials, MonomialError, OperatorMonomial};
use crate::poly::{Assignment, Polynomial, Rational, Ring, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConmatrixError {
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error("O({p},{q}) has dimension {dim}; at most {max} coefficient variables are supported")]
    TooManyCoefficients { p: usize, q: usize, dim: usize, max: usize },
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("unknown coefficient {0:?}")]
    UnknownCoefficient(String),
}

/// `M(R)` for the generic identity `R` of shape `(p, q)`.
#[derive(Debug, Clone)]
pub struct ConsequenceMatrix {
    pub p: usize,
    pub q: usize,
    /// One variable per basis monomial of `O(p,q)`: `a, b, c, ...`.
    pub ring: Arc<Ring>,
    /// Basis of `O(p,q)` in lexicographic order; variable `k` multiplies `basis[k]`.
    pub basis: Vec<OperatorMonomial>,
    /// Every consequence, redundant ones included.
    pub all: Vec<Consequence>,
    /// Distinct consequences in frozen order; one per row.
    pub row_labels: Vec<ConsequenceSpec>,
    /// Basis of `O(p+1,q+1)`; one per column.
    pub col_labels: Vec<OperatorMonomial>,
    pub matrix: PolyMatrix,
}

/// The identity `sum_k x_k m_k` over the basis of `O(p,q)`, with the
/// coefficient ring it lives in.
pub fn generic_identity(p: usize, q: usize) -> Result<(Arc<Ring>, Vec<OperatorMonomial>, OperatorPolynomial), ConmatrixError> {
    let basis = enumerate_monomials(p, q)?;
    if basis.len() > MAX_VARS {
        return Err(ConmatrixError::TooManyCoefficients { p, q, dim: basis.len(), max: MAX_VARS });
    }
    let ring = Ring::letters(basis.len());
    let r = OperatorPolynomial::from_terms(
        &ring,
        basis.iter().enumerate().map(|(k, m)| (m.clone(), Polynomial::var(&ring, k))),
    )?;
    Ok((ring, basis, r))
}

pub fn build_consequence_matrix(p: usize, q: usize) -> Result<ConsequenceMatrix, ConmatrixError> {
    let (ring, basis, r) = generic_identity(p, q)?;
    let all = consequences(&r)?;
    let col_labels = enumerate_monomials(p + 1, q + 1)?;
    let index: BTreeMap<_, _> = col_labels.iter().enumerate().map(|(i, m)| (m.to_paren(), i)).collect();
    let mut rows = Vec::new();
    let mut row_labels = Vec::new();
    for c in all.iter().filter(|c| c.duplicate_of.is_none()) {
        let v = c
            .value
            .coordinates(&index, col_labels.len())
            .expect("consequences lie in O(p+1,q+1)");
        rows.push(v);
        row_labels.push(c.spec);
    }
    let matrix = if rows.is_empty() {
        PolyMatrix::zeros(&ring, 0, col_labels.len())
    } else {
        PolyMatrix::from_rows(&ring, rows).expect("rows share the column count")
    };
    Ok(ConsequenceMatrix { p, q, ring, basis, all, row_labels, col_labels, matrix })
}

impl ConsequenceMatrix {
    /// Assignment from `(name, value)` pairs over the coefficient ring.
    pub fn assignment<'a>(
        &self,
        coeffs: impl IntoIterator<Item = (&'a str, Rational)>,
    ) -> Result<Assignment, ConmatrixError> {
        let mut asg = Assignment::new();
        for (name, v) in coeffs {
            let k = self
                .ring
                .index_of(name)
                .ok_or_else(|| ConmatrixError::UnknownCoefficient(name.to_string()))?;
            asg.insert(k, Polynomial::constant(&self.ring, v));
        }
        Ok(asg)
    }

    /// Assignment giving every coefficient in order.
    pub fn point(&self, values: &[Rational]) -> Result<Assignment, ConmatrixError> {
        if values.len() != self.basis.len() {
            return Err(ConmatrixError::CoefficientCount { expected: self.basis.len(), got: values.len() });
        }
        let names: Vec<String> = self.ring.names().to_vec();
        self.assignment(names.iter().map(|s| s.as_str()).zip(values.iter().cloned()))
    }

    /// `M(R)` with some coefficients fixed; the rest stay symbolic.
    pub fn specialize(&self, coeffs: &Assignment) -> PolyMatrix {
        self.matrix.substitute(coeffs)
    }

    /// The identity with the given coefficient values.
    pub fn identity_at(&self, values: &[Rational]) -> Result<OperatorPolynomial, ConmatrixError> {
        if values.len() != self.basis.len() {
            return Err(ConmatrixError::CoefficientCount { expected: self.basis.len(), got: values.len() });
        }
        Ok(OperatorPolynomial::from_rational_terms(
            &self.ring,
            self.basis.iter().cloned().zip(values.iter().cloned()).filter(|(_, c)| c != &Rational::from_integer(0.into())),
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank_constant;
    use crate::monomial::Style;
    use crate::poly::rat;

    fn star(m: &OperatorMonomial) -> String {
        m.render(Style::Star)
    }

    #[test]
    fn shape_21() {
        let c = build_consequence_matrix(2, 1).unwrap();
        assert_eq!(c.all.len(), 28);
        assert_eq!((c.matrix.rows(), c.matrix.cols()), (20, 20));
        for i in 0..20 {
            assert_eq!(c.matrix.row(i).iter().filter(|p| !p.is_zero()).count(), 3);
        }
        // (R o1 B) o1 L hits columns 4, 5, 14 with a, b, c.
        let row = c.matrix.row(0);
        let hits: Vec<(usize, String)> =
            (0..20).filter(|&j| !row[j].is_zero()).map(|j| (j + 1, row[j].to_string())).collect();
        assert_eq!(hits, vec![(4, "a".into()), (5, "b".into()), (14, "c".into())]);
        assert_eq!(star(&c.col_labels[3]), "L(L(*)**)");
    }

    #[test]
    fn shape_22() {
        let c = build_consequence_matrix(2, 2).unwrap();
        assert_eq!(c.all.len(), 28);
        assert_eq!((c.matrix.rows(), c.matrix.cols()), (20, 50));
        let row = c.matrix.row(0);
        let mut hits: Vec<(String, String)> = (0..50)
            .filter(|&j| !row[j].is_zero())
            .map(|j| (row[j].to_string(), star(&c.col_labels[j])))
            .collect();
        hits.sort();
        let expected = [
            ("a", "L(L(L(*)**))"),
            ("b", "L(L(L(*)*)*)"),
            ("c", "L(L(L(*)*))*"),
            ("d", "L(L(*)*L(*))"),
            ("e", "L(L(*)*)L(*)"),
            ("f", "L(*)*L(L(*))"),
        ];
        let expected: Vec<(String, String)> = expected.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(hits, expected);
    }

    #[test]
    fn specialized_ranks() {
        let c = build_consequence_matrix(2, 1).unwrap();
        let at = |v: [i64; 3]| rank_constant(&c.specialize(&c.point(&v.map(rat)).unwrap())).unwrap();
        assert_eq!(at([1, -1, -1]), 14);
        assert_eq!(at([1, 2, 3]), 17);
        assert_eq!(at([0, 0, 0]), 0);
        let d = build_consequence_matrix(2, 2).unwrap();
        let m = d.specialize(&d.point(&[0, 1, 0, 1, -1, 0].map(rat)).unwrap());
        assert_eq!(rank_constant(&m).unwrap(), 19);
    }

    #[test]
    fn single_coefficient_rows_are_unit_vectors() {
        let c = build_consequence_matrix(2, 2).unwrap();
        for k in 0..6 {
            let mut v = vec![rat(0); 6];
            v[k] = rat(1);
            let m = c.specialize(&c.point(&v).unwrap());
            for i in 0..m.rows() {
                let nz: Vec<_> = m.row(i).iter().filter(|p| !p.is_zero()).collect();
                assert_eq!(nz.len(), 1);
                assert_eq!(nz[0].as_constant(), Some(rat(1)));
            }
        }
    }
}
