use num_traits::{One, Signed};

use super::PolyMatrix;
use crate::poly::{Polynomial, Rational};

/// Elementary operation on rows (or columns, depending on the log).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryOp {
    Swap(usize, usize),
    Scale(usize, Rational),
    /// `target += factor * source`.
    AddMultiple { target: usize, source: usize, factor: Polynomial },
}

/// Result of pivoting on constant entries until none is left.
#[derive(Debug, Clone)]
pub struct PartialSmithForm {
    pub identity_size: usize,
    pub lower_right: PolyMatrix,
    pub row_ops: Vec<ElementaryOp>,
    pub col_ops: Vec<ElementaryOp>,
}

impl PartialSmithForm {
    /// Applies the logged operations to `m`. For the matrix the form was
    /// computed from, the result is `[[I, 0], [0, B]]`.
    pub fn replay(&self, m: &PolyMatrix) -> PolyMatrix {
        let mut a = m.clone();
        for op in &self.row_ops {
            apply_row(&mut a, op);
        }
        for op in &self.col_ops {
            apply_col(&mut a, op);
        }
        a
    }

    /// The block matrix `[[I, 0], [0, B]]` of the input's shape.
    pub fn assembled(&self) -> PolyMatrix {
        let t = self.identity_size;
        let b = &self.lower_right;
        let ring = b.ring();
        let mut out = PolyMatrix::zeros(ring, t + b.rows(), t + b.cols());
        for i in 0..t {
            out.set(i, i, Polynomial::one(ring));
        }
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(t + i, t + j, b.get(i, j).clone());
            }
        }
        out
    }
}

fn apply_row(a: &mut PolyMatrix, op: &ElementaryOp) {
    match op {
        ElementaryOp::Swap(i, j) => a.swap_rows(*i, *j),
        ElementaryOp::Scale(i, c) => {
            for k in 0..a.cols() {
                let v = a.get(*i, k).scale(c);
                a.set(*i, k, v);
            }
        }
        ElementaryOp::AddMultiple { target, source, factor } => {
            for k in 0..a.cols() {
                let s = a.get(*source, k);
                if !s.is_zero() {
                    let v = a.get(*target, k) + &(factor * s);
                    a.set(*target, k, v);
                }
            }
        }
    }
}

fn apply_col(a: &mut PolyMatrix, op: &ElementaryOp) {
    match op {
        ElementaryOp::Swap(i, j) => a.swap_cols(*i, *j),
        ElementaryOp::Scale(j, c) => {
            for k in 0..a.rows() {
                let v = a.get(k, *j).scale(c);
                a.set(k, *j, v);
            }
        }
        ElementaryOp::AddMultiple { target, source, factor } => {
            for k in 0..a.rows() {
                let s = a.get(k, *source);
                if !s.is_zero() {
                    let v = a.get(k, *target) + &(factor * s);
                    a.set(k, *target, v);
                }
            }
        }
    }
}

/// First constant entry at or below/right of `(t, t)`, row-major, preferring
/// entries equal to 1 or -1.
fn find_pivot(a: &PolyMatrix, t: usize) -> Option<(usize, usize)> {
    let scan = |unit_only: bool| {
        (t..a.rows()).find_map(|i| {
            (t..a.cols()).find_map(|j| {
                let c = a.get(i, j).as_constant()?;
                let ok = if unit_only { c.abs().is_one() } else { c != Rational::from_integer(0.into()) };
                ok.then_some((i, j))
            })
        })
    };
    scan(true).or_else(|| scan(false))
}

/// Swaps constant pivots onto the diagonal, clears their rows and columns,
/// and stops when the remaining block has no nonzero constant entry.
pub fn partial_smith_form(m: &PolyMatrix) -> PartialSmithForm {
    let mut a = m.clone();
    let mut row_ops = Vec::new();
    let mut col_ops = Vec::new();
    let mut t = 0;
    while t < a.rows().min(a.cols()) {
        let Some((pi, pj)) = find_pivot(&a, t) else { break };
        if pi != t {
            let op = ElementaryOp::Swap(pi, t);
            apply_row(&mut a, &op);
            row_ops.push(op);
        }
        if pj != t {
            let op = ElementaryOp::Swap(pj, t);
            apply_col(&mut a, &op);
            col_ops.push(op);
        }
        let c = a.get(t, t).as_constant().expect("pivot is constant");
        if !c.is_one() {
            let op = ElementaryOp::Scale(t, c.recip());
            apply_row(&mut a, &op);
            row_ops.push(op);
        }
        for i in t + 1..a.rows() {
            if !a.get(i, t).is_zero() {
                let op = ElementaryOp::AddMultiple { target: i, source: t, factor: -a.get(i, t) };
                apply_row(&mut a, &op);
                row_ops.push(op);
            }
        }
        for j in t + 1..a.cols() {
            if !a.get(t, j).is_zero() {
                let op = ElementaryOp::AddMultiple { target: j, source: t, factor: -a.get(t, j) };
                apply_col(&mut a, &op);
                col_ops.push(op);
            }
        }
        t += 1;
    }
    let rows: Vec<usize> = (t..a.rows()).collect();
    let cols: Vec<usize> = (t..a.cols()).collect();
    PartialSmithForm { identity_size: t, lower_right: a.submatrix(&rows, &cols), row_ops, col_ops }
}
