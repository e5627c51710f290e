use rayon::prelude::*;

use super::{determinant, determinant_cofactor, LinalgError, PolyMatrix};
use crate::poly::Polynomial;

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { break };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

fn minor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    let sub = m.submatrix(rows, cols);
    let det = if rows.len() <= 3 { determinant_cofactor(&sub) } else { determinant(&sub) };
    det.expect("square by construction")
}

/// Every `r x r` minor, ordered by (row selection, column selection) in
/// lexicographic order. Zero minors are included.
pub fn minors(m: &PolyMatrix, r: usize) -> Result<Vec<Polynomial>, LinalgError> {
    let max = m.rows().min(m.cols());
    if r == 0 || r > max {
        return Err(LinalgError::MinorSize { size: r, max });
    }
    let rs = subsets(m.rows(), r);
    let cs = subsets(m.cols(), r);
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = rs.iter().flat_map(|a| cs.iter().map(move |b| (a, b))).collect();
    Ok(pairs.par_iter().map(|(a, b)| minor(m, a, b)).collect())
}

/// Minor counts and the distinct nonzero minors up to sign.
#[derive(Debug, Clone)]
pub struct MinorSummary {
    pub size: usize,
    /// Number of row/column selections.
    pub raw: usize,
    /// Distinct nonzero minors with positive leading coefficient, sorted by
    /// the ring order.
    pub distinct: Vec<Polynomial>,
}

impl MinorSummary {
    /// Smallest and largest total degree among the distinct minors.
    pub fn degree_range(&self) -> Option<(u32, u32)> {
        let degs = self.distinct.iter().filter_map(|p| p.total_degree());
        let (lo, hi) = degs.fold((u32::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)));
        (lo <= hi).then_some((lo, hi))
    }
}

fn sign_normal(p: Polynomial) -> Polynomial {
    match p.leading_coeff() {
        Some(c) if c < &num_traits::Zero::zero() => -p,
        _ => p,
    }
}

pub fn distinct_minors(m: &PolyMatrix, r: usize) -> Result<MinorSummary, LinalgError> {
    let all = minors(m, r)?;
    let raw = all.len();
    let mut distinct: Vec<Polynomial> = all.into_iter().filter(|p| !p.is_zero()).map(sign_normal).collect();
    distinct.par_sort_by(|a, b| a.cmp_terms(b));
    distinct.dedup();
    Ok(MinorSummary { size: r, raw, distinct })
}
