//! Smith normal form over `Q[t]` for matrices in a single variable.

use super::{LinalgError, PolyMatrix};
use crate::poly::{univariate, Polynomial};

/// Invariant factors (monic, each dividing the next) and the rank.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<Polynomial>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Smith form of a matrix whose entries involve at most one variable. With
/// no variable at all the diagonal is all ones.
pub fn smith_univariate(m: &PolyMatrix) -> Result<SmithForm, LinalgError> {
    let vars = m.variables();
    if vars.len() > 1 {
        return Err(LinalgError::NotUnivariate);
    }
    let var = vars.first().copied().unwrap_or(0);
    let mut a: Vec<Vec<Polynomial>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let deg = |p: &Polynomial| p.degree_in(var);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot of least degree in the remaining block.
        let best = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| deg(&a[i][j]));
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = univariate::divrem(&a[i][t], &p, var);
                for j in t..cols {
                    let v = &a[i][j] - &(&q * &a[t][j]);
                    a[i][j] = v;
                }
                debug_assert_eq!(a[i][t], r);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = univariate::divrem(&a[t][j], &p, var);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &(&q * &row[t]);
                    row[j] = v;
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            // Pivot must also divide every remaining entry.
            if !dirty {
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !univariate::divrem(&a[i][j], &p, var).1.is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        // Fold the offending row into row t and retry.
                        for j in t..cols {
                            let v = &a[t][j] + &a[i][j];
                            a[t][j] = v;
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                let best = (t..rows)
                    .flat_map(|i| (t..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| (i == t || j == t) && !a[i][j].is_zero())
                    .min_by_key(|&(i, j)| deg(&a[i][j]));
                if let Some((pi, pj)) = best {
                    a.swap(t, pi);
                    for row in a.iter_mut() {
                        row.swap(t, pj);
                    }
                }
            }
        }
        diagonal.push(a[t][t].monic());
        t += 1;
    }
    Ok(SmithForm { diagonal })
}
