use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::LinalgError;
use crate::poly::{parse, Assignment, Polynomial, Rational, Ring};

/// Dense matrix of polynomials over one ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Polynomial>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Parses rows of polynomial text; `.` and `0` both mean zero.
    pub fn parse_rows<S: AsRef<str>>(ring: &Arc<Ring>, rows: &[Vec<S>]) -> Result<Self, LinalgError> {
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| match s.as_ref().trim() {
                        "." => Ok(Polynomial::zero(ring)),
                        t => parse(ring, t).map_err(LinalgError::from),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(ring, parsed)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, assignment: &Assignment) -> Self {
        self.map(|p| p.substitute(assignment))
    }

    /// Values at a full point, row-major.
    pub fn evaluate(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.evaluate(point)).collect())
            .collect()
    }

    /// Values when every entry is constant.
    pub fn constant_values(&self) -> Option<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.as_constant()).collect())
            .collect()
    }

    /// Indices of ring variables that occur in some entry.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for p in &self.entries {
            for v in p.variables() {
                seen[v] = true;
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Rows with a nonzero entry.
    pub fn nonzero_rows(&self) -> Vec<usize> {
        (0..self.rows)
            .filter(|&i| self.row(i).iter().any(|p| !p.is_zero()))
            .collect()
    }

    /// Plain-text grid with `.` for zero, columns padded to a common width.
    pub fn render_text(&self) -> String {
        let cells: Vec<String> = self
            .entries
            .iter()
            .map(|p| if p.is_zero() { ".".to_string() } else { p.to_string().replace(' ', "") })
            .collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            vars: self.ring.names().to_vec(),
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.render_text())
    }
}

/// `{rows, cols, entries: [[poly-text, ...], ...]}` plus the variable list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(default)]
    pub vars: Vec<String>,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn to_matrix(&self, ring: &Arc<Ring>) -> Result<PolyMatrix, LinalgError> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(LinalgError::Ragged);
        }
        PolyMatrix::parse_rows(ring, &self.entries)
    }
}
