//! Exact ranks: over the rationals, and over `Q(t)` for one free parameter.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{LinalgError, PolyMatrix};
use crate::poly::{Assignment, Polynomial, Rational};

/// 2^61 - 1.
const PRIME: u64 = 2_305_843_009_213_693_951;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

/// Scales each row to integers (rank-preserving).
fn integer_rows(m: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect()
}

fn rank_mod_prime(m: &[Vec<BigInt>]) -> usize {
    let p = BigInt::from(PRIME);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.mod_floor(&p).to_u64().unwrap()).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = powmod(a[rank][c], PRIME - 2);
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = mulmod(a[r][c], inv);
                for k in c..cols {
                    let sub = mulmod(f, a[rank][k]);
                    a[r][k] = (a[r][k] + PRIME - sub) % PRIME;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free elimination over the integers.
fn rank_bareiss_int(m: Vec<Vec<BigInt>>) -> usize {
    let mut a = m;
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[r][k] * &a[rank][c] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Exact rank of a rational matrix. A full-rank result modulo a large prime
/// is already a certificate (reduction can only lower rank); otherwise the
/// rank is recomputed over the integers.
pub fn rank_rational(m: &[Vec<Rational>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 {
        return 0;
    }
    let ints = integer_rows(m);
    if rank_mod_prime(&ints) == rows.min(cols) {
        return rows.min(cols);
    }
    rank_bareiss_int(ints)
}

/// Plain Gaussian elimination over the rationals, no shortcuts. Used as the
/// independent route in tests.
pub fn rank_gauss(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, piv);
        let inv = a[rank][c].recip();
        for r in rank + 1..rows {
            if !a[r][c].is_zero() {
                let f = &a[r][c] * &inv;
                for k in c..cols {
                    let sub = &f * &a[rank][k];
                    a[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of fraction-free elimination over a polynomial ring.
#[derive(Debug, Clone)]
pub struct BareissResult {
    pub rank: usize,
    /// Pivots in order; the `k`-th is (up to sign) a `k x k` minor.
    pub pivots: Vec<Polynomial>,
    /// Sign from row and column swaps.
    pub negated: bool,
}

/// Bareiss elimination with full pivoting (lowest-degree nonzero pivot, then
/// fewest terms). Every division is exact.
pub fn bareiss(m: &PolyMatrix) -> BareissResult {
    let ring = m.ring().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Polynomial>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut prev = Polynomial::one(&ring);
    let mut pivots = Vec::new();
    let mut negated = false;
    let mut k = 0;
    while k < rows.min(cols) {
        let mut best: Option<(usize, usize, (u32, usize))> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, p) in row.iter().enumerate().skip(k) {
                if p.is_zero() {
                    continue;
                }
                let key = (p.total_degree().unwrap(), p.len());
                if best.as_ref().is_none_or(|b| key < b.2) {
                    best = Some((i, j, key));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        if pi != k {
            a.swap(pi, k);
            negated = !negated;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            negated = !negated;
        }
        let pivot = a[k][k].clone();
        let prev_is_one = prev.as_constant().is_some_and(|c| c.is_one());
        for i in k + 1..rows {
            let aik = a[i][k].clone();
            for j in k + 1..cols {
                let num = &(&a[i][j] * &pivot) - &(&aik * &a[k][j]);
                a[i][j] = if prev_is_one {
                    num
                } else {
                    num.exact_div(&prev).expect("Bareiss division is exact")
                };
            }
            a[i][k] = Polynomial::zero(&ring);
        }
        pivots.push(pivot.clone());
        prev = pivot;
        k += 1;
    }
    BareissResult { rank: pivots.len(), pivots, negated }
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &PolyMatrix) -> Result<Polynomial, LinalgError> {
    if m.rows() != m.cols() {
        return Err(LinalgError::NotSquare);
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Polynomial::one(m.ring()));
    }
    let res = bareiss(m);
    if res.rank < n {
        return Ok(Polynomial::zero(m.ring()));
    }
    let d = res.pivots.last().unwrap().clone();
    Ok(if res.negated { -d } else { d })
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant_cofactor(m: &PolyMatrix) -> Result<Polynomial, LinalgError> {
    if m.rows() != m.cols() {
        return Err(LinalgError::NotSquare);
    }
    let n = m.rows();
    let ring = m.ring();
    match n {
        0 => return Ok(Polynomial::one(ring)),
        1 => return Ok(m.get(0, 0).clone()),
        2 => return Ok(&(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0))),
        _ => {}
    }
    let mut acc = Polynomial::zero(ring);
    let rest: Vec<usize> = (1..n).collect();
    for j in 0..n {
        let e = m.get(0, j);
        if e.is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = determinant_cofactor(&m.submatrix(&rest, &cols))?;
        let term = e * &minor;
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

/// Rank report at a point, possibly with one free parameter.
#[derive(Debug, Clone)]
pub struct RankAt {
    /// Exact rank when no parameter is free; generic rank over `Q(t)` otherwise.
    pub rank: usize,
    /// With a free parameter: a nonzero `rank x rank` minor in that parameter.
    /// Rank can only drop at its roots. Empty when nothing is free.
    pub exceptional: Vec<Polynomial>,
}

/// Rank of `m` after substituting `assignment`. Every variable of `m` other
/// than `free` must be assigned.
pub fn rank_at(m: &PolyMatrix, assignment: &Assignment, free: Option<usize>) -> Result<RankAt, LinalgError> {
    let assigned: Vec<usize> = assignment.vars().collect();
    let missing: Vec<String> = m
        .variables()
        .into_iter()
        .filter(|v| !assigned.contains(v) && Some(*v) != free)
        .map(|v| m.ring().names()[v].clone())
        .collect();
    if !missing.is_empty() {
        return Err(LinalgError::IncompleteAssignment(missing));
    }
    let spec = m.substitute(assignment);
    match free {
        None => {
            let vals = spec.constant_values().ok_or(LinalgError::NonConstantEntry)?;
            Ok(RankAt { rank: rank_rational(&vals), exceptional: Vec::new() })
        }
        Some(_) => {
            let res = bareiss(&spec);
            let exceptional = res
                .pivots
                .last()
                .filter(|p| !p.is_constant())
                .map(|p| vec![p.primitive()])
                .unwrap_or_default();
            Ok(RankAt { rank: res.rank, exceptional })
        }
    }
}

/// Rank of a matrix whose entries are all constants.
pub fn rank_constant(m: &PolyMatrix) -> Result<usize, LinalgError> {
    let vals = m.constant_values().ok_or(LinalgError::NonConstantEntry)?;
    Ok(rank_rational(&vals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, rat, Ring};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rational_rank_routes_agree() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_gauss(&m), 2);
        let full = q(&[&[2, 0], &[0, 3], &[1, 1]]);
        assert_eq!(rank_rational(&full), 2);
        assert_eq!(rank_rational(&q(&[&[0, 0]])), 0);
        // Entries congruent mod the prime must not fool the exact route.
        let big = BigInt::from(PRIME);
        let tricky = vec![
            vec![Rational::from_integer(big.clone() + 1), rat(1)],
            vec![rat(1), rat(1)],
        ];
        assert_eq!(rank_rational(&tricky), 2);
    }

    #[test]
    fn two_by_two_determinant() {
        let r = Ring::letters(4);
        let m = PolyMatrix::parse_rows(&r, &[vec!["a", "b"], vec!["c", "d"]]).unwrap();
        assert_eq!(determinant(&m).unwrap(), parse(&r, "a*d - b*c").unwrap());
        assert_eq!(determinant_cofactor(&m).unwrap(), parse(&r, "a*d - b*c").unwrap());
    }

    #[test]
    fn determinant_routes_agree_on_symbolic_matrix() {
        let r = Ring::letters(3);
        let m = PolyMatrix::parse_rows(
            &r,
            &[
                vec!["a", "b + 1", "0", "c^2"],
                vec!["1", "a*b", "c", "0"],
                vec!["b - c", "0", "a", "2"],
                vec!["c", "a", "b", "a*c - 1"],
            ],
        )
        .unwrap();
        assert_eq!(determinant(&m).unwrap(), determinant_cofactor(&m).unwrap());
    }

    #[test]
    fn free_parameter_rank() {
        let r = Ring::letters(2);
        // [[a, 1], [a*b, b]] has rank 1 identically when... det = a*b - a*b = 0.
        let m = PolyMatrix::parse_rows(&r, &[vec!["a", "1"], vec!["a*b", "b"]]).unwrap();
        let asg = Assignment::new().set(&r, "a", rat(2)).unwrap();
        assert_eq!(rank_at(&m, &asg, Some(1)).unwrap().rank, 1);
        let n = PolyMatrix::parse_rows(&r, &[vec!["a", "b"], vec!["1", "b"]]).unwrap();
        let at = rank_at(&n, &asg, Some(1)).unwrap();
        assert_eq!(at.rank, 2);
        assert_eq!(at.exceptional, vec![parse(&r, "b").unwrap()]);
        assert!(matches!(
            rank_at(&n, &Assignment::new(), None),
            Err(LinalgError::IncompleteAssignment(_))
        ));
    }
}
