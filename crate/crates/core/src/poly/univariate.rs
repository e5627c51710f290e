//! Helpers for polynomials that involve at most one variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::order::{Monomial, MAX_VARS};
use super::polynomial::Polynomial;
use super::Rational;
use std::sync::Arc;

use super::Ring;

/// Dense coefficients, index = power of `var`. Panics if another variable occurs.
pub fn to_dense(p: &Polynomial, var: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        assert!(
            m.support().all(|v| v == var),
            "polynomial {p} is not univariate in variable {var}"
        );
        out[m.exp(var) as usize] = c.clone();
    }
    out
}

pub fn from_dense(ring: &Arc<Ring>, var: usize, coeffs: &[Rational]) -> Polynomial {
    let n = ring.nvars();
    let terms = coeffs.iter().enumerate().map(|(e, c)| {
        let mut exps = [0u16; MAX_VARS];
        exps[var] = e as u16;
        (Monomial::from_exponents(&exps[..n]), c.clone())
    });
    Polynomial::from_terms(ring, terms)
}

fn trim(v: &mut Vec<Rational>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Quotient and remainder of `a / b` in `Q[var]`.
pub fn divrem(a: &Polynomial, b: &Polynomial, var: usize) -> (Polynomial, Polynomial) {
    assert!(!b.is_zero(), "division by zero");
    let ring = a.ring();
    let mut r = to_dense(a, var);
    let d = to_dense(b, var);
    let db = d.len() - 1;
    let lc_inv = d[db].recip();
    if r.len() < d.len() {
        return (Polynomial::zero(ring), a.clone());
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lc_inv;
        if c.is_zero() {
            continue;
        }
        for (i, di) in d.iter().enumerate() {
            r[k + i] -= &c * di;
        }
        q[k] = c;
    }
    trim(&mut r);
    (from_dense(ring, var, &q), from_dense(ring, var, &r))
}

/// Monic gcd in `Q[var]`; gcd(0, 0) = 0.
pub fn gcd(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = divrem(&x, &y, var);
        x = y;
        y = r;
    }
    x.monic()
}

/// All rational roots, without multiplicity, in increasing order.
pub fn rational_roots(p: &Polynomial, var: usize) -> Vec<Rational> {
    if p.is_zero() {
        return Vec::new();
    }
    let prim = p.primitive();
    let mut coeffs: Vec<BigInt> = to_dense(&prim, var)
        .into_iter()
        .map(|c| c.to_integer())
        .collect();
    let mut roots = Vec::new();
    if coeffs.len() > 1 && coeffs[0].is_zero() {
        roots.push(Rational::zero());
        while coeffs.len() > 1 && coeffs[0].is_zero() {
            coeffs.remove(0);
        }
    }
    if coeffs.len() <= 1 {
        return roots;
    }
    let a0 = coeffs[0].abs();
    let an = coeffs.last().unwrap().abs();
    let nums = divisors(&a0);
    let dens = divisors(&an);
    let dense: Vec<Rational> = coeffs.iter().cloned().map(Rational::from_integer).collect();
    for n in &nums {
        for d in &dens {
            for s in [1, -1] {
                let cand = Rational::new(BigInt::from(s) * n, d.clone());
                if horner(&dense, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn horner(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    if let Some(small) = n.to_u64() {
        let mut out = Vec::new();
        let mut d = 1u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                out.push(BigInt::from(d));
                if d * d != small {
                    out.push(BigInt::from(small / d));
                }
            }
            d += 1;
            if d > 10_000_000 {
                break;
            }
        }
        return out;
    }
    // Large constants: fall back to small divisors only.
    (1u64..=1000)
        .map(BigInt::from)
        .filter(|d| n.is_multiple_of(d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn gcd_and_division() {
        let r = Ring::letters(6);
        let f = parse(&r, "f^3 - f").unwrap();
        let g = parse(&r, "f^2 + 2*f + 1").unwrap();
        assert_eq!(gcd(&f, &g, 5), parse(&r, "f + 1").unwrap());
        let (q, rem) = divrem(&f, &g, 5);
        assert_eq!(&(&q * &g) + &rem, f);
        assert!(rem.degree_in(5) < 2);
    }

    #[test]
    fn finds_rational_roots() {
        let r = Ring::letters(4);
        let p = parse(&r, "d*(2*d - 1)*(d + 3)*(d^2 + 1)").unwrap();
        let roots = rational_roots(&p, 3);
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(roots, vec![q(-3, 1), q(0, 1), q(1, 2)]);
    }
}
