use num_traits::{One, Signed};

use super::order::{Monomial, MAX_VARS};
use super::polynomial::Polynomial;
use super::Rational;

/// Partial factorization by content extraction and trial division.
///
/// Pulls out the rational content, the monomial content, and then any linear
/// factors of the form `±x ± y + k` (at most two variables, `|k| <= 3`)
/// that divide what is left, with multiplicity. Not a complete algorithm:
/// whatever survives is returned as a single cofactor. The product of the
/// returned factors (with multiplicities) always equals the input.
pub fn factor_trial(p: &Polynomial) -> Vec<(Polynomial, u32)> {
    let ring = p.ring().clone();
    if p.is_zero() || p.is_constant() {
        return vec![(p.clone(), 1)];
    }
    let mut out = Vec::new();
    let prim = p.primitive();
    let unit = p.leading_coeff().unwrap() / prim.leading_coeff().unwrap();
    if !unit.is_one() {
        out.push((Polynomial::constant(&ring, unit), 1));
    }

    let n = ring.nvars();
    let mut content = prim.terms()[0].0;
    for (m, _) in prim.terms() {
        content = content.gcd(m);
    }
    let mut rest = prim.clone();
    if !content.is_one() {
        for v in content.support() {
            out.push((Polynomial::var(&ring, v), content.exp(v) as u32));
        }
        let inv: Vec<(Monomial, Rational)> = rest
            .terms()
            .iter()
            .map(|(m, c)| (content.quotient_of(m), c.clone()))
            .collect();
        rest = Polynomial::from_terms(&ring, inv);
    }

    let vars = rest.variables();
    for cand in linear_candidates(&ring, &vars, n) {
        if rest.total_degree().unwrap_or(0) <= 1 {
            break;
        }
        let mut mult = 0;
        while let Some(q) = rest.exact_div(&cand) {
            rest = q;
            mult += 1;
            if rest.is_constant() {
                break;
            }
        }
        if mult > 0 {
            out.push((cand, mult));
        }
    }
    if rest.as_constant().is_none_or(|c| !c.is_one()) {
        out.push((rest, 1));
    }
    merge_repeats(out)
}

fn merge_repeats(factors: Vec<(Polynomial, u32)>) -> Vec<(Polynomial, u32)> {
    let mut merged: Vec<(Polynomial, u32)> = Vec::new();
    for (f, e) in factors {
        if let Some(slot) = merged.iter_mut().find(|(g, _)| *g == f) {
            slot.1 += e;
        } else {
            merged.push((f, e));
        }
    }
    merged
}

fn linear_candidates(ring: &std::sync::Arc<super::Ring>, vars: &[usize], n: usize) -> Vec<Polynomial> {
    let unit = |v: usize| {
        let mut exps = [0u16; MAX_VARS];
        exps[v] = 1;
        Monomial::from_exponents(&exps[..n])
    };
    let mut out = Vec::new();
    let consts: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];
    for &v in vars {
        for &k in &consts[1..] {
            let f = Polynomial::from_terms(
                ring,
                [(unit(v), Rational::one()), (Monomial::ONE, Rational::from_integer(k.into()))],
            );
            out.push(f.primitive());
        }
    }
    for (ai, &v) in vars.iter().enumerate() {
        for &w in &vars[ai + 1..] {
            for sign in [1i64, -1] {
                for &k in &consts {
                    let f = Polynomial::from_terms(
                        ring,
                        [
                            (unit(v), Rational::one()),
                            (unit(w), Rational::from_integer(sign.into())),
                            (Monomial::ONE, Rational::from_integer(k.into())),
                        ],
                    );
                    out.push(f.primitive());
                }
            }
        }
    }
    out
}

/// Renders factors as a product, e.g. `e^2*(e + 1)`.
pub fn display_factored(factors: &[(Polynomial, u32)]) -> String {
    let mut parts = Vec::new();
    let mut sign = "";
    for (f, e) in factors {
        if let Some(c) = f.as_constant() {
            if c == -Rational::one() {
                sign = "-";
                continue;
            }
        }
        let single = f.len() == 1 && !f.terms()[0].1.is_negative();
        let base = if single { f.to_string() } else { format!("({f})") };
        if *e == 1 {
            parts.push(base);
        } else if single && f.terms()[0].0.degree() == 1 && f.terms()[0].1.is_one() {
            parts.push(format!("{f}^{e}"));
        } else {
            parts.push(format!("({f})^{e}"));
        }
    }
    format!("{sign}{}", parts.join("*"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, Ring};

    fn product(fs: &[(Polynomial, u32)], ring: &std::sync::Arc<Ring>) -> Polynomial {
        fs.iter()
            .fold(Polynomial::one(ring), |acc, (f, e)| &acc * &f.pow(*e))
    }

    #[test]
    fn finds_repeated_monomial_and_linear_factor() {
        let r = Ring::letters(6);
        let p = parse(&r, "e^3 + e^2").unwrap();
        let fs = factor_trial(&p);
        assert_eq!(
            fs,
            vec![(parse(&r, "e").unwrap(), 2), (parse(&r, "e + 1").unwrap(), 1)]
        );
        assert_eq!(display_factored(&fs), "e^2*(e + 1)");
    }

    #[test]
    fn leaves_irreducible_cofactor() {
        let r = Ring::letters(6);
        let p = parse(&r, "d^3 - f*d").unwrap();
        let fs = factor_trial(&p);
        assert_eq!(
            fs,
            vec![(parse(&r, "d").unwrap(), 1), (parse(&r, "d^2 - f").unwrap(), 1)]
        );
        assert_eq!(product(&fs, &r), p);
        let q = parse(&r, "b^2 + d*e").unwrap();
        assert_eq!(factor_trial(&q), vec![(q.clone(), 1)]);
    }

    #[test]
    fn product_reconstructs_input() {
        let r = Ring::letters(6);
        for s in [
            "-c^3 - c^2",
            "b*e^2*(d - b)",
            "2*(c + 1)^2*(d - b)*f",
            "(f - d)*(f + d + 1)*(d^2 + 3)",
            "7",
        ] {
            let p = parse(&r, s).unwrap();
            assert_eq!(product(&factor_trial(&p), &r), p, "{s}");
        }
    }
}
