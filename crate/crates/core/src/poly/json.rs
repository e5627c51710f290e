use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::order::Monomial;
use super::polynomial::{Polynomial, Ring};
use super::{PolyError, Rational};

/// JSON form: `{vars: [...], terms: [{exps: [...], num, den}]}`.
/// Numerators and denominators are decimal strings so big integers survive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u16>,
    pub num: String,
    pub den: String,
}

impl PolyJson {
    pub fn from_poly(p: &Polynomial) -> Self {
        let n = p.ring().nvars();
        PolyJson {
            vars: p.ring().names().to_vec(),
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| TermJson {
                    exps: m.exponents(n).to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    /// Rebuilds the polynomial in `ring`, mapping variables by name.
    pub fn to_poly(&self, ring: &Arc<Ring>) -> Result<Polynomial, PolyError> {
        let bad = |msg: &str| PolyError::Parse { pos: 0, msg: msg.to_string() };
        let mut map = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            map.push(ring.index_of(v).ok_or_else(|| PolyError::UnknownVariable(v.clone()))?);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exps.len() != self.vars.len() {
                return Err(bad("exponent vector length does not match vars"));
            }
            let mut exps = vec![0u16; ring.nvars()];
            for (i, &e) in t.exps.iter().enumerate() {
                exps[map[i]] = e;
            }
            let num = t.num.parse().map_err(|_| bad("bad numerator"))?;
            let den: num_bigint::BigInt = t.den.parse().map_err(|_| bad("bad denominator"))?;
            if num_traits::Zero::is_zero(&den) {
                return Err(bad("zero denominator"));
            }
            terms.push((Monomial::from_exponents(&exps), Rational::new(num, den)));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }
}
