use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Maximum number of ring variables. Six coefficient variables plus one
/// auxiliary variable covers everything validated; the rest is headroom for
/// exploratory runs at larger (p, q).
pub const MAX_VARS: usize = 12;

/// Exponent vector with a cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, exps: [0; MAX_VARS] };

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn var(index: usize) -> Self {
        let mut m = Self::ONE;
        m.exps[index] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables: {}", exps.len());
        let mut m = Self::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = e;
        }
        m.deg = exps.iter().map(|&e| e as u32).sum();
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        Monomial { deg: self.deg + other.deg, exps }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Monomial { deg: other.deg - self.deg, exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].max(other.exps[i]);
            deg += exps[i] as u32;
        }
        Monomial { deg, exps }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].min(other.exps[i]);
            deg += exps[i] as u32;
        }
        Monomial { deg, exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Indices of variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "x{:?}", &self.exps[..last])
    }
}

/// How deglex breaks ties between monomials of equal total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tiebreak {
    /// Compare the exponent of the last variable in precedence first, so the
    /// last variable is the largest (`f^2` tops the degree-2 monomials in
    /// `a < b < ... < f`).
    LastVariableFirst,
    /// Compare the exponent of the first variable first.
    FirstVariableFirst,
}

/// Graded monomial orders. The tiebreak names which end of the variable list
/// holds the largest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    DegLex(Tiebreak),
    /// Graded reverse lexicographic: among equal degrees, the monomial with
    /// the smaller exponent in the smallest variable wins.
    DegRevLex(Tiebreak),
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::DegLex(Tiebreak::LastVariableFirst)
    }
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegLex(tb) => a.deg.cmp(&b.deg).then_with(|| match tb {
                Tiebreak::LastVariableFirst => {
                    for i in (0..MAX_VARS).rev() {
                        match a.exps[i].cmp(&b.exps[i]) {
                            Ordering::Equal => continue,
                            o => return o,
                        }
                    }
                    Ordering::Equal
                }
                Tiebreak::FirstVariableFirst => {
                    for i in 0..MAX_VARS {
                        match a.exps[i].cmp(&b.exps[i]) {
                            Ordering::Equal => continue,
                            o => return o,
                        }
                    }
                    Ordering::Equal
                }
            }),
            MonomialOrder::DegRevLex(tb) => a.deg.cmp(&b.deg).then_with(|| {
                let scan = |i: usize| b.exps[i].cmp(&a.exps[i]);
                let found = match tb {
                    Tiebreak::LastVariableFirst => (0..MAX_VARS).map(scan).find(|o| o.is_ne()),
                    Tiebreak::FirstVariableFirst => (0..MAX_VARS).rev().map(scan).find(|o| o.is_ne()),
                };
                found.unwrap_or(Ordering::Equal)
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::DegLex(Tiebreak::LastVariableFirst) => "deglex-last-first",
            MonomialOrder::DegLex(Tiebreak::FirstVariableFirst) => "deglex-first-first",
            MonomialOrder::DegRevLex(Tiebreak::LastVariableFirst) => "degrevlex-last-first",
            MonomialOrder::DegRevLex(Tiebreak::FirstVariableFirst) => "degrevlex-first-first",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_degree_dominates() {
        let ord = MonomialOrder::default();
        // b^2 c vs c^2 in (a..f)
        let b2c = Monomial::from_exponents(&[0, 2, 1]);
        let c2 = Monomial::from_exponents(&[0, 0, 2]);
        assert_eq!(ord.cmp(&b2c, &c2), Ordering::Greater);
    }

    #[test]
    fn tiebreak_directions() {
        let cd = Monomial::from_exponents(&[0, 0, 1, 1]);
        let ce = Monomial::from_exponents(&[0, 0, 1, 0, 1]);
        let last = MonomialOrder::DegLex(Tiebreak::LastVariableFirst);
        let first = MonomialOrder::DegLex(Tiebreak::FirstVariableFirst);
        assert_eq!(last.cmp(&ce, &cd), Ordering::Greater);
        assert_eq!(first.cmp(&ce, &cd), Ordering::Less);
    }

    #[test]
    fn degrevlex_prefers_small_exponent_in_smallest_variable() {
        // Variables a < b < c with c largest: a*c^2 vs b^3 under revlex looks at a first.
        let ord = MonomialOrder::DegRevLex(Tiebreak::LastVariableFirst);
        let ac2 = Monomial::from_exponents(&[1, 0, 2]);
        let b3 = Monomial::from_exponents(&[0, 3, 0]);
        assert_eq!(ord.cmp(&b3, &ac2), Ordering::Greater);
        // Differs from deglex on the same pair of degree-3 monomials.
        let lex = MonomialOrder::DegLex(Tiebreak::LastVariableFirst);
        assert_eq!(lex.cmp(&b3, &ac2), Ordering::Less);
        assert_eq!(ord.cmp(&Monomial::var(2), &Monomial::var(1)), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(&[1, 2]);
        let b = Monomial::from_exponents(&[2, 1, 1]);
        assert!(!a.divides(&b));
        let l = a.lcm(&b);
        assert_eq!(l, Monomial::from_exponents(&[2, 2, 1]));
        assert!(a.divides(&l) && b.divides(&l));
        assert_eq!(a.quotient_of(&l), Monomial::from_exponents(&[1, 0, 1]));
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(0).is_coprime(&Monomial::var(3)));
    }
}
