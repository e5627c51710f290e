use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::order::{Monomial, MonomialOrder, MAX_VARS};
use super::{PolyError, Rational};

/// Variable names plus the monomial order that fixes canonical term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> Arc<Ring> {
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        Arc::new(Ring {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            order,
        })
    }

    /// Ring on the letters `a, b, c, ...` (`n` of them) under the default order.
    pub fn letters(n: usize) -> Arc<Ring> {
        let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        Ring::new(&names, MonomialOrder::default())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { names: self.names.clone(), order })
    }

    /// This ring with one extra variable appended (largest under the default tiebreak).
    pub fn extended(&self, name: &str) -> Arc<Ring> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        Ring::new(&names, self.order)
    }
}

/// Exact multivariate polynomial over the rationals. Terms are kept sorted in
/// strictly descending order under the ring's monomial order, with no zero
/// coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

#[inline]
pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::term(ring, Monomial::ONE, c)
    }

    pub fn from_int(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(c.into()))
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// The variable at `index` as a polynomial.
    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        assert!(index < ring.nvars());
        Self::term(ring, Monomial::var(index), Rational::one())
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self, PolyError> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    /// Builds a polynomial from unsorted, possibly repeated terms.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<MonoKey, Rational> = BTreeMap::new();
        let order = ring.order();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(MonoKey(m, order)).or_insert_with(Rational::zero);
            *entry += c;
        }
        let mut terms: Vec<(Monomial, Rational)> = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k.0, c))
            .collect();
        terms.shrink_to_fit();
        Polynomial { ring: ring.clone(), terms }
    }

    /// Wraps terms already sorted descending with no zeros or repeats.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The constant value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &Rational), PolyError> {
        self.terms
            .first()
            .map(|(m, c)| (m, c))
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Leading term under an order other than the ring's own.
    pub fn leading_term_under(&self, ord: MonomialOrder) -> Result<(Monomial, Rational), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .map(|(m, c)| (*m, c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Indices of the variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = [false; MAX_VARS];
        for (m, _) in &self.terms {
            for v in m.support() {
                seen[v] = true;
            }
        }
        (0..self.ring.nvars()).filter(|&i| seen[i]).collect()
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Multiplies by `c * m`; term order is preserved since monomial orders
    /// are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Integer-coefficient primitive form with positive leading coefficient:
    /// rational content stripped, sign normalized.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        if self.terms[0].1.is_negative() {
            num_gcd = -num_gcd;
        }
        let factor = Rational::new(den_lcm, num_gcd);
        self.scale(&factor)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ord.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if subtract { -c } else { c.clone() })));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc = Polynomial::zero(&self.ring);
        let (short, long) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (m, c) in &short.terms {
            acc = acc.merge(&long.mul_term(m, c), false);
        }
        acc
    }

    /// Evaluates at a full rational point (one value per ring variable).
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars(), "point dimension mismatch");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in m.support() {
                t *= num_traits::pow(point[v].clone(), m.exp(v) as usize);
            }
            total += t;
        }
        total
    }

    /// Substitutes polynomials (in the same ring) for some variables.
    /// Variables absent from the assignment are left untouched.
    pub fn substitute(&self, assignment: &Assignment) -> Polynomial {
        let n = self.ring.nvars();
        let mut images: Vec<Option<&Polynomial>> = vec![None; n];
        for (v, p) in &assignment.values {
            assert!(same_ring(p.ring(), &self.ring), "substitution ring mismatch");
            images[*v] = Some(p);
        }
        let mut power_cache: BTreeMap<(usize, u16), Polynomial> = BTreeMap::new();
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut kept = Monomial::ONE;
            let mut factor = Polynomial::constant(&self.ring, c.clone());
            for v in m.support() {
                let e = m.exp(v);
                match images[v] {
                    None => {
                        let mut exps = [0u16; MAX_VARS];
                        exps[v] = e;
                        kept = kept.mul(&Monomial::from_exponents(&exps[..n]));
                    }
                    Some(img) => {
                        let pw = power_cache
                            .entry((v, e))
                            .or_insert_with(|| img.pow(e as u32))
                            .clone();
                        factor = &factor * &pw;
                    }
                }
            }
            parts.push(factor.mul_term(&kept, &Rational::one()));
        }
        sum_all(&self.ring, parts)
    }

    /// Same polynomial in another ring, matching variables by name.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Polynomial, PolyError> {
        let n = self.ring.nvars();
        let mut map = vec![usize::MAX; n];
        for v in self.variables() {
            let name = &self.ring.names()[v];
            map[v] = target
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = [0u16; MAX_VARS];
            for v in m.support() {
                exps[map[v]] = m.exp(v);
            }
            (Monomial::from_exponents(&exps[..target.nvars()]), c.clone())
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lm, lc) = divisor.leading_term().ok()?;
        let (lm, lc_inv) = (*lm, lc.recip());
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c * &lc_inv;
            rem = rem.merge(&divisor.mul_term(&qm, &qc), true);
            quot.push((qm, qc));
        }
        Some(Polynomial::from_sorted_terms(&self.ring, quot))
    }

    /// Total order on polynomials of one ring: term by term under the ring
    /// order, then by coefficient, then by length.
    pub fn cmp_terms(&self, other: &Polynomial) -> Ordering {
        let ord = self.ring.order();
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(&other.terms) {
            let o = ord.cmp(ma, mb).then_with(|| ca.cmp(cb));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    /// Derivative with respect to one variable.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let n = self.ring.nvars();
        let terms = self.terms.iter().filter(|(m, _)| m.exp(var) > 0).map(|(m, c)| {
            let mut exps: Vec<u16> = m.exponents(n).to_vec();
            let e = exps[var];
            exps[var] -= 1;
            (Monomial::from_exponents(&exps), c * Rational::from_integer(e.into()))
        });
        Polynomial::from_terms(&self.ring, terms)
    }
}

/// Sum of many polynomials in one ring.
pub fn sum_all(ring: &Arc<Ring>, parts: Vec<Polynomial>) -> Polynomial {
    if parts.len() <= 4 {
        return parts
            .into_iter()
            .fold(Polynomial::zero(ring), |acc, p| acc.merge(&p, false));
    }
    Polynomial::from_terms(ring, parts.into_iter().flat_map(|p| p.terms))
}

/// Total order key used while accumulating terms.
#[derive(Clone, Copy)]
struct MonoKey(Monomial, MonomialOrder);

impl PartialEq for MonoKey {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl Eq for MonoKey {}
impl PartialOrd for MonoKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MonoKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.cmp(&self.0, &other.0)
    }
}

/// Map from variable index to replacement polynomial.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    values: BTreeMap<usize, Polynomial>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns a rational constant to the named variable.
    pub fn set(mut self, ring: &Arc<Ring>, name: &str, value: Rational) -> Result<Self, PolyError> {
        let v = ring
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        self.values.insert(v, Polynomial::constant(ring, value));
        Ok(self)
    }

    pub fn set_poly(mut self, ring: &Arc<Ring>, name: &str, value: Polynomial) -> Result<Self, PolyError> {
        let v = ring
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        self.values.insert(v, value);
        Ok(self)
    }

    pub fn insert(&mut self, var: usize, value: Polynomial) {
        self.values.insert(var, value);
    }

    pub fn get(&self, var: usize) -> Option<&Polynomial> {
        self.values.get(&var)
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in add")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in sub")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in mul")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(self.ring.names(), m, "*");
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

pub(crate) fn format_monomial(names: &[String], m: &Monomial, sep: &str) -> String {
    let mut parts = Vec::new();
    for v in m.support() {
        let e = m.exp(v);
        if e == 1 {
            parts.push(names[v].clone());
        } else {
            parts.push(format!("{}^{}", names[v], e));
        }
    }
    parts.join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn ring6() -> Arc<Ring> {
        Ring::letters(6)
    }

    fn p(s: &str) -> Polynomial {
        parse(&ring6(), s).unwrap()
    }

    #[test]
    fn cancellation_gives_zero() {
        let r = &p("b^2 + b") + &p("-b^2 - b");
        assert!(r.is_zero());
        assert_eq!(r.to_string(), "0");
    }

    #[test]
    fn expanded_product_matches() {
        let lhs = &(&p("b") * &p("e^2")) * &p("d - b");
        assert_eq!(lhs, p("b*e^2*d - b^2*e^2"));
        assert_eq!(&p("c + 1") * &p("c^2"), p("c^3 + c^2"));
    }

    #[test]
    fn leading_terms() {
        let f = p("b^2*c + c^2");
        assert_eq!(f.leading_monomial(), p("b^2*c").leading_monomial());
        let g = p("c*d + c*e");
        assert_eq!(g.leading_monomial(), p("c*e").leading_monomial());
        let five = p("5");
        let (m, c) = five.leading_term().unwrap();
        assert!(m.is_one());
        assert_eq!(*c, Rational::from_integer(5.into()));
        assert!(matches!(Polynomial::zero(&ring6()).leading_term(), Err(PolyError::ZeroPolynomial)));
    }

    #[test]
    fn substitution_examples() {
        let r = ring6();
        let at = |name: &str, v: i64| Assignment::new().set(&r, name, Rational::from_integer(v.into())).unwrap();
        assert!(p("b^2 + b").substitute(&at("b", -1)).is_zero());
        assert!(p("f*(f + 1)").substitute(&at("f", -1)).is_zero());
        let d_is_b = Assignment::new().set_poly(&r, "d", p("b")).unwrap();
        assert!(p("b*e^2*(d - b)").substitute(&d_is_b).is_zero());
        let partial = p("b*c + c^2").substitute(&at("b", 2));
        assert_eq!(partial, p("c^2 + 2*c"));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let other = Ring::letters(3);
        let x = Polynomial::var(&other, 0);
        assert!(matches!(p("a").try_add(&x), Err(PolyError::RingMismatch)));
    }

    #[test]
    fn primitive_and_exact_division() {
        assert_eq!(p("-2*b + 4/3*c").primitive(), p("2*c - 3*b"));
        assert_eq!(p("-2*c + 4/3*b").primitive(), p("3*c - 2*b"));
        let q = p("c^3 + c^2").exact_div(&p("c + 1")).unwrap();
        assert_eq!(q, p("c^2"));
        assert!(p("c^2 + 1").exact_div(&p("c + 1")).is_none());
    }

    #[test]
    fn to_ring_maps_by_name() {
        let small = Ring::new(&["b", "d"], MonomialOrder::default());
        let x = parse(&small, "b*d^2 - 3").unwrap();
        assert_eq!(x.to_ring(&ring6()).unwrap(), p("b*d^2 - 3"));
        assert!(p("a").to_ring(&small).is_err());
    }
}
