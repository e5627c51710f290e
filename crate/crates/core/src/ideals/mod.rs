//! Polynomial ideals, Gröbner bases, membership tests and zero-set checks.

mod engine;

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::poly::{Assignment, Monomial, MonomialOrder, Polynomial, Rational, Ring};

pub use engine::{GbOptions, GbStats, PairTieBreak};
use engine::{IPoly, Reducers};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealsError {
    #[error("Gröbner basis computation exceeded its time limit")]
    Timeout,
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("division certificate failed to reconstruct the dividend")]
    BadCertificate,
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}

/// An ideal given by canonical generators: integer content stripped, positive
/// leading coefficient, no zeros, no repeats, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self, IdealsError> {
        let mut gens = Vec::new();
        for g in generators {
            if **g.ring() != **ring {
                return Err(IdealsError::RingMismatch);
            }
            if !g.is_zero() {
                gens.push(g.primitive());
            }
        }
        gens.sort_by(|a, b| a.cmp_terms(b));
        gens.dedup();
        Ok(Ideal { ring: ring.clone(), generators: gens })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Sum with another ideal of the same ring.
    pub fn plus(&self, other: &Ideal) -> Result<Ideal, IdealsError> {
        Ideal::new(&self.ring, self.generators.iter().chain(&other.generators).cloned())
    }
}

/// Reduced Gröbner basis: monic, sorted ascending by leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub ideal: Ideal,
    pub order: MonomialOrder,
    pub basis: Vec<Polynomial>,
    pub stats: GbStats,
    pub elapsed: Duration,
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        ideal_membership(f, self)
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        reduce(f, &self.basis)
    }
}

fn to_ipoly(p: &Polynomial) -> IPoly {
    let q = p.primitive();
    IPoly { terms: q.terms().iter().map(|(m, c)| (*m, c.numer().clone())).collect() }
}

fn from_ipoly_monic(ring: &Arc<Ring>, p: &IPoly) -> Polynomial {
    let lc = Rational::from_integer(p.lc().clone());
    Polynomial::from_terms(ring, p.terms.iter().map(|(m, c)| (*m, Rational::from_integer(c.clone()) / &lc)))
}

/// Remainder of `f` on division by `g` (terms tried in the order given). No
/// term of the result is divisible by a leading monomial of `g`.
pub fn reduce(f: &Polynomial, g: &[Polynomial]) -> Polynomial {
    let ord = f.ring().order();
    if f.is_zero() {
        return f.clone();
    }
    let content = {
        let lc = f.leading_coeff().cloned().unwrap_or_else(Rational::one);
        let prim = f.primitive();
        lc / prim.leading_coeff().cloned().unwrap_or_else(Rational::one)
    };
    let gi: Vec<IPoly> = g.iter().filter(|p| !p.is_zero()).map(to_ipoly).collect();
    let by = Reducers::new(gi.iter().collect());
    let (r, k) = engine::reduce_core(ord, &to_ipoly(f), &by);
    let factor = content / k;
    Polynomial::from_terms(f.ring(), r.terms.into_iter().map(|(m, c)| (m, Rational::from_integer(c) * &factor)))
}

/// Division record: `dividend = Σ quotients[i]·divisors[i] + remainder`.
#[derive(Debug, Clone)]
pub struct Division {
    pub dividend: Polynomial,
    pub divisors: Vec<Polynomial>,
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl Division {
    /// Recomputes the combination by multiplication and compares.
    pub fn verify(&self) -> bool {
        let ring = self.dividend.ring();
        let mut total = self.remainder.clone();
        for (q, g) in self.quotients.iter().zip(&self.divisors) {
            total = &total + &(q * g);
        }
        total == self.dividend && self.remainder.terms().iter().all(|(m, _)| {
            !self.divisors.iter().any(|g| g.leading_monomial().is_some_and(|l| l.divides(m)))
        }) && **ring == **self.remainder.ring()
    }
}

/// Multivariate division in rational arithmetic, keeping the quotients.
pub fn reduce_with_certificate(f: &Polynomial, g: &[Polynomial]) -> Result<Division, IdealsError> {
    let ring = f.ring();
    if g.iter().any(|p| **p.ring() != **ring) {
        return Err(IdealsError::RingMismatch);
    }
    let mut quot: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); g.len()];
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut p = f.clone();
    while let Some((m, c)) = p.leading_term().ok().map(|(m, c)| (*m, c.clone())) {
        let hit = g.iter().enumerate().find(|(_, gi)| gi.leading_monomial().is_some_and(|l| l.divides(&m)));
        match hit {
            Some((i, gi)) => {
                let (lm, lc) = gi.leading_term()?;
                let qm = lm.quotient_of(&m);
                let qc = c / lc;
                p = &p - &gi.mul_term(&qm, &qc);
                quot[i].push((qm, qc));
            }
            None => {
                p = &p - &Polynomial::term(ring, m, c.clone());
                rem.push((m, c));
            }
        }
    }
    let div = Division {
        dividend: f.clone(),
        divisors: g.to_vec(),
        quotients: quot.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect(),
        remainder: Polynomial::from_terms(ring, rem),
    };
    if !div.verify() {
        return Err(IdealsError::BadCertificate);
    }
    Ok(div)
}

/// Reduced Gröbner basis under `order` with default options.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    buchberger_with(ideal, order, &GbOptions::default()).expect("no deadline set")
}

/// Like [`buchberger`], honouring a deadline, tie-break and early unit stop.
pub fn buchberger_with(ideal: &Ideal, order: MonomialOrder, opts: &GbOptions) -> Result<GroebnerBasis, IdealsError> {
    let t0 = Instant::now();
    let ring = ideal.ring.with_order(order);
    let gens: Vec<Polynomial> =
        ideal.generators.iter().map(|g| g.to_ring(&ring)).collect::<Result<_, _>>()?;
    let inputs: Vec<IPoly> = gens.iter().map(to_ipoly).collect();
    let out = engine::groebner(order, inputs, opts).map_err(|_| IdealsError::Timeout)?;
    let basis = if out.basis.len() == 1 && out.basis[0].lm().is_one() {
        vec![Polynomial::one(&ring)]
    } else {
        out.basis.iter().map(|p| from_ipoly_monic(&ring, p)).collect()
    };
    Ok(GroebnerBasis {
        ideal: Ideal { ring, generators: gens },
        order,
        basis,
        stats: out.stats,
        elapsed: t0.elapsed(),
    })
}

/// `f` lies in the ideal iff it reduces to zero modulo the basis.
pub fn ideal_membership(f: &Polynomial, gb: &GroebnerBasis) -> bool {
    let ring = gb.ideal.ring();
    match f.to_ring(ring) {
        Ok(f) => reduce(&f, &gb.basis).is_zero(),
        Err(_) => false,
    }
}

/// `f` lies in the radical iff `1 ∈ I + ⟨1 − y·f⟩` for a fresh variable `y`.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool, IdealsError> {
    radical_membership_with(f, ideal, None)
}

pub fn radical_membership_with(f: &Polynomial, ideal: &Ideal, deadline: Option<Instant>) -> Result<bool, IdealsError> {
    if f.is_zero() {
        return Ok(true);
    }
    let mut fresh = String::from("y");
    while ideal.ring.index_of(&fresh).is_some() {
        fresh.push('_');
    }
    let ext = ideal.ring.extended(&fresh);
    let y = Polynomial::var_named(&ext, &fresh)?;
    let fe = f.to_ring(&ext)?;
    let mut gens: Vec<Polynomial> = ideal.generators.iter().map(|g| g.to_ring(&ext)).collect::<Result<_, _>>()?;
    gens.push(&Polynomial::one(&ext) - &(&y * &fe));
    let opts = GbOptions { stop_on_unit: true, deadline, ..Default::default() };
    let gb = buchberger_with(&Ideal::new(&ext, gens)?, ext.order(), &opts)?;
    Ok(gb.is_unit())
}

/// A candidate zero: each listed variable is replaced by a polynomial, so
/// free parameters stay symbolic. Excluded values are recorded with the point.
#[derive(Debug, Clone)]
pub struct ClaimPoint {
    pub label: String,
    pub assignment: Assignment,
    pub excluded: Vec<(String, Rational)>,
}

#[derive(Debug, Clone, Default)]
pub struct ZeroSetClaim {
    pub points: Vec<ClaimPoint>,
}

impl ZeroSetClaim {
    /// Parses rows of whitespace-separated entries, one per ring variable in
    /// order. Entries are polynomial expressions; any variable they mention
    /// is a free parameter.
    pub fn from_rows<S: AsRef<str>>(ring: &Arc<Ring>, rows: &[S]) -> Result<Self, IdealsError> {
        let names = ring.names().to_vec();
        let mut points = Vec::new();
        for row in rows {
            let row = row.as_ref();
            let mut a = Assignment::new();
            for (name, entry) in names.iter().zip(row.split_whitespace()) {
                a = a.set_poly(ring, name, crate::poly::parse(ring, entry)?)?;
            }
            points.push(ClaimPoint { label: row.split_whitespace().collect::<Vec<_>>().join(" "), assignment: a, excluded: Vec::new() });
        }
        Ok(ZeroSetClaim { points })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCheck {
    pub label: String,
    pub passed: bool,
    /// Index of the first generator that does not vanish.
    pub witness: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSetReport {
    pub checks: Vec<PointCheck>,
}

impl ZeroSetReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Substitutes each claimed point into every generator; a point passes when
/// all results are the zero polynomial.
pub fn verify_zero_set(ideal: &Ideal, claim: &ZeroSetClaim) -> ZeroSetReport {
    let checks = claim
        .points
        .iter()
        .map(|pt| {
            let witness = ideal.generators.iter().position(|g| !g.substitute(&pt.assignment).is_zero());
            PointCheck { label: pt.label.clone(), passed: witness.is_none(), witness }
        })
        .collect();
    ZeroSetReport { checks }
}

/// Pairs `(i, j)` of basis elements whose S-polynomial does not reduce to
/// zero. Empty for a correct Gröbner basis; every pair is checked.
pub fn confluence_audit(gb: &GroebnerBasis) -> Vec<(usize, usize)> {
    use rayon::prelude::*;
    let ord = gb.order;
    let polys: Vec<IPoly> = gb.basis.iter().map(to_ipoly).collect();
    let by = Reducers::new(polys.iter().collect());
    let pairs: Vec<(usize, usize)> =
        (0..polys.len()).flat_map(|i| (i + 1..polys.len()).map(move |j| (i, j))).collect();
    pairs
        .into_par_iter()
        .filter(|&(i, j)| !engine::reduce(ord, &engine::spoly(ord, &polys[i], &polys[j]), &by).is_zero())
        .collect()
}

/// Every generator of `ideal` reduces to zero modulo `gb`.
pub fn contains_ideal(gb: &GroebnerBasis, ideal: &Ideal) -> bool {
    ideal.generators.iter().all(|g| ideal_membership(g, gb))
}

/// Sets of polynomials equal after monic normalisation in `ring`.
pub fn same_monic_set(ring: &Arc<Ring>, a: &[Polynomial], b: &[Polynomial]) -> Result<bool, IdealsError> {
    let norm = |s: &[Polynomial]| -> Result<Vec<Polynomial>, IdealsError> {
        let mut v: Vec<Polynomial> = s.iter().map(|p| p.to_ring(ring).map(|p| p.monic())).collect::<Result<_, _>>()?;
        v.sort_by(|x, y| x.cmp_terms(y));
        v.dedup();
        Ok(v)
    };
    Ok(norm(a)? == norm(b)?)
}
