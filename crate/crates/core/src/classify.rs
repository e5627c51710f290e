//! Case analysis of `M(R)` for small `(p, q)`: rank checks of the published
//! classification, determinantal ideals of each residual block, zero-set
//! checks and a genericity sampler.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compose::{OperatorPolynomial, Step};
use crate::conmatrix::{build_consequence_matrix, ConmatrixError, ConsequenceMatrix};
use crate::golden;
use crate::ideals::{self, GbOptions, Ideal, IdealsError, ZeroSetClaim};
use crate::linalg::{distinct_minors, partial_smith_form, rank_at, rank_rational, smith_univariate, LinalgError, PolyMatrix};
use crate::monomial::{OperatorMonomial, Style};
use crate::poly::{parse, parse_rational, univariate, Assignment, MonomialOrder, PolyError, Polynomial, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("no published classification for degree {p}, multiplicity {q}")]
    Unpublished { p: usize, q: usize },
    #[error("bad published entry {0:?}")]
    BadEntry(String),
    #[error(transparent)]
    Conmatrix(#[from] ConmatrixError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ideals(#[from] IdealsError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn show(r: &Rational) -> String {
    r.to_string()
}

/// One branch of the "first nonzero coefficient is 1" normalisation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    /// 1-based: case `k` has the first `k-1` coefficients zero and the `k`-th equal to 1.
    pub index: usize,
    pub pinned: Vec<(String, String)>,
    pub free: Vec<String>,
}

impl CaseSpec {
    pub fn assignment(&self, ring: &Arc<Ring>) -> Result<Assignment, PolyError> {
        let mut a = Assignment::new();
        for (name, v) in &self.pinned {
            a = a.set(ring, name, parse_rational(v).expect("pinned values are rationals"))?;
        }
        Ok(a)
    }

    pub fn label(&self) -> String {
        self.pinned.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(", ")
    }

    /// The case a nonzero coefficient vector falls into after scaling.
    pub fn of(point: &[Rational]) -> Option<usize> {
        point.iter().position(|c| !c.is_zero()).map(|i| i + 1)
    }
}

/// The mutually exclusive cases for an identity with `n` coefficients.
pub fn case_specs(ring: &Arc<Ring>) -> Vec<CaseSpec> {
    let names = ring.names();
    (0..names.len())
        .map(|k| {
            let mut pinned: Vec<(String, String)> = names[..k].iter().map(|n| (n.clone(), "0".into())).collect();
            pinned.push((names[k].clone(), "1".into()));
            CaseSpec { index: k + 1, pinned, free: names[k + 1..].to_vec() }
        })
        .collect()
}

/// Coefficient vector, possibly depending on one free parameter that is
/// itself one of the ring variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub coefficients: Vec<Polynomial>,
    pub param: Option<usize>,
    pub excluded: Vec<Rational>,
}

impl Pattern {
    pub fn parse<S: AsRef<str>>(ring: &Arc<Ring>, texts: &[S], excluded: &[(String, String)]) -> Result<Self, ClassifyError> {
        let coefficients: Vec<Polynomial> = texts.iter().map(|t| parse(ring, t.as_ref())).collect::<Result<_, _>>()?;
        let mut vars: Vec<usize> = coefficients.iter().flat_map(|c| c.variables()).collect();
        vars.sort_unstable();
        vars.dedup();
        if vars.len() > 1 {
            return Err(ClassifyError::BadEntry(texts.iter().map(|t| t.as_ref()).collect::<Vec<_>>().join(" ")));
        }
        let param = vars.first().copied();
        let mut ex = Vec::new();
        for (name, v) in excluded {
            if param.map(|p| ring.names()[p].as_str()) != Some(name.as_str()) {
                return Err(ClassifyError::BadEntry(format!("exclusion {name}={v}")));
            }
            ex.push(parse_rational(v).ok_or_else(|| ClassifyError::BadEntry(v.clone()))?);
        }
        Ok(Pattern { coefficients, param, excluded: ex })
    }

    pub fn point(&self) -> Option<Vec<Rational>> {
        self.coefficients.iter().map(|c| if c.is_zero() { Some(Rational::zero()) } else { c.as_constant() }).collect()
    }

    /// The member at parameter value `t`.
    pub fn at(&self, t: &Rational) -> Vec<Rational> {
        let n = self.coefficients.first().map_or(0, |c| c.ring().nvars());
        let mut pt = vec![Rational::zero(); n];
        if let Some(p) = self.param {
            pt[p] = t.clone();
        }
        self.coefficients.iter().map(|c| c.evaluate(&pt)).collect()
    }

    /// Whether `point` is a member, honouring exclusions.
    pub fn matches(&self, point: &[Rational]) -> bool {
        match self.param {
            None => self.point().as_deref() == Some(point),
            Some(v) => {
                let t = &point[v];
                !self.excluded.contains(t) && self.at(t) == point
            }
        }
    }

    pub fn text(&self) -> String {
        self.coefficients.iter().map(|c| c.to_string().replace(' ', "")).collect::<Vec<_>>().join(" ")
    }
}

/// Named identities: `(p, q, coefficients, exclusion, name)`.
const NAMES: &[(usize, usize, &str, &str, &str)] = &[
    (2, 1, "1 -1 -1", "", "derivation"),
    (2, 2, "1 0 0 1 0 1", "", "New identity A (right)"),
    (2, 2, "1 0 0 d 0 -d-1", "d=0", "New identity B (right)"),
    (2, 2, "1 1 1 0 0 0", "", "New identity A (left)"),
    (2, 2, "1 b -b-1 0 0 0", "b=0", "New identity B (left)"),
    (2, 2, "1 -2 1 -2 2 1", "", "New identity C"),
    (2, 2, "1 -1 0 -1 1 0", "", "Nijenhuis"),
    (2, 2, "0 1 -1 0 0 0", "", "P1"),
    (2, 2, "0 1 0 0 -1 0", "", "Left average"),
    (2, 2, "0 1 0 0 0 0", "", "P2"),
    (2, 2, "0 1 0 1 -1 0", "", "Rota-Baxter"),
    (2, 2, "0 0 0 1 -1 0", "", "Right average"),
    (2, 2, "0 0 0 1 0 -1", "", "P3"),
    (2, 2, "0 0 0 1 0 0", "", "P4"),
    (2, 2, "0 0 0 0 1 0", "", "P5"),
];

fn exclusion_list(s: &str) -> Vec<(String, String)> {
    s.split_once('=').map(|(a, b)| vec![(a.trim().to_string(), b.trim().to_string())]).unwrap_or_default()
}

/// Name of a known identity: a point matches a family member, a family
/// matches only the same family.
pub fn identity_name(p: usize, q: usize, ring: &Arc<Ring>, coefficients: &[Polynomial]) -> Option<&'static str> {
    let probe_point: Option<Vec<Rational>> =
        coefficients.iter().map(|c| if c.is_zero() { Some(Rational::zero()) } else { c.as_constant() }).collect();
    NAMES.iter().filter(|n| n.0 == p && n.1 == q).find_map(|&(_, _, coeffs, ex, name)| {
        let texts: Vec<&str> = coeffs.split_whitespace().collect();
        let pat = Pattern::parse(ring, &texts, &exclusion_list(ex)).ok()?;
        let hit = match &probe_point {
            Some(pt) => pat.matches(pt),
            None => pat.coefficients == coefficients,
        };
        hit.then_some(name)
    })
}

fn coefficient_text(c: &Polynomial) -> String {
    if let Some(k) = c.as_constant() {
        return if k.is_one() { String::new() } else { format!("{} ", show(&k)) };
    }
    let t = c.to_string().replace(' ', "");
    if c.len() == 1 && c.leading_coeff().is_some_and(|l| l.is_one()) {
        format!("{t} ")
    } else {
        format!("({t}) ")
    }
}

/// Renders `Σ c_k m_k = 0` with negative terms moved to the right side, e.g.
/// `L(L(x)y) + L(xL(y)) = L(x)L(y)`.
pub fn identity_render(basis: &[OperatorMonomial], coefficients: &[Polynomial]) -> String {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (m, c) in basis.iter().zip(coefficients) {
        if c.is_zero() {
            continue;
        }
        let neg = c.leading_coeff().is_some_and(|l| l.is_negative());
        let c = if neg { -c } else { c.clone() };
        let term = format!("{}{}", coefficient_text(&c), m.render(Style::Pretty));
        if neg {
            right.push(term);
        } else {
            left.push(term);
        }
    }
    if left.is_empty() {
        std::mem::swap(&mut left, &mut right);
    }
    let side = |v: &[String]| if v.is_empty() { "0".to_string() } else { v.join(" + ") };
    format!("{} = {}", side(&left), side(&right))
}

/// Parses identity text in the rendered style, also accepting bracketed
/// groups with a scalar such as `2[L(x)y - xL(y)]`. Returns left minus right
/// as coefficients on `basis`.
pub fn parse_identity(text: &str, basis: &[OperatorMonomial], ring: &Arc<Ring>) -> Option<Vec<Polynomial>> {
    let (l, r) = text.split_once('=')?;
    let chars_l: Vec<char> = l.chars().collect();
    let chars_r: Vec<char> = r.chars().collect();
    let mut pos = 0;
    let left = parse_side(&chars_l, &mut pos, basis, ring)?;
    (pos == chars_l.len()).then_some(())?;
    pos = 0;
    let right = parse_side(&chars_r, &mut pos, basis, ring)?;
    (pos == chars_r.len()).then_some(())?;
    Some(left.iter().zip(&right).map(|(a, b)| a - b).collect())
}

fn skip_ws(c: &[char], pos: &mut usize) {
    while *pos < c.len() && c[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_side(c: &[char], pos: &mut usize, basis: &[OperatorMonomial], ring: &Arc<Ring>) -> Option<Vec<Polynomial>> {
    let mut acc = vec![Polynomial::zero(ring); basis.len()];
    let mut sign = Rational::one();
    loop {
        skip_ws(c, pos);
        if *pos < c.len() && (c[*pos] == '-' || c[*pos] == '+') {
            if c[*pos] == '-' {
                sign = -sign;
            }
            *pos += 1;
            skip_ws(c, pos);
        }
        let term = parse_term(c, pos, basis, ring)?;
        let s = Polynomial::constant(ring, sign.clone());
        for (a, t) in acc.iter_mut().zip(term) {
            *a = &*a + &(&s * &t);
        }
        skip_ws(c, pos);
        if *pos >= c.len() || c[*pos] == ']' {
            return Some(acc);
        }
        sign = Rational::one();
        if c[*pos] != '+' && c[*pos] != '-' {
            return None;
        }
    }
}

fn parse_term(c: &[char], pos: &mut usize, basis: &[OperatorMonomial], ring: &Arc<Ring>) -> Option<Vec<Polynomial>> {
    let mut coef = Polynomial::one(ring);
    if *pos < c.len() && c[*pos].is_ascii_digit() {
        let start = *pos;
        while *pos < c.len() && (c[*pos].is_ascii_digit() || c[*pos] == '/') {
            *pos += 1;
        }
        let s: String = c[start..*pos].iter().collect();
        coef = Polynomial::constant(ring, parse_rational(&s)?);
        skip_ws(c, pos);
    } else if *pos < c.len() && c[*pos] == '(' {
        let start = *pos;
        let mut depth = 0;
        while *pos < c.len() {
            match c[*pos] {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            *pos += 1;
            if depth == 0 {
                break;
            }
        }
        let s: String = c[start..*pos].iter().collect();
        coef = parse(ring, &s).ok()?;
        skip_ws(c, pos);
    } else if *pos + 1 < c.len() && c[*pos].is_ascii_lowercase() && c[*pos + 1].is_whitespace() && ring.index_of(&c[*pos].to_string()).is_some() {
        coef = Polynomial::var_named(ring, &c[*pos].to_string()).ok()?;
        *pos += 1;
        skip_ws(c, pos);
    }
    if *pos >= c.len() || c[*pos] == ']' || c[*pos] == '+' || c[*pos] == '-' {
        // A bare scalar: only zero is meaningful.
        return coef.is_zero().then(|| vec![Polynomial::zero(ring); basis.len()]).or_else(|| {
            (coef.as_constant().is_some_and(|k| k.is_zero())).then(|| vec![Polynomial::zero(ring); basis.len()])
        });
    }
    if c[*pos] == '[' {
        *pos += 1;
        let inner = parse_side(c, pos, basis, ring)?;
        if c.get(*pos) != Some(&']') {
            return None;
        }
        *pos += 1;
        return Some(inner.iter().map(|t| &coef * t).collect());
    }
    let start = *pos;
    let mut depth = 0i32;
    while *pos < c.len() {
        let ch = c[*pos];
        if depth == 0 && (ch.is_whitespace() || ch == '+' || ch == '-' || ch == ']') {
            break;
        }
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        *pos += 1;
    }
    let word: String = c[start..*pos].iter().collect();
    if word == "0" {
        return Some(vec![Polynomial::zero(ring); basis.len()]);
    }
    let m = OperatorMonomial::parse_text(&word)?;
    let k = basis.iter().position(|b| b == &m)?;
    let mut out = vec![Polynomial::zero(ring); basis.len()];
    out[k] = coef;
    Some(out)
}

/// A published classification entry, parsed.
#[derive(Debug, Clone)]
pub struct ClassificationEntry {
    pub pattern: Pattern,
    pub rank: usize,
    pub identity_text: String,
    pub name: Option<String>,
}

/// The published classification for `(p, q)`.
pub fn published(p: usize, q: usize, ring: &Arc<Ring>) -> Result<Vec<ClassificationEntry>, ClassifyError> {
    let text = match (p, q) {
        (2, 1) => golden::THEOREM21,
        (2, 2) => golden::THEOREM22,
        _ => return Err(ClassifyError::Unpublished { p, q }),
    };
    golden::classification(text)
        .into_iter()
        .map(|e| {
            let excluded: Vec<(String, String)> = e.excluded.into_iter().collect();
            Ok(ClassificationEntry {
                pattern: Pattern::parse(ring, &e.coefficients, &excluded)?,
                rank: e.rank,
                identity_text: e.identity,
                name: e.name,
            })
        })
        .collect()
}

/// Maximal rank stated alongside the published classification.
pub fn published_max_rank(p: usize, q: usize) -> Option<usize> {
    match (p, q) {
        (2, 1) => Some(17),
        (2, 2) => Some(20),
        _ => None,
    }
}

/// Exact rank of `M(R)` at a point.
pub fn rank_at_point(cm: &ConsequenceMatrix, point: &[Rational]) -> usize {
    rank_rational(&cm.matrix.evaluate(point))
}

/// Coefficient permutation induced by reflecting every basis monomial.
pub fn mirror_permutation(basis: &[OperatorMonomial]) -> Vec<usize> {
    basis
        .iter()
        .map(|m| {
            let r = m.mirror();
            basis.iter().position(|b| b == &r).expect("reflection preserves degree and multiplicity")
        })
        .collect()
}

/// `point` reflected: the coefficient of `m` moves to the reflection of `m`.
pub fn mirror_point(perm: &[usize], point: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); point.len()];
    for (k, &j) in perm.iter().enumerate() {
        out[j] = point[k].clone();
    }
    out
}

/// Scales so the first nonzero coefficient is 1.
pub fn normalize(point: &[Rational]) -> Vec<Rational> {
    match point.iter().find(|c| !c.is_zero()) {
        None => point.to_vec(),
        Some(lead) => {
            let inv = lead.recip();
            point.iter().map(|c| c * &inv).collect()
        }
    }
}

/// Knobs for [`classify`].
#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Grid values per free coefficient for the genericity scan.
    pub grid: Vec<Rational>,
    /// Cap on grid points per case; larger grids are subsampled uniformly.
    pub scan_budget: usize,
    /// Random off-table points per case.
    pub random_points: usize,
    pub seed: u64,
    /// Compute Gröbner bases of the determinantal ideals.
    pub groebner: bool,
    pub order: MonomialOrder,
    pub gb_timeout: Option<Duration>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            grid: default_grid(),
            scan_budget: 2000,
            random_points: 500,
            seed: 0x5eed,
            groebner: true,
            order: MonomialOrder::default(),
            gb_timeout: None,
        }
    }
}

/// `{−2, −1, −1/2, 0, 1/2, 1, 2}`.
pub fn default_grid() -> Vec<Rational> {
    let h = Rational::new(1.into(), 2.into());
    vec![q(-2), q(-1), -h.clone(), q(0), h, q(1), q(2)]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub parameter: String,
    pub generic_rank: usize,
    /// Rational parameter values where the generic rank might drop.
    pub suspect_values: Vec<String>,
    /// Values among those where the rank really drops, with the rank there.
    pub drops: Vec<(String, usize)>,
    pub excluded: Vec<String>,
    /// Rank drops happen exactly at the excluded values.
    pub drops_match_exclusions: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryCheck {
    pub coefficients: String,
    pub case: usize,
    pub expected_rank: usize,
    pub rank: usize,
    /// `identity_size` plus the residual rank.
    pub psf_rank: usize,
    pub published_identity: String,
    pub rendered_identity: String,
    /// The published text parses to the same coefficients.
    pub identity_matches: bool,
    pub name: Option<String>,
    pub name_matches: bool,
    pub family: Option<FamilyCheck>,
    /// Annihilates the determinantal ideal that forces this rank.
    pub zero_set: Option<bool>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSummary {
    pub minor_size: usize,
    pub raw_minors: usize,
    pub generators: usize,
    pub degree_range: Option<(u32, u32)>,
    pub basis_size: Option<usize>,
    pub basis: Vec<String>,
    pub confluent: Option<bool>,
    /// Wall time; left out of reports so they stay byte-identical.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub point: Vec<String>,
    pub rank: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub grid_points: usize,
    pub random_points: usize,
    pub low_rank_explained: usize,
    /// Low-rank points of the grid scan, in scan order.
    pub low_rank_points: Vec<(Vec<String>, usize)>,
    pub findings: Vec<Finding>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: CaseSpec,
    pub identity_size: usize,
    pub residual_shape: (usize, usize),
    pub residual_nonzero_rows: usize,
    /// Smith diagonal of the residual block when one coefficient is free.
    pub smith_diagonal: Option<Vec<String>>,
    pub ideals: Vec<IdealSummary>,
    pub entries: Vec<EntryCheck>,
    pub scan: ScanReport,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub degree: usize,
    pub multiplicity: usize,
    pub order: String,
    pub max_rank: usize,
    pub published_max_rank: Option<usize>,
    pub cases: Vec<CaseReport>,
    pub passed: bool,
}

impl ClassifyReport {
    pub fn entries(&self) -> impl Iterator<Item = &EntryCheck> {
        self.cases.iter().flat_map(|c| c.entries.iter())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_markdown(&self) -> String {
        let badge = |ok: bool| if ok { "**PASS**" } else { "**FAIL**" };
        let mut s = String::new();
        let _ = writeln!(s, "# Classification: degree {}, multiplicity {}\n", self.degree, self.multiplicity);
        let _ = writeln!(s, "{} Maximal rank {} (published {}), order {}.\n", badge(self.passed), self.max_rank,
            self.published_max_rank.map_or("none".into(), |r| r.to_string()), self.order);
        let mut by_rank: BTreeMap<usize, Vec<&EntryCheck>> = BTreeMap::new();
        for e in self.entries() {
            by_rank.entry(e.expected_rank).or_default().push(e);
        }
        for (rank, es) in by_rank {
            let _ = writeln!(s, "## Rank {rank}\n");
            let _ = writeln!(s, "| | coefficients | identity | name | rank |\n|---|---|---|---|---|");
            for e in es {
                let _ = writeln!(s, "| {} | {} | {} | {} | {} |", badge(e.passed), e.coefficients, e.rendered_identity,
                    e.name.clone().unwrap_or_default(), e.rank);
            }
            s.push('\n');
        }
        let _ = writeln!(s, "## Cases\n");
        for c in &self.cases {
            let _ = writeln!(s, "### Case {} ({})\n", c.case.index, c.case.label());
            let _ = writeln!(s, "- {} identity block {}, residual {}x{} ({} nonzero rows)", badge(c.passed), c.identity_size,
                c.residual_shape.0, c.residual_shape.1, c.residual_nonzero_rows);
            if let Some(d) = &c.smith_diagonal {
                let _ = writeln!(s, "- Smith diagonal of the residual block: {}", d.join(", "));
            }
            for i in &c.ideals {
                let _ = writeln!(s, "- I(B,{}): {} minors, {} generators up to scalars, basis {}{}", i.minor_size, i.raw_minors,
                    i.generators, i.basis_size.map_or("not computed".into(), |n| n.to_string()),
                    match i.confluent { Some(false) => ", confluence audit FAILED", _ => "" });
            }
            let _ = writeln!(s, "- scan: {} grid points, {} random points, {} low-rank points explained, {} findings",
                c.scan.grid_points, c.scan.random_points, c.scan.low_rank_explained, c.scan.findings.len());
            for f in &c.scan.findings {
                let _ = writeln!(s, "  - finding at ({}): rank {}, {}", f.point.join(", "), f.rank, f.reason);
            }
            s.push('\n');
        }
        s
    }
}

/// Full case analysis of `M(R)` against the published classification.
pub fn classify(p: usize, q: usize, opts: &ClassifyOptions) -> Result<ClassifyReport, ClassifyError> {
    let cm = build_consequence_matrix(p, q)?;
    let ring = cm.ring.clone();
    let entries = published(p, q, &ring)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let generic: Vec<Rational> = (0..ring.nvars()).map(|_| random_rational(&mut rng)).collect();
    let max_rank = rank_at_point(&cm, &generic);
    let specs = case_specs(&ring);
    let cases: Vec<CaseReport> = specs
        .par_iter()
        .map(|spec| analyse_case(&cm, spec, &entries, max_rank, opts))
        .collect::<Result<_, _>>()?;
    let covered = entries.iter().all(|e| {
        e.pattern.point().is_none_or(|pt| CaseSpec::of(&pt).is_some())
    });
    let passed = covered && cases.iter().all(|c| c.passed) && published_max_rank(p, q).is_none_or(|r| r == max_rank);
    Ok(ClassifyReport {
        degree: p,
        multiplicity: q,
        order: opts.order.name().to_string(),
        max_rank,
        published_max_rank: published_max_rank(p, q),
        cases,
        passed,
    })
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    let n: i64 = rng.gen_range(-30..=30);
    let d: i64 = rng.gen_range(1..=12);
    Rational::new(n.into(), d.into())
}

fn entry_case(e: &ClassificationEntry) -> Option<usize> {
    e.pattern.coefficients.iter().position(|c| !c.is_zero()).map(|i| i + 1)
}

fn analyse_case(
    cm: &ConsequenceMatrix,
    spec: &CaseSpec,
    entries: &[ClassificationEntry],
    max_rank: usize,
    opts: &ClassifyOptions,
) -> Result<CaseReport, ClassifyError> {
    let ring = &cm.ring;
    let pinned = spec.assignment(ring)?;
    let m = cm.specialize(&pinned);
    let psf = partial_smith_form(&m);
    let block = &psf.lower_right;
    let nonzero: Vec<usize> = block.nonzero_rows();
    let trimmed = block.submatrix(&nonzero, &(0..block.cols()).collect::<Vec<_>>());

    let smith_diagonal = if spec.free.len() == 1 && !trimmed.is_zero() && trimmed.rows() > 0 {
        Some(smith_univariate(&trimmed)?.diagonal.iter().map(|p| p.to_string()).collect())
    } else {
        None
    };

    // Determinantal ideals of the residual block.
    let max_size = trimmed.rows().min(trimmed.cols());
    let mut ideals_out = Vec::new();
    let mut bases: BTreeMap<usize, Vec<Polynomial>> = BTreeMap::new();
    let mut gens: BTreeMap<usize, Ideal> = BTreeMap::new();
    if !trimmed.is_zero() {
        for r in 1..=max_size {
            let t0 = Instant::now();
            let summary = distinct_minors(&trimmed, r)?;
            let ideal = Ideal::new(ring, summary.distinct.iter().cloned())?;
            let (basis_size, basis, confluent) = if opts.groebner {
                let gb_opts = GbOptions { deadline: opts.gb_timeout.map(|d| Instant::now() + d), ..Default::default() };
                match ideals::buchberger_with(&ideal, opts.order, &gb_opts) {
                    Ok(gb) => {
                        let audit = ideals::confluence_audit(&gb).is_empty();
                        let texts = gb.basis.iter().map(|p| p.to_string()).collect();
                        let b: Vec<Polynomial> = gb.basis.iter().map(|p| p.to_ring(ring)).collect::<Result<_, _>>()?;
                        bases.insert(r, b);
                        (Some(gb.len()), texts, Some(audit))
                    }
                    Err(IdealsError::Timeout) => (None, Vec::new(), None),
                    Err(e) => return Err(e.into()),
                }
            } else {
                (None, Vec::new(), None)
            };
            ideals_out.push(IdealSummary {
                minor_size: r,
                raw_minors: summary.raw,
                generators: ideal.len(),
                degree_range: summary.degree_range(),
                basis_size,
                basis,
                confluent,
                elapsed_ms: t0.elapsed().as_millis(),
            });
            let empty = ideal.is_empty();
            gens.insert(r, ideal);
            if empty {
                break;
            }
        }
    }

    // Published entries in this case.
    let mine: Vec<&ClassificationEntry> = entries.iter().filter(|e| entry_case(e) == Some(spec.index)).collect();
    let mut checks = Vec::new();
    for e in &mine {
        checks.push(check_entry(cm, e, spec, &psf.identity_size, block, &bases, &gens)?);
    }

    let scan = genericity_scan(cm, spec, entries, max_rank, opts);
    let passed = checks.iter().all(|c| c.passed)
        && scan.findings.is_empty()
        && ideals_out.iter().all(|i| i.confluent != Some(false));
    Ok(CaseReport {
        case: spec.clone(),
        identity_size: psf.identity_size,
        residual_shape: (block.rows(), block.cols()),
        residual_nonzero_rows: nonzero.len(),
        smith_diagonal,
        ideals: ideals_out,
        entries: checks,
        scan,
        passed,
    })
}

fn check_entry(
    cm: &ConsequenceMatrix,
    e: &ClassificationEntry,
    spec: &CaseSpec,
    identity_size: &usize,
    block: &PolyMatrix,
    bases: &BTreeMap<usize, Vec<Polynomial>>,
    gens: &BTreeMap<usize, Ideal>,
) -> Result<EntryCheck, ClassifyError> {
    let ring = &cm.ring;
    let pat = &e.pattern;
    let mut asg = Assignment::new();
    for (k, c) in pat.coefficients.iter().enumerate() {
        if Some(k) != pat.param {
            asg.insert(k, c.clone());
        }
    }
    // A family parameter sits in its own slot, so leaving it unassigned
    // keeps it symbolic; the other slots may depend on it.
    let (rank, family) = match pat.param {
        None => {
            let pt = pat.point().expect("constant pattern");
            (rank_at_point(cm, &pt), None)
        }
        Some(v) => {
            let res = rank_at(&cm.matrix, &asg, Some(v))?;
            let suspects: Vec<Rational> =
                res.exceptional.iter().flat_map(|p| univariate::rational_roots(p, v)).collect();
            let mut drops = Vec::new();
            for t in &suspects {
                let r = rank_at_point(cm, &pat.at(t));
                if r < res.rank {
                    drops.push((show(t), r));
                }
            }
            let mut excl: Vec<String> = pat.excluded.iter().map(show).collect();
            excl.sort();
            let mut dropped: Vec<String> = drops.iter().map(|d| d.0.clone()).collect();
            dropped.sort();
            let f = FamilyCheck {
                parameter: ring.names()[v].clone(),
                generic_rank: res.rank,
                suspect_values: suspects.iter().map(show).collect(),
                drops_match_exclusions: dropped == excl,
                drops,
                excluded: pat.excluded.iter().map(show).collect(),
            };
            (res.rank, Some(f))
        }
    };
    // PSF route: the block is in the free coefficients of this case.
    let free_asg = {
        let mut a = Assignment::new();
        for (k, c) in pat.coefficients.iter().enumerate() {
            if Some(k) != pat.param && !spec.pinned.iter().any(|(n, _)| ring.index_of(n) == Some(k)) {
                a.insert(k, c.clone());
            }
        }
        a
    };
    let psf_rank = identity_size + rank_at(block, &free_asg, pat.param)?.rank;

    let rendered = identity_render(&cm.basis, &pat.coefficients);
    let identity_matches = parse_identity(&e.identity_text, &cm.basis, ring).is_some_and(|c| c == pat.coefficients);
    let name = identity_name(cm.p, cm.q, ring, &pat.coefficients).map(String::from);
    let name_matches = name == e.name;

    // The entry's rank forces all minors of size rank - identity_size + 1 to vanish.
    let zero_set = e.rank.checked_sub(*identity_size).map(|r| r + 1).and_then(|r| {
        let polys = bases.get(&r).cloned().or_else(|| gens.get(&r).map(|i| i.generators().to_vec()))?;
        let ideal = Ideal::new(ring, polys).ok()?;
        let claim = ZeroSetClaim {
            points: vec![ideals::ClaimPoint { label: pat.text(), assignment: asg.clone(), excluded: Vec::new() }],
        };
        Some(ideals::verify_zero_set(&ideal, &claim).all_passed())
    });

    let passed = rank == e.rank
        && psf_rank == e.rank
        && identity_matches
        && name_matches
        && zero_set != Some(false)
        && family.as_ref().is_none_or(|f| f.drops_match_exclusions);
    Ok(EntryCheck {
        coefficients: pat.text(),
        case: spec.index,
        expected_rank: e.rank,
        rank,
        psf_rank,
        published_identity: e.identity_text.clone(),
        rendered_identity: rendered,
        identity_matches,
        name,
        name_matches,
        family,
        zero_set,
        passed,
    })
}

/// Samples points of one case and flags low-rank points that no published
/// entry explains, or published points that fail to drop.
pub fn genericity_scan(
    cm: &ConsequenceMatrix,
    spec: &CaseSpec,
    entries: &[ClassificationEntry],
    max_rank: usize,
    opts: &ClassifyOptions,
) -> ScanReport {
    let ring = &cm.ring;
    let n = ring.nvars();
    let base: Vec<Rational> = {
        let mut v = vec![Rational::zero(); n];
        for (name, val) in &spec.pinned {
            v[ring.index_of(name).expect("pinned variable")] = parse_rational(val).expect("rational");
        }
        v
    };
    let free: Vec<usize> = spec.free.iter().map(|s| ring.index_of(s).expect("free variable")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (spec.index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));

    // Grid points: every combination when it fits the budget, else a uniform sample.
    let g = opts.grid.len();
    let total = (g as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    let indices: Vec<u128> = if total <= opts.scan_budget as u128 {
        (0..total).collect()
    } else {
        let cap = usize::try_from(total).unwrap_or(usize::MAX);
        let mut v: Vec<u128> = sample(&mut rng, cap, opts.scan_budget).into_iter().map(|i| i as u128).collect();
        v.sort_unstable();
        v
    };
    let grid_pts: Vec<Vec<Rational>> = indices
        .iter()
        .map(|&idx| {
            let mut pt = base.clone();
            let mut x = idx;
            for &v in &free {
                pt[v] = opts.grid[(x % g as u128) as usize].clone();
                x /= g as u128;
            }
            pt
        })
        .collect();
    let random_pts: Vec<Vec<Rational>> = (0..opts.random_points)
        .map(|_| {
            let mut pt = base.clone();
            for &v in &free {
                pt[v] = random_rational(&mut rng);
            }
            pt
        })
        .collect();

    let judge = |pt: &Vec<Rational>| -> (usize, Option<&ClassificationEntry>) {
        let r = rank_at_point(cm, pt);
        (r, entries.iter().find(|e| e.pattern.matches(pt)))
    };
    let grid_res: Vec<(usize, Option<&ClassificationEntry>)> = grid_pts.par_iter().map(judge).collect();
    let rand_res: Vec<(usize, Option<&ClassificationEntry>)> = random_pts.par_iter().map(judge).collect();

    let mut report = ScanReport { grid_points: grid_pts.len(), random_points: random_pts.len(), ..Default::default() };
    for (pt, (r, hit)) in grid_pts.iter().zip(&grid_res).chain(random_pts.iter().zip(&rand_res)) {
        let text = || pt.iter().map(show).collect::<Vec<_>>();
        match hit {
            Some(e) if e.rank == *r => {
                if *r < max_rank {
                    report.low_rank_explained += 1;
                }
            }
            Some(e) => report.findings.push(Finding {
                point: text(),
                rank: *r,
                reason: format!("published rank {}", e.rank),
            }),
            None if *r < max_rank => report.findings.push(Finding {
                point: text(),
                rank: *r,
                reason: "low rank not in the published classification".into(),
            }),
            None => {}
        }
    }
    for (pt, (r, _)) in grid_pts.iter().zip(&grid_res) {
        if *r < max_rank {
            report.low_rank_points.push((pt.iter().map(show).collect(), *r));
        }
    }
    report
}

/// Result of composing a lower identity with `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionCheck {
    pub source: String,
    pub step: String,
    pub result: String,
    pub expected_name: String,
    pub found_name: Option<String>,
    pub passed: bool,
}

/// Pairs `(multiplicity-1 identity, step, multiplicity-2 name)` where
/// partial composition with `L` lands on a named identity.
pub const COMPOSITION_PAIRS: &[(&str, Step, &str)] = &[
    ("1 0 -1", Step::ArgL(1), "Left average"),
    ("1 -1 0", Step::ArgL(2), "Right average"),
    ("1 -1 0", Step::ArgL(1), "P1"),
    ("1 0 0", Step::ArgL(1), "P2"),
    ("1 0 -1", Step::ArgL(2), "P3"),
    ("1 0 0", Step::ArgL(2), "P4"),
    ("0 1 0", Step::ArgL(2), "P5"),
];

pub fn composition_checks() -> Result<Vec<CompositionCheck>, ClassifyError> {
    let low = build_consequence_matrix(2, 1)?;
    let high = build_consequence_matrix(2, 2)?;
    let index: BTreeMap<_, _> = high.basis.iter().enumerate().map(|(i, m)| (m.to_paren(), i)).collect();
    COMPOSITION_PAIRS
        .iter()
        .map(|&(src, step, name)| {
            let pt: Vec<Rational> = src.split_whitespace().map(|s| parse_rational(s).expect("rational")).collect();
            let r: OperatorPolynomial = low.identity_at(&pt)?;
            let composed = r.apply(step).map_err(ConmatrixError::from)?;
            let coords = composed.coordinates(&index, high.basis.len()).expect("lands in O(2,2)");
            let coords: Vec<Rational> = coords.iter().map(|c| c.as_constant().unwrap_or_else(Rational::zero)).collect();
            let normal = normalize(&coords);
            let polys: Vec<Polynomial> = normal.iter().map(|c| Polynomial::constant(&high.ring, c.clone())).collect();
            let found = identity_name(2, 2, &high.ring, &polys).map(String::from);
            let source = identity_render(&low.basis, &pt.iter().map(|c| Polynomial::constant(&low.ring, c.clone())).collect::<Vec<_>>());
            Ok(CompositionCheck {
                source,
                step: format!("{step:?}"),
                result: identity_render(&high.basis, &polys),
                expected_name: name.to_string(),
                passed: found.as_deref() == Some(name),
                found_name: found,
            })
        })
        .collect()
}

/// Zero-set tables: `(section, case, minor size)` of the ideal each annihilates.
pub const SOLUTION_TABLES: &[(&str, usize, usize)] = &[
    ("case1-ideal1", 1, 1),
    ("case1-ideal4-b=0", 1, 4),
    ("case1-ideal4-e=0", 1, 4),
    ("case1-ideal4-d=b", 1, 4),
    ("case2", 2, 1),
    ("case4", 4, 1),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionTableCheck {
    pub section: String,
    pub case: usize,
    pub minor_size: usize,
    pub points: usize,
    pub failures: Vec<String>,
}

/// Checks every published solution table against the determinantal ideal of
/// its case's residual block, with symbolic rows as polynomial identities.
pub fn verify_solution_tables() -> Result<Vec<SolutionTableCheck>, ClassifyError> {
    let cm = build_consequence_matrix(2, 2)?;
    let ring = cm.ring.clone();
    let specs = case_specs(&ring);
    let secs = golden::sections(golden::SOLUTIONS);
    let mut cache: BTreeMap<(usize, usize), Ideal> = BTreeMap::new();
    let mut out = Vec::new();
    for &(name, case, r) in SOLUTION_TABLES {
        let ideal = match cache.get(&(case, r)) {
            Some(i) => i.clone(),
            None => {
                let spec = &specs[case - 1];
                let m = cm.specialize(&spec.assignment(&ring)?);
                let psf = partial_smith_form(&m);
                let i = Ideal::new(&ring, distinct_minors(&psf.lower_right, r)?.distinct)?;
                cache.insert((case, r), i.clone());
                i
            }
        };
        let rows = golden::section(&secs, name).ok_or_else(|| ClassifyError::BadEntry(name.into()))?;
        let claim = ZeroSetClaim::from_rows(&ring, rows)?;
        let rep = ideals::verify_zero_set(&ideal, &claim);
        out.push(SolutionTableCheck {
            section: name.to_string(),
            case,
            minor_size: r,
            points: rows.len(),
            failures: rep.checks.iter().filter(|c| !c.passed).map(|c| c.label.clone()).collect(),
        });
    }
    Ok(out)
}
