//! Partial compositions of operator monomials with the product `B` and the
//! operator `L`, their linear extension to operator polynomials, and the
//! consequences of an identity one degree and one multiplicity up.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::monomial::{Node, OperatorMonomial, ParenString, Style};
use crate::poly::{Polynomial, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComposeError {
    #[error("argument index {index} out of range 1..={degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("product side must be 1 or 2, got {0}")]
    InvalidSide(usize),
    #[error("terms of mixed degree/multiplicity: ({0},{1}) vs ({2},{3})")]
    Inhomogeneous(usize, usize, usize, usize),
    #[error("coefficient ring mismatch")]
    RingMismatch,
}

/// Rebuilds `node` with its `target`-th argument (0-based) replaced.
fn replace_arg(node: &Node, target: usize, seen: &mut usize, f: &dyn Fn() -> Node) -> Node {
    match node {
        Node::Arg => {
            let here = *seen;
            *seen += 1;
            if here == target {
                f()
            } else {
                Node::Arg
            }
        }
        Node::Op(inner) => Node::op(replace_arg(inner, target, seen, f)),
        Node::Product(cs) => Node::product(cs.iter().map(|c| replace_arg(c, target, seen, f)).collect()),
    }
}

fn check_index(m: &OperatorMonomial, i: usize) -> Result<(), ComposeError> {
    if i < 1 || i > m.degree() {
        Err(ComposeError::IndexOutOfRange { index: i, degree: m.degree() })
    } else {
        Ok(())
    }
}

/// `m ∘ᵢ B`: the `i`-th argument becomes a product of two arguments.
pub fn comp_m_b(m: &OperatorMonomial, i: usize) -> Result<OperatorMonomial, ComposeError> {
    check_index(m, i)?;
    let node = replace_arg(m.root(), i - 1, &mut 0, &|| Node::Product(vec![Node::Arg, Node::Arg]));
    Ok(OperatorMonomial::from_node(node))
}

/// `B ∘ⱼ m`: multiply by a new argument on the right (`j = 1`) or left (`j = 2`).
pub fn comp_b_m(m: &OperatorMonomial, j: usize) -> Result<OperatorMonomial, ComposeError> {
    let node = match j {
        1 => Node::product(vec![m.root().clone(), Node::Arg]),
        2 => Node::product(vec![Node::Arg, m.root().clone()]),
        _ => return Err(ComposeError::InvalidSide(j)),
    };
    Ok(OperatorMonomial::from_node(node))
}

/// `m ∘ᵢ L`: apply `L` to the `i`-th argument.
pub fn comp_m_l(m: &OperatorMonomial, i: usize) -> Result<OperatorMonomial, ComposeError> {
    check_index(m, i)?;
    let node = replace_arg(m.root(), i - 1, &mut 0, &|| Node::op(Node::Arg));
    Ok(OperatorMonomial::from_node(node))
}

/// `L ∘ m`: apply `L` to the whole monomial.
pub fn comp_l_m(m: &OperatorMonomial) -> OperatorMonomial {
    OperatorMonomial::from_node(Node::op(m.root().clone()))
}

/// One partial composition step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// `− ∘ᵢ B`
    ArgTimesB(usize),
    /// `B ∘ⱼ −`
    BTimes(usize),
    /// `− ∘ᵢ L`
    ArgL(usize),
    /// `L ∘ −`
    WrapL,
}

impl Step {
    pub fn apply(&self, m: &OperatorMonomial) -> Result<OperatorMonomial, ComposeError> {
        match *self {
            Step::ArgTimesB(i) => comp_m_b(m, i),
            Step::BTimes(j) => comp_b_m(m, j),
            Step::ArgL(i) => comp_m_l(m, i),
            Step::WrapL => Ok(comp_l_m(m)),
        }
    }

    fn wrap(&self, inner: &str, compound: bool, ascii: bool) -> String {
        let (o, sub): (&str, fn(usize) -> String) = if ascii {
            (" o", |i| i.to_string())
        } else {
            (" ∘", subscript)
        };
        let x = if compound { format!("({inner})") } else { inner.to_string() };
        match *self {
            Step::ArgTimesB(i) => format!("{x}{o}{} B", sub(i)),
            Step::BTimes(j) => format!("B{o}{} {x}", sub(j)),
            Step::ArgL(i) => format!("{x}{o}{} L", sub(i)),
            Step::WrapL => format!("L{o} {x}"),
        }
    }
}

fn subscript(n: usize) -> String {
    const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().bytes().map(|b| SUB[(b - b'0') as usize]).collect()
}

/// A two-step composition word such as `(R ∘₁ B) ∘₂ L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConsequenceSpec {
    pub first: Step,
    pub second: Step,
}

impl ConsequenceSpec {
    pub fn label(&self) -> String {
        self.second.wrap(&self.first.wrap("R", false, false), true, false)
    }

    pub fn ascii_label(&self) -> String {
        self.second.wrap(&self.first.wrap("R", false, true), true, true)
    }

    /// True for degree-first compositions.
    pub fn degree_first(&self) -> bool {
        matches!(self.first, Step::ArgTimesB(_) | Step::BTimes(_))
    }
}

impl fmt::Display for ConsequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All `(p+2)(2p+3)` composition words for an identity of degree `p`, in the
/// frozen listing order: degree-first words grouped by their first step, then
/// multiplicity-first words grouped the same way.
pub fn consequence_specs(p: usize) -> Vec<ConsequenceSpec> {
    let mut out = Vec::with_capacity((p + 2) * (2 * p + 3));
    let degree_steps = (1..=p).map(Step::ArgTimesB).chain((1..=2).map(Step::BTimes));
    for first in degree_steps {
        for k in 1..=p + 1 {
            out.push(ConsequenceSpec { first, second: Step::ArgL(k) });
        }
        out.push(ConsequenceSpec { first, second: Step::WrapL });
    }
    let mult_steps = (1..=p).map(Step::ArgL).chain(std::iter::once(Step::WrapL));
    for first in mult_steps {
        for k in 1..=p {
            out.push(ConsequenceSpec { first, second: Step::ArgTimesB(k) });
        }
        for j in 1..=2 {
            out.push(ConsequenceSpec { first, second: Step::BTimes(j) });
        }
    }
    out
}

/// Homogeneous linear combination of operator monomials with polynomial
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorPolynomial {
    ring: Arc<Ring>,
    shape: Option<(usize, usize)>,
    terms: BTreeMap<ParenString, (OperatorMonomial, Polynomial)>,
}

impl OperatorPolynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        OperatorPolynomial { ring: ring.clone(), shape: None, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        ring: &Arc<Ring>,
        terms: impl IntoIterator<Item = (OperatorMonomial, Polynomial)>,
    ) -> Result<Self, ComposeError> {
        let mut out = Self::zero(ring);
        for (m, c) in terms {
            out.add_term(m, c)?;
        }
        Ok(out)
    }

    /// Rational-coefficient combination, e.g. `L(xy) - xL(y)`.
    pub fn from_rational_terms(
        ring: &Arc<Ring>,
        terms: impl IntoIterator<Item = (OperatorMonomial, Rational)>,
    ) -> Result<Self, ComposeError> {
        Self::from_terms(ring, terms.into_iter().map(|(m, c)| (m, Polynomial::constant(ring, c))))
    }

    pub fn add_term(&mut self, m: OperatorMonomial, c: Polynomial) -> Result<(), ComposeError> {
        if !crate::poly::same_ring(c.ring(), &self.ring) {
            return Err(ComposeError::RingMismatch);
        }
        let shape = (m.degree(), m.multiplicity());
        match self.shape {
            Some(s) if s != shape => {
                return Err(ComposeError::Inhomogeneous(s.0, s.1, shape.0, shape.1));
            }
            _ => self.shape = Some(shape),
        }
        let key = m.to_paren();
        let sum = match self.terms.remove(&key) {
            Some((_, old)) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, (m, sum));
        }
        if self.terms.is_empty() {
            self.shape = None;
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// `(degree, multiplicity)`, or `None` for the zero polynomial.
    pub fn shape(&self) -> Option<(usize, usize)> {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&OperatorMonomial, &Polynomial)> {
        self.terms.values().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &OperatorMonomial) -> Option<&Polynomial> {
        self.terms.get(&m.to_paren()).map(|(_, c)| c)
    }

    /// Linear extension of a composition step.
    pub fn apply(&self, step: Step) -> Result<Self, ComposeError> {
        let mut out = Self::zero(&self.ring);
        for (m, c) in self.terms() {
            out.add_term(step.apply(m)?, c.clone())?;
        }
        Ok(out)
    }

    pub fn apply_spec(&self, spec: &ConsequenceSpec) -> Result<Self, ComposeError> {
        self.apply(spec.first)?.apply(spec.second)
    }

    /// Coefficient vector against an ordered basis. Fails if a term is not in the basis.
    pub fn coordinates(&self, basis_index: &BTreeMap<ParenString, usize>, len: usize) -> Option<Vec<Polynomial>> {
        let mut v = vec![Polynomial::zero(&self.ring); len];
        for (key, (_, c)) in &self.terms {
            v[*basis_index.get(key)?] = c.clone();
        }
        Some(v)
    }

    pub fn render(&self, style: Style) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let body = m.render(style);
            let coeff = c.to_string();
            let (neg, coeff) = match coeff.strip_prefix('-') {
                Some(rest) if c.len() == 1 => (true, rest.to_string()),
                _ => (false, coeff),
            };
            let sep = match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            out.push_str(sep);
            if coeff == "1" {
                out.push_str(&body);
            } else if c.len() > 1 {
                out.push_str(&format!("({coeff}) {body}"));
            } else {
                out.push_str(&format!("{coeff} {body}"));
            }
        }
        out
    }
}

/// One consequence of an identity, with the index of the earlier equal
/// consequence when it is redundant.
#[derive(Debug, Clone)]
pub struct Consequence {
    pub spec: ConsequenceSpec,
    pub value: OperatorPolynomial,
    pub duplicate_of: Option<usize>,
}

/// All consequences of `r` one degree and one multiplicity up, in the frozen
/// listing order, each marked with the first earlier consequence it equals.
pub fn consequences(r: &OperatorPolynomial) -> Result<Vec<Consequence>, ComposeError> {
    let p = match r.shape() {
        Some((p, _)) => p,
        None => return Ok(Vec::new()),
    };
    let mut out: Vec<Consequence> = Vec::new();
    for spec in consequence_specs(p) {
        let value = r.apply_spec(&spec)?;
        let duplicate_of = out
            .iter()
            .position(|c| c.duplicate_of.is_none() && c.value == value);
        out.push(Consequence { spec, value, duplicate_of });
    }
    Ok(out)
}
