//! Operator monomials of degree `p` (arguments) and multiplicity `q`
//! (applications of `L`), their balanced-parenthesis codes, and the
//! lexicographic order the codes induce.
//!
//! The codec: every nesting `()` is an argument, every other matched pair is
//! an application of `L` to whatever it encloses, and juxtaposition is the
//! associative product. So `(((())()())())()` is `L(L(L(*)**)*)*`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonomialError {
    #[error("narayana({0}, {1}) needs i >= j >= 1")]
    NarayanaDomain(i64, i64),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("unbalanced parenthesis string {0:?}")]
    Unbalanced(String),
    #[error("invalid character {0:?} in parenthesis string")]
    BadSymbol(char),
}

/// Node of the flattened operator tree. A `Product` has at least two children
/// and none of them is itself a `Product`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Arg,
    Op(Box<Node>),
    Product(Vec<Node>),
}

impl Node {
    pub fn op(inner: Node) -> Node {
        Node::Op(Box::new(inner))
    }

    /// Juxtaposes factors, flattening nested products.
    pub fn product(factors: Vec<Node>) -> Node {
        let mut flat = Vec::with_capacity(factors.len());
        for f in factors {
            match f {
                Node::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => panic!("empty product"),
            1 => flat.pop().unwrap(),
            _ => Node::Product(flat),
        }
    }

    /// Left-right reflection: products reversed at every level.
    pub fn mirrored(&self) -> Node {
        match self {
            Node::Arg => Node::Arg,
            Node::Op(c) => Node::op(c.mirrored()),
            Node::Product(fs) => Node::Product(fs.iter().rev().map(Node::mirrored).collect()),
        }
    }

    fn counts(&self) -> (usize, usize) {
        match self {
            Node::Arg => (1, 0),
            Node::Op(c) => {
                let (p, q) = c.counts();
                (p, q + 1)
            }
            Node::Product(cs) => cs.iter().fold((0, 0), |(p, q), c| {
                let (a, b) = c.counts();
                (p + a, q + b)
            }),
        }
    }

    fn write_parens(&self, out: &mut String) {
        match self {
            Node::Arg => out.push_str("()"),
            Node::Op(c) => {
                out.push('(');
                c.write_parens(out);
                out.push(')');
            }
            Node::Product(cs) => cs.iter().for_each(|c| c.write_parens(out)),
        }
    }

    fn is_flat(&self) -> bool {
        match self {
            Node::Arg => true,
            Node::Op(c) => c.is_flat(),
            Node::Product(cs) => {
                cs.len() >= 2 && cs.iter().all(|c| !matches!(c, Node::Product(_)) && c.is_flat())
            }
        }
    }
}

/// Balanced string over `(` and `)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParenString(String);

impl ParenString {
    pub fn parse(s: &str) -> Result<Self, MonomialError> {
        let mut depth: i64 = 0;
        for ch in s.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                other => return Err(MonomialError::BadSymbol(other)),
            }
            if depth < 0 {
                return Err(MonomialError::Unbalanced(s.to_string()));
            }
        }
        if depth != 0 || s.is_empty() {
            return Err(MonomialError::Unbalanced(s.to_string()));
        }
        Ok(ParenString(s.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Number of adjacent `()` pairs.
    pub fn nestings(&self) -> usize {
        self.0.as_bytes().windows(2).filter(|w| w == b"()").count()
    }

    /// The word over `a`/`b` used for ordering.
    pub fn letter_word(&self) -> String {
        self.0.chars().map(|c| if c == '(' { 'a' } else { 'b' }).collect()
    }
}

impl fmt::Display for ParenString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Rendering style for operator monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// `*` placeholders, powers of `L` spelled out: `L(L(**))`.
    Star,
    /// Letter arguments, powers collapsed: `L2(xy)`.
    Letters,
    /// Letter arguments with superscript powers: `L²(xy)`.
    Pretty,
}

/// A product of `degree` arguments (in identity order) interleaved with
/// `multiplicity` applications of `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorMonomial {
    root: Node,
    degree: usize,
    multiplicity: usize,
}

impl OperatorMonomial {
    pub fn from_node(root: Node) -> Self {
        debug_assert!(root.is_flat(), "unflattened tree {root:?}");
        let (degree, multiplicity) = root.counts();
        OperatorMonomial { root, degree, multiplicity }
    }

    /// The single argument `*`.
    pub fn arg() -> Self {
        Self::from_node(Node::Arg)
    }

    /// The reflected monomial, e.g. `L(L(x)y)` becomes `L(xL(y))`.
    pub fn mirror(&self) -> Self {
        Self::from_node(self.root.mirrored())
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn to_paren(&self) -> ParenString {
        let mut s = String::with_capacity(2 * (self.degree + self.multiplicity));
        self.root.write_parens(&mut s);
        ParenString(s)
    }

    pub fn from_paren(s: &ParenString) -> Self {
        let bytes = s.0.as_bytes();
        let mut pos = 0;
        let items = parse_sequence(bytes, &mut pos);
        debug_assert_eq!(pos, bytes.len());
        Self::from_node(Node::product(items))
    }

    /// Parses rendered text such as `L(L(*)**)`, `L2(xy)` or `xL²(y)`.
    pub fn parse_text(text: &str) -> Option<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let node = parse_text_seq(&chars, &mut pos)?;
        (pos == chars.len()).then(|| Self::from_node(node))
    }

    pub fn render(&self, style: Style) -> String {
        let names = argument_names(self.degree);
        let mut next = 0;
        let mut out = String::new();
        render_node(&self.root, style, &names, &mut next, &mut out);
        out
    }

    /// Letters without collapsing powers: `L(L(xy))`.
    pub fn render_letters_expanded(&self) -> String {
        self.render(Style::Star)
            .chars()
            .scan(argument_names(self.degree).into_iter(), |names, c| {
                Some(if c == '*' { names.next().unwrap() } else { c.to_string() })
            })
            .collect()
    }
}

impl PartialOrd for OperatorMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dictionary order on the `a`/`b` words of the parenthesis codes; `(` sorts
/// before `)` in ASCII as well, so comparing the codes directly is equivalent.
impl Ord for OperatorMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_paren().cmp(&other.to_paren())
    }
}

impl fmt::Display for OperatorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Star))
    }
}

fn parse_sequence(bytes: &[u8], pos: &mut usize) -> Vec<Node> {
    let mut items = Vec::new();
    while *pos < bytes.len() && bytes[*pos] == b'(' {
        *pos += 1;
        let inner = parse_sequence(bytes, pos);
        *pos += 1; // ')'
        if inner.is_empty() {
            items.push(Node::Arg);
        } else {
            items.push(Node::op(Node::product(inner)));
        }
    }
    items
}

fn parse_text_seq(chars: &[char], pos: &mut usize) -> Option<Node> {
    let mut items = Vec::new();
    while *pos < chars.len() && chars[*pos] != ')' {
        let c = chars[*pos];
        if c == 'L' {
            *pos += 1;
            let mut power = String::new();
            while *pos < chars.len() && chars[*pos] != '(' {
                power.push(superscript_to_digit(chars[*pos])?);
                *pos += 1;
            }
            let k: usize = if power.is_empty() { 1 } else { power.parse().ok()? };
            if *pos >= chars.len() || chars[*pos] != '(' || k == 0 {
                return None;
            }
            *pos += 1;
            let mut inner = parse_text_seq(chars, pos)?;
            if chars.get(*pos) != Some(&')') {
                return None;
            }
            *pos += 1;
            for _ in 0..k {
                inner = Node::op(inner);
            }
            items.push(inner);
        } else if c == '*' || c.is_ascii_lowercase() {
            *pos += 1;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            items.push(Node::Arg);
        } else {
            return None;
        }
    }
    if items.is_empty() {
        None
    } else {
        Some(Node::product(items))
    }
}

fn superscript_to_digit(c: char) -> Option<char> {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if c.is_ascii_digit() {
        return Some(c);
    }
    SUP.iter().position(|&s| s == c).map(|d| (b'0' + d as u8) as char)
}

fn superscript(n: usize) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| SUP[(b - b'0') as usize])
        .collect()
}

/// Argument names for `degree` arguments: `x y z` from the left up to three,
/// then the last `degree` of `v w x y z`, then `x1 ... xp`.
pub fn argument_names(degree: usize) -> Vec<String> {
    const LETTERS: [&str; 5] = ["v", "w", "x", "y", "z"];
    if degree <= 3 {
        LETTERS[2..2 + degree].iter().map(|s| s.to_string()).collect()
    } else if degree <= LETTERS.len() {
        LETTERS[LETTERS.len() - degree..].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=degree).map(|i| format!("x{i}")).collect()
    }
}

fn render_node(node: &Node, style: Style, names: &[String], next: &mut usize, out: &mut String) {
    match node {
        Node::Arg => {
            if style == Style::Star {
                out.push('*');
            } else {
                out.push_str(&names[*next]);
            }
            *next += 1;
        }
        Node::Op(inner) => {
            let mut power = 1;
            let mut body: &Node = inner;
            if style != Style::Star {
                while let Node::Op(deeper) = body {
                    power += 1;
                    body = deeper;
                }
            }
            out.push('L');
            if power > 1 {
                match style {
                    Style::Pretty => out.push_str(&superscript(power)),
                    _ => out.push_str(&power.to_string()),
                }
            }
            out.push('(');
            render_node(body, style, names, next, out);
            out.push(')');
        }
        Node::Product(cs) => {
            for c in cs {
                render_node(c, style, names, next, out);
            }
        }
    }
}

/// `N(i, j) = (1/i) C(i, j) C(i, j-1)`, exactly.
pub fn narayana(i: i64, j: i64) -> Result<BigUint, MonomialError> {
    if i < 1 || j < 1 || j > i {
        return Err(MonomialError::NarayanaDomain(i, j));
    }
    let (i, j) = (i as u64, j as u64);
    Ok(binomial(i, j) * binomial(i, j - 1) / BigUint::from(i))
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    acc
}

/// Dimension of the space of operator polynomials of degree `p`, multiplicity `q`.
pub fn dimension(p: usize, q: usize) -> usize {
    narayana((p + q) as i64, p as i64)
        .expect("p >= 1")
        .to_usize()
        .expect("dimension fits in usize")
}

/// All balanced strings of length `2(p+q)` with exactly `p` nestings, in
/// dictionary order.
pub fn enumerate_parens(p: usize, q: usize) -> Result<Vec<ParenString>, MonomialError> {
    if p < 1 {
        return Err(MonomialError::ZeroDegree);
    }
    let n = p + q;
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(2 * n);
    fn go(n: usize, p: usize, open: usize, close: usize, nest: usize, buf: &mut Vec<u8>, out: &mut Vec<ParenString>) {
        if open == n && close == n {
            if nest == p {
                out.push(ParenString(String::from_utf8(buf.clone()).unwrap()));
            }
            return;
        }
        if open < n {
            buf.push(b'(');
            go(n, p, open + 1, close, nest, buf, out);
            buf.pop();
        }
        if close < open {
            let adds = buf.last() == Some(&b'(');
            let nest2 = nest + adds as usize;
            // Each remaining '(' can still create at most one nesting.
            if nest2 <= p && nest2 + (n - open) >= p {
                buf.push(b')');
                go(n, p, open, close + 1, nest2, buf, out);
                buf.pop();
            }
        }
    }
    go(n, p, 0, 0, 0, &mut buf, &mut out);
    Ok(out)
}

/// The basis of operator monomials of degree `p` and multiplicity `q`, in
/// lexicographic order.
pub fn enumerate_monomials(p: usize, q: usize) -> Result<Vec<OperatorMonomial>, MonomialError> {
    Ok(enumerate_parens(p, q)?
        .iter()
        .map(OperatorMonomial::from_paren)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> OperatorMonomial {
        OperatorMonomial::parse_text(s).unwrap()
    }

    #[test]
    fn narayana_values() {
        let n = |i, j| narayana(i, j).unwrap().to_u64().unwrap();
        assert_eq!(n(3, 2), 3);
        assert_eq!(n(4, 2), 6);
        assert_eq!(n(1, 1), 1);
        assert_eq!(n(6, 3), 50);
        assert!(narayana(0, 1).is_err());
        assert!(narayana(3, 0).is_err());
        assert!(narayana(2, 3).is_err());
        // Stays exact far beyond 64 bits.
        assert_eq!(
            narayana(60, 30).unwrap().to_string(),
            (binomial(60, 30) * binomial(60, 29) / BigUint::from(60u32)).to_string()
        );
    }

    #[test]
    fn degree_two_multiplicity_one_in_order() {
        let ms = enumerate_monomials(2, 1).unwrap();
        let stars: Vec<String> = ms.iter().map(|m| m.render(Style::Star)).collect();
        assert_eq!(stars, ["L(**)", "L(*)*", "*L(*)"]);
        let parens: Vec<String> = ms.iter().map(|m| m.to_paren().to_string()).collect();
        assert_eq!(parens, ["(()())", "(())()", "()(())"]);
    }

    #[test]
    fn single_argument() {
        let ms = enumerate_monomials(1, 0).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].render(Style::Star), "*");
        assert_eq!(ms[0].render(Style::Letters), "x");
        assert!(enumerate_monomials(0, 3).is_err());
    }

    #[test]
    fn worked_bijection_example() {
        let s = ParenString::parse("(((())()())())()").unwrap();
        let mono = OperatorMonomial::from_paren(&s);
        assert_eq!(mono.render(Style::Star), "L(L(L(*)**)*)*");
        assert_eq!(mono.render_letters_expanded(), "L(L(L(v)wx)y)z");
        assert_eq!(mono.degree(), s.nestings());
        assert_eq!(mono.to_paren(), s);
        assert_eq!(
            OperatorMonomial::from_paren(&ParenString::parse("(()())").unwrap()).render(Style::Star),
            "L(**)"
        );
    }

    #[test]
    fn rendering_styles() {
        let lxy = OperatorMonomial::from_node(Node::op(Node::product(vec![Node::Arg, Node::Arg])));
        assert_eq!(lxy.render(Style::Star), "L(**)");
        assert_eq!(lxy.render(Style::Letters), "L(xy)");
        let l2xy = OperatorMonomial::from_node(Node::op(lxy.root().clone()));
        assert_eq!(l2xy.render(Style::Letters), "L2(xy)");
        assert_eq!(l2xy.render(Style::Pretty), "L²(xy)");
        assert_eq!(l2xy.render(Style::Star), "L(L(**))");
        assert_eq!(OperatorMonomial::arg().render(Style::Letters), "x");
        assert_eq!(m("L(L(L(*)))*").render(Style::Letters), "L3(x)y");
        assert_eq!(m("L(L(L(*)*))").render(Style::Letters), "L2(L(x)y)");
        let big = m("******");
        assert_eq!(big.render(Style::Letters), "x1x2x3x4x5x6");
    }

    #[test]
    fn parse_text_forms_agree() {
        assert_eq!(m("L2(xy)"), m("L(L(**))"));
        assert_eq!(m("xL²(y)"), m("*L(L(*))"));
        assert!(OperatorMonomial::parse_text("L(").is_none());
        assert!(OperatorMonomial::parse_text("L()").is_none());
    }

    #[test]
    fn rejects_unbalanced() {
        assert!(ParenString::parse("(()").is_err());
        assert!(ParenString::parse(")(").is_err());
        assert!(ParenString::parse("(x)").is_err());
        assert!(ParenString::parse("").is_err());
    }
}
