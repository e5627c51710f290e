//! Tables transcribed from the source publication, embedded at build time.
//! Each file starts with `#` provenance lines; see `golden/` for the text.

use std::sync::Arc;

use crate::linalg::{LinalgError, PolyMatrix};
use crate::poly::{parse, PolyError, Polynomial, Ring};

pub const P2Q123: &str = include_str!("../golden/p2q123.txt");
pub const BASIS32: &str = include_str!("../golden/basis32.txt");
pub const BASIS33: &str = include_str!("../golden/basis33.txt");
pub const CONMAT21: &str = include_str!("../golden/conmat21.txt");
pub const CONMAT22: &str = include_str!("../golden/conmat22.txt");
pub const CASE1_MATRIX_B: &str = include_str!("../golden/case1matrixB.txt");
pub const CASE3_MATRIX_B: &str = include_str!("../golden/case3matrixB.txt");
pub const CASE1_IDEAL1: &str = include_str!("../golden/case1ideal1.txt");
pub const CASE2_IDEAL: &str = include_str!("../golden/case2ideal.txt");
pub const CASE3_BASES: &str = include_str!("../golden/case3bases.txt");
pub const CASE4_IDEAL: &str = include_str!("../golden/case4ideal.txt");
pub const GB93: &str = include_str!("../golden/gb93.txt");
pub const SOLUTIONS: &str = include_str!("../golden/solutions.txt");
pub const THEOREM21: &str = include_str!("../golden/theorem21.txt");
pub const THEOREM22: &str = include_str!("../golden/theorem22.txt");

/// Every embedded file with its name, for linting.
pub const ALL: [(&str, &str); 15] = [
    ("p2q123", P2Q123),
    ("basis32", BASIS32),
    ("basis33", BASIS33),
    ("conmat21", CONMAT21),
    ("conmat22", CONMAT22),
    ("case1matrixB", CASE1_MATRIX_B),
    ("case3matrixB", CASE3_MATRIX_B),
    ("case1ideal1", CASE1_IDEAL1),
    ("case2ideal", CASE2_IDEAL),
    ("case3bases", CASE3_BASES),
    ("case4ideal", CASE4_IDEAL),
    ("gb93", GB93),
    ("solutions", SOLUTIONS),
    ("theorem21", THEOREM21),
    ("theorem22", THEOREM22),
];

/// Leading `#` lines.
pub fn header(text: &str) -> Vec<&str> {
    text.lines().take_while(|l| l.starts_with('#')).collect()
}

/// Non-comment, non-blank lines.
pub fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// `[name]` sections in file order.
pub fn sections(text: &str) -> Vec<(String, Vec<String>)> {
    let mut out: Vec<(String, Vec<String>)> = Vec::new();
    for l in data_lines(text) {
        if let Some(name) = l.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            out.push((name.to_string(), Vec::new()));
        } else if let Some(last) = out.last_mut() {
            last.1.push(l.to_string());
        }
    }
    out
}

pub fn section<'a>(secs: &'a [(String, Vec<String>)], name: &str) -> Option<&'a [String]> {
    secs.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
}

/// One row of a monomial table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialRow {
    /// Multiplicity, when the table groups by it.
    pub group: Option<usize>,
    pub index: usize,
    pub code: String,
    pub text: String,
}

pub fn monomial_rows(text: &str) -> Vec<MonomialRow> {
    data_lines(text)
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            match f.len() {
                4 => MonomialRow {
                    group: f[0].parse().ok(),
                    index: f[1].parse().expect("index"),
                    code: f[2].into(),
                    text: f[3].into(),
                },
                _ => MonomialRow { group: None, index: f[0].parse().expect("index"), code: f[1].into(), text: f[2].into() },
            }
        })
        .collect()
}

pub fn matrix(text: &str, ring: &Arc<Ring>) -> Result<PolyMatrix, LinalgError> {
    let rows: Vec<Vec<&str>> = data_lines(text).map(|l| l.split_whitespace().collect()).collect();
    PolyMatrix::parse_rows(ring, &rows)
}

pub fn polys<S: AsRef<str>>(lines: &[S], ring: &Arc<Ring>) -> Result<Vec<Polynomial>, PolyError> {
    lines.iter().map(|l| parse(ring, l.as_ref())).collect()
}

pub fn poly_file(text: &str, ring: &Arc<Ring>) -> Result<Vec<Polynomial>, PolyError> {
    data_lines(text).map(|l| parse(ring, l)).collect()
}

/// A published classification entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublishedEntry {
    pub rank: usize,
    /// Coefficient texts in basis order; a symbolic entry names a free parameter.
    pub coefficients: Vec<String>,
    pub identity: String,
    pub name: Option<String>,
    /// `(parameter, value)` excluded from a family.
    pub excluded: Option<(String, String)>,
}

pub fn classification(text: &str) -> Vec<PublishedEntry> {
    data_lines(text)
        .map(|l| {
            let f: Vec<&str> = l.split('|').map(str::trim).collect();
            let nonempty = |i: usize| f.get(i).filter(|s| !s.is_empty()).map(|s| s.to_string());
            PublishedEntry {
                rank: f[0].parse().expect("rank"),
                coefficients: f[1].split_whitespace().map(String::from).collect(),
                identity: f[2].to_string(),
                name: nonempty(3),
                excluded: nonempty(4).map(|s| {
                    let (a, b) = s.split_once('=').expect("param=value");
                    (a.trim().to_string(), b.trim().to_string())
                }),
            }
        })
        .collect()
}

/// Outcome of re-parsing one embedded file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LintResult {
    pub name: &'static str,
    /// Data items read (rows, polynomials or entries).
    pub items: usize,
    pub errors: Vec<String>,
}

impl LintResult {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Re-parses every embedded file: provenance header, monomial codes against
/// their rendered text, matrices, polynomials, solution rows and
/// classification entries against their printed identities.
pub fn lint() -> Vec<LintResult> {
    use crate::monomial::{OperatorMonomial, ParenString};

    let ring = Ring::letters(6);
    ALL.iter()
        .map(|&(name, text)| {
            let mut errors = Vec::new();
            let head = header(text);
            if !head.first().is_some_and(|l| l.starts_with("# source:")) || head.len() < 2 {
                errors.push("missing provenance header".to_string());
            }
            let mut items = 0;
            match name {
                "p2q123" | "basis32" | "basis33" => {
                    for row in monomial_rows(text) {
                        items += 1;
                        let from_code = ParenString::parse(&row.code).map(|c| OperatorMonomial::from_paren(&c));
                        let from_text = OperatorMonomial::parse_text(&row.text);
                        match (from_code, from_text) {
                            (Ok(a), Some(b)) if a == b => {}
                            _ => errors.push(format!("row {}: code {} does not match {}", row.index, row.code, row.text)),
                        }
                    }
                }
                "conmat21" | "conmat22" | "case1matrixB" | "case3matrixB" => match matrix(text, &ring) {
                    Ok(m) => items = m.rows(),
                    Err(e) => errors.push(e.to_string()),
                },
                "solutions" => {
                    for (sec, rows) in sections(text) {
                        for r in rows {
                            items += 1;
                            let cells: Vec<&str> = r.split_whitespace().collect();
                            if cells.len() != 6 || cells.iter().any(|c| parse(&ring, c).is_err()) {
                                errors.push(format!("[{sec}] bad row {r:?}"));
                            }
                        }
                    }
                }
                "theorem21" | "theorem22" => {
                    let (p, q) = if name == "theorem21" { (2, 1) } else { (2, 2) };
                    match crate::conmatrix::generic_identity(p, q) {
                        Ok((r, basis, _)) => {
                            for e in classification(text) {
                                items += 1;
                                let coeffs: Result<Vec<Polynomial>, _> = e.coefficients.iter().map(|c| parse(&r, c)).collect();
                                let parsed = crate::classify::parse_identity(&e.identity, &basis, &r);
                                match (coeffs, parsed) {
                                    (Ok(c), Some(i)) if c == i => {}
                                    _ => errors.push(format!("entry {:?} does not match its coefficients", e.identity)),
                                }
                            }
                        }
                        Err(e) => errors.push(e.to_string()),
                    }
                }
                _ => {
                    let secs = sections(text);
                    let lines: Vec<String> = if secs.is_empty() {
                        data_lines(text).map(String::from).collect()
                    } else {
                        secs.into_iter().flat_map(|(_, v)| v).collect()
                    };
                    for l in lines {
                        items += 1;
                        match parse(&ring, &l) {
                            Ok(p) if !p.is_zero() => {}
                            _ => errors.push(format!("bad polynomial {l:?}")),
                        }
                    }
                }
            }
            LintResult { name, items, errors }
        })
        .collect()
}
