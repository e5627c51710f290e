//! WebAssembly bindings behind the static demo page in `www/`.
//!
//! Every export takes plain numbers or strings and returns a JSON string, so
//! the page needs no generated type glue beyond `wasm-bindgen`'s loader.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use opident::classify::{identity_name, identity_render, published_max_rank};
use opident::conmatrix::build_consequence_matrix;
use opident::linalg::rank_rational;
use opident::monomial::{dimension, enumerate_monomials, Style};
use opident::poly::{parse_rational, Polynomial, Rational};

/// Largest `p + q` the page will build a matrix for; beyond this the
/// consequence matrix gets too large to be pleasant in a browser tab.
pub const MAX_WEIGHT: usize = 5;

#[derive(Serialize)]
pub struct MonomialView {
    pub index: usize,
    pub paren: String,
    pub star: String,
    pub letters: String,
    pub pretty: String,
}

#[derive(Serialize)]
pub struct RankView {
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub max_rank: Option<usize>,
    pub identity: String,
    pub name: Option<String>,
}

#[derive(Serialize)]
pub struct MatrixView {
    pub rows: usize,
    pub cols: usize,
    /// Column headers: the basis of the next degree and multiplicity.
    pub columns: Vec<String>,
    /// Row headers: the consequence each row comes from.
    pub labels: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

fn check_shape(p: usize, q: usize) -> Result<(), String> {
    if p == 0 {
        return Err("degree must be at least 1".into());
    }
    if p + q > MAX_WEIGHT {
        return Err(format!("degree plus multiplicity is capped at {MAX_WEIGHT} in the browser"));
    }
    Ok(())
}

/// Basis monomials of degree `p` and multiplicity `q`.
pub fn monomials(p: usize, q: usize) -> Result<Vec<MonomialView>, String> {
    if p == 0 || p + q > 8 {
        return Err("degree must be positive and degree plus multiplicity at most 8".into());
    }
    let ms = enumerate_monomials(p, q).map_err(|e| e.to_string())?;
    Ok(ms
        .iter()
        .enumerate()
        .map(|(i, m)| MonomialView {
            index: i + 1,
            paren: m.to_paren().to_string(),
            star: m.render(Style::Star),
            letters: m.render(Style::Letters),
            pretty: m.render(Style::Pretty),
        })
        .collect())
}

/// Parses coefficients separated by commas or whitespace.
pub fn parse_point(text: &str) -> Result<Vec<Rational>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| parse_rational(s).ok_or_else(|| format!("not a rational number: {s}")))
        .collect()
}

/// Exact rank of the consequence matrix with the coefficients substituted.
pub fn rank_view(p: usize, q: usize, coeffs: &str) -> Result<RankView, String> {
    check_shape(p, q)?;
    let point = parse_point(coeffs)?;
    let n = dimension(p, q);
    if point.len() != n {
        return Err(format!("expected {n} coefficients, got {}", point.len()));
    }
    let cm = build_consequence_matrix(p, q).map_err(|e| e.to_string())?;
    let polys: Vec<Polynomial> = point.iter().map(|v| Polynomial::constant(&cm.ring, v.clone())).collect();
    Ok(RankView {
        rank: rank_rational(&cm.matrix.evaluate(&point)),
        rows: cm.matrix.rows(),
        cols: cm.matrix.cols(),
        max_rank: published_max_rank(p, q),
        identity: identity_render(&cm.basis, &polys),
        name: identity_name(p, q, &cm.ring, &polys).map(String::from),
    })
}

/// The consequence matrix, symbolic when `coeffs` is empty.
pub fn matrix_view(p: usize, q: usize, coeffs: &str) -> Result<MatrixView, String> {
    check_shape(p, q)?;
    let cm = build_consequence_matrix(p, q).map_err(|e| e.to_string())?;
    let point = parse_point(coeffs)?;
    let entries: Vec<Vec<String>> = if point.is_empty() {
        (0..cm.matrix.rows()).map(|i| cm.matrix.row(i).iter().map(|e| e.to_string()).collect()).collect()
    } else if point.len() == cm.basis.len() {
        cm.matrix.evaluate(&point).iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
    } else {
        return Err(format!("expected {} coefficients, got {}", cm.basis.len(), point.len()));
    };
    Ok(MatrixView {
        rows: cm.matrix.rows(),
        cols: cm.matrix.cols(),
        columns: cm.col_labels.iter().map(|m| m.render(Style::Pretty)).collect(),
        labels: cm.row_labels.iter().map(|s| s.label()).collect(),
        entries,
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    r.map(|v| serde_json::to_string(&v).expect("serialisable")).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn enumerate(p: usize, q: usize) -> Result<String, JsError> {
    to_js(monomials(p, q))
}

#[wasm_bindgen(js_name = rankAt)]
pub fn rank_at(p: usize, q: usize, coeffs: &str) -> Result<String, JsError> {
    to_js(rank_view(p, q, coeffs))
}

#[wasm_bindgen]
pub fn matrix(p: usize, q: usize, coeffs: &str) -> Result<String, JsError> {
    to_js(matrix_view(p, q, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_monomials_at_degree_two_multiplicity_two() {
        let ms = monomials(2, 2).unwrap();
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[4].letters, "L(x)L(y)");
    }

    #[test]
    fn rota_baxter_rank() {
        let r = rank_view(2, 2, "0, 1, 0, 1, -1, 0").unwrap();
        assert_eq!((r.rank, r.rows, r.cols), (19, 20, 50));
        assert_eq!(r.name.as_deref(), Some("Rota-Baxter"));
        assert_eq!(r.identity, "L(L(x)y) + L(xL(y)) = L(x)L(y)");
    }

    #[test]
    fn matrix_symbolic_and_numeric() {
        let m = matrix_view(2, 1, "").unwrap();
        assert_eq!((m.rows, m.cols, m.columns.len(), m.labels.len()), (20, 20, 20, 20));
        let n = matrix_view(2, 1, "1 -1 -1").unwrap();
        assert!(n.entries.iter().flatten().all(|e| parse_rational(e).is_some()));
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(rank_view(2, 2, "1 2").is_err());
        assert!(rank_view(2, 2, "1 x 0 0 0 0").is_err());
        assert!(matrix_view(4, 4, "").is_err());
    }
}
