use opident::conmatrix::build_consequence_matrix;
use opident::golden;
use opident::linalg::{partial_smith_form, PolyMatrix};
use opident::monomial::{dimension, enumerate_monomials, enumerate_parens, narayana};
use opident::classify::case_specs;

/// Every balanced string on `p + q` pairs with exactly `p` occurrences of `()`.
fn brute_force(p: usize, q: usize) -> Vec<String> {
    let n = p + q;
    let mut out = Vec::new();
    for bits in 0u32..(1 << (2 * n)) {
        if bits.count_ones() as usize != n {
            continue;
        }
        let s: String = (0..2 * n).rev().map(|i| if bits >> i & 1 == 1 { '(' } else { ')' }).collect();
        let mut depth = 0i32;
        if s.chars().all(|c| {
            depth += if c == '(' { 1 } else { -1 };
            depth >= 0
        }) && s.matches("()").count() == p
        {
            out.push(s);
        }
    }
    out.sort();
    out
}

fn sorted_rows(m: &PolyMatrix) -> Vec<Vec<String>> {
    let mut rows: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|e| e.to_string()).collect()).collect();
    rows.sort();
    rows
}

#[test]
fn enumeration_counts_match_narayana_and_brute_force() {
    for p in 1..=5 {
        for q in 0..=4 {
            let codes: Vec<String> = enumerate_parens(p, q).unwrap().iter().map(|c| c.as_str().to_string()).collect();
            let n = narayana((p + q) as i64, p as i64).unwrap();
            assert_eq!(codes.len().to_string(), n.to_string(), "({p},{q})");
            assert_eq!(dimension(p, q), codes.len());
            let mut sorted = codes.clone();
            sorted.sort();
            assert_eq!(sorted, brute_force(p, q), "({p},{q})");
            // Enumeration is already in lexicographic order.
            assert_eq!(sorted, codes);
        }
    }
}

#[test]
fn monomial_tables_reproduce_exactly() {
    let rows = golden::monomial_rows(golden::P2Q123);
    assert_eq!(rows.len(), 19);
    for q in 1..=3 {
        let ours = enumerate_monomials(2, q).unwrap();
        let theirs: Vec<_> = rows.iter().filter(|r| r.group == Some(q)).collect();
        assert_eq!(ours.len(), theirs.len());
        for (m, r) in ours.iter().zip(&theirs) {
            assert_eq!(m.to_paren().as_str(), r.code);
        }
    }
    for (table, q, n) in [(golden::BASIS32, 2, 20), (golden::BASIS33, 3, 50)] {
        let rows = golden::monomial_rows(table);
        let ours = enumerate_monomials(3, q).unwrap();
        assert_eq!((rows.len(), ours.len()), (n, n));
        for (m, r) in ours.iter().zip(&rows) {
            assert_eq!(m.to_paren().as_str(), r.code, "row {}", r.index);
        }
    }
}

#[test]
fn consequence_matrices_match_up_to_row_order() {
    let cm = build_consequence_matrix(2, 1).unwrap();
    let published = golden::matrix(golden::CONMAT21, &cm.ring).unwrap();
    assert_eq!((cm.matrix.rows(), cm.matrix.cols()), (20, 20));
    assert_eq!(sorted_rows(&cm.matrix), sorted_rows(&published));

    let cm = build_consequence_matrix(2, 2).unwrap();
    let published = golden::matrix(golden::CONMAT22, &cm.ring).unwrap().transpose();
    assert_eq!((cm.matrix.rows(), cm.matrix.cols()), (20, 50));
    assert_eq!(sorted_rows(&cm.matrix), sorted_rows(&published));
}

#[test]
fn residual_blocks_match_published() {
    let cm = build_consequence_matrix(2, 2).unwrap();
    let specs = case_specs(&cm.ring);
    for (case, table) in [(0, golden::CASE1_MATRIX_B), (2, golden::CASE3_MATRIX_B)] {
        let psf = partial_smith_form(&cm.specialize(&specs[case].assignment(&cm.ring).unwrap()));
        let rows = psf.lower_right.nonzero_rows();
        let cols: Vec<usize> = (0..psf.lower_right.cols()).collect();
        let ours = psf.lower_right.submatrix(&rows, &cols).transpose();
        let theirs = golden::matrix(table, &cm.ring).unwrap();
        let nonzero = |m: &PolyMatrix| {
            let keep = m.nonzero_rows();
            sorted_rows(&m.submatrix(&keep, &(0..m.cols()).collect::<Vec<_>>()))
        };
        assert_eq!(ours.cols(), theirs.cols(), "case {}", case + 1);
        assert_eq!(nonzero(&ours), nonzero(&theirs), "case {}", case + 1);
    }
}
