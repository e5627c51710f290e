use std::sync::Arc;

use opident::golden;
use opident::ideals::*;
use opident::linalg::PolyMatrix;
use opident::poly::{parse, MonomialOrder, Polynomial, Ring, Tiebreak};

fn ring() -> Arc<Ring> {
    Ring::letters(6)
}

fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse(r, s).unwrap()
}

fn ideal_of(r: &Arc<Ring>, lines: &[String]) -> Ideal {
    Ideal::new(r, golden::polys(lines, r).unwrap()).unwrap()
}

fn entries_ideal(r: &Arc<Ring>, m: &PolyMatrix) -> Ideal {
    Ideal::new(r, m.entries().iter().cloned()).unwrap()
}

#[test]
fn case1_first_ideal_basis() {
    let r = ring();
    let m = golden::matrix(golden::CASE1_MATRIX_B, &r).unwrap();
    let ideal = entries_ideal(&r, &m);
    // 47 distinct signed entries; 43 once sign is normalised.
    assert_eq!(ideal.len(), 43);
    let gb = buchberger(&ideal, MonomialOrder::default());
    let expected = golden::poly_file(golden::CASE1_IDEAL1, &r).unwrap();
    assert!(same_monic_set(&r, &gb.basis, &expected).unwrap(), "{:?}", gb.basis);
    assert!(confluence_audit(&gb).is_empty());
}

#[test]
fn case2_basis_matches_and_fixes_tiebreak() {
    let r = ring();
    let secs = golden::sections(golden::CASE2_IDEAL);
    let ideal = ideal_of(&r, golden::section(&secs, "generators").unwrap());
    assert_eq!(ideal.len(), 22);
    let expected = golden::polys(golden::section(&secs, "basis").unwrap(), &r).unwrap();
    let gb = buchberger(&ideal, MonomialOrder::default());
    assert_eq!(gb.len(), 8);
    assert!(same_monic_set(&r, &gb.basis, &expected).unwrap(), "{:?}", gb.basis);
    // Under the other tiebreak the published set is not a reduced basis.
    let other = MonomialOrder::DegLex(Tiebreak::FirstVariableFirst);
    let gb2 = buchberger(&ideal, other);
    let r2 = r.with_order(other);
    assert!(!same_monic_set(&r2, &gb2.basis, &expected).unwrap());
}

#[test]
fn case4_basis() {
    let r = ring();
    let secs = golden::sections(golden::CASE4_IDEAL);
    let ideal = ideal_of(&r, golden::section(&secs, "generators").unwrap());
    // fe and -fe collapse.
    assert_eq!(ideal.len(), 4);
    let gb = buchberger(&ideal, MonomialOrder::default());
    let expected = golden::polys(golden::section(&secs, "basis").unwrap(), &r).unwrap();
    assert!(same_monic_set(&r, &gb.basis, &expected).unwrap(), "{:?}", gb.basis);
    assert!(ideal_membership(&p(&r, "f*e"), &gb));
    assert!(!ideal_membership(&p(&r, "f"), &gb));
}

#[test]
fn tie_break_does_not_change_basis() {
    let r = ring();
    let secs = golden::sections(golden::CASE2_IDEAL);
    let ideal = ideal_of(&r, golden::section(&secs, "generators").unwrap());
    let a = buchberger(&ideal, MonomialOrder::default());
    let opts = GbOptions { tie_break: PairTieBreak::Newest, ..Default::default() };
    let b = buchberger_with(&ideal, MonomialOrder::default(), &opts).unwrap();
    assert_eq!(a.basis, b.basis);
}

#[test]
fn reduce_examples() {
    let r = ring();
    assert!(reduce(&p(&r, "b^2+b"), &[p(&r, "b")]).is_zero());
    assert!(reduce(&p(&r, "b^3+b^2"), &[p(&r, "b^2+b")]).is_zero());
    let rem = reduce(&p(&r, "3*c^2 + 2*b"), &[p(&r, "2*c+1")]);
    let div = reduce_with_certificate(&p(&r, "3*c^2 + 2*b"), &[p(&r, "2*c+1")]).unwrap();
    assert_eq!(rem, div.remainder);
    assert!(div.verify());
}

#[test]
fn unit_ideal_membership() {
    let r = ring();
    let ideal = Ideal::new(&r, golden::poly_file(golden::CASE1_IDEAL1, &r).unwrap()).unwrap();
    let gb = buchberger(&ideal, MonomialOrder::default());
    assert!(!ideal_membership(&Polynomial::one(&r), &gb));
    assert!(!ideal_membership(&p(&r, "c^3 + c"), &gb));
    assert!(ideal_membership(&p(&r, "c^3 + c^2 + b*f"), &gb));
}

#[test]
fn radical_examples() {
    let r = ring();
    let secs = golden::sections(golden::CASE2_IDEAL);
    let ideal = ideal_of(&r, golden::section(&secs, "generators").unwrap());
    assert!(radical_membership(&p(&r, "f"), &ideal).unwrap());
    // c(c+1) is in the radical: c^2(c+1) is in the ideal.
    assert!(radical_membership(&p(&r, "c^2+c"), &ideal).unwrap());
    assert!(!radical_membership(&p(&r, "a"), &ideal).unwrap());
    assert!(!radical_membership(&p(&r, "c"), &ideal).unwrap());
}

#[test]
fn zero_set_of_first_ideal() {
    let r = ring();
    let ideal = Ideal::new(&r, golden::poly_file(golden::CASE1_IDEAL1, &r).unwrap()).unwrap();
    let secs = golden::sections(golden::SOLUTIONS);
    let claim = ZeroSetClaim::from_rows(&r, golden::section(&secs, "case1-ideal1").unwrap()).unwrap();
    assert_eq!(claim.points.len(), 4);
    assert!(verify_zero_set(&ideal, &claim).all_passed());
    let bad = ZeroSetClaim::from_rows(&r, &["1 0 -1 0 0 -2"]).unwrap();
    let rep = verify_zero_set(&ideal, &bad);
    assert!(!rep.all_passed());
}

#[test]
fn symbolic_row_passes_as_identity() {
    let r = ring();
    // d(d+f+1) and f(d+f+1) vanish on (1,0,0,d,0,-d-1) for every d.
    let ideal = Ideal::new(&r, vec![p(&r, "d*(d+f+1)"), p(&r, "f*(d+f+1)"), p(&r, "b"), p(&r, "a-1")]).unwrap();
    let claim = ZeroSetClaim::from_rows(&r, &["1 0 0 d 0 -d-1"]).unwrap();
    assert!(verify_zero_set(&ideal, &claim).all_passed());
    let claim = ZeroSetClaim::from_rows(&r, &["1 0 0 d 0 -d"]).unwrap();
    assert!(!verify_zero_set(&ideal, &claim).all_passed());
}
