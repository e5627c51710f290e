use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use opident::classify::{case_specs, rank_at_point};
use opident::conmatrix::build_consequence_matrix;
use opident::ideals::{buchberger, confluence_audit, reduce_with_certificate, Ideal};
use opident::linalg::{partial_smith_form, rank_rational};
use opident::monomial::{enumerate_monomials, OperatorMonomial, ParenString, Style};
use opident::poly::{parse, Monomial, MonomialOrder, Polynomial, Rational, Ring, Tiebreak};

fn ring() -> Arc<Ring> {
    Ring::letters(6)
}

fn poly_strategy(max_terms: usize, max_exp: u16) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 6), -6i64..=6), 1..=max_terms).prop_map(|terms| {
        let r = ring();
        Polynomial::from_terms(
            &r,
            terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), Rational::from_integer(c.into()))),
        )
    })
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=7).into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leading_term_is_multiplicative(f in poly_strategy(5, 3), g in poly_strategy(5, 3)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        for ord in [
            MonomialOrder::DegLex(Tiebreak::LastVariableFirst),
            MonomialOrder::DegLex(Tiebreak::FirstVariableFirst),
            MonomialOrder::DegRevLex(Tiebreak::LastVariableFirst),
        ] {
            let (mf, cf) = f.leading_term_under(ord).unwrap();
            let (mg, cg) = g.leading_term_under(ord).unwrap();
            let (mh, ch) = f.try_mul(&g).unwrap().leading_term_under(ord).unwrap();
            prop_assert_eq!(mh, mf.mul(&mg));
            prop_assert_eq!(ch, cf * cg);
        }
    }

    #[test]
    fn polynomial_text_round_trips(f in poly_strategy(6, 4)) {
        let r = ring();
        prop_assert_eq!(parse(&r, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn division_certificate_reconstructs(f in poly_strategy(6, 3), gs in prop::collection::vec(poly_strategy(3, 2), 1..4)) {
        let gs: Vec<Polynomial> = gs.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gs.is_empty());
        let div = reduce_with_certificate(&f, &gs).unwrap();
        prop_assert!(div.verify());
    }

    #[test]
    fn small_bases_are_confluent(gs in prop::collection::vec(poly_strategy(3, 2), 1..4)) {
        let r = ring();
        let ideal = Ideal::new(&r, gs).unwrap();
        prop_assume!(!ideal.is_empty());
        let gb = buchberger(&ideal, MonomialOrder::default());
        prop_assert!(confluence_audit(&gb).is_empty());
        for g in ideal.generators() {
            prop_assert!(gb.contains(g));
        }
    }
}

#[test]
fn monomial_bijections_round_trip() {
    for p in 1..=4 {
        for q in 0..=4 {
            for m in enumerate_monomials(p, q).unwrap() {
                let code = m.to_paren();
                assert_eq!(OperatorMonomial::from_paren(&ParenString::parse(code.as_str()).unwrap()), m);
                for style in [Style::Star, Style::Letters, Style::Pretty] {
                    assert_eq!(OperatorMonomial::parse_text(&m.render(style)).as_ref(), Some(&m), "{}", m.render(style));
                }
                assert_eq!(m.mirror().mirror(), m);
                assert_eq!((m.degree(), m.multiplicity()), (p, q));
            }
        }
    }
}

#[test]
fn partial_smith_form_is_sound_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b9);
    for (p, q) in [(2, 1), (2, 2)] {
        let cm = build_consequence_matrix(p, q).unwrap();
        let r = &cm.ring;
        for spec in case_specs(r) {
            let m = cm.specialize(&spec.assignment(r).unwrap());
            let psf = partial_smith_form(&m);
            assert_eq!(psf.replay(&m), psf.assembled(), "case {}", spec.index);
            for _ in 0..50 {
                let point: Vec<Rational> = (0..r.nvars()).map(|_| random_rational(&mut rng)).collect();
                let full = rank_rational(&m.evaluate(&point));
                let block = rank_rational(&psf.lower_right.evaluate(&point));
                assert_eq!(full, psf.identity_size + block, "case {} at {point:?}", spec.index);
            }
        }
    }
}

#[test]
fn rank_is_invariant_under_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (p, q) in [(2, 1), (2, 2)] {
        let cm = build_consequence_matrix(p, q).unwrap();
        for _ in 0..40 {
            let point: Vec<Rational> = (0..cm.basis.len()).map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into())).collect();
            if point.iter().all(|c| *c == Rational::from_integer(0.into())) {
                continue;
            }
            let mut lambda = random_rational(&mut rng);
            if lambda == Rational::from_integer(0.into()) {
                lambda = Rational::from_integer(3.into());
            }
            let scaled: Vec<Rational> = point.iter().map(|c| c * &lambda).collect();
            assert_eq!(rank_at_point(&cm, &point), rank_at_point(&cm, &scaled));
        }
    }
}
