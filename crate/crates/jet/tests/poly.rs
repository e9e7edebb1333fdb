use proptest::prelude::*;
use std::collections::BTreeMap;
use voaforge_core::rational::{q, qi};
use voaforge_jet::{determinant, divides, JetPoly, JetRing, Monomial, Var};

fn a(copy: usize, comp: usize) -> JetPoly {
    JetPoly::var(Var::adjoint(copy, comp, 0))
}

#[test]
fn graded_lex_order_puts_degree_first_then_largest_variable() {
    let ah1 = Monomial::var(Var::adjoint(0, 0, 0));
    let ay1 = Monomial::var(Var::adjoint(0, 2, 0));
    let ah2 = Monomial::var(Var::adjoint(1, 0, 0));
    let ah1_sq = ah1.mul(&ah1);
    assert!(ah1 < ay1);
    assert!(ay1 < ah2);
    assert!(ah2 < ah1_sq);
    assert!(ah1.mul(&ah2) > ay1.mul(&ay1));
    let lvl = Monomial::var(Var::adjoint(0, 0, 1));
    assert!(ah1 < lvl && lvl < ay1);
}

#[test]
fn display_lists_terms_from_the_leading_one() {
    let p = &(&a(0, 2) * &a(1, 0)) - &(&a(0, 0) * &a(1, 2));
    assert_eq!(p.to_string(), "-ah1*ay2 + ay1*ah2");
    assert_eq!(JetPoly::zero().to_string(), "0");
    let d = JetPoly::var(Var::adjoint(1, 1, 2)).scale(&q(-3, 2));
    assert_eq!(d.to_string(), "-3/2*ax2^(2)");
}

#[test]
fn division_examples() {
    let c = &(&a(0, 0) * &a(1, 1)) - &(&a(0, 1) * &a(1, 0));
    let f = &a(2, 2) + &JetPoly::integer(3);
    let prod = &c * &f;
    assert_eq!(prod.div_exact(&c), Some(f.clone()));
    assert!(divides(&c, &prod));
    assert!(!divides(&c, &(&prod + &JetPoly::integer(1))));
    assert!(divides(&f, &JetPoly::zero()));
    assert!(divides(&JetPoly::integer(5), &prod));
}

#[test]
fn determinant_of_small_matrices() {
    let m = vec![vec![a(0, 0), a(0, 1)], vec![a(1, 0), a(1, 1)]];
    assert_eq!(determinant(&m), &(&a(0, 0) * &a(1, 1)) - &(&a(0, 1) * &a(1, 0)));
    assert_eq!(determinant(&[]), JetPoly::one());
    let id: Vec<Vec<JetPoly>> =
        (0..4).map(|i| (0..4).map(|j| if i == j { JetPoly::integer(2) } else { JetPoly::zero() }).collect()).collect();
    assert_eq!(determinant(&id), JetPoly::integer(16));
}

#[test]
fn evaluation_and_partials() {
    let p = &(&a(0, 0) * &a(0, 0)) + &(&JetPoly::integer(4) * &(&a(0, 1) * &a(0, 2)));
    let point: BTreeMap<Var, _> = [(Var::adjoint(0, 0, 0), qi(3)), (Var::adjoint(0, 1, 0), qi(1)), (Var::adjoint(0, 2, 0), q(1, 2))].into();
    assert_eq!(p.eval(&point), qi(11));
    assert_eq!(p.partial(Var::adjoint(0, 0, 0)), a(0, 0).scale(&qi(2)));
}

fn arb_poly() -> impl Strategy<Value = JetPoly> {
    prop::collection::vec((prop::collection::vec((0usize..6, 0usize..2), 0..4), -4i64..=4), 1..5).prop_map(|terms| {
        let mut p = JetPoly::zero();
        for (vars, c) in terms {
            let m = Monomial::from_powers(vars.into_iter().map(|(b, l)| (Var::new(b, l), 1)));
            p.add_term(m, qi(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, rng_seed: prop::test_runner::RngSeed::Fixed(0), failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn exact_division_recovers_the_cofactor(p in arb_poly(), f in arb_poly()) {
        prop_assume!(!p.is_zero());
        let prod = &p * &f;
        prop_assert_eq!(prod.div_exact(&p), Some(f));
    }

    #[test]
    fn multiplication_is_commutative_and_distributive(p in arb_poly(), f in arb_poly(), g in arb_poly()) {
        prop_assert_eq!(&p * &f, &f * &p);
        prop_assert_eq!(&p * &(&f + &g), &(&p * &f) + &(&p * &g));
    }

    #[test]
    fn shift_derivation_raises_weight_by_one(p in arb_poly()) {
        let ring = JetRing::adjoint_copies(2, 3);
        let homogeneous: JetPoly = {
            let top = p.leading().map(|(m, _)| (m.weight(), m.degree()));
            let mut h = JetPoly::zero();
            for (m, c) in p.terms() {
                if Some((m.weight(), m.degree())) == top {
                    h.add_term(m.clone(), c.clone());
                }
            }
            h
        };
        let dp = ring.d(&homogeneous);
        if let (Some((w, d)), Some((w2, d2))) = (homogeneous.bidegree(), dp.bidegree()) {
            prop_assert_eq!((w + 1, d), (w2, d2));
        }
    }
}
