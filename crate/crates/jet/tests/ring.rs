use voaforge_core::rational::qi;
use voaforge_core::LieAlgebra;
use voaforge_jet::ring::{jet_coefficient, sl2_vector};
use voaforge_jet::{c_poly, generated_component, invariant_component, q_poly, weyl_generators, JetError, JetPoly, JetRing, Var};

fn jet(copy: usize, comp: usize, level: usize) -> JetPoly {
    JetPoly::var(Var::adjoint(copy, comp, level))
}

#[test]
fn xi_t_on_level_one_lowers_to_level_zero() {
    let ring = JetRing::adjoint_copies(2, 2);
    let x = sl2_vector(&ring.lie, "x").unwrap();
    let level0 = ring.lie_jet_action(&x, 0, &jet(0, 1, 0));
    let t1 = ring.lie_jet_action(&x, 1, &jet(0, 1, 1));
    assert_eq!(t1, level0);
    assert_eq!(level0, jet(0, 0, 0));
    assert!(ring.lie_jet_action(&x, 2, &jet(0, 1, 1)).is_zero());
    let t1_on_level2 = ring.lie_jet_action(&x, 1, &jet(0, 1, 2));
    assert_eq!(t1_on_level2, jet(0, 0, 1).scale(&qi(2)));
    assert_eq!(jet_coefficient(2, 3), qi(6));
    assert_eq!(jet_coefficient(3, 2), qi(0));
}

#[test]
fn adjoint_action_matches_the_coordinates() {
    let ring = JetRing::adjoint_copies(1, 0);
    let act = |label: &str, comp: usize| ring.lie_jet_action(&sl2_vector(&ring.lie, label).unwrap(), 0, &jet(0, comp, 0));
    assert_eq!(act("h", 0), JetPoly::zero());
    assert_eq!(act("h", 1), jet(0, 1, 0).scale(&qi(-2)));
    assert_eq!(act("h", 2), jet(0, 2, 0).scale(&qi(2)));
    assert_eq!(act("x", 0), jet(0, 2, 0).scale(&qi(-2)));
    assert_eq!(act("x", 1), jet(0, 0, 0));
    assert_eq!(act("y", 0), jet(0, 1, 0).scale(&qi(2)));
    assert_eq!(act("y", 2), jet(0, 0, 0).scale(&qi(-1)));
}

#[test]
fn weyl_generators_are_invariant() {
    let ring = JetRing::adjoint_copies(3, 0);
    let x = sl2_vector(&ring.lie, "x").unwrap();
    let h = sl2_vector(&ring.lie, "h").unwrap();
    assert!(ring.lie_jet_action(&x, 0, &q_poly(0, 0)).is_zero());
    assert!(ring.lie_jet_action(&h, 0, &c_poly(0, 1, 2)).is_zero());
    for g in weyl_generators(3).generators() {
        assert!(ring.is_g_invariant(&g.poly), "{} is not invariant", g.label);
    }
    let q12 =
        &(&jet(0, 0, 0) * &jet(1, 0, 0)) + &(&JetPoly::integer(2) * &(&(&jet(0, 1, 0) * &jet(1, 2, 0)) + &(&jet(1, 1, 0) * &jet(0, 2, 0))));
    assert_eq!(q_poly(0, 1), q12);
}

#[test]
fn non_representations_are_rejected() {
    let lie = LieAlgebra::sl2();
    let mut actions = JetRing::adjoint_copies(1, 0).actions;
    actions[0][0][2] = qi(5);
    assert!(matches!(JetRing::new(lie, actions, 1), Err(JetError::Representation(_))));
}

#[test]
fn shift_derivation_truncates_at_the_top_level() {
    let ring = JetRing::adjoint_copies(1, 1);
    assert_eq!(ring.d(&jet(0, 0, 0)), jet(0, 0, 1));
    assert!(ring.d(&jet(0, 0, 1)).is_zero());
    let q = q_poly(0, 0);
    assert_eq!(ring.d(&q).bidegree(), Some((1, 2)));
}

#[test]
fn invariant_slices_of_two_copies() {
    let ring = JetRing::adjoint_copies(2, 1);
    let w0 = invariant_component(&ring, 0, 2).unwrap();
    assert_eq!(w0.dimension, 3);
    let w1 = invariant_component(&ring, 1, 2).unwrap();
    assert_eq!(w1.dimension, 3);
    for (i, j) in [(0, 0), (0, 1), (1, 1)] {
        let dq = ring.d(&q_poly(i, j));
        let gens: Vec<JetPoly> = w1.basis.clone();
        let mut span = voaforge_core::linalg::Reducer::rank_only();
        let mut idx = voaforge_core::linalg::RowIndex::new();
        for g in &gens {
            span.insert(idx.encode(g.terms()));
        }
        assert!(span.contains(idx.encode(dq.terms())), "D q_{i}{j} is not in the invariant slice");
    }
}

#[test]
fn generated_slices_are_contained_in_invariant_slices() {
    let ring = JetRing::adjoint_copies(2, 2);
    let gens: Vec<JetPoly> = weyl_generators(2).generators().into_iter().map(|g| g.poly).collect();
    for (w, d) in [(0, 2), (1, 2), (2, 4), (3, 4)] {
        let inv = invariant_component(&ring, w, d).unwrap();
        let gen = generated_component(&ring, &gens, w, d).unwrap();
        assert!(inv.dimension >= gen.dimension);
    }
    let empty = generated_component(&ring, &gens, 3, 1).unwrap();
    assert_eq!(empty.dimension, 0);
    assert_eq!(invariant_component(&ring, 5, 1).unwrap().dimension, 0);
}

#[test]
fn oversized_slices_are_refused() {
    let ring = JetRing::adjoint_copies(4, 3);
    match invariant_component(&ring, 6, 6) {
        Err(JetError::SliceTooLarge { size, .. }) => assert!(size > 12_000),
        other => panic!("expected refusal, got {other:?}"),
    }
}
