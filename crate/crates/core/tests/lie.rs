use voaforge_core::lie::LieError;
use voaforge_core::rational::{q, qi};
use voaforge_core::{LieAlgebra, Q};

fn vec3(x: i64, y: i64, h: i64) -> Vec<Q> {
    vec![qi(x), qi(y), qi(h)]
}

#[test]
fn killing_form_of_sl2() {
    let g = LieAlgebra::sl2();
    let (x, y, h) = (g.named("x"), g.named("y"), g.named("h"));
    assert_eq!(g.kappa(&h, &h), qi(8));
    assert_eq!(g.kappa(&x, &y), qi(4));
    assert_eq!(g.kappa(&x, &x), qi(0));
    assert!(g.killing_is_invariant());
    assert!(g.is_semisimple());
}

#[test]
fn brackets_of_sl2() {
    let g = LieAlgebra::sl2();
    let (x, y, h) = (g.named("x"), g.named("y"), g.named("h"));
    assert_eq!(g.bracket(&h, &x).unwrap(), vec3(2, 0, 0));
    assert_eq!(g.bracket(&x, &y).unwrap(), vec3(0, 0, 1));
    assert_eq!(g.bracket(&x, &x).unwrap(), vec3(0, 0, 0));
    assert_eq!(g.bracket(&h, &vec3(1, 1, 0)).unwrap(), vec3(2, -2, 0));
    assert_eq!(g.bracket(&h, &vec![qi(1)]), Err(LieError::Dimension { expected: 3, got: 1 }));
}

#[test]
fn coadjoint_action_matches_definition() {
    let g = LieAlgebra::sl2();
    let (x, y, h) = (g.named("x"), g.named("y"), g.named("h"));
    let dual = |i: usize| g.basis(i);
    assert_eq!(g.coadjoint(&h, &dual(0)).unwrap(), vec3(-2, 0, 0));
    assert_eq!(g.coadjoint(&h, &dual(1)).unwrap(), vec3(0, 2, 0));
    assert_eq!(g.coadjoint(&x, &dual(1)).unwrap(), vec3(0, 0, 0));
    assert_eq!(g.coadjoint(&x, &dual(2)).unwrap(), vec3(0, -1, 0));
    for xi in [&x, &y, &h] {
        for eta in [&x, &y, &h] {
            let phi = g.killing.iter().map(|row| row.iter().zip(eta.iter()).map(|(a, b)| a * b).sum()).collect::<Vec<Q>>();
            let ad = g.bracket(xi, eta).unwrap();
            let image: Vec<Q> = g.killing.iter().map(|row| row.iter().zip(ad.iter()).map(|(a, b)| a * b).sum()).collect();
            assert_eq!(g.coadjoint(xi, &phi).unwrap(), image);
        }
    }
}

#[test]
fn dual_pairs_of_sl2() {
    let g = LieAlgebra::sl2();
    let pairs = g.dual_pairs().unwrap().pairs;
    let expected = [
        (vec3(1, 0, 0), vec![qi(0), q(1, 4), qi(0)]),
        (vec3(0, 1, 0), vec![q(1, 4), qi(0), qi(0)]),
        (vec3(0, 0, 1), vec![qi(0), qi(0), q(1, 8)]),
    ];
    assert_eq!(pairs, expected.to_vec());
    for (u, _) in &pairs {
        for (_, w) in &pairs {
            let k = g.kappa(u, w);
            assert!(k == qi(0) || k == qi(1));
        }
    }
}

#[test]
fn abelian_algebra_has_no_dual_pairs() {
    let g = LieAlgebra::from_json(r#"{"basis": ["t"], "brackets": []}"#).unwrap();
    assert_eq!(g.dual_pairs(), Err(LieError::SingularKilling));
}

#[test]
fn presentations_are_validated() {
    let sl2 =
        LieAlgebra::from_json(r#"{"basis": ["x", "y", "h"], "brackets": [[0, 1, [0, 0, 1]], [2, 0, [2, 0, 0]], [2, 1, [0, -2, 0]]]}"#)
            .unwrap();
    assert_eq!(sl2, LieAlgebra::sl2());
    let broken =
        LieAlgebra::from_json(r#"{"basis": ["x", "y", "h"], "brackets": [[0, 1, [0, 0, 1]], [2, 0, [1, 0, 0]], [2, 1, [0, -2, 0]]]}"#);
    assert!(matches!(broken, Err(LieError::Axiom(_))));
    assert!(matches!(LieAlgebra::from_json("not json"), Err(LieError::Malformed(_))));
    assert!(matches!(
        LieAlgebra::from_json(r#"{"basis": ["a", "b"], "brackets": [[0, 1, [1]]]}"#),
        Err(LieError::Dimension { expected: 2, got: 1 })
    ));
}
