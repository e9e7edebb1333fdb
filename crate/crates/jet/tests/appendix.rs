use voaforge_jet::appendix::{c1, q1};
use voaforge_jet::{
    appendix_cases, change_of_vars_det, divides, invariant_factor_audit, jacobian_rank, verify_appendix, JetError, JetPoly, JetRing, Var,
};

#[test]
fn the_three_determinants_match_the_printed_polynomials() {
    for case in appendix_cases() {
        let delta = change_of_vars_det(&case.targets, &case.sources).unwrap();
        assert_eq!(delta, case.printed, "{}", case.name);
    }
}

#[test]
fn two_copy_determinant_in_closed_form() {
    let v = |comp: usize, copy: usize| JetPoly::var(Var::adjoint(copy - 1, comp, 0));
    let expected = &(&JetPoly::integer(8) * &v(0, 2)) * &(&(&v(2, 1) * &v(0, 2)) - &(&v(0, 1) * &v(2, 2)));
    assert_eq!(appendix_cases()[0].printed, expected);
}

#[test]
fn delta_primes() {
    let ring = JetRing::adjoint_copies(3, 0);
    let gram = &(&q1(2, 2) * &q1(3, 3)) - &(&q1(2, 3) * &q1(2, 3));
    let expected = [JetPoly::one(), c1(1, 2, 3), gram];
    for (case, want) in appendix_cases().iter().zip(expected) {
        let audit = invariant_factor_audit(&ring, &case.printed, &case.factors);
        assert!(audit.product_matches);
        assert_eq!(audit.delta_prime, want, "{}", case.name);
    }
}

#[test]
fn coprimality_of_the_invariant_factors() {
    let c = c1(1, 2, 3);
    let gram = &(&q1(2, 2) * &q1(3, 3)) - &(&q1(2, 3) * &q1(2, 3));
    assert!(!divides(&c, &gram));
    assert!(!divides(&gram, &c));
    assert!(divides(&c, &appendix_cases()[1].printed));
}

#[test]
fn jacobian_ranks() {
    let ring2 = JetRing::adjoint_copies(2, 0);
    let ring3 = JetRing::adjoint_copies(3, 0);
    assert_eq!(jacobian_rank(&[q1(1, 1), q1(1, 2), q1(2, 2)], &ring2.base_variables(), 0).unwrap().rank, 3);
    assert_eq!(jacobian_rank(&[q1(1, 1)], &ring2.base_variables(), 0).unwrap().rank, 1);
    let all: Vec<JetPoly> = voaforge_jet::weyl_generators(3).generators().into_iter().map(|g| g.poly).collect();
    let r = jacobian_rank(&all, &ring3.base_variables(), 7).unwrap();
    assert_eq!(r.rank, 6);
    assert!(!r.minor.is_zero());
    assert_eq!(jacobian_rank(&[], &ring2.base_variables(), 0).unwrap().rank, 0);
}

#[test]
fn substitution_errors() {
    let v = JetPoly::var(Var::adjoint(0, 0, 1));
    let sources = [Var::adjoint(0, 0, 1), Var::adjoint(0, 1, 1)];
    assert!(matches!(change_of_vars_det(std::slice::from_ref(&v), &sources), Err(JetError::NotSquare { .. })));
    let squared = &v * &v;
    assert!(matches!(change_of_vars_det(&[squared, v], &sources), Err(JetError::NotLinear(_))));
}

#[test]
fn appendix_suite_passes() {
    let r = verify_appendix(0);
    assert!(r.passed(), "{}", r.render(None));
}
