use voaforge_jet::{verify_action_brackets, verify_generation, JetRing};

#[test]
fn action_is_a_representation_of_the_current_algebra() {
    let ring = JetRing::adjoint_copies(2, 2);
    let r = verify_action_brackets(&ring, 11, 120);
    assert!(r.passed(), "{}", r.render(None));
}

#[test]
fn invariants_equal_generated_subring_at_desk_scale() {
    let r = verify_generation(&[2, 3], 2, 3, 4, 0);
    assert!(r.passed(), "{}", r.render(None));
    assert!(r.checks.len() > 60);
}
