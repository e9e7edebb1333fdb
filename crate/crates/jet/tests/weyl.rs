use voaforge_jet::{verify_weyl_relations, weyl_generators};

#[test]
fn cubic_relation_for_three_copies() {
    let set = weyl_generators(3);
    assert!(set.cubic_relation([0, 1, 2, 0, 1, 2]).is_zero());
}

#[test]
fn quartic_relation_for_four_copies() {
    let set = weyl_generators(4);
    assert!(set.quartic_relation([0, 1, 2, 3, 0, 1, 2, 3]).is_zero());
}

#[test]
fn linear_relation_is_alternating() {
    let set = weyl_generators(4);
    assert!(set.linear_relation([0, 1, 1, 2, 3]).is_zero());
    assert!(set.linear_relation([0, 0, 1, 0, 2]).is_zero());
    assert!(!set.linear_relation_kim([0, 0, 1, 0, 2]).is_zero());
}

#[test]
fn cubic_generators_are_alternating() {
    let set = weyl_generators(3);
    assert_eq!(set.c(1, 0, 2), -set.c(0, 1, 2));
    assert_eq!(set.c(1, 2, 0), set.c(0, 1, 2));
    assert!(set.c(0, 0, 2).is_zero());
    assert_eq!(set.generators().len(), 7);
}

#[test]
fn all_relations_vanish_up_to_four_copies() {
    for copies in 1..=4 {
        let r = verify_weyl_relations(copies, copies);
        assert!(r.passed(), "{}", r.render(None));
    }
}
