use voaforge_core::cohomology::h_class;
use voaforge_core::rational::qi;
use voaforge_core::text::parse;
use voaforge_core::weil::{
    self, c_generators, sl2, verify_dva_structure, verify_l_coboundary_identity, verify_s_current_map, verify_tva, OperatorTable, TvaKind,
};
use voaforge_core::{circle, derivative, ope_singular, wick, Expr};

fn t() -> &'static OperatorTable {
    OperatorTable::sl2()
}

fn e(text: &str) -> Expr {
    sl2::expr(t(), text)
}

fn assert_passes(report: voaforge_core::report::Report) {
    assert!(report.passed(), "{}", report.render(Some(&t().lie)));
}

#[test]
fn printed_operators() {
    let t = t();
    assert_eq!(
        t.get("theta_W_x").unwrap(),
        parse("2 :beta[x] gamma[h]: - :beta[h] gamma[y]: - 2 :b[x] c[h]: + :b[h] c[y]:", &t.lie).unwrap()
    );
    assert_eq!(t.c_b_b_b, parse(":b[x] b[y] b[h]:", &t.lie).unwrap());
    assert_eq!(t.k_op, parse(":gamma[h] b[h]: + :gamma[x] b[x]: + :gamma[y] b[y]:", &t.lie).unwrap());
    assert_passes(sl2::verify_printed_operators(t));
}

#[test]
fn modes_of_the_differentials() {
    let t = t();
    let bx = weil::generator(voaforge_core::Species::B, 0);
    assert_eq!(t.apply_mode(&t.d, 0, &bx), t.theta_w[0]);
    for g in t.generators() {
        assert_eq!(t.j0(&t.j0(&g)), Expr::zero());
    }
    assert_eq!(t.apply_mode(&t.j, 0, &t.c_b_b_b), e(":@K_op @Q_beta_b:").neg());
}

#[test]
fn basic_and_invariant_predicates() {
    let t = t();
    assert!(t.is_basic(&t.v_x));
    assert!(t.is_basic(&Expr::one()));
    assert!(!t.is_basic(&t.c_beta_gamma_b));
    assert!(t.is_horizontal(&t.c_beta_gamma_b));
    let (i, k, witness) = t.invariance_witness(&t.c_beta_gamma_b).unwrap();
    assert_eq!(k, 1);
    assert_eq!(witness, weil::generator(voaforge_core::Species::B, i).scaled(&qi(4)));
    assert!(!t.is_horizontal(&weil::generator(voaforge_core::Species::C, 0)));
}

#[test]
fn dva_structure() {
    let t = t();
    assert_eq!(
        ope_singular(&t.theta_w[0], &weil::generator(voaforge_core::Species::B, 1)),
        vec![(0, weil::generator(voaforge_core::Species::B, 2))]
    );
    assert_eq!(t.d0(&t.theta_w[0]), Expr::zero());
    let beta_x = weil::generator(voaforge_core::Species::Beta, 0);
    assert_eq!(t.j0(&t.j0(&beta_x)), Expr::zero());
    assert_passes(verify_dva_structure(t, 0));
}

#[test]
fn topological_structures() {
    let t = t();
    assert_passes(verify_tva(t, TvaKind::Standard));
    assert_passes(verify_tva(t, TvaKind::Twisted));
    for th in &t.theta_w {
        assert!(ope_singular(th, &t.twisted.f).is_empty());
    }
    assert_eq!(circle(&t.standard.l, &t.standard.l, 2), Expr::zero());
    assert_eq!(circle(&t.standard.l, &t.standard.l, 3), Expr::zero());
}

#[test]
fn tables_of_the_invariant_operators() {
    let t = t();
    assert_eq!(circle(&t.k_op, &t.c_beta_b_b, 0), t.c_b_b_b.scaled(&qi(-3)));
    for n in 0..4 {
        assert_eq!(circle(&t.c_gamma_b_b, &t.c_beta_b_b, n), Expr::zero());
    }
    assert_eq!(circle(&t.v_x, &t.v_y, 1), Expr::scalar(voaforge_core::rational::q(-3, 2)));
    for i in 0..3 {
        assert_eq!(circle(&t.theta_w[i], &t.c_beta_gamma_b, 1), weil::generator(voaforge_core::Species::B, i).scaled(&qi(4)));
    }
    assert_passes(sl2::verify_c_tables(t));
}

#[test]
fn super_current_map() {
    let t = t();
    assert_passes(verify_s_current_map(t, -1));
    let printed_signs = verify_s_current_map(t, 1);
    assert!(!printed_signs.passed());
}

#[test]
fn conformal_vector_l() {
    let t = t();
    let l = &t.l;
    assert_eq!(circle(l, l, 1), l.scaled(&qi(2)));
    assert_eq!(circle(l, l, 0), derivative(l));
    for n in 2..6 {
        assert_eq!(circle(l, l, n), Expr::zero(), "L ∘{n} L");
    }
    assert_eq!(t.d0(l), Expr::zero());
    assert!(t.is_basic(l));
}

#[test]
fn l_coboundary_identity_on_basic_samples() {
    let t = t();
    let h4 = h_class(t, 1).unwrap();
    let samples: Vec<(String, Expr)> = c_generators(t)
        .into_iter()
        .map(|(n, x)| (n.to_string(), x))
        .chain([
            ("1".to_string(), Expr::one()),
            ("h₄".to_string(), h4.clone()),
            (":v^x v^y:".to_string(), wick(&t.v_x, &t.v_y)),
            ("L".to_string(), t.l.clone()),
        ])
        .collect();
    assert!(samples.len() >= 5);
    for (label, a) in &samples {
        assert!(t.is_basic(a), "{label} is basic");
        for k in 0..3 {
            assert_passes(verify_l_coboundary_identity(t, a, k, label));
        }
    }
    for k in 0..4 {
        assert_eq!(circle(&(&t.l - &t.omega_w), &Expr::one(), k), Expr::zero());
    }
    let closed = verify_l_coboundary_identity(t, &t.v_x, 0, "v^x");
    assert_eq!(closed.checks.len(), 2);
    let h4_report = verify_l_coboundary_identity(t, &h4, 1, "h₄");
    assert!(h4_report.passed());
}
