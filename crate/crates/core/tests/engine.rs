use voaforge_core::engine::contraction;
use voaforge_core::fock::FockOracle;
use voaforge_core::rational::{q, qi};
use voaforge_core::text::parse;
use voaforge_core::weil::OperatorTable;
use voaforge_core::{circle, derivative, ope_singular, wick, Expr, Letter, LieAlgebra, Species};

fn p(text: &str) -> Expr {
    parse(text, &LieAlgebra::sl2()).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[test]
fn contractions_of_letters() {
    let (x, x1) = (Letter::new(Species::B, 0, 0), Letter::new(Species::B, 0, 1));
    let c = Letter::new(Species::C, 0, 0);
    let (beta, gamma) = (Letter::new(Species::Beta, 0, 0), Letter::new(Species::Gamma, 0, 0));
    assert_eq!(contraction(x, c, 0), qi(1));
    assert_eq!(contraction(gamma, beta, 0), qi(-1));
    assert_eq!(contraction(beta, gamma, 0), qi(1));
    assert_eq!(contraction(x1, c, 1), qi(-1));
    assert_eq!(contraction(x1, c, 0), qi(0));
    assert_eq!(contraction(x, Letter::new(Species::C, 1, 0), 0), qi(0));
}

#[test]
fn wick_products() {
    let a = p(":beta[x] gamma[h]:");
    assert_eq!(wick(&Expr::one(), &a), a);
    assert_eq!(wick(&p("b[x]"), &p("b[x]")), Expr::zero());
    let (g, b) = (p("gamma[x]"), p("beta[x]"));
    let lhs = wick(&wick(&g, &g), &b);
    let rhs = wick(&g, &wick(&g, &b));
    let diff = &lhs - &rhs;
    assert!(!diff.is_zero());
    assert_eq!(diff, derivative(&g).scaled(&qi(-2)));
    let oracle = FockOracle::default();
    assert!(oracle.agrees(&wick(&g, &g), &b, -1, &lhs).unwrap());
    assert!(oracle.agrees(&g, &wick(&g, &b), -1, &rhs).unwrap());
}

#[test]
fn derivatives() {
    assert_eq!(derivative(&Expr::one()), Expr::zero());
    assert_eq!(derivative(&p("b[x]")), Expr::letter(Letter::new(Species::B, 0, 1)));
    assert_eq!(derivative(&p(":b[x] c[x]:")), p(":d^1 b[x] c[x]: + :b[x] d^1 c[x]:"));
}

#[test]
fn circle_products() {
    let t = OperatorTable::sl2();
    let a = p(":beta[x] gamma[h]:");
    for n in -3..4 {
        let expected = if n == -1 { a.clone() } else { Expr::zero() };
        assert_eq!(circle(&Expr::one(), &a, n), expected);
    }
    for text in ["b[x]", "c[y]", "beta[h]", "gamma[x]", ":b[x] gamma[y]:", ":d^1 beta[h] c[x] c[y]:"] {
        let e = p(text);
        let w = e.weight().unwrap().unwrap();
        assert_eq!(circle(&t.omega_w, &e, 0), derivative(&e), "{text}");
        assert_eq!(circle(&t.omega_w, &e, 1), e.scaled(&qi(w)), "{text}");
    }
    assert_eq!(circle(&t.v_h, &t.v_h, 1), Expr::scalar(qi(-3)));
    assert!(FockOracle::default().agrees(&t.v_h, &t.v_h, 1, &Expr::scalar(qi(-3))).unwrap());
    assert_eq!(circle(&t.v_x, &t.v_y, 1), Expr::scalar(q(-3, 2)));
}

#[test]
fn singular_parts() {
    let t = OperatorTable::sl2();
    assert!(ope_singular(&p("b[x]"), &p("b[y]")).is_empty());
    assert_eq!(ope_singular(&t.theta_w[0], &t.theta_w[1]), vec![(0, t.theta_w[2].clone())]);
    assert_eq!(ope_singular(&t.l, &t.l), vec![(1, t.l.scaled(&qi(2))), (0, derivative(&t.l))]);
}

#[test]
fn gradings() {
    let t = OperatorTable::sl2();
    let c = &t.c_gamma_b_b;
    assert_eq!(c.weight(), Ok(Some(2)));
    assert_eq!(c.degree(), Ok(Some(0)));
    assert_eq!(c.b_number(), Ok(Some(2)));
    assert_eq!(c.poly_degree(), 3);
    assert!(p("b[x] + beta[x]").weight().is_ok());
    assert!(p("b[x] + c[x]").weight().is_err());
    assert_eq!(Expr::zero().weight(), Ok(None));
}

#[test]
fn equality_is_canonical() {
    let a = p(":beta[x] gamma[h]:");
    assert_eq!(a, a.clone());
    assert_eq!(p(":b[x] c[y]:"), p(":c[y] b[x]:").neg());
    assert_eq!(p(":beta[x] gamma[h]:"), p(":gamma[h] beta[x]:"));
    assert_eq!(p(":b[x] c[x]:"), &p(":c[x] b[x]:").neg() + &Expr::zero());
    assert_eq!(p("b[x] - b[x]"), Expr::zero());
}
