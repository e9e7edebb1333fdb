use voaforge_core::fock::{verify_oracle_equivalence, FockOracle, OracleError};
use voaforge_core::text::parse;
use voaforge_core::weil::OperatorTable;
use voaforge_core::{circle, LieAlgebra};

#[test]
fn engine_matches_oracle_at_truncation_eight() {
    let t = OperatorTable::sl2();
    let report = verify_oracle_equivalence(&t.generators(), t.dim(), 0, 120, 8);
    println!("{}", report.render(None));
    assert!(report.passed());
}

#[test]
fn beta_gamma_pole_sign() {
    let lie = LieAlgebra::sl2();
    let o = FockOracle::default();
    let beta = parse("beta[x]", &lie).unwrap();
    let gamma = parse("gamma[x]", &lie).unwrap();
    assert!(o.agrees(&beta, &gamma, 0, &circle(&beta, &gamma, 0)).unwrap());
    assert!(o.agrees(&gamma, &beta, 0, &circle(&gamma, &beta, 0)).unwrap());
    assert_eq!(circle(&beta, &gamma, 0), circle(&gamma, &beta, 0).neg());
}

#[test]
fn truncation_is_reported() {
    let lie = LieAlgebra::sl2();
    let o = FockOracle::new(2);
    let a = parse(":b[x] b[y] b[h]:", &lie).unwrap();
    assert!(matches!(o.state_of(&a), Err(OracleError::Truncation { weight: 3, limit: 2 })));
}
