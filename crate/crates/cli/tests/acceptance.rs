//! One line per acceptance criterion. Criteria that cannot be met are printed
//! as FAIL with the measured discrepancy and listed in `UNATTAINABLE`.

use voaforge_cli::{run_suite, suites::l_checks};
use voaforge_core::cohomology::{printed, psi_class, Printed, Sl2Monomial};
use voaforge_core::properties::verify_engine_properties;
use voaforge_core::rational::q;
use voaforge_core::report::{Report, Status};
use voaforge_core::weil::OperatorTable;
use voaforge_core::{derivative, Expr};

const SEED: u64 = 0;

/// Criteria whose failure is recorded and explained rather than fixed.
const UNATTAINABLE: &[u32] = &[6];

struct Outcome {
    criterion: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn suites(names: &[&str]) -> (bool, String) {
    let mut checks = 0;
    let mut failures = Vec::new();
    for name in names {
        let report = run_suite(name, SEED).expect("known suite");
        checks += report.checks.len();
        failures.extend(report.checks.iter().filter(|c| c.status != Status::Ok).map(|c| format!("{name}: {}", c.identity)));
    }
    (failures.is_empty(), summary(checks, &failures))
}

fn summary(checks: usize, failures: &[String]) -> String {
    match failures.first() {
        None => format!("{checks} checks"),
        Some(f) => format!("{} of {checks} checks not ok; first: {f}", failures.len()),
    }
}

fn report_outcome(report: &Report) -> (bool, String) {
    let failures: Vec<String> = report.checks.iter().filter(|c| c.status != Status::Ok).map(|c| c.identity.clone()).collect();
    (failures.is_empty(), summary(report.checks.len(), &failures))
}

fn exact_representatives() -> (bool, String) {
    let t = OperatorTable::sl2();
    let p = Printed::parse(t);
    let mut matched = Vec::new();
    let mut mismatched = Vec::new();
    for (name, mu, _) in printed::ALL {
        let mu: Sl2Monomial = mu.parse().expect("valid monomial");
        let rep = psi_class(t, mu).expect("Ψ builds").representative();
        let want = p.by_name(name).expect("printed");
        if &rep == want {
            matched.push(*name);
        } else {
            let closed = t.d0(want) == Expr::zero();
            mismatched.push(format!("{name} differs by {} terms (printed is D(0)-closed: {closed})", (want - &rep).len()));
        }
    }
    let detail =
        format!("match: {}; {}", matched.join(", "), if mismatched.is_empty() { "no mismatch".into() } else { mismatched.join("; ") });
    (mismatched.is_empty(), detail)
}

fn evaluate() -> Vec<Outcome> {
    let t = OperatorTable::sl2();
    let mut out = Vec::new();
    let mut push = |criterion, title, (passed, detail): (bool, String)| out.push(Outcome { criterion, title, passed, detail });
    push(1, "DVA structure", suites(&["dva"]));
    push(2, "topological vertex algebra structures", suites(&["tva-standard", "tva-twisted"]));
    push(3, "OPE tables and relations of the invariant operators", suites(&["sl2-operators", "c-relations"]));
    push(4, "L checks and the coboundary identity", report_outcome(&l_checks(t)));
    push(5, "Koszul cocycles h and the recursion", suites(&["h-classes"]));
    push(6, "exact match of the Ψ representatives with the printed ones", exact_representatives());
    push(7, "circle-product relations and the weight-4 relation", suites(&["circle-relations", "weight4"]));
    push(8, "engine against the Fock-space oracle", suites(&["oracle-equivalence"]));
    push(9, "localization determinants", suites(&["jet-appendix"]));
    push(10, "Weyl relations", suites(&["weyl-relations"]));
    push(11, "jet invariants against generated subring", suites(&["jet-theorem63"]));
    push(12, "engine property suites", report_outcome(&verify_engine_properties(SEED, 100)));
    out
}

fn main() {
    let outcomes = evaluate();
    for o in &outcomes {
        println!("criterion {:>2}: {} | {} | {}", o.criterion, if o.passed { "PASS" } else { "FAIL" }, o.title, o.detail);
    }
    let t = OperatorTable::sl2();
    let p = Printed::parse(t);
    let f3 = psi_class(t, "h".parse().expect("valid monomial")).expect("Ψ(h) builds").representative();
    let known = &p.f3 - &f3 == derivative(&t.l).scaled(&q(-10, 9));
    println!("criterion  6 discrepancy: printed F3 - Ψ(h) = -(10/9)∂L: {known}");
    let unexpected: Vec<u32> = outcomes.iter().filter(|o| !o.passed && !UNATTAINABLE.contains(&o.criterion)).map(|o| o.criterion).collect();
    if !unexpected.is_empty() || !known {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
