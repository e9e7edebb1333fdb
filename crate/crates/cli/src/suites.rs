//! The named verification suites and their deterministic merge.

use rayon::prelude::*;
use voaforge_core::cohomology::{h_class, verify_circle_relations, verify_h_classes, verify_psi_classes, verify_weight4_relation};
use voaforge_core::fock::verify_oracle_equivalence;
use voaforge_core::rational::qi;
use voaforge_core::report::Report;
use voaforge_core::weil::{
    c_generators, sl2, verify_dva_structure, verify_l_coboundary_identity, verify_s_current_map, verify_tva, OperatorTable, TvaKind,
};
use voaforge_core::{circle, derivative, wick, Expr};
use voaforge_jet::{verify_appendix, verify_generation, verify_weyl_relations};

/// Every suite name accepted by `verify`, in merge order.
pub const SUITES: &[&str] = &[
    "c-relations",
    "circle-relations",
    "dva",
    "h-classes",
    "jet-appendix",
    "jet-theorem63",
    "oracle-equivalence",
    "psi-classes",
    "sl2-operators",
    "tva-standard",
    "tva-twisted",
    "weight4",
    "weyl-relations",
];

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unknown suite `{0}`; expected one of: {list}", list = SUITES.join(", "))]
pub struct UnknownSuite(pub String);

/// `L∘ₙL` for all `n`, `D(0)L = 0`, and `(L − ω_W)∘ₖa = [D(0), H∘ₖ]a` on the
/// generators of C and a few composite basic elements.
pub fn l_checks(t: &OperatorTable) -> Report {
    let mut r = Report::new("l-checks");
    let l = &t.l;
    r.eq("L ∘1 L = 2L", circle(l, l, 1), l.scaled(&qi(2)));
    r.eq("L ∘0 L = ∂L", circle(l, l, 0), derivative(l));
    for n in 2..=5 {
        r.eq(format!("L ∘{n} L = 0"), circle(l, l, n), Expr::zero());
    }
    r.eq("D(0) L = 0", t.d0(l), Expr::zero());
    let mut samples: Vec<(String, Expr)> = c_generators(t).into_iter().map(|(n, e)| (n.to_string(), e)).collect();
    samples.push(("1".into(), Expr::one()));
    samples.push((":v^x v^y:".into(), wick(&t.v_x, &t.v_y)));
    if let Ok(h4) = h_class(t, 1) {
        samples.push(("h₄".into(), h4));
    }
    for (label, a) in &samples {
        r.flag(format!("{label} is basic"), t.is_basic(a), "");
        for k in 0..3 {
            r.extend(verify_l_coboundary_identity(t, a, k, label));
        }
    }
    r
}

/// Runs one suite.
pub fn run_suite(name: &str, seed: u64) -> Result<Report, UnknownSuite> {
    let t = OperatorTable::sl2();
    let mut report = match name {
        "dva" => verify_dva_structure(t, seed),
        "tva-standard" => verify_tva(t, TvaKind::Standard),
        "tva-twisted" => verify_tva(t, TvaKind::Twisted),
        "sl2-operators" => {
            let mut r = sl2::verify_printed_operators(t);
            r.extend(l_checks(t));
            r
        }
        "c-relations" => {
            let mut r = sl2::verify_c_tables(t);
            r.extend(verify_s_current_map(t, -1));
            r
        }
        "h-classes" => verify_h_classes(t, 5, 4),
        "psi-classes" => verify_psi_classes(t, seed, 4),
        "circle-relations" => verify_circle_relations(t),
        "weight4" => verify_weight4_relation(t),
        "jet-appendix" => verify_appendix(seed),
        "jet-theorem63" => verify_generation(&[2, 3], 2, 3, 4, seed),
        "weyl-relations" => verify_weyl_relations(4, 4),
        "oracle-equivalence" => verify_oracle_equivalence(&t.generators(), t.dim(), seed, 100, 8),
        other => return Err(UnknownSuite(other.to_string())),
    };
    report.suite = name.to_string();
    Ok(report)
}

/// Runs several suites in parallel and returns their reports ordered by
/// suite name. `all` expands to every suite.
pub fn run_suites(names: &[String], seed: u64) -> Result<Vec<Report>, UnknownSuite> {
    let mut wanted: Vec<&str> = Vec::new();
    for n in names {
        if n == "all" {
            wanted.extend(SUITES);
        } else if SUITES.contains(&n.as_str()) {
            wanted.push(n);
        } else {
            return Err(UnknownSuite(n.clone()));
        }
    }
    wanted.sort_unstable();
    wanted.dedup();
    let mut reports: Vec<Report> = wanted.par_iter().map(|n| run_suite(n, seed).expect("names were validated")).collect();
    reports.sort_by(|a, b| a.suite.cmp(&b.suite));
    Ok(reports)
}
