//! Jacobian loci, the level-1 change-of-variables determinants `Δ` and their
//! invariant parts `Δ′` for two and three adjoint copies of sl₂.

use crate::poly::{determinant, divides, JetPoly, Var};
use crate::ring::JetRing;
use crate::weyl::{c_poly, q_poly, weyl_generators};
use crate::JetError;
use num::Zero;
use rand::Rng;
use std::collections::BTreeMap;
use voaforge_core::linalg::dense;
use voaforge_core::rational::q;
use voaforge_core::report::Report;
use voaforge_core::sample;
use voaforge_core::Q;

const RANK_DRAWS: usize = 4;

/// A generic rank together with the nonvanishing minor that certifies it.
#[derive(Clone, Debug)]
pub struct JacobianRank {
    pub rank: usize,
    pub rows: Vec<usize>,
    pub columns: Vec<Var>,
    pub minor: JetPoly,
    pub point: BTreeMap<Var, Q>,
}

fn random_point<R: Rng>(rng: &mut R, vars: &[Var]) -> BTreeMap<Var, Q> {
    vars.iter().map(|v| (*v, q(rng.gen_range(-9..=9), rng.gen_range(1..=3)))).collect()
}

/// `(row, column)` positions of the pivots of a row reduction.
type Pivots = Vec<(usize, usize)>;

/// Row-echelon pivots `(row, column)` of a numeric matrix.
fn pivots(matrix: &[Vec<Q>]) -> Pivots {
    let mut m = matrix.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut used = vec![false; m.len()];
    let mut out = Vec::new();
    for c in 0..cols {
        let Some(p) = (0..m.len()).find(|&r| !used[r] && !m[r][c].is_zero()) else { continue };
        used[p] = true;
        out.push((p, c));
        let pivot_row = m[p].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if !used[r] && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    out
}

/// Generic rank of `[∂g_i/∂v_j]`: the best of several seeded rational draws,
/// certified by expanding the selected minor symbolically and checking that
/// it is a nonzero polynomial agreeing with its numeric value.
pub fn jacobian_rank(generators: &[JetPoly], vars: &[Var], seed: u64) -> Result<JacobianRank, JetError> {
    if let Some(g) = generators.iter().find(|g| g.max_level() > 0) {
        return Err(JetError::NotBase(g.to_string()));
    }
    let partials: Vec<Vec<JetPoly>> = generators.iter().map(|g| vars.iter().map(|v| g.partial(*v)).collect()).collect();
    let mut rng = sample::rng(seed);
    let mut best: Option<(Pivots, BTreeMap<Var, Q>)> = None;
    for _ in 0..RANK_DRAWS {
        let point = random_point(&mut rng, vars);
        let numeric: Vec<Vec<Q>> = partials.iter().map(|row| row.iter().map(|p| p.eval(&point)).collect()).collect();
        let piv = pivots(&numeric);
        if best.as_ref().is_none_or(|(b, _)| piv.len() > b.len()) {
            best = Some((piv, point));
        }
    }
    let (piv, point) = best.unwrap_or_default();
    let rows: Vec<usize> = piv.iter().map(|(r, _)| *r).collect();
    let cols: Vec<usize> = piv.iter().map(|(_, c)| *c).collect();
    let sub: Vec<Vec<JetPoly>> = rows.iter().map(|&r| cols.iter().map(|&c| partials[r][c].clone()).collect()).collect();
    let minor = determinant(&sub);
    let numeric: Vec<Vec<Q>> = sub.iter().map(|row| row.iter().map(|p| p.eval(&point)).collect()).collect();
    let value = dense::det(&numeric);
    if minor.is_zero() || value.is_zero() || minor.eval(&point) != value {
        return Err(JetError::Certification(format!("selected {}x{} minor failed to certify", rows.len(), rows.len())));
    }
    Ok(JacobianRank { rank: rows.len(), rows, columns: cols.iter().map(|&c| vars[c]).collect(), minor, point })
}

/// Determinant of the substitution expressing each target, linear in the
/// `sources`, in terms of those sources: rows are targets, columns sources.
pub fn change_of_vars_det(targets: &[JetPoly], sources: &[Var]) -> Result<JetPoly, JetError> {
    if targets.len() != sources.len() {
        return Err(JetError::NotSquare { rows: targets.len(), cols: sources.len() });
    }
    let position: BTreeMap<Var, usize> = sources.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut matrix = vec![vec![JetPoly::zero(); sources.len()]; targets.len()];
    for (row, target) in targets.iter().enumerate() {
        for (m, c) in target.terms() {
            let hits: Vec<(Var, u32)> = m.powers().iter().filter(|(v, _)| position.contains_key(v)).copied().collect();
            let others_base = m.powers().iter().all(|(v, _)| position.contains_key(v) || v.level == 0);
            match hits.as_slice() {
                [(v, 1)] if others_base => {
                    let (_, rest) = m.lower(*v).expect("present");
                    matrix[row][position[v]].add_term(rest, c.clone());
                }
                _ => return Err(JetError::NotLinear(format!("term {m} of target {}", row + 1))),
            }
        }
    }
    Ok(determinant(&matrix))
}

/// Outcome of checking a stated factorization of `Δ`.
#[derive(Clone, Debug)]
pub struct FactorAudit {
    pub report: Report,
    pub product_matches: bool,
    pub invariant: Vec<bool>,
    pub delta_prime: JetPoly,
}

/// Verifies `Δ = Π factors` by expansion, tests each nonconstant factor for
/// invariance under every basis vector of `g`, and forms `Δ′` as the product
/// of the invariant ones.
pub fn invariant_factor_audit(ring: &JetRing, delta: &JetPoly, factors: &[JetPoly]) -> FactorAudit {
    let mut report = Report::new("invariant-factor-audit");
    let product = factors.iter().fold(JetPoly::one(), |acc, f| &acc * f);
    let product_matches = &product == delta;
    report.flag(
        "delta equals the product of the stated factors",
        product_matches,
        if product_matches { String::new() } else { format!("product = {product}, delta = {delta}") },
    );
    let mut delta_prime = JetPoly::one();
    let mut invariant = Vec::new();
    for f in factors {
        let constant = f.degree() == 0;
        let inv = !constant && ring.is_g_invariant(f);
        invariant.push(inv);
        if constant {
            continue;
        }
        if inv {
            delta_prime = &delta_prime * f;
        }
        report.flag(format!("factor {f}"), true, if inv { "g-invariant" } else { "not g-invariant" });
    }
    report.flag("delta prime", true, delta_prime.to_string());
    FactorAudit { report, product_matches, invariant, delta_prime }
}

/// One of the three localization determinants.
#[derive(Clone, Debug)]
pub struct DeltaCase {
    pub name: &'static str,
    pub copies: usize,
    /// The algebraically independent invariants `y_1, …, y_d`.
    pub independent: Vec<JetPoly>,
    pub sources: Vec<Var>,
    pub targets: Vec<JetPoly>,
    pub printed: JetPoly,
    pub factors: Vec<JetPoly>,
    pub expected_prime: JetPoly,
}

fn a(comp: char, copy: usize, level: usize) -> Var {
    let c = match comp {
        'h' => 0,
        'x' => 1,
        _ => 2,
    };
    Var::adjoint(copy - 1, c, level)
}

fn level1(spec: &str) -> Vec<Var> {
    spec.split_whitespace()
        .map(|t| {
            let mut ch = t.chars();
            let comp = ch.next().expect("component");
            a(comp, ch.as_str().parse().expect("copy"), 1)
        })
        .collect()
}

/// `q_ij` with 1-based indices.
pub fn q1(i: usize, j: usize) -> JetPoly {
    q_poly(i - 1, j - 1)
}

/// `c_klm` with 1-based indices.
pub fn c1(k: usize, l: usize, m: usize) -> JetPoly {
    c_poly(k - 1, l - 1, m - 1)
}

/// The three determinants with their printed values and factorizations.
pub fn appendix_cases() -> Vec<DeltaCase> {
    let v = |comp, copy| JetPoly::var(a(comp, copy, 0));
    let ring = JetRing::adjoint_copies(3, 1);
    let d = |p: &JetPoly| ring.d(p);
    let lvl = |spec: &str| level1(spec).into_iter().map(JetPoly::var).collect::<Vec<_>>();

    let two_factor = &(&v('y', 1) * &v('h', 2)) - &(&v('h', 1) * &v('y', 2));
    let three_factor = &(&v('h', 3) * &v('y', 2)) - &(&v('y', 3) * &v('h', 2));
    let gram = &(&q1(2, 2) * &q1(3, 3)) - &(&q1(2, 3) * &q1(2, 3));

    let two_ind = vec![q1(1, 1), q1(1, 2), q1(2, 2)];
    let mut two_targets: Vec<JetPoly> = two_ind.iter().map(d).collect();
    two_targets.extend(lvl("x2 y1 y2"));
    let two_factors = vec![JetPoly::integer(8), v('h', 2), two_factor];

    let q_ind = vec![q1(1, 1), q1(1, 2), q1(2, 2), q1(3, 3), q1(2, 3), q1(1, 3)];
    let mut q_targets: Vec<JetPoly> = q_ind.iter().map(d).collect();
    q_targets.extend(lvl("x3 y2 y3"));
    let q_factors = vec![JetPoly::integer(64), v('h', 3), three_factor.clone(), c1(1, 2, 3)];

    let c_ind = vec![c1(1, 2, 3), q1(1, 2), q1(2, 2), q1(3, 3), q1(2, 3), q1(1, 3)];
    let mut c_targets: Vec<JetPoly> = c_ind.iter().map(d).collect();
    c_targets.extend(lvl("x3 y2 y3"));
    let c_factors = vec![JetPoly::integer(-8), v('h', 3), three_factor, gram.clone()];

    let product = |fs: &[JetPoly]| fs.iter().fold(JetPoly::one(), |acc, f| &acc * f);
    vec![
        DeltaCase {
            name: "two copies, basis q11 q12 q22",
            copies: 2,
            independent: two_ind,
            sources: level1("h1 h2 x1 x2 y1 y2"),
            targets: two_targets,
            printed: product(&two_factors),
            factors: two_factors,
            expected_prime: JetPoly::one(),
        },
        DeltaCase {
            name: "three copies, basis q11 q12 q22 q33 q23 q13",
            copies: 3,
            independent: q_ind,
            sources: level1("h1 h2 h3 x1 x2 y1 x3 y2 y3"),
            targets: q_targets,
            printed: product(&q_factors),
            factors: q_factors,
            expected_prime: c1(1, 2, 3),
        },
        DeltaCase {
            name: "three copies, basis c123 q12 q22 q33 q23 q13",
            copies: 3,
            independent: c_ind,
            sources: level1("h1 h2 h3 x1 x2 y1 x3 y2 y3"),
            targets: c_targets,
            printed: product(&c_factors),
            factors: c_factors,
            expected_prime: gram,
        },
    ]
}

/// Jacobian ranks, the three determinants, their invariant parts and the
/// coprimality of the two `Δ′` for three copies.
pub fn verify_appendix(seed: u64) -> Report {
    let mut report = Report::new("jet-appendix").with_seed(seed);
    let ring2 = JetRing::adjoint_copies(2, 0);
    let ring3 = JetRing::adjoint_copies(3, 0);

    let rank_check = |report: &mut Report, label: &str, gens: &[JetPoly], ring: &JetRing, expected: usize| {
        match jacobian_rank(gens, &ring.base_variables(), seed) {
            Ok(r) => report.flag(
                format!("Jacobian rank of {label} = {expected}"),
                r.rank == expected,
                format!("rank {} certified by a nonzero {}x{} minor with {} terms", r.rank, r.rank, r.rank, r.minor.len()),
            ),
            Err(e) => report.flag(format!("Jacobian rank of {label} = {expected}"), false, e.to_string()),
        };
    };
    rank_check(&mut report, "{q11}", &[q1(1, 1)], &ring2, 1);
    let all3: Vec<JetPoly> = weyl_generators(3).generators().into_iter().map(|g| g.poly).collect();
    rank_check(&mut report, "all 7 generators on 3 copies", &all3, &ring3, 6);

    for case in appendix_cases() {
        let ring = if case.copies == 2 { &ring2 } else { &ring3 };
        rank_check(&mut report, &format!("the independent invariants ({})", case.name), &case.independent, ring, case.independent.len());
        match change_of_vars_det(&case.targets, &case.sources) {
            Ok(delta) => {
                let ok = delta == case.printed;
                report.flag(
                    format!("Delta ({}) matches the printed polynomial", case.name),
                    ok,
                    if ok { format!("{} terms", delta.len()) } else { format!("computed {delta}; printed {}", case.printed) },
                );
            }
            Err(e) => {
                report.flag(format!("Delta ({}) matches the printed polynomial", case.name), false, e.to_string());
            }
        }
        let audit = invariant_factor_audit(ring, &case.printed, &case.factors);
        report.flag(format!("Delta ({}) equals the product of its stated factors", case.name), audit.product_matches, "");
        let ok = audit.delta_prime == case.expected_prime;
        report.flag(format!("Delta' ({}) = {}", case.name, case.expected_prime), ok, format!("audited Delta' = {}", audit.delta_prime));
        for (f, inv) in case.factors.iter().zip(&audit.invariant) {
            if f.degree() > 0 {
                report.flag(format!("  factor {f}"), true, if *inv { "invariant" } else { "not invariant" });
            }
        }
    }

    let c = c1(1, 2, 3);
    let gram = &(&q1(2, 2) * &q1(3, 3)) - &(&q1(2, 3) * &q1(2, 3));
    report.flag("c123 does not divide q22 q33 - q23^2", !divides(&c, &gram), "");
    report.flag("q22 q33 - q23^2 does not divide c123", !divides(&gram, &c), "");
    let cases = appendix_cases();
    report.flag("c123 divides the second Delta", divides(&c, &cases[1].printed), "");
    report.flag("q22 q33 - q23^2 divides the third Delta", divides(&gram, &cases[2].printed), "");
    report
}
