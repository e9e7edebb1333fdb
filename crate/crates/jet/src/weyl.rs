//! Weyl's generators `q_ij`, `c_klm` of the sl₂-invariants of several adjoint
//! copies and the relations among them.

use crate::poly::{determinant, JetPoly, Var};
use std::collections::BTreeMap;
use voaforge_core::rational::{format_q, q};
use voaforge_core::report::Report;

/// `q_ij = a^h_i a^h_j + 2a^x_i a^y_j + 2a^x_j a^y_i` (0-based copies).
pub fn q_poly(i: usize, j: usize) -> JetPoly {
    let a = |copy, comp| JetPoly::var(Var::adjoint(copy, comp, 0));
    let two = JetPoly::integer(2);
    &(&a(i, 0) * &a(j, 0)) + &(&two * &(&(&a(i, 1) * &a(j, 2)) + &(&a(j, 1) * &a(i, 2))))
}

/// `c_klm = det[[a^h_k, a^x_k, a^y_k], [a^h_l, …], [a^h_m, …]]`; alternating,
/// hence zero on repeated indices.
pub fn c_poly(k: usize, l: usize, m: usize) -> JetPoly {
    let row = |copy| (0..3).map(|comp| JetPoly::var(Var::adjoint(copy, comp, 0))).collect::<Vec<_>>();
    determinant(&[row(k), row(l), row(m)])
}

/// One named generator.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub label: String,
    pub poly: JetPoly,
}

/// All `q_ij` (`i ≤ j`) and `c_klm` (`k < l < m`) for a number of copies.
#[derive(Clone, Debug)]
pub struct WeylGeneratorSet {
    pub copies: usize,
    quadrics: BTreeMap<(usize, usize), JetPoly>,
    cubics: BTreeMap<(usize, usize, usize), JetPoly>,
}

impl WeylGeneratorSet {
    pub fn q(&self, i: usize, j: usize) -> &JetPoly {
        &self.quadrics[&(i.min(j), i.max(j))]
    }

    /// `c_klm` for any index triple, using the alternating property.
    pub fn c(&self, k: usize, l: usize, m: usize) -> JetPoly {
        let mut idx = [k, l, m];
        let mut odd = false;
        for a in 0..3 {
            for b in 0..2 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    odd = !odd;
                }
            }
        }
        match self.cubics.get(&(idx[0], idx[1], idx[2])) {
            Some(p) if odd => -p,
            Some(p) => p.clone(),
            None => JetPoly::zero(),
        }
    }

    /// Generators labelled with 1-based indices, quadrics first.
    pub fn generators(&self) -> Vec<Generator> {
        let quad = self.quadrics.iter().map(|((i, j), p)| Generator { label: format!("q{}{}", i + 1, j + 1), poly: p.clone() });
        let cub = self.cubics.iter().map(|((k, l, m), p)| Generator { label: format!("c{}{}{}", k + 1, l + 1, m + 1), poly: p.clone() });
        quad.chain(cub).collect()
    }

    /// `q_ij c_klm − q_kj c_ilm + q_lj c_ikm − q_mj c_ikl`, the alternating sum
    /// over `(i, k, l, m)`.
    pub fn linear_relation(&self, [i, j, k, l, m]: [usize; 5]) -> JetPoly {
        let terms = [
            self.q(i, j) * &self.c(k, l, m),
            self.q(k, j) * &self.c(i, l, m),
            self.q(l, j) * &self.c(i, k, m),
            self.q(m, j) * &self.c(i, k, l),
        ];
        &(&(&terms[0] - &terms[1]) + &terms[2]) - &terms[3]
    }

    /// `q_ij c_klm − q_kj c_ilm + q_lj c_kim − q_mj c_kli` with the index order
    /// `c_kim` in the third term, which differs from the alternating sum by
    /// `2 q_lj c_kim`.
    pub fn linear_relation_kim(&self, [i, j, k, l, m]: [usize; 5]) -> JetPoly {
        let terms = [
            self.q(i, j) * &self.c(k, l, m),
            self.q(k, j) * &self.c(i, l, m),
            self.q(l, j) * &self.c(k, i, m),
            self.q(m, j) * &self.c(k, l, i),
        ];
        &(&(&terms[0] - &terms[1]) + &terms[2]) - &terms[3]
    }

    fn gram(&self, rows: &[usize], cols: &[usize]) -> JetPoly {
        let matrix: Vec<Vec<JetPoly>> = rows.iter().map(|&r| cols.iter().map(|&c| self.q(r, c).clone()).collect()).collect();
        determinant(&matrix)
    }

    /// `c_ijk c_lmn + (1/4)·det[q_{(ijk),(lmn)}]`.
    pub fn cubic_relation(&self, [i, j, k, l, m, n]: [usize; 6]) -> JetPoly {
        let mut out = &self.c(i, j, k) * &self.c(l, m, n);
        out.add_scaled(&self.gram(&[i, j, k], &[l, m, n]), &q(1, 4));
        out
    }

    /// `det[q_{(ijkl),(mnrs)}]`.
    pub fn quartic_relation(&self, [i, j, k, l, m, n, r, s]: [usize; 8]) -> JetPoly {
        self.gram(&[i, j, k, l], &[m, n, r, s])
    }
}

/// Weyl's generators for `copies` adjoint copies.
pub fn weyl_generators(copies: usize) -> WeylGeneratorSet {
    let mut quadrics = BTreeMap::new();
    let mut cubics = BTreeMap::new();
    for i in 0..copies {
        for j in i..copies {
            quadrics.insert((i, j), q_poly(i, j));
        }
    }
    for k in 0..copies {
        for l in k + 1..copies {
            for m in l + 1..copies {
                cubics.insert((k, l, m), c_poly(k, l, m));
            }
        }
    }
    WeylGeneratorSet { copies, quadrics, cubics }
}

fn tuples<const N: usize>(bound: usize) -> impl Iterator<Item = [usize; N]> {
    let total = bound.pow(N as u32);
    (0..total).map(move |mut code| {
        let mut t = [0; N];
        for slot in t.iter_mut().rev() {
            *slot = code % bound;
            code /= bound;
        }
        t
    })
}

fn strictly_increasing(t: &[usize]) -> bool {
    t.windows(2).all(|w| w[0] < w[1])
}

fn record(report: &mut Report, identity: String, checked: usize, failures: Vec<String>) {
    let note = if failures.is_empty() {
        format!("{checked} index tuples, all zero")
    } else {
        format!("{} of {checked} nonzero; first: {}", failures.len(), failures[0])
    };
    report.flag(identity, failures.is_empty(), note);
}

/// Expands the linear, cubic and quartic relations for all indices below
/// `index_bound`. The linear and cubic families are checked on every tuple.
/// The quartic determinant is alternating in its row and in its column
/// indices, and has two equal rows or columns whenever an index repeats, so
/// it is expanded on strictly increasing row and column tuples.
pub fn verify_weyl_relations(copies: usize, index_bound: usize) -> Report {
    let bound = index_bound.min(copies);
    let set = weyl_generators(copies);
    let mut report = Report::new("weyl-relations");

    let mut checked = 0;
    let mut failures = Vec::new();
    for t in tuples::<5>(bound) {
        checked += 1;
        let r = set.linear_relation(t);
        if !r.is_zero() {
            failures.push(format!("{t:?}: {r}"));
        }
    }
    record(&mut report, format!("q_ij c_klm - q_kj c_ilm + q_lj c_ikm - q_mj c_ikl = 0 ({copies} copies)"), checked, failures);
    let nonzero = tuples::<5>(bound).filter(|t| !set.linear_relation_kim(*t).is_zero()).count();
    report.flag(
        "third term written as q_lj c_kim is not alternating",
        true,
        format!("nonzero on {nonzero} of {} tuples, e.g. (1,1,2,1,3) gives 2 q_11 c_213", bound.pow(5)),
    );

    let mut checked = 0;
    let mut failures = Vec::new();
    for t in tuples::<6>(bound) {
        checked += 1;
        let r = set.cubic_relation(t);
        if !r.is_zero() {
            failures.push(format!("{t:?}: {r}"));
        }
    }
    record(&mut report, format!("c_ijk c_lmn + (1/4) det q = 0 ({copies} copies)"), checked, failures);

    let mut checked = 0;
    let mut failures = Vec::new();
    for t in tuples::<8>(bound).filter(|t| strictly_increasing(&t[..4]) && strictly_increasing(&t[4..])) {
        checked += 1;
        let r = set.quartic_relation(t);
        if !r.is_zero() {
            failures.push(format!("{t:?}: {r}"));
        }
    }
    record(&mut report, format!("4x4 determinant of q = 0 ({copies} copies, increasing tuples)"), checked, failures);

    if copies >= 3 {
        let mut wrong = &set.c(0, 1, 2) * &set.c(0, 1, 2);
        wrong.add_scaled(&set.gram(&[0, 1, 2], &[0, 1, 2]), &-q(1, 4));
        report.flag(
            "control: c_123^2 - (1/4) det q is nonzero",
            !wrong.is_zero(),
            format!("{} terms, leading coefficient {}", wrong.len(), wrong.leading().map_or("0".into(), |(_, c)| format_q(c))),
        );
    }
    if copies >= 4 {
        let minor = set.gram(&[0, 1, 2], &[0, 1, 2]);
        report.flag("control: 3x3 determinant of q is nonzero", !minor.is_zero(), "");
    }
    report
}
