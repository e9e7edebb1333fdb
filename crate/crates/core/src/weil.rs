//! The named operators of the semi-infinite Weil complex W(g), its
//! differentials, the two topological structures, and the invariant operators
//! of the sl₂ case.
//!
//! Sums over an orthonormal basis for the Killing form are written as Casimir
//! contractions `Σ_a A^{u_a} B^{u^a}` over dual pairs, which keeps every
//! coefficient rational. The nine sl₂ invariant operators are written in
//! basis-free form with constants fixed by the root basis `(x, y, h)`.

use crate::engine::{circle, derivative, wick, wick_chain};
use crate::expr::{Expr, Letter, Species};
use crate::lie::{DualPairs, LieAlgebra, LieError, Vector};
use crate::rational::{q, qi, Q};
use crate::report::Report;
use crate::sample;
use crate::text::OperatorLookup;
use num::{One, Zero};
use rand::Rng;

/// A generator letter with no derivatives.
pub fn generator(species: Species, index: usize) -> Expr {
    Expr::letter(Letter::new(species, index, 0))
}

/// `∂ᵏ` of a generator.
pub fn generator_d(species: Species, index: usize, k: u32) -> Expr {
    Expr::letter(Letter::new(species, index, k))
}

/// `Σᵢ vᵢ gᵢ` for a coefficient vector `v`.
pub fn along(species: Species, v: &Vector) -> Expr {
    let mut out = Expr::zero();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out.add_scaled(&generator(species, i), c);
        }
    }
    out
}

/// The four operators `(L, F, J, G)` of a topological structure.
#[derive(Clone, Debug)]
pub struct Tva {
    pub l: Expr,
    pub f: Expr,
    pub j: Expr,
    pub g: Expr,
}

/// Which of the two topological structures to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvaKind {
    Standard,
    Twisted,
}

/// Every named operator, built from a semisimple presentation.
#[derive(Clone, Debug)]
pub struct OperatorTable {
    pub lie: LieAlgebra,
    pub pairs: DualPairs,
    pub theta_e: Vec<Expr>,
    pub theta_s: Vec<Expr>,
    pub theta_w: Vec<Expr>,
    pub j: Expr,
    pub k: Expr,
    pub d: Expr,
    pub omega_e: Expr,
    pub omega_s: Expr,
    pub omega_w: Expr,
    pub l_s: Expr,
    pub c_corr: Expr,
    pub l: Expr,
    pub h: Expr,
    pub standard: Tva,
    pub twisted: Tva,
    pub v_h: Expr,
    pub v_x: Expr,
    pub v_y: Expr,
    pub k_op: Expr,
    pub q_beta_b: Expr,
    pub c_beta_gamma_b: Expr,
    pub c_gamma_b_b: Expr,
    pub c_beta_b_b: Expr,
    pub c_b_b_b: Expr,
}

fn combine(vs: &[Expr], coeffs: &Vector) -> Expr {
    let mut out = Expr::zero();
    for (e, c) in vs.iter().zip(coeffs) {
        if !c.is_zero() {
            out.add_scaled(e, c);
        }
    }
    out
}

impl OperatorTable {
    pub fn build(lie: &LieAlgebra) -> Result<Self, LieError> {
        let pairs = lie.dual_pairs()?;
        let n = lie.dim();
        let br = |a: &Vector, b: &Vector| lie.bracket(a, b).expect("dimensions agree");
        let (b, c, beta, gamma) = (Species::B, Species::C, Species::Beta, Species::Gamma);

        let theta_e: Vec<Expr> = (0..n)
            .map(|i| {
                let xi = lie.basis(i);
                let terms: Vec<Expr> = (0..n).map(|j| wick(&along(b, &br(&xi, &lie.basis(j))), &generator(c, j))).collect();
                Expr::sum(&terms)
            })
            .collect();
        let theta_s: Vec<Expr> = (0..n)
            .map(|i| {
                let xi = lie.basis(i);
                let terms: Vec<Expr> = (0..n).map(|j| wick(&along(beta, &br(&xi, &lie.basis(j))), &generator(gamma, j))).collect();
                Expr::sum(&terms).neg()
            })
            .collect();
        let theta_w: Vec<Expr> = (0..n).map(|i| &theta_e[i] + &theta_s[i]).collect();

        let half = q(1, 2);
        let j_op = Expr::sum(&(0..n).map(|i| wick(&(&theta_s[i] + &theta_e[i].scaled(&half)), &generator(c, i))).collect::<Vec<_>>());
        let k_op = Expr::sum(&(0..n).map(|i| wick(&generator(gamma, i), &generator(b, i))).collect::<Vec<_>>());
        let d_op = &j_op + &k_op;

        let omega_e = Expr::sum(&(0..n).map(|i| wick(&generator(b, i), &generator_d(c, i, 1))).collect::<Vec<_>>()).neg();
        let omega_s = Expr::sum(&(0..n).map(|i| wick(&generator(beta, i), &generator_d(gamma, i, 1))).collect::<Vec<_>>());
        let omega_w = &omega_e + &omega_s;

        let casimir =
            |f: &dyn Fn(&Vector, &Vector) -> Expr| -> Expr { Expr::sum(&pairs.pairs.iter().map(|(u, w)| f(u, w)).collect::<Vec<_>>()) };
        let ts = |v: &Vector| combine(&theta_s, v);
        let te = |v: &Vector| combine(&theta_e, v);
        let tw = |v: &Vector| combine(&theta_w, v);

        let l_s = casimir(&|u, w| wick(&ts(u), &ts(w))).neg();
        let c_corr = casimir(&|u, w| {
            let terms: Vec<Expr> = (0..n)
                .map(|j| {
                    let phi = lie.coadjoint(w, &lie.basis(j)).expect("dimensions agree");
                    wick_chain(&[&along(b, u), &generator(b, j), &along(gamma, &phi)])
                })
                .collect();
            Expr::sum(&terms)
        });
        let l = &(&omega_s - &l_s) + &c_corr;
        let h = casimir(&|u, w| wick(&ts(u), &along(b, w)));

        let f_op = Expr::sum(&(0..n).map(|i| wick(&generator(b, i), &generator(c, i))).collect::<Vec<_>>()).neg();
        let standard = Tva {
            l: &omega_s + &omega_e,
            f: f_op.clone(),
            j: Expr::sum(&(0..n).map(|i| wick(&generator(c, i), &generator(beta, i))).collect::<Vec<_>>()),
            g: Expr::sum(&(0..n).map(|i| wick(&generator(b, i), &generator_d(gamma, i, 1))).collect::<Vec<_>>()),
        };
        let twisted = Tva {
            l: &(&casimir(&|u, w| wick(&ts(u), &ts(w))).neg() - &casimir(&|u, w| wick(&tw(u), &tw(w)))) + &omega_e,
            f: f_op,
            j: j_op.clone(),
            g: casimir(&|u, w| wick(&(&ts(u).scaled(&qi(2)) + &te(u)), &along(b, w))).neg(),
        };

        let kinv = lie.killing_inverse.as_ref().ok_or(LieError::SingularKilling)?;
        let v_h = Expr::sum(&(0..n).map(|i| wick(&generator(beta, i), &generator(gamma, i))).collect::<Vec<_>>());
        let mut v_x = Expr::zero();
        let mut v_y = Expr::zero();
        for i in 0..n {
            for j in 0..n {
                if !lie.killing[i][j].is_zero() {
                    v_x.add_scaled(&wick(&generator(gamma, i), &generator(gamma, j)), &(&lie.killing[i][j] * q(1, 16)));
                }
                if !kinv[i][j].is_zero() {
                    v_y.add_scaled(&wick(&generator(beta, i), &generator(beta, j)), &(&kinv[i][j] * qi(-4)));
                }
            }
        }
        let q_beta_b = casimir(&|u, w| wick(&along(beta, u), &along(b, w))).scaled(&qi(8));
        let c_beta_gamma_b = h.scaled(&qi(-4));
        let triple = |first: Species| -> Expr {
            let mut out = Expr::zero();
            for (ua, wa) in &pairs.pairs {
                for (ub, wb) in &pairs.pairs {
                    let t = wick_chain(&[&along(first, ua), &along(b, ub), &along(b, &br(wa, wb))]);
                    out = &out + &t;
                }
            }
            out
        };
        let c_beta_b_b = triple(beta).scaled(&qi(-8));
        let c_b_b_b = triple(b).scaled(&q(-8, 3));

        Ok(OperatorTable {
            lie: lie.clone(),
            pairs,
            theta_e,
            theta_s,
            theta_w,
            j: j_op,
            k: k_op.clone(),
            d: d_op,
            omega_e,
            omega_s,
            omega_w,
            l_s,
            c_corr: c_corr.clone(),
            l,
            h,
            standard,
            twisted,
            v_h,
            v_x,
            v_y,
            k_op,
            q_beta_b,
            c_beta_gamma_b,
            c_gamma_b_b: c_corr,
            c_beta_b_b,
            c_b_b_b,
        })
    }

    /// The sl₂ table in the root basis, built once per process.
    pub fn sl2() -> &'static OperatorTable {
        static TABLE: std::sync::OnceLock<OperatorTable> = std::sync::OnceLock::new();
        TABLE.get_or_init(|| OperatorTable::build(&LieAlgebra::sl2()).expect("sl2 is semisimple"))
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn theta_w_of(&self, v: &Vector) -> Expr {
        combine(&self.theta_w, v)
    }

    /// Names accepted by [`OperatorTable::get`], in a fixed order.
    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        for kind in ["theta_E", "theta_S", "theta_W"] {
            for l in &self.lie.labels {
                out.push(format!("{kind}_{l}"));
            }
        }
        for s in [
            "J",
            "K",
            "D",
            "omega_E",
            "omega_S",
            "omega_W",
            "L_S",
            "C_corr",
            "L",
            "H",
            "L_std",
            "F_std",
            "J_std",
            "G_std",
            "L_tw",
            "F_tw",
            "J_tw",
            "G_tw",
            "v_h",
            "v_x",
            "v_y",
            "K_op",
            "Q_beta_b",
            "C_beta_gamma_b",
            "C_gamma_b_b",
            "C_beta_b_b",
            "C_b_b_b",
        ] {
            out.push(s.to_string());
        }
        out
    }

    /// Looks up an operator by name (see [`OperatorTable::names`]).
    pub fn get(&self, name: &str) -> Option<Expr> {
        for (prefix, list) in [("theta_E_", &self.theta_e), ("theta_S_", &self.theta_s), ("theta_W_", &self.theta_w)] {
            if let Some(label) = name.strip_prefix(prefix) {
                return self.lie.index_of(label).map(|i| list[i].clone());
            }
        }
        let e = match name {
            "J" => &self.j,
            "K" => &self.k,
            "D" => &self.d,
            "omega_E" => &self.omega_e,
            "omega_S" => &self.omega_s,
            "omega_W" => &self.omega_w,
            "L_S" => &self.l_s,
            "C_corr" => &self.c_corr,
            "L" => &self.l,
            "H" => &self.h,
            "L_std" => &self.standard.l,
            "F_std" => &self.standard.f,
            "J_std" => &self.standard.j,
            "G_std" => &self.standard.g,
            "L_tw" => &self.twisted.l,
            "F_tw" => &self.twisted.f,
            "J_tw" => &self.twisted.j,
            "G_tw" => &self.twisted.g,
            "v_h" => &self.v_h,
            "v_x" => &self.v_x,
            "v_y" => &self.v_y,
            "K_op" => &self.k_op,
            "Q_beta_b" => &self.q_beta_b,
            "C_beta_gamma_b" => &self.c_beta_gamma_b,
            "C_gamma_b_b" => &self.c_gamma_b_b,
            "C_beta_b_b" => &self.c_beta_b_b,
            "C_b_b_b" => &self.c_b_b_b,
            _ => return None,
        };
        Some(e.clone())
    }

    /// All generators `b, c, β, γ` without derivatives.
    pub fn generators(&self) -> Vec<Expr> {
        let mut out = Vec::new();
        for sp in Species::ALL {
            for i in 0..self.dim() {
                out.push(generator(sp, i));
            }
        }
        out
    }

    /// `b^ξ∘ₖa = 0` for all basis ξ and `0 ≤ k ≤ wt(a)+1`.
    pub fn is_horizontal(&self, a: &Expr) -> bool {
        let top = a.max_weight() + 1;
        (0..self.dim()).all(|i| (0..=top).all(|k| circle(&generator(Species::B, i), a, k).is_zero()))
    }

    /// `Θ^ξ_W∘ₖa = 0` for all basis ξ and `0 ≤ k ≤ wt(a)+1`.
    pub fn is_invariant(&self, a: &Expr) -> bool {
        self.invariance_witness(a).is_none()
    }

    /// First `(ξ, k, Θ^ξ_W∘ₖa)` with a nonzero result.
    pub fn invariance_witness(&self, a: &Expr) -> Option<(usize, i64, Expr)> {
        let top = a.max_weight() + 1;
        for i in 0..self.dim() {
            for k in 0..=top {
                let r = circle(&self.theta_w[i], a, k);
                if !r.is_zero() {
                    return Some((i, k, r));
                }
            }
        }
        None
    }

    pub fn is_basic(&self, a: &Expr) -> bool {
        self.is_horizontal(a) && self.is_invariant(a)
    }

    /// `op∘ₖtarget`.
    pub fn apply_mode(&self, op: &Expr, k: u32, target: &Expr) -> Expr {
        circle(op, target, k as i64)
    }

    /// `J(0)a`.
    pub fn j0(&self, a: &Expr) -> Expr {
        circle(&self.j, a, 0)
    }

    /// `K(0)a`.
    pub fn k0(&self, a: &Expr) -> Expr {
        circle(&self.k, a, 0)
    }

    /// `D(0)a`.
    pub fn d0(&self, a: &Expr) -> Expr {
        circle(&self.d, a, 0)
    }
}

impl OperatorLookup for OperatorTable {
    fn lookup(&self, name: &str) -> Option<Expr> {
        self.get(name)
    }
}

/// Records one check per pole order comparing `a(z)b(w)` with the expected
/// singular part `[(n, aₙ)]`.
pub fn check_ope(report: &mut Report, name: &str, a: &Expr, b: &Expr, expected: &[(u32, Expr)]) -> bool {
    let top = (a.max_weight() + b.max_weight()).max(0) as u32;
    let top = expected.iter().map(|(n, _)| n + 1).max().unwrap_or(0).max(top);
    let mut ok = true;
    let mut any = false;
    for n in (0..top).rev() {
        let lhs = circle(a, b, n as i64);
        let rhs = expected.iter().filter(|(m, _)| *m == n).map(|(_, e)| e.clone()).fold(Expr::zero(), |x, y| x + y);
        if lhs.is_zero() && rhs.is_zero() {
            continue;
        }
        any = true;
        ok &= report.eq(format!("{name} ∘{n}"), lhs, rhs);
    }
    if !any {
        report.eq(format!("{name} ∼ 0"), Expr::zero(), Expr::zero());
    }
    ok
}

/// The DVA structure: Θ–Θ and Θ–b OPEs, `D(0)` on `b` and `Θ`, and the
/// nilpotency and anticommutation of `J(0)`, `K(0)`, `D(0)`.
///
/// Zero modes of odd fields are odd derivations of every circle product, so
/// their squares and anticommutators are derivations too and vanish as soon
/// as they vanish on generators. A few random composite elements are checked
/// as well.
pub fn verify_dva_structure(t: &OperatorTable, seed: u64) -> Report {
    let mut r = Report::new("dva").with_seed(seed);
    let n = t.dim();
    let lie = &t.lie;
    for i in 0..n {
        for j in 0..n {
            let (li, lj) = (&lie.labels[i], &lie.labels[j]);
            let bracket = lie.bracket(&lie.basis(i), &lie.basis(j)).expect("dimensions agree");
            check_ope(&mut r, &format!("Θ^{li}_W Θ^{lj}_W"), &t.theta_w[i], &t.theta_w[j], &[(0, t.theta_w_of(&bracket))]);
            check_ope(&mut r, &format!("Θ^{li}_W b^{lj}"), &t.theta_w[i], &generator(Species::B, j), &[(0, along(Species::B, &bracket))]);
        }
        let li = &lie.labels[i];
        r.eq(format!("D(0) b^{li} = Θ^{li}_W"), t.d0(&generator(Species::B, i)), t.theta_w[i].clone());
        r.eq(format!("D(0) Θ^{li}_W = 0"), t.d0(&t.theta_w[i]), Expr::zero());
    }
    let mut targets: Vec<(String, Expr)> = t.generators().into_iter().map(|g| (format!("{g}"), g)).collect();
    let mut rng = sample::rng(seed);
    for _ in 0..4 {
        let w = rng.gen_range(1..=2);
        let e = sample::homogeneous_parity(&mut rng, n, w, 3, 2);
        targets.push((format!("random {e}"), e));
    }
    for (name, g) in &targets {
        let j0 = t.j0(g);
        let k0 = t.k0(g);
        r.eq(format!("J(0)² {name} = 0"), t.j0(&j0), Expr::zero());
        r.eq(format!("K(0)² {name} = 0"), t.k0(&k0), Expr::zero());
        r.eq(format!("D(0)² {name} = 0"), t.d0(&t.d0(g)), Expr::zero());
        r.eq(format!("[K(0), J(0)] {name} = 0"), &t.k0(&j0) + &t.j0(&k0), Expr::zero());
    }
    r
}

/// The identities defining a topological vertex algebra, plus commutation
/// with every `Θ^ξ_W` for the twisted structure.
pub fn verify_tva(t: &OperatorTable, kind: TvaKind) -> Report {
    let (name, q4) = match kind {
        TvaKind::Standard => ("tva-standard", &t.standard),
        TvaKind::Twisted => ("tva-twisted", &t.twisted),
    };
    let mut r = Report::new(name);
    let Tva { l, f, j, g } = q4;
    check_ope(&mut r, "L L", l, l, &[(1, l.scaled(&qi(2))), (0, derivative(l))]);
    r.eq("L ∘3 L = 0 (central charge zero)", circle(l, l, 3), Expr::zero());
    r.eq("L ∘0 F = ∂F", circle(l, f, 0), derivative(f));
    r.eq("L ∘1 F = F", circle(l, f, 1), f.clone());
    r.eq("L ∘2 F = −dim g (F is quasi-primary only up to this anomaly)", circle(l, f, 2), Expr::scalar(qi(-(t.dim() as i64))));
    r.flag("F even", f.parity() == Ok(Some(false)), "");
    for (x, nm, w) in [(j, "J", 1), (g, "G", 2)] {
        r.eq(format!("L ∘0 {nm} = ∂{nm}"), circle(l, x, 0), derivative(x));
        r.eq(format!("L ∘1 {nm} = {w}{nm}"), circle(l, x, 1), x.scaled(&qi(w)));
        for k in 2..=(w + 1) {
            r.eq(format!("L ∘{k} {nm} = 0"), circle(l, x, k), Expr::zero());
        }
        r.flag(format!("{nm} odd"), x.parity() == Ok(Some(true)), "");
    }
    check_ope(&mut r, "J J", j, j, &[]);
    check_ope(&mut r, "G G", g, g, &[]);
    r.eq("J(0) G = L", circle(j, g, 0), l.clone());
    r.eq("F(0) J = J", circle(f, j, 0), j.clone());
    r.eq("F(0) G = −G", circle(f, g, 0), g.neg());
    if kind == TvaKind::Standard {
        r.eq("J(0)(−G) = −L (opposite sign convention for G)", circle(j, &g.neg(), 0), l.neg());
    }
    if kind == TvaKind::Twisted {
        for (i, th) in t.theta_w.iter().enumerate() {
            let lab = &t.lie.labels[i];
            for (x, nm) in [(l, "L"), (f, "F"), (j, "J"), (g, "G")] {
                check_ope(&mut r, &format!("Θ^{lab}_W {nm}"), th, x, &[]);
            }
        }
    }
    r
}

/// `(L − ω_W)∘ₖa = D(0)(H∘ₖa) + H∘ₖ(D(0)a)`, the operator identity
/// `(L − ω_W)∘ₖ = [D(0), H∘ₖ]` evaluated on `a`. When `D(0)a = 0` the second
/// term drops and the identity is also recorded in the form `D(0)(H∘ₖa)`.
pub fn verify_l_coboundary_identity(t: &OperatorTable, a: &Expr, k: u32, label: &str) -> Report {
    let mut r = Report::new("l-coboundary");
    let lhs = circle(&(&t.l - &t.omega_w), a, k as i64);
    let da = t.d0(a);
    let d_of_h = t.d0(&circle(&t.h, a, k as i64));
    let h_of_d = circle(&t.h, &da, k as i64);
    r.eq(format!("(L − ω_W) ∘{k} {label} = [D(0), H ∘{k}] {label}"), lhs.clone(), &d_of_h + &h_of_d);
    if da.is_zero() {
        r.eq(format!("(L − ω_W) ∘{k} {label} = D(0)(H ∘{k} {label})"), lhs, d_of_h);
    }
    r
}

/// The eight generators of the subalgebra C together with their names, in the
/// order `v^h, v^x, v^y, K, Q^{βb}, C^{γbb}, C^{βbb}, C^{bbb}`.
pub fn c_generators(t: &OperatorTable) -> Vec<(&'static str, Expr)> {
    vec![
        ("v^h", t.v_h.clone()),
        ("v^x", t.v_x.clone()),
        ("v^y", t.v_y.clone()),
        ("K", t.k_op.clone()),
        ("Q^{βb}", t.q_beta_b.clone()),
        ("C^{γbb}", t.c_gamma_b_b.clone()),
        ("C^{βbb}", t.c_beta_b_b.clone()),
        ("C^{bbb}", t.c_b_b_b.clone()),
    ]
}

/// The Lie superalgebra s: basis `h, x, y, m₁, m₋₁, n₁, n₋₁, n₀` (indices in
/// the order of [`c_generators`]) with its brackets and the form B = −(3/8)κ on
/// the sl₂ part.
pub struct SuperAlgebra {
    pub labels: [&'static str; 8],
    pub odd: [bool; 8],
    /// `bracket[u][v]` as a sparse list `(index, coefficient)`.
    pub bracket: Vec<Vec<Vec<(usize, Q)>>>,
    pub form: Vec<Vec<Q>>,
}

impl SuperAlgebra {
    /// s as the extension of sl₂ by the odd module M and then by N.
    /// `m_action` is the sign of `[x, m₋₁] = ±m₁` and `[y, m₁] = ±m₋₁`:
    /// `+1` reproduces the brackets as printed, `−1` is the structure realised
    /// by the OPEs of K and Q^{βb}.
    pub fn s(m_action: i64) -> Self {
        const H: usize = 0;
        const X: usize = 1;
        const Y: usize = 2;
        const M1: usize = 3;
        const MM: usize = 4;
        const N1: usize = 5;
        const NM: usize = 6;
        const N0: usize = 7;
        let odd = [false, false, false, true, true, false, false, true];
        let mut br = vec![vec![Vec::new(); 8]; 8];
        let mut set = |u: usize, v: usize, w: usize, c: i64| {
            br[u][v] = vec![(w, qi(c))];
            let s = if odd[u] && odd[v] { 1 } else { -1 };
            br[v][u] = vec![(w, qi(s * c))];
        };
        set(H, X, X, 2);
        set(H, Y, Y, -2);
        set(X, Y, H, 1);
        set(H, MM, MM, -1);
        set(H, M1, M1, 1);
        set(X, MM, M1, m_action);
        set(Y, M1, MM, m_action);
        set(H, NM, NM, -1);
        set(H, N1, N1, 1);
        set(X, NM, N1, 1);
        set(Y, N1, NM, 1);
        set(M1, NM, N0, -3);
        set(MM, N1, N0, -3);
        let mut form = vec![vec![Q::zero(); 8]; 8];
        form[H][H] = qi(-3);
        form[X][Y] = q(-3, 2);
        form[Y][X] = q(-3, 2);
        SuperAlgebra { labels: ["h", "x", "y", "m1", "m-1", "n1", "n-1", "n0"], odd, bracket: br, form }
    }

    fn apply(&self, u: usize, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); 8];
        for (w, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, d) in &self.bracket[u][w] {
                out[*k] += c * d;
            }
        }
        out
    }

    /// Basis triples `(u, v, w)` violating the super Jacobi identity
    /// `[u,[v,w]] = [[u,v],w] + (−1)^{|u||v|}[v,[u,w]]`.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let unit = |i: usize| (0..8).map(|j| if i == j { Q::one() } else { Q::zero() }).collect::<Vec<_>>();
        let mut out = Vec::new();
        for u in 0..8 {
            for v in 0..8 {
                for w in 0..8 {
                    let lhs = self.apply(u, &self.apply(v, &unit(w)));
                    let uv = self.apply(u, &unit(v));
                    let mut rhs = vec![Q::zero(); 8];
                    for (k, c) in uv.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let t = self.apply(k, &unit(w));
                        for i in 0..8 {
                            rhs[i] += c * &t[i];
                        }
                    }
                    let s = if self.odd[u] && self.odd[v] { qi(-1) } else { qi(1) };
                    let t = self.apply(v, &self.apply(u, &unit(w)));
                    for i in 0..8 {
                        rhs[i] += &s * &t[i];
                    }
                    if lhs != rhs {
                        out.push((u, v, w));
                    }
                }
            }
        }
        out
    }
}

/// Checks that `X^u ↦` the C-generators is a current-algebra map for s:
/// `X^u(z)X^v(w) ∼ B(u,v)(z−w)⁻² + X^{[u,v]}(w)(z−w)⁻¹` on all 64 ordered
/// pairs, with the M-action sign `m_action` (see [`SuperAlgebra::s`]).
pub fn verify_s_current_map(t: &OperatorTable, m_action: i64) -> Report {
    let mut r = Report::new("s-current-map");
    let s = SuperAlgebra::s(m_action);
    let violations = s.jacobi_violations();
    r.flag("s satisfies the super Jacobi identity", violations.is_empty(), format!("{} violating triples", violations.len()));
    let gens = c_generators(t);
    for u in 0..8 {
        for v in 0..8 {
            let mut expected = Vec::new();
            if !s.form[u][v].is_zero() {
                expected.push((1, Expr::scalar(s.form[u][v].clone())));
            }
            let mut first = Expr::zero();
            for (w, c) in &s.bracket[u][v] {
                first.add_scaled(&gens[*w].1, c);
            }
            if !first.is_zero() {
                expected.push((0, first));
            }
            check_ope(&mut r, &format!("X^{} X^{}", s.labels[u], s.labels[v]), &gens[u].1, &gens[v].1, &expected);
        }
    }
    r
}

/// Printed sl₂ formulas in the expression grammar, and the checks built on them.
pub mod sl2 {
    use super::*;
    use crate::text::{parse, parse_with};

    /// `(name, text)` of every sl₂ operator written out in the root basis.
    pub const PRINTED: &[(&str, &str)] = &[
        ("theta_W_x", "2 :beta[x] gamma[h]: - :beta[h] gamma[y]: - 2 :b[x] c[h]: + :b[h] c[y]:"),
        ("theta_W_y", "-2 :beta[y] gamma[h]: + :beta[h] gamma[x]: + 2 :b[y] c[h]: - :b[h] c[x]:"),
        ("theta_W_h", "-2 :beta[x] gamma[x]: + 2 :beta[y] gamma[y]: + 2 :b[x] c[x]: - 2 :b[y] c[y]:"),
        (
            "J",
            ":beta[h] gamma[x] c[y]: - :beta[h] gamma[y] c[x]: + 2 :beta[x] gamma[h] c[x]: - 2 :beta[x] gamma[x] c[h]: \
             - 2 :beta[y] gamma[h] c[y]: + 2 :beta[y] gamma[y] c[h]: - :b[h] c[x] c[y]: + 2 :b[x] c[x] c[h]: \
             - 2 :b[y] c[y] c[h]:",
        ),
        ("v_h", ":beta[h] gamma[h]: + :beta[x] gamma[x]: + :beta[y] gamma[y]:"),
        ("v_x", "1/2 (:gamma[h] gamma[h]: + :gamma[x] gamma[y]:)"),
        ("v_y", "-1/2 (:beta[h] beta[h]: + 4 :beta[x] beta[y]:)"),
        ("K_op", ":gamma[h] b[h]: + :gamma[x] b[x]: + :gamma[y] b[y]:"),
        ("Q_beta_b", ":beta[h] b[h]: + 2 :beta[x] b[y]: + 2 :beta[y] b[x]:"),
        (
            "C_beta_gamma_b",
            "-:beta[h] gamma[x] b[x]: + :beta[h] gamma[y] b[y]: - 2 :beta[x] gamma[h] b[y]: + :beta[x] gamma[x] b[h]: \
             + 2 :beta[y] gamma[h] b[x]: - :beta[y] gamma[y] b[h]:",
        ),
        ("C_gamma_b_b", "-:gamma[h] b[x] b[y]: + 1/2 :gamma[x] b[x] b[h]: - 1/2 :gamma[y] b[y] b[h]:"),
        ("C_beta_b_b", ":beta[h] b[x] b[y]: + :beta[x] b[y] b[h]: - :beta[y] b[x] b[h]:"),
        ("C_b_b_b", ":b[x] b[y] b[h]:"),
    ];

    /// `C̃ = :(∂β^h)b^xb^y: + :(∂β^x)b^yb^h: − :(∂β^y)b^xb^h:`.
    pub const C_TILDE: &str = ":d^1 beta[h] b[x] b[y]: + :d^1 beta[x] b[y] b[h]: - :d^1 beta[y] b[x] b[h]:";

    pub fn expr(t: &OperatorTable, text: &str) -> Expr {
        parse_with(text, &t.lie, t).unwrap_or_else(|e| panic!("built-in formula `{text}` does not parse: {e}"))
    }

    /// Built operators against the printed root-basis formulas.
    pub fn verify_printed_operators(t: &OperatorTable) -> Report {
        let mut r = Report::new("sl2-operators");
        for (name, text) in PRINTED {
            let printed = parse(text, &t.lie).expect("printed formula parses");
            r.eq(format!("{name} = printed formula"), t.get(name).expect("known operator"), printed);
        }
        r.eq("C_corr = C^{γbb}", t.c_corr.clone(), t.c_gamma_b_b.clone());
        r.eq("H = −¼ C^{βγb}", t.h.clone(), t.c_beta_gamma_b.scaled(&q(-1, 4)));
        r.eq("J + K = D", &t.j + &t.k, t.d.clone());
        r.eq("ω_W = ω_E + ω_S", t.omega_w.clone(), &t.omega_e + &t.omega_s);
        r.eq("J_tw = J", t.twisted.j.clone(), t.j.clone());
        r.eq(
            "L = C^{γbb} + 2:v^x v^y: + ½:v^h v^h: − ½∂v^h",
            t.l.clone(),
            expr(t, "@C_gamma_b_b + 2 :@v_x @v_y: + 1/2 :@v_h @v_h: - 1/2 d^1 @v_h"),
        );
        for (name, e) in c_generators(t) {
            r.flag(format!("{name} is basic"), t.is_basic(&e), "");
        }
        let w = t.invariance_witness(&t.c_beta_gamma_b);
        r.flag("C^{βγb} is horizontal", t.is_horizontal(&t.c_beta_gamma_b), "");
        r.flag("C^{βγb} is not invariant", w.is_some(), "");
        r.flag("1 is basic", t.is_basic(&Expr::one()), "");
        r
    }

    /// OPE tables among the C-generators, the J-tables, the relations among
    /// the generators of C, and the statements about C^{βγb}.
    pub fn verify_c_tables(t: &OperatorTable) -> Report {
        let mut r = Report::new("c-relations");
        let e = |s: &str| expr(t, s);
        let (vh, vx, vy) = (&t.v_h, &t.v_x, &t.v_y);
        let (k, qb) = (&t.k_op, &t.q_beta_b);
        let (cg, cb, c3) = (&t.c_gamma_b_b, &t.c_beta_b_b, &t.c_b_b_b);
        let one = |c: i64| Expr::scalar(qi(c));

        check_ope(&mut r, "v^h v^h", vh, vh, &[(1, one(-3))]);
        check_ope(&mut r, "v^h v^x", vh, vx, &[(0, vx.scaled(&qi(2)))]);
        check_ope(&mut r, "v^h v^y", vh, vy, &[(0, vy.scaled(&qi(-2)))]);
        check_ope(&mut r, "v^x v^y", vx, vy, &[(1, Expr::scalar(q(-3, 2))), (0, vh.clone())]);
        check_ope(&mut r, "v^x v^x", vx, vx, &[]);
        check_ope(&mut r, "v^y v^y", vy, vy, &[]);

        check_ope(&mut r, "K Q^{βb}", k, qb, &[]);
        check_ope(&mut r, "v^h K", vh, k, &[(0, k.clone())]);
        check_ope(&mut r, "v^x K", vx, k, &[]);
        check_ope(&mut r, "v^y K", vy, k, &[(0, qb.neg())]);
        check_ope(&mut r, "v^h Q^{βb}", vh, qb, &[(0, qb.neg())]);
        check_ope(&mut r, "v^x Q^{βb}", vx, qb, &[(0, k.neg())]);
        check_ope(&mut r, "v^y Q^{βb}", vy, qb, &[]);
        check_ope(&mut r, "v^h C^{γbb}", vh, cg, &[(0, cg.clone())]);
        check_ope(&mut r, "v^x C^{γbb}", vx, cg, &[]);
        check_ope(&mut r, "v^y C^{γbb}", vy, cg, &[(0, cb.clone())]);
        check_ope(&mut r, "v^h C^{βbb}", vh, cb, &[(0, cb.neg())]);
        check_ope(&mut r, "v^x C^{βbb}", vx, cb, &[(0, cg.clone())]);
        check_ope(&mut r, "v^y C^{βbb}", vy, cb, &[]);
        check_ope(&mut r, "K C^{βbb}", k, cb, &[(0, c3.scaled(&qi(-3)))]);
        check_ope(&mut r, "Q^{βb} C^{γbb}", qb, cg, &[(0, c3.scaled(&qi(-3)))]);
        check_ope(&mut r, "C^{γbb} C^{βbb}", cg, cb, &[]);
        check_ope(&mut r, "C^{γbb} C^{γbb}", cg, cg, &[]);
        check_ope(&mut r, "C^{βbb} C^{βbb}", cb, cb, &[]);
        for (name, g) in c_generators(t) {
            check_ope(&mut r, &format!("C^{{bbb}} {name}"), c3, &g, &[]);
        }

        r.eq(
            ":Q^{βb} C^{γbb}: + :v^h C^{bbb}: + ∂C^{bbb} = 0",
            e(":@Q_beta_b @C_gamma_b_b: + :@v_h @C_b_b_b: + d^1 @C_b_b_b"),
            Expr::zero(),
        );
        r.eq(":K C^{γbb}: + 2:v^x C^{bbb}: = 0", e(":@K_op @C_gamma_b_b: + 2 :@v_x @C_b_b_b:"), Expr::zero());
        r.eq(":Q^{βb} C^{βbb}: + 2:v^y C^{bbb}: = 0", e(":@Q_beta_b @C_beta_b_b: + 2 :@v_y @C_b_b_b:"), Expr::zero());
        r.eq(":K C^{βbb}: − :v^h C^{bbb}: + ∂C^{bbb} = 0", e(":@K_op @C_beta_b_b: - :@v_h @C_b_b_b: + d^1 @C_b_b_b"), Expr::zero());
        r.eq(
            ":v^y C^{γbb}: − ½:v^h C^{βbb}: + ¼:Q^{βb} C^{βγb}: − ½∂C^{βbb} − C̃ = 0",
            &e(":@v_y @C_gamma_b_b: - 1/2 :@v_h @C_beta_b_b: + 1/4 :@Q_beta_b @C_beta_gamma_b: - 1/2 d^1 @C_beta_b_b") - &e(C_TILDE),
            Expr::zero(),
        );

        let j = &t.j;
        check_ope(&mut r, "J K", j, k, &[]);
        check_ope(&mut r, "J Q^{βb}", j, qb, &[]);
        for (nm, v) in [("v^h", vh), ("v^x", vx), ("v^y", vy)] {
            check_ope(&mut r, &format!("J {nm}"), j, v, &[]);
        }
        check_ope(&mut r, "J C^{γbb}", j, cg, &[(1, k.clone()), (0, e(":@v_h @K_op: - 2 :@v_x @Q_beta_b: - d^1 @K_op"))]);
        check_ope(&mut r, "J C^{βbb}", j, cb, &[(1, qb.neg()), (0, e("2 :@v_y @K_op: + :@v_h @Q_beta_b: + d^1 @Q_beta_b"))]);
        check_ope(&mut r, "J C^{bbb}", j, c3, &[(0, e(":@K_op @Q_beta_b:").neg())]);

        for i in 0..t.dim() {
            let lab = &t.lie.labels[i];
            check_ope(
                &mut r,
                &format!("Θ^{lab}_W C^{{βγb}}"),
                &t.theta_w[i],
                &t.c_beta_gamma_b,
                &[(1, generator(Species::B, i).scaled(&qi(4)))],
            );
        }
        r.eq(
            "J(0) C^{βγb} = −2:v^h v^h: − 8:v^x v^y: + 4ω_W + 2∂v^h",
            t.j0(&t.c_beta_gamma_b),
            e("-2 :@v_h @v_h: - 8 :@v_x @v_y: + 4 @omega_W + 2 d^1 @v_h"),
        );
        r.eq("F_tw ∘0 C^{βγb} = −C^{βγb}", circle(&t.twisted.f, &t.c_beta_gamma_b, 0), t.c_beta_gamma_b.neg());
        r
    }
}
