//! Circle products, Wick products and derivatives of free-field vertex operators.
//!
//! Everything reduces to canonical monomials by structural recursion on the
//! length of the left factor:
//!
//! * letter ∘ₙ letter is a scalar read off the base tables;
//! * letter ∘ₙ monomial follows the non-commutative Wick formula, which for
//!   scalar letter-letter products removes one letter at a time;
//! * a composite left factor `:ℓ A:` in ∘ₙ is split by the right Wick formula
//!   `(:ab:)∘ₙc = Σᵢ (1/i!)[:(∂ⁱa)(b∘ₙ₊ᵢc): ± :(∂ⁱb)(a∘ₙ₊ᵢc):] ± Σⱼ b∘ₙ₋₁₋ⱼ(a∘ⱼc)`;
//! * a composite left factor in a Wick product is split by quasi-associativity.
//!
//! Results for monomial pairs are memoized in concurrent maps.

use crate::expr::{Expr, Letter, Monomial};
use crate::rational::{factorial, sign, Q};
use dashmap::DashMap;
use num::{One, Zero};
use std::sync::{Arc, OnceLock};

type WickKey = (Monomial, Monomial);
type CircleKey = (Monomial, Monomial, u32);

/// The rewriting engine. Cheap to share; all methods take `&self`.
pub struct Engine {
    memo: bool,
    wick_memo: DashMap<WickKey, Arc<Expr>>,
    circle_memo: DashMap<CircleKey, Arc<Expr>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

static GLOBAL: OnceLock<Engine> = OnceLock::new();

/// `a∘ₙb` for two letters with `n ≥ 0`, as a scalar multiple of the identity.
///
/// `(∂ᵏa)∘ₙ(∂ˡb)` vanishes unless `n = k + l`, where it equals `(−1)ᵏ (k+l)!`
/// times the residue of `a(z)b(w)`.
pub fn contraction(a: Letter, b: Letter, n: u32) -> Q {
    if !a.pairs_with(b) || n != a.deriv as u32 + b.deriv as u32 {
        return Q::zero();
    }
    sign(a.deriv % 2 == 1) * factorial(n) * Q::from_integer(a.species.base_pole().into())
}

fn any_pairing(a: &Monomial, b: &Monomial) -> bool {
    a.letters().iter().any(|x| b.letters().iter().any(|y| x.pairs_with(*y)))
}

/// `∂` of a single monomial (Leibniz rule, then re-sorting).
pub fn derivative_monomial(m: &Monomial) -> Expr {
    let mut out = Expr::zero();
    for i in 0..m.len() {
        let (s1, rest) = m.remove(i);
        if let Some((s2, res)) = rest.insert(m.letters()[i].d(1)) {
            out.add_term(res, sign(s1 ^ s2));
        }
    }
    out
}

/// `∂a`.
pub fn derivative(a: &Expr) -> Expr {
    let mut out = Expr::zero();
    for (m, c) in a.terms() {
        out.add_scaled(&derivative_monomial(m), c);
    }
    out
}

/// `∂ᵏa`.
pub fn derivative_n(a: &Expr, k: u32) -> Expr {
    let mut out = a.clone();
    for _ in 0..k {
        out = derivative(&out);
    }
    out
}

/// `:ℓ a:` for a letter ℓ: pure re-sorting.
pub fn wick_letter(l: Letter, a: &Expr) -> Expr {
    let mut out = Expr::zero();
    for (m, c) in a.terms() {
        if let Some((s, res)) = m.insert(l) {
            out.add_term(res, if s { -c.clone() } else { c.clone() });
        }
    }
    out
}

/// Product in the associated graded algebra: concatenation of letters with
/// Koszul signs and no contractions. On top letter-count components it agrees
/// with the Wick product.
pub fn classical_product(a: &Expr, b: &Expr) -> Expr {
    let mut out = Expr::zero();
    for (m, c) in a.terms() {
        for (n, d) in b.terms() {
            let mut seq: Vec<Letter> = m.letters().to_vec();
            seq.extend_from_slice(n.letters());
            out.add_scaled(&Expr::word(&seq), &(c * d));
        }
    }
    out
}

/// `ℓ∘ₖm` for a letter and a monomial, `k ≥ 0`.
pub fn circle_letter(l: Letter, m: &Monomial, k: u32) -> Expr {
    let mut out = Expr::zero();
    let mut odd_before = false;
    for (i, x) in m.letters().iter().enumerate() {
        let c = contraction(l, *x, k);
        if !c.is_zero() {
            let (_, rest) = m.remove(i);
            let s = l.is_odd() && odd_before;
            out.add_term(rest, if s { -c } else { c });
        }
        if x.is_odd() {
            odd_before = !odd_before;
        }
    }
    out
}

impl Engine {
    pub fn new() -> Self {
        Engine { memo: true, wick_memo: DashMap::new(), circle_memo: DashMap::new() }
    }

    /// An engine that recomputes everything; used to show results do not
    /// depend on the memo tables.
    pub fn unmemoized() -> Self {
        Engine { memo: false, ..Engine::new() }
    }

    /// Process-wide shared engine.
    pub fn global() -> &'static Engine {
        GLOBAL.get_or_init(Engine::new)
    }

    pub fn clear_memo(&self) {
        self.wick_memo.clear();
        self.circle_memo.clear();
    }

    pub fn memo_sizes(&self) -> (usize, usize) {
        (self.wick_memo.len(), self.circle_memo.len())
    }

    /// `:ab:`.
    pub fn wick(&self, a: &Expr, b: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in a.terms() {
            for (n, d) in b.terms() {
                let r = self.wick_mono(m, n);
                out.add_scaled(&r, &(c * d));
            }
        }
        out
    }

    /// `:a₁(:a₂(⋯ aₖ):):` for a list of factors.
    pub fn wick_chain(&self, factors: &[&Expr]) -> Expr {
        match factors.split_last() {
            None => Expr::one(),
            Some((last, init)) => {
                let mut acc = (*last).clone();
                for f in init.iter().rev() {
                    acc = self.wick(f, &acc);
                }
                acc
            }
        }
    }

    /// `a∘ₙb` for any integer `n`.
    pub fn circle(&self, a: &Expr, b: &Expr, n: i64) -> Expr {
        if n < 0 {
            let k = (-n - 1) as u32;
            return self.wick(&derivative_n(a, k), b).scaled(&(Q::one() / factorial(k)));
        }
        let mut out = Expr::zero();
        for (m, c) in a.terms() {
            for (p, d) in b.terms() {
                let r = self.circle_mono(m, p, n as u32);
                out.add_scaled(&r, &(c * d));
            }
        }
        out
    }

    /// All nonzero `(n, a∘ₙb)` with `n ≥ 0`, highest pole first.
    pub fn ope_singular(&self, a: &Expr, b: &Expr) -> Vec<(u32, Expr)> {
        let top = a.max_weight() + b.max_weight();
        let mut out = Vec::new();
        for n in (0..top.max(0)).rev() {
            let r = self.circle(a, b, n);
            if !r.is_zero() {
                out.push((n as u32, r));
            }
        }
        out
    }

    /// `:mn:` for canonical monomials.
    pub fn wick_mono(&self, m: &Monomial, n: &Monomial) -> Arc<Expr> {
        if m.is_empty() {
            return Arc::new(Expr::monomial(n.clone(), Q::one()));
        }
        if m.len() == 1 {
            return Arc::new(match n.insert(m.letters()[0]) {
                Some((s, r)) => Expr::monomial(r, sign(s)),
                None => Expr::zero(),
            });
        }
        if !any_pairing(m, n) {
            let mut seq: Vec<Letter> = m.letters().to_vec();
            seq.extend_from_slice(n.letters());
            return Arc::new(Expr::word(&seq));
        }
        let key = (m.clone(), n.clone());
        if self.memo {
            if let Some(r) = self.wick_memo.get(&key) {
                return r.clone();
            }
        }
        let r = Arc::new(self.wick_mono_uncached(m, n));
        if self.memo {
            self.wick_memo.insert(key, r.clone());
        }
        r
    }

    fn wick_mono_uncached(&self, m: &Monomial, n: &Monomial) -> Expr {
        // :(:ab:)c: = :a(:bc:): + Σ_j 1/(j+1)! [ :(∂^{j+1}a)(b∘_j c): + p(a,b):(∂^{j+1}b)(a∘_j c): ]
        let (a, b) = m.split_first();
        let p = a.is_odd() && b.is_odd();
        let mut out = wick_letter(a, &self.wick_mono(&b, n));
        let top = (b.weight().max(a.weight()) + n.weight()).max(0) as u32;
        let mut db = Expr::monomial(b.clone(), Q::one());
        for j in 0..top {
            let w = Q::one() / factorial(j + 1);
            let bc = self.circle_mono(&b, n, j);
            if !bc.is_zero() {
                out.add_scaled(&wick_letter(a.d(j + 1), &bc), &w);
            }
            db = derivative(&db);
            let ac = circle_letter(a, n, j);
            if !ac.is_zero() {
                let t = self.wick(&db, &ac);
                out.add_scaled(&t, &(if p { -w } else { w }));
            }
        }
        out
    }

    /// `m∘ₖn` for canonical monomials and `k ≥ 0`.
    pub fn circle_mono(&self, m: &Monomial, n: &Monomial, k: u32) -> Arc<Expr> {
        if m.is_empty() || n.is_empty() || (k as i64) >= m.weight() + n.weight() || !any_pairing(m, n) {
            return Arc::new(Expr::zero());
        }
        if m.len() == 1 {
            return Arc::new(circle_letter(m.letters()[0], n, k));
        }
        let key = (m.clone(), n.clone(), k);
        if self.memo {
            if let Some(r) = self.circle_memo.get(&key) {
                return r.clone();
            }
        }
        let r = Arc::new(self.circle_mono_uncached(m, n, k));
        if self.memo {
            self.circle_memo.insert(key, r.clone());
        }
        r
    }

    fn circle_mono_uncached(&self, m: &Monomial, n: &Monomial, k: u32) -> Expr {
        // (:ab:)∘_k c = Σ_i 1/i! [ :(∂^i a)(b∘_{k+i} c): + p(a,b) :(∂^i b)(a∘_{k+i} c): ]
        //             + p(a,b) Σ_{j<k} b∘_{k-1-j}(a∘_j c)
        let (a, b) = m.split_first();
        let p = a.is_odd() && b.is_odd();
        let ps = sign(p);
        let bexpr = Expr::monomial(b.clone(), Q::one());
        let mut out = Expr::zero();
        let top = (b.weight().max(a.weight()) + n.weight()).max(0) as u32;
        let mut db = bexpr.clone();
        for i in 0..top.saturating_sub(k) {
            let w = Q::one() / factorial(i);
            let bc = self.circle_mono(&b, n, k + i);
            if !bc.is_zero() {
                out.add_scaled(&wick_letter(a.d(i), &bc), &w);
            }
            if i > 0 {
                db = derivative(&db);
            }
            let ac = circle_letter(a, n, k + i);
            if !ac.is_zero() {
                let t = self.wick(&db, &ac);
                out.add_scaled(&t, &(&ps * &w));
            }
        }
        for j in 0..k {
            let ac = circle_letter(a, n, j);
            if !ac.is_zero() {
                let t = self.circle(&bexpr, &ac, (k - 1 - j) as i64);
                out.add_scaled(&t, &ps);
            }
        }
        out
    }
}

/// `:ab:` on the shared engine.
pub fn wick(a: &Expr, b: &Expr) -> Expr {
    Engine::global().wick(a, b)
}

/// `a∘ₙb` on the shared engine.
pub fn circle(a: &Expr, b: &Expr, n: i64) -> Expr {
    Engine::global().circle(a, b, n)
}

/// Right-nested Wick product of several factors on the shared engine.
pub fn wick_chain(factors: &[&Expr]) -> Expr {
    Engine::global().wick_chain(factors)
}

/// Singular OPE data on the shared engine.
pub fn ope_singular(a: &Expr, b: &Expr) -> Vec<(u32, Expr)> {
    Engine::global().ope_singular(a, b)
}
