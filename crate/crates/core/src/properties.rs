//! Structural properties of the circle products, stated for individual
//! elements so that both the property tests and the seeded report sweep use
//! the same definitions.

use crate::engine::{circle, derivative_n, wick};
use crate::expr::Expr;
use crate::lie::LieAlgebra;
use crate::rational::{factorial, qi, Q};
use crate::report::Report;
use crate::sample;
use crate::text::{format_plain, parse};
use rand::Rng;

/// Dimension of the Lie algebra the random elements are drawn for.
pub const DIM: usize = 3;

fn odd(e: &Expr) -> bool {
    e.parity().ok().flatten().unwrap_or(false)
}

fn koszul(a: &Expr, b: &Expr) -> Q {
    if odd(a) && odd(b) {
        qi(-1)
    } else {
        qi(1)
    }
}

fn expect(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Weight, degree, b-number and parity of `a∘ₙb` are those of `a` and `b`
/// combined, for words `a`, `b`.
pub fn grading_additivity(a: &Expr, b: &Expr, n: i64) -> Result<(), String> {
    let r = circle(a, b, n);
    if r.is_zero() {
        return Ok(());
    }
    let grade = |e: &Expr| -> Option<(i64, i64, i64)> { Some((e.weight().ok()??, e.degree().ok()??, e.b_number().ok()??)) };
    let (Some((wa, da, ba)), Some((wb, db, bb))) = (grade(a), grade(b)) else {
        return Err(format!("inputs are not homogeneous: {a}, {b}"));
    };
    expect(grade(&r) == Some((wa + wb - n - 1, da + db, ba + bb)), || format!("gradings of {a} ∘{n} {b} = {r}"))?;
    expect(r.parity() == Ok(Some(odd(a) ^ odd(b))), || format!("parity of {a} ∘{n} {b}"))
}

/// `a∘ₙb = 0` for `n ≥ wt(a) + wt(b)`.
pub fn locality_bound(a: &Expr, b: &Expr, wa: i64, wb: i64, extra: i64) -> Result<(), String> {
    let n = wa + wb + extra;
    expect(circle(a, b, n).is_zero(), || format!("{a} ∘{n} {b} ≠ 0"))
}

/// `b∘ₙa = p(a,b) Σⱼ (−1)^{n+j+1} ∂^{(j)}(a∘ₙ₊ⱼb)` for `n ≥ −1`.
pub fn skew_symmetry(a: &Expr, b: &Expr, wa: i64, wb: i64, n: i64) -> Result<(), String> {
    let mut rhs = Expr::zero();
    for j in 0..=(wa + wb + 1).max(0) as u32 {
        let term = derivative_n(&circle(a, b, n + j as i64), j);
        let sign = if (n + j as i64 + 1) % 2 == 0 { qi(1) } else { qi(-1) };
        rhs.add_scaled(&term, &(sign * koszul(a, b) / factorial(j)));
    }
    expect(circle(b, a, n) == rhs, || format!("skew-symmetry fails for {a}, {b}, n = {n}"))
}

/// `a∘₀(b∘ₙc) = (a∘₀b)∘ₙc + p(a,b) b∘ₙ(a∘₀c)`.
pub fn zero_mode_derivation(a: &Expr, b: &Expr, c: &Expr, n: i64) -> Result<(), String> {
    let lhs = circle(a, &circle(b, c, n), 0);
    let rhs = &circle(&circle(a, b, 0), c, n) + &circle(b, &circle(a, c, 0), n).scaled(&koszul(a, b));
    expect(lhs == rhs, || format!("a∘₀ is not a derivation of ∘{n} for a = {a}, b = {b}, c = {c}"))
}

/// Re-canonicalizing a canonical expression changes nothing: rebuilding it
/// term by term, multiplying by 1, and printing then parsing it.
pub fn canonical_idempotence(a: &Expr, lie: &LieAlgebra) -> Result<(), String> {
    let mut rebuilt = Expr::zero();
    for (m, c) in a.terms() {
        rebuilt.add_term(m.clone(), c.clone());
    }
    expect(&rebuilt == a, || format!("rebuilding {a} changes it"))?;
    expect(&wick(&Expr::one(), a) == a, || format!(":1 a: ≠ a for {a}"))?;
    let text = format_plain(a, Some(lie));
    let once = parse(&text, lie).map_err(|e| format!("`{text}` does not reparse: {e}"))?;
    expect(&once == a, || format!("`{text}` reparses to a different expression"))?;
    expect(format_plain(&once, Some(lie)) == text, || format!("`{text}` is not a fixed point of printing"))
}

/// A nonzero random word of weight at most `max_weight`, with its weight.
pub fn random_word<R: Rng>(rng: &mut R, max_weight: i64) -> (Expr, i64) {
    loop {
        let w = rng.gen_range(0..=max_weight);
        let e = sample::word(rng, DIM, w, 3);
        if !e.is_zero() {
            return (e, w);
        }
    }
}

/// A random homogeneous element of fixed parity, with its weight.
pub fn random_element<R: Rng>(rng: &mut R, max_weight: i64) -> (Expr, i64) {
    let w = rng.gen_range(0..=max_weight);
    (sample::homogeneous_parity(rng, DIM, w, 3, 3), w)
}

fn sweep(report: &mut Report, name: &str, cases: usize, mut case: impl FnMut() -> Result<(), String>) {
    let failures: Vec<String> = (0..cases).filter_map(|_| case().err()).collect();
    report.flag(
        format!("{name} on {cases} random cases"),
        failures.is_empty(),
        failures.first().map_or(String::new(), |f| format!("{} failures; first: {f}", failures.len())),
    );
}

/// All five properties on `cases` seeded random cases each.
pub fn verify_engine_properties(seed: u64, cases: usize) -> Report {
    let mut report = Report::new("engine-properties").with_seed(seed);
    let mut rng = sample::rng(seed);
    let lie = LieAlgebra::sl2();
    sweep(&mut report, "grading additivity", cases, || {
        let ((a, _), (b, _)) = (random_word(&mut rng, 3), random_word(&mut rng, 3));
        let n = rng.gen_range(-2..4);
        grading_additivity(&a, &b, n)
    });
    sweep(&mut report, "locality bound", cases, || {
        let ((a, wa), (b, wb)) = (random_element(&mut rng, 3), random_element(&mut rng, 3));
        let extra = rng.gen_range(0..3);
        locality_bound(&a, &b, wa, wb, extra)
    });
    sweep(&mut report, "skew-symmetry", cases, || {
        let ((a, wa), (b, wb)) = (random_element(&mut rng, 3), random_element(&mut rng, 3));
        let n = rng.gen_range(-1..3);
        skew_symmetry(&a, &b, wa, wb, n)
    });
    sweep(&mut report, "zero-mode derivation", cases, || {
        let (a, b, c) = (random_element(&mut rng, 2).0, random_element(&mut rng, 2).0, random_element(&mut rng, 2).0);
        let n = rng.gen_range(-1..3);
        zero_mode_derivation(&a, &b, &c, n)
    });
    sweep(&mut report, "canonical idempotence", cases, || canonical_idempotence(&random_element(&mut rng, 4).0, &lie));
    report
}
