//! Truncated Fock-space model of the bcβγ system.
//!
//! States are sorted words of creation modes applied to the vacuum. Generator
//! modes act by the canonical (anti)commutation relations
//! `[a(m), b(n)]± = r(a,b) δ_{m+n+1,0}` and annihilate the vacuum for `n ≥ 0`.
//! A composite field `:AB:` acts through its mode sum
//! `(:AB:)(n) = Σ_{k<0} A(k)B(n−k−1) ± Σ_{k≥0} B(n−k−1)A(k)`,
//! so circle products are `a∘ₙb = a(n)·state(b)`. Nothing here uses the
//! rewriting rules of the engine.

use crate::engine::Engine;
use crate::expr::{Expr, Letter, Species};
use crate::rational::{falling, sign, Q};
use crate::report::Report;
use crate::sample;
use num::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;
use thiserror::Error;

/// One mode `g(n)` of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub species: Species,
    pub index: u8,
    pub n: i64,
}

impl Mode {
    fn odd(&self) -> bool {
        self.species.is_odd()
    }

    /// Weight created by this mode when `n < 0`.
    pub fn weight(&self) -> i64 {
        self.species.weight() - self.n - 1
    }
}

/// A basis state: creation modes in sorted order, applied to the vacuum.
pub type FockState = Vec<Mode>;

/// A finite linear combination of basis states.
pub type FockVector = BTreeMap<FockState, Q>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("state of weight {weight} exceeds the truncation {limit}")]
    Truncation { weight: i64, limit: i64 },
}

fn state_weight(s: &FockState) -> i64 {
    s.iter().map(Mode::weight).sum()
}

fn add(v: &mut FockVector, s: FockState, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(s.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&s);
    }
}

fn axpy(v: &mut FockVector, c: &Q, w: &FockVector) {
    for (s, x) in w {
        add(v, s.clone(), c * x);
    }
}

/// Residue `r(a, b)` in `a(z)b(w) ∼ r/(z−w)` for generators with equal index.
fn residue(a: Species, b: Species) -> i64 {
    match (a, b) {
        (Species::B, Species::C) | (Species::C, Species::B) | (Species::Beta, Species::Gamma) => 1,
        (Species::Gamma, Species::Beta) => -1,
        _ => 0,
    }
}

/// The oracle with its truncation weight.
#[derive(Clone, Debug)]
pub struct FockOracle {
    pub truncation: i64,
}

impl Default for FockOracle {
    fn default() -> Self {
        FockOracle { truncation: 8 }
    }
}

impl FockOracle {
    pub fn new(truncation: i64) -> Self {
        FockOracle { truncation }
    }

    pub fn vacuum() -> FockVector {
        let mut v = FockVector::new();
        v.insert(Vec::new(), Q::one());
        v
    }

    fn check(&self, v: &FockVector) -> Result<(), OracleError> {
        for s in v.keys() {
            let w = state_weight(s);
            if w > self.truncation {
                return Err(OracleError::Truncation { weight: w, limit: self.truncation });
            }
        }
        Ok(())
    }

    /// `g(n)` applied to a state, with `g` a generator.
    pub fn generator_mode(&self, species: Species, index: u8, n: i64, v: &FockVector) -> Result<FockVector, OracleError> {
        let a = Mode { species, index, n };
        let mut out = FockVector::new();
        for (s, c) in v {
            if n < 0 {
                let pos = s.partition_point(|x| *x < a);
                if a.odd() && s.get(pos) == Some(&a) {
                    continue;
                }
                let crossed = if a.odd() { s[..pos].iter().filter(|x| x.odd()).count() } else { 0 };
                let mut t = s.clone();
                t.insert(pos, a);
                add(&mut out, t, sign(crossed % 2 == 1) * c);
            } else {
                let mut odd_before = 0usize;
                for (i, m) in s.iter().enumerate() {
                    if m.index == index && m.n + n + 1 == 0 {
                        let r = residue(species, m.species);
                        if r != 0 {
                            let mut t = s.clone();
                            t.remove(i);
                            let sg = sign(a.odd() && odd_before % 2 == 1);
                            add(&mut out, t, sg * Q::from_integer(r.into()) * c);
                        }
                    }
                    if m.odd() {
                        odd_before += 1;
                    }
                }
            }
        }
        self.check(&out)?;
        Ok(out)
    }

    /// Mode `n` of the field `∂ᵏg`: `(∂ᵏg)(n) = (−1)ᵏ n(n−1)⋯(n−k+1) g(n−k)`.
    fn letter_mode(&self, l: Letter, n: i64, v: &FockVector) -> Result<FockVector, OracleError> {
        let k = l.deriv as u32;
        let f = sign(k % 2 == 1) * falling(n, k);
        if f.is_zero() {
            return Ok(FockVector::new());
        }
        let mut out = self.generator_mode(l.species, l.index, n - k as i64, v)?;
        for x in out.values_mut() {
            *x *= &f;
        }
        Ok(out)
    }

    /// Mode `n` of the right-nested Wick product of `letters`.
    pub fn field_mode(&self, letters: &[Letter], n: i64, v: &FockVector) -> Result<FockVector, OracleError> {
        if v.is_empty() {
            return Ok(FockVector::new());
        }
        match letters.len() {
            0 => Ok(if n == -1 { v.clone() } else { FockVector::new() }),
            1 => self.letter_mode(letters[0], n, v),
            _ => {
                let a = letters[0];
                let rest = &letters[1..];
                let wa = a.weight();
                let wb: i64 = rest.iter().map(|l| l.weight()).sum();
                let wv = v.keys().map(state_weight).max().unwrap_or(0);
                let p = a.is_odd() && rest.iter().filter(|l| l.is_odd()).count() % 2 == 1;
                let mut out = FockVector::new();
                for k in (n - wv - wb)..0 {
                    let inner = self.field_mode(rest, n - k - 1, v)?;
                    if !inner.is_empty() {
                        let t = self.letter_mode(a, k, &inner)?;
                        axpy(&mut out, &Q::one(), &t);
                    }
                }
                for k in 0..(wv + wa).max(0) {
                    let inner = self.letter_mode(a, k, v)?;
                    if !inner.is_empty() {
                        let t = self.field_mode(rest, n - k - 1, &inner)?;
                        axpy(&mut out, &sign(p), &t);
                    }
                }
                Ok(out)
            }
        }
    }

    /// The state `a(−1)|0⟩` of an expression.
    pub fn state_of(&self, a: &Expr) -> Result<FockVector, OracleError> {
        let vac = FockOracle::vacuum();
        let mut out = FockVector::new();
        for (m, c) in a.terms() {
            let s = self.field_mode(m.letters(), -1, &vac)?;
            axpy(&mut out, c, &s);
        }
        Ok(out)
    }

    /// `a(n)` applied to the state of `b`.
    pub fn circle(&self, a: &Expr, b: &Expr, n: i64) -> Result<FockVector, OracleError> {
        let target = self.state_of(b)?;
        let mut out = FockVector::new();
        for (m, c) in a.terms() {
            let s = self.field_mode(m.letters(), n, &target)?;
            axpy(&mut out, c, &s);
        }
        Ok(out)
    }

    /// Compares `expected` (an engine result for `a∘ₙb`) with the oracle.
    pub fn agrees(&self, a: &Expr, b: &Expr, n: i64, expected: &Expr) -> Result<bool, OracleError> {
        Ok(self.circle(a, b, n)? == self.state_of(expected)?)
    }

    /// All basis states with weight ≤ `max_weight` and at most `max_modes`
    /// creation modes, for a Lie algebra of dimension `dim`.
    pub fn basis(&self, dim: usize, max_weight: i64, max_modes: usize) -> Vec<FockState> {
        let mut modes = Vec::new();
        for sp in Species::ALL {
            for i in 0..dim {
                for n in -(max_weight + 1)..0 {
                    let m = Mode { species: sp, index: i as u8, n };
                    if m.weight() <= max_weight {
                        modes.push(m);
                    }
                }
            }
        }
        modes.sort();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(modes: &[Mode], start: usize, cur: &mut Vec<Mode>, w: i64, max_w: i64, max_m: usize, out: &mut Vec<FockState>) {
            out.push(cur.clone());
            if cur.len() == max_m {
                return;
            }
            for i in start..modes.len() {
                let m = modes[i];
                if w + m.weight() > max_w {
                    continue;
                }
                let next = if m.odd() { i + 1 } else { i };
                cur.push(m);
                rec(modes, next, cur, w + m.weight(), max_w, max_m, out);
                cur.pop();
            }
        }
        rec(&modes, 0, &mut cur, 0, max_weight, max_modes, &mut out);
        out
    }

    /// Sparse matrix of a generator mode on a list of basis states:
    /// `(row, column) ↦ entry`, rows indexed by output states in `basis`.
    /// Outputs falling outside the list are returned separately.
    pub fn truncated_operator(&self, species: Species, index: u8, n: i64, basis: &[FockState]) -> (BTreeMap<(usize, usize), Q>, usize) {
        let pos: BTreeMap<&FockState, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut mat = BTreeMap::new();
        let mut outside = 0;
        let wide = FockOracle { truncation: i64::MAX };
        for (j, s) in basis.iter().enumerate() {
            let mut v = FockVector::new();
            v.insert(s.clone(), Q::one());
            let img = wide.generator_mode(species, index, n, &v).expect("no truncation");
            for (t, c) in img {
                match pos.get(&t) {
                    Some(&i) => {
                        mat.insert((i, j), c);
                    }
                    None => outside += 1,
                }
            }
        }
        (mat, outside)
    }
}

/// Compares every engine circle product `a∘ₙb` with the oracle.
/// Returns the numbers of products compared and of products beyond the truncation.
fn compare(oracle: &FockOracle, a: &Expr, b: &Expr, ns: impl Iterator<Item = i64>, mismatches: &mut Vec<String>) -> (usize, usize) {
    let engine = Engine::global();
    let (mut compared, mut truncated) = (0, 0);
    for n in ns {
        let expected = engine.circle(a, b, n);
        match oracle.agrees(a, b, n, &expected) {
            Ok(true) => compared += 1,
            Ok(false) => {
                compared += 1;
                mismatches.push(format!("n={n}, a={a}, b={b}, engine={expected}"));
            }
            Err(OracleError::Truncation { .. }) => truncated += 1,
        }
    }
    (compared, truncated)
}

/// Engine against oracle on all pairs of generators of a Lie algebra of
/// dimension `dim` for `−3 ≤ n ≤ 1`, and on `random_pairs` random homogeneous
/// pairs of weight ≤ 4 for every `−1 ≤ n ≤ wt(a)+wt(b)−1`.
pub fn verify_oracle_equivalence(generators: &[Expr], dim: usize, seed: u64, random_pairs: usize, truncation: i64) -> Report {
    let mut report = Report::new("oracle-equivalence").with_seed(seed);
    let oracle = FockOracle::new(truncation);

    let mut mismatches = Vec::new();
    let (mut compared, mut truncated) = (0, 0);
    for a in generators {
        for b in generators {
            let (c, t) = compare(&oracle, a, b, -3..=1, &mut mismatches);
            compared += c;
            truncated += t;
        }
    }
    let pairs = generators.len() * generators.len();
    report.flag(
        format!("engine = oracle on all {pairs} generator pairs, -3 <= n <= 1 (N = {truncation})"),
        mismatches.is_empty() && truncated == 0,
        format!("{compared} products compared, {truncated} beyond truncation{}", first(&mismatches)),
    );

    let mut rng = sample::rng(seed);
    let mut mismatches = Vec::new();
    let (mut compared, mut truncated, mut complete) = (0, 0, 0);
    for _ in 0..random_pairs {
        let (wa, wb) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let a = sample::homogeneous_parity(&mut rng, dim, wa, 3, 3);
        let b = sample::homogeneous_parity(&mut rng, dim, wb, 3, 3);
        let (c, t) = compare(&oracle, &a, &b, -1..=(wa + wb - 1).max(-1), &mut mismatches);
        compared += c;
        truncated += t;
        if t == 0 {
            complete += 1;
        }
    }
    report.flag(
        format!("engine = oracle on {random_pairs} random homogeneous pairs of weight <= 4 (N = {truncation})"),
        mismatches.is_empty() && truncated == 0,
        format!("{complete} pairs fully compared, {compared} products, {truncated} beyond truncation{}", first(&mismatches)),
    );
    report
}

fn first(mismatches: &[String]) -> String {
    mismatches.first().map_or(String::new(), |m| format!("; first mismatch: {m}"))
}
