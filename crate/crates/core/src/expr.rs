//! Letters, canonical monomials and exact linear combinations of them.
//!
//! A monomial is a sorted list of letters read as the right-nested Wick product
//! `:ℓ₁(:ℓ₂(⋯):):`. Letters inside such a product supercommute, so sorting only
//! costs a Koszul sign and a repeated odd letter kills the monomial.

use crate::rational::{sign, Q};
use num::{One, Signed, Zero};
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;

/// Generator species, listed in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Species {
    B,
    C,
    Beta,
    Gamma,
}

impl Species {
    pub const ALL: [Species; 4] = [Species::B, Species::C, Species::Beta, Species::Gamma];

    pub fn is_odd(self) -> bool {
        matches!(self, Species::B | Species::C)
    }

    /// Conformal weight of the underived generator.
    pub fn weight(self) -> i64 {
        match self {
            Species::B | Species::Beta => 1,
            Species::C | Species::Gamma => 0,
        }
    }

    pub fn degree(self) -> i64 {
        match self {
            Species::B => -1,
            Species::C => 1,
            Species::Beta => -2,
            Species::Gamma => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Species::B => "b",
            Species::C => "c",
            Species::Beta => "beta",
            Species::Gamma => "gamma",
        }
    }

    pub fn from_name(s: &str) -> Option<Species> {
        match s {
            "b" => Some(Species::B),
            "c" => Some(Species::C),
            "beta" => Some(Species::Beta),
            "gamma" => Some(Species::Gamma),
            _ => None,
        }
    }

    /// Species carrying a dual-basis (primed) label.
    pub fn is_dual(self) -> bool {
        matches!(self, Species::C | Species::Gamma)
    }

    /// The species this one has a nonzero first-order pole with.
    pub fn partner(self) -> Species {
        match self {
            Species::B => Species::C,
            Species::C => Species::B,
            Species::Beta => Species::Gamma,
            Species::Gamma => Species::Beta,
        }
    }

    /// Residue of `self^i (z) partner^i (w)`: the four base tables.
    pub fn base_pole(self) -> i64 {
        match self {
            Species::B | Species::C | Species::Beta => 1,
            Species::Gamma => -1,
        }
    }
}

/// `∂^deriv` of a generator with the given basis index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub species: Species,
    pub index: u8,
    pub deriv: u8,
}

impl Letter {
    pub fn new(species: Species, index: usize, deriv: u32) -> Self {
        Letter { species, index: index as u8, deriv: deriv as u8 }
    }

    pub fn is_odd(self) -> bool {
        self.species.is_odd()
    }

    pub fn weight(self) -> i64 {
        self.deriv as i64 + self.species.weight()
    }

    pub fn degree(self) -> i64 {
        self.species.degree()
    }

    pub fn d(self, k: u32) -> Letter {
        Letter { deriv: self.deriv + k as u8, ..self }
    }

    /// Whether some circle product of the two letters can be nonzero.
    pub fn pairs_with(self, other: Letter) -> bool {
        self.index == other.index && self.species.partner() == other.species
    }
}

/// Letters of a canonical monomial, sorted ascending.
pub type Letters = SmallVec<[Letter; 10]>;

/// A canonical monomial: sorted, with no repeated odd letter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Letters);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Letters::new())
    }

    pub fn letter(l: Letter) -> Self {
        let mut v = Letters::new();
        v.push(l);
        Monomial(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(|l| l.weight()).sum()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|l| l.degree()).sum()
    }

    pub fn b_number(&self) -> i64 {
        self.0
            .iter()
            .map(|l| match l.species {
                Species::B => 1,
                Species::C => -1,
                _ => 0,
            })
            .sum()
    }

    pub fn is_odd(&self) -> bool {
        self.0.iter().filter(|l| l.is_odd()).count() % 2 == 1
    }

    /// Places `l` in front of the monomial and re-sorts: returns the Koszul sign
    /// and the result, or `None` when `l` is odd and already present.
    pub fn insert(&self, l: Letter) -> Option<(bool, Monomial)> {
        let pos = self.0.partition_point(|x| *x < l);
        if l.is_odd() && self.0.get(pos) == Some(&l) {
            return None;
        }
        let crossed = if l.is_odd() { self.0[..pos].iter().filter(|x| x.is_odd()).count() } else { 0 };
        let mut v = self.0.clone();
        v.insert(pos, l);
        Some((crossed % 2 == 1, Monomial(v)))
    }

    /// Moves letter `i` to the front: returns the Koszul sign and the remaining
    /// monomial.
    pub fn remove(&self, i: usize) -> (bool, Monomial) {
        let l = self.0[i];
        let crossed = if l.is_odd() { self.0[..i].iter().filter(|x| x.is_odd()).count() } else { 0 };
        let mut v = self.0.clone();
        v.remove(i);
        (crossed % 2 == 1, Monomial(v))
    }

    /// First letter and the rest (the monomial must be nonempty).
    pub fn split_first(&self) -> (Letter, Monomial) {
        let mut v = self.0.clone();
        let l = v.remove(0);
        (l, Monomial(v))
    }

    /// Sorts an arbitrary sequence of letters read as a right-nested product.
    pub fn from_sequence(letters: &[Letter]) -> Option<(bool, Monomial)> {
        let mut m = Monomial::one();
        let mut odd = false;
        for l in letters.iter().rev() {
            let (s, next) = m.insert(*l)?;
            odd ^= s;
            m = next;
        }
        Some((odd, m))
    }
}

/// An exact ℚ-linear combination of canonical monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expr {
    terms: BTreeMap<Monomial, Q>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::monomial(Monomial::one(), Q::one())
    }

    pub fn scalar(c: Q) -> Self {
        Expr::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut e = Expr::zero();
        e.add_term(m, c);
        e
    }

    pub fn letter(l: Letter) -> Self {
        Expr::monomial(Monomial::letter(l), Q::one())
    }

    /// Right-nested Wick product of letters in the given order.
    pub fn word(letters: &[Letter]) -> Self {
        match Monomial::from_sequence(letters) {
            Some((odd, m)) => Expr::monomial(m, sign(odd)),
            None => Expr::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Expr, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> Expr {
        let mut out = Expr::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Expr {
        self.scaled(&-Q::one())
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Expr>>(items: I) -> Expr {
        let mut out = Expr::zero();
        for e in items {
            out.add_scaled(e, &Q::one());
        }
        out
    }

    /// Keeps only monomials satisfying the predicate.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, f: F) -> Expr {
        Expr { terms: self.terms.iter().filter(|(m, _)| f(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    fn homogeneous<F: Fn(&Monomial) -> i64>(&self, f: F) -> Result<Option<i64>, Inhomogeneous> {
        let mut it = self.terms.keys().map(f);
        let first = match it.next() {
            Some(v) => v,
            None => return Ok(None),
        };
        for v in it {
            if v != first {
                return Err(Inhomogeneous);
            }
        }
        Ok(Some(first))
    }

    /// Conformal weight; `Ok(None)` for the zero expression.
    pub fn weight(&self) -> Result<Option<i64>, Inhomogeneous> {
        self.homogeneous(Monomial::weight)
    }

    pub fn degree(&self) -> Result<Option<i64>, Inhomogeneous> {
        self.homogeneous(Monomial::degree)
    }

    pub fn b_number(&self) -> Result<Option<i64>, Inhomogeneous> {
        self.homogeneous(Monomial::b_number)
    }

    /// Parity: `Some(true)` for odd, `None` for zero.
    pub fn parity(&self) -> Result<Option<bool>, Inhomogeneous> {
        self.homogeneous(|m| m.is_odd() as i64).map(|o| o.map(|v| v == 1))
    }

    /// Largest letter count among the monomials (0 for the zero expression).
    pub fn poly_degree(&self) -> usize {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    pub fn max_weight(&self) -> i64 {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    /// Largest absolute value among the coefficients.
    pub fn max_abs_coeff(&self) -> Q {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }

    /// Components of a given letter count.
    pub fn component(&self, len: usize) -> Expr {
        self.filter(|m| m.len() == len)
    }
}

/// Error for grading queries on inhomogeneous expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("expression is not homogeneous in the requested grading")]
pub struct Inhomogeneous;

impl std::ops::Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl std::ops::Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(mut self, rhs: Expr) -> Expr {
        self.add_scaled(&rhs, &Q::one());
        self
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(mut self, rhs: Expr) -> Expr {
        self.add_scaled(&rhs, &-Q::one());
        self
    }
}

impl std::ops::Mul<&Expr> for &Q {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        rhs.scaled(self)
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

impl FromIterator<(Monomial, Q)> for Expr {
    fn from_iter<I: IntoIterator<Item = (Monomial, Q)>>(iter: I) -> Self {
        let mut e = Expr::zero();
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_plain(self, None))
    }
}
