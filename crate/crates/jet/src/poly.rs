//! Sparse exact-rational polynomials in jet variables.
//!
//! A jet variable is a base coordinate together with a jet level. For copies of
//! the adjoint representation of sl₂ the base coordinate `3·copy + comp` names
//! `a^h`, `a^x` or `a^y` of that copy. Monomials are ordered graded
//! lexicographically, with variables ordered copy first, then component
//! (`a^h ≺ a^x ≺ a^y`), then level.

use num::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use voaforge_core::rational::format_q;
use voaforge_core::Q;

/// Coordinate components of one adjoint copy, in variable order.
pub const COMPONENTS: [char; 3] = ['h', 'x', 'y'];

/// The coordinate `x_base^{(level)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub base: u16,
    pub level: u8,
}

impl Var {
    pub fn new(base: usize, level: usize) -> Self {
        Var { base: base as u16, level: level as u8 }
    }

    /// `(a^comp_copy)^{(level)}` with `comp` indexing [`COMPONENTS`] and `copy` 0-based.
    pub fn adjoint(copy: usize, comp: usize, level: usize) -> Self {
        Var::new(3 * copy + comp, level)
    }

    pub fn copy(self) -> usize {
        self.base as usize / 3
    }

    pub fn component(self) -> usize {
        self.base as usize % 3
    }

    pub fn with_level(self, level: usize) -> Self {
        Var { level: level as u8, ..self }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}{}", COMPONENTS[self.component()], self.copy() + 1)?;
        if self.level > 0 {
            write!(f, "^({})", self.level)?;
        }
        Ok(())
    }
}

/// A monomial as sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs.
    pub fn from_powers<I: IntoIterator<Item = (Var, u32)>>(powers: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Sum of jet levels counted with multiplicity.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.level as u32 * e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.binary_search_by(|(w, _)| w.cmp(&v)).map_or(0, |i| self.0[i].1)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            let d = if j < other.0.len() && other.0[j].0 == v {
                j += 1;
                other.0[j - 1].1
            } else {
                0
            };
            if d > e {
                return None;
            }
            if e > d {
                out.push((v, e - d));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    /// The monomial with one factor of `v` removed, with the removed exponent.
    pub fn lower(&self, v: Var) -> Option<(u32, Monomial)> {
        let i = self.0.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let e = self.0[i].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(i);
        } else {
            out[i].1 -= 1;
        }
        Some((e, Monomial(out)))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents compared from
    /// the largest variable down.
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (mut i, mut j) = (self.0.len(), other.0.len());
        while i > 0 && j > 0 {
            let (va, ea) = self.0[i - 1];
            let (vb, eb) = other.0[j - 1];
            match va.cmp(&vb) {
                Ordering::Greater => return Ordering::Greater,
                Ordering::Less => return Ordering::Less,
                Ordering::Equal => {
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i -= 1;
                    j -= 1;
                }
            }
        }
        i.cmp(&j)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial: monomial to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct JetPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl JetPoly {
    pub fn zero() -> Self {
        JetPoly::default()
    }

    pub fn one() -> Self {
        JetPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        JetPoly::term(Monomial::one(), c)
    }

    pub fn integer(c: i64) -> Self {
        JetPoly::constant(Q::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        JetPoly::term(Monomial::var(v), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = JetPoly::zero();
        p.add_term(m, c);
        p
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Largest term in the graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &JetPoly, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Q) -> JetPoly {
        let mut out = JetPoly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> JetPoly {
        let mut out = JetPoly::zero();
        if c.is_zero() {
            return out;
        }
        for (n, d) in &self.terms {
            out.terms.insert(n.mul(m), d * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> JetPoly {
        (0..e).fold(JetPoly::one(), |acc, _| &acc * self)
    }

    /// Maximum total degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The common `(weight, degree)` of all terms, if homogeneous and nonzero.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|m| (m.weight(), m.degree()));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    pub fn max_level(&self) -> u8 {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| v.level)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| *v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Extends `image` (given on variables) to a derivation and applies it.
    pub fn derivation<F: FnMut(Var) -> JetPoly>(&self, mut image: F) -> JetPoly {
        let mut cache: BTreeMap<Var, JetPoly> = BTreeMap::new();
        let mut out = JetPoly::zero();
        for (m, c) in &self.terms {
            for &(v, _) in &m.0 {
                let img = cache.entry(v).or_insert_with(|| image(v));
                if img.is_zero() {
                    continue;
                }
                let (e, rest) = m.lower(v).expect("variable occurs in its monomial");
                out.add_scaled(&img.mul_term(&rest, c), &Q::from_integer(e.into()));
            }
        }
        out
    }

    pub fn partial(&self, v: Var) -> JetPoly {
        self.derivation(|w| if w == v { JetPoly::one() } else { JetPoly::zero() })
    }

    /// Value at a point; variables missing from `point` evaluate to zero.
    pub fn eval(&self, point: &BTreeMap<Var, Q>) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.0 {
                match point.get(v) {
                    Some(x) => t *= num::pow(x.clone(), *e as usize),
                    None => {
                        t = Q::zero();
                        break;
                    }
                }
            }
            acc += t;
        }
        acc
    }

    /// The exact quotient `self / divisor`, or `None` when the division
    /// algorithm leaves a remainder. A single divisor is a Gröbner basis of the
    /// ideal it generates, so a nonzero remainder means non-divisibility.
    pub fn div_exact(&self, divisor: &JetPoly) -> Option<JetPoly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rest = self.clone();
        let mut quotient = JetPoly::zero();
        while let Some((m, c)) = rest.leading() {
            let factor = m.div(&lm)?;
            let coeff = c / &lc;
            rest.add_scaled(&divisor.mul_term(&factor, &-Q::one()), &coeff);
            quotient.add_term(factor, coeff);
        }
        Some(quotient)
    }

    /// True iff `divisor` divides `self` exactly. Every polynomial divides 0.
    pub fn is_divisible_by(&self, divisor: &JetPoly) -> bool {
        if self.is_zero() {
            return true;
        }
        self.div_exact(divisor).is_some()
    }
}

/// `divisor | target` under exact graded-lex division.
pub fn divides(divisor: &JetPoly, target: &JetPoly) -> bool {
    target.is_divisible_by(divisor)
}

/// Determinant of a square matrix of polynomials, by Laplace expansion along
/// rows with memoized complementary minors.
pub fn determinant(matrix: &[Vec<JetPoly>]) -> JetPoly {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    assert!(n < usize::BITS as usize, "matrix too large");
    let mut minors: Vec<Option<JetPoly>> = vec![None; 1 << n];
    minors[0] = Some(JetPoly::one());
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = JetPoly::zero();
        let mut above = 0;
        for col in (0..n).rev() {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &matrix[row][col];
            if !entry.is_zero() {
                let rest = minors[mask & !(1 << col)].as_ref().expect("smaller masks computed first");
                if !rest.is_zero() {
                    let sign = if above % 2 == 0 { Q::one() } else { -Q::one() };
                    acc.add_scaled(&(entry * rest), &sign);
                }
            }
            above += 1;
        }
        minors[mask] = Some(acc);
    }
    minors.pop().flatten().expect("full minor")
}

impl<'a> Add<&'a JetPoly> for &'a JetPoly {
    type Output = JetPoly;
    fn add(self, rhs: &JetPoly) -> JetPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl<'a> Sub<&'a JetPoly> for &'a JetPoly {
    type Output = JetPoly;
    fn sub(self, rhs: &JetPoly) -> JetPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl<'a> Mul<&'a JetPoly> for &'a JetPoly {
    type Output = JetPoly;
    fn mul(self, rhs: &JetPoly) -> JetPoly {
        let mut out = JetPoly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        self.scale(&-Q::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<JetPoly> for JetPoly {
            type Output = JetPoly;
            fn $m(self, rhs: JetPoly) -> JetPoly {
                $tr::$m(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        -&self
    }
}

impl fmt::Display for JetPoly {
    /// Terms in decreasing order, e.g. `8*ah2^2*ay1 - 8*ah1*ah2*ay2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = *c < Q::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_q(&abs))?;
            }
        }
        Ok(())
    }
}
