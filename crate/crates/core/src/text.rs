//! Text and JSON forms of expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (("+"|"-") term)*
//! term   := [rational ("/" natural)?] factor      a bare rational denotes a multiple of 1
//! factor := ":" factor factor+ ":" | "d^" natural factor | gen | "@" name | "(" expr ")"
//! gen    := ("b"|"c"|"beta"|"gamma") "[" ident "]"
//! ```
//!
//! Inside `: … :` a `:` closes the product once two factors have been read, so
//! a nested product in third or later position needs parentheses. `@name`
//! refers to an operator supplied by the caller (for example `@vx`, `@H4`).

use crate::engine::{derivative_n, Engine};
use crate::expr::{Expr, Letter, Monomial, Species};
use crate::lie::LieAlgebra;
use crate::rational::{format_q, parse_q, Q};
use num::{BigInt, One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: found {found}, expected one of {expected:?}")]
    Syntax { line: usize, column: usize, found: String, expected: BTreeSet<String> },
    #[error("unknown generator label `{label}` at line {line}, column {column}")]
    UnknownLabel { label: String, line: usize, column: usize },
    #[error("unknown operator `@{name}` at line {line}, column {column}")]
    UnknownOperator { name: String, line: usize, column: usize },
    #[error("malformed JSON expression: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    At(String),
    Sym(char),
    Deriv,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(i) => format!("number `{i}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::At(s) => format!("`@{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Deriv => "`d^`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexed {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(text: &str) -> Result<Lexed, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let syntax = |line, column, found: String, expected: &[&str]| ParseError::Syntax {
        line,
        column,
        found,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            toks.push((Tok::Int(s.parse().expect("digits")), l0, c0));
            continue;
        }
        if c == 'd' && chars.get(i + 1) == Some(&'^') {
            i += 2;
            col += 2;
            toks.push((Tok::Deriv, l0, c0));
            continue;
        }
        if c == '@' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if i == start {
                return Err(syntax(l0, c0, "`@`".into(), &["operator name"]));
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start + 1;
            toks.push((Tok::At(s), l0, c0));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            toks.push((Tok::Ident(s), l0, c0));
            continue;
        }
        if "+-/:()[]".contains(c) {
            toks.push((Tok::Sym(c), l0, c0));
            i += 1;
            col += 1;
            continue;
        }
        return Err(syntax(l0, c0, format!("`{c}`"), &["number", "generator", "`:`", "`(`", "`d^`", "`@`"]));
    }
    toks.push((Tok::End, line, col));
    Ok(Lexed { toks })
}

/// Resolves `@name` references during parsing.
pub trait OperatorLookup {
    fn lookup(&self, name: &str) -> Option<Expr>;
}

impl OperatorLookup for () {
    fn lookup(&self, _: &str) -> Option<Expr> {
        None
    }
}

impl<F: Fn(&str) -> Option<Expr>> OperatorLookup for F {
    fn lookup(&self, name: &str) -> Option<Expr> {
        self(name)
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    lie: &'a LieAlgebra,
    ops: &'a dyn OperatorLookup,
    engine: &'a Engine,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        (self.toks[self.pos].1, self.toks[self.pos].2)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError::Syntax { line, column, found: self.peek().describe(), expected: expected.iter().map(|s| s.to_string()).collect() })
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Sym(':') | Tok::Sym('(') | Tok::Deriv | Tok::At(_))
            || matches!(self.peek(), Tok::Ident(s) if Species::from_name(s).is_some())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut out = Expr::zero();
        let mut negate = false;
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            negate = true;
        } else if *self.peek() == Tok::Sym('+') {
            self.bump();
        }
        loop {
            let t = self.term()?;
            out.add_scaled(&t, &if negate { -Q::one() } else { Q::one() });
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    negate = false;
                }
                Tok::Sym('-') => {
                    self.bump();
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let coeff = if let Tok::Int(n) = self.peek().clone() {
            self.bump();
            if *self.peek() == Tok::Sym('/') {
                self.bump();
                match self.bump() {
                    Tok::Int(d) if !d.is_zero() => Some(Q::new(n, d)),
                    _ => {
                        self.pos -= 1;
                        return self.fail(&["nonzero natural number"]);
                    }
                }
            } else {
                Some(Q::from_integer(n))
            }
        } else {
            None
        };
        match coeff {
            Some(c) if !self.starts_factor() => Ok(Expr::scalar(c)),
            Some(c) => Ok(self.factor()?.scaled(&c)),
            None => self.factor(),
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Sym(':') => {
                self.bump();
                let mut factors = vec![self.factor()?];
                loop {
                    if factors.len() >= 2 && *self.peek() == Tok::Sym(':') {
                        self.bump();
                        break;
                    }
                    if !self.starts_factor() {
                        return if factors.len() >= 2 { self.fail(&["`:`", "factor"]) } else { self.fail(&["factor"]) };
                    }
                    factors.push(self.factor()?);
                }
                let refs: Vec<&Expr> = factors.iter().collect();
                Ok(self.engine.wick_chain(&refs))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Deriv => {
                self.bump();
                let k = match self.bump() {
                    Tok::Int(k) => k,
                    _ => {
                        self.pos -= 1;
                        return self.fail(&["natural number"]);
                    }
                };
                let k: u32 = k.try_into().map_err(|_| ParseError::Syntax {
                    line: self.here().0,
                    column: self.here().1,
                    found: "derivative order".into(),
                    expected: ["small natural number".to_string()].into(),
                })?;
                let f = self.factor()?;
                Ok(derivative_n(&f, k))
            }
            Tok::At(name) => {
                let (line, column) = self.here();
                self.bump();
                self.ops.lookup(&name).ok_or(ParseError::UnknownOperator { name, line, column })
            }
            Tok::Ident(s) if Species::from_name(&s).is_some() => {
                let species = Species::from_name(&s).expect("checked");
                self.bump();
                self.expect_sym('[')?;
                let (line, column) = self.here();
                let label = match self.bump() {
                    Tok::Ident(l) => l,
                    Tok::Int(i) => i.to_string(),
                    _ => {
                        self.pos -= 1;
                        return self.fail(&["basis label"]);
                    }
                };
                let label = label.trim_end_matches('\'').to_string();
                let idx = self.lie.index_of(&label).ok_or(ParseError::UnknownLabel { label, line, column })?;
                self.expect_sym(']')?;
                Ok(Expr::letter(Letter::new(species, idx, 0)))
            }
            _ => self.fail(&["`:`", "`(`", "`d^`", "`@`", "b[..]", "c[..]", "beta[..]", "gamma[..]"]),
        }
    }
}

/// Parses an expression; `@name` references resolve through `ops`.
pub fn parse_with(text: &str, lie: &LieAlgebra, ops: &dyn OperatorLookup) -> Result<Expr, ParseError> {
    let lexed = lex(text)?;
    let mut p = Parser { toks: lexed.toks, pos: 0, lie, ops, engine: Engine::global() };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["`+`", "`-`", "end of input"]);
    }
    Ok(e)
}

/// Parses an expression without operator references.
pub fn parse(text: &str, lie: &LieAlgebra) -> Result<Expr, ParseError> {
    parse_with(text, lie, &())
}

fn label(lie: Option<&LieAlgebra>, i: u8) -> String {
    match lie {
        Some(l) if (i as usize) < l.dim() => l.labels[i as usize].clone(),
        _ => i.to_string(),
    }
}

fn letter_text(l: &Letter, lie: Option<&LieAlgebra>) -> String {
    let g = format!("{}[{}]", l.species.name(), label(lie, l.index));
    if l.deriv == 0 {
        g
    } else {
        format!("d^{} {}", l.deriv, g)
    }
}

fn coeff_prefix(c: &Q, first: bool, plain_one: bool) -> String {
    let mut s = String::new();
    let a = c.abs();
    if c.is_negative() {
        s.push_str(if first { "-" } else { " - " });
    } else if !first {
        s.push_str(" + ");
    }
    if !a.is_one() || plain_one {
        s.push_str(&format_q(&a));
        if !plain_one {
            s.push(' ');
        }
    }
    s
}

/// Formats in the input grammar so that the result parses back to an equal
/// expression.
pub fn format_plain(e: &Expr, lie: Option<&LieAlgebra>) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in e.terms().enumerate() {
        s.push_str(&coeff_prefix(c, i == 0, m.is_empty()));
        match m.len() {
            0 => {}
            1 => s.push_str(&letter_text(&m.letters()[0], lie)),
            _ => {
                s.push(':');
                let parts: Vec<String> = m.letters().iter().map(|l| letter_text(l, lie)).collect();
                s.push_str(&parts.join(" "));
                s.push(':');
            }
        }
    }
    s
}

fn superscript(n: u8) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if n == 1 {
        return String::new();
    }
    n.to_string().chars().map(|c| SUP[c.to_digit(10).expect("digit") as usize]).collect()
}

fn letter_pretty(l: &Letter, lie: Option<&LieAlgebra>) -> String {
    let sym = match l.species {
        Species::B => "b",
        Species::C => "c",
        Species::Beta => "β",
        Species::Gamma => "γ",
    };
    let lab = label(lie, l.index);
    let sup = if l.species.is_dual() { format!("^{{{lab}'}}") } else { format!("^{lab}") };
    let d = if l.deriv == 0 { String::new() } else { format!("∂{}", superscript(l.deriv)) };
    format!("{d}{sym}{sup}")
}

/// Human-readable form using the usual symbols (`:β^x γ^{h'}:`).
pub fn format_pretty(e: &Expr, lie: Option<&LieAlgebra>) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in e.terms().enumerate() {
        s.push_str(&coeff_prefix(c, i == 0, m.is_empty()));
        match m.len() {
            0 => {}
            1 => s.push_str(&letter_pretty(&m.letters()[0], lie)),
            _ => {
                let parts: Vec<String> = m.letters().iter().map(|l| letter_pretty(l, lie)).collect();
                s.push_str(&format!(":{}:", parts.join(" ")));
            }
        }
    }
    s
}

/// `{"terms":[{"coeff":"p/q","letters":[["b","x",0],...]},...]}`
pub fn to_json(e: &Expr, lie: Option<&LieAlgebra>) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(m, c)| {
            let letters: Vec<Value> = m.letters().iter().map(|l| json!([l.species.name(), label(lie, l.index), l.deriv])).collect();
            json!({"coeff": format_q(c), "letters": letters})
        })
        .collect();
    json!({ "terms": terms })
}

/// Inverse of [`to_json`]; letters listed in a term are read as a right-nested
/// Wick product and re-canonicalized.
pub fn from_json(v: &Value, lie: &LieAlgebra) -> Result<Expr, ParseError> {
    let bad = |s: &str| ParseError::Json(s.to_string());
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms array"))?;
    let mut out = Expr::zero();
    for t in terms {
        let c = t.get("coeff").and_then(Value::as_str).and_then(parse_q).ok_or_else(|| bad("coeff must be a \"p/q\" string"))?;
        let letters = t.get("letters").and_then(Value::as_array).ok_or_else(|| bad("missing letters"))?;
        let mut seq = Vec::new();
        for l in letters {
            let a = l.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("letter must be [species, label, deriv]"))?;
            let sp = a[0].as_str().and_then(Species::from_name).ok_or_else(|| bad("unknown species"))?;
            let lab = a[1].as_str().ok_or_else(|| bad("label must be a string"))?;
            let idx = lie.index_of(lab).ok_or_else(|| bad("unknown label"))?;
            let d = a[2].as_u64().ok_or_else(|| bad("deriv must be a natural number"))?;
            seq.push(Letter::new(sp, idx, d as u32));
        }
        out.add_scaled(&Expr::word(&seq), &c);
    }
    Ok(out)
}

/// A monomial from `(species, index, deriv)` triples in right-nested order.
pub fn monomial_of(letters: &[(Species, usize, u32)]) -> Option<(bool, Monomial)> {
    let seq: Vec<Letter> = letters.iter().map(|(s, i, d)| Letter::new(*s, *i, *d)).collect();
    Monomial::from_sequence(&seq)
}
