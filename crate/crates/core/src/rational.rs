//! Exact rational scalars and small helpers around them.

use num::{BigInt, BigRational, One, Signed, Zero};

/// The scalar field of every computation in this crate.
pub type Q = BigRational;

/// `p / q` as an exact rational.
pub fn q(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

/// An integer as a rational.
pub fn qi(p: i64) -> Q {
    Q::from_integer(BigInt::from(p))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Q {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Q::from_integer(acc)
}

/// Binomial coefficient `C(n, k)` as a rational.
pub fn binomial(n: u32, k: u32) -> Q {
    if k > n {
        return Q::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Falling factorial `n (n-1) ... (n-k+1)` for a signed `n`.
pub fn falling(n: i64, k: u32) -> Q {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= n - i;
    }
    Q::from_integer(acc)
}

/// Renders `p/q`, or `p` for integers.
pub fn format_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `p`, `-p`, `p/q` into a rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Q::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Sign `(-1)^k` as a rational.
pub fn sign(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

/// True iff the rational lies strictly between `lo` and `hi`.
pub fn strictly_between(x: &Q, lo: &Q, hi: &Q) -> bool {
    x > lo && x < hi
}

/// Absolute value helper used by pivot heuristics.
pub fn abs(x: &Q) -> Q {
    x.abs()
}
