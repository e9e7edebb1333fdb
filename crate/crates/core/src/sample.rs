//! Seeded random expressions for property checks and oracle sweeps.

use crate::expr::{Expr, Letter, Species};
use crate::rational::q;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed taken from `VOAFORGE_SEED`, defaulting to 0.
pub fn env_seed() -> u64 {
    std::env::var("VOAFORGE_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random letter of exactly the given weight.
pub fn letter_of_weight<R: Rng>(rng: &mut R, dim: usize, weight: i64) -> Letter {
    let sp = if weight == 0 {
        *[Species::C, Species::Gamma].choose(rng).expect("nonempty")
    } else {
        *Species::ALL.choose(rng).expect("nonempty")
    };
    let deriv = weight - sp.weight();
    Letter::new(sp, rng.gen_range(0..dim), deriv as u32)
}

/// A random right-nested word of total weight `weight` with at most
/// `max_letters` letters (possibly zero after canonicalization).
pub fn word<R: Rng>(rng: &mut R, dim: usize, weight: i64, max_letters: usize) -> Expr {
    let count = rng.gen_range(1..=max_letters.max(1));
    let mut weights = vec![0i64; count];
    for _ in 0..weight {
        let i = rng.gen_range(0..count);
        weights[i] += 1;
    }
    let letters: Vec<Letter> = weights.iter().map(|w| letter_of_weight(rng, dim, *w)).collect();
    Expr::word(&letters)
}

/// A nonzero random homogeneous expression of the given weight.
pub fn homogeneous<R: Rng>(rng: &mut R, dim: usize, weight: i64, max_letters: usize, max_terms: usize) -> Expr {
    loop {
        let mut e = Expr::zero();
        for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
            let c = q(rng.gen_range(-3..=3), rng.gen_range(1..=2));
            e.add_scaled(&word(rng, dim, weight, max_letters), &c);
        }
        if !e.is_zero() {
            return e;
        }
    }
}

/// Random homogeneous expression whose monomials all have the same parity.
pub fn homogeneous_parity<R: Rng>(rng: &mut R, dim: usize, weight: i64, max_letters: usize, max_terms: usize) -> Expr {
    loop {
        let e = homogeneous(rng, dim, weight, max_letters, max_terms);
        if e.parity().is_ok() {
            return e;
        }
    }
}
