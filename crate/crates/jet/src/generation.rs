//! Desk-scale comparison of the `g[t]`-invariants of a jet ring with the
//! subring generated by `D`-derivatives of classical invariants, slice by
//! slice in weight and degree.

use crate::poly::{JetPoly, Monomial};
use crate::ring::JetRing;
use crate::weyl::weyl_generators;
use crate::JetError;
use rand::Rng;
use voaforge_core::linalg::{kernel, Reducer, RowIndex, SparseVec};
use voaforge_core::rational::qi;
use voaforge_core::report::Report;
use voaforge_core::sample;
use voaforge_core::Q;

/// Largest slice (number of monomials) the brute-force routines accept.
pub const SLICE_LIMIT: u128 = 12_000;

/// The invariant subspace of one weight/degree slice.
#[derive(Clone, Debug)]
pub struct InvariantSlice {
    pub level: usize,
    pub weight: usize,
    pub degree: usize,
    pub slice_size: usize,
    /// Monomials of torus weight zero, the only ones an invariant can contain.
    pub candidates: usize,
    pub dimension: usize,
    pub basis: Vec<JetPoly>,
}

/// The span of products of `D^i(f)` in one slice.
#[derive(Clone, Debug)]
pub struct GeneratedSlice {
    pub weight: usize,
    pub degree: usize,
    pub products: Vec<JetPoly>,
    pub dimension: usize,
}

fn check_size(ring: &JetRing, weight: usize, degree: usize) -> Result<usize, JetError> {
    let size = ring.slice_size(weight, degree);
    if size > SLICE_LIMIT {
        return Err(JetError::SliceTooLarge { size, limit: SLICE_LIMIT });
    }
    Ok(size as usize)
}

/// Operators `ξ_i tʳ` with `0 ≤ r ≤ min(weight, level)`; larger `r` act by zero.
fn operators(ring: &JetRing, weight: usize) -> Vec<(usize, usize)> {
    (0..ring.lie.dim()).flat_map(|i| (0..=weight.min(ring.level)).map(move |r| (i, r))).collect()
}

/// True iff every `ξ_i tʳ` kills `p`.
pub fn is_gt_invariant(ring: &JetRing, p: &JetPoly) -> bool {
    let weight = p.bidegree().map_or(ring.level, |(w, _)| w as usize);
    operators(ring, weight).into_iter().all(|(i, r)| ring.basis_action(i, r, p).is_zero())
}

/// Kernel of the joint action of `{ξ tʳ}` on a slice, by exact linear algebra.
pub fn invariant_component(ring: &JetRing, weight: usize, degree: usize) -> Result<InvariantSlice, JetError> {
    let slice_size = check_size(ring, weight, degree)?;
    let candidates: Vec<Monomial> = ring.slice(weight, degree).into_iter().filter(|m| ring.is_torus_neutral(m)).collect();
    let ops = operators(ring, weight);
    let mut rows: RowIndex<(usize, Monomial)> = RowIndex::new();
    let images: Vec<SparseVec> = candidates
        .iter()
        .map(|m| {
            let p = JetPoly::term(m.clone(), Q::from_integer(1.into()));
            let mut v = SparseVec::new();
            for (k, &(i, r)) in ops.iter().enumerate() {
                for (n, c) in ring.basis_action(i, r, &p).terms() {
                    v.insert(rows.id(&(k, n.clone())), c.clone());
                }
            }
            v
        })
        .collect();
    let basis: Vec<JetPoly> = kernel(images)
        .into_iter()
        .map(|vec| {
            let mut p = JetPoly::zero();
            for (j, c) in vec {
                p.add_term(candidates[j].clone(), c);
            }
            p
        })
        .collect();
    Ok(InvariantSlice { level: ring.level, weight, degree, slice_size, candidates: candidates.len(), dimension: basis.len(), basis })
}

/// Rank of the products of `D^i(g)`, `i ≤ level`, lying in the slice.
/// `generators` must be homogeneous of weight zero.
pub fn generated_component(ring: &JetRing, generators: &[JetPoly], weight: usize, degree: usize) -> Result<GeneratedSlice, JetError> {
    check_size(ring, weight, degree)?;
    let mut items: Vec<(usize, usize, JetPoly)> = Vec::new();
    for g in generators {
        let Some((0, deg)) = g.bidegree() else {
            return Err(JetError::NotBase(g.to_string()));
        };
        for i in 0..=ring.level.min(weight) {
            let p = ring.d_n(g, i);
            if !p.is_zero() {
                items.push((i, deg as usize, p));
            }
        }
    }
    let mut products = Vec::new();
    collect_products(&items, 0, weight, degree, JetPoly::one(), &mut products);
    let mut index: RowIndex<Monomial> = RowIndex::new();
    let mut reducer = Reducer::rank_only();
    for p in &products {
        let v = index.encode(p.terms());
        reducer.insert(v);
    }
    Ok(GeneratedSlice { weight, degree, dimension: reducer.rank(), products })
}

fn collect_products(items: &[(usize, usize, JetPoly)], from: usize, weight: usize, degree: usize, acc: JetPoly, out: &mut Vec<JetPoly>) {
    if weight == 0 && degree == 0 {
        out.push(acc);
        return;
    }
    for (k, (w, d, p)) in items.iter().enumerate().skip(from) {
        if *w <= weight && *d <= degree && *d > 0 {
            collect_products(items, k, weight - w, degree - d, &acc * p, out);
        }
    }
}

/// Random homogeneous element of a slice with small integer coefficients.
fn random_element<R: Rng>(rng: &mut R, slice: &[Monomial], terms: usize) -> JetPoly {
    let mut p = JetPoly::zero();
    for _ in 0..terms {
        if let Some(m) = slice.get(rng.gen_range(0..slice.len().max(1))) {
            p.add_term(m.clone(), qi(rng.gen_range(-4..=4)));
        }
    }
    p
}

fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<Q> {
    (0..dim).map(|_| qi(rng.gen_range(-3..=3))).collect()
}

/// `[ξtʳ, ηtˢ] = [ξ,η]t^{r+s}` on random elements of random slices.
pub fn verify_action_brackets(ring: &JetRing, seed: u64, cases: usize) -> Report {
    let mut report = Report::new("jet-action-brackets").with_seed(seed);
    let mut rng = sample::rng(seed);
    let mut failures = Vec::new();
    for _ in 0..cases {
        let weight = rng.gen_range(0..=3);
        let degree = rng.gen_range(1..=3);
        let slice = ring.slice(weight, degree);
        if slice.is_empty() {
            continue;
        }
        let p = random_element(&mut rng, &slice, 4);
        let xi = random_vector(&mut rng, ring.lie.dim());
        let eta = random_vector(&mut rng, ring.lie.dim());
        let (r, s) = (rng.gen_range(0..=ring.level + 1), rng.gen_range(0..=ring.level + 1));
        let lhs = &ring.lie_jet_action(&xi, r, &ring.lie_jet_action(&eta, s, &p))
            - &ring.lie_jet_action(&eta, s, &ring.lie_jet_action(&xi, r, &p));
        let bracket = ring.lie.bracket(&xi, &eta).expect("dimensions agree");
        let rhs = ring.lie_jet_action(&bracket, r + s, &p);
        if lhs != rhs {
            failures.push(format!("r={r}, s={s}, p={p}"));
        }
    }
    report.flag(
        format!("[xi t^r, eta t^s] = [xi, eta] t^(r+s) on {cases} random elements"),
        failures.is_empty(),
        failures.first().cloned().unwrap_or_default(),
    );
    report
}

/// Compares invariant and generated dimensions on every slice with
/// `level ≤ max_level`, `weight ≤ max_weight`, `degree ≤ max_degree`, and
/// checks that every generated product is invariant.
pub fn verify_generation(copies: &[usize], max_level: usize, max_weight: usize, max_degree: usize, seed: u64) -> Report {
    let mut report = Report::new("jet-theorem63").with_seed(seed);
    for &p in copies {
        let gens: Vec<JetPoly> = weyl_generators(p).generators().into_iter().map(|g| g.poly).collect();
        for level in 0..=max_level {
            let ring = JetRing::adjoint_copies(p, level);
            for weight in 0..=max_weight.min(level * max_degree) {
                for degree in 0..=max_degree {
                    if weight > level * degree {
                        continue;
                    }
                    let label = format!("V^{p}, m={level}, weight {weight}, degree {degree}");
                    match (invariant_component(&ring, weight, degree), generated_component(&ring, &gens, weight, degree)) {
                        (Ok(inv), Ok(gen)) => {
                            let contained = gen.products.iter().all(|g| is_gt_invariant(&ring, g));
                            report.flag(
                                format!("{label}: invariant = generated"),
                                inv.dimension == gen.dimension && contained,
                                format!(
                                    "slice {}, candidates {}, invariant {}, generated {}{}",
                                    inv.slice_size,
                                    inv.candidates,
                                    inv.dimension,
                                    gen.dimension,
                                    if contained { "" } else { ", a generated product is not invariant" }
                                ),
                            );
                        }
                        (Err(e), _) | (_, Err(e)) => {
                            report.flag(format!("{label}: invariant = generated"), false, e.to_string());
                        }
                    }
                }
            }
        }
        let ring = JetRing::adjoint_copies(p, max_level);
        report.extend(verify_action_brackets(&ring, seed, 100));
    }
    report
}
