//! Truncated jet rings `O(J_m(V))` with the shift derivation `D` and the
//! `g[t]` action `ξtʳ(x_j^{(i)}) = i!/(i−r)! · ξ(x_j)^{(i−r)}`.

use crate::poly::{JetPoly, Monomial, Var};
use crate::JetError;
use num::Zero;
use voaforge_core::lie::{LieAlgebra, Vector};
use voaforge_core::linalg::dense::{self, Matrix};
use voaforge_core::rational::{falling, qi};
use voaforge_core::Q;

/// Position of each coordinate component `(h, x, y)` in the sl₂ root basis `(x, y, h)`.
const SL2_INDEX: [usize; 3] = [2, 0, 1];
/// `v = a^h h + 2a^x x + 2a^y y`, which makes `q_ii = (a^h)² + 4a^x a^y` invariant.
const SL2_SCALE: [i64; 3] = [1, 2, 2];

/// `O(J_m(V))` for a representation `V` given by the action of each Lie basis
/// vector on the base coordinates: `ξ_i(x_j) = Σ_k actions[i][j][k] x_k`.
#[derive(Clone, Debug)]
pub struct JetRing {
    pub lie: LieAlgebra,
    pub actions: Vec<Matrix>,
    pub level: usize,
    torus: Vec<Vec<Q>>,
}

impl JetRing {
    /// Checks that the matrices define a representation by derivations.
    pub fn new(lie: LieAlgebra, actions: Vec<Matrix>, level: usize) -> Result<Self, JetError> {
        let n = actions.first().map_or(0, Vec::len);
        if actions.len() != lie.dim() || actions.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return Err(JetError::Representation("one n×n matrix per basis vector is required".into()));
        }
        let ring = JetRing { lie, actions, level, torus: Vec::new() };
        for i in 0..ring.lie.dim() {
            for j in 0..ring.lie.dim() {
                let bracket = ring.lie.bracket(&ring.lie.basis(i), &ring.lie.basis(j)).expect("basis vectors");
                let lhs = sub(&dense::mul(&ring.actions[j], &ring.actions[i]), &dense::mul(&ring.actions[i], &ring.actions[j]));
                if lhs != ring.action_matrix(&bracket) {
                    return Err(JetError::Representation(format!(
                        "[{}, {}] is not represented by the commutator of derivations",
                        ring.lie.labels[i], ring.lie.labels[j]
                    )));
                }
            }
        }
        let torus = ring.actions.iter().filter(|m| is_diagonal(m)).map(|m| (0..n).map(|j| m[j][j].clone()).collect()).collect();
        Ok(JetRing { torus, ..ring })
    }

    /// `p` copies of the adjoint representation of sl₂ with coordinates
    /// `(a^h_i, a^x_i, a^y_i)`, truncated at jet level `level`.
    pub fn adjoint_copies(copies: usize, level: usize) -> Self {
        let lie = LieAlgebra::sl2();
        let n = 3 * copies;
        let actions = (0..3)
            .map(|i| {
                let mut m = vec![vec![Q::zero(); n]; n];
                for copy in 0..copies {
                    for target in 0..3 {
                        for source in 0..3 {
                            let f = &lie.structure[i][SL2_INDEX[source]][SL2_INDEX[target]];
                            m[3 * copy + target][3 * copy + source] = -f * qi(SL2_SCALE[source]) / qi(SL2_SCALE[target]);
                        }
                    }
                }
                m
            })
            .collect();
        JetRing::new(lie, actions, level).expect("the coadjoint coordinates form a representation")
    }

    pub fn base_dim(&self) -> usize {
        self.actions.first().map_or(0, Vec::len)
    }

    /// `ξ ↦ Σ ξ_i actions[i]`.
    pub fn action_matrix(&self, xi: &[Q]) -> Matrix {
        let n = self.base_dim();
        let mut out = vec![vec![Q::zero(); n]; n];
        for (c, m) in xi.iter().zip(&self.actions) {
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    out[j][k] += c * &m[j][k];
                }
            }
        }
        out
    }

    /// All variables `x_j^{(i)}`, `0 ≤ i ≤ level`, in variable order.
    pub fn variables(&self) -> Vec<Var> {
        (0..self.base_dim()).flat_map(|j| (0..=self.level).map(move |i| Var::new(j, i))).collect()
    }

    pub fn base_variables(&self) -> Vec<Var> {
        (0..self.base_dim()).map(|j| Var::new(j, 0)).collect()
    }

    /// The shift derivation `D(x^{(i)}) = x^{(i+1)}`, with `D(x^{(m)}) = 0`.
    pub fn d(&self, p: &JetPoly) -> JetPoly {
        p.derivation(|v| if (v.level as usize) < self.level { JetPoly::var(v.with_level(v.level as usize + 1)) } else { JetPoly::zero() })
    }

    pub fn d_n(&self, p: &JetPoly, n: usize) -> JetPoly {
        (0..n).fold(p.clone(), |acc, _| self.d(&acc))
    }

    /// The derivation `ξtʳ` applied to `p`.
    pub fn lie_jet_action(&self, xi: &[Q], r: usize, p: &JetPoly) -> JetPoly {
        let m = self.action_matrix(xi);
        p.derivation(|v| {
            let i = v.level as usize;
            if r > i {
                return JetPoly::zero();
            }
            let c = falling(i as i64, r as u32);
            let mut out = JetPoly::zero();
            for (k, a) in m[v.base as usize].iter().enumerate() {
                if !a.is_zero() {
                    out.add_term(Monomial::var(Var::new(k, i - r)), a * &c);
                }
            }
            out
        })
    }

    /// `ξ_i tʳ` for the `i`-th basis vector.
    pub fn basis_action(&self, i: usize, r: usize, p: &JetPoly) -> JetPoly {
        self.lie_jet_action(&self.lie.basis(i), r, p)
    }

    /// True iff every basis vector of `g` (at `r = 0`) kills `p`.
    pub fn is_g_invariant(&self, p: &JetPoly) -> bool {
        (0..self.lie.dim()).all(|i| self.basis_action(i, 0, p).is_zero())
    }

    /// Number of monomials of the given weight and degree.
    pub fn slice_size(&self, weight: usize, degree: usize) -> u128 {
        let mut dp = vec![vec![0u128; weight + 1]; degree + 1];
        dp[0][0] = 1;
        for v in self.variables() {
            let l = v.level as usize;
            for d in 1..=degree {
                for w in l..=weight {
                    let add = dp[d - 1][w - l];
                    dp[d][w] = dp[d][w].saturating_add(add);
                }
            }
        }
        dp[degree][weight]
    }

    /// All monomials of the given weight (sum of levels) and degree.
    pub fn slice(&self, weight: usize, degree: usize) -> Vec<Monomial> {
        let vars = self.variables();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.fill_slice(&vars, 0, weight, degree, &mut current, &mut out);
        out.sort();
        out
    }

    fn fill_slice(&self, vars: &[Var], from: usize, weight: usize, degree: usize, current: &mut Vec<Var>, out: &mut Vec<Monomial>) {
        if degree == 0 {
            if weight == 0 {
                out.push(Monomial::from_powers(current.iter().map(|v| (*v, 1))));
            }
            return;
        }
        if weight > degree * self.level {
            return;
        }
        for (k, v) in vars.iter().enumerate().skip(from) {
            let l = v.level as usize;
            if l > weight {
                continue;
            }
            current.push(*v);
            self.fill_slice(vars, k, weight - l, degree - 1, current, out);
            current.pop();
        }
    }

    /// Eigenvalues of the diagonal basis vectors on `m`; an invariant can only
    /// involve monomials on which all of them vanish.
    pub fn torus_weight(&self, m: &Monomial) -> Vec<Q> {
        self.torus.iter().map(|diag| m.powers().iter().map(|(v, e)| &diag[v.base as usize] * qi(*e as i64)).sum()).collect()
    }

    pub fn is_torus_neutral(&self, m: &Monomial) -> bool {
        self.torus_weight(m).iter().all(Q::is_zero)
    }
}

fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect()).collect()
}

fn is_diagonal(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(j, r)| r.iter().enumerate().all(|(k, c)| j == k || c.is_zero()))
}

/// The basis vector of sl₂ labelled `x`, `y` or `h`.
pub fn sl2_vector(lie: &LieAlgebra, label: &str) -> Option<Vector> {
    lie.index_of(label).map(|i| lie.basis(i))
}

/// Coefficient `c^r_i = i!/(i−r)!`, zero for `r > i`.
pub fn jet_coefficient(r: usize, i: usize) -> Q {
    if r > i {
        Q::zero()
    } else {
        falling(i as i64, r as u32)
    }
}
