//! Finite-dimensional Lie algebra presentations over ℚ.

use crate::linalg::dense::{self, Matrix};
use crate::rational::{q, Q};
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("Killing form is singular; the algebra is not semisimple")]
    SingularKilling,
    #[error("structure constants violate {0}")]
    Axiom(String),
    #[error("malformed presentation: {0}")]
    Malformed(String),
}

/// A vector in the algebra (or in its dual) written in the chosen basis.
pub type Vector = Vec<Q>;

/// Basis, structure constants `[ξ_i, ξ_j] = Σ_k f[i][j][k] ξ_k`, Killing form
/// and, for semisimple algebras, its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    pub labels: Vec<String>,
    pub structure: Vec<Vec<Vector>>,
    pub killing: Matrix,
    pub killing_inverse: Option<Matrix>,
}

/// Pairs `(u_a, u^a)` with `κ(u_a, u^b) = δ_a^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualPairs {
    pub pairs: Vec<(Vector, Vector)>,
}

fn unit(n: usize, i: usize) -> Vector {
    (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

impl LieAlgebra {
    /// Builds a presentation from labels and structure constants, checking the
    /// Lie axioms and computing the Killing form.
    pub fn new(labels: Vec<String>, structure: Vec<Vec<Vector>>) -> Result<Self, LieError> {
        let n = labels.len();
        if structure.len() != n || structure.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(LieError::Malformed("structure tensor must be n×n×n".into()));
        }
        let mut alg = LieAlgebra { labels, structure, killing: Vec::new(), killing_inverse: None };
        alg.check_antisymmetry()?;
        alg.check_jacobi()?;
        alg.killing = alg.compute_killing();
        alg.killing_inverse = dense::inverse(&alg.killing);
        Ok(alg)
    }

    /// The root basis `(x, y, h)` of sl₂ with `[x,y]=h`, `[h,x]=2x`, `[h,y]=−2y`.
    pub fn sl2() -> Self {
        let z = || vec![Q::zero(); 3];
        let mut f = vec![vec![z(); 3]; 3];
        let (x, y, h) = (0, 1, 2);
        let set = |f: &mut Vec<Vec<Vector>>, i: usize, j: usize, v: Vector| {
            let neg: Vector = v.iter().map(|c| -c.clone()).collect();
            f[i][j] = v;
            f[j][i] = neg;
        };
        set(&mut f, x, y, vec![Q::zero(), Q::zero(), Q::one()]);
        set(&mut f, h, x, vec![q(2, 1), Q::zero(), Q::zero()]);
        set(&mut f, h, y, vec![Q::zero(), q(-2, 1), Q::zero()]);
        LieAlgebra::new(vec!["x".into(), "y".into(), "h".into()], f).expect("sl2 presentation is valid")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit(self.dim(), i)
    }

    /// The basis vector with the given label.
    pub fn named(&self, label: &str) -> Vector {
        self.basis(self.index_of(label).unwrap_or_else(|| panic!("unknown basis label {label}")))
    }

    pub fn is_semisimple(&self) -> bool {
        self.killing_inverse.is_some()
    }

    fn check_len(&self, v: &Vector) -> Result<(), LieError> {
        if v.len() != self.dim() {
            return Err(LieError::Dimension { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// Bilinear bracket of two vectors.
    pub fn bracket(&self, a: &Vector, b: &Vector) -> Result<Vector, LieError> {
        self.check_len(a)?;
        self.check_len(b)?;
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for k in 0..n {
                    if !self.structure[i][j][k].is_zero() {
                        out[k] += &c * &self.structure[i][j][k];
                    }
                }
            }
        }
        Ok(out)
    }

    fn br(&self, a: &Vector, b: &Vector) -> Vector {
        self.bracket(a, b).expect("basis-sized vectors")
    }

    /// Matrix of `ad ξ_i`, acting on column vectors.
    pub fn ad_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = vec![vec![Q::zero(); n]; n];
        for j in 0..n {
            for k in 0..n {
                m[k][j] = self.structure[i][j][k].clone();
            }
        }
        m
    }

    fn compute_killing(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_matrix(i)).collect();
        let mut k = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = dense::mul(&ads[i], &ads[j]);
                k[i][j] = (0..n).fold(Q::zero(), |acc, t| acc + &p[t][t]);
            }
        }
        k
    }

    /// κ(a, b) for arbitrary vectors.
    pub fn kappa(&self, a: &Vector, b: &Vector) -> Q {
        let n = self.dim();
        let mut acc = Q::zero();
        for i in 0..n {
            for j in 0..n {
                if !a[i].is_zero() && !b[j].is_zero() {
                    acc += &a[i] * &b[j] * &self.killing[i][j];
                }
            }
        }
        acc
    }

    /// Coadjoint action `(ad*(ξ)φ)(η) = −φ([ξ, η])` on dual-basis coordinates.
    pub fn coadjoint(&self, xi: &Vector, phi: &Vector) -> Result<Vector, LieError> {
        self.check_len(xi)?;
        self.check_len(phi)?;
        let n = self.dim();
        Ok((0..n)
            .map(|j| {
                let b = self.br(xi, &self.basis(j));
                -(0..n).fold(Q::zero(), |acc, k| acc + &phi[k] * &b[k])
            })
            .collect())
    }

    /// Dual pairs `(ξ_i, Σ_j κ^{ij} ξ_j)` for each basis vector.
    pub fn dual_pairs(&self) -> Result<DualPairs, LieError> {
        let inv = self.killing_inverse.as_ref().ok_or(LieError::SingularKilling)?;
        let n = self.dim();
        Ok(DualPairs { pairs: (0..n).map(|i| (self.basis(i), inv[i].clone())).collect() })
    }

    fn check_antisymmetry(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.structure[i][j][k] != -self.structure[j][i][k].clone() {
                        return Err(LieError::Axiom(format!("antisymmetry at ({i},{j})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let t1 = self.br(&a, &self.br(&b, &c));
                    let t2 = self.br(&b, &self.br(&c, &a));
                    let t3 = self.br(&c, &self.br(&a, &b));
                    if (0..n).any(|t| !(t1[t].clone() + &t2[t] + &t3[t]).is_zero()) {
                        return Err(LieError::Axiom(format!("Jacobi at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// ad-invariance of κ on all basis triples.
    pub fn killing_is_invariant(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    (self.kappa(&self.br(&a, &b), &c) + self.kappa(&b, &self.br(&a, &c))).is_zero()
                })
            })
        })
    }

    /// Loads `{"basis": [...], "brackets": [[i, j, [coeffs]], ...]}`. Unlisted
    /// brackets are zero; `[ξ_j, ξ_i]` is filled in by antisymmetry.
    pub fn from_json(text: &str) -> Result<Self, LieError> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| LieError::Malformed(e.to_string()))?;
        let basis = v.get("basis").and_then(|b| b.as_array()).ok_or_else(|| LieError::Malformed("missing basis".into()))?;
        let labels: Vec<String> = basis
            .iter()
            .map(|b| b.as_str().map(str::to_string).ok_or_else(|| LieError::Malformed("basis labels must be strings".into())))
            .collect::<Result<_, _>>()?;
        let n = labels.len();
        let mut f = vec![vec![vec![Q::zero(); n]; n]; n];
        let brackets = v.get("brackets").and_then(|b| b.as_array()).cloned().unwrap_or_default();
        for entry in brackets {
            let e = entry.as_array().ok_or_else(|| LieError::Malformed("bracket entry must be an array".into()))?;
            if e.len() != 3 {
                return Err(LieError::Malformed("bracket entry must be [i, j, coeffs]".into()));
            }
            let idx = |x: &serde_json::Value| -> Result<usize, LieError> {
                let i = x.as_u64().ok_or_else(|| LieError::Malformed("bracket index must be a natural number".into()))? as usize;
                if i >= n {
                    return Err(LieError::Malformed(format!("bracket index {i} out of range")));
                }
                Ok(i)
            };
            let (i, j) = (idx(&e[0])?, idx(&e[1])?);
            let coeffs = e[2].as_array().ok_or_else(|| LieError::Malformed("coefficients must be an array".into()))?;
            if coeffs.len() != n {
                return Err(LieError::Dimension { expected: n, got: coeffs.len() });
            }
            let vec: Vector = coeffs
                .iter()
                .map(|c| match c {
                    serde_json::Value::String(s) => crate::rational::parse_q(s),
                    serde_json::Value::Number(x) => x.as_i64().map(crate::rational::qi),
                    _ => None,
                })
                .collect::<Option<_>>()
                .ok_or_else(|| LieError::Malformed("coefficients must be integers or \"p/q\" strings".into()))?;
            f[j][i] = vec.iter().map(|c| -c.clone()).collect();
            f[i][j] = vec;
        }
        LieAlgebra::new(labels, f)
    }
}

impl DualPairs {
    /// Σ_a u_a ⊗ u^a as a matrix.
    pub fn tensor(&self) -> Matrix {
        let n = self.pairs.first().map_or(0, |p| p.0.len());
        let mut m = vec![vec![Q::zero(); n]; n];
        for (u, w) in &self.pairs {
            for i in 0..n {
                for j in 0..n {
                    m[i][j] += &u[i] * &w[j];
                }
            }
        }
        m
    }
}
