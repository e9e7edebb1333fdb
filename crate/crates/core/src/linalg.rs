//! Exact sparse linear algebra over ℚ by incremental column echelon reduction.
//!
//! Vectors are sparse maps from a row key to a rational. Columns are fed one at
//! a time; each column is reduced against the pivots collected so far while the
//! reducer remembers which input columns produced each stored vector. This
//! gives rank, linear solves and kernels from one routine.

use crate::rational::Q;
use num::{One, Zero};
use std::collections::BTreeMap;

/// Sparse vector indexed by dense row numbers.
pub type SparseVec = BTreeMap<usize, Q>;

fn axpy(target: &mut SparseVec, c: &Q, x: &SparseVec) {
    for (k, v) in x {
        let e = target.entry(*k).or_insert_with(Q::zero);
        *e += c * v;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

/// Interns arbitrary ordered keys as dense row numbers.
#[derive(Clone, Debug)]
pub struct RowIndex<K: Ord + Clone> {
    ids: BTreeMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Ord + Clone> Default for RowIndex<K> {
    fn default() -> Self {
        RowIndex { ids: BTreeMap::new(), keys: Vec::new() }
    }
}

impl<K: Ord + Clone> RowIndex<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn id(&mut self, k: &K) -> usize {
        if let Some(i) = self.ids.get(k) {
            return *i;
        }
        let i = self.keys.len();
        self.ids.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }

    pub fn lookup(&self, k: &K) -> Option<usize> {
        self.ids.get(k).copied()
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Converts a keyed sparse map into a row-numbered vector.
    pub fn encode<'a, I>(&mut self, entries: I) -> SparseVec
    where
        I: IntoIterator<Item = (&'a K, &'a Q)>,
        K: 'a,
    {
        let mut v = SparseVec::new();
        for (k, c) in entries {
            if !c.is_zero() {
                let id = self.id(k);
                let e = v.entry(id).or_insert_with(Q::zero);
                *e += c;
                if e.is_zero() {
                    v.remove(&id);
                }
            }
        }
        v
    }
}

/// Incremental echelon form that tracks column combinations.
#[derive(Clone, Debug, Default)]
pub struct Reducer {
    /// pivot row -> (reduced vector with that leading row, combination of inputs)
    pivots: BTreeMap<usize, (SparseVec, SparseVec)>,
    columns: usize,
    track: bool,
}

/// Outcome of feeding one column to a [`Reducer`].
pub enum Insert {
    /// The column was independent and became a new pivot.
    Pivot,
    /// The column was dependent: the returned combination of input columns is
    /// a kernel vector (it includes the new column with coefficient 1).
    Dependent(SparseVec),
}

impl Reducer {
    /// A reducer that records input combinations (needed for solves and kernels).
    pub fn tracking() -> Self {
        Reducer { track: true, ..Default::default() }
    }

    /// A reducer that only computes rank.
    pub fn rank_only() -> Self {
        Reducer::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    fn reduce(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        while let Some(lead) = v.keys().next().copied() {
            let Some((pv, pc)) = self.pivots.get(&lead) else { break };
            let c = -v[&lead].clone() / &pv[&lead];
            axpy(&mut v, &c, pv);
            if self.track {
                axpy(&mut combo, &c, pc);
            }
        }
        (v, combo)
    }

    /// Feeds the next input column.
    pub fn insert(&mut self, v: SparseVec) -> Insert {
        let idx = self.columns;
        self.columns += 1;
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(idx, Q::one());
        }
        let (r, combo) = self.reduce(v, combo);
        match r.keys().next().copied() {
            None => Insert::Dependent(combo),
            Some(lead) => {
                self.pivots.insert(lead, (r, combo));
                Insert::Pivot
            }
        }
    }

    /// Expresses `target` as a combination of the inserted columns, if possible.
    pub fn solve(&self, target: SparseVec) -> Option<SparseVec> {
        let (r, combo) = self.reduce(target, SparseVec::new());
        if r.is_empty() {
            let mut out = SparseVec::new();
            for (k, c) in combo {
                out.insert(k, -c);
            }
            Some(out)
        } else {
            None
        }
    }

    /// True iff `v` lies in the span of the inserted columns.
    pub fn contains(&self, v: SparseVec) -> bool {
        let (r, _) = self.reduce(v, SparseVec::new());
        r.is_empty()
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<I: IntoIterator<Item = SparseVec>>(vectors: I) -> usize {
    let mut red = Reducer::rank_only();
    for v in vectors {
        red.insert(v);
    }
    red.rank()
}

/// Basis of the kernel of the linear map sending column `j` to `images[j]`.
pub fn kernel(images: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut red = Reducer::tracking();
    let mut out = Vec::new();
    for v in images {
        if let Insert::Dependent(k) = red.insert(v) {
            out.push(k);
        }
    }
    out
}

/// Dense exact matrix helpers for the small Lie-algebra computations.
pub mod dense {
    use super::Q;
    use num::{One, Zero};

    pub type Matrix = Vec<Vec<Q>>;

    pub fn identity(n: usize) -> Matrix {
        (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
    }

    pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.len();
        let m = b.first().map_or(0, |r| r.len());
        let k = b.len();
        let mut out = vec![vec![Q::zero(); m]; n];
        for i in 0..n {
            for l in 0..k {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..m {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(a: &Matrix) -> Option<Matrix> {
        let n = a.len();
        let mut m: Vec<Vec<Q>> = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let inv = Q::one() / &m[col][col];
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *x -= &f * p;
                    }
                }
            }
        }
        Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Determinant by Gaussian elimination over ℚ.
    pub fn det(a: &Matrix) -> Q {
        let n = a.len();
        let mut m = a.clone();
        let mut acc = Q::one();
        for col in 0..n {
            let piv = match (col..n).find(|&r| !m[r][col].is_zero()) {
                Some(p) => p,
                None => return Q::zero(),
            };
            if piv != col {
                m.swap(col, piv);
                acc = -acc;
            }
            acc *= &m[col][col];
            for r in col + 1..n {
                if !m[r][col].is_zero() {
                    let f = &m[r][col] / &m[col][col];
                    let pivot_row = m[col].clone();
                    for (x, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *x -= &f * p;
                    }
                }
            }
        }
        acc
    }

    /// Rank by Gaussian elimination.
    pub fn rank(a: &Matrix) -> usize {
        let mut m = a.clone();
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..cols {
            let piv = match (r..rows).find(|&i| !m[i][c].is_zero()) {
                Some(p) => p,
                None => continue,
            };
            m.swap(r, piv);
            for i in r + 1..rows {
                if !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    let pivot_row = m[r].clone();
                    for (x, p) in m[i].iter_mut().zip(pivot_row.iter()) {
                        *x -= &f * p;
                    }
                }
            }
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }
}
