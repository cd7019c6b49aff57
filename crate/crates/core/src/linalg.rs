//! Exact dense and sparse linear algebra over [`Scalar`].

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Rank by fraction-free (Bareiss) elimination with first-nonzero pivoting.
    pub fn rank(&self) -> usize {
        bareiss(self).0
    }

    /// Determinant of a square matrix by Bareiss elimination.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let (rank, last, swaps) = bareiss(self);
        if rank < self.rows {
            return Scalar::zero();
        }
        let mut d = last;
        d.apply_sign(swaps % 2 == 1);
        d
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Singular("non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero()).ok_or_else(|| Error::Singular(format!("no pivot in column {c}")))?;
            if p != c {
                a.swap_rows(p, c);
                inv.swap_rows(p, c);
            }
            let piv = a.get(c, c).inv().unwrap();
            for j in 0..n {
                let v = a.get(c, j) * &piv;
                a.set(c, j, v);
                let w = inv.get(c, j) * &piv;
                inv.set(c, j, w);
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &(&f * a.get(c, j));
                    a.set(r, j, v);
                    let w = inv.get(r, j) - &(&f * inv.get(c, j));
                    inv.set(r, j, w);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right nullspace `{x : self x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(SparseVec::from_dense(self.row(i)));
        }
        e.nullspace()
    }
}

/// Returns (rank, last pivot, row swaps). The last pivot is the determinant
/// up to sign when the matrix is square and nonsingular.
fn bareiss(m: &Matrix) -> (usize, Scalar, usize) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = Scalar::one();
    let mut rank = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a.get(r, c).is_zero()) else { continue };
        if p != rank {
            a.swap_rows(p, rank);
            swaps += 1;
        }
        let piv = a.get(rank, c).clone();
        for r in rank + 1..rows {
            let f = a.get(r, c).clone();
            for j in c..cols {
                let v = &(&(&piv * a.get(r, j)) - &(&f * a.get(rank, j))) / &prev;
                a.set(r, j, v);
            }
        }
        prev = piv;
        rank += 1;
    }
    (rank, prev, swaps)
}

/// Sparse vector with strictly increasing indices and nonzero values.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect(),
        }
    }

    /// Build from unsorted (index, value) pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            *acc.entry(i).or_default() += v;
        }
        SparseVec { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }
}

/// Incremental row echelon form over sparse rows. Pivot rows are normalised
/// to leading coefficient one; insertion order fixes the pivots.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce(&self, v: SparseVec) -> BTreeMap<usize, Scalar> {
        let mut acc: BTreeMap<usize, Scalar> = v.entries.into_iter().collect();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).find(|(c, _)| self.pivot_row.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((c, f)) = next else { break };
            let row = &self.rows[self.pivot_row[&c]];
            for (j, x) in &row.entries {
                let e = acc.entry(*j).or_default();
                *e -= &(&f * x);
                if e.is_zero() {
                    acc.remove(j);
                }
            }
            cursor = c + 1;
        }
        acc
    }

    /// Insert a row. Returns true when it was independent of the rows so far.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let acc = self.reduce(v);
        let Some((&p, lead)) = acc.iter().next() else { return false };
        let inv = lead.inv().unwrap();
        let row = SparseVec { entries: acc.iter().map(|(j, x)| (*j, x * &inv)).collect() };
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Basis of the solution space of the homogeneous system whose rows were inserted.
    /// Free columns are taken in increasing order; each basis vector has a one at its
    /// free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut pivots: Vec<usize> = self.pivot_row.keys().copied().collect();
        pivots.sort_unstable();
        // fully reduce, largest pivot first
        let mut reduced: HashMap<usize, BTreeMap<usize, Scalar>> = HashMap::new();
        for &p in pivots.iter().rev() {
            let mut acc: BTreeMap<usize, Scalar> = self.rows[self.pivot_row[&p]].entries.iter().cloned().collect();
            let targets: Vec<usize> = acc.keys().copied().filter(|c| *c > p && reduced.contains_key(c)).collect();
            for q in targets {
                let Some(f) = acc.get(&q).cloned() else { continue };
                for (j, x) in &reduced[&q] {
                    let e = acc.entry(*j).or_default();
                    *e -= &(&f * x);
                    if e.is_zero() {
                        acc.remove(j);
                    }
                }
            }
            reduced.insert(p, acc);
        }
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivot_row.contains_key(&f) {
                continue;
            }
            let mut x = vec![Scalar::zero(); self.ncols];
            x[f] = Scalar::one();
            for &p in &pivots {
                if let Some(c) = reduced[&p].get(&f) {
                    x[p] = -c;
                }
            }
            out.push(x);
        }
        out
    }
}

/// Rank of a family of sparse vectors.
pub fn sparse_rank(ncols: usize, vecs: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new(ncols);
    for v in vecs {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn arb_matrix(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-3i64..4, r * c)
            .prop_map(move |v| Matrix::from_fn(r, c, |i, j| s(v[i * c + j])))
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_rows(vec![vec![s(2), s(1)], vec![s(1), s(1)]]);
        assert_eq!(m.det(), s(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let sing = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert_eq!(sing.rank(), 1);
        assert!(sing.inverse().is_err());
        assert_eq!(sing.det(), s(0));
    }

    #[test]
    fn nullspace_small() {
        let m = Matrix::from_rows(vec![vec![s(1), s(1), s(0)], vec![s(0), s(0), s(1)]]);
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![s(-1), s(1), s(0)]]);
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(4, 6)) {
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.len(), 6);
            for x in &ns {
                let col = Matrix::from_fn(6, 1, |i, _| x[i].clone());
                prop_assert!(m.mul(&col).is_zero());
            }
        }

        #[test]
        fn bareiss_matches_echelon(m in arb_matrix(5, 5)) {
            let r = sparse_rank(5, (0..5).map(|i| SparseVec::from_dense(m.row(i))));
            prop_assert_eq!(m.rank(), r);
            prop_assert_eq!(m.det().is_zero(), r < 5);
        }

        #[test]
        fn det_multiplicative(a in arb_matrix(3, 3), b in arb_matrix(3, 3)) {
            prop_assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
        }
    }
}
