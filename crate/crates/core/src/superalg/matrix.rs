//! Supermatrices with entries in a superalgebra.

use num_traits::Zero;

use super::{AlgElem, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A `(m|n) x (r|s)` matrix over `A`. Rows `0..m` and columns `0..r` are even.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperMatrix {
    rows: (usize, usize),
    cols: (usize, usize),
    entries: Vec<AlgElem>,
}

impl SuperMatrix {
    pub fn zeros(rows: (usize, usize), cols: (usize, usize), dim: usize) -> Self {
        let n = (rows.0 + rows.1) * (cols.0 + cols.1);
        SuperMatrix { rows, cols, entries: vec![AlgElem::zero(dim); n] }
    }

    pub fn identity(m: usize, n: usize, alg: &SuperAlgebra) -> Self {
        let mut x = SuperMatrix::zeros((m, n), (m, n), alg.dim());
        for i in 0..m + n {
            x.set(i, i, alg.unit().clone());
        }
        x
    }

    /// `diag(I_m, -I_n)`.
    pub fn parity_sign(m: usize, n: usize, alg: &SuperAlgebra) -> Self {
        let mut x = SuperMatrix::identity(m, n, alg);
        for i in m..m + n {
            x.set(i, i, -alg.unit());
        }
        x
    }

    /// Matrix unit `E_ij a`.
    pub fn unit(rows: (usize, usize), cols: (usize, usize), i: usize, j: usize, a: AlgElem) -> Self {
        let mut x = SuperMatrix::zeros(rows, cols, a.dim());
        x.set(i, j, a);
        x
    }

    pub fn from_entries(rows: (usize, usize), cols: (usize, usize), entries: Vec<AlgElem>) -> Self {
        assert_eq!(entries.len(), (rows.0 + rows.1) * (cols.0 + cols.1));
        SuperMatrix { rows, cols, entries }
    }

    pub fn row_dims(&self) -> (usize, usize) {
        self.rows
    }

    pub fn col_dims(&self) -> (usize, usize) {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.0 + self.rows.1
    }

    pub fn ncols(&self) -> usize {
        self.cols.0 + self.cols.1
    }

    pub fn row_parity(&self, i: usize) -> Parity {
        Parity::new(i >= self.rows.0)
    }

    pub fn col_parity(&self, j: usize) -> Parity {
        Parity::new(j >= self.cols.0)
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgElem {
        &self.entries[i * self.ncols() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: AlgElem) {
        let c = self.ncols();
        self.entries[i * c + j] = a;
    }

    pub fn entries(&self) -> &[AlgElem] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgElem::is_zero)
    }

    /// Degree of a homogeneous matrix; `None` if zero or inhomogeneous.
    pub fn parity(&self, alg: &SuperAlgebra) -> Option<Parity> {
        let mut p = None;
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let q = alg.elem_parity(e)? + self.row_parity(i) + self.col_parity(j);
                match p {
                    None => p = Some(q),
                    Some(p0) if p0 != q => return None,
                    _ => {}
                }
            }
        }
        p
    }

    /// Homogeneous component of degree `p`.
    pub fn homogeneous_part(&self, alg: &SuperAlgebra, p: Parity) -> SuperMatrix {
        let mut out = self.clone();
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let q = p + self.row_parity(i) + self.col_parity(j);
                out.set(i, j, alg.homogeneous_part(self.get(i, j), q));
            }
        }
        out
    }

    pub fn add(&self, o: &SuperMatrix) -> SuperMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        SuperMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> SuperMatrix {
        SuperMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &crate::scalar::Scalar) -> SuperMatrix {
        SuperMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul(&self, o: &SuperMatrix, alg: &SuperAlgebra) -> SuperMatrix {
        assert_eq!(self.cols, o.rows, "supermatrix shape mismatch");
        let mut out = SuperMatrix::zeros(self.rows, o.cols, alg.dim());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.ncols() {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let c = out.ncols();
                        out.entries[i * c + j] += &alg.mul(a, b);
                    }
                }
            }
        }
        out
    }

    fn map_entries(&self, f: impl Fn(&AlgElem) -> AlgElem) -> SuperMatrix {
        SuperMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// Supertranspose. Inhomogeneous matrices are transposed componentwise.
    pub fn supertranspose(&self, alg: &SuperAlgebra) -> SuperMatrix {
        let mut out = SuperMatrix::zeros(self.cols, self.rows, alg.dim());
        for p in [Parity::EVEN, Parity::ODD] {
            let x = self.homogeneous_part(alg, p);
            for i in 0..self.nrows() {
                for j in 0..self.ncols() {
                    let e = x.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    let (ro, co) = (self.row_parity(i).is_odd(), self.col_parity(j).is_odd());
                    let neg = match (ro, co) {
                        (false, false) | (true, true) => false,
                        (true, false) => p.is_odd(),
                        (false, true) => !p.is_odd(),
                    };
                    let v = if neg { -e } else { e.clone() };
                    let cur = out.get(j, i) + &v;
                    out.set(j, i, cur);
                }
            }
        }
        out
    }

    /// Entrywise `⋆`.
    pub fn star(&self, alg: &SuperAlgebra) -> Result<SuperMatrix> {
        if !alg.has_star() {
            return Err(Error::Algebra(format!("{} has no involution", alg.name())));
        }
        Ok(self.map_entries(|a| alg.star(a).unwrap()))
    }

    /// `X^♯ = (X^⋆)^st`.
    pub fn sharp(&self, alg: &SuperAlgebra) -> Result<SuperMatrix> {
        Ok(self.star(alg)?.supertranspose(alg))
    }

    /// Supertrace `tr X00 - (-1)^{|X|} tr X11` of a square matrix.
    pub fn str(&self, alg: &SuperAlgebra) -> AlgElem {
        assert_eq!(self.rows, self.cols);
        let mut out = alg.zero();
        for p in [Parity::EVEN, Parity::ODD] {
            let x = self.homogeneous_part(alg, p);
            for i in 0..self.nrows() {
                if self.row_parity(i).is_odd() && p.is_even() {
                    out -= x.get(i, i);
                } else {
                    out += x.get(i, i);
                }
            }
        }
        out
    }

    /// `X ↦ (X_op)^st`, reading the entries in `A^op` (same basis).
    pub fn op_iso(&self, alg: &SuperAlgebra) -> SuperMatrix {
        self.supertranspose(alg)
    }

    /// View a square `(m|n)` matrix as an element of `Mat_{m|n}(A)` (see
    /// [`super::catalog::matrix_algebra`]).
    pub fn to_alg_elem(&self, alg: &SuperAlgebra) -> AlgElem {
        let size = self.nrows();
        let da = alg.dim();
        let mut out = AlgElem::zero(size * size * da);
        for r in 0..size {
            for s in 0..size {
                for (k, v) in self.get(r, s).terms() {
                    out.set_coeff((r * size + s) * da + k, v.clone());
                }
            }
        }
        out
    }

    pub fn from_alg_elem(e: &AlgElem, m: usize, n: usize, alg: &SuperAlgebra) -> SuperMatrix {
        let size = m + n;
        let da = alg.dim();
        let mut out = SuperMatrix::zeros((m, n), (m, n), da);
        for (x, v) in e.terms() {
            let (r, s, k) = (x / (size * da), (x / da) % size, x % da);
            let mut cur = out.get(r, s).clone();
            cur.set_coeff(k, v.clone());
            out.set(r, s, cur);
        }
        out
    }

    /// Ground matrix of left multiplication on column vectors `A^{r|s}`;
    /// ground basis `e_t b` has index `t * dim A + b`.
    pub fn ground_matrix(&self, alg: &SuperAlgebra) -> Matrix {
        let da = alg.dim();
        let mut out = Matrix::zeros(self.nrows() * da, self.ncols() * da);
        for t in 0..self.nrows() {
            for u in 0..self.ncols() {
                let y = self.get(t, u);
                if y.is_zero() {
                    continue;
                }
                for c in 0..da {
                    let prod = alg.mul(y, &alg.elem(c));
                    for (k, v) in prod.terms() {
                        out.set(t * da + k, u * da + c, v.clone());
                    }
                }
            }
        }
        out
    }

    /// Inverse of a square supermatrix, through its ground matrix.
    pub fn inverse(&self, alg: &SuperAlgebra) -> Result<SuperMatrix> {
        assert_eq!(self.rows, self.cols);
        let da = alg.dim();
        let g = self.ground_matrix(alg).inverse()?;
        let mut out = SuperMatrix::zeros(self.rows, self.cols, da);
        for u in 0..self.ncols() {
            // image of e_u * 1
            for t in 0..self.nrows() {
                let mut e = alg.zero();
                for k in 0..da {
                    let mut v = crate::scalar::Scalar::zero();
                    for (c, w) in alg.unit().terms() {
                        v += &(g.get(t * da + k, u * da + c) * w);
                    }
                    e.set_coeff(k, v);
                }
                out.set(t, u, e);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::catalog::{by_name, matrix_algebra};
    use super::*;
    use crate::scalar::Scalar;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_homogeneous(alg: &SuperAlgebra, rows: (usize, usize), cols: (usize, usize), p: Parity, rng: &mut ChaCha8Rng) -> SuperMatrix {
        let mut x = SuperMatrix::zeros(rows, cols, alg.dim());
        for i in 0..x.nrows() {
            for j in 0..x.ncols() {
                let mut e = alg.zero();
                for b in 0..alg.dim() {
                    if alg.parity(b) + x.row_parity(i) + x.col_parity(j) == p {
                        e.set_coeff(b, Scalar::from_int(rng.gen_range(-2..3)));
                    }
                }
                x.set(i, j, e);
            }
        }
        x
    }

    #[test]
    fn supertranspose_of_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in ["R", "H", "Cl2R", "ClC"] {
            let a = by_name(name).unwrap();
            let aop = a.opposite();
            for _ in 0..10 {
                let p = Parity::new(rng.gen());
                let q = Parity::new(rng.gen());
                let x = random_homogeneous(&a, (1, 2), (2, 1), p, &mut rng);
                let y = random_homogeneous(&a, (2, 1), (1, 1), q, &mut rng);
                // op_iso(XY) = (-1)^{|X||Y|} op_iso(Y) op_iso(X), product in A^op
                let lhs = x.mul(&y, &a).op_iso(&a);
                let mut rhs = y.op_iso(&a).mul(&x.op_iso(&a), &aop);
                if (p * q).is_odd() {
                    rhs = rhs.neg();
                }
                assert_eq!(lhs, rhs, "{name}");
            }
        }
    }

    #[test]
    fn inverse_and_matrix_algebra_view() {
        let h = by_name("H").unwrap();
        let mut y = SuperMatrix::identity(1, 1, &h);
        y.set(0, 1, h.parse_elem("i + j").unwrap());
        y.set(1, 1, h.parse_elem("2*k").unwrap());
        let yi = y.inverse(&h).unwrap();
        assert_eq!(y.mul(&yi, &h), SuperMatrix::identity(1, 1, &h));
        let mat = matrix_algebra(&h, 1, 1);
        let e = y.to_alg_elem(&h);
        assert_eq!(SuperMatrix::from_alg_elem(&e, 1, 1, &h), y);
        assert_eq!(mat.mul(&e, &yi.to_alg_elem(&h)), *mat.unit());
    }

    #[test]
    fn str_of_identity() {
        let r = by_name("R").unwrap();
        assert_eq!(SuperMatrix::identity(2, 3, &r).str(&r), r.parse_elem("-1").unwrap());
    }
}
