//! Diagrams evaluated as exact linear maps on tensor powers of a module
//! `V = A^{m|n}`: the oriented functor into `gl(m|n)`-modules and the
//! unoriented functor attached to a superhermitian form.
//!
//! Maps are stored by columns (the image of each source basis vector).
//! Tensor-power bases are lexicographic in the module basis.

mod gl;
mod form;

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::linalg::SparseVec;
use crate::scalar::Scalar;
use crate::superalg::{Parity, SuperAlgebra};

pub use form::{ButteReport, FormIncarnation};
pub use gl::{GlIncarnation, OrGen};

/// `A^{m|n}` as a ground vector space with basis `e_t b`, `t`-major.
#[derive(Clone, Debug)]
pub struct SuperModule {
    alg: SuperAlgebra,
    m: usize,
    n: usize,
}

impl SuperModule {
    pub fn new(alg: SuperAlgebra, m: usize, n: usize) -> Self {
        SuperModule { alg, m, n }
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.alg
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        (self.m + self.n) * self.alg.dim()
    }

    pub fn index(&self, t: usize, b: usize) -> usize {
        t * self.alg.dim() + b
    }

    /// `(t, b)` of a ground basis vector.
    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.alg.dim(), i % self.alg.dim())
    }

    pub fn row_parity(&self, t: usize) -> Parity {
        Parity::new(t >= self.m)
    }

    pub fn parity(&self, i: usize) -> Parity {
        let (t, b) = self.split(i);
        self.row_parity(t) + self.alg.parity(b)
    }

    pub fn parities(&self) -> Vec<Parity> {
        (0..self.dim()).map(|i| self.parity(i)).collect()
    }

    /// Parities of the lexicographic basis of the `k`-th tensor power.
    pub fn tensor_parities(&self, k: usize) -> Vec<Parity> {
        tensor_parities(&self.parities(), k)
    }
}

pub(crate) fn tensor_parities(base: &[Parity], k: usize) -> Vec<Parity> {
    let mut out = vec![Parity::EVEN];
    for _ in 0..k {
        out = out.iter().flat_map(|p| base.iter().map(move |q| *p + *q)).collect();
    }
    out
}

/// A linear map between graded spaces with given basis parities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    src: Vec<Parity>,
    tgt: Vec<Parity>,
    cols: Vec<SparseVec>,
}

impl LinearMap {
    pub fn from_columns(src: Vec<Parity>, tgt: Vec<Parity>, cols: Vec<SparseVec>) -> Self {
        assert_eq!(src.len(), cols.len());
        LinearMap { src, tgt, cols }
    }

    pub fn zero(src: Vec<Parity>, tgt: Vec<Parity>) -> Self {
        let cols = vec![SparseVec::new(); src.len()];
        LinearMap { src, tgt, cols }
    }

    pub fn identity(par: Vec<Parity>) -> Self {
        let cols = (0..par.len()).map(|i| SparseVec::from_pairs([(i, Scalar::one())])).collect();
        LinearMap { src: par.clone(), tgt: par, cols }
    }

    /// Build from a dense row-major grid.
    pub fn from_rows(src: Vec<Parity>, tgt: Vec<Parity>, rows: &[Vec<Scalar>]) -> Self {
        let cols = (0..src.len())
            .map(|j| SparseVec::from_pairs((0..tgt.len()).map(|i| (i, rows[i][j].clone()))))
            .collect();
        LinearMap { src, tgt, cols }
    }

    pub fn src_dim(&self) -> usize {
        self.src.len()
    }

    pub fn tgt_dim(&self) -> usize {
        self.tgt.len()
    }

    pub fn src_parities(&self) -> &[Parity] {
        &self.src
    }

    pub fn tgt_parities(&self) -> &[Parity] {
        &self.tgt
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].entries().iter().find(|(k, _)| *k == i).map(|(_, v)| v.clone()).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// The common parity of all nonzero entries; the zero map is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (j, c) in self.cols.iter().enumerate() {
            for (i, _) in c.entries() {
                let p = self.tgt[*i] + self.src[j];
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::EVEN))
    }

    pub fn homogeneous_part(&self, p: Parity) -> LinearMap {
        let cols = self
            .cols
            .iter()
            .enumerate()
            .map(|(j, c)| SparseVec::from_pairs(c.entries().iter().filter(|(i, _)| self.tgt[*i] + self.src[j] == p).cloned()))
            .collect();
        LinearMap { src: self.src.clone(), tgt: self.tgt.clone(), cols }
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        let cols = self.cols.iter().map(|v| SparseVec::from_pairs(v.entries().iter().map(|(i, x)| (*i, x * c)))).collect();
        LinearMap { src: self.src.clone(), tgt: self.tgt.clone(), cols }
    }

    pub fn add(&self, o: &LinearMap) -> LinearMap {
        assert!(self.src == o.src && self.tgt == o.tgt, "adding maps of different shapes");
        let cols = self
            .cols
            .iter()
            .zip(&o.cols)
            .map(|(a, b)| SparseVec::from_pairs(a.entries().iter().chain(b.entries()).cloned()))
            .collect();
        LinearMap { src: self.src.clone(), tgt: self.tgt.clone(), cols }
    }

    pub fn sub(&self, o: &LinearMap) -> LinearMap {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(v.entries().iter().flat_map(|(k, x)| self.cols[*k].entries().iter().map(move |(i, y)| (*i, x * y))))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(other.tgt.len(), self.src.len(), "composing maps of incompatible shapes");
        let cols = other.cols.iter().map(|c| self.apply_sparse(c)).collect();
        LinearMap { src: other.src.clone(), tgt: self.tgt.clone(), cols }
    }

    /// Koszul tensor product: `(f ⊗ g)(x ⊗ y) = (-1)^{|g||x|} f(x) ⊗ g(y)`.
    pub fn tensor(&self, g: &LinearMap) -> LinearMap {
        let src = tensor_of(&self.src, &g.src);
        let tgt = tensor_of(&self.tgt, &g.tgt);
        let (gs, gt) = (g.src.len(), g.tgt.len());
        let parts: Vec<(Parity, LinearMap)> =
            [Parity::EVEN, Parity::ODD].into_iter().map(|p| (p, g.homogeneous_part(p))).collect();
        let mut cols = Vec::with_capacity(src.len());
        for x in 0..self.src.len() {
            for y in 0..gs {
                let mut pairs = Vec::new();
                for (p, gp) in &parts {
                    let neg = (*p * self.src[x]).is_odd();
                    for (i, a) in self.cols[x].entries() {
                        for (k, b) in gp.cols[y].entries() {
                            let mut v = a * b;
                            v.apply_sign(neg);
                            pairs.push((i * gt + k, v));
                        }
                    }
                }
                cols.push(SparseVec::from_pairs(pairs));
            }
        }
        LinearMap { src, tgt, cols }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.apply_sparse(&SparseVec::from_dense(v)).to_dense(self.tgt.len())
    }

    /// Entries flattened row-major, for rank computations over families of maps.
    pub fn flatten(&self) -> SparseVec {
        let c = self.src.len();
        SparseVec::from_pairs(self.cols.iter().enumerate().flat_map(|(j, v)| v.entries().iter().map(move |(i, x)| (i * c + j, x.clone()))))
    }

    pub fn to_json(&self) -> Value {
        let mut rows = vec![vec!["0".to_string(); self.src.len()]; self.tgt.len()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.entries() {
                rows[*i][j] = x.to_string();
            }
        }
        let parity = self.parity().map(|p| json!(p.as_u8())).unwrap_or(Value::Null);
        json!({"shape": [self.tgt.len(), self.src.len()], "parity": parity, "rows": rows})
    }
}

fn tensor_of(a: &[Parity], b: &[Parity]) -> Vec<Parity> {
    a.iter().flat_map(|p| b.iter().map(move |q| *p + *q)).collect()
}

/// Image of one generator: for each flat input block index, a combination
/// of output blocks (indices into the factors). Blocks have `arity.0` input
/// and `arity.1` output factors.
#[derive(Clone, Debug)]
pub(crate) struct GenImage {
    pub arity: (usize, usize),
    pub parity: Parity,
    pub map: Vec<Vec<(Vec<usize>, Scalar)>>,
}

/// A vector in a tensor power, keyed by the factor indices.
pub(crate) type TensorVec = HashMap<Vec<usize>, Scalar>;

/// Apply a generator at factor position `left`.
pub(crate) fn apply_gen(v: &TensorVec, left: usize, g: &GenImage, n: usize, par: &[Parity]) -> TensorVec {
    let mut out = TensorVec::new();
    for (idx, c) in v {
        let inp = idx[left..left + g.arity.0].iter().fold(0, |acc, &i| acc * n + i);
        let outs = &g.map[inp];
        if outs.is_empty() {
            continue;
        }
        let neg = g.parity.is_odd() && idx[..left].iter().fold(false, |acc, &i| acc ^ par[i].is_odd());
        for (o, x) in outs {
            let mut key = Vec::with_capacity(idx.len() - g.arity.0 + g.arity.1);
            key.extend_from_slice(&idx[..left]);
            key.extend_from_slice(o);
            key.extend_from_slice(&idx[left + g.arity.0..]);
            let mut val = c * x;
            val.apply_sign(neg);
            let e = out.entry(key).or_insert_with(Scalar::zero);
            *e += val;
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// Multi-index of a flat index in the `k`-th tensor power of an `n`-dimensional space.
pub(crate) fn unflatten(mut j: usize, n: usize, k: usize) -> Vec<usize> {
    let mut idx = vec![0; k];
    for p in (0..k).rev() {
        idx[p] = j % n;
        j /= n;
    }
    idx
}

pub(crate) fn flatten_index(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

/// The linear map obtained by pushing each source basis vector through the layers.
pub(crate) fn eval_layers(layers: &[(usize, &GenImage)], r: usize, s: usize, par: &[Parity]) -> LinearMap {
    let n = par.len();
    let src = tensor_parities(par, r);
    let tgt = tensor_parities(par, s);
    let cols = (0..src.len())
        .map(|j| {
            let mut v = TensorVec::new();
            v.insert(unflatten(j, n, r), Scalar::one());
            for (left, g) in layers {
                v = apply_gen(&v, *left, g, n, par);
                if v.is_empty() {
                    break;
                }
            }
            SparseVec::from_pairs(v.into_iter().map(|(k, x)| (flatten_index(&k, n), x)))
        })
        .collect();
    LinearMap { src, tgt, cols }
}

/// Action of an operator on `V^{⊗k}` by the Leibniz rule with Koszul signs.
pub fn leibniz(x: &LinearMap, k: usize) -> LinearMap {
    let par = x.src.clone();
    let mut total = LinearMap::zero(tensor_parities(&par, k), tensor_parities(&par, k));
    for i in 0..k {
        let left = LinearMap::identity(tensor_parities(&par, i));
        let right = LinearMap::identity(tensor_parities(&par, k - i - 1));
        total = total.add(&left.tensor(x).tensor(&right));
    }
    total
}

/// Action on a mixed tensor word, where `down` factors use the dual action
/// `x_dual`.
pub fn leibniz_word(x: &LinearMap, x_dual: &LinearMap, word: &[bool]) -> LinearMap {
    let par = x.src.clone();
    let k = word.len();
    let mut total = LinearMap::zero(tensor_parities(&par, k), tensor_parities(&par, k));
    for i in 0..k {
        let left = LinearMap::identity(tensor_parities(&par, i));
        let right = LinearMap::identity(tensor_parities(&par, k - i - 1));
        let mid = if word[i] { x } else { x_dual };
        total = total.add(&left.tensor(mid).tensor(&right));
    }
    total
}

/// Diagonal action `g ⊗ ... ⊗ g` of an even operator on a mixed word.
pub fn diagonal_word(g: &LinearMap, g_dual: &LinearMap, word: &[bool]) -> LinearMap {
    let mut total = LinearMap::identity(vec![Parity::EVEN]);
    for &u in word {
        total = total.tensor(if u { g } else { g_dual });
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn par(bits: &[bool]) -> Vec<Parity> {
        bits.iter().map(|&b| Parity::new(b)).collect()
    }

    fn flip(p: &[Parity]) -> LinearMap {
        let n = p.len();
        let cols = (0..n * n)
            .map(|j| {
                let (a, b) = (j / n, j % n);
                let mut v = Scalar::one();
                v.apply_sign((p[a] * p[b]).is_odd());
                SparseVec::from_pairs([(b * n + a, v)])
            })
            .collect();
        LinearMap::from_columns(tensor_of(p, p), tensor_of(p, p), cols)
    }

    #[test]
    fn flip_on_one_one() {
        let p = par(&[false, true]);
        let f = flip(&p);
        // e1 ⊗ e2 -> e2 ⊗ e1, e2 ⊗ e2 -> -e2 ⊗ e2
        assert_eq!(f.get(2, 1), Scalar::one());
        assert_eq!(f.get(3, 3), Scalar::from_int(-1));
        assert_eq!(f.compose(&f), LinearMap::identity(tensor_of(&p, &p)));
        assert_eq!(f.parity(), Some(Parity::EVEN));
    }

    #[test]
    fn koszul_interchange() {
        // (f ⊗ 1)(1 ⊗ g) = (-1)^{|f||g|} (1 ⊗ g)(f ⊗ 1) for odd f, g
        let p = par(&[false, true]);
        let odd = LinearMap::from_rows(p.clone(), p.clone(), &[vec![Scalar::zero(), Scalar::one()], vec![Scalar::from_int(2), Scalar::zero()]]);
        assert_eq!(odd.parity(), Some(Parity::ODD));
        let id = LinearMap::identity(p.clone());
        let a = odd.tensor(&id).compose(&id.tensor(&odd));
        let b = id.tensor(&odd).compose(&odd.tensor(&id));
        assert_eq!(a, b.scale(&Scalar::from_int(-1)));
        assert_eq!(odd.tensor(&odd), a);
    }

    #[test]
    fn tensor_power_parities() {
        let p = par(&[false, true]);
        assert_eq!(tensor_parities(&p, 2), par(&[false, true, true, false]));
        assert_eq!(unflatten(5, 3, 2), vec![1, 2]);
        assert_eq!(flatten_index(&[1, 2], 3), 5);
    }
}
