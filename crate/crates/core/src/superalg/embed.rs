//! Embeddings of the central real division superalgebras into complex
//! matrix superalgebras, and the check that they complexify to isomorphisms.

use num_traits::{One, Zero};

use super::catalog::{by_name, matrix_algebra};
use super::{AlgElem, SuperAlgebra, SuperMatrix};
use crate::error::{Error, Result};
use crate::linalg::{sparse_rank, SparseVec};
use crate::scalar::Scalar;

pub struct Embedding {
    pub name: &'static str,
    pub domain: SuperAlgebra,
    pub codomain: SuperAlgebra,
    /// image of each domain basis vector
    pub images: Vec<AlgElem>,
}

fn c(re: i64, im: i64) -> Scalar {
    Scalar::gaussian(Scalar::from_int(re), Scalar::from_int(im))
}

/// Images of the quaternion units 1, i, j, k as complex 2x2 matrices.
fn iota() -> [[[Scalar; 2]; 2]; 4] {
    [
        [[c(1, 0), c(0, 0)], [c(0, 0), c(1, 0)]],
        [[c(0, 1), c(0, 0)], [c(0, 0), c(0, -1)]],
        [[c(0, 0), c(-1, 0)], [c(1, 0), c(0, 0)]],
        [[c(0, 0), c(0, -1)], [c(0, -1), c(0, 0)]],
    ]
}

/// Complex 2x2 (or 1|1) matrix with entries times basis element `b` of `base`.
fn mat2(base: &SuperAlgebra, entries: &[[Scalar; 2]; 2], b: usize, m: usize, n: usize) -> AlgElem {
    let mut x = SuperMatrix::zeros((m, n), (m, n), base.dim());
    for r in 0..2 {
        for s in 0..2 {
            x.set(r, s, base.elem(b).scale(&entries[r][s]));
        }
    }
    x.to_alg_elem(base)
}

/// All embeddings in the catalog.
pub fn all() -> Vec<Embedding> {
    let cc = by_name("C_cplx").unwrap();
    let clc = by_name("ClC_cplx").unwrap();
    let mat2c = matrix_algebra(&cc, 2, 0);
    let mat11c = matrix_algebra(&cc, 1, 1);
    let mat2clc = matrix_algebra(&clc, 2, 0);
    let io = iota();
    let mut out = Vec::new();

    out.push(Embedding { name: "R->C", domain: by_name("R").unwrap(), codomain: cc.clone(), images: vec![cc.elem(0)] });

    out.push(Embedding {
        name: "H->Mat2(C)",
        domain: by_name("H").unwrap(),
        codomain: mat2c.clone(),
        images: (0..4).map(|q| mat2(&cc, &io[q], 0, 2, 0)).collect(),
    });

    out.push(Embedding {
        name: "Cl1->Cl(C)",
        domain: by_name("Cl1R").unwrap(),
        codomain: clc.clone(),
        images: vec![clc.elem(0), clc.elem(1)],
    });

    out.push(Embedding {
        name: "Cl7->Cl(C)",
        domain: by_name("Cl7R").unwrap(),
        codomain: clc.clone(),
        images: vec![clc.elem(0), clc.elem(1).scale(&Scalar::i())],
    });

    // a + eps b -> [[a, ±b*], [b, a*]] for a, b in C; basis 1, i, eps, eps i
    for (name, alg, s) in [("Cl2->Mat1|1(C)", "Cl2R", 1i64), ("Cl6->Mat1|1(C)", "Cl6R", -1)] {
        let z = Scalar::zero();
        let one = Scalar::one();
        let i = Scalar::i();
        let imgs = vec![
            mat2(&cc, &[[one.clone(), z.clone()], [z.clone(), one.clone()]], 0, 1, 1),
            mat2(&cc, &[[i.clone(), z.clone()], [z.clone(), -&i]], 0, 1, 1),
            mat2(&cc, &[[z.clone(), Scalar::from_int(s)], [one.clone(), z.clone()]], 0, 1, 1),
            mat2(&cc, &[[z.clone(), &Scalar::from_int(s) * &(-&i)], [i.clone(), z.clone()]], 0, 1, 1),
        ];
        out.push(Embedding { name, domain: by_name(alg).unwrap(), codomain: mat11c.clone(), images: imgs });
    }

    // a + eps b -> iota(a) + eps iota(b) (times i for Cl3)
    for (name, alg, twist) in [("Cl3->Mat2(Cl(C))", "Cl3R", true), ("Cl5->Mat2(Cl(C))", "Cl5R", false)] {
        let mut imgs = Vec::new();
        for q in 0..4 {
            imgs.push(mat2(&clc, &io[q], 0, 2, 0));
        }
        for q in 0..4 {
            let mut e = io[q].clone();
            if twist {
                for row in e.iter_mut() {
                    for x in row.iter_mut() {
                        *x = &*x * &Scalar::i();
                    }
                }
            }
            imgs.push(mat2(&clc, &e, 1, 2, 0));
        }
        out.push(Embedding { name, domain: by_name(alg).unwrap(), codomain: mat2clc.clone(), images: imgs });
    }
    out
}

impl Embedding {
    pub fn apply(&self, a: &AlgElem) -> AlgElem {
        let mut out = self.codomain.zero();
        for (i, c) in a.terms() {
            out.add_scaled(c, &self.images[i]);
        }
        out
    }

    /// Multiplicativity and parity on all basis pairs, unit to unit, and the
    /// spanning criterion: the images are C-linearly independent and span.
    pub fn verify(&self) -> Result<()> {
        let d = &self.domain;
        let fail = |m: String| Err(Error::Algebra(format!("{}: {m}", self.name)));
        if self.apply(d.unit()) != *self.codomain.unit() {
            return fail("unit not preserved".into());
        }
        for i in 0..d.dim() {
            if self.codomain.elem_parity(&self.images[i]) != Some(d.parity(i)) {
                return fail(format!("parity of {}", d.basis_name(i)));
            }
            for j in 0..d.dim() {
                let lhs = self.apply(d.mul_basis(i, j));
                let rhs = self.codomain.mul(&self.images[i], &self.images[j]);
                if lhs != rhs {
                    return fail(format!("not multiplicative on ({}, {})", d.basis_name(i), d.basis_name(j)));
                }
            }
        }
        let rank = sparse_rank(self.codomain.dim(), self.images.iter().map(|e| SparseVec::from_dense(e.coeffs())));
        if rank != d.dim() || rank != self.codomain.dim() {
            return fail(format!("complexification is not an isomorphism (rank {rank})"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn embeddings_verify() {
        let all = super::all();
        assert_eq!(all.len(), 8);
        for e in all {
            e.verify().unwrap();
        }
    }
}
