//! Complex components of a quaternionic form: writing `H = C ⊕ jC`,
//! `φ = φ¹ + j φʲ` with complex-valued `φ¹`, `φʲ`.

use serde::Serialize;

use super::FormSpec;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::superalg::{AlgElem, SuperMatrix};

#[derive(Clone, Debug, Serialize)]
pub struct PhiJReport {
    pub pairs: usize,
    /// `φʲ(vj, w) = -φ¹(v, w)` and `φ¹(vj, w) = φʲ(v, w)`
    pub boar: bool,
    /// `φʲ(v, wj) = φ¹(v, w)^⋆` and `φ¹(v, wj) = -φʲ(v, w)^⋆`
    pub rabbit: bool,
    /// `φʲ` is complex bilinear and `(-nu, id)`-supersymmetric
    pub fries: bool,
    /// rank of the `2(m+n)`-square Gram matrix of `φʲ`
    pub gram_rank: usize,
    pub nondegenerate: bool,
    /// `φʲ(v, wj) - φʲ(vj, w) = 2 Re φ(v, w)`
    pub house: bool,
}

impl PhiJReport {
    pub fn ok(&self) -> bool {
        self.boar && self.rabbit && self.fries && self.nondegenerate && self.house
    }
}

/// `(a, b)` with `q = a + j b`.
fn split(q: &AlgElem) -> (Scalar, Scalar) {
    let c = |k: usize| q.coeff(k).clone();
    (Scalar::gaussian(c(0), c(1)), Scalar::gaussian(c(2), -c(3)))
}

/// Check the identities on every pair of real basis vectors `e_t b`.
pub fn phi_j_identities(f: &FormSpec) -> Result<PhiJReport> {
    let a = f.algebra();
    if a.name() != "H" {
        return Err(Error::Form(format!("{} is not a quaternionic form", f.name())));
    }
    let (i, j) = (a.elem(a.basis_index("i").unwrap()), a.elem(a.basis_index("j").unwrap()));
    let dims = (f.m(), f.n());
    let right = |v: &SuperMatrix, x: &AlgElem| SuperMatrix::from_entries(dims, (1, 0), v.entries().iter().map(|e| a.mul(e, x)).collect());
    let ph = |v: &SuperMatrix, w: &SuperMatrix| split(&f.phi(v, w));
    let size = f.m() + f.n();
    // H is purely even, so the parity of e_t b is that of the row
    let vecs: Vec<(SuperMatrix, bool)> =
        (0..size).flat_map(|t| (0..4).map(move |b| (t, b))).map(|(t, b)| (f.basis_vector(t, b), t >= f.m())).collect();
    let nu = Scalar::from_int(f.nu());
    let two = Scalar::from_int(2);
    let iu = Scalar::i();
    let (mut boar, mut rabbit, mut fries, mut house) = (true, true, true, true);
    for (v, pv) in &vecs {
        for (w, pw) in &vecs {
            let (p1, pj) = ph(v, w);
            let (vj1, vjj) = ph(&right(v, &j), w);
            let (wj1, wjj) = ph(v, &right(w, &j));
            boar &= vjj == -&p1 && vj1 == pj;
            rabbit &= wjj == p1.conj() && wj1 == -pj.conj();
            let (_, swapped) = ph(w, v);
            let mut sym = -(&nu * &swapped);
            sym.apply_sign(*pv && *pw);
            fries &= pj == sym;
            fries &= ph(&right(v, &i), w).1 == &iu * &pj && ph(v, &right(w, &i)).1 == &pj * &iu;
            let re = f.phi(v, w).coeff(0).clone();
            house &= &wjj - &vjj == &two * &re;
        }
    }
    // complex basis e_t, e_t j
    let cbasis: Vec<SuperMatrix> = (0..size).flat_map(|t| [f.basis_vector(t, 0), f.basis_vector(t, 2)]).collect();
    let g = Matrix::from_fn(cbasis.len(), cbasis.len(), |x, y| ph(&cbasis[x], &cbasis[y]).1);
    let gram_rank = g.rank();
    Ok(PhiJReport { pairs: vecs.len() * vecs.len(), boar, rabbit, fries, gram_rank, nondegenerate: gram_rank == 2 * size, house })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold() {
        for name in ["osp*(0|1,0)", "osp*(1|1,1)", "osp*(2|0,1)", "periplectic(1,1,H)", "periplectic(1,-1,H)"] {
            let f = FormSpec::parse(name).unwrap();
            let r = phi_j_identities(&f).unwrap();
            assert!(r.ok(), "{name}: {r:?}");
        }
    }

    #[test]
    fn house_on_the_unit_vector() {
        let f = FormSpec::parse("osp*(0|1,0)").unwrap();
        let e = f.basis_vector(0, 0);
        let ej = f.basis_vector(0, 2);
        let lhs = &split(&f.phi(&e, &ej)).1 - &split(&f.phi(&ej, &e)).1;
        assert_eq!(lhs, Scalar::from_int(2));
    }

    #[test]
    fn rejects_other_algebras() {
        assert!(phi_j_identities(&FormSpec::parse("osp(1,0|0)").unwrap()).is_err());
    }
}
