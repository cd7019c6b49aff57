//! Catalog of nondegenerate superhermitian forms on `A^{m|n}`, their
//! adjoints, the Lie superalgebras `g(φ) = {X : X† = -X}`, component
//! representatives of the reduced groups, and the equivariant-hom solver.

mod quaternion;
mod solver;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::incarnate::LinearMap;
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::Scalar;
use crate::superalg::catalog::by_name;
use crate::superalg::{AlgElem, Parity, SuperAlgebra, SuperMatrix};

pub use quaternion::{phi_j_identities, PhiJReport};
pub use solver::{
    equivariant_homs, gl_equivariant_homs, solve_equivariant, spanning_check, spanning_check_oriented, Constraint,
    FullnessReport,
};

/// The families of the catalog and their parameters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// `osp(p,q|2k)` over `(R, id)`.
    Osp { p: usize, q: usize, k: usize },
    /// `osp_C(m|2k)` over `C` with the identity involution, either as the
    /// complex field or (`real`) as a real algebra.
    ComplexOsp { m: usize, k: usize, real: bool },
    /// `u(p,q|r,s)` over `(C, ⋆)`.
    Unitary { p: usize, q: usize, r: usize, s: usize },
    /// `osp*(n|p,q)` over `(H, ⋆)`.
    QuatOsp { n: usize, p: usize, q: usize },
    /// `uq(p,q)` over `(Cl(C), ⋆)`.
    Isomeric { p: usize, q: usize },
    /// Odd form on `A^{m|m}`.
    Periplectic { m: usize, nu: i64 },
}

#[derive(Clone, Debug)]
pub struct FormSpec {
    name: String,
    family: Family,
    alg: SuperAlgebra,
    m: usize,
    n: usize,
    nu: i64,
    sigma: Parity,
    gram: SuperMatrix,
}

/// Catalog names with one example each, for `list-forms`.
pub const CATALOG: &[(&str, &str, &str)] = &[
    ("osp(p,q|2n)", "R", "diag(I_p, -I_q) + [[0, I_n], [-I_n, 0]], nu = 1, even"),
    ("osp_C(m|2n)", "C_cplx", "I_m + [[0, I_n], [-I_n, 0]], nu = 1, even"),
    ("osp_C(m|2n,C_real_id)", "C_real_id", "I_m + [[0, I_n], [-I_n, 0]], nu = 1, even"),
    ("u(p,q|r,s)", "C_real", "diag(I_p, -I_q, i I_r, -i I_s), nu = 1, even"),
    ("osp*(n|p,q)", "H", "diag(I_p, -I_q, j I_n), nu = 1, even"),
    ("uq(p,q)", "ClC", "diag(I_p, -I_q), nu = 1, even, no odd rows"),
    ("periplectic(m,nu[,alg])", "R | C_real | H", "[[0, I_m], [-nu I_m, 0]], odd"),
];

fn params(text: &str) -> Result<Vec<String>> {
    Ok(text.split([',', '|']).map(|p| p.trim().to_string()).collect())
}

fn num(s: &str, name: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Form(format!("`{name}`: `{s}` is not a nonnegative integer")))
}

impl FormSpec {
    /// Parse a catalog name such as `osp(2,1|0)`, `u(1,1|0,0)`, `osp*(0|2,0)`,
    /// `uq(1,1)`, `periplectic(1,1)`, `periplectic(2,-1,H)` or `osp_C(1|2)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, rest) = t.split_once('(').ok_or_else(|| Error::Form(format!("`{text}`: expected name(params)")))?;
        let body = rest.strip_suffix(')').ok_or_else(|| Error::Form(format!("`{text}`: missing `)`")))?;
        let ps = params(body)?;
        let want = |k: usize| -> Result<()> {
            if ps.len() == k {
                Ok(())
            } else {
                Err(Error::Form(format!("`{text}`: expected {k} parameters")))
            }
        };
        let even = |k: usize| -> Result<usize> {
            if k % 2 == 0 {
                Ok(k / 2)
            } else {
                Err(Error::Form(format!("`{text}`: the odd dimension must be even")))
            }
        };
        let fam = match head {
            "osp" => {
                want(3)?;
                Family::Osp { p: num(&ps[0], text)?, q: num(&ps[1], text)?, k: even(num(&ps[2], text)?)? }
            }
            "osp_C" => {
                let real = match ps.get(2).map(String::as_str) {
                    None | Some("C_cplx") if ps.len() <= 3 => false,
                    Some("C_real_id") if ps.len() == 3 => true,
                    _ => return Err(Error::Form(format!("`{text}`: expected osp_C(m|2n) or osp_C(m|2n,C_real_id)"))),
                };
                Family::ComplexOsp { m: num(&ps[0], text)?, k: even(num(&ps[1], text)?)?, real }
            }
            "u" => {
                want(4)?;
                Family::Unitary { p: num(&ps[0], text)?, q: num(&ps[1], text)?, r: num(&ps[2], text)?, s: num(&ps[3], text)? }
            }
            "osp*" => {
                want(3)?;
                Family::QuatOsp { n: num(&ps[0], text)?, p: num(&ps[1], text)?, q: num(&ps[2], text)? }
            }
            "uq" => {
                want(2)?;
                Family::Isomeric { p: num(&ps[0], text)?, q: num(&ps[1], text)? }
            }
            "periplectic" => {
                if ps.len() != 2 && ps.len() != 3 {
                    return Err(Error::Form(format!("`{text}`: expected periplectic(m,nu) or periplectic(m,nu,alg)")));
                }
                let nu: i64 = ps[1].parse().map_err(|_| Error::Form(format!("`{text}`: nu must be 1 or -1")))?;
                if nu != 1 && nu != -1 {
                    return Err(Error::Form(format!("`{text}`: nu must be 1 or -1")));
                }
                let alg = ps.get(2).map(String::as_str).unwrap_or("R");
                return FormSpec::periplectic(num(&ps[0], text)?, nu, alg);
            }
            _ => return Err(Error::Unknown(format!("form `{text}`"))),
        };
        FormSpec::from_family(fam)
    }

    /// The odd form `[[0, I_m], [-nu I_m, 0]]` over `R`, `C_real` or `H`.
    pub fn periplectic(m: usize, nu: i64, alg: &str) -> Result<Self> {
        if !["R", "C_real", "H"].contains(&alg) {
            return Err(Error::Form(format!("periplectic forms are defined over R, C_real or H, not {alg}")));
        }
        let a = by_name(alg)?;
        let mut g = SuperMatrix::zeros((m, m), (m, m), a.dim());
        for i in 0..m {
            g.set(i, m + i, a.unit().clone());
            g.set(m + i, i, a.unit().scale(&Scalar::from_int(-nu)));
        }
        let name = if alg == "R" { format!("periplectic({m},{nu})") } else { format!("periplectic({m},{nu},{alg})") };
        FormSpec::build(name, Family::Periplectic { m, nu }, a, m, m, nu, Parity::ODD, g)
    }

    pub fn from_family(fam: Family) -> Result<Self> {
        let diag = |alg: &SuperAlgebra, m: usize, n: usize, d: &[AlgElem]| {
            let mut g = SuperMatrix::zeros((m, n), (m, n), alg.dim());
            for (i, x) in d.iter().enumerate() {
                g.set(i, i, x.clone());
            }
            g
        };
        let symp = |g: &mut SuperMatrix, off: usize, k: usize, one: &AlgElem| {
            for i in 0..k {
                g.set(off + i, off + k + i, one.clone());
                g.set(off + k + i, off + i, -one);
            }
        };
        match fam {
            Family::Osp { p, q, k } => {
                let a = by_name("R")?;
                let one = a.unit().clone();
                let signs: Vec<AlgElem> = (0..p).map(|_| one.clone()).chain((0..q).map(|_| -&one)).collect();
                let mut g = diag(&a, p + q, 2 * k, &signs);
                symp(&mut g, p + q, k, &one);
                FormSpec::build(format!("osp({p},{q}|{})", 2 * k), fam, a, p + q, 2 * k, 1, Parity::EVEN, g)
            }
            Family::ComplexOsp { m, k, real } => {
                let a = by_name(if real { "C_real_id" } else { "C_cplx" })?;
                let one = a.unit().clone();
                let mut g = diag(&a, m, 2 * k, &vec![one.clone(); m]);
                symp(&mut g, m, k, &one);
                let name = if real { format!("osp_C({m}|{},C_real_id)", 2 * k) } else { format!("osp_C({m}|{})", 2 * k) };
                FormSpec::build(name, fam, a, m, 2 * k, 1, Parity::EVEN, g)
            }
            Family::Unitary { p, q, r, s } => {
                let a = by_name("C_real")?;
                let one = a.unit().clone();
                let i = a.elem(a.basis_index("i").unwrap());
                let d: Vec<AlgElem> = (0..p)
                    .map(|_| one.clone())
                    .chain((0..q).map(|_| -&one))
                    .chain((0..r).map(|_| i.clone()))
                    .chain((0..s).map(|_| -&i))
                    .collect();
                let g = diag(&a, p + q, r + s, &d);
                FormSpec::build(format!("u({p},{q}|{r},{s})"), fam, a, p + q, r + s, 1, Parity::EVEN, g)
            }
            Family::QuatOsp { n, p, q } => {
                let a = by_name("H")?;
                let one = a.unit().clone();
                let j = a.elem(a.basis_index("j").unwrap());
                let d: Vec<AlgElem> =
                    (0..p).map(|_| one.clone()).chain((0..q).map(|_| -&one)).chain((0..n).map(|_| j.clone())).collect();
                let g = diag(&a, p + q, n, &d);
                FormSpec::build(format!("osp*({n}|{p},{q})"), fam, a, p + q, n, 1, Parity::EVEN, g)
            }
            Family::Isomeric { p, q } => {
                let a = by_name("ClC")?;
                let one = a.unit().clone();
                let d: Vec<AlgElem> = (0..p).map(|_| one.clone()).chain((0..q).map(|_| -&one)).collect();
                let g = diag(&a, p + q, 0, &d);
                FormSpec::build(format!("uq({p},{q})"), fam, a, p + q, 0, 1, Parity::EVEN, g)
            }
            Family::Periplectic { m, nu } => FormSpec::periplectic(m, nu, "R"),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn build(name: String, family: Family, alg: SuperAlgebra, m: usize, n: usize, nu: i64, sigma: Parity, gram: SuperMatrix) -> Result<Self> {
        let f = FormSpec { name, family, alg, m, n, nu, sigma, gram };
        if !f.drop_holds() {
            return Err(Error::Form(format!("{}: Gram matrix is not superhermitian", f.name)));
        }
        if f.ground_gram().rank() != f.ground_dim() {
            return Err(Error::Form(format!("{}: form is degenerate", f.name)));
        }
        Ok(f)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> Family {
        self.family
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

    pub fn nu(&self) -> i64 {
        self.nu
    }

    pub fn sigma(&self) -> Parity {
        self.sigma
    }

    pub fn gram(&self) -> &SuperMatrix {
        &self.gram
    }

    /// Loop parameter of the unoriented category this form incarnates: `nu (m - n)`.
    pub fn loop_value(&self) -> Scalar {
        Scalar::from_int(self.nu * (self.m as i64 - self.n as i64))
    }

    pub fn ground_dim(&self) -> usize {
        (self.m + self.n) * self.alg.dim()
    }

    fn sign_matrix(&self) -> SuperMatrix {
        SuperMatrix::parity_sign(self.m, self.n, &self.alg)
    }

    /// `M^♯ = nu (-1)^{|M|} M S`.
    pub fn drop_holds(&self) -> bool {
        let lhs = self.gram.sharp(&self.alg).unwrap();
        let mut c = Scalar::from_int(self.nu);
        c.apply_sign(self.sigma.is_odd());
        let rhs = self.gram.mul(&self.sign_matrix(), &self.alg).scale(&c);
        lhs == rhs
    }

    /// The column vector `e_t b`.
    pub fn basis_vector(&self, t: usize, b: usize) -> SuperMatrix {
        SuperMatrix::unit((self.m, self.n), (1, 0), t, 0, self.alg.elem(b))
    }

    /// `φ(v, w) = v^♯ M w` for column vectors.
    pub fn phi(&self, v: &SuperMatrix, w: &SuperMatrix) -> AlgElem {
        let vs = v.sharp(&self.alg).unwrap();
        vs.mul(&self.gram, &self.alg).mul(w, &self.alg).get(0, 0).clone()
    }

    /// Gram matrix of `Φ = τ ∘ φ` on the ground basis `e_t b`.
    pub fn ground_gram(&self) -> Matrix {
        let da = self.alg.dim();
        let vecs: Vec<SuperMatrix> = (0..self.ground_dim()).map(|i| self.basis_vector(i / da, i % da)).collect();
        Matrix::from_fn(vecs.len(), vecs.len(), |i, j| self.alg.tau(&self.phi(&vecs[i], &vecs[j])))
    }

    /// `X† = (M^♯ S)^{-1} X^♯ M^♯ S`.
    pub fn dagger(&self, x: &SuperMatrix) -> Result<SuperMatrix> {
        let a = &self.alg;
        let ms = self.gram.sharp(a)?.mul(&self.sign_matrix(), a);
        let inv = ms.inverse(a).map_err(|_| Error::Singular(format!("{}: M^sharp S", self.name)))?;
        Ok(inv.mul(&x.sharp(a)?, a).mul(&ms, a))
    }

    /// Matrix units `E_ij b` of the given parity.
    fn coordinates(&self, p: Parity) -> Vec<(usize, usize, usize)> {
        let size = self.m + self.n;
        let rp = |i: usize| Parity::new(i >= self.m);
        let mut out = Vec::new();
        for i in 0..size {
            for j in 0..size {
                for b in 0..self.alg.dim() {
                    if rp(i) + rp(j) + self.alg.parity(b) == p {
                        out.push((i, j, b));
                    }
                }
            }
        }
        out
    }

    /// A basis of `g(φ)`, even elements first. Over the complex field the
    /// coordinates are complex; otherwise they are real.
    pub fn lie_basis(&self) -> Vec<SuperMatrix> {
        let a = &self.alg;
        let dims = (self.m, self.n);
        let size = self.m + self.n;
        let flat = |x: &SuperMatrix| -> Vec<Scalar> {
            let mut v = Vec::with_capacity(size * size * a.dim());
            for e in x.entries() {
                v.extend(e.coeffs().iter().cloned());
            }
            v
        };
        let mut out = Vec::new();
        for p in [Parity::EVEN, Parity::ODD] {
            let coords = self.coordinates(p);
            let units: Vec<SuperMatrix> = coords.iter().map(|&(i, j, b)| SuperMatrix::unit(dims, dims, i, j, a.elem(b))).collect();
            let images: Vec<Vec<Scalar>> = units.iter().map(|u| flat(&self.dagger(u).unwrap().add(u))).collect();
            if images.is_empty() {
                continue;
            }
            let sys = Matrix::from_fn(images[0].len(), units.len(), |r, c| images[c][r].clone());
            for v in sys.nullspace() {
                let mut x = SuperMatrix::zeros(dims, dims, a.dim());
                for (c, u) in v.iter().zip(&units) {
                    if !c.is_zero() {
                        x = x.add(&u.scale(c));
                    }
                }
                out.push(x);
            }
        }
        out
    }

    /// One representative per non-identity component of the reduced group.
    pub fn group_components(&self) -> Vec<SuperMatrix> {
        let a = &self.alg;
        let refl = |rows: &[usize]| {
            let mut g = SuperMatrix::identity(self.m, self.n, a);
            for &r in rows {
                g.set(r, r, -a.unit());
            }
            g
        };
        match self.family {
            Family::Osp { p, q, .. } => match (p > 0, q > 0) {
                (true, true) => vec![refl(&[0]), refl(&[p]), refl(&[0, p])],
                (true, false) => vec![refl(&[0])],
                (false, true) => vec![refl(&[0])],
                (false, false) => vec![],
            },
            Family::ComplexOsp { m, .. } if m > 0 => vec![refl(&[0])],
            _ => vec![],
        }
    }

    /// `g^♯ M g = M`, i.e. `φ(gv, gw) = φ(v, w)` for an even `g`.
    pub fn preserves(&self, g: &SuperMatrix) -> bool {
        let a = &self.alg;
        g.sharp(a).unwrap().mul(&self.gram, a).mul(g, a) == self.gram
    }

    /// Left multiplication by a supermatrix as a ground linear map on `V`.
    pub fn ground_map(&self, x: &SuperMatrix) -> LinearMap {
        let g = x.ground_matrix(&self.alg);
        let par = self.ground_parities();
        let cols = (0..g.cols()).map(|j| SparseVec::from_pairs((0..g.rows()).map(|i| (i, g.get(i, j).clone())))).collect();
        LinearMap::from_columns(par.clone(), par, cols)
    }

    pub fn ground_parities(&self) -> Vec<Parity> {
        let da = self.alg.dim();
        (0..self.ground_dim()).map(|i| Parity::new(i / da >= self.m) + self.alg.parity(i % da)).collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = (0..self.m + self.n)
            .map(|i| (0..self.m + self.n).map(|j| self.alg.format_elem(self.gram.get(i, j))).collect())
            .collect();
        json!({
            "name": self.name,
            "algebra": self.alg.name(),
            "m": self.m,
            "n": self.n,
            "nu": self.nu,
            "sigma": self.sigma.as_u8(),
            "gram": rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn sample_forms() -> Vec<FormSpec> {
        [
            "osp(2,1|0)",
            "osp(1,1|2)",
            "osp(0,0|2)",
            "osp(2,1|2)",
            "osp_C(1|2)",
            "u(1,1|0,0)",
            "u(1,0|1,1)",
            "osp*(0|1,0)",
            "osp*(1|1,1)",
            "uq(1,1)",
            "periplectic(1,1)",
            "periplectic(2,-1)",
            "periplectic(1,1,H)",
            "periplectic(1,-1,C_real)",
        ]
        .iter()
        .map(|n| FormSpec::parse(n).unwrap())
        .collect()
    }

    #[test]
    fn displayed_grams() {
        let f = FormSpec::parse("osp(1,1|2)").unwrap();
        let e = |x: i64| f.algebra().unit().scale(&Scalar::from_int(x));
        assert_eq!(f.gram().get(0, 0), &e(1));
        assert_eq!(f.gram().get(1, 1), &e(-1));
        assert_eq!(f.gram().get(2, 3), &e(1));
        assert_eq!(f.gram().get(3, 2), &e(-1));
        let f = FormSpec::parse("u(1,0|1,0)").unwrap();
        assert_eq!(f.algebra().format_elem(f.gram().get(1, 1)), "i");
        let f = FormSpec::parse("periplectic(1,1)").unwrap();
        assert_eq!(f.sigma(), Parity::ODD);
        assert_eq!(f.gram().get(0, 1), &e(1));
        assert_eq!(f.gram().get(1, 0), &e(-1));
    }

    #[test]
    fn bad_parameters() {
        assert!(FormSpec::parse("osp(1,1|1)").is_err());
        assert!(FormSpec::parse("periplectic(1,2)").is_err());
        assert!(FormSpec::parse("sp(2)").is_err());
        assert!(FormSpec::parse("u(1,1|0)").is_err());
    }

    #[test]
    fn forms_are_supersymmetric() {
        for f in sample_forms() {
            assert!(f.drop_holds(), "{}", f.name());
            let g = f.ground_gram();
            let par = f.ground_parities();
            let nu = Scalar::from_int(f.nu());
            for i in 0..g.rows() {
                for j in 0..g.cols() {
                    let mut rhs = &nu * g.get(j, i);
                    rhs.apply_sign((par[i] * par[j]).is_odd());
                    assert_eq!(g.get(i, j), &rhs, "{} ({i},{j})", f.name());
                }
            }
        }
    }

    #[test]
    fn token_moves_across_the_form() {
        // Φ(va, w) = (-1)^{|a||w|} Φ(v, w a^inv)
        for f in sample_forms() {
            let a = f.algebra();
            let da = a.dim();
            for k in 0..da {
                let ak = a.elem(k);
                let ai = a.inv(&ak).unwrap();
                for i in 0..f.ground_dim() {
                    for j in 0..f.ground_dim() {
                        let v = f.basis_vector(i / da, i % da);
                        let w = f.basis_vector(j / da, j % da);
                        let va = SuperMatrix::from_entries((f.m(), f.n()), (1, 0), v.entries().iter().map(|e| a.mul(e, &ak)).collect());
                        let wa = SuperMatrix::from_entries((f.m(), f.n()), (1, 0), w.entries().iter().map(|e| a.mul(e, &ai)).collect());
                        let lhs = a.tau(&f.phi(&va, &w));
                        let mut rhs = a.tau(&f.phi(&v, &wa));
                        rhs.apply_sign((a.parity(k) * f.ground_parities()[j]).is_odd());
                        assert_eq!(lhs, rhs, "{}", f.name());
                    }
                }
            }
        }
    }

    #[test]
    fn lie_dimensions() {
        let dims = |name: &str| {
            let f = FormSpec::parse(name).unwrap();
            let basis = f.lie_basis();
            let even = basis.iter().filter(|x| x.parity(f.algebra()) == Some(Parity::EVEN)).count();
            (even, basis.len() - even)
        };
        // o(2,1) + sp(2) and the odd part 3 * 2
        assert_eq!(dims("osp(2,1|2)"), (6, 6));
        assert_eq!(dims("osp*(0|1,0)"), (3, 0));
        assert_eq!(dims("osp(2,1|0)"), (3, 0));
        assert_eq!(dims("u(1,1|0,0)"), (4, 0));
        // p(2): gl(2) even, a symmetric and a skew block odd
        assert_eq!(dims("periplectic(2,1)"), (4, 4));
    }

    #[test]
    fn lie_elements_are_skew_and_closed() {
        for f in sample_forms() {
            let a = f.algebra();
            let basis = f.lie_basis();
            for x in &basis {
                assert_eq!(f.dagger(x).unwrap(), x.neg(), "{}", f.name());
            }
            // brackets stay in g: check skewness of [x, y]
            for x in basis.iter().take(4) {
                for y in basis.iter().take(4) {
                    let (px, py) = (x.parity(a).unwrap(), y.parity(a).unwrap());
                    let mut c = Scalar::one();
                    c.apply_sign((px * py).is_odd());
                    let br = x.mul(y, a).add(&y.mul(x, a).scale(&c).neg());
                    assert_eq!(f.dagger(&br).unwrap(), br.neg(), "{}", f.name());
                }
            }
        }
    }

    #[test]
    fn lie_elements_preserve_the_scalar_form() {
        // Φ(Xv, w) = -(-1)^{|X||v|} Φ(v, Xw)
        for f in sample_forms() {
            let g = f.ground_gram();
            let par = f.ground_parities();
            for x in f.lie_basis() {
                let px = x.parity(f.algebra()).unwrap();
                let xm = x.ground_matrix(f.algebra());
                let lhs = xm.transpose().mul(&g);
                let rhs = g.mul(&xm);
                for i in 0..g.rows() {
                    for j in 0..g.cols() {
                        let mut r = -rhs.get(i, j);
                        r.apply_sign((px * par[i]).is_odd());
                        assert_eq!(lhs.get(i, j), &r, "{}", f.name());
                    }
                }
            }
        }
    }

    #[test]
    fn group_representatives() {
        assert_eq!(FormSpec::parse("osp(2,1|0)").unwrap().group_components().len(), 3);
        assert_eq!(FormSpec::parse("osp(2,0|2)").unwrap().group_components().len(), 1);
        assert_eq!(FormSpec::parse("osp(0,0|2)").unwrap().group_components().len(), 0);
        assert_eq!(FormSpec::parse("osp_C(2|0)").unwrap().group_components().len(), 1);
        assert!(FormSpec::parse("u(1,1|1,0)").unwrap().group_components().is_empty());
        for f in sample_forms() {
            for g in f.group_components() {
                assert!(f.preserves(&g), "{}", f.name());
                // normalizes the Lie algebra
                let a = f.algebra();
                for x in f.lie_basis() {
                    let conj = g.mul(&x, a).mul(&g.inverse(a).unwrap(), a);
                    assert_eq!(f.dagger(&conj).unwrap(), conj.neg());
                }
            }
        }
    }

    #[test]
    fn odd_form_dagger_blocks() {
        // [[A, B], [C, D]]^† = [[D^♯, -nu B^♯], [nu C^♯, A^♯]]
        for nu in [1i64, -1] {
            let f = FormSpec::periplectic(1, nu, "R").unwrap();
            let a = f.algebra();
            let u = |i, j| SuperMatrix::unit((1, 1), (1, 1), i, j, a.unit().clone());
            // diagonal blocks swap
            assert_eq!(f.dagger(&u(0, 0)).unwrap(), u(1, 1));
            assert_eq!(f.dagger(&u(1, 1)).unwrap(), u(0, 0));
            // off-diagonal blocks stay put, scaled by -nu and nu respectively
            assert_eq!(f.dagger(&u(0, 1)).unwrap(), u(0, 1).scale(&Scalar::from_int(-nu)));
            assert_eq!(f.dagger(&u(1, 0)).unwrap(), u(1, 0).scale(&Scalar::from_int(nu)));
        }
    }

    fn arb_matrix(f: FormSpec) -> impl Strategy<Value = (FormSpec, SuperMatrix, SuperMatrix)> {
        let size = f.m() + f.n();
        let da = f.algebra().dim();
        let len = size * size * da;
        (proptest::collection::vec(-2i64..3, len), proptest::collection::vec(-2i64..3, len), 0..2u8, 0..2u8).prop_map(
            move |(u, v, pu, pv)| {
                let a = f.algebra().clone();
                let mk = |c: &[i64], p: u8| {
                    let entries = c
                        .chunks(da)
                        .map(|ch| AlgElem::from_coeffs(ch.iter().map(|&k| Scalar::from_int(k)).collect()))
                        .collect();
                    SuperMatrix::from_entries((f.m(), f.n()), (f.m(), f.n()), entries).homogeneous_part(&a, Parity::new(p == 1))
                };
                (f.clone(), mk(&u, pu), mk(&v, pv))
            },
        )
    }

    fn arb_case() -> impl Strategy<Value = (FormSpec, SuperMatrix, SuperMatrix)> {
        prop_oneof![
            arb_matrix(FormSpec::parse("osp(1,1|2)").unwrap()),
            arb_matrix(FormSpec::parse("u(1,0|0,1)").unwrap()),
            arb_matrix(FormSpec::parse("osp*(1|1,0)").unwrap()),
            arb_matrix(FormSpec::parse("periplectic(1,-1,H)").unwrap()),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn dagger_is_an_anti_involution((f, x, y) in arb_case()) {
            let a = f.algebra();
            prop_assert_eq!(f.dagger(&f.dagger(&x).unwrap()).unwrap(), x.clone());
            let (px, py) = (x.parity(a).unwrap(), y.parity(a).unwrap());
            let mut c = Scalar::one();
            c.apply_sign((px * py).is_odd());
            let lhs = f.dagger(&x.mul(&y, a)).unwrap();
            let rhs = f.dagger(&y).unwrap().mul(&f.dagger(&x).unwrap(), a).scale(&c);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sharp_reverses_products((f, x, y) in arb_case()) {
            let a = f.algebra();
            let (px, py) = (x.parity(a).unwrap(), y.parity(a).unwrap());
            let mut c = Scalar::one();
            c.apply_sign((px * py).is_odd());
            let lhs = x.mul(&y, a).sharp(a).unwrap();
            let rhs = y.sharp(a).unwrap().mul(&x.sharp(a).unwrap(), a).scale(&c);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sharp_twice_on_vectors_is_parity_sign() {
        let f = FormSpec::parse("osp*(1|1,0)").unwrap();
        let a = f.algebra();
        for t in 0..2 {
            for b in 0..4 {
                let v = f.basis_vector(t, b);
                let vv = v.sharp(a).unwrap().sharp(a).unwrap();
                let s = SuperMatrix::parity_sign(1, 1, a).mul(&v, a);
                assert_eq!(vv, s);
            }
        }
    }
}
