//! The real and complex division superalgebras, truncated polynomial
//! algebras and matrix superalgebras.

use num_traits::{One, Zero};

use super::algebra::AlgebraData;
use super::{AlgElem, Field, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Names accepted by [`by_name`], besides `Kx<n>`.
pub const NAMES: &[&str] = &[
    "R", "C_real", "C_real_id", "H", "Cl1R", "Cl2R", "Cl3R", "Cl5R", "Cl6R", "Cl7R", "ClC", "C_cplx", "ClC_cplx",
];

/// The ten real division superalgebras.
pub const REAL_DIVISION: &[&str] = &["R", "C_real", "H", "Cl1R", "Cl2R", "Cl3R", "Cl5R", "Cl6R", "Cl7R", "ClC"];

/// The involutive presets `(R,id)`, `(C,id)`, `(C,⋆)`, `(H,⋆)`, `(ClC,⋆)`.
pub const INVOLUTIVE_PRESETS: &[&str] = &["R", "C_real_id", "C_real", "H", "ClC"];

/// Quaternion units 1, i, j, k: `QMUL[a][b] = (negative, c)` with `q_a q_b = ± q_c`.
const QMUL: [[(bool, usize); 4]; 4] = [
    [(false, 0), (false, 1), (false, 2), (false, 3)],
    [(false, 1), (true, 0), (false, 3), (true, 2)],
    [(false, 2), (true, 3), (true, 0), (false, 1)],
    [(false, 3), (false, 2), (true, 1), (true, 0)],
];

/// Base of a monomial algebra: R, C or H spanned by the first 1, 2 or 4 quaternion units.
#[derive(Clone, Copy)]
enum Base {
    R,
    C,
    H,
}

impl Base {
    fn len(self) -> usize {
        match self {
            Base::R => 1,
            Base::C => 2,
            Base::H => 4,
        }
    }
}

/// How the odd generator `eps` (if any) behaves.
#[derive(Clone, Copy)]
enum Eps {
    None,
    /// central, `eps^2 = square`
    Central(i64),
    /// `z eps = eps conj(z)` for complex z, `eps^2 = square`
    Twisted(i64),
}

/// Monomial algebra built from `eps^e q` with `e ∈ {0,1}` and unit `q` of the base.
/// Index of `eps^e q` is `e * base.len() + q`.
fn monomial(name: &str, base: Base, eps: Eps, star: Option<Vec<(bool, usize)>>) -> SuperAlgebra {
    let bl = base.len();
    let ne = if matches!(eps, Eps::None) { 1 } else { 2 };
    let dim = bl * ne;
    let qnames = ["1", "i", "j", "k"];
    let names: Vec<String> = (0..dim)
        .map(|x| {
            let (e, q) = (x / bl, x % bl);
            match (e, q) {
                (0, q) => qnames[q].to_string(),
                (_, 0) => "eps".to_string(),
                (_, q) => format!("eps{}", qnames[q]),
            }
        })
        .collect();
    let parities: Vec<Parity> = (0..dim).map(|x| Parity::new(x >= bl)).collect();
    let mut table = Vec::with_capacity(dim * dim);
    for x in 0..dim {
        for y in 0..dim {
            let (e1, a) = (x / bl, x % bl);
            let (e2, b) = (y / bl, y % bl);
            let mut neg = false;
            let mut a = a;
            // move eps^{e2} left past a
            if e2 == 1 {
                if let Eps::Twisted(_) = eps {
                    if a == 1 {
                        neg ^= true;
                    }
                }
            }
            let (s, c) = QMUL[a][b];
            neg ^= s;
            a = c;
            let mut e = e1 + e2;
            if e == 2 {
                let sq = match eps {
                    Eps::Central(s) | Eps::Twisted(s) => s,
                    Eps::None => unreachable!(),
                };
                if sq < 0 {
                    neg ^= true;
                }
                e = 0;
            }
            let mut el = AlgElem::zero(dim);
            el.set_coeff(e * bl + a, Scalar::sign(neg));
            table.push(el);
        }
    }
    let mut tau = vec![Scalar::zero(); dim];
    tau[0] = Scalar::one();
    let star = star.map(|v| {
        v.into_iter()
            .map(|(neg, k)| {
                let mut e = AlgElem::zero(dim);
                e.set_coeff(k, Scalar::sign(neg));
                e
            })
            .collect()
    });
    SuperAlgebra::new(AlgebraData {
        name: name.to_string(),
        field: Field::Real,
        names,
        parities,
        table,
        unit: AlgElem::basis(dim, 0),
        tau,
        star,
    })
    .expect("catalog algebras are Frobenius")
}

fn conj_star(n: usize) -> Vec<(bool, usize)> {
    (0..n).map(|q| (q != 0, q)).collect()
}

/// `k[x]/(x^n)`, purely even, trace = top coefficient, star = id.
pub fn truncated_poly(n: usize) -> Result<SuperAlgebra> {
    if n == 0 {
        return Err(Error::Algebra("Kx0 is the zero algebra".into()));
    }
    let names: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            k => format!("x{k}"),
        })
        .collect();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(if a + b < n { AlgElem::basis(n, a + b) } else { AlgElem::zero(n) });
        }
    }
    let mut tau = vec![Scalar::zero(); n];
    tau[n - 1] = Scalar::one();
    SuperAlgebra::new(AlgebraData {
        name: format!("Kx{n}"),
        field: Field::Real,
        names,
        parities: vec![Parity::EVEN; n],
        table,
        unit: AlgElem::basis(n, 0),
        tau,
        star: Some((0..n).map(|k| AlgElem::basis(n, k)).collect()),
    })
}

fn complex_field() -> SuperAlgebra {
    SuperAlgebra::new(AlgebraData {
        name: "C_cplx".into(),
        field: Field::Complex,
        names: vec!["1".into()],
        parities: vec![Parity::EVEN],
        table: vec![AlgElem::basis(1, 0)],
        unit: AlgElem::basis(1, 0),
        tau: vec![Scalar::one()],
        star: Some(vec![AlgElem::basis(1, 0)]),
    })
    .unwrap()
}

fn complex_clifford() -> SuperAlgebra {
    let e = |k| AlgElem::basis(2, k);
    SuperAlgebra::new(AlgebraData {
        name: "ClC_cplx".into(),
        field: Field::Complex,
        names: vec!["1".into(), "eps".into()],
        parities: vec![Parity::EVEN, Parity::ODD],
        table: vec![e(0), e(1), e(1), e(0)],
        unit: e(0),
        tau: vec![Scalar::one(), Scalar::zero()],
        star: None,
    })
    .unwrap()
}

/// Look up a catalog algebra by name.
pub fn by_name(name: &str) -> Result<SuperAlgebra> {
    Ok(match name {
        "R" => monomial("R", Base::R, Eps::None, Some(conj_star(1))),
        "C_real" => monomial("C_real", Base::C, Eps::None, Some(conj_star(2))),
        "C_real_id" => monomial("C_real_id", Base::C, Eps::None, Some(vec![(false, 0), (false, 1)])),
        "H" => monomial("H", Base::H, Eps::None, Some(conj_star(4))),
        "Cl1R" => monomial("Cl1R", Base::R, Eps::Central(1), None),
        "Cl7R" => monomial("Cl7R", Base::R, Eps::Central(-1), None),
        "Cl2R" => monomial("Cl2R", Base::C, Eps::Twisted(1), None),
        "Cl6R" => monomial("Cl6R", Base::C, Eps::Twisted(-1), None),
        "Cl3R" => monomial("Cl3R", Base::H, Eps::Central(-1), None),
        "Cl5R" => monomial("Cl5R", Base::H, Eps::Central(1), None),
        // star: z -> conj z, eps -> eps i, eps i -> eps
        "ClC" => monomial("ClC", Base::C, Eps::Central(1), Some(vec![(false, 0), (true, 1), (false, 3), (false, 2)])),
        "C_cplx" => complex_field(),
        "ClC_cplx" => complex_clifford(),
        other => {
            if let Some(n) = other.strip_prefix("Kx").and_then(|n| n.parse::<usize>().ok()) {
                return truncated_poly(n);
            }
            return Err(Error::Unknown(format!("algebra `{other}`")));
        }
    })
}

/// `Mat_{m|n}(A)` with basis `E_rs b` (named `E<r><s>.<b>`, 1-based), plain matrix
/// product, and trace form `tau_A ∘ str`.
pub fn matrix_algebra(a: &SuperAlgebra, m: usize, n: usize) -> SuperAlgebra {
    let size = m + n;
    let da = a.dim();
    let dim = size * size * da;
    let idx = |r: usize, s: usize, b: usize| (r * size + s) * da + b;
    let rp = |r: usize| Parity::new(r >= m);
    let mut names = Vec::with_capacity(dim);
    let mut parities = Vec::with_capacity(dim);
    for r in 0..size {
        for s in 0..size {
            for b in 0..da {
                names.push(format!("E{}{}.{}", r + 1, s + 1, a.basis_name(b)));
                parities.push(rp(r) + rp(s) + a.parity(b));
            }
        }
    }
    let mut table = Vec::with_capacity(dim * dim);
    for x in 0..dim {
        let (r, s, b) = (x / (size * da), (x / da) % size, x % da);
        for y in 0..dim {
            let (t, u, c) = (y / (size * da), (y / da) % size, y % da);
            let mut el = AlgElem::zero(dim);
            if s == t {
                for (k, v) in a.mul_basis(b, c).terms() {
                    el.set_coeff(idx(r, u, k), v.clone());
                }
            }
            table.push(el);
        }
    }
    let mut unit = AlgElem::zero(dim);
    for r in 0..size {
        for (k, v) in a.unit().terms() {
            unit.set_coeff(idx(r, r, k), v.clone());
        }
    }
    let mut tau = vec![Scalar::zero(); dim];
    for r in 0..size {
        for b in 0..da {
            let mut t = a.tau_values()[b].clone();
            // str picks up -(-1)^{|X|} on the odd diagonal block
            t.apply_sign(r >= m && a.parity(b).is_even());
            tau[idx(r, r, b)] = t;
        }
    }
    SuperAlgebra::new(AlgebraData {
        name: format!("Mat_{m}|{n}({})", a.name()),
        field: a.field(),
        names,
        parities,
        table,
        unit,
        tau,
        star: None,
    })
    .expect("matrix algebras over Frobenius algebras are Frobenius")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> Vec<SuperAlgebra> {
        let mut v: Vec<SuperAlgebra> = NAMES.iter().map(|n| by_name(n).unwrap()).collect();
        v.push(truncated_poly(3).unwrap());
        v
    }

    #[test]
    fn catalog_validates() {
        for a in all() {
            a.validate().unwrap();
        }
        let h = by_name("H").unwrap();
        matrix_algebra(&h, 2, 0).validate().unwrap();
        matrix_algebra(&by_name("Cl1R").unwrap(), 1, 1).validate().unwrap();
    }

    #[test]
    fn dimensions_and_squares() {
        let dims: Vec<usize> = REAL_DIVISION.iter().map(|n| by_name(n).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 2, 4, 2, 4, 8, 8, 4, 2, 4]);
        let cl6 = by_name("Cl6R").unwrap();
        let eps = cl6.parse_elem("eps").unwrap();
        assert_eq!(cl6.mul(&eps, &eps), cl6.parse_elem("-1").unwrap());
        let i = cl6.parse_elem("i").unwrap();
        // i eps = eps conj(i) = -eps i
        assert_eq!(cl6.mul(&i, &eps), cl6.parse_elem("-epsi").unwrap());
        let clc = by_name("ClC").unwrap();
        assert_eq!(clc.star(&clc.parse_elem("eps").unwrap()).unwrap(), clc.parse_elem("epsi").unwrap());
    }

    #[test]
    fn parse_and_format() {
        let clc = by_name("ClC").unwrap();
        let a = clc.parse_elem("1 + 2*i - 1/3*eps").unwrap();
        assert_eq!(clc.format_elem(&a), "1 + 2*i - 1/3*eps");
        assert_eq!(clc.parse_elem(&clc.format_elem(&a)).unwrap(), a);
        assert_eq!(clc.parse_elem("-i").unwrap(), clc.parse_elem("-1*i").unwrap());
        assert!(clc.parse_elem("2*q").is_err());
        assert_eq!(clc.format_elem(&clc.zero()), "0");
        let c = by_name("C_cplx").unwrap();
        let z = c.parse_elem("(1+2 i)*1").unwrap();
        assert_eq!(c.parse_elem(&c.format_elem(&z)).unwrap(), z);
    }
}
