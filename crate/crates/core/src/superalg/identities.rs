//! Exhaustive checks of the Frobenius and involution identities on a basis.

use num_traits::Zero;

use super::catalog::matrix_algebra;
use super::{AlgElem, SuperAlgebra, SuperMatrix};
use crate::scalar::Scalar;

/// One named identity and whether it held on every basis element (or pair).
#[derive(Clone, Debug, serde::Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub ok: bool,
}

fn delta(b: usize, c: usize) -> Scalar {
    Scalar::from_int((b == c) as i64)
}

/// `a = sum_b tau(b^v a) b = sum_b tau(a b) b^v`
pub fn adecomp(a: &SuperAlgebra) -> bool {
    (0..a.dim()).all(|x| {
        let e = a.elem(x);
        let mut s1 = a.zero();
        let mut s2 = a.zero();
        for b in 0..a.dim() {
            s1.add_scaled(&a.tau(&a.mul(&a.dual_basis()[b], &e)), &a.elem(b));
            s2.add_scaled(&a.tau(&a.mul(&e, &a.elem(b))), &a.dual_basis()[b]);
        }
        s1 == e && s2 == e
    })
}

/// `str(a) = str(nu(a)) = sum (-1)^b tau(b^v b a) = sum (-1)^b tau(a b^v b)`
pub fn essex(a: &SuperAlgebra) -> bool {
    (0..a.dim()).all(|x| {
        let e = a.elem(x);
        let s = a.supertrace(&e);
        let mut s3 = Scalar::zero();
        for b in 0..a.dim() {
            let mut t = a.tau(&a.mul(&e, &a.mul(&a.dual_basis()[b], &a.elem(b))));
            t.apply_sign(a.parity(b).is_odd());
            s3 += t;
        }
        s == a.supertrace(&a.nakayama(&e)) && s == a.supertrace_via_dual(&e) && s == s3
    })
}

/// `str(a) = str(a^⋆)`; vacuous without an involution.
pub fn snow(a: &SuperAlgebra) -> bool {
    !a.has_star() || (0..a.dim()).all(|x| a.supertrace(&a.elem(x)) == a.supertrace(&a.star(&a.elem(x)).unwrap()))
}

/// `(b^⋆)^v = nu(b^v)^⋆`, i.e. `tau(nu(c^v)^⋆ b^⋆) = delta_bc`.
pub fn nova(a: &SuperAlgebra) -> bool {
    if !a.has_star() {
        return true;
    }
    (0..a.dim()).all(|b| {
        (0..a.dim()).all(|c| {
            let l = a.star(&a.nakayama(&a.dual_basis()[c])).unwrap();
            a.tau(&a.mul(&l, &a.star(&a.elem(b)).unwrap())) == delta(b, c)
        })
    })
}

/// `nu^2 = id` and `tau(a^⋆) = tau(a)`.
pub fn rainbow(a: &SuperAlgebra) -> bool {
    if !a.has_star() {
        return true;
    }
    (0..a.dim()).all(|x| {
        let e = a.elem(x);
        a.nakayama(&a.nakayama(&e)) == e && a.tau(&a.star(&e).unwrap()) == a.tau(&e)
    })
}

/// `nu(a) = (-1)^{|a|} a` (division superalgebras).
pub fn div_nakayama(a: &SuperAlgebra) -> bool {
    (0..a.dim()).all(|x| {
        let e = a.elem(x);
        let expect = if a.parity(x).is_odd() { -&e } else { e.clone() };
        a.nakayama(&e) == expect
    })
}

/// `(b^v)^v = b`, i.e. `tau(c b^v) = delta_bc` (division superalgebras).
pub fn double_dual(a: &SuperAlgebra) -> bool {
    (0..a.dim()).all(|b| (0..a.dim()).all(|c| a.tau(&a.mul(&a.elem(c), &a.dual_basis()[b])) == delta(b, c)))
}

/// `str_D = (sdim D) tau` (division superalgebras).
pub fn delay(a: &SuperAlgebra) -> bool {
    let sdim = a.parities().iter().fold(0i64, |s, p| s + if p.is_odd() { -1 } else { 1 });
    (0..a.dim()).all(|x| a.supertrace(&a.elem(x)) == &Scalar::from_int(sdim) * &a.tau(&a.elem(x)))
}

/// `str_{Mat_{m|n}(A)}(X) = (m-n) str_A(str X)` on every basis matrix.
pub fn blink(a: &SuperAlgebra, m: usize, n: usize) -> bool {
    let mat = matrix_algebra(a, m, n);
    let factor = Scalar::from_int(m as i64 - n as i64);
    (0..mat.dim()).all(|x| {
        let e: AlgElem = mat.elem(x);
        let sm = SuperMatrix::from_alg_elem(&e, m, n, a);
        mat.supertrace(&e) == &factor * &a.supertrace(&sm.str(a))
    })
}

/// The full battery for a catalog algebra. `division` adds the identities
/// specific to division superalgebras.
pub fn check_all(a: &SuperAlgebra, division: bool) -> Vec<IdentityCheck> {
    let mut v = vec![
        IdentityCheck { name: "adecomp", ok: adecomp(a) },
        IdentityCheck { name: "essex", ok: essex(a) },
        IdentityCheck { name: "snow", ok: snow(a) },
        IdentityCheck { name: "nova", ok: nova(a) },
        IdentityCheck { name: "rainbow", ok: rainbow(a) },
        IdentityCheck { name: "blink(1|1)", ok: blink(a, 1, 1) },
        IdentityCheck { name: "blink(2|0)", ok: blink(a, 2, 0) },
    ];
    if division {
        v.push(IdentityCheck { name: "divNak", ok: div_nakayama(a) });
        v.push(IdentityCheck { name: "doubledual", ok: double_dual(a) });
        v.push(IdentityCheck { name: "delay", ok: delay(a) });
    }
    v
}

#[cfg(test)]
mod tests {
    use super::super::catalog::{by_name, truncated_poly, NAMES};
    use super::*;

    #[test]
    fn catalog_identities() {
        for name in NAMES {
            let a = by_name(name).unwrap();
            for c in check_all(&a, true) {
                assert!(c.ok, "{name}: {}", c.name);
            }
        }
        let k = truncated_poly(3).unwrap();
        for c in check_all(&k, false) {
            assert!(c.ok, "Kx3: {}", c.name);
        }
        // the truncated polynomial algebra is not a division algebra: delay fails
        assert!(!delay(&k));
    }

    #[test]
    fn matrix_supertrace_values() {
        let h = by_name("H").unwrap();
        let mat = matrix_algebra(&h, 2, 0);
        // identity of Mat_2(H): 2 * str_H(str I) = 2 * 2 * 4
        assert_eq!(mat.supertrace(mat.unit()), Scalar::from_int(16));
        let e11 = mat.parse_elem("E11.1").unwrap();
        assert_eq!(mat.supertrace(&e11), Scalar::from_int(8));
    }
}
