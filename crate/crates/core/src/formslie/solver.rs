//! Exact solver for spaces of equivariant maps between tensor powers, and
//! the fullness check comparing them with the span of diagram images.

use std::time::Instant;

use serde::Serialize;

use super::FormSpec;
use crate::error::{Error, Result};
use crate::incarnate::{diagonal_word, leibniz, leibniz_word, FormIncarnation, GlIncarnation, LinearMap};
use crate::linalg::{Echelon, SparseVec};
use crate::oriented::{format_word, OrConfig};
use crate::scalar::Scalar;
use crate::superalg::{Parity, SuperAlgebra};
use crate::unoriented::UnConfig;

/// Unknown entries allowed per parity before the solver refuses.
pub const MAX_UNKNOWNS: usize = 200_000;

/// `tgt ∘ T = ± T ∘ src`, the sign being `(-1)^{|X||T|}` when `graded`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub src: LinearMap,
    pub tgt: LinearMap,
    pub graded: bool,
}

fn transpose_rows(x: &LinearMap) -> Vec<Vec<(usize, Scalar)>> {
    let mut rows = vec![Vec::new(); x.tgt_dim()];
    for (j, c) in x.columns().iter().enumerate() {
        for (i, v) in c.entries() {
            rows[*i].push((j, v.clone()));
        }
    }
    rows
}

/// Basis of all maps satisfying the constraints, homogeneous, even maps first.
pub fn solve_equivariant(src_par: &[Parity], tgt_par: &[Parity], cons: &[Constraint]) -> Result<Vec<LinearMap>> {
    let (nr, ns) = (src_par.len(), tgt_par.len());
    if nr.saturating_mul(ns) > 2 * MAX_UNKNOWNS {
        return Err(Error::TooLarge(format!("{ns} x {nr} unknowns exceed the solver limit")));
    }
    let prepared: Vec<(Parity, Vec<Vec<(usize, Scalar)>>, &Constraint)> = cons
        .iter()
        .map(|c| (c.tgt.parity().unwrap_or(Parity::EVEN), transpose_rows(&c.tgt), c))
        .collect();
    let mut out = Vec::new();
    for p in [Parity::EVEN, Parity::ODD] {
        let mut var = vec![usize::MAX; nr * ns];
        let mut vars = Vec::new();
        for a in 0..ns {
            for b in 0..nr {
                if tgt_par[a] + src_par[b] == p {
                    var[a * nr + b] = vars.len();
                    vars.push((a, b));
                }
            }
        }
        if vars.is_empty() {
            continue;
        }
        let mut ech = Echelon::new(vars.len());
        'outer: for (q, rows, c) in &prepared {
            let neg = c.graded && (*q * p).is_odd();
            for a in 0..ns {
                for b in 0..nr {
                    if tgt_par[a] + src_par[b] != p + *q {
                        continue;
                    }
                    let mut pairs = Vec::new();
                    for (k, v) in &rows[a] {
                        let x = var[k * nr + b];
                        if x != usize::MAX {
                            pairs.push((x, v.clone()));
                        }
                    }
                    for (k, v) in c.src.column(b).entries() {
                        let x = var[a * nr + k];
                        if x != usize::MAX {
                            let mut w = v.clone();
                            w.apply_sign(!neg);
                            pairs.push((x, w));
                        }
                    }
                    let row = SparseVec::from_pairs(pairs);
                    if !row.is_zero() {
                        ech.insert(row);
                        if ech.rank() == vars.len() {
                            break 'outer;
                        }
                    }
                }
            }
        }
        for v in ech.nullspace() {
            let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nr];
            for (x, c) in v.into_iter().enumerate() {
                if !num_traits::Zero::is_zero(&c) {
                    let (a, b) = vars[x];
                    cols[b].push((a, c));
                }
            }
            let cols = cols.into_iter().map(SparseVec::from_pairs).collect();
            out.push(LinearMap::from_columns(src_par.to_vec(), tgt_par.to_vec(), cols));
        }
    }
    Ok(out)
}

/// Maps `V^{⊗r} → V^{⊗s}` commuting with `g(φ)` (super sense) and with the
/// component representatives of `G(φ)`.
pub fn equivariant_homs(form: &FormSpec, r: usize, s: usize) -> Result<Vec<LinearMap>> {
    let mut cons = Vec::new();
    for x in form.lie_basis() {
        let x = form.ground_map(&x);
        cons.push(Constraint { src: leibniz(&x, r), tgt: leibniz(&x, s), graded: true });
    }
    for g in form.group_components() {
        let g = form.ground_map(&g);
        cons.push(Constraint {
            src: diagonal_word(&g, &g, &vec![true; r]),
            tgt: diagonal_word(&g, &g, &vec![true; s]),
            graded: false,
        });
    }
    let par = form.ground_parities();
    let src = crate::incarnate::SuperModule::new(form.algebra().clone(), form.m(), form.n()).tensor_parities(r);
    let tgt = crate::incarnate::SuperModule::new(form.algebra().clone(), form.m(), form.n()).tensor_parities(s);
    debug_assert_eq!(par.len(), form.ground_dim());
    solve_equivariant(&src, &tgt, &cons)
}

/// Maps between mixed tensor words of `V` and `V*` commuting with `gl(m|n)`
/// and its component representatives.
pub fn gl_equivariant_homs(alg: &SuperAlgebra, m: usize, n: usize, x: &[bool], y: &[bool]) -> Result<Vec<LinearMap>> {
    let cfg = OrConfig::new(alg.clone(), Scalar::from_int(m as i64 - n as i64))?;
    let inc = GlIncarnation::new(&cfg, m, n)?;
    gl_homs(&inc, x, y)
}

fn gl_homs(inc: &GlIncarnation, x: &[bool], y: &[bool]) -> Result<Vec<LinearMap>> {
    let mut cons = Vec::new();
    for (a, ad) in inc.lie_basis() {
        cons.push(Constraint { src: leibniz_word(&a, &ad, x), tgt: leibniz_word(&a, &ad, y), graded: true });
    }
    for g in inc.group_reps() {
        cons.push(Constraint { src: diagonal_word(&g, &g, x), tgt: diagonal_word(&g, &g, y), graded: false });
    }
    solve_equivariant(&inc.word_parities(x), &inc.word_parities(y), &cons)
}

#[derive(Clone, Debug, Serialize)]
pub struct FullnessReport {
    pub label: String,
    /// number of basis diagrams
    pub basis: usize,
    /// rank of their images
    pub rank: usize,
    /// dimension of the equivariant hom space
    pub dim: usize,
    pub kernel_dim: usize,
    /// every image is equivariant
    pub contained: bool,
    pub ok: bool,
    pub elapsed_ms: u128,
}

fn report(label: String, images: Vec<LinearMap>, homs: Vec<LinearMap>, start: Instant) -> FullnessReport {
    let ncols = images.first().or(homs.first()).map(|f| f.src_dim() * f.tgt_dim()).unwrap_or(0);
    let mut span = Echelon::new(ncols);
    let mut dim = 0;
    for h in &homs {
        if span.insert(h.flatten()) {
            dim += 1;
        }
    }
    let contained = images.iter().all(|f| span.contains(f.flatten()));
    let mut ech = Echelon::new(ncols);
    for f in &images {
        ech.insert(f.flatten());
    }
    let rank = ech.rank();
    FullnessReport {
        label,
        basis: images.len(),
        rank,
        dim,
        kernel_dim: images.len() - rank,
        contained,
        ok: contained && rank == dim,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Rank of the images of the unoriented basis `r → s` under the form's
/// functor against the dimension of the equivariant maps.
pub fn spanning_check(form: &FormSpec, r: usize, s: usize) -> Result<FullnessReport> {
    let start = Instant::now();
    let un = UnConfig::new(form.algebra().clone(), form.sigma(), form.loop_value())?;
    let inc = FormIncarnation::new(&un, form)?;
    let images: Vec<LinearMap> = un.enumerate_basis(r, s).iter().map(|d| inc.eval_diagram(d)).collect();
    let homs = equivariant_homs(form, r, s)?;
    Ok(report(format!("{} r={r} s={s}", form.name()), images, homs, start))
}

/// The oriented analogue for `gl(m|n)` between the words `x` and `y`.
pub fn spanning_check_oriented(alg: &SuperAlgebra, m: usize, n: usize, x: &[bool], y: &[bool]) -> Result<FullnessReport> {
    let start = Instant::now();
    let cfg = OrConfig::new(alg.clone(), Scalar::from_int(m as i64 - n as i64))?;
    let inc = GlIncarnation::new(&cfg, m, n)?;
    let images: Vec<LinearMap> = cfg.enumerate_basis(x, y).iter().map(|d| inc.eval_diagram(x, y, d)).collect();
    let homs = gl_homs(&inc, x, y)?;
    let label = format!("gl({m}|{n},{}) {}->{}", alg.name(), format_word(x), format_word(y));
    Ok(report(label, images, homs, start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::catalog::by_name;

    fn check(name: &str, r: usize, s: usize) -> FullnessReport {
        spanning_check(&FormSpec::parse(name).unwrap(), r, s).unwrap()
    }

    #[test]
    fn orthogonal_group() {
        let rep = check("osp(2,1|0)", 2, 2);
        assert_eq!((rep.rank, rep.dim), (3, 3));
        assert!(rep.ok);
    }

    #[test]
    fn odd_symplectic() {
        let rep = check("osp(0,0|2)", 2, 2);
        assert_eq!((rep.rank, rep.dim, rep.kernel_dim), (2, 2, 1));
        assert!(rep.ok);
    }

    #[test]
    fn small_full_cases() {
        for (name, r, s) in [("osp(1,0|0)", 1, 1), ("osp*(0|1,0)", 2, 2), ("periplectic(1,1)", 2, 2), ("uq(1,0)", 1, 1), ("osp_C(1|0)", 2, 0)] {
            let rep = check(name, r, s);
            assert!(rep.ok, "{name}: {rep:?}");
        }
    }

    #[test]
    fn odd_degree_has_no_maps() {
        let rep = check("osp(2,1|0)", 1, 0);
        assert_eq!((rep.basis, rep.dim), (0, 0));
    }

    #[test]
    fn oriented_cases() {
        const U: bool = true;
        const D: bool = false;
        let rep = spanning_check_oriented(&by_name("C_real").unwrap(), 1, 1, &[U, U], &[U, U]).unwrap();
        assert!(rep.ok, "{rep:?}");
        let rep = spanning_check_oriented(&by_name("H").unwrap(), 1, 0, &[U, D], &[U, D]).unwrap();
        assert!(rep.ok, "{rep:?}");
        let rep = spanning_check_oriented(&by_name("R").unwrap(), 1, 0, &[U], &[U]).unwrap();
        assert_eq!((rep.rank, rep.dim), (1, 1));
    }

    #[test]
    fn solver_respects_the_limit() {
        let par = vec![Parity::EVEN; 1000];
        assert!(matches!(solve_equivariant(&par, &par, &[]), Err(Error::TooLarge(_))));
    }
}
