//! The unoriented functor attached to a form `Φ = τ ∘ φ` on `V = A^{m|n}`:
//! the crossing goes to `nu · flip`, the cap to `Φ`, the cup to
//! `1 ↦ Σ_v (-1)^{σ|v|} v ⊗ v^∨` with `Φ(v^∨, w) = δ_{vw}`, and a token `a`
//! to right multiplication `ρ_{a^inv}`, `ρ_a(v) = (-1)^{|a||v|} v a`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{apply_gen, eval_layers, flatten_index, tensor_parities, GenImage, LinearMap, SuperModule, TensorVec};
use crate::diagram::{Gen, RawDiagram, Strand};
use crate::error::{Error, Result};
use crate::formslie::FormSpec;
use crate::linalg::{sparse_rank, Matrix};
use crate::scalar::Scalar;
use crate::superalg::{AlgElem, Parity};
use crate::unoriented::{UnConfig, UnMorphism};

#[derive(Clone, Debug)]
pub struct FormIncarnation {
    cfg: UnConfig,
    form: FormSpec,
    module: SuperModule,
    par: Vec<Parity>,
    cross: GenImage,
    cap: GenImage,
    cup: GenImage,
    toks: Vec<GenImage>,
}

impl FormIncarnation {
    /// Fails when the algebra, the parity `σ` or the loop parameter
    /// `d = nu (m - n)` of the category do not match the form.
    pub fn new(cfg: &UnConfig, form: &FormSpec) -> Result<Self> {
        let alg = cfg.algebra();
        if alg.name() != form.algebra().name() {
            return Err(Error::Config(format!("the category uses {} but {} is a form over {}", alg.name(), form.name(), form.algebra().name())));
        }
        if cfg.sigma() != form.sigma() {
            return Err(Error::Config(format!("the category has sigma = {} but {} has parity {}", cfg.sigma(), form.name(), form.sigma())));
        }
        if !alg.supertrace_is_zero() && *cfg.d() != form.loop_value() {
            return Err(Error::Config(format!(
                "the category has d = {} but {} needs d = nu (m - n) = {}",
                cfg.d(),
                form.name(),
                form.loop_value()
            )));
        }
        let module = SuperModule::new(alg.clone(), form.m(), form.n());
        let par = module.parities();
        let nn = par.len();
        let odd = |i: usize| par[i].is_odd();
        let g = form.ground_gram();
        let dual = g.inverse().map_err(|_| Error::Form(format!("{}: degenerate", form.name())))?;
        let nu = Scalar::from_int(form.nu());
        let cross = GenImage {
            arity: (2, 2),
            parity: Parity::EVEN,
            map: (0..nn * nn)
                .map(|k| {
                    let (a, b) = (k / nn, k % nn);
                    let mut v = nu.clone();
                    v.apply_sign(odd(a) && odd(b));
                    vec![(vec![b, a], v)]
                })
                .collect(),
        };
        let cap = GenImage {
            arity: (2, 0),
            parity: form.sigma(),
            map: (0..nn * nn)
                .map(|k| {
                    let v = g.get(k / nn, k % nn);
                    if v.is_zero() {
                        vec![]
                    } else {
                        vec![(vec![], v.clone())]
                    }
                })
                .collect(),
        };
        let sigma = form.sigma().is_odd();
        let mut cup_terms = Vec::new();
        for i in 0..nn {
            for k in 0..nn {
                let d = dual.get(i, k);
                if !d.is_zero() {
                    let mut v = d.clone();
                    v.apply_sign(sigma && odd(i));
                    cup_terms.push((vec![i, k], v));
                }
            }
        }
        let cup = GenImage { arity: (0, 2), parity: form.sigma(), map: vec![cup_terms] };
        let toks = (0..alg.dim()).map(|t| right_action(&module, &cfg.inv(&alg.elem(t)), alg.parity(t))).collect();
        Ok(FormIncarnation { cfg: cfg.clone(), form: form.clone(), module, par, cross, cap, cup, toks })
    }

    pub fn config(&self) -> &UnConfig {
        &self.cfg
    }

    pub fn form(&self) -> &FormSpec {
        &self.form
    }

    pub fn module(&self) -> &SuperModule {
        &self.module
    }

    pub fn parities(&self, k: usize) -> Vec<Parity> {
        tensor_parities(&self.par, k)
    }

    fn image(&self, g: Gen) -> &GenImage {
        match g {
            Gen::Cross => &self.cross,
            Gen::Cap => &self.cap,
            Gen::Cup => &self.cup,
            Gen::Tok(t) => &self.toks[t],
        }
    }

    pub fn eval_diagram(&self, d: &RawDiagram) -> LinearMap {
        let (layers, neg) = self.cfg.factor(d);
        let seq: Vec<(usize, &GenImage)> = layers.iter().map(|l| (l.left, self.image(l.gen))).collect();
        let out = eval_layers(&seq, d.r, d.s, &self.par);
        if neg {
            out.scale(&Scalar::from_int(-1))
        } else {
            out
        }
    }

    pub fn eval(&self, f: &UnMorphism) -> LinearMap {
        let mut acc = LinearMap::zero(self.parities(f.r), self.parities(f.s));
        for (d, c) in &f.terms {
            acc = acc.add(&self.eval_diagram(d).scale(c));
        }
        acc
    }

    /// Apply the image of a basis diagram to one tensor vector without
    /// building the whole matrix.
    fn apply_diagram(&self, d: &RawDiagram, v: &TensorVec) -> TensorVec {
        let (layers, neg) = self.cfg.factor(d);
        let mut cur = v.clone();
        for l in &layers {
            cur = apply_gen(&cur, l.left, self.image(l.gen), self.par.len(), &self.par);
        }
        if neg {
            for x in cur.values_mut() {
                *x = -&*x;
            }
        }
        cur
    }

    /// The test vector of a closed basis diagram `g` (`s = 0`): cap number
    /// `j` of `g` carries `e_j` at its left end and, at its right end, the
    /// vector `u ∈ e_j A` with `F(cap_t)(e_j ⊗ u) = δ` on the diagram's token.
    /// `None` when the construction does not apply (too few rows, a Gram
    /// matrix that is not diagonal, or an unsolvable token system).
    pub fn butte_vector(&self, g: &RawDiagram) -> Option<TensorVec> {
        if g.s != 0 || g.strands.len() > self.form.m() + self.form.n() || !self.gram_is_diagonal() {
            return None;
        }
        let alg = self.module.algebra();
        let unit = self.cfg.unit_index();
        let mut idx = vec![Vec::new(); g.r];
        for (j, st) in g.strands.iter().enumerate() {
            let u = self.dual_slot(j, st.token)?;
            idx[st.a] = vec![(self.module.index(j, unit), Scalar::one())];
            idx[st.b] = u.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (self.module.index(j, k), c)).collect();
            debug_assert!(alg.dim() > 0);
        }
        let mut v = TensorVec::new();
        v.insert(Vec::new(), Scalar::one());
        for slot in idx {
            let mut next = TensorVec::new();
            for (key, c) in &v {
                for (i, x) in &slot {
                    let mut k = key.clone();
                    k.push(*i);
                    *next.entry(k).or_insert_with(Scalar::zero) += c * x;
                }
            }
            v = next;
        }
        Some(v)
    }

    fn gram_is_diagonal(&self) -> bool {
        let m = self.form.gram();
        (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| i == j || m.get(i, j).is_zero()))
    }

    /// Coefficients `y` of `u = Σ_k y_k e_j b_k` with `F(cap_{t'})(e_j ⊗ u) = δ_{t t'}`.
    fn dual_slot(&self, j: usize, t: usize) -> Option<Vec<Scalar>> {
        let dim = self.module.algebra().dim();
        let unit = self.cfg.unit_index();
        let nn = self.par.len();
        let sys = Matrix::from_fn(dim, dim, |tp, k| {
            let cap = RawDiagram::new(2, 0, vec![Strand { a: 0, b: 1, token: tp }]);
            let mut v = TensorVec::new();
            v.insert(vec![self.module.index(j, unit), self.module.index(j, k)], Scalar::one());
            self.apply_diagram(&cap, &v).remove(&Vec::new()).unwrap_or_default()
        });
        let inv = sys.inverse().ok()?;
        let _ = nn;
        Some((0..dim).map(|k| inv.get(k, t).clone()).collect())
    }

    /// Rank of the basis images `r → s`, and the pairing matrix of the closed
    /// basis `r + s → 0` against the test vectors.
    pub fn butte_check(&self, r: usize, s: usize) -> ButteReport {
        let basis = self.cfg.enumerate_basis(r, s);
        let ncols = self.par.len().pow((r + s) as u32);
        let rank = sparse_rank(ncols, basis.iter().map(|d| self.eval_diagram(d).flatten()));
        let hypothesis = 2 * (self.form.m() + self.form.n()) >= r + s;
        let closed = self.cfg.enumerate_basis(r + s, 0);
        let vectors: Option<Vec<TensorVec>> = if hypothesis { closed.iter().map(|g| self.butte_vector(g)).collect() } else { None };
        let pairing_delta = vectors.map(|vs| {
            closed.iter().enumerate().all(|(fi, f)| {
                vs.iter().enumerate().all(|(gi, v)| {
                    let x = self.apply_diagram(f, v).remove(&Vec::new()).unwrap_or_default();
                    if fi == gi {
                        x == Scalar::one() || x == Scalar::from_int(-1)
                    } else {
                        x.is_zero()
                    }
                })
            })
        });
        ButteReport {
            r,
            s,
            count: basis.len(),
            rank,
            independent: rank == basis.len(),
            hypothesis,
            closed_count: closed.len(),
            pairing_delta,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ButteReport {
    pub r: usize,
    pub s: usize,
    pub count: usize,
    pub rank: usize,
    pub independent: bool,
    /// `2(m+n) >= r+s`
    pub hypothesis: bool,
    pub closed_count: usize,
    /// `Some(true)` when the test vectors pair to `±δ`; `None` when the
    /// construction does not apply (degenerate case)
    pub pairing_delta: Option<bool>,
}

/// `ρ_a(e_t c) = (-1)^{|a|(p(t)+|c|)} e_t (c a)` for homogeneous `a` of parity `pa`.
fn right_action(module: &SuperModule, a: &AlgElem, pa: Parity) -> GenImage {
    let alg = module.algebra();
    let map = (0..module.dim())
        .map(|i| {
            let (t, c) = module.split(i);
            let neg = (pa * module.parity(i)).is_odd();
            alg.mul(&alg.elem(c), a)
                .terms()
                .map(|(b, x)| {
                    let mut v = x.clone();
                    v.apply_sign(neg);
                    (vec![module.index(t, b)], v)
                })
                .collect()
        })
        .collect();
    GenImage { arity: (1, 1), parity: pa, map }
}

impl FormIncarnation {
    /// The tensor vector as a dense coordinate vector of `V^{⊗k}`.
    pub fn dense(&self, v: &TensorVec, k: usize) -> Vec<Scalar> {
        let nn = self.par.len();
        let mut out = vec![Scalar::zero(); nn.pow(k as u32)];
        for (key, x) in v {
            out[flatten_index(key, nn)] = x.clone();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::catalog::by_name;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(form: &str) -> FormIncarnation {
        let f = FormSpec::parse(form).unwrap();
        let un = UnConfig::new(f.algebra().clone(), f.sigma(), f.loop_value()).unwrap();
        FormIncarnation::new(&un, &f).unwrap()
    }

    const FORMS: &[&str] =
        &["osp(2,1|0)", "osp(1,0|2)", "osp(0,0|2)", "u(1,1|1,0)", "osp*(1|1,0)", "uq(1,1)", "periplectic(1,1)", "periplectic(1,-1,H)", "osp_C(1|2)", "osp_C(1|2,C_real_id)"];

    #[test]
    fn checks_configuration() {
        let f = FormSpec::parse("osp(2,1|0)").unwrap();
        let un = UnConfig::new(by_name("R").unwrap(), Parity::EVEN, Scalar::from_int(2)).unwrap();
        assert!(FormIncarnation::new(&un, &f).is_err());
        let un = UnConfig::new(by_name("H").unwrap(), Parity::EVEN, Scalar::from_int(3)).unwrap();
        assert!(FormIncarnation::new(&un, &f).is_err());
        let p = FormSpec::parse("periplectic(1,1)").unwrap();
        let un = UnConfig::new(by_name("R").unwrap(), Parity::EVEN, Scalar::zero()).unwrap();
        assert!(FormIncarnation::new(&un, &p).is_err());
    }

    #[test]
    fn loop_and_zigzags() {
        let inc = setup("osp(2,1|0)");
        let c = inc.config();
        let lp = c.compose(&c.cap(), &c.cup()).unwrap();
        assert_eq!(inc.eval(&lp).get(0, 0), Scalar::from_int(3));
        for name in FORMS {
            let inc = setup(name);
            let c = inc.config();
            let id1 = LinearMap::identity(inc.parities(1));
            let (cap, cup) = (inc.eval(&c.cap()), inc.eval(&c.cup()));
            let right = id1.tensor(&cap).compose(&cup.tensor(&id1));
            assert_eq!(right, id1, "{name} right zigzag");
            let left = cap.tensor(&id1).compose(&id1.tensor(&cup));
            let expect = if c.sigma().is_odd() { id1.scale(&Scalar::from_int(-1)) } else { id1.clone() };
            assert_eq!(left, expect, "{name} left zigzag");
        }
    }

    #[test]
    fn relations_hold_as_matrices() {
        for name in FORMS {
            let inc = setup(name);
            let c = inc.config().clone();
            let alg = c.algebra().clone();
            let id1 = LinearMap::identity(inc.parities(1));
            let (x, cap) = (inc.eval(&c.cross()), inc.eval(&c.cap()));
            assert_eq!(x.compose(&x), LinearMap::identity(inc.parities(2)), "{name}");
            assert_eq!(cap.compose(&x), cap, "{name} cap X");
            for t in 0..alg.dim() {
                let a = alg.elem(t);
                let ta = inc.eval(&c.token(&a));
                let tai = inc.eval(&c.token(&c.inv(&a)));
                assert_eq!(cap.compose(&ta.tensor(&id1)), cap.compose(&id1.tensor(&tai)), "{name} token across cap");
                let bub = cap.compose(&ta.tensor(&id1)).compose(&inc.eval(&c.cup()));
                let expect = &form_d(&inc) * &alg.supertrace(&a);
                assert_eq!(bub.get(0, 0), expect, "{name} bubble");
            }
        }
    }

    fn form_d(inc: &FormIncarnation) -> Scalar {
        inc.form().loop_value()
    }

    fn random_morphism(c: &UnConfig, r: usize, s: usize, rng: &mut ChaCha8Rng) -> UnMorphism {
        let basis = c.enumerate_basis(r, s);
        let mut f = UnMorphism::zero(r, s);
        for _ in 0..3 {
            if basis.is_empty() {
                break;
            }
            let d = &basis[rng.gen_range(0..basis.len())];
            f = f.add(&c.basis_morphism(d).scale(&Scalar::from_int(rng.gen_range(-3..4))));
        }
        f
    }

    #[test]
    fn functorial_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in FORMS {
            let inc = setup(name);
            let c = inc.config().clone();
            for _ in 0..5 {
                let r = rng.gen_range(0..3);
                let s = (r + 2 * rng.gen_range(0..2)) % 4;
                let t = (s + 2 * rng.gen_range(0..2)) % 4;
                let s = if s > 3 { s - 2 } else { s };
                let f = random_morphism(&c, s, t, &mut rng);
                let g = random_morphism(&c, r, s, &mut rng);
                let fg = c.compose(&f, &g).unwrap();
                assert_eq!(inc.eval(&fg), inc.eval(&f).compose(&inc.eval(&g)), "{name} compose");
                assert_eq!(inc.eval(&c.tensor(&f, &g)), inc.eval(&f).tensor(&inc.eval(&g)), "{name} tensor");
            }
        }
    }

    #[test]
    fn images_commute_with_the_lie_superalgebra() {
        for name in FORMS {
            let inc = setup(name);
            let f = inc.form().clone();
            let c = inc.config().clone();
            for d in c.enumerate_basis(2, 2).into_iter().take(12) {
                let img = inc.eval_diagram(&d);
                let pi = img.parity().unwrap();
                for x in f.lie_basis() {
                    let xm = f.ground_map(&x);
                    let px = xm.parity().unwrap();
                    let lhs = super::super::leibniz(&xm, 2).compose(&img);
                    let mut rhs = img.compose(&super::super::leibniz(&xm, 2));
                    if (px * pi).is_odd() {
                        rhs = rhs.scale(&Scalar::from_int(-1));
                    }
                    assert_eq!(lhs, rhs, "{name}");
                }
            }
        }
    }

    #[test]
    fn butte_small_cases() {
        let inc = setup("osp(2,0|0)");
        let rep = inc.butte_check(2, 0);
        assert_eq!((rep.count, rep.rank, rep.pairing_delta), (1, 1, Some(true)));
        let inc = setup("osp(1,0|0)");
        let rep = inc.butte_check(2, 2);
        assert!(!rep.hypothesis);
        assert_eq!(rep.pairing_delta, None);
        let inc = setup("osp(0,0|2)");
        let rep = inc.butte_check(2, 2);
        assert_eq!(rep.pairing_delta, None);
        assert!(!rep.independent);
    }
}
