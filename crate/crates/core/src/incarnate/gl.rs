//! The oriented functor: `↑ ↦ V`, `↓ ↦ V*` for `V = A^{m|n}`.
//!
//! Tokens are written in the category's algebra `C`; internally `V` is a
//! module over `C^op`, so a token `a` acts by `e_t c ↦ (-1)^{|a| p(t)} e_t (a c)`.
//! The commuting Lie superalgebra `gl(m|n)` then acts through
//! `E_st b : e_t c ↦ (-1)^{|b||c|} e_s (c b)`.

use num_traits::Zero;

use super::{eval_layers, tensor_parities, GenImage, LinearMap, SuperModule};
use crate::diagram::{Gen, RawDiagram};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::oriented::{OrConfig, OrMorphism};
use crate::scalar::Scalar;
use crate::superalg::{AlgElem, Parity};

/// Generators of the oriented category, as accepted by [`GlIncarnation::generator_map`].
#[derive(Clone, Debug)]
pub enum OrGen {
    Cross,
    CapL,
    CapR,
    CupL,
    CupR,
    Token(AlgElem),
    DualToken(AlgElem),
}

#[derive(Clone, Debug)]
pub struct GlIncarnation {
    cfg: OrConfig,
    module: SuperModule,
    par: Vec<Parity>,
    flip: GenImage,
    ev: GenImage,
    ev_flip: GenImage,
    coev: GenImage,
    flip_coev: GenImage,
    up: Vec<GenImage>,
    down: Vec<GenImage>,
}

impl GlIncarnation {
    /// Fails unless the loop parameter equals the superdimension `m - n`
    /// (it is irrelevant when every supertrace vanishes).
    pub fn new(cfg: &OrConfig, m: usize, n: usize) -> Result<Self> {
        let alg = cfg.algebra().clone();
        let sdim = Scalar::from_int(m as i64 - n as i64);
        if !alg.supertrace_is_zero() && *cfg.d() != sdim {
            return Err(Error::Config(format!(
                "the category has d = {} but V = {}^({m}|{n}) needs d = m - n = {sdim}",
                cfg.d(),
                alg.name()
            )));
        }
        let module = SuperModule::new(alg, m, n);
        let par = module.parities();
        let nn = par.len();
        let odd = |i: usize| par[i].is_odd();
        let flip = GenImage {
            arity: (2, 2),
            parity: Parity::EVEN,
            map: (0..nn * nn)
                .map(|k| {
                    let (a, b) = (k / nn, k % nn);
                    vec![(vec![b, a], Scalar::sign(odd(a) && odd(b)))]
                })
                .collect(),
        };
        let pairing = |signed: bool| GenImage {
            arity: (2, 0),
            parity: Parity::EVEN,
            map: (0..nn * nn)
                .map(|k| {
                    let (a, b) = (k / nn, k % nn);
                    if a == b {
                        vec![(vec![], Scalar::sign(signed && odd(a)))]
                    } else {
                        vec![]
                    }
                })
                .collect(),
        };
        let copairing = |signed: bool| GenImage {
            arity: (0, 2),
            parity: Parity::EVEN,
            map: vec![(0..nn).map(|i| (vec![i, i], Scalar::sign(signed && odd(i)))).collect()],
        };
        let dim = module.algebra().dim();
        let up: Vec<GenImage> = (0..dim).map(|k| up_token(&module, k)).collect();
        let down = up.iter().enumerate().map(|(k, g)| down_token(g, module.algebra().parity(k), &par)).collect();
        Ok(GlIncarnation {
            cfg: cfg.clone(),
            flip,
            ev: pairing(false),
            ev_flip: pairing(true),
            coev: copairing(false),
            flip_coev: copairing(true),
            up,
            down,
            module,
            par,
        })
    }

    pub fn module(&self) -> &SuperModule {
        &self.module
    }

    pub fn config(&self) -> &OrConfig {
        &self.cfg
    }

    /// Parities of the basis of the tensor word (`V*` uses the dual basis).
    pub fn word_parities(&self, w: &[bool]) -> Vec<Parity> {
        tensor_parities(&self.par, w.len())
    }

    fn layer_image(&self, gen: Gen, left: usize, below: &[bool], above: &[bool]) -> &GenImage {
        match gen {
            Gen::Cross => &self.flip,
            Gen::Cap => match (below[left], below[left + 1]) {
                (false, true) => &self.ev,
                (true, false) => &self.ev_flip,
                _ => panic!("cap joins strands of the same orientation"),
            },
            Gen::Cup => match (above[left], above[left + 1]) {
                (true, false) => &self.coev,
                (false, true) => &self.flip_coev,
                _ => panic!("cup joins strands of the same orientation"),
            },
            Gen::Tok(t) => {
                if below[left] {
                    &self.up[t]
                } else {
                    &self.down[t]
                }
            }
        }
    }

    /// Image of an oriented basis diagram.
    pub fn eval_diagram(&self, src: &[bool], tgt: &[bool], d: &RawDiagram) -> LinearMap {
        let (layers, words, neg) = self.cfg.factor(src, tgt, d);
        let seq: Vec<(usize, &GenImage)> =
            layers.iter().enumerate().map(|(k, l)| (l.left, self.layer_image(l.gen, l.left, &words[k], &words[k + 1]))).collect();
        let out = eval_layers(&seq, src.len(), tgt.len(), &self.par);
        if neg {
            out.scale(&Scalar::from_int(-1))
        } else {
            out
        }
    }

    pub fn eval(&self, f: &OrMorphism) -> LinearMap {
        let mut acc = LinearMap::zero(self.word_parities(&f.src), self.word_parities(&f.tgt));
        for (d, c) in &f.terms {
            acc = acc.add(&self.eval_diagram(&f.src, &f.tgt, d).scale(c));
        }
        acc
    }

    fn combo(&self, imgs: &[GenImage], a: &AlgElem) -> LinearMap {
        let mut acc = LinearMap::zero(self.par.clone(), self.par.clone());
        for (k, c) in a.terms() {
            acc = acc.add(&eval_layers(&[(0, &imgs[k])], 1, 1, &self.par).scale(c));
        }
        acc
    }

    /// The image of a single generator.
    pub fn generator_map(&self, g: &OrGen) -> LinearMap {
        let single = |img: &GenImage| eval_layers(&[(0, img)], img.arity.0, img.arity.1, &self.par);
        match g {
            OrGen::Cross => single(&self.flip),
            OrGen::CapL => single(&self.ev),
            OrGen::CapR => single(&self.ev_flip),
            OrGen::CupL => single(&self.coev),
            OrGen::CupR => single(&self.flip_coev),
            OrGen::Token(a) => self.combo(&self.up, a),
            OrGen::DualToken(a) => self.combo(&self.down, a),
        }
    }

    /// Basis `E_st b` of `gl(m|n)` acting on `V`, paired with the dual action on `V*`.
    pub fn lie_basis(&self) -> Vec<(LinearMap, LinearMap)> {
        let alg = self.module.algebra();
        let size = self.module.m() + self.module.n();
        let mut out = Vec::new();
        for s in 0..size {
            for t in 0..size {
                for b in 0..alg.dim() {
                    let cols = (0..self.par.len())
                        .map(|i| {
                            let (u, c) = self.module.split(i);
                            if u != t {
                                return SparseVec::new();
                            }
                            let neg = (alg.parity(b) * alg.parity(c)).is_odd();
                            let prod = alg.mul(&alg.elem(c), &alg.elem(b));
                            SparseVec::from_pairs(prod.terms().map(|(k, x)| {
                                let mut v = x.clone();
                                v.apply_sign(neg);
                                (self.module.index(s, k), v)
                            }))
                        })
                        .collect();
                    let x = LinearMap::from_columns(self.par.clone(), self.par.clone(), cols);
                    let xd = dual_action(&x);
                    out.push((x, xd));
                }
            }
        }
        out
    }

    /// Representatives of the non-identity components of `GL(m|n)_rd`: one
    /// reflection per block, present only when the even part of the algebra
    /// is the real field. Each is its own inverse and acts on `V*` the same way.
    pub fn group_reps(&self) -> Vec<LinearMap> {
        let alg = self.module.algebra();
        let even_dim = alg.parities().iter().filter(|p| p.is_even()).count();
        if even_dim != 1 || alg.field() != crate::superalg::Field::Real {
            return Vec::new();
        }
        let (m, n) = (self.module.m(), self.module.n());
        let mut rows = Vec::new();
        if m > 0 {
            rows.push(0);
        }
        if n > 0 {
            rows.push(m);
        }
        rows.into_iter().map(|t| reflection(&self.module, &[t])).collect()
    }
}

/// `diag(±1)` on `V`, with `-1` on the listed rows.
pub(crate) fn reflection(module: &SuperModule, rows: &[usize]) -> LinearMap {
    let par = module.parities();
    let cols = (0..par.len())
        .map(|i| {
            let (t, _) = module.split(i);
            SparseVec::from_pairs([(i, Scalar::sign(rows.contains(&t)))])
        })
        .collect();
    LinearMap::from_columns(par.clone(), par, cols)
}

/// Dual action on `V*`: `(X f)(v) = -(-1)^{|X||f|} f(X v)`, parts taken by parity.
pub fn dual_action(x: &LinearMap) -> LinearMap {
    let par = x.src_parities().to_vec();
    let mut pairs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); par.len()];
    for p in [Parity::EVEN, Parity::ODD] {
        let xp = x.homogeneous_part(p);
        for i in 0..par.len() {
            for (j, v) in xp.column(i).entries() {
                // X v_i = sum_j v X_ji; X f_j picks up X_ji f_i
                let mut c = -v;
                c.apply_sign((p * par[*j]).is_odd());
                pairs[*j].push((i, c));
            }
        }
    }
    let cols = pairs.into_iter().map(SparseVec::from_pairs).collect();
    LinearMap::from_columns(par.clone(), par, cols)
}

fn up_token(module: &SuperModule, k: usize) -> GenImage {
    let alg = module.algebra();
    let map = (0..module.dim())
        .map(|i| {
            let (t, c) = module.split(i);
            let neg = (alg.parity(k) * module.row_parity(t)).is_odd();
            alg.mul(&alg.elem(k), &alg.elem(c))
                .terms()
                .map(|(b, x)| {
                    let mut v = x.clone();
                    v.apply_sign(neg);
                    (vec![module.index(t, b)], v)
                })
                .collect()
        })
        .collect();
    GenImage { arity: (1, 1), parity: alg.parity(k), map }
}

/// `f ↦ (-1)^{|a||f|} f ∘ ρ_a`.
fn down_token(up: &GenImage, pa: Parity, par: &[Parity]) -> GenImage {
    let mut map: Vec<Vec<(Vec<usize>, Scalar)>> = vec![Vec::new(); par.len()];
    for (i, outs) in up.map.iter().enumerate() {
        for (o, x) in outs {
            let j = o[0];
            let mut v = x.clone();
            v.apply_sign((pa * par[j]).is_odd());
            map[j].push((vec![i], v));
        }
    }
    GenImage { arity: (1, 1), parity: pa, map }
}

impl GlIncarnation {
    /// `str_V` of the token action of `a`.
    pub fn token_supertrace(&self, a: &AlgElem) -> Scalar {
        let t = self.generator_map(&OrGen::Token(a.clone()));
        let mut s = Scalar::zero();
        for i in 0..self.par.len() {
            let mut v = t.get(i, i);
            v.apply_sign(self.par[i].is_odd());
            s += v;
        }
        s
    }

    pub fn identity(&self, w: &[bool]) -> LinearMap {
        LinearMap::identity(self.word_parities(w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::superalg::catalog::{by_name, REAL_DIVISION};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const U: bool = true;
    const D: bool = false;

    fn setup(name: &str, m: usize, n: usize) -> GlIncarnation {
        let alg = by_name(name).unwrap();
        let cfg = OrConfig::new(alg, Scalar::from_int(m as i64 - n as i64)).unwrap();
        GlIncarnation::new(&cfg, m, n).unwrap()
    }

    #[test]
    fn mismatched_d_is_rejected() {
        let cfg = OrConfig::new(by_name("R").unwrap(), Scalar::from_int(2)).unwrap();
        assert!(GlIncarnation::new(&cfg, 3, 0).is_err());
        assert!(GlIncarnation::new(&cfg, 3, 1).is_ok());
    }

    #[test]
    fn bubble_is_superdimension() {
        let g = setup("R", 3, 0);
        let c = g.config();
        let bub = c.compose(&c.leftcap(), &c.rightcup()).unwrap();
        assert_eq!(g.eval(&bub).get(0, 0), Scalar::from_int(3));
        let g = setup("H", 2, 1);
        let a = g.module().algebra().elem(0);
        assert_eq!(g.token_supertrace(&a), Scalar::from_int(4));
    }

    #[test]
    fn generators_and_zigzags() {
        for name in REAL_DIVISION {
            let g = setup(name, 2, 1);
            let c = g.config();
            assert_eq!(g.eval(&c.upcross()), g.generator_map(&OrGen::Cross), "{name}");
            assert_eq!(g.eval(&c.leftcap()), g.generator_map(&OrGen::CapL));
            assert_eq!(g.eval(&c.rightcup()), g.generator_map(&OrGen::CupR));
            let idd = g.identity(&[D]);
            let zig = g.generator_map(&OrGen::CapL).tensor(&idd).compose(&idd.tensor(&g.generator_map(&OrGen::CupL)));
            assert_eq!(zig, idd, "{name} left zigzag");
            let idu = g.identity(&[U]);
            let zig = g.generator_map(&OrGen::CapR).tensor(&idu).compose(&idu.tensor(&g.generator_map(&OrGen::CupR)));
            assert_eq!(zig, idu, "{name} right zigzag");
            for k in 0..c.algebra().dim() {
                let a = c.algebra().elem(k);
                // the down token is the rotated up token
                let rot = g
                    .generator_map(&OrGen::CapL)
                    .tensor(&idd)
                    .compose(&idd.tensor(&g.generator_map(&OrGen::Token(a.clone()))).tensor(&idd))
                    .compose(&idd.tensor(&g.generator_map(&OrGen::CupL)));
                assert_eq!(rot, g.generator_map(&OrGen::DualToken(a.clone())), "{name} token {k}");
                assert_eq!(g.eval(&c.token(D, &a)), rot);
            }
        }
    }

    #[test]
    fn token_action_on_quaternions() {
        // e1 ↦ e1 i on H^{1|0}
        let g = setup("H", 1, 0);
        let alg = g.module().algebra().clone();
        let i = alg.basis_index("i").unwrap();
        let t = g.generator_map(&OrGen::Token(alg.elem(i)));
        assert_eq!(t.get(i, 0), Scalar::one());
    }

    fn random_morphism(c: &OrConfig, x: &[bool], y: &[bool], rng: &mut ChaCha8Rng) -> OrMorphism {
        let basis = c.enumerate_basis(x, y);
        let mut f = OrMorphism::zero(x.to_vec(), y.to_vec());
        for _ in 0..3 {
            if basis.is_empty() {
                break;
            }
            let d = &basis[rng.gen_range(0..basis.len())];
            f = f.add(&c.basis_morphism(x, y, d).scale(&Scalar::from_int(rng.gen_range(-3..4))));
        }
        f
    }

    fn random_word(len: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
        (0..len).map(|_| rng.gen_bool(0.5)).collect()
    }

    #[test]
    fn functorial_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in ["R", "C_real", "H", "Cl1R", "Cl3R", "ClC"] {
            let g = setup(name, 1, 1);
            let c = g.config().clone();
            for _ in 0..6 {
                let x = random_word(rng.gen_range(0..3), &mut rng);
                let y = random_word(rng.gen_range(0..3), &mut rng);
                let z = random_word(rng.gen_range(0..3), &mut rng);
                let f = random_morphism(&c, &y, &z, &mut rng);
                let h = random_morphism(&c, &x, &y, &mut rng);
                let fh = c.compose(&f, &h).unwrap();
                assert_eq!(g.eval(&fh), g.eval(&f).compose(&g.eval(&h)), "{name} compose");
                let t = c.tensor(&f, &h);
                assert_eq!(g.eval(&t), g.eval(&f).tensor(&g.eval(&h)), "{name} tensor");
            }
        }
    }

    #[test]
    fn images_commute_with_gl() {
        let g = setup("Cl1R", 1, 1);
        let c = g.config().clone();
        let (x, y) = (vec![U, D], vec![D, U]);
        for d in c.enumerate_basis(&x, &y) {
            let f = g.eval_diagram(&x, &y, &d);
            let pf = f.parity().unwrap();
            for (a, ad) in g.lie_basis() {
                let pa = a.parity().unwrap();
                let lhs = super::super::leibniz_word(&a, &ad, &y).compose(&f);
                let rhs = f.compose(&super::super::leibniz_word(&a, &ad, &x));
                let rhs = if (pa * pf).is_odd() { rhs.scale(&Scalar::from_int(-1)) } else { rhs };
                assert_eq!(lhs, rhs);
            }
        }
    }
}
