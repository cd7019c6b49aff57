//! The orientation-expansion superfunctor from the unoriented category to
//! matrices over the parity-shifted oriented category.
//!
//! The generating object goes to `up ⊕ Π^σ down`, so a word in up and down of
//! length `n` is a summand of the image of `n` strands with parity shift
//! `σ·#down`. A morphism's image is a matrix indexed by (source word, target
//! word) whose entries are oriented morphisms between shifted objects.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::One;
use serde_json::{json, Value};

use super::{UnConfig, UnMorphism};
use crate::diagram::{Gen, Layer, RawDiagram};
use crate::error::Result;
use crate::linalg::{Echelon, SparseVec};
use crate::oriented::{format_word, OrConfig, OrMorphism, Word};
use crate::scalar::Scalar;
use crate::superalg::Parity;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftedMatrix {
    pub sigma: Parity,
    pub r: usize,
    pub s: usize,
    /// nonzero entries keyed by (source word, target word)
    pub entries: BTreeMap<(Word, Word), OrMorphism>,
}

fn shift(sigma: Parity, w: &[bool]) -> Parity {
    sigma * Parity::from_int(w.iter().filter(|u| !**u).count())
}

fn all_words(n: usize) -> Vec<Word> {
    (0..1usize << n).map(|code| (0..n).map(|i| code >> (n - 1 - i) & 1 == 0).collect()).collect()
}

/// Split a morphism into its even and odd parts.
fn homogeneous_parts(or: &OrConfig, f: &OrMorphism) -> [OrMorphism; 2] {
    let mut parts = [OrMorphism::zero(f.src.clone(), f.tgt.clone()), OrMorphism::zero(f.src.clone(), f.tgt.clone())];
    for (d, c) in &f.terms {
        let p = or.diagram_parity(d).as_u8() as usize;
        parts[p].terms.insert(d.clone(), c.clone());
    }
    parts
}

impl ShiftedMatrix {
    pub fn zero(sigma: Parity, r: usize, s: usize) -> Self {
        ShiftedMatrix { sigma, r, s, entries: BTreeMap::new() }
    }

    pub fn shift(&self, w: &[bool]) -> Parity {
        shift(self.sigma, w)
    }

    fn add_entry(&mut self, src: Word, tgt: Word, f: OrMorphism) {
        if f.is_zero() {
            return;
        }
        let key = (src, tgt);
        let new = match self.entries.remove(&key) {
            Some(old) => old.add(&f),
            None => f,
        };
        if !new.is_zero() {
            self.entries.insert(key, new);
        }
    }

    /// `self ∘ other`; composition in the shifted category carries no sign.
    pub fn compose(&self, or: &OrConfig, other: &ShiftedMatrix) -> ShiftedMatrix {
        assert_eq!(self.r, other.s);
        let mut out = ShiftedMatrix::zero(self.sigma, other.r, self.s);
        let mut by_src: HashMap<&Word, Vec<(&Word, &OrMorphism)>> = HashMap::new();
        for ((a, b), f) in &self.entries {
            by_src.entry(a).or_default().push((b, f));
        }
        for ((w, v), g) in &other.entries {
            if let Some(list) = by_src.get(v) {
                for (u, f) in list {
                    out.add_entry(w.clone(), (*u).clone(), or.compose(f, g).unwrap());
                }
            }
        }
        out
    }

    /// `self ⊗ other` with `f_r^s ⊗ g_u^v = (-1)^{r(|g|+u+v) + |f| v} (f ⊗ g)_{r+u}^{s+v}`.
    pub fn tensor(&self, or: &OrConfig, other: &ShiftedMatrix) -> ShiftedMatrix {
        let mut out = ShiftedMatrix::zero(self.sigma, self.r + other.r, self.s + other.s);
        for ((w, w2), f) in &self.entries {
            let fr = self.shift(w);
            for ((x, x2), g) in &other.entries {
                let (u, v) = (other.shift(x), other.shift(x2));
                for (pf, fp) in homogeneous_parts(or, f).iter().enumerate() {
                    if fp.is_zero() {
                        continue;
                    }
                    for (pg, gp) in homogeneous_parts(or, g).iter().enumerate() {
                        if gp.is_zero() {
                            continue;
                        }
                        let (pf, pg) = (Parity::from_int(pf), Parity::from_int(pg));
                        let e = fr * (pg + u + v) + pf * v;
                        let t = or.tensor(fp, gp);
                        let t = if e.is_odd() { t.scale(&Scalar::from_int(-1)) } else { t };
                        out.add_entry([w.as_slice(), x].concat(), [w2.as_slice(), x2].concat(), t);
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self, or: &OrConfig) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|((a, b), f)| {
                json!({
                    "src": format_word(a),
                    "tgt": format_word(b),
                    "src_shift": self.shift(a).as_u8(),
                    "tgt_shift": self.shift(b).as_u8(),
                    "morphism": or.morphism_json(f),
                })
            })
            .collect();
        json!({"r": self.r, "s": self.s, "sigma": self.sigma.as_u8(), "entries": entries})
    }
}

/// The expansion functor for one unoriented configuration. The oriented
/// target has loop parameter `d/2`.
pub struct Expander<'a> {
    un: &'a UnConfig,
    or: OrConfig,
    layers: RefCell<HashMap<(Layer, Word), Rc<Vec<(Word, OrMorphism)>>>>,
}

impl<'a> Expander<'a> {
    pub fn new(un: &'a UnConfig) -> Result<Self> {
        let half = un.d() * &Scalar::from_frac(1, 2);
        Ok(Expander { un, or: OrConfig::new(un.algebra().clone(), half)?, layers: RefCell::default() })
    }

    pub fn oriented(&self) -> &OrConfig {
        &self.or
    }

    /// Components of the image of a generator from source word `w`:
    /// (target word, coefficient, component).
    fn generator_image(&self, g: Gen, w: &[bool]) -> Vec<(Word, Scalar, OrMorphism)> {
        let or = &self.or;
        let sig = self.un.sigma().is_odd();
        let one = Scalar::one();
        let sgn = |odd: bool| Scalar::sign(odd);
        match g {
            Gen::Cross => {
                let (p, q) = (w[0], w[1]);
                vec![(vec![q, p], sgn(sig && !p && !q), or.crossing(p, q))]
            }
            Gen::Cap => match (w[0], w[1]) {
                (false, true) => vec![(vec![], one, or.leftcap())],
                (true, false) => vec![(vec![], one, or.rightcap())],
                _ => vec![],
            },
            Gen::Cup => vec![(vec![true, false], one, or.leftcup()), (vec![false, true], sgn(sig), or.rightcup())],
            Gen::Tok(t) => {
                if w[0] {
                    vec![(vec![true], one, or.basis_token(true, t))]
                } else {
                    let odd = sig && self.un.algebra().parity(t).is_odd();
                    vec![(vec![false], sgn(odd), or.token(false, &self.un.inv_table()[t]))]
                }
            }
        }
    }

    /// Image of a layer from source word `w`, signs included; memoized.
    fn layer_image(&self, l: &Layer, w: &[bool]) -> Rc<Vec<(Word, OrMorphism)>> {
        let key = (*l, w.to_vec());
        if let Some(v) = self.layers.borrow().get(&key) {
            return v.clone();
        }
        let v = Rc::new(self.compute_layer_image(l, w));
        self.layers.borrow_mut().insert(key, v.clone());
        v
    }

    fn compute_layer_image(&self, l: &Layer, w: &[bool]) -> Vec<(Word, OrMorphism)> {
        let sigma = self.un.sigma();
        let (i, _) = l.gen.arity();
        let (wa, wg, wc) = (&w[..l.left], &w[l.left..l.left + i], &w[l.left + i..]);
        let (ra, rc) = (shift(sigma, wa), shift(sigma, wc));
        let mut out = Vec::new();
        for (tgt, coeff, g) in self.generator_image(l.gen, wg) {
            let (u, v) = (shift(sigma, wg), shift(sigma, &tgt));
            let pg = match l.gen {
                Gen::Tok(t) => self.un.algebra().parity(t),
                _ => Parity::EVEN,
            };
            let e = ra * (pg + u + v) + pg * rc;
            let full = self.or.tensor_all(&[self.or.identity(wa), g, self.or.identity(wc)]);
            let mut c = coeff;
            c.apply_sign(e.is_odd());
            out.push(([wa, tgt.as_slice(), wc].concat(), full.scale(&c)));
        }
        out
    }

    pub fn expand_diagram(&self, d: &RawDiagram) -> ShiftedMatrix {
        let (layers, neg) = self.un.factor(d);
        let sigma = self.un.sigma();
        let mut out = ShiftedMatrix::zero(sigma, d.r, d.s);
        // a strand joining two source points survives only with opposite
        // orientations at its ends, so other source words map to zero
        let caps: Vec<(usize, usize)> = d.strands.iter().filter(|st| st.b < d.r).map(|st| (st.a, st.b)).collect();
        for w in all_words(d.r) {
            if caps.iter().any(|&(a, b)| w[a] == w[b]) {
                continue;
            }
            let mut state: BTreeMap<Word, OrMorphism> = BTreeMap::new();
            state.insert(w.clone(), self.or.identity(&w));
            for l in &layers {
                let mut next: BTreeMap<Word, OrMorphism> = BTreeMap::new();
                for (cur, m) in &state {
                    for (tgt, g) in self.layer_image(l, cur).iter() {
                        let h = self.or.compose(g, m).unwrap();
                        let merged = match next.remove(tgt) {
                            Some(old) => old.add(&h),
                            None => h,
                        };
                        if !merged.is_zero() {
                            next.insert(tgt.clone(), merged);
                        }
                    }
                }
                state = next;
            }
            for (tgt, m) in state {
                let m = if neg { m.scale(&Scalar::from_int(-1)) } else { m };
                out.add_entry(w.clone(), tgt, m);
            }
        }
        out
    }

    pub fn expand(&self, f: &UnMorphism) -> ShiftedMatrix {
        let mut out = ShiftedMatrix::zero(self.un.sigma(), f.r, f.s);
        for (d, c) in &f.terms {
            for ((a, b), m) in self.expand_diagram(d).entries {
                out.add_entry(a, b, m.scale(c));
            }
        }
        out
    }

    /// Rank of the images of all basis diagrams `r -> s`, and their number.
    pub fn faithfulness_rank(&self, r: usize, s: usize) -> (usize, usize) {
        let basis = self.un.enumerate_basis(r, s);
        let mut index: HashMap<(Word, Word, RawDiagram), usize> = HashMap::new();
        let mut ech = Echelon::new(usize::MAX);
        for d in &basis {
            let img = self.expand_diagram(d);
            let mut pairs = Vec::new();
            for ((a, b), m) in &img.entries {
                for (od, c) in &m.terms {
                    let n = index.len();
                    let k = *index.entry((a.clone(), b.clone(), od.clone())).or_insert(n);
                    pairs.push((k, c.clone()));
                }
            }
            ech.insert(SparseVec::from_pairs(pairs));
        }
        (ech.rank(), basis.len())
    }
}

/// The image of the identity of `n` strands, used in tests and reports.
pub fn identity_image(or: &OrConfig, sigma: Parity, n: usize) -> ShiftedMatrix {
    let mut out = ShiftedMatrix::zero(sigma, n, n);
    for w in all_words(n) {
        out.add_entry(w.clone(), w.clone(), or.identity(&w));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::superalg::catalog::INVOLUTIVE_PRESETS;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_basis_morphism(c: &UnConfig, r: usize, s: usize, rng: &mut ChaCha8Rng) -> UnMorphism {
        let basis = c.enumerate_basis(r, s);
        let mut f = UnMorphism::zero(r, s);
        for _ in 0..2 {
            let d = &basis[rng.gen_range(0..basis.len())];
            f = f.add(&c.basis_morphism(d).scale(&Scalar::from_int(rng.gen_range(1..4))));
        }
        f
    }

    #[test]
    fn identity_and_cap() {
        let c = UnConfig::preset("R", Parity::EVEN, Scalar::from_int(2)).unwrap();
        let ex = Expander::new(&c).unwrap();
        assert_eq!(ex.expand(&c.identity(1)), identity_image(ex.oriented(), Parity::EVEN, 1));
        let cap = ex.expand(&c.cap());
        assert_eq!(cap.entries.len(), 2);
        for f in cap.entries.values() {
            assert_eq!(f.terms.len(), 1);
            assert!(f.terms.values().all(|x| *x == Scalar::one()));
        }
    }

    #[test]
    fn functorial_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in INVOLUTIVE_PRESETS {
            for sigma in [Parity::EVEN, Parity::ODD] {
                let c = UnConfig::preset(name, sigma, Scalar::zero()).unwrap();
                let ex = Expander::new(&c).unwrap();
                let or = ex.oriented();
                for _ in 0..4 {
                    let f = random_basis_morphism(&c, 2, 2, &mut rng);
                    let g = random_basis_morphism(&c, 2, 2, &mut rng);
                    let lhs = ex.expand(&c.compose(&f, &g).unwrap());
                    let rhs = ex.expand(&f).compose(or, &ex.expand(&g));
                    assert_eq!(lhs, rhs, "{name} sigma={sigma} compose");
                    let f = random_basis_morphism(&c, 1, 1, &mut rng);
                    let g = random_basis_morphism(&c, 2, 0, &mut rng);
                    let lhs = ex.expand(&c.tensor(&f, &g));
                    let rhs = ex.expand(&f).tensor(or, &ex.expand(&g));
                    assert_eq!(lhs, rhs, "{name} sigma={sigma} tensor");
                }
            }
        }
    }

    #[test]
    fn faithful_small() {
        let c = UnConfig::preset("R", Parity::EVEN, Scalar::one()).unwrap();
        let ex = Expander::new(&c).unwrap();
        assert_eq!(ex.faithfulness_rank(2, 2), (3, 3));
    }
}
