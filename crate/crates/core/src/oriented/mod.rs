//! The oriented Brauer supercategory with tokens from a Frobenius superalgebra.
//!
//! Objects are words in up and down. A morphism is a linear combination of
//! oriented decorated matchings in normal form (see [`crate::diagram`]).

pub mod relations;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::diagram::{add_term, decorate, factorize, perfect_matchings, Engine, Flavor, Gen, Layer, OrientWords, RawDiagram, StrandKind, Terms};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalg::{AlgElem, Parity, SuperAlgebra};

/// A word in up (`true`) and down (`false`).
pub type Word = Vec<bool>;

pub fn parse_word(text: &str) -> Result<Word> {
    text.chars()
        .enumerate()
        .map(|(i, c)| match c {
            'u' => Ok(true),
            'd' => Ok(false),
            _ => Err(Error::Parse { pos: i, msg: format!("expected 'u' or 'd', found '{c}'") }),
        })
        .collect()
}

pub fn format_word(w: &[bool]) -> String {
    w.iter().map(|&u| if u { 'u' } else { 'd' }).collect()
}

/// Category data: the token algebra and the loop parameter.
#[derive(Clone, Debug)]
pub struct OrConfig {
    alg: SuperAlgebra,
    d: Scalar,
    unit: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrMorphism {
    pub src: Word,
    pub tgt: Word,
    pub terms: Terms,
}

impl OrMorphism {
    pub fn zero(src: Word, tgt: Word) -> Self {
        OrMorphism { src, tgt, terms: Terms::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &OrMorphism) -> OrMorphism {
        assert!(self.src == o.src && self.tgt == o.tgt, "adding morphisms of different types");
        let mut t = self.terms.clone();
        for (d, c) in &o.terms {
            add_term(&mut t, d.clone(), c.clone());
        }
        OrMorphism { src: self.src.clone(), tgt: self.tgt.clone(), terms: t }
    }

    pub fn scale(&self, c: &Scalar) -> OrMorphism {
        let mut t = Terms::new();
        for (d, x) in &self.terms {
            add_term(&mut t, d.clone(), c * x);
        }
        OrMorphism { src: self.src.clone(), tgt: self.tgt.clone(), terms: t }
    }

    pub fn sub(&self, o: &OrMorphism) -> OrMorphism {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    /// The scalar of an endomorphism of the empty word.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if !self.src.is_empty() || !self.tgt.is_empty() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Scalar::zero))
    }
}

/// Whether a matching is compatible with the orientations of its endpoints.
pub fn is_oriented(src: &[bool], tgt: &[bool], d: &RawDiagram) -> bool {
    let r = src.len();
    if d.r != r || d.s != tgt.len() || !d.is_matching() {
        return false;
    }
    let letter = |e: usize| if e < r { src[e] } else { tgt[e - r] };
    d.strands.iter().all(|st| match d.kind(st) {
        StrandKind::Through => letter(st.a) == letter(st.b),
        _ => letter(st.a) != letter(st.b),
    })
}

impl OrConfig {
    /// Fails if the algebra has no basis element equal to its unit. When the
    /// algebra has odd part and vanishing supertrace every loop is zero and
    /// `d` is normalized to 0.
    pub fn new(alg: SuperAlgebra, d: Scalar) -> Result<Self> {
        let unit = alg.unit_index().ok_or_else(|| Error::Algebra(format!("{}: unit is not a basis element", alg.name())))?;
        let d = if alg.has_odd_part() && alg.supertrace_is_zero() { Scalar::zero() } else { d };
        Ok(OrConfig { alg, d, unit })
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.alg
    }

    pub fn d(&self) -> &Scalar {
        &self.d
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn diagram_parity(&self, d: &RawDiagram) -> Parity {
        d.strands.iter().fold(Parity::EVEN, |p, st| p + self.alg.parity(st.token))
    }

    /// Parity of a morphism, if homogeneous.
    pub fn parity(&self, f: &OrMorphism) -> Option<Parity> {
        let mut ps = f.terms.keys().map(|d| self.diagram_parity(d));
        let first = ps.next().unwrap_or(Parity::EVEN);
        ps.all(|p| p == first).then_some(first)
    }

    fn single(&self, src: Word, tgt: Word, d: RawDiagram) -> OrMorphism {
        let mut terms = Terms::new();
        terms.insert(d, Scalar::one());
        OrMorphism { src, tgt, terms }
    }

    pub fn identity(&self, w: &[bool]) -> OrMorphism {
        let n = w.len();
        let d = RawDiagram::new(n, n, (0..n).map(|i| crate::diagram::Strand { a: i, b: n + i, token: self.unit }).collect());
        self.single(w.to_vec(), w.to_vec(), d)
    }

    /// The crossing of two strands with the given orientations (bottom left, bottom right).
    pub fn crossing(&self, left: bool, right: bool) -> OrMorphism {
        let d = Layer { left: 0, width: 2, gen: Gen::Cross }.diagram(self.unit);
        self.single(vec![left, right], vec![right, left], d)
    }

    pub fn upcross(&self) -> OrMorphism {
        self.crossing(true, true)
    }

    /// `down up -> empty`
    pub fn leftcap(&self) -> OrMorphism {
        self.single(vec![false, true], vec![], Layer { left: 0, width: 2, gen: Gen::Cap }.diagram(self.unit))
    }

    /// `up down -> empty`
    pub fn rightcap(&self) -> OrMorphism {
        self.single(vec![true, false], vec![], Layer { left: 0, width: 2, gen: Gen::Cap }.diagram(self.unit))
    }

    /// `empty -> up down`
    pub fn leftcup(&self) -> OrMorphism {
        self.single(vec![], vec![true, false], Layer { left: 0, width: 0, gen: Gen::Cup }.diagram(self.unit))
    }

    /// `empty -> down up`
    pub fn rightcup(&self) -> OrMorphism {
        self.single(vec![], vec![false, true], Layer { left: 0, width: 0, gen: Gen::Cup }.diagram(self.unit))
    }

    /// A token on a single strand of orientation `up`.
    pub fn token(&self, up: bool, a: &AlgElem) -> OrMorphism {
        let mut terms = Terms::new();
        for (t, c) in a.terms() {
            add_term(&mut terms, Layer { left: 0, width: 1, gen: Gen::Tok(t) }.diagram(self.unit), c.clone());
        }
        OrMorphism { src: vec![up], tgt: vec![up], terms }
    }

    pub fn basis_token(&self, up: bool, t: usize) -> OrMorphism {
        self.token(up, &self.alg.elem(t))
    }

    fn engine<'a>(&'a self, bottom: &'a [bool], mid: &'a [bool], top: &'a [bool]) -> Engine<'a> {
        Engine { alg: &self.alg, d: &self.d, flavor: Flavor::Oriented(OrientWords { bottom, mid, top }) }
    }

    /// `f ∘ g`
    pub fn compose(&self, f: &OrMorphism, g: &OrMorphism) -> Result<OrMorphism> {
        if f.src != g.tgt {
            return Err(Error::Interface(format!(
                "cannot compose {} -> {} after {} -> {}",
                format_word(&f.src),
                format_word(&f.tgt),
                format_word(&g.src),
                format_word(&g.tgt)
            )));
        }
        let eng = self.engine(&g.src, &g.tgt, &f.tgt);
        let mut terms = Terms::new();
        for (df, cf) in &f.terms {
            for (dg, cg) in &g.terms {
                let c = cf * cg;
                for (d, x) in eng.compose(df, dg) {
                    add_term(&mut terms, d, &c * &x);
                }
            }
        }
        Ok(OrMorphism { src: g.src.clone(), tgt: f.tgt.clone(), terms })
    }

    fn pad(&self, f: &OrMorphism, w: &[bool], right: bool) -> OrMorphism {
        let toks = vec![self.unit; w.len()];
        let join = |x: &[bool]| if right { [x, w].concat() } else { [w, x].concat() };
        let mut terms = Terms::new();
        for (d, c) in &f.terms {
            add_term(&mut terms, d.pad(w.len(), right, &toks), c.clone());
        }
        OrMorphism { src: join(&f.src), tgt: join(&f.tgt), terms }
    }

    /// `f ⊗ g = (f ⊗ 1)(1 ⊗ g)`
    pub fn tensor(&self, f: &OrMorphism, g: &OrMorphism) -> OrMorphism {
        let lhs = self.pad(f, &g.tgt, true);
        let rhs = self.pad(g, &f.src, false);
        self.compose(&lhs, &rhs).expect("tensor interface")
    }

    pub fn tensor_all(&self, fs: &[OrMorphism]) -> OrMorphism {
        fs.iter().fold(self.identity(&[]), |acc, f| self.tensor(&acc, f))
    }

    /// All decorated oriented matchings `X -> Y`.
    pub fn enumerate_basis(&self, x: &[bool], y: &[bool]) -> Vec<RawDiagram> {
        let (r, s) = (x.len(), y.len());
        let mut out = Vec::new();
        for m in perfect_matchings(r + s) {
            let probe = RawDiagram::new(r, s, m.iter().map(|&(a, b)| crate::diagram::Strand { a, b, token: 0 }).collect());
            if is_oriented(x, y, &probe) {
                out.extend(decorate(r, s, &m, self.alg.dim()));
            }
        }
        out.sort();
        out
    }

    pub fn basis_morphism(&self, x: &[bool], y: &[bool], d: &RawDiagram) -> OrMorphism {
        self.single(x.to_vec(), y.to_vec(), d.clone())
    }

    /// Close an endomorphism off to the right with nested cups and caps.
    pub fn trace(&self, f: &OrMorphism) -> Result<Scalar> {
        if f.src != f.tgt {
            return Err(Error::Interface("trace of a non-endomorphism".into()));
        }
        let x = &f.src;
        let n = x.len();
        let dual: Word = x.iter().rev().map(|&u| !u).collect();
        let nest = |top: bool| -> RawDiagram {
            let strands = (0..n).map(|i| crate::diagram::Strand { a: i, b: 2 * n - 1 - i, token: self.unit }).collect();
            if top {
                RawDiagram::new(0, 2 * n, strands)
            } else {
                RawDiagram::new(2 * n, 0, strands)
            }
        };
        let xx: Word = [x.as_slice(), dual.as_slice()].concat();
        let cups = self.single(vec![], xx.clone(), nest(true));
        let caps = self.single(xx, vec![], nest(false));
        let mid = self.pad(f, &dual, true);
        let closed = self.compose(&caps, &self.compose(&mid, &cups)?)?;
        Ok(closed.as_scalar().unwrap())
    }

    /// The words below each layer of a factorization, plus the final word.
    pub fn layer_words(&self, src: &[bool], tgt: &[bool], d: &RawDiagram, layers: &[Layer]) -> Vec<Word> {
        let mut cups: Vec<(usize, usize)> =
            d.strands.iter().filter(|st| d.kind(st) == StrandKind::Cup).map(|st| (st.a - d.r, st.b - d.r)).collect();
        cups.sort();
        let mut next_cup = 0;
        let mut cur = src.to_vec();
        let mut out = vec![cur.clone()];
        for l in layers {
            match l.gen {
                Gen::Cross => cur.swap(l.left, l.left + 1),
                Gen::Cap => {
                    cur.drain(l.left..l.left + 2);
                }
                Gen::Cup => {
                    let (a, b) = cups[next_cup];
                    next_cup += 1;
                    cur.splice(l.left..l.left, [tgt[a], tgt[b]]);
                }
                Gen::Tok(_) => {}
            }
            out.push(cur.clone());
        }
        out
    }

    /// The layer as a morphism between the given words.
    pub fn layer_morphism(&self, l: &Layer, below: &[bool], above: &[bool]) -> OrMorphism {
        self.single(below.to_vec(), above.to_vec(), l.diagram(self.unit))
    }

    /// A factorization of a basis diagram into layers together with the sign
    /// `ε` such that the diagram equals `ε` times the composite.
    pub fn factor(&self, src: &[bool], tgt: &[bool], d: &RawDiagram) -> (Vec<Layer>, Vec<Word>, bool) {
        let layers = factorize(d, Some(self.unit));
        let words = self.layer_words(src, tgt, d, &layers);
        let mut acc = self.identity(src);
        for (k, l) in layers.iter().enumerate() {
            acc = self.compose(&self.layer_morphism(l, &words[k], &words[k + 1]), &acc).unwrap();
        }
        assert_eq!(acc.terms.len(), 1, "factorization of a basis diagram is a single diagram");
        let (got, c) = acc.terms.iter().next().unwrap();
        assert_eq!(got, d, "factorization reproduces the diagram");
        let neg = if c.is_one() {
            false
        } else {
            assert_eq!(*c, Scalar::from_int(-1));
            true
        };
        (layers, words, neg)
    }

    pub fn diagram_json(&self, src: &[bool], tgt: &[bool], d: &RawDiagram) -> Value {
        let mut toks = serde_json::Map::new();
        let mut matching = Vec::new();
        for (k, st) in d.strands.iter().enumerate() {
            matching.push(json!([st.a + 1, st.b + 1]));
            toks.insert((k + 1).to_string(), json!(self.alg.basis_name(st.token)));
        }
        json!({"src": format_word(src), "tgt": format_word(tgt), "match": matching, "tokens": toks})
    }

    pub fn morphism_json(&self, f: &OrMorphism) -> Value {
        let terms: Vec<Value> =
            f.terms.iter().map(|(d, c)| json!({"coeff": c.to_string(), "diagram": self.diagram_json(&f.src, &f.tgt, d)})).collect();
        json!({"src": format_word(&f.src), "tgt": format_word(&f.tgt), "terms": terms})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::catalog::by_name;

    fn cfg(name: &str, d: i64) -> OrConfig {
        OrConfig::new(by_name(name).unwrap(), Scalar::from_int(d)).unwrap()
    }

    #[test]
    fn basis_counts() {
        let h = cfg("H", 0);
        assert_eq!(h.enumerate_basis(&[true, false], &[true, false]).len(), 32);
        let r = cfg("R", 0);
        assert_eq!(r.enumerate_basis(&[true], &[true]).len(), 1);
        assert!(r.enumerate_basis(&[true], &[false]).is_empty());
        // (v+w)/2 = 3 strands: 3! matchings
        assert_eq!(r.enumerate_basis(&[true, true, true], &[true, true, true]).len(), 6);
    }

    #[test]
    fn traces() {
        let r = cfg("R", 5);
        assert_eq!(r.trace(&r.identity(&[true])).unwrap(), Scalar::from_int(5));
        assert_eq!(r.trace(&r.upcross()).unwrap(), Scalar::from_int(5));
        assert_eq!(r.trace(&r.identity(&[true, false])).unwrap(), Scalar::from_int(25));
        let c = cfg("C_real", 3);
        let i = c.algebra().parse_elem("i").unwrap();
        assert!(c.trace(&c.token(true, &i)).unwrap().is_zero());
        let h = cfg("H", 2);
        let bub = h.compose(&h.leftcap(), &h.compose(&h.tensor(&h.identity(&[false]), &h.token(true, &h.algebra().parse_elem("i").unwrap())), &h.rightcup()).unwrap()).unwrap();
        assert!(bub.as_scalar().unwrap().is_zero());
    }

    #[test]
    fn odd_division_algebra_forgets_d() {
        assert!(cfg("Cl1R", 7).d().is_zero());
        assert_eq!(*cfg("H", 7).d(), Scalar::from_int(7));
    }

    #[test]
    fn factorization_roundtrip() {
        for name in ["R", "Cl1R", "Cl3R"] {
            let c = cfg(name, 1);
            for (x, y) in [(vec![true, false], vec![true, false]), (vec![true, true, false], vec![true]), (vec![], vec![false, true, true, false])] {
                for d in c.enumerate_basis(&x, &y) {
                    c.factor(&x, &y, &d);
                }
            }
        }
    }
}
