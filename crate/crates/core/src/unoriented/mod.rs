//! The unoriented Brauer supercategory with tokens from an involutive
//! Frobenius superalgebra. Cups and caps have parity `sigma`; a token passing
//! through a cup or cap is replaced by its image under `inv = ⋆ ∘ ν`.

pub mod expand;
pub mod relations;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::diagram::{add_term, decorate, factorize, perfect_matchings, Engine, Flavor, Gen, Layer, RawDiagram, Strand, StrandKind, Terms};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalg::catalog::by_name;
use crate::superalg::{AlgElem, Parity, SuperAlgebra};

pub use expand::ShiftedMatrix;

#[derive(Clone, Debug)]
pub struct UnConfig {
    alg: SuperAlgebra,
    sigma: Parity,
    d: Scalar,
    inv: Vec<AlgElem>,
    unit: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnMorphism {
    pub r: usize,
    pub s: usize,
    pub terms: Terms,
}

impl UnMorphism {
    pub fn zero(r: usize, s: usize) -> Self {
        UnMorphism { r, s, terms: Terms::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &UnMorphism) -> UnMorphism {
        assert!(self.r == o.r && self.s == o.s, "adding morphisms of different types");
        let mut t = self.terms.clone();
        for (d, c) in &o.terms {
            add_term(&mut t, d.clone(), c.clone());
        }
        UnMorphism { r: self.r, s: self.s, terms: t }
    }

    pub fn scale(&self, c: &Scalar) -> UnMorphism {
        let mut t = Terms::new();
        for (d, x) in &self.terms {
            add_term(&mut t, d.clone(), c * x);
        }
        UnMorphism { r: self.r, s: self.s, terms: t }
    }

    pub fn neg(&self) -> UnMorphism {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.r != 0 || self.s != 0 {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Scalar::zero))
    }
}

impl UnConfig {
    /// Checks performed here:
    /// * the algebra has an anti-involution and its unit is a basis element;
    /// * with odd part and vanishing supertrace, every loop is zero and `d` becomes 0;
    /// * with `sigma = 1` and a supertrace that is not identically zero, a
    ///   bubble equals minus itself, so `d` must be 0.
    pub fn new(alg: SuperAlgebra, sigma: Parity, d: Scalar) -> Result<Self> {
        if !alg.has_star() {
            return Err(Error::Config(format!("{}: the unoriented category needs an anti-involution", alg.name())));
        }
        let unit = alg.unit_index().ok_or_else(|| Error::Algebra(format!("{}: unit is not a basis element", alg.name())))?;
        let str_zero = alg.supertrace_is_zero();
        let d = if alg.has_odd_part() && str_zero { Scalar::zero() } else { d };
        if sigma.is_odd() && !str_zero && !d.is_zero() {
            return Err(Error::Config(format!(
                "degenerate configuration: with sigma = 1 and str_{} not identically zero, \
                 the bubble relation forces d str(a) = -d str(a), so d must be 0 (got d = {d})",
                alg.name()
            )));
        }
        let inv = (0..alg.dim()).map(|b| alg.inv(&alg.elem(b)).unwrap()).collect();
        Ok(UnConfig { alg, sigma, d, inv, unit })
    }

    /// One of `R`, `C_real_id`, `C_real`, `H`, `ClC`.
    pub fn preset(name: &str, sigma: Parity, d: Scalar) -> Result<Self> {
        UnConfig::new(by_name(name)?, sigma, d)
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.alg
    }

    pub fn sigma(&self) -> Parity {
        self.sigma
    }

    pub fn d(&self) -> &Scalar {
        &self.d
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn inv(&self, a: &AlgElem) -> AlgElem {
        let mut out = self.alg.zero();
        for (i, c) in a.terms() {
            out.add_scaled(c, &self.inv[i]);
        }
        out
    }

    pub fn inv_table(&self) -> &[AlgElem] {
        &self.inv
    }

    pub fn diagram_parity(&self, d: &RawDiagram) -> Parity {
        d.strands.iter().fold(Parity::EVEN, |p, st| {
            let structural = d.kind(st) != StrandKind::Through;
            p + self.alg.parity(st.token) + if structural { self.sigma } else { Parity::EVEN }
        })
    }

    pub fn parity(&self, f: &UnMorphism) -> Option<Parity> {
        let mut ps = f.terms.keys().map(|d| self.diagram_parity(d));
        let first = ps.next().unwrap_or(Parity::EVEN);
        ps.all(|p| p == first).then_some(first)
    }

    fn single(&self, d: RawDiagram) -> UnMorphism {
        let (r, s) = (d.r, d.s);
        let mut terms = Terms::new();
        terms.insert(d, Scalar::one());
        UnMorphism { r, s, terms }
    }

    pub fn basis_morphism(&self, d: &RawDiagram) -> UnMorphism {
        self.single(d.clone())
    }

    pub fn identity(&self, n: usize) -> UnMorphism {
        self.single(RawDiagram::new(n, n, (0..n).map(|i| Strand { a: i, b: n + i, token: self.unit }).collect()))
    }

    pub fn layer(&self, l: &Layer) -> UnMorphism {
        self.single(l.diagram(self.unit))
    }

    pub fn cross(&self) -> UnMorphism {
        self.layer(&Layer { left: 0, width: 2, gen: Gen::Cross })
    }

    pub fn cap(&self) -> UnMorphism {
        self.layer(&Layer { left: 0, width: 2, gen: Gen::Cap })
    }

    pub fn cup(&self) -> UnMorphism {
        self.layer(&Layer { left: 0, width: 0, gen: Gen::Cup })
    }

    pub fn token(&self, a: &AlgElem) -> UnMorphism {
        let mut terms = Terms::new();
        for (t, c) in a.terms() {
            add_term(&mut terms, Layer { left: 0, width: 1, gen: Gen::Tok(t) }.diagram(self.unit), c.clone());
        }
        UnMorphism { r: 1, s: 1, terms }
    }

    pub fn basis_token(&self, t: usize) -> UnMorphism {
        self.token(&self.alg.elem(t))
    }

    fn engine(&self) -> Engine<'_> {
        Engine { alg: &self.alg, d: &self.d, flavor: Flavor::Unoriented { sigma: self.sigma, inv: &self.inv } }
    }

    /// `f ∘ g`
    pub fn compose(&self, f: &UnMorphism, g: &UnMorphism) -> Result<UnMorphism> {
        if f.r != g.s {
            return Err(Error::Interface(format!("cannot compose {} -> {} after {} -> {}", f.r, f.s, g.r, g.s)));
        }
        let eng = self.engine();
        let mut terms = Terms::new();
        for (df, cf) in &f.terms {
            for (dg, cg) in &g.terms {
                let c = cf * cg;
                for (d, x) in eng.compose(df, dg) {
                    add_term(&mut terms, d, &c * &x);
                }
            }
        }
        Ok(UnMorphism { r: g.r, s: f.s, terms })
    }

    fn pad(&self, f: &UnMorphism, k: usize, right: bool) -> UnMorphism {
        let toks = vec![self.unit; k];
        let mut terms = Terms::new();
        for (d, c) in &f.terms {
            add_term(&mut terms, d.pad(k, right, &toks), c.clone());
        }
        UnMorphism { r: f.r + k, s: f.s + k, terms }
    }

    /// `f ⊗ g = (f ⊗ 1)(1 ⊗ g)`
    pub fn tensor(&self, f: &UnMorphism, g: &UnMorphism) -> UnMorphism {
        self.compose(&self.pad(f, g.s, true), &self.pad(g, f.r, false)).expect("tensor interface")
    }

    pub fn tensor_all(&self, fs: &[UnMorphism]) -> UnMorphism {
        fs.iter().fold(self.identity(0), |acc, f| self.tensor(&acc, f))
    }

    /// All decorated Brauer diagrams `r -> s`.
    pub fn enumerate_basis(&self, r: usize, s: usize) -> Vec<RawDiagram> {
        let mut out = Vec::new();
        for m in perfect_matchings(r + s) {
            out.extend(decorate(r, s, &m, self.alg.dim()));
        }
        out.sort();
        out
    }

    /// Replace every token by its image under `inv`.
    pub fn apply_xi(&self, f: &UnMorphism) -> UnMorphism {
        let mut terms = Terms::new();
        for (d, c) in &f.terms {
            let mut partial: Vec<(Vec<Strand>, Scalar)> = vec![(Vec::new(), c.clone())];
            for st in &d.strands {
                let mut next = Vec::new();
                for (ss, x) in &partial {
                    for (t, y) in self.inv[st.token].terms() {
                        let mut s2 = ss.clone();
                        s2.push(Strand { token: t, ..*st });
                        next.push((s2, x * y));
                    }
                }
                partial = next;
            }
            for (ss, x) in partial {
                add_term(&mut terms, RawDiagram::new(d.r, d.s, ss), x);
            }
        }
        UnMorphism { r: f.r, s: f.s, terms }
    }

    /// Close an endomorphism off to the right with nested caps and cups.
    pub fn trace(&self, f: &UnMorphism) -> Result<Scalar> {
        if f.r != f.s {
            return Err(Error::Interface("trace of a non-endomorphism".into()));
        }
        let n = f.r;
        let strands = |_: ()| (0..n).map(|i| Strand { a: i, b: 2 * n - 1 - i, token: self.unit }).collect::<Vec<_>>();
        let cups = self.single(RawDiagram::new(0, 2 * n, strands(())));
        let caps = self.single(RawDiagram::new(2 * n, 0, strands(())));
        let closed = self.compose(&caps, &self.compose(&self.pad(f, n, true), &cups)?)?;
        Ok(closed.as_scalar().unwrap())
    }

    /// Factor a basis diagram into layers; the flag is set when the diagram
    /// is minus the composite.
    pub fn factor(&self, d: &RawDiagram) -> (Vec<Layer>, bool) {
        let layers = factorize(d, Some(self.unit));
        let mut acc = self.identity(d.r);
        for l in &layers {
            acc = self.compose(&self.layer(l), &acc).unwrap();
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
        (layers, neg)
    }

    pub fn diagram_json(&self, d: &RawDiagram) -> Value {
        let mut toks = serde_json::Map::new();
        let mut matching = Vec::new();
        for (k, st) in d.strands.iter().enumerate() {
            matching.push(json!([st.a + 1, st.b + 1]));
            toks.insert((k + 1).to_string(), json!(self.alg.basis_name(st.token)));
        }
        json!({"r": d.r, "s": d.s, "match": matching, "tokens": toks})
    }

    pub fn morphism_json(&self, f: &UnMorphism) -> Value {
        let terms: Vec<Value> = f.terms.iter().map(|(d, c)| json!({"coeff": c.to_string(), "diagram": self.diagram_json(d)})).collect();
        json!({"r": f.r, "s": f.s, "terms": terms})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::catalog::INVOLUTIVE_PRESETS;

    #[test]
    fn loop_and_zigzags() {
        let c = UnConfig::preset("R", Parity::EVEN, Scalar::from_int(3)).unwrap();
        assert_eq!(c.compose(&c.cap(), &c.cup()).unwrap().as_scalar(), Some(Scalar::from_int(3)));
        let c = UnConfig::preset("R", Parity::ODD, Scalar::zero()).unwrap();
        let left = c.compose(&c.tensor(&c.cap(), &c.identity(1)), &c.tensor(&c.identity(1), &c.cup())).unwrap();
        assert_eq!(left, c.identity(1).neg());
        let right = c.compose(&c.tensor(&c.identity(1), &c.cap()), &c.tensor(&c.cup(), &c.identity(1))).unwrap();
        assert_eq!(right, c.identity(1));
    }

    #[test]
    fn degenerate_configurations() {
        let e = UnConfig::preset("R", Parity::ODD, Scalar::from_int(2)).unwrap_err();
        assert!(e.to_string().contains("d must be 0"), "{e}");
        let c = UnConfig::preset("ClC", Parity::ODD, Scalar::from_int(5)).unwrap();
        assert!(c.d().is_zero());
    }

    #[test]
    fn basis_counts() {
        let r = UnConfig::preset("R", Parity::EVEN, Scalar::one()).unwrap();
        assert_eq!(r.enumerate_basis(2, 2).len(), 3);
        assert!(r.enumerate_basis(1, 2).is_empty());
        let h = UnConfig::preset("H", Parity::EVEN, Scalar::one()).unwrap();
        assert_eq!(h.enumerate_basis(2, 2).len(), 48);
    }

    #[test]
    fn xi_is_an_involution() {
        let h = UnConfig::preset("H", Parity::EVEN, Scalar::one()).unwrap();
        let i = h.algebra().parse_elem("i").unwrap();
        // i is even, so i^inv = i^star = -i
        assert_eq!(h.apply_xi(&h.token(&i)), h.token(&i).neg());
        for name in INVOLUTIVE_PRESETS {
            let c = UnConfig::preset(name, Parity::EVEN, Scalar::one()).unwrap();
            for d in c.enumerate_basis(2, 2) {
                let f = c.basis_morphism(&d);
                assert_eq!(c.apply_xi(&c.apply_xi(&f)), f);
            }
        }
    }

    #[test]
    fn factorization_roundtrip() {
        for name in INVOLUTIVE_PRESETS {
            for sigma in [Parity::EVEN, Parity::ODD] {
                let c = UnConfig::preset(name, sigma, Scalar::zero()).unwrap();
                for (r, s) in [(2, 2), (4, 0), (0, 4), (3, 1), (1, 3)] {
                    for d in c.enumerate_basis(r, s) {
                        c.factor(&d);
                    }
                }
            }
        }
    }
}
