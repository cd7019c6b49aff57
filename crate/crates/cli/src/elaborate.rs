//! Elaboration of parsed expressions into morphisms, and printing of
//! morphisms back into expressions.
//!
//! In the oriented category the orientation of `x` and `tok` strands is
//! inferred from the rest of the expression; strands left undetermined are
//! taken to point up.

use superbrauer::diagram::{Gen as LayerGen, RawDiagram};
use superbrauer::oriented::{OrConfig, OrMorphism};
use superbrauer::unoriented::{UnConfig, UnMorphism};
use superbrauer::{Error, Result, Scalar};

use crate::expr::{Expr, Gen, IdWord, Node};

fn mismatch(pos: usize, msg: String) -> Error {
    Error::Interface(format!("at {pos}: {msg}"))
}

fn wrong_mode(pos: usize, what: &str, mode: &str) -> Error {
    Error::Parse { pos, msg: format!("`{what}` is not a generator of the {mode} category") }
}

// unoriented ---------------------------------------------------------------

pub fn unoriented(c: &UnConfig, e: &Expr) -> Result<UnMorphism> {
    match &e.node {
        Node::Gen(g) => match g {
            Gen::Cross => Ok(c.cross()),
            Gen::Cap => Ok(c.cap()),
            Gen::Cup => Ok(c.cup()),
            other => Err(wrong_mode(e.pos, &format!("{other:?}"), "unoriented")),
        },
        Node::Empty => Ok(c.identity(0)),
        Node::Id(IdWord::Count(n)) => Ok(c.identity(*n)),
        Node::Id(IdWord::Oriented(w)) if w.is_empty() => Ok(c.identity(0)),
        Node::Id(IdWord::Oriented(_)) => Err(Error::Parse { pos: e.pos, msg: "unoriented identities take a strand count".into() }),
        Node::Tok(a) => Ok(c.token(&c.algebra().parse_elem(a)?)),
        Node::Scaled(k, inner) => Ok(unoriented(c, inner)?.scale(k)),
        Node::Compose(parts) => {
            let mut acc = unoriented(c, &parts[0])?;
            for p in &parts[1..] {
                let f = unoriented(c, p)?;
                if f.r != acc.s {
                    return Err(mismatch(p.pos, format!("{} strands meet a morphism with source {}", acc.s, f.r)));
                }
                acc = c.compose(&f, &acc)?;
            }
            Ok(acc)
        }
        Node::Tensor(parts) => {
            let fs = parts.iter().map(|p| unoriented(c, p)).collect::<Result<Vec<_>>>()?;
            Ok(c.tensor_all(&fs))
        }
        Node::Sum(parts) => {
            let mut acc: Option<UnMorphism> = None;
            for (neg, p) in parts {
                let f = unoriented(c, p)?;
                let f = if *neg { f.neg() } else { f };
                acc = Some(match acc {
                    None => f,
                    Some(a) if (a.r, a.s) == (f.r, f.s) => a.add(&f),
                    Some(a) => return Err(mismatch(p.pos, format!("summands {}->{} and {}->{}", a.r, a.s, f.r, f.s))),
                });
            }
            Ok(acc.unwrap())
        }
    }
}

// oriented: typing ---------------------------------------------------------

#[derive(Clone, Copy, Debug)]
enum Ori {
    Var(usize),
    Fixed(bool),
}

#[derive(Default)]
struct Unifier {
    parent: Vec<usize>,
    value: Vec<Option<bool>>,
}

impl Unifier {
    fn fresh(&mut self) -> Ori {
        self.parent.push(self.parent.len());
        self.value.push(None);
        Ori::Var(self.parent.len() - 1)
    }

    fn find(&mut self, v: usize) -> usize {
        let p = self.parent[v];
        if p == v {
            return v;
        }
        let r = self.find(p);
        self.parent[v] = r;
        r
    }

    fn value(&mut self, o: Ori) -> Option<bool> {
        match o {
            Ori::Fixed(b) => Some(b),
            Ori::Var(v) => {
                let r = self.find(v);
                self.value[r]
            }
        }
    }

    fn unify(&mut self, a: Ori, b: Ori) -> bool {
        match (a, b) {
            (Ori::Fixed(x), Ori::Fixed(y)) => x == y,
            (Ori::Var(v), Ori::Fixed(x)) | (Ori::Fixed(x), Ori::Var(v)) => {
                let r = self.find(v);
                match self.value[r] {
                    Some(y) => x == y,
                    None => {
                        self.value[r] = Some(x);
                        true
                    }
                }
            }
            (Ori::Var(v), Ori::Var(w)) => {
                let (r, s) = (self.find(v), self.find(w));
                if r == s {
                    return true;
                }
                match (self.value[r], self.value[s]) {
                    (Some(x), Some(y)) if x != y => false,
                    (x, y) => {
                        self.parent[r] = s;
                        self.value[s] = x.or(y);
                        true
                    }
                }
            }
        }
    }

    fn unify_all(&mut self, pos: usize, a: &[Ori], b: &[Ori]) -> Result<()> {
        if a.len() != b.len() {
            return Err(mismatch(pos, format!("{} strands meet an interface of {}", a.len(), b.len())));
        }
        for (k, (x, y)) in a.iter().zip(b).enumerate() {
            if !self.unify(*x, *y) {
                return Err(mismatch(pos, format!("strand {} has opposite orientations on the two sides", k + 1)));
            }
        }
        Ok(())
    }
}

/// Source and target interface of each node, in preorder.
struct Typing {
    u: Unifier,
    types: Vec<(Vec<Ori>, Vec<Ori>)>,
}

fn fixed(w: &[bool]) -> Vec<Ori> {
    w.iter().map(|b| Ori::Fixed(*b)).collect()
}

const U: bool = true;
const D: bool = false;

impl Typing {
    fn infer(&mut self, e: &Expr) -> Result<(Vec<Ori>, Vec<Ori>)> {
        let slot = self.types.len();
        self.types.push((Vec::new(), Vec::new()));
        let ty = match &e.node {
            Node::Gen(g) => match g {
                Gen::Cross => {
                    let (a, b) = (self.u.fresh(), self.u.fresh());
                    (vec![a, b], vec![b, a])
                }
                Gen::CapL => (fixed(&[D, U]), vec![]),
                Gen::CapR => (fixed(&[U, D]), vec![]),
                Gen::CupL => (vec![], fixed(&[U, D])),
                Gen::CupR => (vec![], fixed(&[D, U])),
                Gen::Cap | Gen::Cup => {
                    return Err(Error::Parse { pos: e.pos, msg: "oriented caps and cups are capL, capR, cupL, cupR".into() })
                }
            },
            Node::Empty => (vec![], vec![]),
            Node::Id(IdWord::Oriented(w)) => (fixed(w), fixed(w)),
            Node::Id(IdWord::Count(0)) => (vec![], vec![]),
            Node::Id(IdWord::Count(_)) => return Err(Error::Parse { pos: e.pos, msg: "oriented identities take a word in u and d".into() }),
            Node::Tok(_) => {
                let a = self.u.fresh();
                (vec![a], vec![a])
            }
            Node::Scaled(_, inner) => self.infer(inner)?,
            Node::Compose(parts) => {
                let (src, mut top) = self.infer(&parts[0])?;
                for p in &parts[1..] {
                    let (s, t) = self.infer(p)?;
                    self.u.unify_all(p.pos, &top, &s)?;
                    top = t;
                }
                (src, top)
            }
            Node::Tensor(parts) => {
                let (mut s, mut t) = (Vec::new(), Vec::new());
                for p in parts {
                    let (a, b) = self.infer(p)?;
                    s.extend(a);
                    t.extend(b);
                }
                (s, t)
            }
            Node::Sum(parts) => {
                let (s, t) = self.infer(&parts[0].1)?;
                for (_, p) in &parts[1..] {
                    let (a, b) = self.infer(p)?;
                    self.u.unify_all(p.pos, &s, &a)?;
                    self.u.unify_all(p.pos, &t, &b)?;
                }
                (s, t)
            }
        };
        self.types[slot] = ty.clone();
        Ok(ty)
    }

    fn resolve(&mut self, w: &[Ori]) -> Vec<bool> {
        w.iter().map(|o| self.u.value(*o).unwrap_or(U)).collect()
    }
}

struct Builder<'a> {
    c: &'a OrConfig,
    words: Vec<(Vec<bool>, Vec<bool>)>,
    at: usize,
}

impl Builder<'_> {
    fn build(&mut self, e: &Expr) -> Result<OrMorphism> {
        let (src, _) = self.words[self.at].clone();
        self.at += 1;
        let c = self.c;
        Ok(match &e.node {
            Node::Gen(g) => match g {
                Gen::Cross => c.crossing(src[0], src[1]),
                Gen::CapL => c.leftcap(),
                Gen::CapR => c.rightcap(),
                Gen::CupL => c.leftcup(),
                Gen::CupR => c.rightcup(),
                Gen::Cap | Gen::Cup => unreachable!("rejected while typing"),
            },
            Node::Empty | Node::Id(_) => c.identity(&src),
            Node::Tok(a) => c.token(src[0], &c.algebra().parse_elem(a)?),
            Node::Scaled(k, inner) => self.build(inner)?.scale(k),
            Node::Compose(parts) => {
                let mut acc = self.build(&parts[0])?;
                for p in &parts[1..] {
                    let f = self.build(p)?;
                    acc = c.compose(&f, &acc)?;
                }
                acc
            }
            Node::Tensor(parts) => {
                let fs = parts.iter().map(|p| self.build(p)).collect::<Result<Vec<_>>>()?;
                c.tensor_all(&fs)
            }
            Node::Sum(parts) => {
                let mut acc: Option<OrMorphism> = None;
                for (neg, p) in parts {
                    let f = self.build(p)?;
                    let f = if *neg { f.scale(&Scalar::from_int(-1)) } else { f };
                    acc = Some(match acc {
                        None => f,
                        Some(a) => a.add(&f),
                    });
                }
                acc.unwrap()
            }
        })
    }
}

pub fn oriented(c: &OrConfig, e: &Expr) -> Result<OrMorphism> {
    let mut t = Typing { u: Unifier::default(), types: Vec::new() };
    t.infer(e)?;
    let types = std::mem::take(&mut t.types);
    let words = types.iter().map(|(s, o)| (t.resolve(s), t.resolve(o))).collect();
    Builder { c, words, at: 0 }.build(e)
}

// printing -----------------------------------------------------------------

fn pad(left: usize, g: String, right: usize, id: impl Fn(usize) -> String) -> String {
    let mut parts = Vec::new();
    if left > 0 {
        parts.push(id(left));
    }
    parts.push(g);
    if right > 0 {
        parts.push(id(right));
    }
    parts.join(" @ ")
}

fn with_coeff(c: &Scalar, body: String, single: bool) -> String {
    if *c == Scalar::from_int(1) {
        body
    } else if single {
        format!("{c} * {body}")
    } else {
        format!("{c} * ({body})")
    }
}

fn join_terms(terms: Vec<(Scalar, String, bool)>) -> String {
    if terms.is_empty() {
        return "0 * empty".into();
    }
    let mut out = String::new();
    for (k, (c, body, single)) in terms.into_iter().enumerate() {
        let neg = c.is_real() && c.to_string().starts_with('-');
        if k == 0 {
            out.push_str(&with_coeff(&c, body, single));
        } else if neg {
            out.push_str(" - ");
            out.push_str(&with_coeff(&-c, body, single));
        } else {
            out.push_str(" + ");
            out.push_str(&with_coeff(&c, body, single));
        }
    }
    out
}

/// A basis diagram as a composite of layers, and whether the layers
/// compose to minus the diagram.
pub fn unoriented_diagram(c: &UnConfig, d: &RawDiagram) -> (String, bool, bool) {
    let (layers, neg) = c.factor(d);
    if layers.is_empty() {
        return (if d.r == 0 { "empty".into() } else { format!("id({})", d.r) }, neg, true);
    }
    let alg = c.algebra();
    let id = |n: usize| format!("id({n})");
    let body: Vec<String> = layers
        .iter()
        .map(|l| {
            let (i, _) = l.gen.arity();
            let g = match l.gen {
                LayerGen::Cross => "x".into(),
                LayerGen::Cap => "cap".into(),
                LayerGen::Cup => "cup".into(),
                LayerGen::Tok(t) => format!("tok({})", alg.basis_name(t)),
            };
            pad(l.left, g, l.width - l.left - i, id)
        })
        .collect();
    let single = body.len() == 1 && !body[0].contains('@');
    (body.join(" ; "), neg, single)
}

pub fn print_unoriented(c: &UnConfig, f: &UnMorphism) -> String {
    let terms = f
        .terms
        .iter()
        .map(|(d, k)| {
            let (body, neg, single) = unoriented_diagram(c, d);
            (if neg { -k.clone() } else { k.clone() }, body, single)
        })
        .collect();
    if f.terms.is_empty() {
        // zero is written as 0 times some diagram of the right type
        return match c.enumerate_basis(f.r, f.s).first() {
            Some(d) => with_coeff(&Scalar::from_int(0), unoriented_diagram(c, d).0, false),
            None => "0 * empty".into(),
        };
    }
    join_terms(terms)
}

fn word(w: &[bool]) -> String {
    superbrauer::oriented::format_word(w)
}

pub fn oriented_diagram(c: &OrConfig, src: &[bool], tgt: &[bool], d: &RawDiagram) -> (String, bool, bool) {
    let (layers, words, neg) = c.factor(src, tgt, d);
    let id = |w: &[bool]| if w.is_empty() { "empty".to_string() } else { format!("id({})", word(w)) };
    if layers.is_empty() {
        return (id(src), neg, true);
    }
    let alg = c.algebra();
    let mut body: Vec<String> = Vec::new();
    // the source is stated so that crossings and tokens get their orientation
    if !src.is_empty() {
        body.push(id(src));
    }
    for (k, l) in layers.iter().enumerate() {
        let (below, above) = (&words[k], &words[k + 1]);
        let (i, o) = l.gen.arity();
        let g = match l.gen {
            LayerGen::Cross => "x".into(),
            LayerGen::Cap => if below[l.left] { "capR" } else { "capL" }.into(),
            LayerGen::Cup => if above[l.left] { "cupL" } else { "cupR" }.into(),
            LayerGen::Tok(t) => format!("tok({})", alg.basis_name(t)),
        };
        let right = &below[l.left + i..];
        debug_assert_eq!(right, &above[l.left + o..]);
        let mut parts = Vec::new();
        if l.left > 0 {
            parts.push(id(&below[..l.left]));
        }
        parts.push(g);
        if !right.is_empty() {
            parts.push(id(right));
        }
        body.push(parts.join(" @ "));
    }
    let single = body.len() == 1 && !body[0].contains('@');
    (body.join(" ; "), neg, single)
}

pub fn print_oriented(c: &OrConfig, f: &OrMorphism) -> String {
    if f.terms.is_empty() {
        return match c.enumerate_basis(&f.src, &f.tgt).first() {
            Some(d) => with_coeff(&Scalar::from_int(0), oriented_diagram(c, &f.src, &f.tgt, d).0, false),
            None => "0 * empty".into(),
        };
    }
    let terms = f
        .terms
        .iter()
        .map(|(d, k)| {
            let (body, neg, single) = oriented_diagram(c, &f.src, &f.tgt, d);
            (if neg { -k.clone() } else { k.clone() }, body, single)
        })
        .collect();
    join_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use superbrauer::superalg::catalog::by_name;
    use superbrauer::Parity;

    fn un(name: &str, d: i64) -> UnConfig {
        UnConfig::preset(name, Parity::EVEN, Scalar::from_int(d)).unwrap()
    }

    #[test]
    fn crossing_squares_to_identity() {
        let c = un("R", 3);
        assert_eq!(unoriented(&c, &parse("x ; x").unwrap()).unwrap(), c.identity(2));
        assert_eq!(print_unoriented(&c, &unoriented(&c, &parse("x ; x").unwrap()).unwrap()), "id(2)");
    }

    #[test]
    fn tokens_multiply() {
        let c = un("C_real", 1);
        let f = unoriented(&c, &parse("tok(1*i) ; tok(1*i)").unwrap()).unwrap();
        assert_eq!(f, c.identity(1).scale(&Scalar::from_int(-1)));
        assert_eq!(print_unoriented(&c, &f), "-1 * id(1)");
    }

    #[test]
    fn loop_value() {
        let c = un("R", 3);
        let f = unoriented(&c, &parse("cup ; cap").unwrap()).unwrap();
        assert_eq!(print_unoriented(&c, &f), "3 * empty");
    }

    #[test]
    fn typing_errors() {
        let c = un("R", 3);
        assert!(matches!(unoriented(&c, &parse("cap ; x").unwrap()), Err(Error::Interface(_))));
        let o = OrConfig::new(by_name("R").unwrap(), Scalar::from_int(1)).unwrap();
        assert!(matches!(oriented(&o, &parse("id(uu) ; capL").unwrap()), Err(Error::Interface(_))));
        assert!(oriented(&o, &parse("cap").unwrap()).is_err());
        assert!(unoriented(&c, &parse("capL").unwrap()).is_err());
    }

    #[test]
    fn orientation_is_inferred() {
        let o = OrConfig::new(by_name("H").unwrap(), Scalar::from_int(1)).unwrap();
        let f = oriented(&o, &parse("x ; capL").unwrap()).unwrap();
        assert_eq!(f.src, vec![true, false]);
        let g = oriented(&o, &parse("tok(i) @ id(d) ; capR").unwrap()).unwrap();
        assert_eq!(g.src, vec![true, false]);
        let h = oriented(&o, &parse("x").unwrap()).unwrap();
        assert_eq!(h, o.upcross());
    }

    #[test]
    fn printed_bases_round_trip() {
        for name in ["R", "H", "ClC"] {
            let c = un(name, 2);
            for (r, s) in [(2, 2), (3, 1), (0, 4)] {
                for d in c.enumerate_basis(r, s) {
                    let f = c.basis_morphism(&d);
                    let text = print_unoriented(&c, &f);
                    assert_eq!(unoriented(&c, &parse(&text).unwrap()).unwrap(), f, "{text}");
                }
            }
            let o = OrConfig::new(by_name(name).unwrap(), Scalar::from_int(2)).unwrap();
            for (x, y) in [("ud", "ud"), ("uud", "u"), ("", "dudu"), ("du", "")] {
                let (x, y) = (superbrauer::oriented::parse_word(x).unwrap(), superbrauer::oriented::parse_word(y).unwrap());
                for d in o.enumerate_basis(&x, &y) {
                    let f = o.basis_morphism(&x, &y, &d);
                    let text = print_oriented(&o, &f);
                    assert_eq!(oriented(&o, &parse(&text).unwrap()).unwrap(), f, "{text}");
                }
            }
        }
    }
}
