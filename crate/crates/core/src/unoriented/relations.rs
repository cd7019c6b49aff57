//! Defining and derived relations of the unoriented category.

use super::{UnConfig, UnMorphism};
use crate::diagram::RelationCheck;
use crate::scalar::Scalar;

struct Ctx<'a> {
    c: &'a UnConfig,
}

impl Ctx<'_> {
    fn o(&self, f: &UnMorphism, g: &UnMorphism) -> UnMorphism {
        self.c.compose(f, g).expect("relation typing")
    }
    fn chain(&self, fs: &[UnMorphism]) -> UnMorphism {
        let mut acc = fs[0].clone();
        for f in &fs[1..] {
            acc = self.o(f, &acc);
        }
        acc
    }
    fn t(&self, fs: &[UnMorphism]) -> UnMorphism {
        self.c.tensor_all(fs)
    }
    fn id(&self, n: usize) -> UnMorphism {
        self.c.identity(n)
    }
    fn bubble(&self, a: &crate::superalg::AlgElem) -> UnMorphism {
        let c = self.c;
        self.chain(&[c.cup(), self.t(&[c.token(a), self.id(1)]), c.cap()])
    }
}

pub fn check(c: &UnConfig) -> Vec<RelationCheck> {
    let x = Ctx { c };
    let alg = c.algebra();
    let n = alg.dim();
    let sig = c.sigma().is_odd();
    let mut out: Vec<RelationCheck> = Vec::new();
    let mut rel = |name: &str, ok: bool| match out.iter_mut().find(|r| r.name == name) {
        Some(r) => r.ok &= ok,
        None => out.push(RelationCheck { name: name.to_string(), ok }),
    };
    let sign = |f: &UnMorphism, odd: bool| if odd { f.neg() } else { f.clone() };
    let (cross, cap, cup) = (c.cross(), c.cap(), c.cup());

    // brauer
    rel("brauer: X^2 = id", x.o(&cross, &cross) == x.id(2));
    let l = x.t(&[cross.clone(), x.id(1)]);
    let r = x.t(&[x.id(1), cross.clone()]);
    rel("brauer: braid", x.chain(&[l.clone(), r.clone(), l.clone()]) == x.chain(&[r.clone(), l.clone(), r.clone()]));
    rel("brauer: right zigzag = id", x.o(&x.t(&[x.id(1), cap.clone()]), &x.t(&[cup.clone(), x.id(1)])) == x.id(1));
    rel("brauer: left zigzag = (-1)^sigma id", x.o(&x.t(&[cap.clone(), x.id(1)]), &x.t(&[x.id(1), cup.clone()])) == sign(&x.id(1), sig));
    rel("brauer: cap X = cap", x.o(&cap, &cross) == cap);
    rel(
        "brauer: pitchfork",
        x.o(&x.t(&[x.id(1), cap.clone()]), &x.t(&[cross.clone(), x.id(1)])) == x.o(&x.t(&[cap.clone(), x.id(1)]), &x.t(&[x.id(1), cross.clone()])),
    );

    // mirror (derived)
    rel("mirror: X cup = (-1)^sigma cup", x.o(&cross, &cup) == sign(&cup, sig));
    rel(
        "mirror: pitchfork with cup",
        x.o(&x.t(&[cross.clone(), x.id(1)]), &x.t(&[x.id(1), cup.clone()])) == x.o(&x.t(&[x.id(1), cross.clone()]), &x.t(&[cup.clone(), x.id(1)])),
    );

    // tokrel and token relations of mirror
    rel("tokrel: token(1) = id", c.token(alg.unit()) == x.id(1));
    for a in 0..n {
        let ta = c.basis_token(a);
        let ai = c.inv(&alg.elem(a));
        let tai = c.token(&ai);
        rel(
            "tokrel: token slides through X",
            x.o(&cross, &x.t(&[ta.clone(), x.id(1)])) == x.o(&x.t(&[x.id(1), ta.clone()]), &cross),
        );
        rel("mirror: token slides back through X", x.o(&x.t(&[ta.clone(), x.id(1)]), &cross) == x.o(&cross, &x.t(&[x.id(1), ta.clone()])));
        rel("tokrel: cap(a 1) = cap(1 a^inv)", x.o(&cap, &x.t(&[ta.clone(), x.id(1)])) == x.o(&cap, &x.t(&[x.id(1), tai.clone()])));
        rel("mirror: (1 a) cup = (a^inv 1) cup", x.o(&x.t(&[x.id(1), ta.clone()]), &cup) == x.o(&x.t(&[tai.clone(), x.id(1)]), &cup));
        let bub = x.bubble(&alg.elem(a));
        rel("burst: bubble(a) = d str(a)", bub.as_scalar() == Some(c.d() * &alg.supertrace(&alg.elem(a))));
        rel("Oregon: bubble(a) = (-1)^sigma bubble(a^inv)", bub == sign(&x.bubble(&ai), sig));
        rel("xi: inv is an involution", c.inv(&ai) == alg.elem(a));
        for b in 0..n {
            let tb = c.basis_token(b);
            let (ea, eb) = (alg.elem(a), alg.elem(b));
            let odd = alg.parity(a).is_odd() && alg.parity(b).is_odd();
            let combo = &ea.scale(&Scalar::from_int(3)) + &eb.scale(&Scalar::from_frac(1, 2));
            rel("tokrel: linearity", c.token(&combo) == ta.scale(&Scalar::from_int(3)).add(&tb.scale(&Scalar::from_frac(1, 2))));
            rel("tokrel: token(a) token(b) = token(ab)", x.o(&ta, &tb) == c.token(&alg.mul(&ea, &eb)));
            rel(
                "Eugene: bubble(ab) = (-1)^ab bubble(ba)",
                x.bubble(&alg.mul(&ea, &eb)) == sign(&x.bubble(&alg.mul(&eb, &ea)), odd),
            );
            let f1 = x.o(&x.t(&[ta.clone(), x.id(1)]), &x.t(&[x.id(1), tb.clone()]));
            let f2 = x.o(&x.t(&[x.id(1), tb.clone()]), &x.t(&[ta.clone(), x.id(1)]));
            rel("super interchange", f1 == sign(&f2, odd));
        }
        // odd cups and caps interchange with odd tokens
        let f1 = x.o(&x.t(&[cap.clone(), x.id(1)]), &x.t(&[x.id(2), ta.clone()]));
        let f2 = x.o(&ta, &x.t(&[cap.clone(), x.id(1)]));
        rel("super interchange with cap", f1 == sign(&f2, sig && alg.parity(a).is_odd()));
        let p = c.parity(&x.t(&[cap.clone(), ta.clone()]));
        rel("parity additivity", p == Some(c.sigma() + alg.parity(a)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::catalog::INVOLUTIVE_PRESETS;
    use crate::superalg::Parity;

    #[test]
    fn all_presets_both_sigmas() {
        for name in INVOLUTIVE_PRESETS {
            for sigma in [Parity::EVEN, Parity::ODD] {
                let d = if sigma.is_odd() { 0 } else { 3 };
                let c = UnConfig::preset(name, sigma, Scalar::from_int(d)).unwrap();
                for r in check(&c) {
                    assert!(r.ok, "{name} sigma={sigma}: {}", r.name);
                }
            }
        }
    }
}
