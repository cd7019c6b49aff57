//! Defining and derived relations of the oriented category, checked by
//! normalizing both sides.

use super::{OrConfig, OrMorphism};
use crate::diagram::RelationCheck;
use crate::scalar::Scalar;

const U: bool = true;
const D: bool = false;

struct Ctx<'a> {
    c: &'a OrConfig,
}

impl Ctx<'_> {
    fn o(&self, f: &OrMorphism, g: &OrMorphism) -> OrMorphism {
        self.c.compose(f, g).expect("relation typing")
    }
    fn chain(&self, fs: &[OrMorphism]) -> OrMorphism {
        // fs listed bottom to top
        let mut acc = fs[0].clone();
        for f in &fs[1..] {
            acc = self.o(f, &acc);
        }
        acc
    }
    fn t(&self, fs: &[OrMorphism]) -> OrMorphism {
        self.c.tensor_all(fs)
    }
    fn id(&self, w: &[bool]) -> OrMorphism {
        self.c.identity(w)
    }
    fn tok(&self, up: bool, t: usize) -> OrMorphism {
        self.c.basis_token(up, t)
    }
    /// Sideways crossing `up down -> down up`.
    fn rightcross(&self) -> OrMorphism {
        let c = self.c;
        self.chain(&[
            self.t(&[c.rightcup(), self.id(&[U, D])]),
            self.t(&[self.id(&[D]), c.upcross(), self.id(&[D])]),
            self.t(&[self.id(&[D, U]), c.rightcap()]),
        ])
    }
    /// Sideways crossing `down up -> up down`.
    fn leftcross(&self) -> OrMorphism {
        let c = self.c;
        self.chain(&[
            self.t(&[self.id(&[D, U]), c.leftcup()]),
            self.t(&[self.id(&[D]), c.upcross(), self.id(&[D])]),
            self.t(&[c.leftcap(), self.id(&[U, D])]),
        ])
    }
    /// Down token via the left cup and cap.
    fn downtok_left(&self, t: usize) -> OrMorphism {
        let c = self.c;
        self.chain(&[
            self.t(&[self.id(&[D]), c.leftcup()]),
            self.t(&[self.id(&[D]), self.tok(U, t), self.id(&[D])]),
            self.t(&[c.leftcap(), self.id(&[D])]),
        ])
    }
    /// Down token via the right cup and cap.
    fn downtok_right(&self, t: usize) -> OrMorphism {
        let c = self.c;
        self.chain(&[
            self.t(&[c.rightcup(), self.id(&[D])]),
            self.t(&[self.id(&[D]), self.tok(U, t), self.id(&[D])]),
            self.t(&[self.id(&[D]), c.rightcap()]),
        ])
    }
    fn downcross(&self) -> OrMorphism {
        // rotate the up crossing by a full turn using right cups and caps
        let c = self.c;
        self.chain(&[
            self.t(&[c.rightcup(), self.id(&[D, D])]),
            self.t(&[self.id(&[D]), c.rightcup(), self.id(&[U, D, D])]),
            self.t(&[self.id(&[D, D]), c.upcross(), self.id(&[D, D])]),
            self.t(&[self.id(&[D, D, U]), c.rightcap(), self.id(&[D])]),
            self.t(&[self.id(&[D, D]), c.rightcap()]),
        ])
    }
}

/// Check every relation for all basis tokens (and pairs of basis tokens).
pub fn check(c: &OrConfig) -> Vec<RelationCheck> {
    let x = Ctx { c };
    let alg = c.algebra();
    let n = alg.dim();
    let mut out: Vec<RelationCheck> = Vec::new();
    let mut rel = |name: &str, ok: bool| match out.iter_mut().find(|r| r.name == name) {
        Some(r) => r.ok &= ok,
        None => out.push(RelationCheck { name: name.to_string(), ok }),
    };
    let upx = c.upcross();
    let sign = |f: &OrMorphism, odd: bool| if odd { f.scale(&Scalar::from_int(-1)) } else { f.clone() };

    // toklin
    rel("toklin: token(1) = id", c.token(U, alg.unit()) == x.id(&[U]));
    for a in 0..n {
        for b in 0..n {
            let combo = &alg.elem(a).scale(&Scalar::from_int(2)) + &alg.elem(b).scale(&Scalar::from_frac(-1, 3));
            let lin = x.tok(U, a).scale(&Scalar::from_int(2)).add(&x.tok(U, b).scale(&Scalar::from_frac(-1, 3)));
            rel("toklin: linearity", c.token(U, &combo) == lin);
            rel("toklin: token(a) token(b) = token(ab)", x.o(&x.tok(U, a), &x.tok(U, b)) == c.token(U, &alg.mul(&alg.elem(a), &alg.elem(b))));
            let odd = alg.parity(a).is_odd() && alg.parity(b).is_odd();
            let ba = alg.mul(&alg.elem(b), &alg.elem(a));
            rel("down tokens: a above b = (-1)^ab ba", x.o(&x.tok(D, a), &x.tok(D, b)) == sign(&c.token(D, &ba), odd));
            let f1 = x.o(&x.t(&[x.tok(U, a), x.id(&[U])]), &x.t(&[x.id(&[U]), x.tok(U, b)]));
            let f2 = x.o(&x.t(&[x.id(&[U]), x.tok(U, b)]), &x.t(&[x.tok(U, a), x.id(&[U])]));
            rel("super interchange", f1 == sign(&f2, odd));
            rel("tensor of tokens", x.t(&[x.tok(U, a), x.tok(D, b)]) == x.o(&x.t(&[x.tok(U, a), x.id(&[D])]), &x.t(&[x.id(&[U]), x.tok(D, b)])));
        }
    }

    // wreath
    rel("wreath: upcross^2 = id", x.o(&upx, &upx) == x.id(&[U, U]));
    let l = x.t(&[upx.clone(), x.id(&[U])]);
    let r = x.t(&[x.id(&[U]), upx.clone()]);
    rel("wreath: braid", x.chain(&[l.clone(), r.clone(), l.clone()]) == x.chain(&[r.clone(), l.clone(), r.clone()]));
    for a in 0..n {
        rel(
            "wreath: token slides through upcross",
            x.o(&upx, &x.t(&[x.tok(U, a), x.id(&[U])])) == x.o(&x.t(&[x.id(&[U]), x.tok(U, a)]), &upx),
        );
    }

    // inversion and curls
    let rc = x.rightcross();
    let lc = x.leftcross();
    rel("inversion: sideways crossings are mutually inverse", x.o(&lc, &rc) == x.id(&[U, D]) && x.o(&rc, &lc) == x.id(&[D, U]));
    let curl = x.chain(&[x.t(&[x.id(&[U]), c.leftcup()]), x.t(&[upx.clone(), x.id(&[D])]), x.t(&[x.id(&[U]), c.rightcap()])]);
    rel("inversion: curl = id", curl == x.id(&[U]));
    let bub = x.o(&c.leftcap(), &c.rightcup());
    rel("bubble: counterclockwise = d str(1)", bub.as_scalar() == Some(c.d() * &alg.supertrace(alg.unit())));

    // adjunctions
    rel(
        "leftadj: (leftcap 1)(1 leftcup) = 1_down",
        x.chain(&[x.t(&[x.id(&[D]), c.leftcup()]), x.t(&[c.leftcap(), x.id(&[D])])]) == x.id(&[D]),
    );
    rel(
        "leftadj: (1 leftcap)(leftcup 1) = 1_up",
        x.chain(&[x.t(&[c.leftcup(), x.id(&[U])]), x.t(&[x.id(&[U]), c.leftcap()])]) == x.id(&[U]),
    );
    rel(
        "rightadj: (rightcap 1)(1 rightcup) = 1_up",
        x.chain(&[x.t(&[x.id(&[U]), c.rightcup()]), x.t(&[c.rightcap(), x.id(&[U])])]) == x.id(&[U]),
    );
    rel(
        "rightadj: (1 rightcap)(rightcup 1) = 1_down",
        x.chain(&[x.t(&[c.rightcup(), x.id(&[D])]), x.t(&[x.id(&[D]), c.rightcap()])]) == x.id(&[D]),
    );

    // windmill and stake: definitions of the other crossings and of down tokens
    rel("windmill: rightward crossing is the plain crossing", rc == c.crossing(U, D));
    rel("windmill: leftward crossing is the plain crossing", lc == c.crossing(D, U));
    rel("windmill: downcross", x.downcross() == c.crossing(D, D));
    for a in 0..n {
        rel("stake: down token via left cup/cap", x.downtok_left(a) == x.tok(D, a));
        rel("stake: down token via right cup/cap", x.downtok_right(a) == x.tok(D, a));
    }

    // ruby: tokens slide through cups, caps and every crossing
    for a in 0..n {
        let (tu, td) = (x.tok(U, a), x.tok(D, a));
        rel("ruby: leftcap", x.o(&c.leftcap(), &x.t(&[td.clone(), x.id(&[U])])) == x.o(&c.leftcap(), &x.t(&[x.id(&[D]), tu.clone()])));
        rel("ruby: rightcap", x.o(&c.rightcap(), &x.t(&[tu.clone(), x.id(&[D])])) == x.o(&c.rightcap(), &x.t(&[x.id(&[U]), td.clone()])));
        rel("ruby: leftcup", x.o(&x.t(&[tu.clone(), x.id(&[D])]), &c.leftcup()) == x.o(&x.t(&[x.id(&[U]), td.clone()]), &c.leftcup()));
        rel("ruby: rightcup", x.o(&x.t(&[td.clone(), x.id(&[U])]), &c.rightcup()) == x.o(&x.t(&[x.id(&[D]), tu.clone()]), &c.rightcup()));
        for (p, q) in [(U, D), (D, U), (D, D)] {
            let cr = c.crossing(p, q);
            let tp = x.tok(p, a);
            rel("ruby: tokens slide through crossings", x.o(&cr, &x.t(&[tp.clone(), x.id(&[q])])) == x.o(&x.t(&[x.id(&[q]), tp]), &cr));
        }
        let bubble = x.chain(&[c.rightcup(), x.t(&[x.id(&[D]), tu.clone()]), c.leftcap()]);
        rel("bubble: counterclockwise token = d str(a)", bubble.as_scalar() == Some(c.d() * &alg.supertrace(&alg.elem(a))));
        let cw = x.chain(&[c.leftcup(), x.t(&[tu.clone(), x.id(&[D])]), c.rightcap()]);
        rel("bubble: clockwise token = d str(a)", cw.as_scalar() == Some(c.d() * &alg.supertrace(&alg.elem(a))));
    }

    // flippy: the right cup and cap through a sideways crossing
    rel("flippy: rightcup = X leftcup", x.o(&c.crossing(U, D), &c.leftcup()) == c.rightcup());
    rel("flippy: leftcup = X rightcup", x.o(&c.crossing(D, U), &c.rightcup()) == c.leftcup());
    rel("flippy: rightcap = leftcap X", x.o(&c.leftcap(), &c.crossing(U, D)) == c.rightcap());
    rel("flippy: leftcap = rightcap X", x.o(&c.rightcap(), &c.crossing(D, U)) == c.leftcap());

    // parity
    for a in 0..n {
        for b in 0..n {
            let f = x.t(&[x.tok(U, a), x.tok(D, b)]);
            let expect = alg.parity(a) + alg.parity(b);
            rel("parity additivity", f.is_zero() || c.parity(&f) == Some(expect));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::catalog::{by_name, truncated_poly, REAL_DIVISION};

    #[test]
    fn all_relations_hold() {
        for name in REAL_DIVISION {
            let c = OrConfig::new(by_name(name).unwrap(), Scalar::from_int(3)).unwrap();
            for r in check(&c) {
                assert!(r.ok, "{name}: {}", r.name);
            }
        }
        let c = OrConfig::new(truncated_poly(3).unwrap(), Scalar::from_int(2)).unwrap();
        for r in check(&c) {
            assert!(r.ok, "Kx3: {}", r.name);
        }
    }
}
