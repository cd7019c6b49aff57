//! Decorated matchings and the composition engine shared by the oriented and
//! unoriented categories.
//!
//! A diagram `r -> s` has endpoints `0..r` along the bottom and `r..r+s`
//! along the top, left to right. Every strand carries one basis token, placed
//! at its *spot*: the bottom endpoint of a through strand, the left endpoint of
//! a cup (both ends on top), the right endpoint of a cap (both ends on bottom).
//!
//! Composition glues two normal forms, slides every token along its component
//! to the spot of the result and multiplies the tokens that meet there. The
//! sign is the Koszul sign of reordering the odd pieces of the diagram (tokens
//! and, when cups and caps are odd, cups and caps) from the stacked reading
//! order to the reading order of the result. Reading order is top to bottom,
//! left to right within a row: top-row tokens, then cups (right to left), then
//! caps (left to right), then bottom-row tokens.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::superalg::{AlgElem, Parity, SuperAlgebra};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Strand {
    /// smaller endpoint
    pub a: usize,
    /// larger endpoint
    pub b: usize,
    /// basis index of the token
    pub token: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StrandKind {
    Through,
    Cap,
    Cup,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RawDiagram {
    pub r: usize,
    pub s: usize,
    /// sorted by `a`
    pub strands: Vec<Strand>,
}

impl RawDiagram {
    pub fn new(r: usize, s: usize, mut strands: Vec<Strand>) -> Self {
        for st in strands.iter_mut() {
            if st.a > st.b {
                std::mem::swap(&mut st.a, &mut st.b);
            }
        }
        strands.sort();
        RawDiagram { r, s, strands }
    }

    pub fn kind(&self, st: &Strand) -> StrandKind {
        if st.b < self.r {
            StrandKind::Cap
        } else if st.a >= self.r {
            StrandKind::Cup
        } else {
            StrandKind::Through
        }
    }

    pub fn spot(&self, st: &Strand) -> usize {
        match self.kind(st) {
            StrandKind::Cap => st.b,
            _ => st.a,
        }
    }

    pub fn is_top(&self, endpoint: usize) -> bool {
        endpoint >= self.r
    }

    /// Check that the strands partition the endpoints.
    pub fn is_matching(&self) -> bool {
        let mut seen = vec![false; self.r + self.s];
        for st in &self.strands {
            if st.a == st.b || st.b >= self.r + self.s || seen[st.a] || seen[st.b] {
                return false;
            }
            seen[st.a] = true;
            seen[st.b] = true;
        }
        seen.into_iter().all(|x| x)
    }

    /// endpoint -> (strand index, which end: 0 for `a`, 1 for `b`)
    fn endpoint_table(&self) -> Vec<(usize, u8)> {
        let mut t = vec![(usize::MAX, 0u8); self.r + self.s];
        for (k, st) in self.strands.iter().enumerate() {
            t[st.a] = (k, 0);
            t[st.b] = (k, 1);
        }
        t
    }

    /// Strand indices of the top-row tokens (cups), of the cups in reading
    /// order, of the caps in reading order, and of the bottom-row tokens.
    fn reading_order(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>) {
        let idx: Vec<usize> = (0..self.strands.len()).collect();
        let by_spot = |f: &dyn Fn(StrandKind) -> bool| {
            let mut v: Vec<usize> = idx.iter().copied().filter(|&k| f(self.kind(&self.strands[k]))).collect();
            v.sort_by_key(|&k| self.spot(&self.strands[k]));
            v
        };
        let top = by_spot(&|k| k == StrandKind::Cup);
        let bottom = by_spot(&|k| k != StrandKind::Cup);
        let mut cups: Vec<usize> = idx.iter().copied().filter(|&k| self.kind(&self.strands[k]) == StrandKind::Cup).collect();
        cups.sort_by_key(|&k| std::cmp::Reverse(self.strands[k].a));
        let mut caps: Vec<usize> = idx.iter().copied().filter(|&k| self.kind(&self.strands[k]) == StrandKind::Cap).collect();
        caps.sort_by_key(|&k| self.strands[k].a);
        (top, cups, caps, bottom)
    }

    /// Add `k` identity strands on the right (`right = true`) or left, carrying token `tok`.
    pub fn pad(&self, k: usize, right: bool, tok: &[usize]) -> RawDiagram {
        let (r, s) = (self.r + k, self.s + k);
        let mut strands = Vec::new();
        let map = |e: usize| -> usize {
            let (top, pos) = if e >= self.r { (true, e - self.r) } else { (false, e) };
            let pos = if right { pos } else { pos + k };
            if top {
                r + pos
            } else {
                pos
            }
        };
        for st in &self.strands {
            strands.push(Strand { a: map(st.a), b: map(st.b), token: st.token });
        }
        for t in 0..k {
            let (bot, top) = if right { (self.r + t, self.s + t) } else { (t, t) };
            strands.push(Strand { a: bot, b: r + top, token: tok[t] });
        }
        RawDiagram::new(r, s, strands)
    }
}

/// Linear combination of diagrams with deterministic ordering.
pub type Terms = BTreeMap<RawDiagram, Scalar>;

pub fn add_term(terms: &mut Terms, d: RawDiagram, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(d) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Outcome of one named relation or identity check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub ok: bool,
}

/// Orientation data for composing oriented diagrams: `true` is up.
pub struct OrientWords<'a> {
    pub bottom: &'a [bool],
    pub mid: &'a [bool],
    pub top: &'a [bool],
}

pub enum Flavor<'a> {
    /// `inv` table on basis vectors; cups and caps have parity `sigma`.
    Unoriented { sigma: Parity, inv: &'a [AlgElem] },
    Oriented(OrientWords<'a>),
}

pub struct Engine<'a> {
    pub alg: &'a SuperAlgebra,
    pub d: &'a Scalar,
    pub flavor: Flavor<'a>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Slot {
    Leg(usize, u8),
    Top(usize),
    Bot(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Item {
    Tok(usize, usize),
    Struct(usize, usize),
}

struct Encounter {
    diag: usize,
    strand: usize,
    turns: usize,
}

enum Ends {
    Through(usize, usize),
    Cap(usize, usize),
    Cup(usize, usize),
    Loop,
}

struct Component {
    ends: Ends,
    /// token items, top to bottom, with number of turns to the spot
    stack: Vec<Encounter>,
    /// orientation of the strand at the spot (oriented flavor): up?
    arrow_up: bool,
}

impl<'a> Engine<'a> {
    fn sigma(&self) -> Parity {
        match &self.flavor {
            Flavor::Unoriented { sigma, .. } => *sigma,
            Flavor::Oriented(_) => Parity::EVEN,
        }
    }

    /// Letter (up?) at endpoint `e` of diagram `which` (0 lower, 1 upper).
    fn letter(&self, which: usize, diags: [&RawDiagram; 2], e: usize) -> bool {
        let Flavor::Oriented(w) = &self.flavor else { return true };
        let d = diags[which];
        match (which, e >= d.r) {
            (0, false) => w.bottom[e],
            (0, true) => w.mid[e - d.r],
            (_, false) => w.mid[e],
            (_, true) => w.top[e - d.r],
        }
    }

    /// `upper ∘ lower` for normal forms with `upper.r == lower.s`.
    pub fn compose(&self, upper: &RawDiagram, lower: &RawDiagram) -> Terms {
        assert_eq!(upper.r, lower.s, "composition interface mismatch");
        let diags = [lower, upper];
        let tables = [lower.endpoint_table(), upper.endpoint_table()];
        let alg = self.alg;
        let sigma = self.sigma();

        // stacked reading order: upper diagram first
        let mut items: Vec<Item> = Vec::new();
        let mut tok_item: [HashMap<usize, usize>; 2] = [HashMap::new(), HashMap::new()];
        let mut struct_item: [HashMap<usize, usize>; 2] = [HashMap::new(), HashMap::new()];
        for which in [1usize, 0] {
            let (top, cups, caps, bottom) = diags[which].reading_order();
            for k in top {
                tok_item[which].insert(k, items.len());
                items.push(Item::Tok(which, k));
            }
            if sigma.is_odd() {
                for k in cups.into_iter().chain(caps) {
                    struct_item[which].insert(k, items.len());
                    items.push(Item::Struct(which, k));
                }
            }
            for k in bottom {
                tok_item[which].insert(k, items.len());
                items.push(Item::Tok(which, k));
            }
        }
        let parity_of = |it: &Item| -> bool {
            match *it {
                Item::Tok(w, k) => alg.parity(diags[w].strands[k].token).is_odd(),
                Item::Struct(..) => sigma.is_odd(),
            }
        };

        let is_terminal = |which: usize, e: usize| -> bool {
            if which == 0 {
                e < lower.r
            } else {
                e >= upper.r
            }
        };
        let across = |which: usize, e: usize| -> (usize, usize) {
            if which == 0 {
                (1, e - lower.r)
            } else {
                (0, lower.r + e)
            }
        };

        let mut visited = [vec![false; lower.strands.len()], vec![false; upper.strands.len()]];
        // Walk from endpoint `e` of diagram `which` into its strand; returns the encounters,
        // and the final terminal (diagram, endpoint), or None for a closed loop.
        let walk = |which: usize, e: usize, visited: &mut [Vec<bool>; 2]| -> (Vec<Encounter>, Option<(usize, usize)>) {
            let mut enc = Vec::new();
            let mut turns = 0usize;
            let (mut w, mut e) = (which, e);
            let start = (which, tables[which][e].0);
            loop {
                let (k, end) = tables[w][e];
                if visited[w][k] && (w, k) == start && !enc.is_empty() {
                    return (enc, None);
                }
                visited[w][k] = true;
                let d = diags[w];
                let st = &d.strands[k];
                let turn = d.kind(st) != StrandKind::Through;
                let other = if end == 0 { st.b } else { st.a };
                if d.spot(st) == e {
                    enc.push(Encounter { diag: w, strand: k, turns });
                    if turn {
                        turns += 1;
                    }
                } else {
                    if turn {
                        turns += 1;
                    }
                    enc.push(Encounter { diag: w, strand: k, turns });
                }
                if is_terminal(w, other) {
                    return (enc, Some((w, other)));
                }
                let (w2, e2) = across(w, other);
                w = w2;
                e = e2;
                if (w, tables[w][e].0) == start {
                    return (enc, None);
                }
            }
        };

        let mut comps: Vec<Component> = Vec::new();
        let top_pos = |w: usize, e: usize| -> usize {
            debug_assert_eq!(w, 1);
            e - upper.r
        };
        for i in 0..lower.r {
            if visited[0][tables[0][i].0] {
                continue;
            }
            let mut v2 = visited.clone();
            let (enc, end) = walk(0, i, &mut v2);
            let (w, e) = end.expect("path from a terminal ends at a terminal");
            if w == 1 {
                visited = v2;
                let mut stack = enc;
                stack.reverse();
                comps.push(Component { ends: Ends::Through(i, top_pos(w, e)), stack, arrow_up: self.letter(0, diags, i) });
            } else {
                // cap component: start from its right end
                let (enc, _) = walk(0, e, &mut visited);
                let mut stack = enc;
                stack.reverse();
                comps.push(Component { ends: Ends::Cap(i, e), stack, arrow_up: self.letter(0, diags, e) });
            }
        }
        for j in 0..upper.s {
            let e = upper.r + j;
            if visited[1][tables[1][e].0] {
                continue;
            }
            let (enc, end) = walk(1, e, &mut visited);
            let (_, e2) = end.expect("path from a terminal ends at a terminal");
            comps.push(Component { ends: Ends::Cup(j, e2 - upper.r), stack: enc, arrow_up: self.letter(1, diags, e) });
        }
        for w in 0..2 {
            for k in 0..diags[w].strands.len() {
                if visited[w][k] {
                    continue;
                }
                let d = diags[w];
                let spot = d.spot(&d.strands[k]);
                let (enc, _) = walk(w, spot, &mut visited);
                let mut stack = enc;
                let going_up = !d.is_top(spot);
                if going_up {
                    stack.reverse();
                }
                comps.push(Component { ends: Ends::Loop, stack, arrow_up: self.letter(w, diags, spot) });
            }
        }

        // Koszul sign of the reordering into the result's reading order
        let mut final_order: Vec<usize> = Vec::with_capacity(items.len());
        let push_stack = |c: &Component, out: &mut Vec<usize>| {
            for en in &c.stack {
                out.push(tok_item[en.diag][&en.strand]);
            }
        };
        let mut top_spots: Vec<(usize, usize)> = Vec::new();
        let mut bot_spots: Vec<(usize, usize)> = Vec::new();
        let mut loops: Vec<usize> = Vec::new();
        for (ci, c) in comps.iter().enumerate() {
            match c.ends {
                Ends::Cup(j, _) => top_spots.push((j, ci)),
                Ends::Through(i, _) => bot_spots.push((i, ci)),
                Ends::Cap(_, i2) => bot_spots.push((i2, ci)),
                Ends::Loop => loops.push(ci),
            }
        }
        top_spots.sort();
        bot_spots.sort();
        for &(_, ci) in &top_spots {
            push_stack(&comps[ci], &mut final_order);
        }
        for (pos, it) in items.iter().enumerate() {
            if matches!(it, Item::Struct(..)) {
                final_order.push(pos);
            }
        }
        for &(_, ci) in &bot_spots {
            push_stack(&comps[ci], &mut final_order);
        }
        for &ci in &loops {
            push_stack(&comps[ci], &mut final_order);
        }
        debug_assert_eq!(final_order.len(), items.len());
        let mut sign = inversion_parity(&final_order, |p| parity_of(&items[p]));

        // token products and loop values
        let mut coeff = Scalar::one();
        let mut strand_tokens: Vec<(usize, usize, AlgElem)> = Vec::new();
        for c in &comps {
            let prod = self.stack_product(c, diags);
            match c.ends {
                Ends::Loop => {
                    coeff = &coeff * &(self.d * &alg.supertrace(&prod));
                    if coeff.is_zero() {
                        return Terms::new();
                    }
                }
                Ends::Through(i, j) => strand_tokens.push((i, lower.r + j, prod)),
                Ends::Cap(i, i2) => strand_tokens.push((i, i2, prod)),
                Ends::Cup(j, j2) => strand_tokens.push((lower.r + j, lower.r + j2, prod)),
            }
        }

        if sigma.is_odd() {
            match self.contract_structure(&items, diags, &tables, lower, upper, &struct_item) {
                Some(s) => sign ^= s,
                None => return Terms::new(),
            }
        }
        coeff.apply_sign(sign);

        // expand token products into basis diagrams
        let mut out = Terms::new();
        let mut partial: Vec<(Vec<Strand>, Scalar)> = vec![(Vec::new(), coeff)];
        for (a, b, prod) in &strand_tokens {
            let mut next = Vec::new();
            for (strands, c) in &partial {
                for (t, x) in prod.terms() {
                    let mut s2 = strands.clone();
                    s2.push(Strand { a: *a, b: *b, token: t });
                    next.push((s2, c * x));
                }
            }
            partial = next;
            if partial.is_empty() {
                return out;
            }
        }
        for (strands, c) in partial {
            add_term(&mut out, RawDiagram::new(lower.r, upper.s, strands), c);
        }
        out
    }

    fn stack_product(&self, c: &Component, diags: [&RawDiagram; 2]) -> AlgElem {
        let alg = self.alg;
        let toks: Vec<(usize, usize)> = c.stack.iter().map(|en| (diags[en.diag].strands[en.strand].token, en.turns)).collect();
        match &self.flavor {
            Flavor::Unoriented { inv, .. } => {
                let mut prod = alg.unit().clone();
                for &(t, turns) in &toks {
                    let f = if turns % 2 == 1 { inv[t].clone() } else { alg.elem(t) };
                    prod = alg.mul(&prod, &f);
                }
                prod
            }
            Flavor::Oriented(_) => {
                let mut prod = alg.unit().clone();
                if c.arrow_up {
                    for &(t, _) in &toks {
                        prod = alg.mul(&prod, &alg.elem(t));
                    }
                } else {
                    let mut odd = 0usize;
                    let mut neg = false;
                    for &(t, _) in &toks {
                        if alg.parity(t).is_odd() {
                            neg ^= odd % 2 == 1;
                            odd += 1;
                        }
                    }
                    for &(t, _) in toks.iter().rev() {
                        prod = alg.mul(&prod, &alg.elem(t));
                    }
                    if neg {
                        prod = -&prod;
                    }
                }
                prod
            }
        }
    }

    /// Contract cap-cup pairs of the stacked diagram for odd cups and caps and
    /// bring the survivors into reading order. Returns the sign, or `None` if
    /// a closed loop appears among them.
    #[allow(clippy::too_many_arguments)]
    fn contract_structure(
        &self,
        items: &[Item],
        diags: [&RawDiagram; 2],
        tables: &[Vec<(usize, u8)>; 2],
        lower: &RawDiagram,
        upper: &RawDiagram,
        struct_item: &[HashMap<usize, usize>; 2],
    ) -> Option<bool> {
        let sigma_odd = self.sigma().is_odd();
        let mut partner: HashMap<Slot, Slot> = HashMap::new();
        // follow from endpoint e of diagram w, outwards, to a leg or a terminal
        let follow = |mut w: usize, mut e: usize| -> Slot {
            loop {
                if w == 0 && e < lower.r {
                    return Slot::Bot(e);
                }
                if w == 1 && e >= upper.r {
                    return Slot::Top(e - upper.r);
                }
                let (w2, e2) = if w == 0 { (1, e - lower.r) } else { (0, lower.r + e) };
                let (k, end) = tables[w2][e2];
                let st = &diags[w2].strands[k];
                if diags[w2].kind(st) != StrandKind::Through {
                    return Slot::Leg(struct_item[w2][&k], end);
                }
                w = w2;
                e = if end == 0 { st.b } else { st.a };
            }
        };
        let mut middle: Vec<usize> = Vec::new();
        let mut is_cap: HashMap<usize, bool> = HashMap::new();
        for (pos, it) in items.iter().enumerate() {
            if let Item::Struct(w, k) = *it {
                let d = diags[w];
                let st = &d.strands[k];
                middle.push(pos);
                is_cap.insert(pos, d.kind(st) == StrandKind::Cap);
                partner.insert(Slot::Leg(pos, 0), follow(w, st.a));
                partner.insert(Slot::Leg(pos, 1), follow(w, st.b));
            }
        }
        let mut sign = false;
        loop {
            let mut best: Option<(usize, usize, u8, u8)> = None;
            for (i, &c) in middle.iter().enumerate() {
                if !is_cap[&c] {
                    continue;
                }
                for x in 0..2u8 {
                    if let Slot::Leg(u, y) = partner[&Slot::Leg(c, x)] {
                        if is_cap[&u] {
                            continue;
                        }
                        let j = middle.iter().position(|&q| q == u).unwrap();
                        if j > i && best.map_or(true, |(bi, bj, _, _)| j - i < bj - bi) {
                            best = Some((i, j, x, y));
                        }
                    }
                }
            }
            let Some((i, j, x, y)) = best else { break };
            let (c, u) = (middle[i], middle[j]);
            // move the cup up to just below the cap
            sign ^= (j - i - 1) % 2 == 1;
            // the cup's shared leg must come first
            sign ^= y == 1 && sigma_odd;
            sign ^= sigma_odd;
            let p1 = partner[&Slot::Leg(c, 1 - x)];
            let p2 = partner[&Slot::Leg(u, 1 - y)];
            if p1 == Slot::Leg(u, 1 - y) {
                return None;
            }
            for (p, q) in [(p1, p2), (p2, p1)] {
                if let Slot::Leg(..) = p {
                    partner.insert(p, q);
                }
            }
            middle.remove(j);
            middle.remove(i);
        }
        // survivors: orient legs left to right and sort cups above caps
        let mut keyed: Vec<(bool, i64)> = Vec::new();
        for &q in &middle {
            let (l0, l1) = (partner[&Slot::Leg(q, 0)], partner[&Slot::Leg(q, 1)]);
            let (e0, e1) = match (l0, l1) {
                (Slot::Top(a), Slot::Top(b)) | (Slot::Bot(a), Slot::Bot(b)) => (a, b),
                _ => unreachable!("uncontracted cap-cup pair"),
            };
            if !is_cap[&q] && e0 > e1 {
                sign ^= sigma_odd;
            }
            let left = e0.min(e1) as i64;
            keyed.push((is_cap[&q], if is_cap[&q] { left } else { -left }));
        }
        let mut perm: Vec<usize> = (0..keyed.len()).collect();
        perm.sort_by_key(|&k| keyed[k]);
        sign ^= inversion_parity(&perm, |_| true);
        Some(sign)
    }
}

/// A generating layer: one generator placed `left` strands from the left edge
/// of a row of `width` strands (the width below the layer).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Layer {
    pub left: usize,
    pub width: usize,
    pub gen: Gen,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Gen {
    Cross,
    Cap,
    Cup,
    /// token with this basis index
    Tok(usize),
}

impl Gen {
    pub fn arity(self) -> (usize, usize) {
        match self {
            Gen::Cross => (2, 2),
            Gen::Cap => (2, 0),
            Gen::Cup => (0, 2),
            Gen::Tok(_) => (1, 1),
        }
    }
}

impl Layer {
    pub fn width_above(&self) -> usize {
        let (i, o) = self.gen.arity();
        self.width - i + o
    }

    /// The layer as a diagram, identity strands carrying token `unit`.
    pub fn diagram(&self, unit: usize) -> RawDiagram {
        let (w, top) = (self.width, self.width_above());
        let (i, o) = self.gen.arity();
        let mut strands = Vec::new();
        for p in 0..self.left {
            strands.push(Strand { a: p, b: w + p, token: unit });
        }
        for p in self.left + i..w {
            strands.push(Strand { a: p, b: w + p - i + o, token: unit });
        }
        let (l, lt) = (self.left, w + self.left);
        match self.gen {
            Gen::Cross => {
                strands.push(Strand { a: l, b: lt + 1, token: unit });
                strands.push(Strand { a: l + 1, b: lt, token: unit });
            }
            Gen::Cap => strands.push(Strand { a: l, b: l + 1, token: unit }),
            Gen::Cup => strands.push(Strand { a: lt, b: lt + 1, token: unit }),
            Gen::Tok(t) => strands.push(Strand { a: l, b: lt, token: t }),
        }
        RawDiagram::new(w, top, strands)
    }
}

/// Factor a normal form into generating layers, bottom to top: bottom-row
/// tokens (rightmost lowest), crossings that carry the caps to the right
/// end, the caps (rightmost first), cups appended on the right (leftmost
/// first), crossings into the target order, top-row tokens. Tokens equal to
/// `unit` are omitted. The composite equals the diagram up to a sign.
pub fn factorize(d: &RawDiagram, unit: Option<usize>) -> Vec<Layer> {
    let mut out = Vec::new();
    let (r, s) = (d.r, d.s);
    let is_unit = |t: usize| unit == Some(t);
    let mut spots: Vec<(usize, usize)> =
        d.strands.iter().filter(|st| d.kind(st) != StrandKind::Cup).map(|st| (d.spot(st), st.token)).collect();
    spots.sort();
    for &(p, t) in spots.iter().rev() {
        if !is_unit(t) {
            out.push(Layer { left: p, width: r, gen: Gen::Tok(t) });
        }
    }
    // sort key of each bottom endpoint
    let mut keys: Vec<(u8, usize, usize)> = vec![(0, 0, 0); r];
    for st in &d.strands {
        match d.kind(st) {
            StrandKind::Through => keys[st.a] = (0, st.b - r, 0),
            StrandKind::Cap => {
                keys[st.a] = (1, st.a, 0);
                keys[st.b] = (1, st.a, 1);
            }
            StrandKind::Cup => {}
        }
    }
    bubble(&mut keys, &mut out);
    let through = keys.iter().filter(|k| k.0 == 0).count();
    let ncaps = (r - through) / 2;
    for k in (0..ncaps).rev() {
        out.push(Layer { left: through + 2 * k, width: through + 2 * k + 2, gen: Gen::Cap });
    }
    let mut top_keys: Vec<(u8, usize, usize)> = keys[..through].iter().map(|k| (0, k.1, 0)).collect();
    let mut cups: Vec<&Strand> = d.strands.iter().filter(|st| d.kind(st) == StrandKind::Cup).collect();
    cups.sort_by_key(|st| st.a);
    for st in &cups {
        let w = top_keys.len();
        out.push(Layer { left: w, width: w, gen: Gen::Cup });
        top_keys.push((0, st.a - r, 0));
        top_keys.push((0, st.b - r, 0));
    }
    bubble(&mut top_keys, &mut out);
    let mut tops: Vec<(usize, usize)> = cups.iter().map(|st| (st.a - r, st.token)).collect();
    tops.sort();
    for &(p, t) in tops.iter().rev() {
        if !is_unit(t) {
            out.push(Layer { left: p, width: s, gen: Gen::Tok(t) });
        }
    }
    out
}

fn bubble<K: Ord>(keys: &mut [K], out: &mut Vec<Layer>) {
    let w = keys.len();
    loop {
        let mut swapped = false;
        for p in 0..w.saturating_sub(1) {
            if keys[p] > keys[p + 1] {
                keys.swap(p, p + 1);
                out.push(Layer { left: p, width: w, gen: Gen::Cross });
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
}

/// Parity of the number of inversions among the elements selected by `odd`.
pub fn inversion_parity(seq: &[usize], odd: impl Fn(usize) -> bool) -> bool {
    let sel: Vec<usize> = seq.iter().copied().filter(|&p| odd(p)).collect();
    let mut inv = false;
    for i in 0..sel.len() {
        for j in i + 1..sel.len() {
            if sel[i] > sel[j] {
                inv = !inv;
            }
        }
    }
    inv
}

/// All perfect matchings of `0..n` as lists of pairs `(a, b)` with `a < b`,
/// in lexicographic order.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(rest: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = rest[0];
        for k in 1..rest.len() {
            let b = rest[k];
            let remaining: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != b).collect();
            cur.push((a, b));
            rec(&remaining, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n % 2 == 0 {
        let pts: Vec<usize> = (0..n).collect();
        rec(&pts, &mut Vec::new(), &mut out);
    }
    out
}

/// Every way to put one basis token on each strand of a matching.
pub fn decorate(r: usize, s: usize, matching: &[(usize, usize)], dim: usize) -> Vec<RawDiagram> {
    let mut out = Vec::new();
    let n = matching.len();
    let total = dim.pow(n as u32);
    for mut code in 0..total {
        let mut strands = Vec::with_capacity(n);
        for &(a, b) in matching {
            strands.push(Strand { a, b, token: code % dim });
            code /= dim;
        }
        out.push(RawDiagram::new(r, s, strands));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matchings_count() {
        assert_eq!(perfect_matchings(4).len(), 3);
        assert_eq!(perfect_matchings(6).len(), 15);
        assert_eq!(perfect_matchings(3).len(), 0);
        assert_eq!(perfect_matchings(0), vec![Vec::<(usize, usize)>::new()]);
    }

    #[test]
    fn kinds_and_spots() {
        let d = RawDiagram::new(2, 2, vec![Strand { a: 1, b: 0, token: 0 }, Strand { a: 2, b: 3, token: 0 }]);
        assert_eq!(d.kind(&d.strands[0]), StrandKind::Cap);
        assert_eq!(d.spot(&d.strands[0]), 1);
        assert_eq!(d.kind(&d.strands[1]), StrandKind::Cup);
        assert_eq!(d.spot(&d.strands[1]), 2);
        assert!(d.is_matching());
    }

    #[test]
    fn inversions() {
        assert!(!inversion_parity(&[0, 1, 2], |_| true));
        assert!(inversion_parity(&[1, 0, 2], |_| true));
        assert!(!inversion_parity(&[1, 0, 2], |p| p != 0));
    }
}
