use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::Parity;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Ground field of an algebra. Both use [`Scalar`]; real algebras only ever
/// see real coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub enum Field {
    Real,
    Complex,
}

/// Coefficient vector over the basis of some [`SuperAlgebra`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgElem {
    coeffs: Vec<Scalar>,
}

impl AlgElem {
    pub fn zero(dim: usize) -> Self {
        AlgElem { coeffs: vec![Scalar::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = AlgElem::zero(dim);
        e.coeffs[i] = Scalar::one();
        e
    }

    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        AlgElem { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, i: usize, c: Scalar) {
        self.coeffs[i] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &Scalar) -> AlgElem {
        AlgElem { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add_scaled(&mut self, c: &Scalar, o: &AlgElem) {
        if c.is_zero() {
            return;
        }
        for (x, y) in self.coeffs.iter_mut().zip(&o.coeffs) {
            if !y.is_zero() {
                *x += &(c * y);
            }
        }
    }
}

impl Add<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn add(self, o: &AlgElem) -> AlgElem {
        AlgElem { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&AlgElem> for &AlgElem {
    type Output = AlgElem;
    fn sub(self, o: &AlgElem) -> AlgElem {
        AlgElem { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl AddAssign<&AlgElem> for AlgElem {
    fn add_assign(&mut self, o: &AlgElem) {
        for (x, y) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *x += y;
        }
    }
}

impl SubAssign<&AlgElem> for AlgElem {
    fn sub_assign(&mut self, o: &AlgElem) {
        for (x, y) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *x -= y;
        }
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }
}

/// A superalgebra with a homogeneous basis, structure constants, a trace
/// form `tau` making it Frobenius, and optionally an anti-involution `star`.
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    name: String,
    field: Field,
    names: Vec<String>,
    parities: Vec<Parity>,
    table: Vec<AlgElem>,
    unit: AlgElem,
    tau: Vec<Scalar>,
    star: Option<Vec<AlgElem>>,
    dual: Vec<AlgElem>,
    nakayama: Vec<AlgElem>,
}

/// Raw data for [`SuperAlgebra::new`]. `table[i * dim + j]` is `b_i b_j`.
pub struct AlgebraData {
    pub name: String,
    pub field: Field,
    pub names: Vec<String>,
    pub parities: Vec<Parity>,
    pub table: Vec<AlgElem>,
    pub unit: AlgElem,
    pub tau: Vec<Scalar>,
    pub star: Option<Vec<AlgElem>>,
}

impl SuperAlgebra {
    /// Build an algebra and derive its dual basis and Nakayama automorphism.
    /// Fails when the trace pairing is degenerate.
    pub fn new(d: AlgebraData) -> Result<Self> {
        let dim = d.names.len();
        if d.parities.len() != dim || d.table.len() != dim * dim || d.tau.len() != dim {
            return Err(Error::Algebra(format!("{}: inconsistent sizes", d.name)));
        }
        let mut alg = SuperAlgebra {
            name: d.name,
            field: d.field,
            names: d.names,
            parities: d.parities,
            table: d.table,
            unit: d.unit,
            tau: d.tau,
            star: d.star,
            dual: Vec::new(),
            nakayama: Vec::new(),
        };
        // Gram matrix P[b][c] = tau(b c)
        let gram = Matrix::from_fn(dim, dim, |b, c| alg.tau(&alg.table[b * dim + c]));
        let inv = gram
            .inverse()
            .map_err(|_| Error::Algebra(format!("{}: trace form is degenerate", alg.name)))?;
        // b^v = sum_u X[b][u] u with X = P^{-1}: tau(b^v c) = delta
        alg.dual = (0..dim).map(|b| AlgElem::from_coeffs(inv.row(b).to_vec())).collect();
        // tau(a b) = (-1)^{|a||b|} tau(b nu(a)); solve P y = rhs for y = nu(a)
        let mut nak = Vec::with_capacity(dim);
        for a in 0..dim {
            let rhs: Vec<Scalar> = (0..dim)
                .map(|b| {
                    let mut v = alg.tau(&alg.table[a * dim + b]);
                    v.apply_sign((alg.parities[a] * alg.parities[b]).is_odd());
                    v
                })
                .collect();
            let y: Vec<Scalar> = (0..dim)
                .map(|c| (0..dim).fold(Scalar::zero(), |acc, b| acc + inv.get(c, b) * &rhs[b]))
                .collect();
            nak.push(AlgElem::from_coeffs(y));
        }
        alg.nakayama = nak;
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn has_odd_part(&self) -> bool {
        self.parities.iter().any(|p| p.is_odd())
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem::zero(self.dim())
    }

    pub fn elem(&self, i: usize) -> AlgElem {
        AlgElem::basis(self.dim(), i)
    }

    pub fn unit(&self) -> &AlgElem {
        &self.unit
    }

    /// Index of the unit if the unit is itself a basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        let mut t = self.unit.terms();
        match (t.next(), t.next()) {
            (Some((i, c)), None) if c.is_one() => Some(i),
            _ => None,
        }
    }

    pub fn scalar(&self, c: &Scalar) -> AlgElem {
        self.unit.scale(c)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &AlgElem {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut out = self.zero();
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                out.add_scaled(&(x * y), self.mul_basis(i, j));
            }
        }
        out
    }

    /// Parity of a homogeneous element; `None` for zero or inhomogeneous elements.
    pub fn elem_parity(&self, a: &AlgElem) -> Option<Parity> {
        let mut p = None;
        for (i, _) in a.terms() {
            match p {
                None => p = Some(self.parities[i]),
                Some(q) if q != self.parities[i] => return None,
                _ => {}
            }
        }
        p
    }

    pub fn homogeneous_part(&self, a: &AlgElem, p: Parity) -> AlgElem {
        let mut out = a.clone();
        for i in 0..self.dim() {
            if self.parities[i] != p {
                out.set_coeff(i, Scalar::zero());
            }
        }
        out
    }

    pub fn tau(&self, a: &AlgElem) -> Scalar {
        a.terms().fold(Scalar::zero(), |acc, (i, c)| acc + c * &self.tau[i])
    }

    pub fn tau_values(&self) -> &[Scalar] {
        &self.tau
    }

    pub fn dual_basis(&self) -> &[AlgElem] {
        &self.dual
    }

    fn apply_table(&self, table: &[AlgElem], a: &AlgElem) -> AlgElem {
        let mut out = self.zero();
        for (i, c) in a.terms() {
            out.add_scaled(c, &table[i]);
        }
        out
    }

    /// Nakayama automorphism.
    pub fn nakayama(&self, a: &AlgElem) -> AlgElem {
        self.apply_table(&self.nakayama, a)
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    /// The anti-involution, extended additively. Over the real field this is
    /// real-linear, which is all that is needed.
    pub fn star(&self, a: &AlgElem) -> Option<AlgElem> {
        self.star.as_ref().map(|t| self.apply_table(t, a))
    }

    /// `a^inv = nu(a)^star`.
    pub fn inv(&self, a: &AlgElem) -> Option<AlgElem> {
        self.star(&self.nakayama(a))
    }

    /// Supertrace of right multiplication by `a` on the regular module.
    pub fn supertrace(&self, a: &AlgElem) -> Scalar {
        let mut s = Scalar::zero();
        for b in 0..self.dim() {
            let mut c = self.mul(&self.elem(b), a).coeff(b).clone();
            c.apply_sign(self.parities[b].is_odd());
            s += c;
        }
        s
    }

    /// `sum_b (-1)^{|b|} tau(b^v b a)`, the Frobenius-form expression of the supertrace.
    pub fn supertrace_via_dual(&self, a: &AlgElem) -> Scalar {
        let mut s = Scalar::zero();
        for b in 0..self.dim() {
            let ba = self.mul(&self.elem(b), a);
            let mut c = self.tau(&self.mul(&self.dual[b], &ba));
            c.apply_sign(self.parities[b].is_odd());
            s += c;
        }
        s
    }

    pub fn supertrace_is_zero(&self) -> bool {
        (0..self.dim()).all(|b| self.supertrace(&self.elem(b)).is_zero())
    }

    /// `A^op` with product `a . b = (-1)^{|a||b|} b a`; same basis, trace and star.
    pub fn opposite(&self) -> SuperAlgebra {
        let dim = self.dim();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut e = self.mul_basis(j, i).clone();
                if (self.parities[i] * self.parities[j]).is_odd() {
                    e = -&e;
                }
                table.push(e);
            }
        }
        SuperAlgebra::new(AlgebraData {
            name: format!("{}^op", self.name),
            field: self.field,
            names: self.names.clone(),
            parities: self.parities.clone(),
            table,
            unit: self.unit.clone(),
            tau: self.tau.clone(),
            star: self.star.clone(),
        })
        .expect("opposite of a Frobenius algebra is Frobenius")
    }

    /// Scalar extension to the complex field; the star is dropped.
    pub fn complexify(&self) -> SuperAlgebra {
        SuperAlgebra::new(AlgebraData {
            name: format!("{}_C", self.name),
            field: Field::Complex,
            names: self.names.clone(),
            parities: self.parities.clone(),
            table: self.table.clone(),
            unit: self.unit.clone(),
            tau: self.tau.clone(),
            star: None,
        })
        .expect("complexification preserves nondegeneracy")
    }

    /// Check associativity, unit, grading of products, evenness of `tau`, and
    /// that `star` is a degree-preserving anti-involution.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let fail = |m: String| Err(Error::Algebra(format!("{}: {m}", self.name)));
        for i in 0..dim {
            if self.mul(&self.unit, &self.elem(i)) != self.elem(i) || self.mul(&self.elem(i), &self.unit) != self.elem(i) {
                return fail(format!("unit fails on {}", self.names[i]));
            }
            if self.parities[i].is_odd() && !self.tau[i].is_zero() {
                return fail("trace form is not even".into());
            }
            for j in 0..dim {
                let p = self.mul_basis(i, j);
                if !p.is_zero() && self.elem_parity(p) != Some(self.parities[i] + self.parities[j]) {
                    return fail(format!("product {} {} is not homogeneous of the right degree", self.names[i], self.names[j]));
                }
                for k in 0..dim {
                    let l = self.mul(p, &self.elem(k));
                    let r = self.mul(&self.elem(i), self.mul_basis(j, k));
                    if l != r {
                        return fail(format!("associativity fails on ({},{},{})", self.names[i], self.names[j], self.names[k]));
                    }
                }
            }
        }
        if let Some(_) = &self.star {
            for i in 0..dim {
                let si = self.star(&self.elem(i)).unwrap();
                if self.elem_parity(&si) != Some(self.parities[i]) || self.star(&si).unwrap() != self.elem(i) {
                    return fail(format!("star is not a degree-preserving involution on {}", self.names[i]));
                }
                for j in 0..dim {
                    let lhs = self.star(self.mul_basis(i, j)).unwrap();
                    let mut rhs = self.mul(&self.star(&self.elem(j)).unwrap(), &si);
                    if (self.parities[i] * self.parities[j]).is_odd() {
                        rhs = -&rhs;
                    }
                    if lhs != rhs {
                        return fail(format!("star is not an anti-automorphism on ({},{})", self.names[i], self.names[j]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parse `1 + 2*i - 1/3*eps`. A bare number is a multiple of the unit; a
    /// coefficient may be a parenthesised Gaussian literal such as `(1+2 i)*e`.
    pub fn parse_elem(&self, text: &str) -> Result<AlgElem> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty algebra element".into() });
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        for ch in s.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 => {
                    if cur.is_empty() {
                        neg ^= ch == '-';
                        continue;
                    }
                    if !cur.ends_with('*') {
                        terms.push((neg, std::mem::take(&mut cur)));
                        neg = ch == '-';
                        continue;
                    }
                }
                _ => {}
            }
            cur.push(ch);
        }
        terms.push((neg, cur));
        let mut out = self.zero();
        for (neg, t) in terms {
            if t.is_empty() {
                return Err(Error::Parse { pos: 0, msg: format!("dangling sign in `{text}`") });
            }
            let (coef, elem) = match t.split_once('*') {
                Some((c, name)) => {
                    let c = c.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(c);
                    let c: Scalar = c.parse()?;
                    let i = self
                        .basis_index(name)
                        .ok_or_else(|| Error::Unknown(format!("basis element `{name}` of {}", self.name)))?;
                    (c, self.elem(i))
                }
                None => match self.basis_index(&t) {
                    Some(i) => (Scalar::one(), self.elem(i)),
                    None => {
                        let c: Scalar = t.parse().map_err(|_| Error::Unknown(format!("basis element `{t}` of {}", self.name)))?;
                        (c, self.unit.clone())
                    }
                },
            };
            let mut c = coef;
            c.apply_sign(neg);
            out.add_scaled(&c, &elem);
        }
        Ok(out)
    }

    pub fn format_elem(&self, a: &AlgElem) -> String {
        ElemDisplay(self, a).to_string()
    }
}

struct ElemDisplay<'a>(&'a SuperAlgebra, &'a AlgElem);

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.1.terms() {
            let name = self.0.basis_name(i);
            let (neg, mag) = if c.is_real() && c.re() < &num_rational::BigRational::zero() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "{name}")?;
            } else if mag.is_real() {
                write!(f, "{mag}*{name}")?;
            } else {
                write!(f, "({mag})*{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
