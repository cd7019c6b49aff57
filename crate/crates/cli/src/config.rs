//! Run configuration: a `key = value` file, then command-line overrides.
//!
//! ```text
//! # comments start with '#'
//! category = unoriented      # or oriented
//! algebra = H
//! involution = star          # star | id (selects C_real or C_real_id)
//! field = rational           # rational | gaussian
//! sigma = 0
//! d = 3
//! form = osp(2,1|0)
//! glmn = 2 1
//! ```

use superbrauer::formslie::FormSpec;
use superbrauer::oriented::OrConfig;
use superbrauer::superalg::catalog::by_name;
use superbrauer::unoriented::UnConfig;
use superbrauer::{Error, Field, Parity, Result, Scalar, SuperAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Unoriented,
    Oriented,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub category: Option<Category>,
    pub algebra: Option<String>,
    pub involution: Option<String>,
    pub field: Option<String>,
    pub sigma: Option<u8>,
    pub d: Option<Scalar>,
    pub form: Option<String>,
    pub glmn: Option<(usize, usize)>,
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Config(format!("line {line}: {}", msg.into()))
}

pub fn parse_category(v: &str) -> Result<Category> {
    match v {
        "unoriented" => Ok(Category::Unoriented),
        "oriented" => Ok(Category::Oriented),
        _ => Err(Error::Config(format!("category must be `oriented` or `unoriented`, not `{v}`"))),
    }
}

pub fn parse_sigma(v: &str) -> Result<u8> {
    match v {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(Error::Config(format!("sigma must be 0 or 1, not `{v}`"))),
    }
}

pub fn parse_glmn(v: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = v.split(|c: char| c.is_whitespace() || c == '|' || c == ',').filter(|s| !s.is_empty()).collect();
    match parts.as_slice() {
        [m, n] => match (m.parse(), n.parse()) {
            (Ok(m), Ok(n)) => Ok((m, n)),
            _ => Err(Error::Config(format!("glmn: `{v}` is not a pair of counts"))),
        },
        _ => Err(Error::Config(format!("glmn: expected `m n`, got `{v}`"))),
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = RunConfig::default();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once('=').ok_or_else(|| bad(line, format!("expected `key = value`, got `{body}`")))?;
            let (key, value) = (key.trim(), value.trim().to_string());
            let wrap = |e: Error| bad(line, e.to_string());
            match key {
                "category" => c.category = Some(parse_category(&value).map_err(wrap)?),
                "algebra" => c.algebra = Some(value),
                "involution" => c.involution = Some(value),
                "field" => c.field = Some(value),
                "sigma" => c.sigma = Some(parse_sigma(&value).map_err(wrap)?),
                "d" => c.d = Some(value.parse().map_err(|_| bad(line, format!("d: invalid scalar `{value}`")))?),
                "form" => c.form = Some(value),
                "glmn" => c.glmn = Some(parse_glmn(&value).map_err(wrap)?),
                other => return Err(bad(line, format!("unknown key `{other}`"))),
            }
        }
        Ok(c)
    }

    /// Fields set in `o` replace ours.
    pub fn overlay(mut self, o: RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if o.$f.is_some() { self.$f = o.$f; } )* };
        }
        take!(category, algebra, involution, field, sigma, d, form, glmn);
        self
    }

    pub fn form_spec(&self) -> Result<Option<FormSpec>> {
        self.form.as_deref().map(FormSpec::parse).transpose()
    }

    pub fn category(&self) -> Category {
        self.category.unwrap_or(if self.glmn.is_some() { Category::Oriented } else { Category::Unoriented })
    }

    pub fn algebra(&self) -> Result<SuperAlgebra> {
        let form = self.form_spec()?;
        let mut name = match (&self.algebra, &form) {
            (Some(a), _) => a.clone(),
            (None, Some(f)) => f.algebra().name().to_string(),
            (None, None) => "R".to_string(),
        };
        match (self.involution.as_deref(), name.as_str()) {
            (None, _) => {}
            (Some("id"), "C_real" | "C_real_id") => name = "C_real_id".into(),
            (Some("star"), "C_real" | "C_real_id") => name = "C_real".into(),
            (Some("id"), "R") | (Some("star"), _) => {}
            (Some(v), a) => return Err(Error::Config(format!("involution `{v}` is not available for {a}"))),
        }
        let alg = by_name(&name)?;
        match (self.field.as_deref(), alg.field()) {
            (None, _) | (Some("rational"), Field::Real) | (Some("gaussian"), Field::Complex) => Ok(alg),
            (Some(f @ ("rational" | "gaussian")), _) => Err(Error::Config(format!("{name} is not defined over the {f} field"))),
            (Some(f), _) => Err(Error::Config(format!("field must be `rational` or `gaussian`, not `{f}`"))),
        }
    }

    pub fn sigma(&self) -> Result<Parity> {
        Ok(match (self.sigma, self.form_spec()?) {
            (Some(s), _) => Parity::new(s == 1),
            (None, Some(f)) => f.sigma(),
            (None, None) => Parity::EVEN,
        })
    }

    /// `d` if given, else the value forced by the form or by `gl(m|n)`, else 0.
    pub fn d(&self) -> Result<Scalar> {
        if let Some(d) = &self.d {
            return Ok(d.clone());
        }
        if let Some(f) = self.form_spec()? {
            return Ok(f.loop_value());
        }
        if let Some((m, n)) = self.glmn {
            return Ok(Scalar::from_int(m as i64 - n as i64));
        }
        Ok(Scalar::from_int(0))
    }

    pub fn unoriented(&self) -> Result<UnConfig> {
        UnConfig::new(self.algebra()?, self.sigma()?, self.d()?)
    }

    pub fn oriented(&self) -> Result<OrConfig> {
        OrConfig::new(self.algebra()?, self.d()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_overrides() {
        let c = RunConfig::parse("# preset\nalgebra = H\nsigma = 1 # odd\nd = 0\n").unwrap();
        assert_eq!(c.algebra.as_deref(), Some("H"));
        assert_eq!(c.sigma, Some(1));
        let c = c.overlay(RunConfig { sigma: Some(0), d: Some(Scalar::from_int(2)), ..Default::default() });
        assert_eq!(c.sigma().unwrap(), Parity::EVEN);
        assert_eq!(c.d().unwrap(), Scalar::from_int(2));
        assert_eq!(c.algebra().unwrap().name(), "H");
    }

    #[test]
    fn defaults_follow_the_form() {
        let c = RunConfig { form: Some("osp(2,1|0)".into()), ..Default::default() };
        assert_eq!(c.algebra().unwrap().name(), "R");
        assert_eq!(c.d().unwrap(), Scalar::from_int(3));
        let c = RunConfig { form: Some("periplectic(1,1)".into()), ..Default::default() };
        assert_eq!(c.sigma().unwrap(), Parity::ODD);
    }

    #[test]
    fn involution_and_field() {
        let c = RunConfig { algebra: Some("C_real".into()), involution: Some("id".into()), ..Default::default() };
        assert_eq!(c.algebra().unwrap().name(), "C_real_id");
        let c = RunConfig { algebra: Some("H".into()), involution: Some("id".into()), ..Default::default() };
        assert!(c.algebra().is_err());
        let c = RunConfig { algebra: Some("R".into()), field: Some("gaussian".into()), ..Default::default() };
        assert!(c.algebra().is_err());
        let c = RunConfig { algebra: Some("C_cplx".into()), field: Some("gaussian".into()), ..Default::default() };
        assert!(c.algebra().is_ok());
    }

    #[test]
    fn rejects_bad_lines() {
        for text in ["algebra H", "colour = red", "sigma = 2", "glmn = 1", "d = x"] {
            match RunConfig::parse(text) {
                Err(Error::Config(m)) => assert!(m.starts_with("line 1"), "{m}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
