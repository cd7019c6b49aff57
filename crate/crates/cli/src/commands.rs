//! Subcommands. Each returns a JSON document (with `"schema": 1`) and
//! whether every check it ran passed.

use serde_json::{json, Value};
use superbrauer::formslie::{spanning_check, spanning_check_oriented, FullnessReport, CATALOG};
use superbrauer::incarnate::{FormIncarnation, GlIncarnation};
use superbrauer::oriented::{self, format_word, parse_word};
use superbrauer::superalg::catalog::NAMES;
use superbrauer::unoriented::{self, expand::Expander};
use superbrauer::{Error, Result};

use crate::config::{Category, RunConfig};
use crate::elaborate;
use crate::expr::parse;

pub struct Output {
    pub json: Value,
    pub ok: bool,
}

fn done(mut v: Value) -> Result<Output> {
    v.as_object_mut().unwrap().insert("schema".into(), json!(1));
    Ok(Output { json: v, ok: true })
}

fn checked(mut v: Value, ok: bool) -> Result<Output> {
    let obj = v.as_object_mut().unwrap();
    obj.insert("schema".into(), json!(1));
    obj.insert("ok".into(), json!(ok));
    Ok(Output { json: v, ok })
}

fn setting(cfg: &RunConfig) -> Result<Value> {
    let alg = cfg.algebra()?;
    Ok(match cfg.category() {
        Category::Unoriented => {
            let c = cfg.unoriented()?;
            json!({"category": "unoriented", "algebra": alg.name(), "sigma": c.sigma().as_u8(), "d": c.d().to_string()})
        }
        Category::Oriented => json!({"category": "oriented", "algebra": alg.name(), "d": cfg.oriented()?.d().to_string()}),
    })
}

pub fn normalize(cfg: &RunConfig, text: &str) -> Result<Output> {
    let e = parse(text)?;
    let conf = setting(cfg)?;
    match cfg.category() {
        Category::Unoriented => {
            let c = cfg.unoriented()?;
            let f = elaborate::unoriented(&c, &e)?;
            let mut m = c.morphism_json(&f);
            m["normal_form"] = json!(elaborate::print_unoriented(&c, &f));
            m["parity"] = json!(c.parity(&f).map(|p| p.as_u8()));
            done(json!({"config": conf, "morphism": m}))
        }
        Category::Oriented => {
            let c = cfg.oriented()?;
            let f = elaborate::oriented(&c, &e)?;
            let mut m = c.morphism_json(&f);
            m["normal_form"] = json!(elaborate::print_oriented(&c, &f));
            m["parity"] = json!(c.parity(&f).map(|p| p.as_u8()));
            done(json!({"config": conf, "morphism": m}))
        }
    }
}

/// `X` and `Y` are strand counts (unoriented) or words in `u`/`d` (oriented);
/// `-` or an empty argument is the empty word.
pub fn dim_hom(cfg: &RunConfig, x: &str, y: &str) -> Result<Output> {
    let counts = (x.parse::<usize>(), y.parse::<usize>());
    if let (Ok(r), Ok(s)) = counts {
        let c = cfg.unoriented()?;
        let dim = c.enumerate_basis(r, s).len();
        return done(json!({"category": "unoriented", "algebra": c.algebra().name(), "r": r, "s": s, "dim": dim}));
    }
    let word = |w: &str| if w == "-" { Ok(Vec::new()) } else { parse_word(w) };
    let (a, b) = (word(x)?, word(y)?);
    let c = cfg.oriented()?;
    let dim = c.enumerate_basis(&a, &b).len();
    done(json!({"category": "oriented", "algebra": c.algebra().name(), "src": format_word(&a), "tgt": format_word(&b), "dim": dim}))
}

pub fn eval(cfg: &RunConfig, text: &str) -> Result<Output> {
    let e = parse(text)?;
    if let Some((m, n)) = cfg.glmn {
        let c = cfg.oriented()?;
        let g = GlIncarnation::new(&c, m, n)?;
        let f = elaborate::oriented(&c, &e)?;
        return done(json!({
            "functor": format!("gl({m}|{n},{})", c.algebra().name()),
            "src": format_word(&f.src),
            "tgt": format_word(&f.tgt),
            "map": g.eval(&f).to_json(),
        }));
    }
    let form = cfg.form_spec()?.ok_or_else(|| Error::Config("eval needs --form or --glmn".into()))?;
    let c = cfg.unoriented()?;
    let inc = FormIncarnation::new(&c, &form)?;
    let f = elaborate::unoriented(&c, &e)?;
    done(json!({"functor": form.name(), "r": f.r, "s": f.s, "map": inc.eval(&f).to_json()}))
}

pub fn check_relations(cfg: &RunConfig) -> Result<Output> {
    let results = match cfg.category() {
        Category::Unoriented => unoriented::relations::check(&cfg.unoriented()?),
        Category::Oriented => oriented::relations::check(&cfg.oriented()?),
    };
    let ok = results.iter().all(|r| r.ok);
    checked(json!({"config": setting(cfg)?, "relations": results}), ok)
}

/// Text table for `check-relations --table`.
pub fn relations_table(out: &Output) -> String {
    let mut s = String::new();
    for r in out.json["relations"].as_array().unwrap() {
        s.push_str(&format!("{:<4} {}\n", if r["ok"].as_bool().unwrap() { "ok" } else { "FAIL" }, r["name"].as_str().unwrap()));
    }
    s
}

fn report_json(rep: &FullnessReport, timing: bool) -> Value {
    let mut v = serde_json::to_value(rep).unwrap();
    if !timing {
        v.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v
}

pub struct FullnessArgs<'a> {
    pub r: usize,
    pub s: usize,
    pub src: Option<&'a str>,
    pub tgt: Option<&'a str>,
    pub timing: bool,
}

pub fn check_fullness(cfg: &RunConfig, a: FullnessArgs) -> Result<Output> {
    let rep = if let Some((m, n)) = cfg.glmn {
        let word = |w: Option<&str>| match w {
            None | Some("-") => Ok(Vec::new()),
            Some(w) => parse_word(w),
        };
        let (x, y) = (word(a.src)?, word(a.tgt)?);
        spanning_check_oriented(&cfg.algebra()?, m, n, &x, &y)?
    } else {
        let form = cfg.form_spec()?.ok_or_else(|| Error::Config("check-fullness needs --form or --glmn".into()))?;
        spanning_check(&form, a.r, a.s)?
    };
    let ok = rep.ok;
    checked(json!({"report": report_json(&rep, a.timing)}), ok)
}

pub fn expand_orientations(cfg: &RunConfig, text: &str) -> Result<Output> {
    let c = cfg.unoriented()?;
    let f = elaborate::unoriented(&c, &parse(text)?)?;
    let ex = Expander::new(&c)?;
    done(json!({"config": setting(cfg)?, "expansion": ex.expand(&f).to_json(ex.oriented())}))
}

pub fn trace(cfg: &RunConfig, text: &str) -> Result<Output> {
    let e = parse(text)?;
    let t = match cfg.category() {
        Category::Unoriented => {
            let c = cfg.unoriented()?;
            c.trace(&elaborate::unoriented(&c, &e)?)?
        }
        Category::Oriented => {
            let c = cfg.oriented()?;
            c.trace(&elaborate::oriented(&c, &e)?)?
        }
    };
    done(json!({"config": setting(cfg)?, "trace": t.to_string()}))
}

pub fn list_forms() -> Result<Output> {
    let forms: Vec<Value> = CATALOG.iter().map(|(name, alg, gram)| json!({"name": name, "algebra": alg, "gram": gram})).collect();
    done(json!({"forms": forms, "algebras": NAMES}))
}

/// Structured error document for stderr.
pub fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Parse { .. } => "parse",
        Error::Interface(_) => "interface",
        Error::Algebra(_) => "algebra",
        Error::Unknown(_) => "unknown",
        Error::Config(_) => "config",
        Error::Diagram(_) => "diagram",
        Error::Form(_) => "form",
        Error::TooLarge(_) => "too_large",
        Error::Singular(_) => "singular",
    };
    let mut err = json!({"kind": kind, "message": e.to_string()});
    if let Error::Parse { pos, .. } = e {
        err["pos"] = json!(pos);
    }
    json!({"schema": 1, "error": err})
}
