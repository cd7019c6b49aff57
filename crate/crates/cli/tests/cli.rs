use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use superbrauer::oriented::OrConfig;
use superbrauer::superalg::catalog::by_name;
use superbrauer::unoriented::{UnConfig, UnMorphism};
use superbrauer::{Parity, Scalar};
use superbrauer_cli::elaborate::{oriented, print_oriented, print_unoriented, unoriented};
use superbrauer_cli::expr::parse;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superbrauer")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn dim_hom_counts() {
    assert_eq!(json(&["--algebra", "H", "dim-hom", "2", "2"])["dim"], 48);
    assert_eq!(json(&["dim-hom", "2", "2"])["dim"], 3);
    assert_eq!(json(&["--algebra", "H", "dim-hom", "ud", "ud"])["dim"], 32);
    assert_eq!(json(&["dim-hom", "3", "0"])["dim"], 0);
    assert_eq!(json(&["dim-hom", "-", "ud"])["dim"], 1);
}

#[test]
fn normalize_examples() {
    let v = json(&["--d", "3", "normalize", "cup ; cap"]);
    assert_eq!(v["morphism"]["normal_form"], "3 * empty");
    let v = json(&["normalize", "x ; x"]);
    assert_eq!(v["morphism"]["normal_form"], "id(2)");
    let v = json(&["--algebra", "C_real", "normalize", "tok(1*i) ; tok(1*i)"]);
    assert_eq!(v["morphism"]["normal_form"], "-1 * id(1)");
    let v = json(&["normalize", "cap @ id(1)"]);
    assert_eq!((v["morphism"]["r"].clone(), v["morphism"]["s"].clone()), (Value::from(3), Value::from(1)));
    let v = json(&["--category", "oriented", "--algebra", "H", "--d", "1", "normalize", "cupL ; capR"]);
    // a loop is d str(1), and str(1) = 4 over H
    assert_eq!(v["morphism"]["normal_form"], "4 * empty");
}

#[test]
fn eval_with_a_form_and_with_gl() {
    let v = json(&["--form", "osp(2,1|0)", "eval", "cup ; cap"]);
    assert_eq!(v["map"]["shape"], serde_json::json!([1, 1]));
    assert_eq!(v["map"]["rows"][0][0], "3");
    let v = json(&["--glmn", "2", "1", "--algebra", "R", "eval", "x"]);
    assert_eq!(v["map"]["shape"], serde_json::json!([9, 9]));
    assert_eq!(v["src"], "uu");
}

#[test]
fn relations_pass_and_fail_codes() {
    let v = json(&["--algebra", "H", "--d", "2", "check-relations"]);
    assert_eq!(v["ok"], true);
    let v = json(&["--category", "oriented", "--algebra", "Cl3R", "check-relations"]);
    assert_eq!(v["ok"], true);
    let out = run(&["--algebra", "ClC", "--sigma", "1", "check-relations", "--table"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).lines().all(|l| l.starts_with("ok")));
}

#[test]
fn fullness_reports() {
    let v = json(&["check-fullness", "--form", "osp(2,1|0)", "--r", "2", "--s", "2"]);
    assert_eq!((v["report"]["rank"].clone(), v["report"]["dim"].clone(), v["ok"].clone()), (3.into(), 3.into(), true.into()));
    assert!(v["report"].get("elapsed_ms").is_none());
    let v = json(&["check-fullness", "--glmn", "1", "1", "--algebra", "C_real", "--src", "uu", "--tgt", "uu", "--timing"]);
    assert_eq!(v["ok"], true);
    assert!(v["report"]["elapsed_ms"].is_u64());
}

#[test]
fn expansion_and_trace() {
    let v = json(&["--d", "4", "expand-orientations", "cap"]);
    assert_eq!(v["expansion"]["entries"].as_array().unwrap().len(), 2);
    assert_eq!(json(&["--d", "5", "trace", "id(2)"])["trace"], "25");
    assert_eq!(json(&["--d", "5", "trace", "x"])["trace"], "5");
    assert_eq!(json(&["--category", "oriented", "--d", "2", "trace", "id(ud)"])["trace"], "4");
}

#[test]
fn list_forms_has_every_family() {
    let v = json(&["list-forms"]);
    let names: Vec<&str> = v["forms"].as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    for f in ["osp(p,q|2n)", "u(p,q|r,s)", "osp*(n|p,q)", "uq(p,q)", "osp_C(m|2n)"] {
        assert!(names.contains(&f), "{f}");
    }
}

#[test]
fn config_file_with_overrides() {
    let dir = std::env::temp_dir().join(format!("superbrauer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "# quaternions\nalgebra = H\nd = 7\n").unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["--config", p, "trace", "id(1)"]);
    assert_eq!(v["trace"], "28");
    assert_eq!(v["config"]["algebra"], "H");
    let v = json(&["--config", p, "--d", "-1/2", "trace", "id(1)"]);
    assert_eq!(v["trace"], "-2");
    std::fs::write(&path, "algebra = H\nbogus = 1\n").unwrap();
    let out = run(&["--config", p, "trace", "id(1)"]);
    assert_eq!(out.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "config");
    assert!(e["error"]["message"].as_str().unwrap().contains("line 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn errors_are_structured() {
    let out = run(&["normalize", "x ; ; x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!((e["schema"].clone(), e["error"]["kind"].clone(), e["error"]["pos"].clone()), (1.into(), "parse".into(), 4.into()));
    let e: Value = serde_json::from_slice(&run(&["normalize", "cap ; x"]).stderr).unwrap();
    assert_eq!(e["error"]["kind"], "interface");
    let out = run(&["--sigma", "1", "--d", "2", "normalize", "x"]);
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(e["error"]["message"].as_str().unwrap().contains("degenerate configuration"));
    let out = run(&["--form", "osp(2,1|0)", "--algebra", "H", "eval", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        &["--algebra", "H", "normalize", "x @ tok(i) ; cap @ id(1) ; tok(j)"][..],
        &["check-fullness", "--form", "osp(0,0|2)"],
        &["--algebra", "ClC", "--d", "0", "expand-orientations", "x ; cap"],
        &["list-forms"],
    ] {
        let (a, b) = (run(args), run(args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

fn un(name: &str, sigma: Parity) -> UnConfig {
    let d = if sigma.is_odd() { Scalar::from_int(0) } else { Scalar::from_int(2) };
    UnConfig::preset(name, sigma, d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parse_inverts_print_on_unoriented_normal_forms(
        alg in prop::sample::select(vec!["R", "C_real", "C_real_id", "H", "ClC"]),
        odd in any::<bool>(),
        (r, s) in prop::sample::select(vec![(2usize, 2usize), (1, 3), (4, 0), (0, 0), (3, 1)]),
        picks in prop::collection::vec((0usize..10_000, -4i64..5, 1i64..4), 0..4),
    ) {
        let c = un(alg, Parity::new(odd));
        let basis = c.enumerate_basis(r, s);
        let mut f = UnMorphism::zero(r, s);
        for (k, p, q) in picks {
            if !basis.is_empty() {
                f = f.add(&c.basis_morphism(&basis[k % basis.len()]).scale(&Scalar::from_frac(p, q)));
            }
        }
        let text = print_unoriented(&c, &f);
        prop_assert_eq!(unoriented(&c, &parse(&text).unwrap()).unwrap(), f, "{}", text);
    }

    #[test]
    fn parse_inverts_print_on_oriented_normal_forms(
        alg in prop::sample::select(vec!["R", "C_real", "H", "Cl1R", "Cl2R", "ClC"]),
        x in prop::collection::vec(any::<bool>(), 0..4),
        y in prop::collection::vec(any::<bool>(), 0..4),
        picks in prop::collection::vec((0usize..10_000, -4i64..5), 0..4),
    ) {
        let c = OrConfig::new(by_name(alg).unwrap(), Scalar::from_int(3)).unwrap();
        let basis = c.enumerate_basis(&x, &y);
        prop_assume!(!basis.is_empty());
        let mut f = superbrauer::oriented::OrMorphism::zero(x.clone(), y.clone());
        for (k, p) in picks {
            if !basis.is_empty() {
                f = f.add(&c.basis_morphism(&x, &y, &basis[k % basis.len()]).scale(&Scalar::from_int(p)));
            }
        }
        let text = print_oriented(&c, &f);
        prop_assert_eq!(oriented(&c, &parse(&text).unwrap()).unwrap(), f, "{}", text);
    }
}
