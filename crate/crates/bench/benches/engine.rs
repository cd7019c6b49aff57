use criterion::{black_box, criterion_group, criterion_main, Criterion};
use superbrauer::formslie::{spanning_check, spanning_check_oriented};
use superbrauer::oriented::OrConfig;
use superbrauer::superalg::catalog::by_name;
use superbrauer::unoriented::expand::Expander;
use superbrauer::unoriented::UnConfig;
use superbrauer::{FormIncarnation, FormSpec, GlIncarnation, Parity, Scalar};

fn basis(c: &mut Criterion) {
    let un = UnConfig::preset("H", Parity::EVEN, Scalar::from_int(2)).unwrap();
    c.bench_function("enumerate_basis H 3,3", |b| b.iter(|| un.enumerate_basis(black_box(3), black_box(3))));
    let or = OrConfig::new(by_name("C_real").unwrap(), Scalar::from_int(1)).unwrap();
    let w = [true, false, true, false];
    c.bench_function("enumerate_basis oriented udud", |b| b.iter(|| or.enumerate_basis(black_box(&w), black_box(&w))));
}

fn compose(c: &mut Criterion) {
    let un = UnConfig::preset("H", Parity::EVEN, Scalar::from_int(2)).unwrap();
    let ds = un.enumerate_basis(2, 2);
    let ms: Vec<_> = ds.iter().map(|d| un.basis_morphism(d)).collect();
    c.bench_function("compose all pairs H 2,2", |b| {
        b.iter(|| {
            for f in &ms {
                for g in &ms {
                    black_box(un.compose(f, g).unwrap());
                }
            }
        })
    });
}

fn incarnations(c: &mut Criterion) {
    let form = FormSpec::parse("osp(2,1|2)").unwrap();
    let un = UnConfig::new(form.algebra().clone(), form.sigma(), form.loop_value()).unwrap();
    let inc = FormIncarnation::new(&un, &form).unwrap();
    let ds = un.enumerate_basis(2, 2);
    c.bench_function("form eval osp(2,1|2) 2,2", |b| b.iter(|| ds.iter().map(|d| inc.eval_diagram(d)).count()));

    let or = OrConfig::new(by_name("R").unwrap(), Scalar::from_int(1)).unwrap();
    let gl = GlIncarnation::new(&or, 2, 1).unwrap();
    let w = [true, false];
    let ds = or.enumerate_basis(&w, &w);
    c.bench_function("gl(2|1) eval ud,ud", |b| b.iter(|| ds.iter().map(|d| gl.eval_diagram(&w, &w, d)).count()));
}

fn solver(c: &mut Criterion) {
    let mut g = c.benchmark_group("solver");
    g.sample_size(10);
    let form = FormSpec::parse("osp(2,1|0)").unwrap();
    g.bench_function("spanning osp(2,1|0) 2,2", |b| b.iter(|| spanning_check(&form, 2, 2).unwrap()));
    let alg = by_name("C_real").unwrap();
    let w = [true, true];
    g.bench_function("spanning gl(1|1,C) uu,uu", |b| b.iter(|| spanning_check_oriented(&alg, 1, 1, &w, &w).unwrap()));
    g.finish();
}

fn expansion(c: &mut Criterion) {
    let un = UnConfig::preset("ClC", Parity::EVEN, Scalar::from_int(2)).unwrap();
    let ds = un.enumerate_basis(2, 2);
    c.bench_function("expand ClC 2,2", |b| {
        b.iter(|| {
            let ex = Expander::new(&un).unwrap();
            ds.iter().map(|d| ex.expand_diagram(d)).count()
        })
    });
}

criterion_group!(benches, basis, compose, incarnations, solver, expansion);
criterion_main!(benches);
