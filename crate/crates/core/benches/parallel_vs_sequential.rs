use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hopes::analysis::check_extensional;
use hopes::classical::stable_models_with;
use hopes::engine::evaluate;
use hopes::exec::Exec;
use hopes::frontend::load;
use hopes::herbrand::{ground_instantiate_with, GroundOptions, GroundProgram};

const TREES: &str = "\
#func f : i -> i -> i.
#pred tree : i -> o.
#pred leafy : i -> o.
tree(a).
tree(b).
tree(f(X, Y)) :- tree(X), tree(Y).
leafy(X) :- tree(X), ~tree(f(X, X)).
";

const SUBSET: &str = "\
#pred p : i -> o.
#pred q : i -> o.
#pred r : i -> o.
#pred subset : (i -> o) -> (i -> o) -> o.
#pred nonsubset : (i -> o) -> (i -> o) -> o.
p(a). q(a). q(b). r(c).
subset P Q :- ~(nonsubset P Q).
nonsubset P Q :- P X, ~(Q X).
";

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

/// `pairs` independent even loops: 2^pairs stable models.
fn even_loops(pairs: usize) -> GroundProgram {
    let mut g = GroundProgram::new();
    for i in 0..pairs {
        let (p, q) = (format!("p{i}"), format!("q{i}"));
        g.add_rule(&p, &[], &[&q]);
        g.add_rule(&q, &[], &[&p]);
    }
    g
}

fn grounding(c: &mut Criterion) {
    let p = load(TREES).unwrap();
    let mut group = c.benchmark_group("ground");
    for (name, exec) in MODES {
        let opts = GroundOptions {
            exec,
            ..GroundOptions::new(6)
        };
        group.bench_with_input(BenchmarkId::new(name, 6), &opts, |b, &opts| {
            b.iter(|| ground_instantiate_with(&p, opts).unwrap())
        });
    }
    group.finish();
}

fn stable(c: &mut Criterion) {
    let g = even_loops(10);
    let mut group = c.benchmark_group("stable");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 20), &exec, |b, &exec| {
            b.iter(|| stable_models_with(&g, 24, exec).unwrap())
        });
    }
    group.finish();
}

fn extensionality(c: &mut Criterion) {
    let p = load(SUBSET).unwrap();
    let ev = evaluate(&p, GroundOptions::new(4)).unwrap();
    let mut group = c.benchmark_group("ext");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 4), &exec, |b, &exec| {
            b.iter(|| check_extensional(&ev.program, &ev.universe, &ev.ground, &ev.model.model, exec))
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(3));
    targets = grounding, stable, extensionality
}
criterion_main!(benches);
