use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use drc_core::corpus;
use drc_core::free::{build_bounded_free, mp_of};
use drc_core::functors::{c_of, s_of};
use drc_core::search::{parse_axiom_list, search, AxiomId};
use drc_core::semigroup::{check_drc_axioms, mu_congruence};
use drc_core::star::{pseudoinverse, RationalMatrix};

fn semigroup_checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("semigroup");
    for (name, _, s) in corpus::semigroups() {
        g.bench_with_input(BenchmarkId::new("drc_axioms", name), &s, |b, s| b.iter(|| check_drc_axioms(black_box(s))));
        g.bench_with_input(BenchmarkId::new("mu", name), &s, |b, s| b.iter(|| mu_congruence(black_box(s))));
    }
    g.finish();
}

fn functors(c: &mut Criterion) {
    let mut g = c.benchmark_group("functors");
    for name in ["b2", "sxc3", "mp_diamond", "mp_imaoka"] {
        let s = corpus::get(name).and_then(|e| e.structure.semigroup().cloned()).expect(name);
        let cat = c_of(&s).unwrap();
        g.bench_function(BenchmarkId::new("c_of", name), |b| b.iter(|| c_of(black_box(&s)).unwrap()));
        g.bench_function(BenchmarkId::new("s_of", name), |b| b.iter(|| s_of(black_box(&cat)).unwrap()));
    }
    g.finish();
}

fn free_objects(c: &mut Criterion) {
    let mut g = c.benchmark_group("free");
    g.sample_size(20);
    for (name, pa) in [("const2", corpus::constant_pa(2)), ("diamond", corpus::diamond_pa())] {
        g.bench_function(BenchmarkId::new("bounded_len4", name), |b| {
            b.iter(|| build_bounded_free(black_box(&pa), 4).unwrap())
        });
        g.bench_function(BenchmarkId::new("mp", name), |b| b.iter(|| mp_of(black_box(&pa)).unwrap()));
    }
    g.finish();
}

fn model_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    let p15 = parse_axiom_list("p1..p5").unwrap();
    for size in [3, 4] {
        g.bench_with_input(BenchmarkId::new("p6_exhaust", size), &size, |b, &n| {
            b.iter(|| search(&p15, AxiomId::P6, n, 1).unwrap())
        });
    }
    let lp = parse_axiom_list("lp1..lp3").unwrap();
    g.bench_function("lp4_size3", |b| b.iter(|| search(&lp, AxiomId::LP4, 3, 1).unwrap()));
    g.finish();
}

fn matrices(c: &mut Criterion) {
    let a = RationalMatrix::from_ints(&[&[1, 2, 0], &[2, 4, 1], &[0, 1, 3]]);
    let r = RationalMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
    c.bench_function("pinv_3x3", |b| b.iter(|| pseudoinverse(black_box(&a))));
    c.bench_function("pinv_rank1_2x3", |b| b.iter(|| pseudoinverse(black_box(&r))));
}

criterion_group!(benches, semigroup_checks, functors, free_objects, model_search, matrices);
criterion_main!(benches);
