use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use layconf::analysis::cyclic_critical_pairs;
use layconf::unify::{solve, UnifProblem};
use layconf::{analyze, parse_term_with_vars, AnalysisConfig};
use layconf_bench::{cyclic_problem, systems};

fn pipeline(c: &mut Criterion) {
    let cfg = AnalysisConfig::default();
    for (name, trs) in systems() {
        c.bench_with_input(BenchmarkId::new("analyze", name), &trs, |b, trs| b.iter(|| analyze(trs, &cfg)));
        c.bench_with_input(BenchmarkId::new("pairs", name), &trs, |b, trs| {
            b.iter(|| cyclic_critical_pairs(trs))
        });
    }
}

fn unification(c: &mut Criterion) {
    for n in [2, 8, 32] {
        let (l, r, vars) = cyclic_problem(n);
        let vs: Vec<&str> = vars.iter().map(String::as_str).collect();
        let p = UnifProblem::single(parse_term_with_vars(&l, &vs).unwrap(), parse_term_with_vars(&r, &vs).unwrap());
        c.bench_with_input(BenchmarkId::new("solve", n), &p, |b, p| b.iter(|| solve(p)));
    }
}

criterion_group!(benches, pipeline, unification);
criterion_main!(benches);
