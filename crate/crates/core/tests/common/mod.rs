//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use layconf::trs::Rule;
use layconf::unify::SolvedForm;
use layconf::{parse_trs, IndexedTrs, Term, Var};
use proptest::prelude::*;
use proptest::strategy::Union;
use proptest::test_runner::{Config, TestRunner};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_file(name: &str) -> IndexedTrs {
    let path = corpus_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_trs(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Every corpus system with its file name, sorted.
pub fn corpus() -> Vec<(String, IndexedTrs)> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".trs"))
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), corpus_file(&n))).collect()
}

/// A runner with a fixed seed, so failures reproduce.
pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            max_shrink_iters: 256,
            max_global_rejects: 50_000,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    )
}

/// Terms over `sig` (name, arity) and `vars`, nested at most `depth` deep.
pub fn term_strategy(sig: &[(String, usize)], vars: &[String], depth: u32) -> BoxedStrategy<Term> {
    let mut leaves: Vec<BoxedStrategy<Term>> = sig
        .iter()
        .filter(|(_, n)| *n == 0)
        .map(|(f, _)| Just(Term::constant(f)).boxed())
        .collect();
    leaves.extend(vars.iter().map(|v| Just(Term::var(v)).boxed()));
    let leaf = Union::new(leaves).boxed();
    let inner: Vec<(String, usize)> = sig.iter().filter(|(_, n)| *n > 0).cloned().collect();
    if inner.is_empty() || depth == 0 {
        return leaf;
    }
    leaf.prop_recursive(depth, 24, 3, move |sub| {
        Union::new(inner.iter().map(|(f, n)| {
            let f = f.clone();
            proptest::collection::vec(sub.clone(), *n)
                .prop_map(move |args| Term::app(&f, args))
                .boxed()
        }))
        .boxed()
    })
    .boxed()
}

pub fn sig(items: &[(&str, usize)]) -> Vec<(String, usize)> {
    items.iter().map(|(f, n)| (f.to_string(), *n)).collect()
}

pub fn names(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Signature of a system as (name, arity) pairs.
pub fn signature_of(trs: &IndexedTrs) -> Vec<(String, usize)> {
    trs.signature().iter().map(|s| (s.name().to_string(), s.arity())).collect()
}

/// Unification problems of one to three equations with terms of size at
/// most 8. Most equations relate a term to a mutation of itself,
/// so that many problems are solvable.
pub fn problem_strategy() -> BoxedStrategy<Vec<(Term, Term)>> {
    let s = sig(&[("a", 0), ("b", 0), ("c", 1), ("f", 2), ("h", 3)]);
    let v = names(&["x", "y", "z", "w"]);
    let t = term_strategy(&s, &v, 3).prop_filter("size ≤ 8", |t| t.size() <= 8);
    let var = prop::sample::select(v.clone()).prop_map(|x| Term::var(&x));
    let small = prop_oneof![
        var.clone(),
        var.clone().prop_map(|x| Term::app("c", vec![x])),
        (var.clone(), var).prop_map(|(x, y)| Term::app("f", vec![x, y])),
    ];
    let mutated = (t.clone(), any::<prop::sample::Index>(), small)
        .prop_map(|(u, at, r)| {
            let ps = u.positions();
            let p = &ps[at.index(ps.len())];
            let w = u.replace_at(p, r).expect("own position");
            (u, w)
        })
        .prop_filter("size ≤ 8", |(_, w)| w.size() <= 8);
    let eq = prop_oneof![1 => (t.clone(), t), 4 => mutated];
    proptest::collection::vec(eq, 1..=3).boxed()
}

/// Problems from [`problem_strategy`] that have a solution.
pub fn solvable_problem_strategy() -> BoxedStrategy<Vec<(Term, Term)>> {
    problem_strategy()
        .prop_filter("solvable", |eqs| layconf::unify::solve(&layconf::unify::UnifProblem::new(eqs.clone())).is_some())
        .boxed()
}

/// Random rewrite systems of one to three rules over a small signature.
pub fn trs_strategy() -> BoxedStrategy<IndexedTrs> {
    let s = sig(&[("a", 0), ("b", 0), ("g", 0), ("c", 1), ("h", 1), ("f", 2)]);
    let v = names(&["x", "y"]);
    let lhs = term_strategy(&s, &v, 2).prop_filter("non-variable lhs", |t| !t.is_var());
    let rhs = term_strategy(&s, &v, 2);
    proptest::collection::vec((lhs, rhs), 1..=3)
        .prop_filter_map("well-formed rules", |rules| {
            let rules: Vec<Rule> = rules
                .into_iter()
                .enumerate()
                .map(|(k, (l, r))| Rule::new(l, r, k as u32 + 1))
                .collect();
            IndexedTrs::new(rules).ok()
        })
        .boxed()
}

/// Rank by direct evaluation of the defining recursion, with its own
/// linearized matching.
pub fn rank_oracle(t: &Term, trs: &IndexedTrs) -> usize {
    fn skeleton<'a>(l: &Term, t: &'a Term, out: &mut Vec<&'a Term>) -> bool {
        match (l, t) {
            (Term::Var(_), _) => {
                out.push(t);
                true
            }
            (Term::App(f, ls), Term::App(g, ts)) if f == g => {
                ls.iter().zip(ts).all(|(l, t)| skeleton(l, t, out))
            }
            _ => false,
        }
    }
    let mut best: Option<usize> = None;
    for r in trs.rules() {
        let mut bound = Vec::new();
        if skeleton(&r.lhs, t, &mut bound) {
            let rk = bound.iter().map(|b| rank_oracle(b, trs)).max().unwrap_or(0);
            best = Some(best.map_or(rk + 1, |b: usize| b.max(rk + 1)));
        }
    }
    best.unwrap_or_else(|| t.args().iter().map(|a| rank_oracle(a, trs)).max().unwrap_or(0))
}

/// The bindings of the linearized `lhs` in `t`, or `None` if it does not match.
pub fn linear_bindings<'a>(lhs: &Term, t: &'a Term) -> Option<Vec<&'a Term>> {
    fn go<'a>(l: &Term, t: &'a Term, out: &mut Vec<&'a Term>) -> bool {
        match (l, t) {
            (Term::Var(_), _) => {
                out.push(t);
                true
            }
            (Term::App(f, ls), Term::App(g, ts)) if f == g => ls.iter().zip(ts).all(|(l, t)| go(l, t, out)),
            _ => false,
        }
    }
    let mut out = Vec::new();
    go(lhs, t, &mut out).then_some(out)
}

/// Fills the variable positions of `l` left to right with `fill`.
pub fn plug(l: &Term, fill: &mut impl Iterator<Item = Term>) -> Term {
    match l {
        Term::Var(_) => fill.next().expect("enough fillers"),
        Term::App(_, args) => {
            let name = l.head().unwrap().name().to_string();
            Term::app(&name, args.iter().map(|a| plug(a, fill)).collect())
        }
    }
}

/// Brute-force congruence closure over the subterm universe of `u`, `v`
/// and the equations: iterate the closure rules to a fixpoint on a
/// relation matrix.
pub fn congruence_oracle(u: &Term, v: &Term, eqs: &[(Term, Term)]) -> bool {
    let mut universe: Vec<Term> = Vec::new();
    let add = |t: &Term, universe: &mut Vec<Term>| {
        for s in t.subterms() {
            if !universe.contains(s) {
                universe.push(s.clone());
            }
        }
    };
    for (a, b) in eqs {
        add(a, &mut universe);
        add(b, &mut universe);
    }
    add(u, &mut universe);
    add(v, &mut universe);
    let n = universe.len();
    let idx = |t: &Term| universe.iter().position(|s| s == t).unwrap();
    let mut rel = vec![vec![false; n]; n];
    for (k, row) in rel.iter_mut().enumerate() {
        row[k] = true;
    }
    for (a, b) in eqs {
        let (i, j) = (idx(a), idx(b));
        rel[i][j] = true;
        rel[j][i] = true;
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] {
                    continue;
                }
                let trans = (0..n).any(|k| rel[i][k] && rel[k][j]);
                let cong = match (&universe[i], &universe[j]) {
                    (Term::App(f, xs), Term::App(g, ys)) if f == g => {
                        xs.iter().zip(ys).all(|(x, y)| rel[idx(x)][idx(y)])
                    }
                    _ => false,
                };
                if trans || cong {
                    rel[i][j] = true;
                    rel[j][i] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel[idx(u)][idx(v)];
        }
    }
}

/// Ground equation sets over a small signature whose subterm universe
/// has at most 12 elements, plus two query terms.
/// Ground equations with two query terms.
pub type CongruenceCase = (Vec<(Term, Term)>, Term, Term);

pub fn congruence_case_strategy() -> BoxedStrategy<CongruenceCase> {
    let s = sig(&[("a", 0), ("b", 0), ("c", 1), ("f", 2)]);
    let t = term_strategy(&s, &[], 3);
    let eq = (t.clone(), t.clone());
    (proptest::collection::vec(eq, 0..=6), t.clone(), t)
        .prop_filter("universe ≤ 12", |(eqs, u, v)| {
            let mut set: BTreeSet<&Term> = BTreeSet::new();
            for (a, b) in eqs {
                set.extend(a.subterms());
                set.extend(b.subterms());
            }
            set.extend(u.subterms());
            set.extend(v.subterms());
            set.len() <= 12
        })
        .boxed()
}

/// Decreasingness by enumerating every split of each side into
/// `α · facing? · δ`.
pub fn decreasing_oracle(left: &[u32], right: &[u32], i: u32, j: u32, ctx: bool) -> bool {
    fn side(seq: &[u32], own: u32, facing: u32) -> bool {
        let n = seq.len();
        for a in 0..=n {
            let alpha_ok = seq[..a].iter().all(|&k| k < own);
            if !alpha_ok {
                continue;
            }
            // No facing step.
            if seq[a..].iter().all(|&k| k < own || k < facing) {
                return true;
            }
            if a < n && seq[a] == facing && seq[a + 1..].iter().all(|&k| k < own || k < facing) {
                return true;
            }
        }
        false
    }
    (!ctx || left.iter().chain(right).all(|&k| k < i)) && side(left, i, j) && side(right, j, i)
}

/// Every index sequence of length at most `len` over `0..=max`.
pub fn all_sequences(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for s in &layer {
            for k in 0..=max {
                let mut t = s.clone();
                t.push(k);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Structural check of the solved-form clauses against the problem's variables.
pub fn solved_form_violations(sf: &SolvedForm, pvars: &BTreeSet<Var>) -> Vec<String> {
    let mut errs = Vec::new();
    let lhs: Vec<&Var> = sf.finite.iter().chain(&sf.cyclic).map(|(x, _)| x).collect();
    let lhs_set: BTreeSet<&Var> = lhs.iter().copied().collect();
    if lhs_set.len() != lhs.len() {
        errs.push("left-hand variables are not distinct".to_string());
    }
    let expected: BTreeSet<Var> = pvars.iter().filter(|v| !lhs_set.contains(v)).cloned().collect();
    if sf.parameters != expected {
        errs.push(format!("parameters {:?} ≠ {:?}", sf.parameters, expected));
    }
    for (x, u) in &sf.finite {
        if !u.vars().is_subset(&sf.parameters) {
            errs.push(format!("finite {x} = {u} uses a non-parameter"));
        }
    }
    let ys: BTreeSet<Var> = sf.cyclic.iter().map(|(y, _)| y.clone()).collect();
    for (y, v) in &sf.cyclic {
        let vv = v.vars();
        if v.is_var() {
            errs.push(format!("cyclic {y} = {v} has a variable right-hand side"));
        }
        if !vv.iter().all(|w| ys.contains(w) || sf.parameters.contains(w)) {
            errs.push(format!("cyclic {y} = {v} uses a finite variable"));
        }
        if vv.is_disjoint(&ys) {
            errs.push(format!("cyclic {y} = {v} reaches no cyclic variable"));
        }
    }
    errs
}
