//! Independent validation of an analysis report: every certificate is
//! checked by replay and direct inspection, without any search.

use std::collections::BTreeSet;

use crate::analysis::{
    check_decreasing, cyclic_critical_pairs, verify_non_joinable, Analysis, CriticalPeak, DiagramEvidence,
    PairEvidence, Realizability, Verdict, Witness,
};
use crate::congruence::congruent;
use crate::cyclic::verify_cyclic_unifier;
use crate::layering::{check_dlo, check_rank_nonincreasing, Ranker};
use crate::rewrite::{replay, Step};
use crate::term::{Term, Var};
use crate::trs::IndexedTrs;

/// Re-validates `analysis` against `trs`; returns every problem found.
pub fn recheck(trs: &IndexedTrs, analysis: &Analysis) -> Result<(), Vec<String>> {
    let mut errs = Vec::new();
    let peaks = cyclic_critical_pairs(trs);
    if peaks.len() != analysis.pairs.len() {
        errs.push(format!(
            "expected {} cyclic critical pairs, report has {}",
            peaks.len(),
            analysis.pairs.len()
        ));
    }
    for (fresh, pa) in peaks.iter().zip(&analysis.pairs) {
        if fresh != &pa.peak {
            errs.push(format!("pair #{} differs from the recomputed peak", pa.peak.number));
            continue;
        }
        let ctx = format!("pair #{}", pa.peak.number);
        let v = verify_cyclic_unifier(&pa.peak.unifier, &pa.peak.problem());
        if !v.ok() {
            errs.push(format!("{ctx}: unifier rejected: {}", v.violations().join("; ")));
        }
        match &pa.evidence {
            PairEvidence::Diagram(d) => check_diagram(trs, &pa.peak, d, &ctx, &mut errs),
            PairEvidence::Unrealizable { realizability } => check_unrealizable(trs, &pa.peak, realizability, &ctx, &mut errs),
            PairEvidence::Witness(w) => check_witness(trs, &pa.peak, w, &ctx, &mut errs),
            PairEvidence::Open { .. } => {}
        }
    }
    check_verdict(trs, analysis, &mut errs);
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

fn check_diagram(trs: &IndexedTrs, peak: &CriticalPeak, d: &DiagramEvidence, ctx: &str, errs: &mut Vec<String>) {
    let bare = |ls: &[crate::analysis::LabelledStep]| ls.iter().map(|l| l.step.clone()).collect::<Vec<Step>>();
    if !replay(&peak.left, &bare(&d.left_steps), &d.s, trs) {
        errs.push(format!("{ctx}: left derivation does not replay to {}", d.s));
    }
    if !replay(&peak.right, &bare(&d.right_steps), &d.t, trs) {
        errs.push(format!("{ctx}: right derivation does not replay to {}", d.t));
    }
    if !congruent(&d.s, &d.t, &peak.cyclic_equations()) {
        errs.push(format!("{ctx}: {} and {} are not congruent", d.s, d.t));
    }
    let mut ranker = Ranker::assume_layered(trs);
    let mut labels_ok = true;
    for (steps, idx) in [(&d.left_steps, &d.left_indexes), (&d.right_steps, &d.right_indexes)] {
        labels_ok &= steps.len() == idx.len();
        for (ls, &k) in steps.iter().zip(idx) {
            let want = (ranker.rank(&ls.step.source), trs.rule(ls.step.rule).index);
            labels_ok &= ls.label == want && k == want.1;
        }
    }
    if !labels_ok {
        errs.push(format!("{ctx}: recorded labels differ from recomputed ones"));
    }
    if !check_decreasing(
        &d.left_indexes,
        &d.right_indexes,
        peak.outer_index,
        peak.inner_index,
        peak.context_has_vars,
    ) {
        errs.push(format!("{ctx}: index sequences are not decreasing"));
    }
}

/// Whether `z` occurs in `t` below a non-empty path made only of `inert` symbols.
fn inert_reach(t: &Term, z: &Var, inert: &BTreeSet<&str>) -> bool {
    match t {
        Term::App(f, args) if inert.contains(f.name()) => args.iter().any(|a| match a {
            Term::Var(v) => v == z,
            _ => inert_reach(a, z, inert),
        }),
        _ => false,
    }
}

fn check_unrealizable(trs: &IndexedTrs, peak: &CriticalPeak, r: &Realizability, ctx: &str, errs: &mut Vec<String>) {
    let Realizability::Unrealizable { inert, cycle } = r else {
        errs.push(format!("{ctx}: unrealizability evidence has the wrong status"));
        return;
    };
    if trs.rules().iter().any(|r| r.rhs.is_var()) {
        errs.push(format!("{ctx}: inert criterion used on a system with a collapsing rule"));
    }
    let inert: BTreeSet<&str> = inert.iter().map(String::as_str).collect();
    for r in trs.rules() {
        for side in [&r.lhs, &r.rhs] {
            if let Some(f) = side.head() {
                if inert.contains(f.name()) {
                    errs.push(format!("{ctx}: `{}` heads a rule side and is not inert", f.name()));
                }
            }
        }
    }
    if cycle.is_empty() {
        errs.push(format!("{ctx}: empty cycle"));
        return;
    }
    for (k, y) in cycle.iter().enumerate() {
        let z = Var::new(&cycle[(k + 1) % cycle.len()]);
        let rhs = peak.unifier.rs.rules.iter().find(|(v, _)| v.name() == y).map(|(_, t)| t);
        if !rhs.is_some_and(|t| inert_reach(t, &z, &inert)) {
            errs.push(format!("{ctx}: no inert path from {y} to {z}"));
        }
    }
}

fn check_witness(trs: &IndexedTrs, peak: &CriticalPeak, w: &Witness, ctx: &str, errs: &mut Vec<String>) {
    if w.source != w.gamma.apply(&peak.top) {
        errs.push(format!("{ctx}: witness source is not the instantiated overlap"));
    }
    if !replay(&w.source, &w.left_steps, &w.left, trs) || !replay(&w.source, &w.right_steps, &w.right, trs) {
        errs.push(format!("{ctx}: witness derivations do not replay"));
    }
    if !verify_non_joinable(&w.left, &w.right, &w.proof, trs) {
        errs.push(format!("{ctx}: non-joinability proof rejected"));
    }
}

fn check_verdict(trs: &IndexedTrs, a: &Analysis, errs: &mut Vec<String>) {
    let witness = a.pairs.iter().any(|p| matches!(p.evidence, PairEvidence::Witness(_)));
    match a.verdict {
        Verdict::NonConfluent if !witness => errs.push("NON-CONFLUENT without a witness".into()),
        Verdict::Confluent => {
            if witness {
                errs.push("CONFLUENT despite a witness".into());
            }
            if !check_dlo(trs).layered {
                errs.push("CONFLUENT but the system is not layered".into());
            }
            if !a.rank_assumed && !check_rank_nonincreasing(trs).ok {
                errs.push("CONFLUENT but the rank check fails".into());
            }
            if a.pairs.iter().any(|p| matches!(p.evidence, PairEvidence::Open { .. })) {
                errs.push("CONFLUENT with an open pair".into());
            }
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{analyze, AnalysisConfig};
    use crate::parse::parse_trs;

    #[test]
    fn accepts_and_rejects() {
        let cfg = AnalysisConfig::default();
        for src in [
            "(VAR x) (RULES f(x,x) -> a  f(x,c(x)) -> b  g -> c(g))",
            "(VAR x) (RULES f(x,x) -> a  f(x,c(x)) -> b  g -> d(g))",
            "(VAR x) (RULES f(x,x) ->2 a(x,x)  f(x,c(x)) ->2 b(x)  f(c(x),c(x)) ->3 f(x,c(x))  a(x,x) ->1 e(x)  b(x) ->1 e(c(x))  g ->0 c(g))",
        ] {
            let trs = parse_trs(src).unwrap();
            let a = analyze(&trs, &cfg);
            assert_eq!(recheck(&trs, &a), Ok(()), "{src}");
        }
        let trs = parse_trs("(VAR x) (RULES f(x,x) -> a  f(x,c(x)) -> b  g -> c(g))").unwrap();
        let mut a = analyze(&trs, &cfg);
        a.verdict = Verdict::Confluent;
        assert!(recheck(&trs, &a).is_err());
        let mut a = analyze(&trs, &cfg);
        if let PairEvidence::Witness(w) = &mut a.pairs[0].evidence {
            w.right = Term::constant("a");
        }
        assert!(recheck(&trs, &a).is_err());
    }
}
