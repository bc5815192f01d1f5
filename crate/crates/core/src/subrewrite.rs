//! Sub-rewriting: equalize the non-linear variable occurrences of a
//! linearized redex by plain rewriting below it, then fire the rule.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::layering::Ranker;
use crate::rewrite::{rewrite_step, Reach, SearchBounds, Step};
use crate::term::{linearize, match_term, Position, Substitution, Term, Var};
use crate::trs::IndexedTrs;

/// Upper bound on the equalization choices combined for one redex.
const MAX_COMBINATIONS: usize = 4096;

/// A common reduct with one derivation per occurrence.
type Equalizer = (Term, Vec<Vec<Step>>);

/// A non-linear variable, its occurrences and its equalizers.
type Choice = (Var, Vec<(Position, Var)>, Vec<Equalizer>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubRewriteStep {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub source: Term,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub position: Position,
    /// Rule list index.
    pub rule: usize,
    /// Plain steps below the variable positions of the linearized lhs.
    pub equalization: Vec<Step>,
    /// `lθ`, the redex after equalization.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub redex: Term,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub result: Term,
    /// `⟨rank(source|_p), index⟩` when a ranker was supplied.
    pub label: Option<(usize, u32)>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub theta_hat: Substitution,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub sigma: Substitution,
}

/// Candidate common reducts of every occurrence of one variable, each with
/// one derivation per occurrence.
fn equalizers(instances: &[Term], trs: &IndexedTrs, depth: usize, nodes: usize) -> Vec<Equalizer> {
    let bounds = SearchBounds { depth, nodes };
    let reaches: Vec<Reach> = instances.iter().map(|t| Reach::explore(t, trs, bounds)).collect();
    let mut common: Vec<(usize, &Term)> = reaches[0]
        .terms
        .iter()
        .filter(|t| reaches[1..].iter().all(|r| r.contains(t)))
        .map(|t| (reaches.iter().map(|r| r.depth_of(t).unwrap_or(0)).sum(), t))
        .collect();
    common.sort();
    common
        .into_iter()
        .map(|(_, t)| {
            let ds = reaches
                .iter()
                .map(|r| r.derivation_to(t).expect("common term was discovered"))
                .collect();
            (t.clone(), ds)
        })
        .collect()
}

/// Sub-rewriting steps of `u` at `p` with rule `rule`, equalizing with
/// derivations of length at most `eq_depth`.
pub fn sub_rewrite(
    u: &Term,
    trs: &IndexedTrs,
    rule: usize,
    p: &Position,
    eq_depth: usize,
    nodes: usize,
    ranker: Option<&mut Ranker>,
) -> Vec<SubRewriteStep> {
    let r = trs.rule(rule);
    let Ok(sub) = u.subterm_at(p) else {
        return Vec::new();
    };
    if sub.head() != r.lhs.head() {
        return Vec::new();
    }
    let lbar = linearize(&r.lhs, "");
    let Some(theta_hat) = match_term(&lbar.term, sub) else {
        return Vec::new();
    };
    let label = ranker.map(|rk| (rk.rank(sub), r.index));

    // Per non-linear variable, the list of (target, per-occurrence derivations).
    let mut choices: Vec<Choice> = Vec::new();
    let mut base = Substitution::new();
    for x in r.lhs.vars() {
        let occ = lbar.occurrences_of(&x);
        let insts: Vec<Term> = occ
            .iter()
            .map(|(_, xi)| theta_hat.apply(&Term::Var(xi.clone())))
            .collect();
        if occ.len() == 1 {
            base.insert(x, insts[0].clone());
            continue;
        }
        let eqs = equalizers(&insts, trs, eq_depth, nodes);
        if eqs.is_empty() {
            return Vec::new();
        }
        choices.push((x, occ, eqs));
    }

    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        if out.len() >= MAX_COMBINATIONS {
            break;
        }
        let mut sigma = base.clone();
        let mut cur = u.clone();
        let mut equalization = Vec::new();
        for (c, (x, occ, eqs)) in choices.iter().enumerate() {
            let (target, derivs) = &eqs[pick[c]];
            sigma.insert(x.clone(), target.clone());
            for ((o, _), deriv) in occ.iter().zip(derivs) {
                let at = p.concat(o);
                for s in deriv {
                    let abs = at.concat(&s.position);
                    let next = rewrite_step(&cur, trs.rule(s.rule), &abs).expect("replayed step applies");
                    equalization.push(Step {
                        source: cur.clone(),
                        position: abs,
                        rule: s.rule,
                        result: next.clone(),
                    });
                    cur = next;
                }
            }
        }
        let redex = sigma.apply(&r.lhs);
        debug_assert_eq!(cur.subterm_at(p).ok(), Some(&redex));
        let result = cur.replace_at(p, sigma.apply(&r.rhs)).expect("valid position");
        out.push(SubRewriteStep {
            source: u.clone(),
            position: p.clone(),
            rule,
            equalization,
            redex,
            result,
            label,
            theta_hat: theta_hat.clone(),
            sigma,
        });
        // Next combination, odometer style.
        let mut k = 0;
        while k < pick.len() {
            pick[k] += 1;
            if pick[k] < choices[k].2.len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
        if k == pick.len() {
            break;
        }
    }
    out
}

/// Sub-rewriting steps at every non-variable position with every rule.
pub fn sub_rewrite_all(
    u: &Term,
    trs: &IndexedTrs,
    eq_depth: usize,
    nodes: usize,
    mut ranker: Option<&mut Ranker>,
) -> Vec<SubRewriteStep> {
    let mut out = Vec::new();
    for p in u.fpos() {
        for k in 0..trs.len() {
            out.extend(sub_rewrite(u, trs, k, &p, eq_depth, nodes, ranker.as_deref_mut()));
        }
    }
    out
}

/// `(θ̂, σ)`: the match of the linearized lhs on the source, and the
/// equalizer that the fired redex instantiates the lhs with.
pub fn decompose_redex(step: &SubRewriteStep) -> (Substitution, Substitution) {
    (step.theta_hat.clone(), step.sigma.clone())
}

/// Whether a recorded step is valid: the equalization replays below the
/// variable positions of the linearized lhs and the rule fires on the result.
pub fn validate_step(step: &SubRewriteStep, trs: &IndexedTrs) -> bool {
    if step.rule >= trs.len() {
        return false;
    }
    let r = trs.rule(step.rule);
    let lbar = linearize(&r.lhs, "");
    let var_pos: Vec<Position> = lbar
        .term
        .var_positions()
        .into_iter()
        .map(|(o, _)| step.position.concat(&o))
        .collect();
    let mut cur = step.source.clone();
    for s in &step.equalization {
        if s.source != cur || !var_pos.iter().any(|v| s.position.is_below_or_at(v)) {
            return false;
        }
        match rewrite_step(&cur, trs.rule(s.rule), &s.position) {
            Ok(n) if n == s.result => cur = n,
            _ => return false,
        }
    }
    let Ok(redex) = cur.subterm_at(&step.position) else {
        return false;
    };
    if redex != &step.redex || match_term(&r.lhs, redex).is_none() {
        return false;
    }
    rewrite_step(&cur, r, &step.position).ok().as_ref() == Some(&step.result)
}

/// Occurrences of each variable of the rule, as `x ↦ [x^1, ...]`.
pub fn occurrence_map(trs: &IndexedTrs, rule: usize) -> BTreeMap<Var, Vec<Var>> {
    let lbar = linearize(&trs.rule(rule).lhs, "");
    trs.rule(rule)
        .lhs
        .vars()
        .into_iter()
        .map(|x| {
            let occ = lbar.occurrences_of(&x).into_iter().map(|(_, v)| v).collect();
            (x, occ)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_term_for, parse_trs};
    use crate::rewrite::one_step_reducts;

    fn nkh() -> IndexedTrs {
        parse_trs("(VAR x) (RULES f(x,x) -> a  f(x,c(x)) -> b  g -> c(g))").unwrap()
    }

    #[test]
    fn equalizes_before_firing() {
        let trs = nkh();
        let t = |s: &str| parse_term_for(s, &trs).unwrap();
        let steps = sub_rewrite(&t("f(g,c(g))"), &trs, 0, &Position::root(), 6, 1000, None);
        let first = &steps[0];
        assert_eq!(first.result, t("a"));
        assert_eq!(first.redex, t("f(c(g),c(g))"));
        assert_eq!(first.equalization.len(), 1);
        assert_eq!(first.equalization[0].result, t("f(c(g),c(g))"));
        assert!(validate_step(first, &trs));
        let (theta, sigma) = decompose_redex(first);
        assert_eq!(theta.get(&Var::new("x^1")), Some(&t("g")));
        assert_eq!(theta.get(&Var::new("x^2")), Some(&t("c(g)")));
        assert_eq!(sigma.get(&Var::new("x")), Some(&t("c(g)")));
    }

    #[test]
    fn plain_steps_are_sub_rewriting_steps() {
        let trs = nkh();
        let t = |s: &str| parse_term_for(s, &trs).unwrap();
        let steps = sub_rewrite(&t("f(g,c(g))"), &trs, 1, &Position::root(), 6, 1000, None);
        assert!(steps[0].equalization.is_empty());
        assert_eq!(steps[0].result, t("b"));
        assert!(sub_rewrite_all(&t("a"), &trs, 6, 1000, None).is_empty());
        let u = t("f(c(g),c(g))");
        let plain: Vec<Term> = one_step_reducts(&u, &trs).into_iter().map(|s| s.result).collect();
        let sub: Vec<Term> = sub_rewrite_all(&u, &trs, 0, 1000, None).into_iter().map(|s| s.result).collect();
        assert_eq!(plain, sub);
        let (theta, sigma) = decompose_redex(&sub_rewrite(&u, &trs, 0, &Position::root(), 0, 1000, None)[0]);
        assert_eq!(theta.get(&Var::new("x^1")), Some(&t("c(g)")));
        assert_eq!(sigma.get(&Var::new("x")), Some(&t("c(g)")));
    }

    #[test]
    fn labels_use_rank_of_redex() {
        let trs = nkh();
        let t = |s: &str| parse_term_for(s, &trs).unwrap();
        let mut rk = Ranker::new(&trs).unwrap();
        let steps = sub_rewrite(&t("c(f(g,c(g)))"), &trs, 0, &Position::new(vec![1]), 3, 1000, Some(&mut rk));
        assert_eq!(steps[0].label, Some((2, 1)));
        assert!(validate_step(&steps[0], &trs));
    }
}
