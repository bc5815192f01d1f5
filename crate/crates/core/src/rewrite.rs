//! Plain rewriting and bounded reachability.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::TermError;
use crate::term::{match_term, Position, Term};
use crate::trs::{IndexedTrs, Rule};

/// Bounds for breadth-first exploration of reducts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Maximal derivation length.
    pub depth: usize,
    /// Maximal number of distinct terms discovered.
    pub nodes: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            depth: 12,
            nodes: 50_000,
        }
    }
}

/// One rewrite step `source →[rule @ position] result`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Step {
    pub source: Term,
    pub position: Position,
    /// Index of the rule in the system's rule list.
    pub rule: usize,
    pub result: Term,
}

#[derive(Serialize)]
struct StepRepr {
    source: String,
    position: Vec<usize>,
    rule: usize,
    result: String,
}

impl Serialize for Step {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        StepRepr {
            source: self.source.to_string(),
            position: self.position.steps().to_vec(),
            rule: self.rule,
            result: self.result.to_string(),
        }
        .serialize(s)
    }
}

/// Rewrites `t` at `p` with `rule`: `t[rσ]_p` where `t|_p = lσ`.
pub fn rewrite_step(t: &Term, rule: &Rule, p: &Position) -> Result<Term, TermError> {
    let redex = t.subterm_at(p)?;
    let sigma = match_term(&rule.lhs, redex).ok_or_else(|| TermError::NoMatch(p.clone()))?;
    t.replace_at(p, sigma.apply(&rule.rhs))
}

/// All one-step reducts of `t`, positions in pre-order, rules in list order.
pub fn one_step_reducts(t: &Term, trs: &IndexedTrs) -> Vec<Step> {
    let mut out = Vec::new();
    for p in t.fpos() {
        let sub = t.subterm_at(&p).expect("fpos yields valid positions");
        for (i, rule) in trs.rules().iter().enumerate() {
            if rule.lhs.head() != sub.head() {
                continue;
            }
            if let Some(sigma) = match_term(&rule.lhs, sub) {
                let result = t
                    .replace_at(&p, sigma.apply(&rule.rhs))
                    .expect("valid position");
                out.push(Step {
                    source: t.clone(),
                    position: p.clone(),
                    rule: i,
                    result,
                });
            }
        }
    }
    out
}

pub fn is_normal_form(t: &Term, trs: &IndexedTrs) -> bool {
    t.fpos().iter().all(|p| {
        let sub = t.subterm_at(p).expect("valid position");
        trs.rules()
            .iter()
            .all(|r| r.lhs.head() != sub.head() || match_term(&r.lhs, sub).is_none())
    })
}

/// Breadth-first exploration of the terms reachable from a start term.
#[derive(Clone, Debug)]
pub struct Reach {
    /// Discovered terms in discovery order; the start term comes first.
    pub terms: Vec<Term>,
    parent: HashMap<Term, (usize, Option<Step>)>,
    /// True iff every reachable term was discovered and expanded within bounds.
    pub complete: bool,
}

impl Reach {
    pub fn explore(start: &Term, trs: &IndexedTrs, bounds: SearchBounds) -> Reach {
        Self::explore_filtered(start, trs, bounds, |_| true)
    }

    /// Exploration restricted to steps accepted by `allow`.
    pub fn explore_filtered(
        start: &Term,
        trs: &IndexedTrs,
        bounds: SearchBounds,
        allow: impl Fn(&Step) -> bool,
    ) -> Reach {
        let mut parent = HashMap::new();
        parent.insert(start.clone(), (0usize, None));
        let mut terms = vec![start.clone()];
        let mut queue = VecDeque::from([start.clone()]);
        let mut complete = true;
        'outer: while let Some(t) = queue.pop_front() {
            let d = parent[&t].0;
            let steps: Vec<Step> = one_step_reducts(&t, trs).into_iter().filter(|s| allow(s)).collect();
            if steps.is_empty() {
                continue;
            }
            if d >= bounds.depth {
                complete = false;
                continue;
            }
            for s in steps {
                if parent.contains_key(&s.result) {
                    continue;
                }
                if terms.len() >= bounds.nodes {
                    complete = false;
                    break 'outer;
                }
                terms.push(s.result.clone());
                queue.push_back(s.result.clone());
                parent.insert(s.result.clone(), (d + 1, Some(s)));
            }
        }
        if !queue.is_empty() {
            complete = false;
        }
        Reach {
            terms,
            parent,
            complete,
        }
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.parent.contains_key(t)
    }

    pub fn depth_of(&self, t: &Term) -> Option<usize> {
        self.parent.get(t).map(|(d, _)| *d)
    }

    /// The derivation from the start term to `t`, if `t` was discovered.
    pub fn derivation_to(&self, t: &Term) -> Option<Vec<Step>> {
        let mut steps = Vec::new();
        let mut cur = t.clone();
        loop {
            let (_, step) = self.parent.get(&cur)?;
            match step {
                None => break,
                Some(s) => {
                    steps.push(s.clone());
                    cur = s.source.clone();
                }
            }
        }
        steps.reverse();
        Some(steps)
    }

    pub fn term_set(&self) -> BTreeSet<Term> {
        self.terms.iter().cloned().collect()
    }
}

/// Normal forms reachable within bounds, plus a completeness flag that is
/// true iff the whole reachable set was exhausted.
pub fn normal_forms(t: &Term, trs: &IndexedTrs, bounds: SearchBounds) -> (BTreeSet<Term>, bool) {
    let reach = Reach::explore(t, trs, bounds);
    let nfs = reach
        .terms
        .iter()
        .filter(|u| is_normal_form(u, trs))
        .cloned()
        .collect();
    (nfs, reach.complete)
}

/// Checks that `steps` is a valid derivation from `from` to `to`.
pub fn replay(from: &Term, steps: &[Step], to: &Term, trs: &IndexedTrs) -> bool {
    let mut cur = from.clone();
    for s in steps {
        if s.source != cur || s.rule >= trs.len() {
            return false;
        }
        match rewrite_step(&cur, trs.rule(s.rule), &s.position) {
            Ok(next) if next == s.result => cur = next,
            _ => return false,
        }
    }
    &cur == to
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_trs, parse_term_for};

    fn nkh() -> IndexedTrs {
        parse_trs("(VAR x) (RULES f(x,x) -> a f(x,c(x)) -> b g -> c(g))").unwrap()
    }

    #[test]
    fn rewrite_step_examples() {
        let trs = nkh();
        let t = |s: &str| parse_term_for(s, &trs).unwrap();
        assert_eq!(
            rewrite_step(&t("f(g,g)"), trs.rule(0), &Position::root()).unwrap(),
            t("a")
        );
        assert_eq!(rewrite_step(&t("g"), trs.rule(2), &Position::root()).unwrap(), t("c(g)"));
        assert_eq!(
            rewrite_step(&t("f(g,g)"), trs.rule(1), &Position::root()),
            Err(TermError::NoMatch(Position::root()))
        );
    }

    #[test]
    fn normal_form_examples() {
        let trs = nkh();
        let t = |s: &str| parse_term_for(s, &trs).unwrap();
        let (nf, complete) = normal_forms(&t("a"), &trs, SearchBounds::default());
        assert!(complete);
        assert_eq!(nf.into_iter().collect::<Vec<_>>(), vec![t("a")]);

        let (nf, _) = normal_forms(&t("f(g,g)"), &trs, SearchBounds { depth: 3, nodes: 1000 });
        assert!(nf.contains(&t("a")) && nf.contains(&t("b")));

        for depth in 1..10 {
            let (nf, complete) = normal_forms(&t("g"), &trs, SearchBounds { depth, nodes: 1000 });
            assert!(nf.is_empty());
            assert!(!complete);
        }
    }

    #[test]
    fn g_is_never_normal_oracle() {
        // Exhaustive BFS oracle: every term reachable from g within the bound is reducible.
        let trs = nkh();
        let reach = Reach::explore(&parse_term_for("g", &trs).unwrap(), &trs, SearchBounds { depth: 8, nodes: 100 });
        assert_eq!(reach.terms.len(), 9);
        assert!(reach.terms.iter().all(|u| !is_normal_form(u, &trs)));
    }

    #[test]
    fn derivations_replay() {
        let trs = nkh();
        let start = parse_term_for("f(g,g)", &trs).unwrap();
        let reach = Reach::explore(&start, &trs, SearchBounds { depth: 3, nodes: 1000 });
        let b = parse_term_for("b", &trs).unwrap();
        let d = reach.derivation_to(&b).unwrap();
        assert_eq!(d.len(), 2);
        assert!(replay(&start, &d, &b, &trs));
    }
}
