//! Layeredness, rank, and the syntactic rank non-increase test.
//!
//! Quantifications over ground substitutions are decided by unifiability of
//! variable-disjoint linearizations, which is exact because ground terms
//! exist and linear variable-disjoint terms unify iff they have a common
//! ground instance.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::AnalysisError;
use crate::term::{linearize, match_term, LinearizedTerm, Position, Substitution, Term, Var};
use crate::trs::IndexedTrs;
use crate::unify::{mgu, mgu_all};

/// Most general unifier of two linear, variable-disjoint terms.
pub fn linear_overlap(u: &LinearizedTerm, g: &LinearizedTerm) -> Option<Substitution> {
    mgu(&u.term, &g.term)
}

fn lhs_linearizations(trs: &IndexedTrs, salt: &str) -> Vec<LinearizedTerm> {
    trs.rules()
        .iter()
        .enumerate()
        .map(|(k, r)| linearize(&r.lhs, &format!("{salt}{k}.")))
        .collect()
}

/// No non-variable subterm of `v̄` unifies with a linearized left-hand side.
pub fn is_of(v: &Term, trs: &IndexedTrs) -> bool {
    let lins = lhs_linearizations(trs, "g");
    of_with(v, &lins)
}

fn of_with(v: &Term, lins: &[LinearizedTerm]) -> bool {
    let vbar = linearize(v, "v");
    v.fpos().iter().all(|o| {
        let sub = vbar.term.subterm_at(o).expect("fpos is valid");
        lins.iter()
            .all(|g| g.term.head() != sub.head() || mgu(sub, &g.term).is_none())
    })
}

/// Every strict non-variable subterm of `u` is overlap-free.
pub fn is_sof(u: &Term, trs: &IndexedTrs) -> bool {
    let lins = lhs_linearizations(trs, "g");
    sof_with(u, &lins)
}

fn sof_with(u: &Term, lins: &[LinearizedTerm]) -> bool {
    u.fpos()
        .iter()
        .filter(|q| !q.is_root())
        .all(|q| of_with(u.subterm_at(q).expect("fpos is valid"), lins))
}

/// One failed layeredness obligation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DloViolation {
    /// Rule whose left-hand side is overlapped.
    pub outer_rule: usize,
    /// Rule whose left-hand side overlaps it.
    pub inner_rule: usize,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub position: Position,
    /// The failing predicate, e.g. `SOF(h(a))`.
    pub failing: String,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub witness: Substitution,
}

impl fmt::Display for DloViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rule {} overlaps rule {} at {} with {}: {} fails",
            self.inner_rule + 1,
            self.outer_rule + 1,
            self.position,
            self.witness,
            self.failing
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapReport {
    pub layered: bool,
    pub violations: Vec<DloViolation>,
}

/// Checks that linearized overlaps upon a left-hand side only occur at
/// disjoint or equal positions.
///
/// The overlap of a rule with itself at the root is skipped: it always
/// exists and says nothing about nesting.
pub fn check_dlo(trs: &IndexedTrs) -> OverlapReport {
    let outer = lhs_linearizations(trs, "l");
    let inner = lhs_linearizations(trs, "g");
    let mut violations = Vec::new();
    for (a, rule) in trs.rules().iter().enumerate() {
        for p in rule.lhs.fpos() {
            let lp = rule.lhs.subterm_at(&p).expect("fpos is valid");
            let lbar_p = outer[a].term.subterm_at(&p).expect("fpos is valid");
            for (b, g) in trs.rules().iter().enumerate() {
                if a == b && p.is_root() {
                    continue;
                }
                let Some(witness) = mgu(lbar_p, &inner[b].term) else {
                    continue;
                };
                let failing = if !sof_with(lp, &inner) {
                    Some(lp)
                } else if !sof_with(&g.lhs, &inner) {
                    Some(&g.lhs)
                } else {
                    None
                };
                if let Some(t) = failing {
                    violations.push(DloViolation {
                        outer_rule: a,
                        inner_rule: b,
                        position: p.clone(),
                        failing: format!("SOF({t})"),
                        witness,
                    });
                }
            }
        }
    }
    OverlapReport {
        layered: violations.is_empty(),
        violations,
    }
}

/// No plain overlap below the root of any left-hand side.
pub fn is_overlay(trs: &IndexedTrs) -> bool {
    trs.rules().iter().all(|rule| {
        let avoid = rule.lhs.vars();
        rule.lhs.fpos().iter().filter(|p| !p.is_root()).all(|p| {
            let lp = rule.lhs.subterm_at(p).expect("fpos is valid");
            trs.rules().iter().all(|g| {
                let (renamed, _) = crate::term::rename_apart(&[&g.lhs], &avoid);
                mgu(lp, &renamed[0]).is_none()
            })
        })
    })
}

/// Memoizing rank evaluator for a layered system.
#[derive(Clone, Debug)]
pub struct Ranker {
    lins: Vec<LinearizedTerm>,
    memo: HashMap<Term, usize>,
}

impl Ranker {
    /// Refuses systems that are not layered.
    pub fn new(trs: &IndexedTrs) -> Result<Ranker, AnalysisError> {
        if !check_dlo(trs).layered {
            return Err(AnalysisError::NotLayered);
        }
        Ok(Self::assume_layered(trs))
    }

    /// Skips the layeredness check; the caller vouches for it.
    pub fn assume_layered(trs: &IndexedTrs) -> Ranker {
        Ranker {
            lins: trs.rules().iter().map(|r| linearize(&r.lhs, "")).collect(),
            memo: HashMap::new(),
        }
    }

    pub fn rank(&mut self, t: &Term) -> usize {
        if let Some(&r) = self.memo.get(t) {
            return r;
        }
        let r = match t {
            Term::Var(_) => 0,
            Term::App(_, args) => {
                let matches: Vec<Substitution> = self
                    .lins
                    .iter()
                    .filter(|l| l.term.head() == t.head())
                    .filter_map(|l| match_term(&l.term, t))
                    .collect();
                if matches.is_empty() {
                    args.iter().map(|a| self.rank(a)).max().unwrap_or(0)
                } else {
                    1 + matches.iter().map(|s| self.rank_subst(s)).max().unwrap_or(0)
                }
            }
        };
        self.memo.insert(t.clone(), r);
        r
    }

    /// Maximal rank of the bindings of `sigma`.
    pub fn rank_subst(&mut self, sigma: &Substitution) -> usize {
        let terms: Vec<Term> = sigma.iter().map(|(_, t)| t.clone()).collect();
        terms.iter().map(|t| self.rank(t)).max().unwrap_or(0)
    }

    /// Rank of the substitution matching rule `k`'s linearized lhs on `t`.
    pub fn redex_rank(&mut self, k: usize, t: &Term) -> Option<usize> {
        let sigma = match_term(&self.lins[k].term, t)?;
        Some(1 + self.rank_subst(&sigma))
    }
}

/// Rank of `t` under a layered system.
pub fn rank(t: &Term, trs: &IndexedTrs) -> Result<usize, AnalysisError> {
    Ok(Ranker::new(trs)?.rank(t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankClause {
    /// Two nested redexes created by one right-hand side.
    #[serde(rename = "i")]
    Nested,
    /// A right-hand side completing a redex inside a left-hand side.
    #[serde(rename = "ii")]
    Inside,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankViolation {
    pub rule: usize,
    pub clause: RankClause,
    pub detail: String,
}

impl fmt::Display for RankViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.clause {
            RankClause::Nested => "(i)",
            RankClause::Inside => "(ii)",
        };
        write!(f, "rule {} violates {c}: {}", self.rule + 1, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub ok: bool,
    pub violations: Vec<RankViolation>,
}

impl RankCheck {
    /// Rules with at least one violation, without repetition.
    pub fn failing_rules(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.violations.iter().map(|v| v.rule).collect();
        out.dedup();
        out
    }
}

/// Decidable sufficient condition for rank non-increase.
///
/// Clause (i) reads "q below p·FPos(l)" as q at or below `p·o` for a
/// variable position `o` of `l̄`. Clause (ii) asks for `l̄[x]_p` to be an
/// instance of some linearized lhs.
pub fn check_rank_nonincreasing(trs: &IndexedTrs) -> RankCheck {
    let la = lhs_linearizations(trs, "a");
    let lb = lhs_linearizations(trs, "b");
    let hole = Term::Var(Var::new("□"));
    let mut violations = Vec::new();
    for (k, rule) in trs.rules().iter().enumerate() {
        let d = &rule.rhs;
        let dpos = d.fpos();
        // (i)
        'nested: for p in &dpos {
            let dp = d.subterm_at(p).expect("fpos is valid");
            for (a, l) in la.iter().enumerate() {
                if l.term.head() != dp.head() || mgu(dp, &l.term).is_none() {
                    continue;
                }
                for (o, _) in l.term.var_positions() {
                    let below = p.concat(&o);
                    for q in dpos.iter().filter(|q| q.is_below_or_at(&below)) {
                        let dq = d.subterm_at(q).expect("fpos is valid");
                        for (b, l2) in lb.iter().enumerate() {
                            let eqs = [(dp.clone(), l.term.clone()), (dq.clone(), l2.term.clone())];
                            if mgu_all(&eqs).is_some() {
                                violations.push(RankViolation {
                                    rule: k,
                                    clause: RankClause::Nested,
                                    detail: format!(
                                        "{dp} at {p} unifies with lhs of rule {} while {dq} at {q} unifies with lhs of rule {}",
                                        a + 1,
                                        b + 1
                                    ),
                                });
                                break 'nested;
                            }
                        }
                    }
                }
            }
        }
        // (ii)
        'inside: for (a, l) in la.iter().enumerate() {
            for p in l.term.fpos().into_iter().filter(|p| !p.is_root()) {
                let lp = l.term.subterm_at(&p).expect("fpos is valid");
                if mgu(d, lp).is_none() {
                    continue;
                }
                let outer = l.term.replace_at(&p, hole.clone()).expect("valid position");
                if !lb.iter().any(|l2| match_term(&l2.term, &outer).is_some()) {
                    violations.push(RankViolation {
                        rule: k,
                        clause: RankClause::Inside,
                        detail: format!(
                            "{d} unifies with {} at {p} of rule {}, and {} is an instance of no lhs",
                            trs.rule(a).lhs.subterm_at(&p).expect("valid position"),
                            a + 1,
                            trs.rule(a).lhs.replace_at(&p, hole.clone()).expect("valid position"),
                        ),
                    });
                    break 'inside;
                }
            }
        }
    }
    RankCheck {
        ok: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_term_for, parse_term_with_vars, parse_trs};

    const NKH: &str = "(VAR x) (RULES f(x,x) -> a  f(x,c(x)) -> b  g -> c(g))";

    fn sys(s: &str) -> IndexedTrs {
        parse_trs(s).unwrap()
    }

    #[test]
    fn linear_overlap_examples() {
        let u = linearize(&parse_term_with_vars("f(x,x)", &["x"]).unwrap(), "a");
        let g = linearize(&parse_term_with_vars("f(y,c(y))", &["y"]).unwrap(), "b");
        let s = linear_overlap(&u, &g).unwrap();
        assert_eq!(s.apply(&u.term), s.apply(&g.term));
        let h = linearize(&parse_term_with_vars("h(x)", &["x"]).unwrap(), "a");
        let c = linearize(&Term::constant("g"), "b");
        assert!(linear_overlap(&h, &c).is_none());
        let f1 = linearize(&parse_term_with_vars("f(x)", &["x"]).unwrap(), "a");
        let f2 = linearize(&parse_term_with_vars("f(y)", &["y"]).unwrap(), "b");
        assert!(linear_overlap(&f1, &f2).unwrap().is_renaming());
    }

    #[test]
    fn of_and_sof() {
        let nkh = sys(NKH);
        let t = |s: &str| parse_term_for(s, &nkh).unwrap();
        assert!(is_of(&t("c(x)"), &nkh));
        assert!(!is_of(&t("f(x,x)"), &nkh));
        assert!(is_sof(&t("g"), &nkh));
        let bad = sys("(VAR x) (RULES f(h(x)) -> x  h(a) -> a  a -> b)");
        let b = |s: &str| parse_term_for(s, &bad).unwrap();
        assert!(!is_of(&b("h(a)"), &bad));
        assert!(is_sof(&b("h(x)"), &bad));
        assert!(!is_sof(&b("h(a)"), &bad));
    }

    #[test]
    fn layeredness_table() {
        let nkh = sys(NKH);
        assert!(check_dlo(&nkh).layered && is_overlay(&nkh));
        let t2 = sys("(VAR x y) (RULES h(f(x,y)) -> a  f(x,c(x)) -> b)");
        assert!(check_dlo(&t2).layered && !is_overlay(&t2));
        let t3 = sys("(VAR x) (RULES h(f(x,x)) -> a  f(x,c(x)) -> b  g -> c(g))");
        assert!(check_dlo(&t3).layered);
        let t4 = sys("(VAR x) (RULES f(h(x)) -> x  h(a) -> a  a -> b)");
        let rep = check_dlo(&t4);
        assert!(!rep.layered && !is_overlay(&t4));
        assert!(rep.violations.iter().any(|v| v.failing == "SOF(h(a))"));
    }

    #[test]
    fn rank_values() {
        let nkh = sys(NKH);
        let t = |s: &str| parse_term_for(s, &nkh).unwrap();
        let mut r = Ranker::new(&nkh).unwrap();
        assert_eq!(r.rank(&t("g")), 1);
        assert_eq!(r.rank(&t("a")), 0);
        assert_eq!(r.rank(&t("f(g,g)")), 2);
        assert_eq!(r.rank(&t("f(c(g),c(g))")), 2);
        assert_eq!(r.rank(&t("c(c(a))")), 0);
        let bad = sys("(VAR x) (RULES f(h(x)) -> x  h(a) -> a  a -> b)");
        assert_eq!(rank(&Term::constant("a"), &bad), Err(AnalysisError::NotLayered));
    }

    #[test]
    fn rank_condition_examples() {
        assert!(check_rank_nonincreasing(&sys("(VAR x) (RULES f(x) -> c(f(x)))")).ok);
        let ff = check_rank_nonincreasing(&sys("(VAR x) (RULES f(x) -> f(f(x)))"));
        assert!(!ff.ok);
        assert_eq!(ff.violations[0].clause, RankClause::Nested);
        let dxx = check_rank_nonincreasing(&sys("(VAR x) (RULES d(x,x) -> 0  f(x) -> d(x,f(x))  c -> f(c))"));
        assert!(!dxx.ok);
        assert_eq!(dxx.failing_rules()[0], 1);
        assert!(check_rank_nonincreasing(&sys(NKH)).ok);
        let vhuet = sys(
            "(VAR x) (RULES f(x,x) ->2 a(x,x)  f(x,c(x)) ->2 b(x)  f(c(x),c(x)) ->3 f(x,c(x))  a(x,x) ->1 e(x)  b(x) ->1 e(c(x))  g ->0 c(g))",
        );
        assert!(check_rank_nonincreasing(&vhuet).ok, "{:?}", check_rank_nonincreasing(&vhuet));
        let fib = sys("(VAR x) (RULES fib(0) -> 0  fib(S(0)) -> S(0)  fib(S(S(x))) -> plus(fib(S(x)),fib(x)))");
        assert!(check_dlo(&fib).layered);
        let c = check_rank_nonincreasing(&fib);
        assert!(!c.ok);
        assert!(c.violations.iter().all(|v| v.clause == RankClause::Inside));
    }
}
