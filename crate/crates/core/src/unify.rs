//! Rule-based unification over rational trees.
//!
//! Problems are conjunctions of equations transformed by nine rules until
//! none applies. There is no occur-check failure: cyclic equations survive
//! into the solved form and are later read as a ground rewrite system.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::term::{Substitution, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum UnifRule {
    Remove,
    Decomp,
    Conflict,
    Choose,
    Coalesce,
    Swap,
    Merge,
    Replace,
    Merep,
}

impl UnifRule {
    pub const ALL: [UnifRule; 9] = [
        UnifRule::Remove,
        UnifRule::Decomp,
        UnifRule::Conflict,
        UnifRule::Choose,
        UnifRule::Coalesce,
        UnifRule::Swap,
        UnifRule::Merge,
        UnifRule::Replace,
        UnifRule::Merep,
    ];

    /// Order in which the deterministic strategy tries the rules.
    pub const PRIORITY: [UnifRule; 9] = [
        UnifRule::Remove,
        UnifRule::Decomp,
        UnifRule::Conflict,
        UnifRule::Coalesce,
        UnifRule::Merge,
        UnifRule::Replace,
        UnifRule::Choose,
        UnifRule::Swap,
        UnifRule::Merep,
    ];
}

impl fmt::Display for UnifRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("rule {rule} is not applicable at {target:?}")]
    NotApplicable { rule: UnifRule, target: Vec<usize> },
}

/// A conjunction of equations, or the failed problem ⊥.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnifProblem {
    equations: Vec<(Term, Term)>,
    failed: bool,
    /// Provenance of linearized variables (`x^i ↦ x`), carried unchanged.
    pub origin: BTreeMap<Var, Var>,
}

impl UnifProblem {
    pub fn new(equations: Vec<(Term, Term)>) -> Self {
        UnifProblem {
            equations,
            failed: false,
            origin: BTreeMap::new(),
        }
    }

    pub fn single(s: Term, t: Term) -> Self {
        Self::new(vec![(s, t)])
    }

    pub fn bottom() -> Self {
        UnifProblem {
            equations: Vec::new(),
            failed: true,
            origin: BTreeMap::new(),
        }
    }

    pub fn with_origin(mut self, origin: BTreeMap<Var, Var>) -> Self {
        self.origin = origin;
        self
    }

    pub fn is_bottom(&self) -> bool {
        self.failed
    }

    pub fn equations(&self) -> &[(Term, Term)] {
        &self.equations
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for (s, t) in &self.equations {
            s.collect_vars(&mut out);
            t.collect_vars(&mut out);
        }
        out
    }

    /// Variables of all equations except those listed.
    fn vars_except(&self, skip: &[usize]) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for (k, (s, t)) in self.equations.iter().enumerate() {
            if !skip.contains(&k) {
                s.collect_vars(&mut out);
                t.collect_vars(&mut out);
            }
        }
        out
    }

    fn substitute_except(&self, skip: &[usize], x: &Var, by: &Term) -> Vec<(Term, Term)> {
        let sigma = Substitution::from_pairs([(x.clone(), by.clone())]);
        self.equations
            .iter()
            .enumerate()
            .map(|(k, (s, t))| {
                if skip.contains(&k) {
                    (s.clone(), t.clone())
                } else {
                    (sigma.apply(s), sigma.apply(t))
                }
            })
            .collect()
    }

    fn with_equations(&self, equations: Vec<(Term, Term)>) -> Self {
        UnifProblem {
            equations,
            failed: false,
            origin: self.origin.clone(),
        }
    }
}

impl fmt::Display for UnifProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failed {
            return f.write_str("⊥");
        }
        if self.equations.is_empty() {
            return f.write_str("⊤");
        }
        for (k, (s, t)) in self.equations.iter().enumerate() {
            if k > 0 {
                f.write_str(" ∧ ")?;
            }
            write!(f, "{s} = {t}")?;
        }
        Ok(())
    }
}

fn var_of(t: &Term) -> Option<&Var> {
    t.as_var()
}

/// Checks the side condition of `rule` on the given equation handles.
fn applies(p: &UnifProblem, rule: UnifRule, target: &[usize]) -> bool {
    if p.failed {
        return false;
    }
    let n = p.equations.len();
    if target.iter().any(|&k| k >= n) {
        return false;
    }
    match (rule, target) {
        (UnifRule::Remove, &[i]) => p.equations[i].0 == p.equations[i].1,
        (UnifRule::Decomp, &[i]) => {
            let (s, t) = &p.equations[i];
            s != t && !s.is_var() && s.head() == t.head()
        }
        (UnifRule::Conflict, &[i]) => {
            let (s, t) = &p.equations[i];
            !s.is_var() && !t.is_var() && s.head() != t.head()
        }
        (UnifRule::Choose, &[i]) => {
            // y = x  →  x = y
            let (Some(y), Some(x)) = (var_of(&p.equations[i].0), var_of(&p.equations[i].1)) else {
                return false;
            };
            let rest = p.vars_except(&[i]);
            x != y && !rest.contains(x) && rest.contains(y)
        }
        (UnifRule::Coalesce, &[i]) => {
            let (Some(x), Some(y)) = (var_of(&p.equations[i].0), var_of(&p.equations[i].1)) else {
                return false;
            };
            let rest = p.vars_except(&[i]);
            x != y && rest.contains(x) && rest.contains(y)
        }
        (UnifRule::Swap, &[i]) => !p.equations[i].0.is_var() && p.equations[i].1.is_var(),
        (UnifRule::Merge, &[i, j]) => {
            if i == j {
                return false;
            }
            let (x1, s) = &p.equations[i];
            let (x2, t) = &p.equations[j];
            x1.is_var() && x1 == x2 && !s.is_var() && !t.is_var() && s.size() <= t.size()
        }
        (UnifRule::Replace, &[i]) => {
            let (Some(x), s) = (var_of(&p.equations[i].0), &p.equations[i].1) else {
                return false;
            };
            !s.is_var() && !s.contains_var(x) && p.vars_except(&[i]).contains(x)
        }
        (UnifRule::Merep, &[i, j]) => {
            if i == j {
                return false;
            }
            // y = x ∧ x = s
            let (Some(y), Some(x)) = (var_of(&p.equations[i].0), var_of(&p.equations[i].1)) else {
                return false;
            };
            let (x2, s) = &p.equations[j];
            if x2.as_var() != Some(x) || s.is_var() || !s.contains_var(x) {
                return false;
            }
            if s.contains_var(y) || p.vars_except(&[i, j]).contains(y) {
                return false;
            }
            UnifRule::ALL
                .iter()
                .filter(|r| **r != UnifRule::Merep)
                .all(|r| instances(p, *r).is_empty())
        }
        _ => false,
    }
}

/// All handles at which `rule` applies, in queue order.
pub fn instances(p: &UnifProblem, rule: UnifRule) -> Vec<Vec<usize>> {
    let n = p.equations.len();
    let pairs = matches!(rule, UnifRule::Merge | UnifRule::Merep);
    let mut out = Vec::new();
    for i in 0..n {
        if pairs {
            for j in 0..n {
                if applies(p, rule, &[i, j]) {
                    out.push(vec![i, j]);
                }
            }
        } else if applies(p, rule, &[i]) {
            out.push(vec![i]);
        }
    }
    out
}

/// Every applicable (rule, handle) pair.
pub fn all_instances(p: &UnifProblem) -> Vec<(UnifRule, Vec<usize>)> {
    UnifRule::ALL
        .iter()
        .flat_map(|r| instances(p, *r).into_iter().map(move |t| (*r, t)))
        .collect()
}

/// Applies one rule at the given equation handle(s).
///
/// Single-equation rules take one handle. Merge takes `[x=s, x=t]` and
/// Merep takes `[y=x, x=s]`.
pub fn apply_rule(p: &UnifProblem, rule: UnifRule, target: &[usize]) -> Result<UnifProblem, UnifyError> {
    if !applies(p, rule, target) {
        return Err(UnifyError::NotApplicable {
            rule,
            target: target.to_vec(),
        });
    }
    let eqs = &p.equations;
    Ok(match (rule, target) {
        (UnifRule::Remove, &[i]) => {
            let mut e = eqs.clone();
            e.remove(i);
            p.with_equations(e)
        }
        (UnifRule::Decomp, &[i]) => {
            let (s, t) = &eqs[i];
            let mut e: Vec<_> = eqs[..i].to_vec();
            e.extend(s.args().iter().cloned().zip(t.args().iter().cloned()));
            e.extend_from_slice(&eqs[i + 1..]);
            p.with_equations(e)
        }
        (UnifRule::Conflict, _) => {
            let mut b = UnifProblem::bottom();
            b.origin = p.origin.clone();
            b
        }
        (UnifRule::Choose, &[i]) | (UnifRule::Swap, &[i]) => {
            let mut e = eqs.clone();
            let (s, t) = e[i].clone();
            e[i] = (t, s);
            p.with_equations(e)
        }
        (UnifRule::Coalesce, &[i]) | (UnifRule::Replace, &[i]) => {
            let (x, s) = &eqs[i];
            let x = x.as_var().expect("checked").clone();
            p.with_equations(p.substitute_except(&[i], &x, s))
        }
        (UnifRule::Merge, &[i, j]) => {
            let mut e = eqs.clone();
            e[j] = (eqs[i].1.clone(), eqs[j].1.clone());
            p.with_equations(e)
        }
        (UnifRule::Merep, &[i, j]) => {
            let mut e = eqs.clone();
            e[i] = (eqs[i].0.clone(), eqs[j].1.clone());
            p.with_equations(e)
        }
        _ => unreachable!("arity checked by applies"),
    })
}

/// The rule the deterministic strategy fires next, if any.
pub fn next_step(p: &UnifProblem) -> Option<(UnifRule, Vec<usize>)> {
    for rule in UnifRule::PRIORITY {
        if let Some(t) = instances(p, rule).into_iter().next() {
            return Some((rule, t));
        }
    }
    None
}

/// One step of a derivation.
#[derive(Clone, Debug)]
pub struct UnifStep {
    pub rule: UnifRule,
    pub target: Vec<usize>,
    pub result: UnifProblem,
}

/// The full derivation under the deterministic strategy.
pub fn derivation(p: &UnifProblem) -> Vec<UnifStep> {
    let mut out = Vec::new();
    let mut cur = p.clone();
    while let Some((rule, target)) = next_step(&cur) {
        let next = apply_rule(&cur, rule, &target).expect("strategy picks applicable instances");
        out.push(UnifStep {
            rule,
            target,
            result: next.clone(),
        });
        cur = next;
    }
    out
}

/// Normal form under the deterministic strategy.
pub fn normalize(p: &UnifProblem) -> UnifProblem {
    let mut cur = p.clone();
    while let Some((rule, target)) = next_step(&cur) {
        cur = apply_rule(&cur, rule, &target).expect("strategy picks applicable instances");
    }
    cur
}

/// The termination interpretation ⟨nu, |P|, nvre, nvle⟩, compared
/// lexicographically with the multiset component under the multiset order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    pub nu: usize,
    /// `max(|s|,|t|)` per equation, sorted descending.
    pub sizes: Vec<usize>,
    pub nvre: usize,
    pub nvle: usize,
}

impl Ord for Measure {
    fn cmp(&self, other: &Self) -> Ordering {
        // Descending-sorted lexicographic comparison is the multiset order
        // over a total order.
        self.nu
            .cmp(&other.nu)
            .then_with(|| self.sizes.cmp(&other.sizes))
            .then_with(|| self.nvre.cmp(&other.nvre))
            .then_with(|| self.nvle.cmp(&other.nvle))
    }
}

impl PartialOrd for Measure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {:?}, {}, {}⟩", self.nu, self.sizes, self.nvre, self.nvle)
    }
}

/// Whether `x` is solved: some equation `x = s` has `x` nowhere else.
fn is_solved(p: &UnifProblem, x: &Var) -> bool {
    p.equations.iter().enumerate().any(|(k, (l, r))| {
        l.as_var() == Some(x) && !r.contains_var(x) && !p.vars_except(&[k]).contains(x)
    })
}

pub fn measure(p: &UnifProblem) -> Measure {
    if p.failed {
        return Measure {
            nu: 0,
            sizes: Vec::new(),
            nvre: 0,
            nvle: 0,
        };
    }
    let nu = p.vars().iter().filter(|x| !is_solved(p, x)).count();
    let mut sizes: Vec<usize> = p.equations.iter().map(|(s, t)| s.size().max(t.size())).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let nvre = p.equations.iter().filter(|(s, t)| t.is_var() && !s.is_var()).count();
    let nvle = p.equations.iter().filter(|(s, t)| s.is_var() && !t.is_var()).count();
    Measure { nu, sizes, nvre, nvle }
}

/// Number of equations with variables on both sides.
pub fn var_var_count(p: &UnifProblem) -> usize {
    p.equations.iter().filter(|(s, t)| s.is_var() && t.is_var()).count()
}

/// A solved form: finite equations, cyclic equations and parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvedForm {
    #[serde(serialize_with = "ser_eqs")]
    pub finite: Vec<(Var, Term)>,
    #[serde(serialize_with = "ser_eqs")]
    pub cyclic: Vec<(Var, Term)>,
    #[serde(serialize_with = "ser_vars")]
    pub parameters: BTreeSet<Var>,
}

fn ser_eqs<S: serde::Serializer>(eqs: &[(Var, Term)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(eqs.iter().map(|(x, t)| [x.to_string(), t.to_string()]))
}

fn ser_vars<S: serde::Serializer>(vs: &BTreeSet<Var>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(vs.iter().map(|v| v.to_string()))
}

impl SolvedForm {
    /// Classifies an irreducible problem. `source_vars` is `Var(P)` of the
    /// problem the derivation started from.
    pub fn classify(normal: &UnifProblem, source_vars: &BTreeSet<Var>) -> Option<SolvedForm> {
        if normal.failed {
            return None;
        }
        let mut lhs = BTreeSet::new();
        let mut eqs = Vec::new();
        for (l, r) in &normal.equations {
            let x = l.as_var()?.clone();
            lhs.insert(x.clone());
            eqs.push((x, r.clone()));
        }
        let mut all_vars = source_vars.clone();
        all_vars.extend(normal.vars());
        let parameters: BTreeSet<Var> = all_vars.difference(&lhs).cloned().collect();
        let (finite, cyclic) = eqs
            .into_iter()
            .partition(|(_, u): &(Var, Term)| u.vars().is_subset(&parameters));
        Some(SolvedForm {
            finite,
            cyclic,
            parameters,
        })
    }

    pub fn is_tree(&self) -> bool {
        self.cyclic.is_empty()
    }

    pub fn finite_vars(&self) -> BTreeSet<Var> {
        self.finite.iter().map(|(x, _)| x.clone()).collect()
    }

    pub fn cyclic_vars(&self) -> BTreeSet<Var> {
        self.cyclic.iter().map(|(y, _)| y.clone()).collect()
    }

    /// `{x⃗ ↦ u⃗}`.
    pub fn eta(&self) -> Substitution {
        Substitution::from_pairs(self.finite.iter().cloned())
    }

    pub fn as_problem(&self) -> UnifProblem {
        UnifProblem::new(
            self.finite
                .iter()
                .chain(&self.cyclic)
                .map(|(x, t)| (Term::Var(x.clone()), t.clone()))
                .collect(),
        )
    }

    /// Violated solved-form clauses with respect to the source problem's
    /// variables; empty iff every clause holds.
    pub fn violations(&self, source_vars: &BTreeSet<Var>) -> Vec<String> {
        let mut out = Vec::new();
        let cyc = self.cyclic_vars();
        let mut lhs = BTreeSet::new();
        for (x, _) in self.finite.iter().chain(&self.cyclic) {
            if !lhs.insert(x.clone()) {
                out.push(format!("(ii) variable {x} heads two equations"));
            }
        }
        let mut all = source_vars.clone();
        for (x, t) in self.finite.iter().chain(&self.cyclic) {
            all.insert(x.clone());
            t.collect_vars(&mut all);
        }
        let params: BTreeSet<Var> = all.difference(&lhs).cloned().collect();
        if params != self.parameters {
            out.push("(i) parameters differ from Var(P) minus left-hand sides".into());
        }
        for (x, u) in &self.finite {
            if !u.vars().is_subset(&self.parameters) {
                out.push(format!("(iii) {x} = {u} mentions a non-parameter"));
            }
        }
        for (y, v) in &self.cyclic {
            let vv = v.vars();
            let allowed: BTreeSet<Var> = self.parameters.union(&cyc).cloned().collect();
            if !vv.is_subset(&allowed) {
                out.push(format!("(iv) {y} = {v} mentions a finite variable"));
            }
            if vv.is_disjoint(&cyc) {
                out.push(format!("(iv) {y} = {v} mentions no cyclic variable"));
            }
            if v.is_var() {
                out.push(format!("(iv) {y} = {v} has a variable right-hand side"));
            }
        }
        out
    }
}

impl fmt::Display for SolvedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |eqs: &[(Var, Term)]| {
            if eqs.is_empty() {
                "∅".to_string()
            } else {
                eqs.iter()
                    .map(|(x, t)| format!("{x} = {t}"))
                    .collect::<Vec<_>>()
                    .join(" ∧ ")
            }
        };
        let params = if self.parameters.is_empty() {
            "∅".to_string()
        } else {
            self.parameters
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "finite: {}; cyclic: {}; parameters: {}",
            show(&self.finite),
            show(&self.cyclic),
            params
        )
    }
}

/// Solves `p` with the deterministic strategy; `None` means ⊥.
pub fn solve(p: &UnifProblem) -> Option<SolvedForm> {
    let nf = normalize(p);
    let sf = SolvedForm::classify(&nf, &p.vars());
    debug_assert!(sf.as_ref().is_none_or(|s| s.violations(&p.vars()).is_empty()));
    sf
}

/// Most general finite unifier of `s = t`, if one exists.
pub fn mgu(s: &Term, t: &Term) -> Option<Substitution> {
    mgu_all(&[(s.clone(), t.clone())])
}

/// Most general finite unifier of a conjunction.
pub fn mgu_all(eqs: &[(Term, Term)]) -> Option<Substitution> {
    let sf = solve(&UnifProblem::new(eqs.to_vec()))?;
    sf.is_tree().then(|| sf.eta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term_with_vars;

    fn t(s: &str) -> Term {
        parse_term_with_vars(s, &["x", "y", "z", "w"]).unwrap()
    }

    fn eq(s: &str, u: &str) -> (Term, Term) {
        (t(s), t(u))
    }

    #[test]
    fn nkh_derivation_matches_expected_steps() {
        let p = UnifProblem::single(t("f(x,x)"), t("f(y,c(y))"));
        let d = derivation(&p);
        let rules: Vec<_> = d.iter().map(|s| s.rule).collect();
        assert_eq!(rules, vec![UnifRule::Decomp, UnifRule::Coalesce, UnifRule::Merep]);
        assert_eq!(d[0].result.equations(), &[eq("x", "y"), eq("x", "c(y)")]);
        assert_eq!(d[1].result.equations(), &[eq("x", "y"), eq("y", "c(y)")]);
        assert_eq!(d[2].result.equations(), &[eq("x", "c(y)"), eq("y", "c(y)")]);
    }

    #[test]
    fn nkh_alternative_derivation() {
        let p = UnifProblem::single(t("f(x,x)"), t("f(y,c(y))"));
        let p = apply_rule(&p, UnifRule::Decomp, &[0]).unwrap();
        // Replace with x = c(y) rewrites the other equation to c(y) = y.
        let p = apply_rule(&p, UnifRule::Replace, &[1]).unwrap();
        assert_eq!(p.equations(), &[eq("c(y)", "y"), eq("x", "c(y)")]);
        let p = apply_rule(&p, UnifRule::Swap, &[0]).unwrap();
        assert_eq!(p.equations(), &[eq("y", "c(y)"), eq("x", "c(y)")]);
        assert!(all_instances(&p).is_empty());
    }

    #[test]
    fn nkh_solved_form() {
        let sf = solve(&UnifProblem::single(t("f(x,x)"), t("f(y,c(y))"))).unwrap();
        assert!(sf.finite.is_empty());
        assert_eq!(sf.cyclic, vec![(Var::new("x"), t("c(y)")), (Var::new("y"), t("c(y)"))]);
        assert!(sf.parameters.is_empty());
    }

    #[test]
    fn example_with_finite_and_cyclic_parts() {
        let p = UnifProblem::single(t("f(x,z,z)"), t("f(a,y,c(y))"));
        let sf = solve(&p).unwrap();
        assert_eq!(sf.finite, vec![(Var::new("x"), t("a"))]);
        assert_eq!(sf.cyclic.len(), 2);
        assert!(sf.violations(&p.vars()).is_empty());
        assert!(sf.cyclic_vars().contains(&Var::new("y")) && sf.cyclic_vars().contains(&Var::new("z")));
    }

    #[test]
    fn conflict_is_bottom() {
        let p = UnifProblem::single(t("f(a)"), t("g(a)"));
        assert!(apply_rule(&p, UnifRule::Conflict, &[0]).unwrap().is_bottom());
        assert!(solve(&p).is_none());
        assert_eq!(measure(&UnifProblem::bottom()).sizes, Vec::<usize>::new());
    }

    #[test]
    fn not_applicable_is_reported() {
        let p = UnifProblem::single(t("f(a)"), t("f(b)"));
        assert!(apply_rule(&p, UnifRule::Conflict, &[0]).is_err());
        assert!(apply_rule(&p, UnifRule::Remove, &[3]).is_err());
    }

    #[test]
    fn merep_waits_for_other_rules() {
        // x = y ∧ y = c(y) ∧ f(a) = f(a): Remove must fire first.
        let p = UnifProblem::new(vec![eq("x", "y"), eq("y", "c(y)"), eq("f(a)", "f(a)")]);
        assert!(instances(&p, UnifRule::Merep).is_empty());
        let p = apply_rule(&p, UnifRule::Remove, &[2]).unwrap();
        assert_eq!(instances(&p, UnifRule::Merep), vec![vec![0, 1]]);
    }

    #[test]
    fn merge_requires_non_variable_sides() {
        let p = UnifProblem::new(vec![eq("x", "f(a)"), eq("x", "f(y)")]);
        assert_eq!(instances(&p, UnifRule::Merge), vec![vec![0, 1], vec![1, 0]]);
        let q = apply_rule(&p, UnifRule::Merge, &[0, 1]).unwrap();
        assert_eq!(q.equations(), &[eq("x", "f(a)"), eq("f(a)", "f(y)")]);
        assert!(measure(&q) < measure(&p));
    }

    #[test]
    fn finite_mgu() {
        let s = mgu(&t("f(x,g(y))"), &t("f(a,z)")).unwrap();
        assert_eq!(s.apply(&t("f(x,g(y))")), s.apply(&t("f(a,z)")));
        assert!(mgu(&t("x"), &t("c(x)")).is_none());
        assert!(mgu(&t("a"), &t("b")).is_none());
        assert!(mgu(&t("x"), &t("x")).unwrap().is_empty());
    }

    #[test]
    fn removal_keeps_variable_as_parameter() {
        let p = UnifProblem::single(t("f(x)"), t("f(x)"));
        let sf = solve(&p).unwrap();
        assert!(sf.finite.is_empty() && sf.cyclic.is_empty());
        assert_eq!(sf.parameters, [Var::new("x")].into_iter().collect());
    }

    #[test]
    fn measure_decreases_on_nkh() {
        let mut p = UnifProblem::single(t("f(x,x)"), t("f(y,c(y))"));
        while let Some((rule, target)) = next_step(&p) {
            let q = apply_rule(&p, rule, &target).unwrap();
            if rule == UnifRule::Merep {
                assert!(var_var_count(&q) < var_var_count(&p));
            } else {
                assert!(measure(&q) < measure(&p), "{rule}: {p} → {q}");
            }
            p = q;
        }
    }
}
