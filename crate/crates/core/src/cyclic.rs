//! Cyclic rewrite systems and cyclic unifiers.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::congruence::CongruenceClosure;
use crate::error::AnalysisError;
use crate::term::{match_into, Substitution, Term, Var};
use crate::unify::{solve, SolvedForm, UnifProblem};

/// Ground rules `y → v` whose left-hand sides are variables read as constants.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CyclicRewriteSystem {
    pub rules: Vec<(Var, Term)>,
}

impl CyclicRewriteSystem {
    pub fn new(rules: Vec<(Var, Term)>) -> Self {
        CyclicRewriteSystem { rules }
    }

    pub fn from_solved(sf: &SolvedForm) -> Self {
        Self::new(sf.cyclic.clone())
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn lhs_vars(&self) -> BTreeSet<Var> {
        self.rules.iter().map(|(y, _)| y.clone()).collect()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = self.lhs_vars();
        for (_, v) in &self.rules {
            v.collect_vars(&mut out);
        }
        out
    }

    pub fn equations(&self) -> Vec<(Term, Term)> {
        self.rules
            .iter()
            .map(|(y, v)| (Term::Var(y.clone()), v.clone()))
            .collect()
    }

    /// `Rη`: right-hand sides instantiated by `eta`. Left-hand sides are
    /// kept, as they are constants.
    pub fn instantiate(&self, eta: &Substitution) -> Vec<(Term, Term)> {
        self.rules
            .iter()
            .map(|(y, v)| (Term::Var(y.clone()), eta.apply(v)))
            .collect()
    }
}

impl fmt::Display for CyclicRewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (y, v)) in self.rules.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{y}→{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for CyclicRewriteSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.rules.iter().map(|(y, v)| [y.to_string(), v.to_string()]))
    }
}

/// Left-hand sides pairwise distinct, so the ground system has no overlaps.
pub fn crs_church_rosser_check(rs: &CyclicRewriteSystem) -> bool {
    let mut seen = BTreeSet::new();
    rs.rules.iter().all(|(y, _)| seen.insert(y.clone()))
}

/// A pair `⟨η, R⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicUnifier {
    #[serde(serialize_with = "ser_subst")]
    pub eta: Substitution,
    pub rs: CyclicRewriteSystem,
}

fn ser_subst<S: serde::Serializer>(sub: &Substitution, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(sub.iter().map(|(x, t)| (x.to_string(), t.to_string())))
}

impl CyclicUnifier {
    /// The ground equations `Rη` used for congruence tests.
    pub fn instantiated_equations(&self) -> Vec<(Term, Term)> {
        self.rs.instantiate(&self.eta)
    }
}

impl fmt::Display for CyclicUnifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.eta, self.rs)
    }
}

/// `⟨{x⃗ ↦ u⃗}, {y⃗ → v⃗}⟩`.
pub fn canonical_cyclic_unifier(sf: &SolvedForm) -> CyclicUnifier {
    CyclicUnifier {
        eta: sf.eta(),
        rs: CyclicRewriteSystem::from_solved(sf),
    }
}

/// Outcome of the solution-set equality clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SolutionClause {
    /// Every rational-tree solution of the problem satisfies every rule.
    Holds,
    Fails(String),
}

/// Per-clause verification result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub domain_range: Vec<String>,
    pub solutions: SolutionClause,
    pub congruence: Vec<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.domain_range.is_empty() && self.congruence.is_empty() && self.solutions == SolutionClause::Holds
    }

    /// Every violated clause, tagged (i), (ii) or (iii).
    pub fn violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self.domain_range.iter().map(|m| format!("(i) {m}")).collect();
        if let SolutionClause::Fails(m) = &self.solutions {
            out.push(format!("(ii) {m}"));
        }
        out.extend(self.congruence.iter().map(|m| format!("(iii) {m}")));
        out
    }
}

/// Equality of the rational trees denoted by `a` and `b` when each
/// left-hand side of `sf` is bound to its right-hand side and parameters
/// stay generic.
fn rational_equal(a: &Term, b: &Term, sf: &SolvedForm) -> bool {
    let bind: BTreeMap<Var, Term> = sf.finite.iter().chain(&sf.cyclic).cloned().collect();
    let deref = |t: &Term| -> Term {
        let mut t = t.clone();
        for _ in 0..=bind.len() {
            match t.as_var().and_then(|v| bind.get(v)) {
                Some(u) => t = u.clone(),
                None => break,
            }
        }
        t
    };
    let mut assumed: HashSet<(Term, Term)> = HashSet::new();
    let mut todo = vec![(a.clone(), b.clone())];
    while let Some((a, b)) = todo.pop() {
        let (a, b) = (deref(&a), deref(&b));
        if a == b || !assumed.insert((a.clone(), b.clone())) {
            continue;
        }
        match (&a, &b) {
            (Term::App(f, xs), Term::App(g, ys)) if f == g => {
                todo.extend(xs.iter().cloned().zip(ys.iter().cloned()));
            }
            _ => return false,
        }
    }
    true
}

/// Checks a candidate `⟨η, R⟩` against a problem.
///
/// Clause (ii) is decided over rational trees: the problem is solved, and
/// each rule `y → v` must denote equal trees under the solved form with
/// parameters left free.
pub fn verify_cyclic_unifier(cu: &CyclicUnifier, p: &UnifProblem) -> Verification {
    let pvars = p.vars();
    let ys = cu.rs.lhs_vars();
    let mut domain_range = Vec::new();
    let dom = cu.eta.domain();
    let ran = cu.eta.range_vars();
    if let Some(v) = dom.iter().find(|v| !pvars.contains(*v) || ys.contains(*v)) {
        domain_range.push(format!("{v} ∈ Dom(η) lies outside Var(P) minus cyclic variables"));
    }
    if let Some(v) = ran.intersection(&ys).next() {
        domain_range.push(format!("cyclic variable {v} occurs in Ran(η)"));
    }
    if let Some(v) = ran.intersection(&dom).next() {
        domain_range.push(format!("{v} occurs in both Dom(η) and Ran(η)"));
    }
    if !crs_church_rosser_check(&cu.rs) {
        domain_range.push("cyclic rules have repeated left-hand sides".into());
    }

    let solutions = if p.is_bottom() {
        SolutionClause::Holds
    } else {
        match solve(p) {
            None => SolutionClause::Holds,
            Some(sf) => match cu
                .rs
                .rules
                .iter()
                .find(|(y, v)| !rational_equal(&Term::Var(y.clone()), v, &sf))
            {
                None => SolutionClause::Holds,
                Some((y, v)) => SolutionClause::Fails(format!("{y} = {v} is not implied by the problem")),
            },
        }
    };

    let mut congruence = Vec::new();
    if p.is_bottom() {
        congruence.push("the problem is ⊥".into());
    } else {
        let mut cc = CongruenceClosure::new(&cu.instantiated_equations());
        for (u, v) in p.equations() {
            let (ue, ve) = (cu.eta.apply(u), cu.eta.apply(v));
            if !cc.congruent(&ue, &ve) {
                congruence.push(format!("{ue} ≠cc {ve}"));
            }
        }
    }
    Verification {
        domain_range,
        solutions,
        congruence,
    }
}

/// Returns `ρ` with `x·candidate = x·η_S·ρ` for every variable of `p`.
pub fn instance_of(
    candidate: &CyclicUnifier,
    canonical: &CyclicUnifier,
    p: &UnifProblem,
) -> Result<Substitution, AnalysisError> {
    if candidate.rs != canonical.rs {
        return Err(AnalysisError::NotAnInstance("cyclic rewrite systems differ".into()));
    }
    let mut binding = BTreeMap::new();
    for v in p.vars() {
        let x = Term::Var(v.clone());
        let pattern = canonical.eta.apply(&x);
        let subject = candidate.eta.apply(&x);
        if !match_into(&pattern, &subject, &mut binding) {
            return Err(AnalysisError::NotAnInstance(format!(
                "{v}: {subject} is not an instance of {pattern}"
            )));
        }
    }
    Ok(Substitution::from_pairs(binding))
}
