//! First-order terms, positions, substitutions and linearization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::TermError;

/// A function symbol together with its arity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Symbol {
    name: Arc<str>,
    arity: usize,
}

impl Symbol {
    pub fn new(name: &str, arity: usize) -> Self {
        Symbol {
            name: Arc::from(name),
            arity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// A variable identifier.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite first-order term.
///
/// Equality, ordering and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(Var),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(Symbol::new(name, 0), Vec::new())
    }

    /// Builds `name(args..)`; the arity is taken from `args`.
    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Symbol::new(name, args.len()), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    pub fn head(&self) -> Option<&Symbol> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(f),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Node count, variables included.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    /// Variables in order of first occurrence (left to right, depth first).
    pub fn vars_in_order(&self) -> Vec<Var> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.visit_vars(&mut |v| {
            if seen.insert(v.clone()) {
                out.push(v.clone());
            }
        });
        out
    }

    fn visit_vars(&self, f: &mut impl FnMut(&Var)) {
        match self {
            Term::Var(v) => f(v),
            Term::App(_, args) => args.iter().for_each(|a| a.visit_vars(f)),
        }
    }

    pub fn is_linear(&self) -> bool {
        let mut seen = BTreeSet::new();
        let mut linear = true;
        self.visit_vars(&mut |v| linear &= seen.insert(v.clone()));
        linear
    }

    /// Symbols occurring in the term.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    pub fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        if let Term::App(f, args) = self {
            out.insert(f.clone());
            args.iter().for_each(|a| a.collect_symbols(out));
        }
    }

    /// `t|_p`.
    pub fn subterm_at(&self, p: &Position) -> Result<&Term, TermError> {
        let mut t = self;
        for &i in p.steps() {
            match t {
                Term::App(_, args) if i >= 1 && i <= args.len() => t = &args[i - 1],
                _ => return Err(TermError::InvalidPosition(p.clone())),
            }
        }
        Ok(t)
    }

    /// `t[u]_p`.
    pub fn replace_at(&self, p: &Position, u: Term) -> Result<Term, TermError> {
        fn go(t: &Term, steps: &[usize], u: Term, p: &Position) -> Result<Term, TermError> {
            match steps.split_first() {
                None => Ok(u),
                Some((&i, rest)) => match t {
                    Term::App(f, args) if i >= 1 && i <= args.len() => {
                        let mut args = args.clone();
                        args[i - 1] = go(&args[i - 1], rest, u, p)?;
                        Ok(Term::App(f.clone(), args))
                    }
                    _ => Err(TermError::InvalidPosition(p.clone())),
                },
            }
        }
        go(self, p.steps(), u, p)
    }

    /// All positions, in pre-order.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk_positions(&mut path, &mut |p, _| out.push(Position(p.to_vec())));
        out
    }

    /// Non-variable positions, in pre-order.
    pub fn fpos(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk_positions(&mut path, &mut |p, t| {
            if !t.is_var() {
                out.push(Position(p.to_vec()))
            }
        });
        out
    }

    /// Positions holding a variable, in pre-order.
    pub fn var_positions(&self) -> Vec<(Position, Var)> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk_positions(&mut path, &mut |p, t| {
            if let Term::Var(v) = t {
                out.push((Position(p.to_vec()), v.clone()))
            }
        });
        out
    }

    fn walk_positions(&self, path: &mut Vec<usize>, f: &mut impl FnMut(&[usize], &Term)) {
        f(path, self);
        if let Term::App(_, args) = self {
            for (i, a) in args.iter().enumerate() {
                path.push(i + 1);
                a.walk_positions(path, f);
                path.pop();
            }
        }
    }

    /// All subterms (with repetitions), in pre-order.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        fn go<'a>(t: &'a Term, out: &mut Vec<&'a Term>) {
            out.push(t);
            t.args().iter().for_each(|a| go(a, out));
        }
        go(self, &mut out);
        out
    }

    /// Applies a variable renaming given as a function.
    pub fn rename(&self, f: &impl Fn(&Var) -> Var) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(v)),
            Term::App(s, args) => Term::App(s.clone(), args.iter().map(|a| a.rename(f)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(s, args) => {
                f.write_str(s.name())?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// A position: a path of 1-based argument indexes from the root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Position(Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn new(steps: Vec<usize>) -> Self {
        Position(steps)
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Position) -> Position {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Position(v)
    }

    pub fn child(&self, i: usize) -> Position {
        let mut v = self.0.clone();
        v.push(i);
        Position(v)
    }

    /// `self ≥ other` in the prefix order (further from the root is bigger).
    pub fn is_below_or_at(&self, other: &Position) -> bool {
        self.0.starts_with(&other.0)
    }

    pub fn is_strictly_below(&self, other: &Position) -> bool {
        self.0.len() > other.0.len() && self.0.starts_with(&other.0)
    }

    /// `self # other`.
    pub fn is_disjoint(&self, other: &Position) -> bool {
        !self.is_below_or_at(other) && !other.is_below_or_at(self)
    }

    /// The remainder `q` with `self = prefix · q`.
    pub fn strip_prefix(&self, prefix: &Position) -> Option<Position> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|rest| Position(rest.to_vec()))
    }

    /// Maximal elements of a set of positions.
    pub fn max_set(set: &[Position]) -> Vec<Position> {
        set.iter()
            .filter(|p| !set.iter().any(|q| q.is_strictly_below(p)))
            .cloned()
            .collect()
    }

    /// `P ≥ Q` on finite sets: every `p ∈ P` is at or below some maximal `q ∈ Q`.
    pub fn set_ge(ps: &[Position], qs: &[Position]) -> bool {
        let maxq = Position::max_set(qs);
        ps.iter().all(|p| maxq.iter().any(|q| p.is_below_or_at(q)))
    }

    /// `P > Q` on finite sets.
    pub fn set_gt(ps: &[Position], qs: &[Position]) -> bool {
        let maxq = Position::max_set(qs);
        ps.iter().all(|p| maxq.iter().any(|q| p.is_strictly_below(q)))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Λ");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Position {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "Λ" || s.eq_ignore_ascii_case("root") || s == "e" {
            return Ok(Position::root());
        }
        s.split(['.', '·'])
            .map(|part| match part.trim().parse::<usize>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(TermError::BadPosition(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Position)
    }
}

/// A finite substitution. Identity bindings are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Substitution {
    bindings: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Term)>) -> Self {
        let mut s = Self::new();
        for (v, t) in pairs {
            s.insert(v, t);
        }
        s
    }

    /// Binds `v ↦ t`; a binding `v ↦ v` removes `v` from the domain.
    pub fn insert(&mut self, v: Var, t: Term) {
        if t.as_var() == Some(&v) {
            self.bindings.remove(&v);
        } else {
            self.bindings.insert(v, t);
        }
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.bindings.get(v)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> BTreeSet<Var> {
        self.bindings.keys().cloned().collect()
    }

    pub fn range_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.bindings.values().for_each(|t| t.collect_vars(&mut out));
        out
    }

    pub fn apply(&self, t: &Term) -> Term {
        if self.bindings.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => self.bindings.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    /// The substitution `self · other`: first `self`, then `other`.
    pub fn then(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.bindings {
            out.insert(v.clone(), other.apply(t));
        }
        for (v, t) in &other.bindings {
            if !self.bindings.contains_key(v) {
                out.insert(v.clone(), t.clone());
            }
        }
        out
    }

    pub fn restrict(&self, vars: &BTreeSet<Var>) -> Substitution {
        Substitution::from_pairs(
            self.bindings
                .iter()
                .filter(|(v, _)| vars.contains(*v))
                .map(|(v, t)| (v.clone(), t.clone())),
        )
    }

    /// True when every binding maps to a variable and the map is injective.
    pub fn is_renaming(&self) -> bool {
        let mut targets = BTreeSet::new();
        self.bindings
            .values()
            .all(|t| t.as_var().is_some_and(|v| targets.insert(v.clone())))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}↦{t}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<(Var, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        Substitution::from_pairs(iter)
    }
}

/// A linearized term: every variable occurrence renamed apart, with the
/// mapping back to the original variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearizedTerm {
    pub term: Term,
    pub origin: BTreeMap<Var, Var>,
}

impl LinearizedTerm {
    /// Erases the occurrence tags, recovering the source term.
    pub fn erase(&self) -> Term {
        self.term
            .rename(&|v| self.origin.get(v).cloned().unwrap_or_else(|| v.clone()))
    }

    /// Linearized variables standing for `x`, in occurrence order.
    pub fn occurrences_of(&self, x: &Var) -> Vec<(Position, Var)> {
        self.term
            .var_positions()
            .into_iter()
            .filter(|(_, v)| self.origin.get(v) == Some(x))
            .collect()
    }
}

/// Renames variable occurrences apart.
///
/// With an empty salt, a variable occurring once keeps its name and a
/// variable `x` occurring `n > 1` times becomes `x^1 .. x^n`. A non-empty
/// salt renames every occurrence to `x^<salt>k`, so linearizations made with
/// different salts never share variables.
pub fn linearize(t: &Term, salt: &str) -> LinearizedTerm {
    let mut counts: BTreeMap<Var, usize> = BTreeMap::new();
    t.visit_vars(&mut |v| *counts.entry(v.clone()).or_default() += 1);
    let mut seen: BTreeMap<Var, usize> = BTreeMap::new();
    let mut origin = BTreeMap::new();
    fn go(
        t: &Term,
        salt: &str,
        counts: &BTreeMap<Var, usize>,
        seen: &mut BTreeMap<Var, usize>,
        origin: &mut BTreeMap<Var, Var>,
    ) -> Term {
        match t {
            Term::Var(v) => {
                let k = seen.entry(v.clone()).or_default();
                *k += 1;
                let renamed = if salt.is_empty() && counts[v] == 1 {
                    v.clone()
                } else {
                    Var::new(&format!("{}^{}{}", v.name(), salt, k))
                };
                origin.insert(renamed.clone(), v.clone());
                Term::Var(renamed)
            }
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter()
                    .map(|a| go(a, salt, counts, seen, origin))
                    .collect(),
            ),
        }
    }
    let term = go(t, salt, &counts, &mut seen, &mut origin);
    LinearizedTerm { term, origin }
}

/// One-sided matching: returns `σ` with `pattern·σ = subject`.
///
/// Variables of `subject` are treated as constants. Non-linear pattern
/// variables must match identical subterms.
pub fn match_term(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut binding: BTreeMap<Var, Term> = BTreeMap::new();
    if match_into(pattern, subject, &mut binding) {
        Some(Substitution::from_pairs(binding))
    } else {
        None
    }
}

pub(crate) fn match_into(pattern: &Term, subject: &Term, binding: &mut BTreeMap<Var, Term>) -> bool {
    match pattern {
        Term::Var(v) => match binding.get(v) {
            Some(bound) => bound == subject,
            None => {
                binding.insert(v.clone(), subject.clone());
                true
            }
        },
        Term::App(f, pargs) => match subject {
            Term::App(g, sargs) if f == g => pargs
                .iter()
                .zip(sargs)
                .all(|(p, s)| match_into(p, s, binding)),
            _ => false,
        },
    }
}

/// Renames the variables of `t` so that none lies in `avoid`, by appending
/// primes. Returns the renamed term and the renaming used.
pub fn rename_apart(t: &[&Term], avoid: &BTreeSet<Var>) -> (Vec<Term>, Substitution) {
    let mut vars = BTreeSet::new();
    t.iter().for_each(|x| x.collect_vars(&mut vars));
    let mut taken: BTreeSet<Var> = avoid.union(&vars).cloned().collect();
    let mut ren = Substitution::new();
    for v in &vars {
        if avoid.contains(v) {
            let mut name = format!("{}'", v.name());
            while taken.contains(&Var::new(&name)) {
                name.push('\'');
            }
            let fresh = Var::new(&name);
            taken.insert(fresh.clone());
            ren.insert(v.clone(), Term::Var(fresh));
        }
    }
    (t.iter().map(|x| ren.apply(x)).collect(), ren)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term_with_vars;

    fn t(s: &str) -> Term {
        parse_term_with_vars(s, &["x", "y", "z"]).unwrap()
    }

    fn pos(p: &[usize]) -> Position {
        Position::new(p.to_vec())
    }

    #[test]
    fn subterm_examples() {
        let u = t("f(a,c(b))");
        assert_eq!(u.subterm_at(&Position::root()).unwrap(), &u);
        assert_eq!(u.subterm_at(&pos(&[2, 1])).unwrap(), &t("b"));
        assert_eq!(t("f(x,c(x))").subterm_at(&pos(&[2])).unwrap(), &t("c(x)"));
        assert!(matches!(
            u.subterm_at(&pos(&[3])),
            Err(TermError::InvalidPosition(_))
        ));
        assert!(u.subterm_at(&pos(&[1, 1])).is_err());
    }

    #[test]
    fn replace_examples() {
        assert_eq!(t("f(a,b)").replace_at(&pos(&[1]), t("c(a)")).unwrap(), t("f(c(a),b)"));
        assert_eq!(t("x").replace_at(&Position::root(), t("g")).unwrap(), t("g"));
        assert_eq!(t("f(x,c(x))").replace_at(&pos(&[2]), t("y")).unwrap(), t("f(x,y)"));
        assert!(t("a").replace_at(&pos(&[1]), t("b")).is_err());
    }

    #[test]
    fn fpos_examples() {
        assert_eq!(t("f(x,c(x))").fpos(), vec![Position::root(), pos(&[2])]);
        assert!(t("x").fpos().is_empty());
        assert_eq!(
            t("f(c(a),b)").fpos(),
            vec![Position::root(), pos(&[1]), pos(&[1, 1]), pos(&[2])]
        );
    }

    #[test]
    fn linearize_examples() {
        let l = linearize(&t("f(x,x)"), "");
        assert_eq!(l.term, Term::app("f", vec![Term::var("x^1"), Term::var("x^2")]));
        assert_eq!(l.origin[&Var::new("x^1")], Var::new("x"));
        assert_eq!(l.origin[&Var::new("x^2")], Var::new("x"));

        let l = linearize(&t("f(x,y)"), "");
        assert_eq!(l.term, t("f(x,y)"));
        assert!(l.origin.iter().all(|(a, b)| a == b));

        let l = linearize(&t("f(y,c(y))"), "");
        assert_eq!(
            l.term,
            Term::app("f", vec![Term::var("y^1"), Term::app("c", vec![Term::var("y^2")])])
        );
        assert_eq!(l.erase(), t("f(y,c(y))"));
    }

    #[test]
    fn salted_linearizations_are_disjoint() {
        let a = linearize(&t("f(x,y)"), "a");
        let b = linearize(&t("f(x,y)"), "b");
        assert!(a.term.vars().is_disjoint(&b.term.vars()));
        assert!(a.term.is_linear());
    }

    #[test]
    fn match_examples() {
        let s = match_term(&t("f(x,x)"), &t("f(g,g)")).unwrap();
        assert_eq!(s, Substitution::from_pairs([(Var::new("x"), t("g"))]));
        assert!(match_term(&t("f(x,x)"), &t("f(g,c(g))")).is_none());
        let s = match_term(&t("f(y,c(y))"), &t("f(g,c(g))")).unwrap();
        assert_eq!(s, Substitution::from_pairs([(Var::new("y"), t("g"))]));
    }

    #[test]
    fn substitution_drops_identity() {
        let mut s = Substitution::new();
        s.insert(Var::new("x"), Term::var("x"));
        assert!(s.is_empty());
        s.insert(Var::new("x"), t("a"));
        assert_eq!(s.domain().len(), 1);
    }

    #[test]
    fn composition_applies_left_first() {
        let s = Substitution::from_pairs([(Var::new("x"), t("f(y,y)"))]);
        let r = Substitution::from_pairs([(Var::new("y"), t("a"))]);
        let c = s.then(&r);
        assert_eq!(c.apply(&t("c(x)")), r.apply(&s.apply(&t("c(x)"))));
        assert_eq!(c.apply(&t("y")), t("a"));
    }

    #[test]
    fn position_orders() {
        let p1 = pos(&[1]);
        let p12 = pos(&[1, 2]);
        let p2 = pos(&[2]);
        assert!(p12.is_strictly_below(&p1));
        assert!(p1.is_disjoint(&p2));
        assert!(!p1.is_disjoint(&p12));
        // P ≥ Q via max(Q): {1.2} ≥ {Λ, 1} but {2} is not.
        let q = vec![Position::root(), p1.clone()];
        assert!(Position::set_ge(std::slice::from_ref(&p12), &q));
        assert!(Position::set_gt(&[p12], &q));
        assert!(!Position::set_ge(&[p2], &q));
        assert!(Position::set_ge(std::slice::from_ref(&p1), &q));
        assert!(!Position::set_gt(&[p1], &q));
    }

    #[test]
    fn position_parsing() {
        assert_eq!("Λ".parse::<Position>().unwrap(), Position::root());
        assert_eq!("2.1".parse::<Position>().unwrap(), pos(&[2, 1]));
        assert!("0".parse::<Position>().is_err());
        assert_eq!(pos(&[2, 1]).to_string(), "2.1");
    }

    #[test]
    fn rename_apart_avoids_clashes() {
        let avoid: BTreeSet<Var> = [Var::new("x")].into_iter().collect();
        let (ts, ren) = rename_apart(&[&t("f(x,y)")], &avoid);
        assert_eq!(ts[0], Term::app("f", vec![Term::var("x'"), Term::var("y")]));
        assert_eq!(ren.len(), 1);
    }
}
