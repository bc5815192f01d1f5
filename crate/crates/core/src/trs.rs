//! Indexed rewrite systems.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::term::{Symbol, Term, Var};

/// Default rule index when none is written.
pub const DEFAULT_INDEX: u32 = 1;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rule {
    pub lhs: Term,
    pub rhs: Term,
    pub index: u32,
}

impl Rule {
    pub fn new(lhs: Term, rhs: Term, index: u32) -> Self {
        Rule { lhs, rhs, index }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.lhs.vars();
        self.rhs.collect_vars(&mut v);
        v
    }

    /// Whether the rhs is a bare variable.
    pub fn is_collapsing(&self) -> bool {
        self.rhs.is_var()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == DEFAULT_INDEX {
            write!(f, "{} -> {}", self.lhs, self.rhs)
        } else {
            write!(f, "{} ->{} {}", self.lhs, self.index, self.rhs)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("left-hand side `{0}` is a variable")]
    VariableLhs(Term),
    #[error("variable `{var}` of right-hand side does not occur in left-hand side of `{rule}`")]
    UnboundRhsVar { rule: String, var: Var },
    #[error("symbol `{symbol}` used with arities {first} and {second}")]
    ArityConflict {
        symbol: String,
        first: usize,
        second: usize,
    },
}

/// A rewrite system whose rules carry non-negative indexes (shared indexes allowed).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IndexedTrs {
    signature: BTreeSet<Symbol>,
    rules: Vec<Rule>,
}

impl IndexedTrs {
    /// Validates the rules and infers the signature from their symbols.
    pub fn new(rules: Vec<Rule>) -> Result<Self, RuleError> {
        Self::with_signature(rules, BTreeSet::new())
    }

    /// Like [`IndexedTrs::new`], also including explicitly declared symbols.
    pub fn with_signature(rules: Vec<Rule>, declared: BTreeSet<Symbol>) -> Result<Self, RuleError> {
        let mut arities: BTreeMap<String, usize> = BTreeMap::new();
        let mut signature = BTreeSet::new();
        let mut note = |s: &Symbol| -> Result<(), RuleError> {
            match arities.get(s.name()) {
                Some(&a) if a != s.arity() => Err(RuleError::ArityConflict {
                    symbol: s.name().to_string(),
                    first: a,
                    second: s.arity(),
                }),
                _ => {
                    arities.insert(s.name().to_string(), s.arity());
                    Ok(())
                }
            }
        };
        for s in &declared {
            note(s)?;
            signature.insert(s.clone());
        }
        for r in &rules {
            if r.lhs.is_var() {
                return Err(RuleError::VariableLhs(r.lhs.clone()));
            }
            let lv = r.lhs.vars();
            if let Some(v) = r.rhs.vars().into_iter().find(|v| !lv.contains(v)) {
                return Err(RuleError::UnboundRhsVar {
                    rule: r.to_string(),
                    var: v,
                });
            }
            for s in r.lhs.symbols().into_iter().chain(r.rhs.symbols()) {
                note(&s)?;
                signature.insert(s);
            }
        }
        Ok(IndexedTrs { signature, rules })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, i: usize) -> &Rule {
        &self.rules[i]
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn signature(&self) -> &BTreeSet<Symbol> {
        &self.signature
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            r.lhs.collect_vars(&mut out);
        }
        out
    }

    /// Symbols heading some left-hand side.
    pub fn defined_symbols(&self) -> BTreeSet<Symbol> {
        self.rules.iter().filter_map(|r| r.lhs.head().cloned()).collect()
    }

    pub fn has_collapsing_rule(&self) -> bool {
        self.rules.iter().any(Rule::is_collapsing)
    }
}

impl fmt::Display for IndexedTrs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.vars();
        if !vars.is_empty() {
            f.write_str("(VAR")?;
            for v in &vars {
                write!(f, " {v}")?;
            }
            f.write_str(")\n")?;
        }
        let mut used = BTreeSet::new();
        for r in &self.rules {
            r.lhs.collect_symbols(&mut used);
            r.rhs.collect_symbols(&mut used);
        }
        let extra: Vec<_> = self.signature.difference(&used).collect();
        if !extra.is_empty() {
            f.write_str("(SIG")?;
            for s in extra {
                write!(f, " ({} {})", s.name(), s.arity())?;
            }
            f.write_str(")\n")?;
        }
        f.write_str("(RULES\n")?;
        for r in &self.rules {
            writeln!(f, "  {r}")?;
        }
        f.write_str(")\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_variable_lhs() {
        let r = Rule::new(Term::var("x"), Term::constant("a"), 1);
        assert!(matches!(IndexedTrs::new(vec![r]), Err(RuleError::VariableLhs(_))));
    }

    #[test]
    fn rejects_unbound_rhs_variable() {
        let r = Rule::new(Term::constant("a"), Term::var("x"), 1);
        assert!(matches!(
            IndexedTrs::new(vec![r]),
            Err(RuleError::UnboundRhsVar { .. })
        ));
    }

    #[test]
    fn rejects_arity_conflict() {
        let r1 = Rule::new(Term::app("f", vec![Term::var("x")]), Term::constant("a"), 1);
        let r2 = Rule::new(Term::constant("f"), Term::constant("a"), 1);
        assert!(matches!(
            IndexedTrs::new(vec![r1, r2]),
            Err(RuleError::ArityConflict { .. })
        ));
    }

    #[test]
    fn infers_signature() {
        let r = Rule::new(Term::constant("g"), Term::app("c", vec![Term::constant("g")]), 0);
        let trs = IndexedTrs::new(vec![r]).unwrap();
        assert_eq!(trs.signature().len(), 2);
        assert_eq!(trs.defined_symbols().len(), 1);
    }
}
