//! Confluence analysis for layered, possibly non-terminating rewrite systems.

pub mod error;
pub mod parse;
pub mod rewrite;
pub mod term;
pub mod trs;
pub mod unify;
pub mod congruence;
pub mod cyclic;
pub mod layering;
pub mod report;
pub mod subrewrite;
pub mod analysis;
pub mod recheck;

pub use analysis::{analyze, cyclic_critical_pairs, AnalysisConfig, Analysis, CriticalPeak, PairEvidence, Verdict};
pub use error::{AnalysisError, ParseError, TermError};
pub use parse::{parse_term_for, parse_term_with_vars, parse_trs};
pub use term::{Position, Substitution, Symbol, Term, Var};
pub use trs::{IndexedTrs, Rule};
