//! Text and JSON reports.

use std::fmt::{Display, Write};

use crate::analysis::{Analysis, NonJoinProof, PairEvidence, Realizability};
use crate::rewrite::Step;
use crate::trs::IndexedTrs;

/// Serializes any `Display` value as its string form.
pub fn ser_display<T: Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Banner printed whenever the rank check was skipped on request.
pub const RANK_ASSUMED_BANNER: &str =
    "!!! WARNING: rank non-increase was ASSUMED (--assume-rank-nonincreasing), not checked. A CONFLUENT verdict depends on this assumption. !!!";

/// Output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected text or json)")),
        }
    }
}

pub fn render(trs: &IndexedTrs, a: &Analysis, format: Format) -> String {
    match format {
        Format::Text => render_text(trs, a),
        Format::Json => render_json(a),
    }
}

pub fn render_json(a: &Analysis) -> String {
    let mut v = serde_json::to_value(a).expect("report serializes");
    if a.rank_assumed {
        v["warning"] = RANK_ASSUMED_BANNER.into();
    }
    let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
    s.push('\n');
    s
}

fn step_line(s: &Step, trs: &IndexedTrs) -> String {
    format!(
        "{} →[rule {} (index {}) @ {}] {}",
        s.source,
        s.rule + 1,
        trs.rule(s.rule).index,
        s.position,
        s.result
    )
}

fn proof_text(p: &NonJoinProof) -> String {
    match p {
        NonJoinProof::DisjointReach { left, right } => format!(
            "complete reachable sets of sizes {} and {} are disjoint",
            left.len(),
            right.len()
        ),
        NonJoinProof::StableClash { left, right } => format!("root-stable heads {left} and {right} differ"),
        NonJoinProof::Argument { index, inner } => format!("argument {index}: {}", proof_text(inner)),
        NonJoinProof::HeadUnreachable { head, closed, .. } => {
            format!("root-stable head {head} never appears among {} reachable terms", closed.len())
        }
    }
}

pub fn render_text(trs: &IndexedTrs, a: &Analysis) -> String {
    let mut o = String::new();
    if a.rank_assumed {
        let _ = writeln!(o, "{RANK_ASSUMED_BANNER}");
    }
    let _ = writeln!(o, "{}", a.verdict);
    let _ = writeln!(o, "reason: {}", a.reason);
    let _ = writeln!(
        o,
        "layered: {}  overlay: {}",
        if a.layering.layered { "yes" } else { "no" },
        if a.overlay { "yes" } else { "no" }
    );
    for v in &a.layering.violations {
        let _ = writeln!(o, "  violation: {v}");
    }
    match (&a.rank_check, a.rank_assumed) {
        (_, true) => {
            let _ = writeln!(o, "rank check: SKIPPED (assumed)");
        }
        (Some(rc), false) if rc.ok => {
            let _ = writeln!(o, "rank check: passed");
        }
        (Some(rc), false) => {
            let _ = writeln!(o, "rank check: failed");
            for v in &rc.violations {
                let _ = writeln!(o, "  {v}");
            }
        }
        (None, false) => {
            let _ = writeln!(o, "rank check: not applicable");
        }
    }
    let _ = writeln!(o, "cyclic critical pairs: {}", a.pairs.len());
    for pa in &a.pairs {
        let p = &pa.peak;
        let _ = writeln!(
            o,
            "#{} rules {}/{} at {}: {} ⟵ {} ⟶ {}",
            p.number,
            p.outer_rule + 1,
            p.inner_rule + 1,
            p.position,
            p.left,
            p.top,
            p.right
        );
        let _ = writeln!(o, "  solved form: {}", p.solved);
        let _ = writeln!(o, "  unifier: {}", p.unifier);
        match &pa.evidence {
            PairEvidence::Diagram(d) => {
                let _ = writeln!(
                    o,
                    "  diagram: {} →* {} =cc {} ⟵* {}  I={:?} J={:?}",
                    p.left, d.s, d.t, p.right, d.left_indexes, d.right_indexes
                );
                for (side, steps) in [("left", &d.left_steps), ("right", &d.right_steps)] {
                    for s in steps {
                        let _ = writeln!(
                            o,
                            "    {side} ⟨{},{}⟩ {}",
                            s.label.0,
                            s.label.1,
                            step_line(&s.step, trs)
                        );
                    }
                }
            }
            PairEvidence::Unrealizable { realizability } => {
                if let Realizability::Unrealizable { inert, cycle } = realizability {
                    let _ = writeln!(
                        o,
                        "  unrealizable: cycle {} through inert symbols {{{}}}",
                        cycle.join(" → "),
                        inert.join(", ")
                    );
                }
            }
            PairEvidence::Witness(w) => {
                let _ = writeln!(o, "  witness: {} ⟵* {} →* {}  (γ = {})", w.left, w.source, w.right, w.gamma);
                for (side, steps) in [("left", &w.left_steps), ("right", &w.right_steps)] {
                    for s in steps {
                        let _ = writeln!(o, "    {side} {}", step_line(s, trs));
                    }
                }
                let _ = writeln!(o, "  non-joinable: {}", proof_text(&w.proof));
            }
            PairEvidence::Open { reason } => {
                let _ = writeln!(o, "  open: {reason}");
            }
        }
    }
    o
}
