//! Cyclic critical pairs, decreasing diagrams, realizability, witnesses,
//! and the overall verdict.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::congruence::CongruenceClosure;
use crate::cyclic::{canonical_cyclic_unifier, CyclicUnifier};
use crate::layering::{check_dlo, check_rank_nonincreasing, is_overlay, OverlapReport, RankCheck, Ranker};
use crate::rewrite::{one_step_reducts, Reach, SearchBounds, Step};
use crate::term::{rename_apart, Position, Substitution, Symbol, Term, Var};
use crate::trs::{IndexedTrs, Rule};
use crate::unify::{solve, SolvedForm, UnifProblem};

/// Search bounds and switches for one analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisConfig {
    pub eq_depth: usize,
    pub diagram_depth: usize,
    pub realizer_depth: usize,
    pub realizer_candidates: usize,
    pub nf_depth: usize,
    pub node_bound: usize,
    pub assume_rank_nonincreasing: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            eq_depth: 6,
            diagram_depth: 8,
            realizer_depth: 6,
            realizer_candidates: 200,
            nf_depth: 12,
            node_bound: 50_000,
            assume_rank_nonincreasing: false,
        }
    }
}

impl AnalysisConfig {
    pub fn nf_bounds(&self) -> SearchBounds {
        SearchBounds {
            depth: self.nf_depth,
            nodes: self.node_bound,
        }
    }
}

/// An overlap of the inner rule `g → d` at `position` of the outer
/// rule's lhs `l`, solved over rational trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPeak {
    /// 1-based number in enumeration order.
    pub number: usize,
    pub outer_rule: usize,
    pub inner_rule: usize,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub position: Position,
    pub outer_index: u32,
    pub inner_index: u32,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub outer: Rule,
    /// The inner rule renamed apart from the outer one.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub inner: Rule,
    pub solved: SolvedForm,
    pub unifier: CyclicUnifier,
    /// `lη_S`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub top: Term,
    /// `rη_S`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub left: Term,
    /// `l[d]_p η_S`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub right: Term,
    pub context_has_vars: bool,
}

impl CriticalPeak {
    /// The unification problem `l|_p = g`.
    pub fn problem(&self) -> UnifProblem {
        UnifProblem::single(
            self.outer.lhs.subterm_at(&self.position).expect("valid position").clone(),
            self.inner.lhs.clone(),
        )
    }

    /// `R_S η_S` as ground equations.
    pub fn cyclic_equations(&self) -> Vec<(Term, Term)> {
        self.unifier.instantiated_equations()
    }
}

impl fmt::Display for CriticalPeak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "#{} rules {}/{} at {}: {} ⟵ {} ⟶ {}  S: {}  unifier: {}",
            self.number,
            self.outer_rule + 1,
            self.inner_rule + 1,
            self.position,
            self.left,
            self.top,
            self.right,
            self.solved,
            self.unifier
        )
    }
}

fn make_peak(trs: &IndexedTrs, a: usize, b: usize, p: &Position) -> Option<CriticalPeak> {
    let outer = trs.rule(a).clone();
    let g = trs.rule(b);
    let (renamed, _) = rename_apart(&[&g.lhs, &g.rhs], &outer.vars());
    let inner = Rule::new(renamed[0].clone(), renamed[1].clone(), g.index);
    let lp = outer.lhs.subterm_at(p).ok()?;
    let problem = UnifProblem::single(lp.clone(), inner.lhs.clone());
    let solved = solve(&problem)?;
    let unifier = canonical_cyclic_unifier(&solved);
    if a == b && p.is_root() && unifier.rs.is_empty() && unifier.eta.is_renaming() {
        return None;
    }
    let eta = &unifier.eta;
    let lhs_with_d = outer.lhs.replace_at(p, inner.rhs.clone()).ok()?;
    let context = outer.lhs.replace_at(p, Term::constant("□")).ok()?;
    Some(CriticalPeak {
        number: 0,
        outer_rule: a,
        inner_rule: b,
        position: p.clone(),
        outer_index: outer.index,
        inner_index: inner.index,
        top: eta.apply(&outer.lhs),
        left: eta.apply(&outer.rhs),
        right: eta.apply(&lhs_with_d),
        context_has_vars: !context.vars().is_empty(),
        outer,
        inner,
        solved,
        unifier,
    })
}

/// Every cyclic critical peak. Root overlaps of two distinct rules appear
/// once, with the earlier rule outside.
pub fn cyclic_critical_pairs(trs: &IndexedTrs) -> Vec<CriticalPeak> {
    let mut out = Vec::new();
    for a in 0..trs.len() {
        for p in trs.rule(a).lhs.fpos() {
            for b in 0..trs.len() {
                if p.is_root() && b < a {
                    continue;
                }
                if let Some(mut peak) = make_peak(trs, a, b, &p) {
                    peak.number = out.len() + 1;
                    out.push(peak);
                }
            }
        }
    }
    out
}

/// Decreasingness of the joining index sequences for a peak with indexes
/// `i` (left) and `j` (right).
///
/// The left sequence must split as α·φ·δ with α below `i`, an optional
/// facing step φ equal to `j`, and δ below `max(i, j)`; the right sequence
/// symmetrically. With variables in the overlap context every index must
/// be below `i`.
pub fn check_decreasing(left: &[u32], right: &[u32], i: u32, j: u32, context_has_vars: bool) -> bool {
    let side = |seq: &[u32], own: u32, facing: u32| {
        let mut state = SideState::Start;
        seq.iter().all(|&k| {
            if context_has_vars && k >= i {
                return false;
            }
            match side_step(state, k, own, facing) {
                Some(s) => {
                    state = s;
                    true
                }
                None => false,
            }
        })
    };
    side(left, i, j) && side(right, j, i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum SideState {
    Start,
    AfterFacing,
}

fn side_step(state: SideState, k: u32, own: u32, facing: u32) -> Option<SideState> {
    let top = own.max(facing);
    match state {
        SideState::Start if k < own => Some(SideState::Start),
        SideState::Start if k == facing || k < top => Some(SideState::AfterFacing),
        SideState::AfterFacing if k < top => Some(SideState::AfterFacing),
        _ => None,
    }
}

/// A labelled derivation step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelledStep {
    #[serde(flatten)]
    pub step: Step,
    /// `⟨rank of the rewritten term, rule index⟩`.
    pub label: (usize, u32),
}

/// A joining diagram for one peak.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramEvidence {
    pub left_steps: Vec<LabelledStep>,
    pub right_steps: Vec<LabelledStep>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub s: Term,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub t: Term,
    pub left_indexes: Vec<u32>,
    pub right_indexes: Vec<u32>,
}

/// Reason a diagram search failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramFailure {
    pub explored_left: usize,
    pub explored_right: usize,
    pub complete: bool,
}

struct SideSearch {
    states: Vec<(Term, SideState)>,
    parent: HashMap<(Term, SideState), Option<(usize, Step)>>,
    complete: bool,
}

fn search_side(
    start: &Term,
    trs: &IndexedTrs,
    own: u32,
    facing: u32,
    i: u32,
    ctx: bool,
    bounds: SearchBounds,
) -> SideSearch {
    let mut states = vec![(start.clone(), SideState::Start)];
    let mut parent = HashMap::new();
    parent.insert((start.clone(), SideState::Start), None);
    let mut depth = vec![0usize];
    let mut queue = VecDeque::from([0usize]);
    let mut complete = true;
    'outer: while let Some(n) = queue.pop_front() {
        let (t, st) = states[n].clone();
        for step in one_step_reducts(&t, trs) {
            let k = trs.rule(step.rule).index;
            if ctx && k >= i {
                continue;
            }
            let Some(next) = side_step(st, k, own, facing) else {
                continue;
            };
            let key = (step.result.clone(), next);
            if parent.contains_key(&key)
                || (next == SideState::AfterFacing && parent.contains_key(&(step.result.clone(), SideState::Start)))
            {
                continue;
            }
            if depth[n] >= bounds.depth || states.len() >= bounds.nodes {
                complete = false;
                if states.len() >= bounds.nodes {
                    break 'outer;
                }
                continue;
            }
            parent.insert(key.clone(), Some((n, step)));
            states.push(key);
            depth.push(depth[n] + 1);
            queue.push_back(states.len() - 1);
        }
    }
    SideSearch {
        states,
        parent,
        complete,
    }
}

fn path_to(search: &SideSearch, n: usize) -> Vec<Step> {
    let mut out = Vec::new();
    let mut key = search.states[n].clone();
    while let Some(Some((prev, step))) = search.parent.get(&key) {
        out.push(step.clone());
        key = search.states[*prev].clone();
    }
    out.reverse();
    out
}

fn label_steps(steps: Vec<Step>, trs: &IndexedTrs, ranker: &mut Ranker) -> Vec<LabelledStep> {
    steps
        .into_iter()
        .map(|step| {
            let label = (ranker.rank(&step.source), trs.rule(step.rule).index);
            LabelledStep { step, label }
        })
        .collect()
}

/// Bounded search for `left →* s =cc t ⟵* right` with decreasing indexes.
pub fn find_diagram(
    peak: &CriticalPeak,
    trs: &IndexedTrs,
    ranker: &mut Ranker,
    config: &AnalysisConfig,
) -> Result<DiagramEvidence, DiagramFailure> {
    let (i, j, ctx) = (peak.outer_index, peak.inner_index, peak.context_has_vars);
    let mut cc = CongruenceClosure::new(&peak.cyclic_equations());
    if peak.left == peak.right || cc.congruent(&peak.left, &peak.right) {
        return Ok(DiagramEvidence {
            left_steps: Vec::new(),
            right_steps: Vec::new(),
            s: peak.left.clone(),
            t: peak.right.clone(),
            left_indexes: Vec::new(),
            right_indexes: Vec::new(),
        });
    }
    let bounds = SearchBounds {
        depth: config.diagram_depth,
        nodes: config.node_bound,
    };
    let left = search_side(&peak.left, trs, i, j, i, ctx, bounds);
    let right = search_side(&peak.right, trs, j, i, i, ctx, bounds);
    let mut first_left: HashMap<usize, usize> = HashMap::new();
    for (n, (t, _)) in left.states.iter().enumerate() {
        first_left.entry(cc.class_of(t)).or_insert(n);
    }
    let mut best: Option<(usize, usize)> = None;
    for (m, (t, _)) in right.states.iter().enumerate() {
        if let Some(&n) = first_left.get(&cc.class_of(t)) {
            let cost = |(n, m): (usize, usize)| path_to(&left, n).len() + path_to(&right, m).len();
            if best.is_none_or(|b| cost((n, m)) < cost(b)) {
                best = Some((n, m));
            }
        }
    }
    match best {
        Some((n, m)) => {
            let ls = label_steps(path_to(&left, n), trs, ranker);
            let rs = label_steps(path_to(&right, m), trs, ranker);
            Ok(DiagramEvidence {
                left_indexes: ls.iter().map(|s| s.label.1).collect(),
                right_indexes: rs.iter().map(|s| s.label.1).collect(),
                left_steps: ls,
                right_steps: rs,
                s: left.states[n].0.clone(),
                t: right.states[m].0.clone(),
            })
        }
        None => Err(DiagramFailure {
            explored_left: left.states.len(),
            explored_right: right.states.len(),
            complete: left.complete && right.complete,
        }),
    }
}

/// A symbol that heads no lhs and no rhs, in a system without collapsing
/// rules: no rewrite step creates or removes it at a position.
pub fn inert_symbols(trs: &IndexedTrs) -> BTreeSet<Symbol> {
    if trs.has_collapsing_rule() {
        return BTreeSet::new();
    }
    let mut heads = trs.defined_symbols();
    heads.extend(trs.rules().iter().filter_map(|r| r.rhs.head().cloned()));
    trs.signature().iter().filter(|s| !heads.contains(*s)).cloned().collect()
}

/// Edges `y → z` of the cyclic system where `z` occurs in `v_y` below a
/// non-empty path of inert symbols.
fn inert_edges(rs: &[(Var, Term)], inert: &BTreeSet<Symbol>) -> BTreeMap<Var, BTreeSet<Var>> {
    fn walk(t: &Term, inert: &BTreeSet<Symbol>, out: &mut BTreeSet<Var>) {
        if let Term::App(f, args) = t {
            if inert.contains(f) {
                for a in args {
                    match a {
                        Term::Var(v) => {
                            out.insert(v.clone());
                        }
                        _ => walk(a, inert, out),
                    }
                }
            }
        }
    }
    rs.iter()
        .map(|(y, v)| {
            let mut succ = BTreeSet::new();
            walk(v, inert, &mut succ);
            (y.clone(), succ)
        })
        .collect()
}

fn find_cycle(edges: &BTreeMap<Var, BTreeSet<Var>>) -> Option<Vec<Var>> {
    fn dfs(
        v: &Var,
        edges: &BTreeMap<Var, BTreeSet<Var>>,
        stack: &mut Vec<Var>,
        done: &mut BTreeSet<Var>,
    ) -> Option<Vec<Var>> {
        if let Some(k) = stack.iter().position(|w| w == v) {
            return Some(stack[k..].to_vec());
        }
        if done.contains(v) {
            return None;
        }
        stack.push(v.clone());
        for w in edges.get(v).into_iter().flatten() {
            if let Some(c) = dfs(w, edges, stack, done) {
                return Some(c);
            }
        }
        stack.pop();
        done.insert(v.clone());
        None
    }
    let mut done = BTreeSet::new();
    for v in edges.keys() {
        if let Some(c) = dfs(v, edges, &mut Vec::new(), &mut done) {
            return Some(c);
        }
    }
    None
}

/// Joinability certificate for one cyclic rule under a realizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinEvidence {
    pub left_steps: Vec<Step>,
    pub right_steps: Vec<Step>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub meet: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Realizability {
    Realizable {
        #[serde(serialize_with = "crate::report::ser_display")]
        gamma: Substitution,
        joins: Vec<JoinEvidence>,
    },
    /// A cycle of cyclic variables each reached through inert symbols.
    Unrealizable {
        inert: Vec<String>,
        cycle: Vec<String>,
    },
    Unknown {
        reason: String,
    },
}

/// Name of the fresh constant offered to the realizer search.
pub const FRESH_CONSTANT: &str = "κ";

fn realizer_candidates(trs: &IndexedTrs, config: &AnalysisConfig) -> Vec<Term> {
    let mut seeds: Vec<Term> = Vec::new();
    let mut seen = BTreeSet::new();
    for r in trs.rules() {
        for side in [&r.lhs, &r.rhs] {
            for s in side.subterms() {
                if s.is_ground() && seen.insert(s.clone()) {
                    seeds.push(s.clone());
                }
            }
        }
    }
    seeds.push(Term::constant(FRESH_CONSTANT));
    let mut out: Vec<Term> = Vec::new();
    let mut have = BTreeSet::new();
    let bounds = SearchBounds {
        depth: config.realizer_depth,
        nodes: config.realizer_candidates,
    };
    for s in seeds {
        for t in Reach::explore(&s, trs, bounds).terms {
            if out.len() >= config.realizer_candidates {
                return out;
            }
            if have.insert(t.clone()) {
                out.push(t);
            }
        }
    }
    out
}

struct JoinCache<'a> {
    trs: &'a IndexedTrs,
    bounds: SearchBounds,
    reach: HashMap<Term, Reach>,
}

impl JoinCache<'_> {
    fn reach(&mut self, t: &Term) -> &Reach {
        if !self.reach.contains_key(t) {
            let r = Reach::explore(t, self.trs, self.bounds);
            self.reach.insert(t.clone(), r);
        }
        &self.reach[t]
    }

    fn join(&mut self, a: &Term, b: &Term) -> Option<JoinEvidence> {
        let ra = self.reach(a).clone();
        let rb = self.reach(b);
        let meet = ra
            .terms
            .iter()
            .filter(|t| rb.contains(t))
            .min_by_key(|t| ra.depth_of(t).unwrap_or(0) + rb.depth_of(t).unwrap_or(0))?
            .clone();
        Some(JoinEvidence {
            left_steps: ra.derivation_to(&meet).expect("discovered"),
            right_steps: rb.derivation_to(&meet).expect("discovered"),
            meet,
        })
    }
}

/// Upper bound on joinability tests in one realizer search.
const MAX_JOIN_TESTS: usize = 20_000;

/// Looks for a substitution making both sides of every cyclic rule
/// joinable, or proves none exists.
pub fn check_realizability(peak: &CriticalPeak, trs: &IndexedTrs, config: &AnalysisConfig) -> Realizability {
    let rs = peak.cyclic_equations();
    if rs.is_empty() {
        return Realizability::Realizable {
            gamma: Substitution::new(),
            joins: Vec::new(),
        };
    }
    let inert = inert_symbols(trs);
    let cyc: Vec<(Var, Term)> = peak.unifier.rs.rules.clone();
    if let Some(cycle) = find_cycle(&inert_edges(&cyc, &inert)) {
        return Realizability::Unrealizable {
            inert: inert.iter().map(|s| s.name().to_string()).collect(),
            cycle: cycle.iter().map(|v| v.to_string()).collect(),
        };
    }

    let candidates = realizer_candidates(trs, config);
    // Instantiate variables so that each rule becomes checkable as early as possible.
    let rule_vars: Vec<BTreeSet<Var>> = rs
        .iter()
        .map(|(y, v)| {
            let mut s = y.vars();
            v.collect_vars(&mut s);
            s
        })
        .collect();
    let mut order: Vec<Var> = Vec::new();
    let mut remaining: Vec<usize> = (0..rs.len()).collect();
    while !remaining.is_empty() {
        remaining.sort_by_key(|&k| (rule_vars[k].iter().filter(|v| !order.contains(v)).count(), k));
        let k = remaining.remove(0);
        for v in &rule_vars[k] {
            if !order.contains(v) {
                order.push(v.clone());
            }
        }
    }
    let ready: Vec<Vec<usize>> = (0..order.len())
        .map(|n| {
            (0..rs.len())
                .filter(|&k| {
                    rule_vars[k].iter().all(|v| order[..=n].contains(v)) && rule_vars[k].contains(&order[n])
                })
                .collect()
        })
        .collect();

    let mut cache = JoinCache {
        trs,
        bounds: SearchBounds {
            depth: config.realizer_depth,
            nodes: config.node_bound,
        },
        reach: HashMap::new(),
    };
    let mut tests = 0usize;
    let mut pick = vec![0usize; order.len()];
    let mut joins: Vec<Option<JoinEvidence>> = vec![None; rs.len()];
    let mut n = 0usize;
    loop {
        if tests > MAX_JOIN_TESTS {
            return Realizability::Unknown {
                reason: format!("realizer search stopped after {MAX_JOIN_TESTS} joinability tests"),
            };
        }
        if pick[n] >= candidates.len() {
            if n == 0 {
                return Realizability::Unknown {
                    reason: format!(
                        "no realizer among {} candidates at depth {}",
                        candidates.len(),
                        config.realizer_depth
                    ),
                };
            }
            pick[n] = 0;
            n -= 1;
            pick[n] += 1;
            continue;
        }
        let gamma = Substitution::from_pairs((0..=n).map(|m| (order[m].clone(), candidates[pick[m]].clone())));
        let mut ok = true;
        for &k in &ready[n] {
            tests += 1;
            let (y, v) = &rs[k];
            match cache.join(&gamma.apply(y), &gamma.apply(v)) {
                Some(e) => joins[k] = Some(e),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            pick[n] += 1;
            continue;
        }
        if n + 1 == order.len() {
            return Realizability::Realizable {
                gamma,
                joins: joins.into_iter().map(|j| j.expect("every rule checked")).collect(),
            };
        }
        n += 1;
        pick[n] = 0;
    }
}

/// Why two terms have no common reduct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NonJoinProof {
    /// Both reachable sets are closed under rewriting and disjoint.
    DisjointReach {
        #[serde(serialize_with = "ser_terms")]
        left: Vec<Term>,
        #[serde(serialize_with = "ser_terms")]
        right: Vec<Term>,
    },
    /// Distinct heads that no step can rewrite.
    StableClash { left: String, right: String },
    /// Equal stable heads with a non-joinable argument pair.
    Argument { index: usize, inner: Box<NonJoinProof> },
    /// One side has a stable head absent from the closed reachable set of
    /// the other side.
    HeadUnreachable {
        head: String,
        #[serde(serialize_with = "ser_terms")]
        closed: Vec<Term>,
        /// True when the closed set belongs to the right-hand term.
        closed_is_right: bool,
    },
}

fn ser_terms<S: serde::Serializer>(ts: &[Term], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ts.iter().map(|t| t.to_string()))
}

/// Whether no rewrite step can ever happen at the root of `t`.
pub fn root_stable(t: &Term, trs: &IndexedTrs) -> bool {
    match t.head() {
        None => true,
        Some(f) => !trs.rules().iter().any(|r| r.lhs.head() == Some(f)),
    }
}

fn head_name(t: &Term) -> String {
    match t {
        Term::Var(v) => v.to_string(),
        Term::App(f, _) => format!("{}/{}", f.name(), f.arity()),
    }
}

fn same_head(a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => x == y,
        (Term::App(f, _), Term::App(g, _)) => f == g,
        _ => false,
    }
}

/// Tries to prove that `v` and `w` have no common reduct.
pub fn prove_non_joinable(v: &Term, w: &Term, trs: &IndexedTrs, bounds: SearchBounds) -> Option<NonJoinProof> {
    if v == w {
        return None;
    }
    let (sv, sw) = (root_stable(v, trs), root_stable(w, trs));
    if sv && sw {
        if !same_head(v, w) {
            return Some(NonJoinProof::StableClash {
                left: head_name(v),
                right: head_name(w),
            });
        }
        for (k, (a, b)) in v.args().iter().zip(w.args()).enumerate() {
            if let Some(p) = prove_non_joinable(a, b, trs, bounds) {
                return Some(NonJoinProof::Argument {
                    index: k + 1,
                    inner: Box::new(p),
                });
            }
        }
        return None;
    }
    let rv = Reach::explore(v, trs, bounds);
    let rw = Reach::explore(w, trs, bounds);
    if rv.complete && rw.complete && !rv.terms.iter().any(|t| rw.contains(t)) {
        return Some(NonJoinProof::DisjointReach {
            left: rv.terms,
            right: rw.terms,
        });
    }
    if sv && rw.complete && !rw.terms.iter().any(|t| same_head(t, v)) {
        return Some(NonJoinProof::HeadUnreachable {
            head: head_name(v),
            closed: rw.terms,
            closed_is_right: true,
        });
    }
    if sw && rv.complete && !rv.terms.iter().any(|t| same_head(t, w)) {
        return Some(NonJoinProof::HeadUnreachable {
            head: head_name(w),
            closed: rv.terms,
            closed_is_right: false,
        });
    }
    None
}

/// Checks a non-joinability proof without searching.
pub fn verify_non_joinable(v: &Term, w: &Term, proof: &NonJoinProof, trs: &IndexedTrs) -> bool {
    let closed = |set: &[Term], start: &Term| {
        let s: BTreeSet<&Term> = set.iter().collect();
        s.contains(start)
            && set
                .iter()
                .all(|t| one_step_reducts(t, trs).iter().all(|st| s.contains(&st.result)))
    };
    match proof {
        NonJoinProof::DisjointReach { left, right } => {
            let r: BTreeSet<&Term> = right.iter().collect();
            closed(left, v) && closed(right, w) && !left.iter().any(|t| r.contains(t))
        }
        NonJoinProof::StableClash { .. } => {
            root_stable(v, trs) && root_stable(w, trs) && !same_head(v, w)
        }
        NonJoinProof::Argument { index, inner } => {
            root_stable(v, trs)
                && same_head(v, w)
                && *index >= 1
                && *index <= v.args().len()
                && verify_non_joinable(&v.args()[index - 1], &w.args()[index - 1], inner, trs)
        }
        NonJoinProof::HeadUnreachable {
            closed: set,
            closed_is_right,
            ..
        } => {
            let (stable, other) = if *closed_is_right { (v, w) } else { (w, v) };
            root_stable(stable, trs) && closed(set, other) && !set.iter().any(|t| same_head(t, stable))
        }
    }
}

/// A concrete non-joinable peak `v ⟵* u →* w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub gamma: Substitution,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub source: Term,
    pub left_steps: Vec<Step>,
    pub right_steps: Vec<Step>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub left: Term,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub right: Term,
    pub proof: NonJoinProof,
}

/// How many candidate ends per side the witness search compares.
const WITNESS_CANDIDATES: usize = 16;

/// Instantiates the overlap with `gamma`, follows the outer rule at the
/// root and the inner rule at the overlap position, and looks for two
/// non-joinable ends.
pub fn witness_nonconfluence(
    peak: &CriticalPeak,
    gamma: &Substitution,
    trs: &IndexedTrs,
    config: &AnalysisConfig,
) -> Option<Witness> {
    let u = gamma.apply(&peak.top);
    let bounds = SearchBounds {
        depth: config.eq_depth + 1,
        nodes: config.node_bound,
    };
    let reach = Reach::explore(&u, trs, bounds);
    let mut lefts: Vec<(Term, Vec<Step>)> = Vec::new();
    let mut rights: Vec<(Term, Vec<Step>)> = Vec::new();
    for t in &reach.terms {
        if lefts.len() >= WITNESS_CANDIDATES && rights.len() >= WITNESS_CANDIDATES {
            break;
        }
        for s in one_step_reducts(t, trs) {
            let is_left = s.position.is_root() && s.rule == peak.outer_rule;
            let is_right = s.position == peak.position && s.rule == peak.inner_rule;
            if !(is_left || is_right) {
                continue;
            }
            let mut d = reach.derivation_to(t).expect("discovered");
            d.push(s.clone());
            let list = if is_left { &mut lefts } else { &mut rights };
            if list.len() < WITNESS_CANDIDATES && !list.iter().any(|(x, _)| x == &s.result) {
                list.push((s.result.clone(), d));
            }
        }
    }
    for (v, dv) in &lefts {
        for (w, dw) in &rights {
            if let Some(proof) = prove_non_joinable(v, w, trs, config.nf_bounds()) {
                return Some(Witness {
                    gamma: gamma.clone(),
                    source: u.clone(),
                    left_steps: dv.clone(),
                    right_steps: dw.clone(),
                    left: v.clone(),
                    right: w.clone(),
                    proof,
                });
            }
        }
    }
    None
}

/// Outcome for one peak.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "evidence", rename_all = "kebab-case")]
pub enum PairEvidence {
    Diagram(DiagramEvidence),
    Unrealizable { realizability: Realizability },
    Witness(Witness),
    Open { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairAnalysis {
    pub peak: CriticalPeak,
    pub evidence: PairEvidence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Confluent,
    NonConfluent,
    Maybe,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Confluent => 0,
            Verdict::NonConfluent => 1,
            Verdict::Maybe => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confluent => "CONFLUENT",
            Verdict::NonConfluent => "NON-CONFLUENT",
            Verdict::Maybe => "MAYBE",
        })
    }
}

/// Full result of the pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub verdict: Verdict,
    /// The first failing obligation for MAYBE, or the deciding pair.
    pub reason: String,
    pub config: AnalysisConfig,
    pub layering: OverlapReport,
    pub overlay: bool,
    pub rank_check: Option<RankCheck>,
    pub rank_assumed: bool,
    pub pairs: Vec<PairAnalysis>,
}

/// Analyzes one peak: diagram first, then realizability, then a witness.
pub fn analyze_pair(
    peak: &CriticalPeak,
    trs: &IndexedTrs,
    layered: bool,
    config: &AnalysisConfig,
) -> PairEvidence {
    let mut diagram_note = String::from("system is not layered, no diagram searched");
    if layered {
        let mut ranker = Ranker::assume_layered(trs);
        match find_diagram(peak, trs, &mut ranker, config) {
            Ok(d) => return PairEvidence::Diagram(d),
            Err(f) => {
                diagram_note = format!(
                    "no decreasing diagram ({} + {} states explored{})",
                    f.explored_left,
                    f.explored_right,
                    if f.complete { ", search space exhausted" } else { ", bound reached" }
                )
            }
        }
    }
    match check_realizability(peak, trs, config) {
        r @ Realizability::Unrealizable { .. } => PairEvidence::Unrealizable { realizability: r },
        Realizability::Realizable { gamma, .. } => match witness_nonconfluence(peak, &gamma, trs, config) {
            Some(w) => PairEvidence::Witness(w),
            None => PairEvidence::Open {
                reason: format!("{diagram_note}; realizable by {gamma} but no non-joinable peak found"),
            },
        },
        Realizability::Unknown { reason } => PairEvidence::Open {
            reason: format!("{diagram_note}; realizability unknown: {reason}"),
        },
    }
}

/// Runs the whole pipeline.
pub fn analyze(trs: &IndexedTrs, config: &AnalysisConfig) -> Analysis {
    let peaks = cyclic_critical_pairs(trs);
    analyze_with(trs, config, peaks, |peak, layered| analyze_pair(peak, trs, layered, config))
}

/// Like [`analyze`], evaluating peaks with `eval` (e.g. in parallel).
pub fn analyze_with(
    trs: &IndexedTrs,
    config: &AnalysisConfig,
    peaks: Vec<CriticalPeak>,
    eval: impl Fn(&CriticalPeak, bool) -> PairEvidence,
) -> Analysis {
    let layering = check_dlo(trs);
    let overlay = is_overlay(trs);
    let layered = layering.layered;
    let rank_check = layered.then(|| check_rank_nonincreasing(trs));
    let pairs: Vec<PairAnalysis> = peaks
        .into_iter()
        .map(|peak| {
            let evidence = eval(&peak, layered);
            PairAnalysis { peak, evidence }
        })
        .collect();
    let (verdict, reason) = decide(trs, config, &layering, rank_check.as_ref(), &pairs);
    Analysis {
        verdict,
        reason,
        config: *config,
        layering,
        overlay,
        rank_check,
        rank_assumed: config.assume_rank_nonincreasing,
        pairs,
    }
}

fn decide(
    trs: &IndexedTrs,
    config: &AnalysisConfig,
    layering: &OverlapReport,
    rank_check: Option<&RankCheck>,
    pairs: &[PairAnalysis],
) -> (Verdict, String) {
    if let Some(p) = pairs.iter().find(|p| matches!(p.evidence, PairEvidence::Witness(_))) {
        return (
            Verdict::NonConfluent,
            format!("pair #{} yields a non-joinable peak", p.peak.number),
        );
    }
    if !layering.layered {
        let v = &layering.violations[0];
        return (Verdict::Maybe, format!("system is not layered: {v}"));
    }
    if let Some(rc) = rank_check {
        if !rc.ok && !config.assume_rank_nonincreasing {
            let rules: Vec<String> = rc
                .failing_rules()
                .iter()
                .map(|k| format!("rule {} ({})", k + 1, trs.rule(*k)))
                .collect();
            return (
                Verdict::Maybe,
                format!("rank non-increase check failed for {}", rules.join(", ")),
            );
        }
    }
    if let Some(p) = pairs.iter().find(|p| matches!(p.evidence, PairEvidence::Open { .. })) {
        let PairEvidence::Open { reason } = &p.evidence else {
            unreachable!()
        };
        return (Verdict::Maybe, format!("pair #{}: {reason}", p.peak.number));
    }
    let reason = if pairs.is_empty() {
        "layered, rank non-increasing, no cyclic critical pairs".to_string()
    } else {
        "layered, rank non-increasing, every cyclic critical pair has a decreasing diagram or is unrealizable"
            .to_string()
    };
    (Verdict::Confluent, reason)
}
