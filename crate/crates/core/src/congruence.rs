//! Ground congruence closure with variables read as constants.

use std::collections::HashMap;

use crate::term::{Symbol, Term, Var};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Head {
    Var(Var),
    Sym(Symbol),
}

/// Union-find over a term graph, closed under congruence after every merge.
///
/// Terms are added on demand, so one structure answers many queries modulo
/// the same equations.
#[derive(Clone, Debug, Default)]
pub struct CongruenceClosure {
    ids: HashMap<Term, usize>,
    nodes: Vec<(Head, Vec<usize>)>,
    parent: Vec<usize>,
    size: Vec<usize>,
    uses: Vec<Vec<usize>>,
    sigs: HashMap<(Head, Vec<usize>), usize>,
}

impl CongruenceClosure {
    pub fn new(eqs: &[(Term, Term)]) -> Self {
        let mut cc = CongruenceClosure::default();
        for (u, v) in eqs {
            let a = cc.add_term(u);
            let b = cc.add_term(v);
            cc.merge(a, b);
        }
        cc
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn signature(&mut self, n: usize) -> (Head, Vec<usize>) {
        let (head, kids) = self.nodes[n].clone();
        (head, kids.into_iter().map(|k| self.find(k)).collect())
    }

    /// Adds `t` and its subterms; returns a node id for `t`.
    pub fn add_term(&mut self, t: &Term) -> usize {
        if let Some(&id) = self.ids.get(t) {
            return id;
        }
        let (head, kids) = match t {
            Term::Var(v) => (Head::Var(v.clone()), Vec::new()),
            Term::App(f, args) => (Head::Sym(f.clone()), args.iter().map(|a| self.add_term(a)).collect()),
        };
        let sig = (head.clone(), kids.iter().map(|&k| self.find(k)).collect::<Vec<_>>());
        if let Some(&id) = self.sigs.get(&sig) {
            self.ids.insert(t.clone(), id);
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push((head, kids));
        self.parent.push(id);
        self.size.push(1);
        self.uses.push(Vec::new());
        for &k in &sig.1 {
            self.uses[k].push(id);
        }
        self.sigs.insert(sig, id);
        self.ids.insert(t.clone(), id);
        id
    }

    pub fn merge(&mut self, a: usize, b: usize) {
        let mut pending = vec![(a, b)];
        while let Some((a, b)) = pending.pop() {
            let (mut ra, mut rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            if self.size[ra] < self.size[rb] {
                std::mem::swap(&mut ra, &mut rb);
            }
            self.parent[rb] = ra;
            self.size[ra] += self.size[rb];
            let moved = std::mem::take(&mut self.uses[rb]);
            for p in moved {
                let sig = self.signature(p);
                match self.sigs.get(&sig).copied() {
                    Some(q) => {
                        if self.find(q) != self.find(p) {
                            pending.push((p, q));
                        }
                    }
                    None => {
                        self.sigs.insert(sig, p);
                    }
                }
                self.uses[ra].push(p);
            }
        }
    }

    /// Asserts `u = v`.
    pub fn assert_eq(&mut self, u: &Term, v: &Term) {
        let a = self.add_term(u);
        let b = self.add_term(v);
        self.merge(a, b);
    }

    /// Canonical class id of `t`; equal ids mean congruent terms.
    pub fn class_of(&mut self, t: &Term) -> usize {
        let id = self.add_term(t);
        self.find(id)
    }

    pub fn congruent(&mut self, u: &Term, v: &Term) -> bool {
        self.class_of(u) == self.class_of(v)
    }
}

/// Decides `u =cc_eqs v`.
pub fn congruent(u: &Term, v: &Term, eqs: &[(Term, Term)]) -> bool {
    u == v || CongruenceClosure::new(eqs).congruent(u, v)
}
