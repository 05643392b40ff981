//! Saturation engine for the least compatible preorder generated by a
//! theory's instances on a bounded term universe.
//!
//! Terms are hash-consed into nodes whose children are equivalence classes,
//! as in an e-graph. The engine keeps a reflexive-transitive order on
//! classes and applies three rules until nothing changes:
//!
//! * compatibility: `op(c⃗) ⊑ op(d⃗)` whenever `c_i ⊑ d_i` for all `i`;
//! * instances: `l[σ] ⊑ r[σ]` for each law `l <= r` and each substitution of
//!   classes whose instantiated sides fit under the height bound;
//! * antisymmetry: classes below each other are merged, and nodes that
//!   become identical merge their classes (congruence).
//!
//! Two ways of populating the graph share this machinery. Syntactic mode
//! inserts every ground term up to a depth. Compact mode inserts `op(c⃗)`
//! only for classes whose smallest term is shallow enough, which represents
//! the same universe modulo the equivalences found so far.

use std::collections::HashMap;

use crate::algebra::{Term, Theory};
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::subset::{transitive_closure, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Gen(usize),
    App(usize, Vec<usize>),
}

struct Law {
    lhs: Term,
    rhs: Term,
    vars: usize,
    depth: Vec<usize>,
}

pub(crate) struct Engine<'a> {
    theory: &'a Theory,
    nodes: Vec<Node>,
    class: Vec<usize>,
    memo: HashMap<Node, usize>,
    /// One node per distinct canonical key.
    live: Vec<usize>,
    k: usize,
    le: Vec<Subset>,
    minh: Vec<usize>,
    laws: Vec<Law>,
    node_guard: usize,
}

/// Classes as computed by the engine, indexed `0..k` in engine order.
pub(crate) struct RawQuotient {
    pub le: Vec<Subset>,
    pub tables: Vec<Vec<Option<usize>>>,
    pub reps: Vec<Term>,
    pub unit: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
        true
    }
}

const INF: usize = usize::MAX / 2;

impl<'a> Engine<'a> {
    pub fn new(theory: &'a Theory, gens: &FinitePoset, node_guard: usize) -> Engine<'a> {
        let laws = theory
            .ineqs
            .iter()
            .map(|(l, r)| {
                let vars = l.var_count().max(r.var_count());
                let mut d = Vec::new();
                l.var_depths(&mut d);
                r.var_depths(&mut d);
                d.resize(vars, None);
                Law {
                    lhs: l.clone(),
                    rhs: r.clone(),
                    vars,
                    depth: d.into_iter().map(|x| x.unwrap_or(0)).collect(),
                }
            })
            .collect();
        let n = gens.n();
        let mut e = Engine {
            theory,
            nodes: Vec::new(),
            class: Vec::new(),
            memo: HashMap::new(),
            live: Vec::new(),
            k: 0,
            le: Vec::new(),
            minh: Vec::new(),
            laws,
            node_guard,
        };
        e.insert_nodes((0..n).map(Node::Gen).collect());
        for g in 0..n {
            e.le[g] = gens.up_of(g).clone();
        }
        e.recompute_heights();
        e
    }

    pub fn node_count(&self) -> usize {
        self.live.len()
    }

    /// Inserts nodes with fresh classes; keys already present are ignored.
    /// Returns the node id of each key.
    fn insert_nodes(&mut self, keys: Vec<Node>) -> Vec<usize> {
        let ids = self.push_nodes(keys);
        self.extend_order();
        ids
    }

    /// Like `insert_nodes`, without resizing the order.
    fn push_nodes(&mut self, keys: Vec<Node>) -> Vec<usize> {
        let mut ids = Vec::with_capacity(keys.len());
        for key in keys {
            if let Some(&id) = self.memo.get(&key) {
                ids.push(id);
                continue;
            }
            let id = self.nodes.len();
            self.nodes.push(key.clone());
            self.class.push(self.k);
            self.memo.insert(key, id);
            self.live.push(id);
            self.k += 1;
            ids.push(id);
        }
        ids
    }

    /// Gives classes added since the last call a row and a column in the order.
    fn extend_order(&mut self) {
        if self.le.len() == self.k {
            return;
        }
        let old = self.le.len();
        for row in self.le.iter_mut() {
            *row = row.resized(self.k);
        }
        for c in old..self.k {
            self.le.push(Subset::singleton(self.k, c));
            self.minh.push(INF);
        }
    }

    fn check_guard(&self, depth: usize) -> Result<()> {
        if self.live.len() > self.node_guard {
            return Err(Error::UniverseTooLarge {
                depth,
                guard: self.node_guard,
            });
        }
        Ok(())
    }

    /// Syntactic mode: inserts the given ground terms, which must be closed
    /// under subterms and listed children-first. Returns each term's node.
    pub fn insert_terms(&mut self, terms: &[Term]) -> Result<Vec<usize>> {
        let mut node_of: HashMap<&Term, usize> = HashMap::new();
        let mut ids = Vec::with_capacity(terms.len());
        for t in terms {
            let key = match t {
                Term::Gen(g) => Node::Gen(*g),
                Term::Var(_) => return Err(Error::Invalid("universe terms must be ground".into())),
                Term::App(op, args) => {
                    let ch = args
                        .iter()
                        .map(|a| {
                            node_of
                                .get(a)
                                .map(|&nid| self.class[nid])
                                .ok_or_else(|| Error::Invalid("universe is not closed under subterms".into()))
                        })
                        .collect::<Result<Vec<usize>>>()?;
                    Node::App(*op, ch)
                }
            };
            let id = self.push_nodes(vec![key])[0];
            node_of.insert(t, id);
            ids.push(id);
        }
        self.extend_order();
        self.recompute_heights();
        self.check_guard(terms.iter().map(Term::height).max().unwrap_or(0))?;
        Ok(ids)
    }

    /// Compact mode: adds `op(c⃗)` for every tuple of classes whose smallest
    /// terms have height below `depth`. Returns how many nodes were new.
    fn grow(&mut self, depth: usize) -> Result<usize> {
        let shallow: Vec<usize> = (0..self.k)
            .filter(|&c| self.minh[c] < depth)
            .collect();
        let mut keys = Vec::new();
        for op in 0..self.theory.sig.ops.len() {
            let a = self.theory.sig.arity(op);
            let total = (shallow.len() as f64).powi(a as i32);
            if total + self.live.len() as f64 > self.node_guard as f64 {
                return Err(Error::UniverseTooLarge {
                    depth,
                    guard: self.node_guard,
                });
            }
            for t in super::structure::tuples(shallow.len(), a) {
                let key = Node::App(op, t.iter().map(|&i| shallow[i]).collect());
                if !self.memo.contains_key(&key) {
                    keys.push(key);
                }
            }
        }
        let added = keys.len();
        self.insert_nodes(keys);
        self.recompute_heights();
        self.check_guard(depth)?;
        Ok(added)
    }

    /// Grows and saturates at `depth` until growth adds nothing.
    pub fn run_compact(&mut self, depth: usize) -> Result<()> {
        loop {
            let added = self.grow(depth)?;
            self.saturate(depth);
            if added == 0 {
                return Ok(());
            }
        }
    }

    fn recompute_heights(&mut self) {
        let mut h = vec![INF; self.k];
        loop {
            let mut changed = false;
            for &nid in &self.live {
                let v = match &self.nodes[nid] {
                    Node::Gen(_) => 0,
                    Node::App(_, ch) => 1 + ch.iter().map(|&c| h[c]).max().unwrap_or(0),
                };
                let c = self.class[nid];
                if v < h[c] {
                    h[c] = v;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.minh = h;
    }

    /// Class and syntactic height of `t[σ]` with each variable replaced by a
    /// smallest term of its class, if every node along the way exists.
    fn instantiate(&self, t: &Term, sigma: &[usize]) -> Option<(usize, usize)> {
        match t {
            Term::Var(v) => Some((sigma[*v], self.minh[sigma[*v]])),
            Term::Gen(g) => self.memo.get(&Node::Gen(*g)).map(|&n| (self.class[n], 0)),
            Term::App(op, args) => {
                let mut ch = Vec::with_capacity(args.len());
                let mut h = 0;
                for a in args {
                    let (c, ha) = self.instantiate(a, sigma)?;
                    ch.push(c);
                    h = h.max(ha);
                }
                let nid = *self.memo.get(&Node::App(*op, ch))?;
                Some((self.class[nid], h + 1))
            }
        }
    }

    fn compat_facts(&self, out: &mut Vec<(usize, usize)>) {
        for op in 0..self.theory.sig.ops.len() {
            let apps: Vec<(usize, &Vec<usize>)> = self
                .live
                .iter()
                .filter_map(|&nid| match &self.nodes[nid] {
                    Node::App(o, ch) if *o == op => Some((self.class[nid], ch)),
                    _ => None,
                })
                .collect();
            for &(cu, chu) in &apps {
                for &(cv, chv) in &apps {
                    if self.le[cu].contains(cv) {
                        continue;
                    }
                    if chu.iter().zip(chv).all(|(&a, &b)| self.le[a].contains(b)) {
                        out.push((cu, cv));
                    }
                }
            }
        }
    }

    fn instance_facts(&self, bound: usize, out: &mut Vec<(usize, usize)>) {
        for law in &self.laws {
            let cands: Vec<Vec<usize>> = law
                .depth
                .iter()
                .map(|&d| {
                    (0..self.k)
                        .filter(|&c| self.minh[c] + d <= bound)
                        .collect()
                })
                .collect();
            let total: usize = cands.iter().map(Vec::len).product();
            let mut sigma = vec![0usize; law.vars];
            for mut code in 0..total {
                for v in (0..law.vars).rev() {
                    sigma[v] = cands[v][code % cands[v].len()];
                    code /= cands[v].len();
                }
                if let (Some((l, hl)), Some((r, hr))) = (
                    self.instantiate(&law.lhs, &sigma),
                    self.instantiate(&law.rhs, &sigma),
                ) {
                    if hl <= bound && hr <= bound && !self.le[l].contains(r) {
                        out.push((l, r));
                    }
                }
            }
        }
    }

    /// Applies the rules to a fixpoint, with instance heights bounded by `bound`.
    pub fn saturate(&mut self, bound: usize) {
        loop {
            let mut facts = Vec::new();
            self.compat_facts(&mut facts);
            self.instance_facts(bound, &mut facts);
            let mut changed = false;
            for (a, b) in facts {
                changed |= self.le[a].insert(b);
            }
            if changed {
                transitive_closure(&mut self.le);
            }
            let merged = self.merge();
            if !changed && !merged {
                return;
            }
        }
    }

    /// Merges mutually-below classes and congruent nodes until stable.
    /// Returns whether anything merged.
    fn merge(&mut self) -> bool {
        let mut any = false;
        loop {
            let mut uf = UnionFind((0..self.k).collect());
            let mut changed = false;
            for a in 0..self.k {
                for b in self.le[a].iter() {
                    if b > a && self.le[b].contains(a) {
                        changed |= uf.union(a, b);
                    }
                }
            }
            // Congruence: nodes whose children fall into the same classes.
            loop {
                let mut seen: HashMap<Node, usize> = HashMap::new();
                let mut again = false;
                for &nid in &self.live {
                    let key = self.canon(&mut uf, nid);
                    let c = uf.find(self.class[nid]);
                    match seen.get(&key) {
                        Some(&other) => {
                            if uf.union(c, other) {
                                again = true;
                                changed = true;
                            }
                        }
                        None => {
                            seen.insert(key, c);
                        }
                    }
                }
                if !again {
                    break;
                }
            }
            if !changed {
                return any;
            }
            any = true;
            self.renumber(&mut uf);
        }
    }

    fn canon(&self, uf: &mut UnionFind, nid: usize) -> Node {
        match &self.nodes[nid] {
            Node::Gen(g) => Node::Gen(*g),
            Node::App(op, ch) => Node::App(*op, ch.iter().map(|&c| uf.find(c)).collect()),
        }
    }

    /// Collapses classes along `uf`, renumbering roots in increasing order,
    /// and rebuilds nodes, the memo and the order.
    fn renumber(&mut self, uf: &mut UnionFind) {
        let mut new_id = vec![usize::MAX; self.k];
        let mut next = 0;
        for c in 0..self.k {
            let r = uf.find(c);
            if new_id[r] == usize::MAX {
                new_id[r] = next;
                next += 1;
            }
            new_id[c] = new_id[r];
        }
        let k2 = next;
        let mut le2 = vec![Subset::empty(k2); k2];
        for a in 0..self.k {
            let row = self.le[a].map(k2, |b| new_id[b]);
            le2[new_id[a]].union_with(&row);
        }
        transitive_closure(&mut le2);
        for nid in 0..self.nodes.len() {
            self.class[nid] = new_id[self.class[nid]];
            if let Node::App(_, ch) = &mut self.nodes[nid] {
                for c in ch.iter_mut() {
                    *c = new_id[*c];
                }
            }
        }
        self.memo.clear();
        let mut live = Vec::new();
        for nid in 0..self.nodes.len() {
            let key = self.nodes[nid].clone();
            if !self.memo.contains_key(&key) {
                self.memo.insert(key, nid);
                live.push(nid);
            }
        }
        // Nodes are only ever appended, so every old node keeps pointing at
        // its own canonical representative through the memo.
        self.live = live;
        self.k = k2;
        self.le = le2;
        self.recompute_heights();
    }

    pub fn class_of_node(&self, nid: usize) -> usize {
        self.class[nid]
    }

    pub fn order(&self) -> &[Subset] {
        &self.le
    }

    /// Smallest term of each class, by height then term order.
    fn representatives(&self) -> Vec<Term> {
        let mut best: Vec<Option<Term>> = vec![None; self.k];
        loop {
            let mut changed = false;
            for &nid in &self.live {
                let cand = match &self.nodes[nid] {
                    Node::Gen(g) => Some(Term::Gen(*g)),
                    Node::App(op, ch) => ch
                        .iter()
                        .map(|&c| best[c].clone())
                        .collect::<Option<Vec<Term>>>()
                        .map(|args| Term::App(*op, args)),
                };
                if let Some(t) = cand {
                    let c = self.class[nid];
                    let better = match &best[c] {
                        None => true,
                        Some(b) => (t.height(), &t) < (b.height(), b),
                    };
                    if better {
                        best[c] = Some(t);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        best.into_iter().map(|t| t.expect("every class has a term")).collect()
    }

    pub fn snapshot(&self, gens: usize) -> RawQuotient {
        let sig = &self.theory.sig;
        let tables = (0..sig.ops.len())
            .map(|op| {
                super::structure::tuples(self.k, sig.arity(op))
                    .map(|t| self.memo.get(&Node::App(op, t)).map(|&nid| self.class[nid]))
                    .collect()
            })
            .collect();
        RawQuotient {
            le: self.le.clone(),
            tables,
            reps: self.representatives(),
            unit: (0..gens)
                .map(|g| self.class[self.memo[&Node::Gen(g)]])
                .collect(),
        }
    }
}
