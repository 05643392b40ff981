//! Finite posets and the order-theoretic primitives every other module uses.
//!
//! A [`FinitePoset`] always indexes its elements along a linear extension of
//! its order: `i <= j` in the order implies `i <= j` as integers. Ties in the
//! extension are broken by label, so the indexing is a function of the labelled
//! order alone.

mod corpus;
mod iso;
mod maps;

pub use corpus::{corpus, corpus_of_size};
pub use iso::{find_isomorphism, poset_isomorphic};
pub use maps::{enumerate_monotone_maps, MonotoneMap, MonotoneMaps, DEFAULT_MAP_GUARD};

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::subset::{transitive_closure, Subset};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<Subset>,
    down: Vec<Subset>,
}

/// Orders `0..n` along a linear extension of `le`, choosing the least
/// `key` among the available minimal elements at each step.
fn linear_extension<K: Ord>(n: usize, up: &[Subset], key: impl Fn(usize) -> K) -> Vec<usize> {
    let mut indeg: Vec<usize> = (0..n)
        .map(|j| (0..n).filter(|&i| i != j && up[i].contains(j)).count())
        .collect();
    let mut ready: BTreeSet<(K, usize)> = (0..n)
        .filter(|&i| indeg[i] == 0)
        .map(|i| (key(i), i))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(first) = ready.pop_first() {
        let i = first.1;
        order.push(i);
        for j in up[i].iter() {
            if j != i {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.insert((key(j), j));
                }
            }
        }
    }
    debug_assert_eq!(order.len(), n);
    order
}

impl FinitePoset {
    /// Reflexive-transitive closure of `pairs` over `labels`, canonically indexed.
    pub fn from_relation<L: AsRef<str>, A: AsRef<str>, B: AsRef<str>>(
        labels: &[L],
        pairs: &[(A, B)],
    ) -> Result<FinitePoset> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let n = labels.len();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let look = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let mut rows = vec![Subset::empty(n); n];
        for (a, b) in pairs {
            let (a, b) = (look(a.as_ref())?, look(b.as_ref())?);
            rows[a].insert(b);
        }
        Ok(FinitePoset::from_up_rows(labels, rows)?.0)
    }

    /// Builds a poset from `rows[i] = {j : i <= j}` (closed reflexively and
    /// transitively here). Returns the poset and `perm` with `perm[new] = old`.
    pub fn from_up_rows(labels: Vec<String>, mut rows: Vec<Subset>) -> Result<(FinitePoset, Vec<usize>)> {
        let n = labels.len();
        assert_eq!(rows.len(), n);
        transitive_closure(&mut rows);
        for i in 0..n {
            for j in rows[i].iter() {
                if j != i && rows[j].contains(i) {
                    let (a, b) = if i < j { (i, j) } else { (j, i) };
                    return Err(Error::Cycle(labels[a].clone(), labels[b].clone()));
                }
            }
        }
        let perm = linear_extension(n, &rows, |i| labels[i].clone());
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let up: Vec<Subset> = perm.iter().map(|&old| rows[old].map(n, |j| inv[j])).collect();
        let new_labels = perm.iter().map(|&old| labels[old].clone()).collect();
        Ok((FinitePoset::from_closed(new_labels, up), perm))
    }

    /// Builds a poset on `0..n` from a predicate that must already be a
    /// partial order. Returns the poset and `perm` with `perm[new] = old`.
    pub fn from_fn(labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<(FinitePoset, Vec<usize>)> {
        let n = labels.len();
        let rows = (0..n)
            .map(|i| Subset::from_indices(n, (0..n).filter(|&j| le(i, j))))
            .collect();
        FinitePoset::from_up_rows(labels, rows)
    }

    fn from_closed(labels: Vec<String>, up: Vec<Subset>) -> FinitePoset {
        let n = labels.len();
        let mut down = vec![Subset::empty(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        let p = FinitePoset { labels, up, down };
        debug_assert!(p.check_axioms().is_ok());
        p
    }

    /// Re-verifies reflexivity, antisymmetry, transitivity and the indexing
    /// convention.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            if !self.le(i, i) {
                return Err(Error::Invalid(format!("not reflexive at {}", self.labels[i])));
            }
            for j in self.up[i].iter() {
                if j < i {
                    return Err(Error::Invalid("indexing is not a linear extension".into()));
                }
                if j != i && self.le(j, i) {
                    return Err(Error::Cycle(self.labels[i].clone(), self.labels[j].clone()));
                }
                if !self.up[j].is_subset(&self.up[i]) {
                    return Err(Error::Invalid(format!("not transitive through {}", self.labels[j])));
                }
            }
        }
        Ok(())
    }

    /// The poset with `n` elements and no proper comparabilities, labelled a, b, ...
    pub fn antichain(n: usize) -> FinitePoset {
        FinitePoset::from_fn(letter_labels(n), |i, j| i == j).unwrap().0
    }

    /// The `n`-chain labelled a < b < ...
    pub fn chain(n: usize) -> FinitePoset {
        FinitePoset::from_fn(letter_labels(n), |i, j| i <= j).unwrap().0
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut s = Subset::empty(self.n());
        for l in labels {
            s.insert(self.index_of(l.as_ref())?);
        }
        Ok(s)
    }

    pub fn labels_of(&self, s: &Subset) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.le(j, i)
    }

    /// `↑i`
    pub fn up_of(&self, i: usize) -> &Subset {
        &self.up[i]
    }

    /// `↓i`
    pub fn down_of(&self, i: usize) -> &Subset {
        &self.down[i]
    }

    /// The order as rows `up[i] = ↑i`.
    pub fn up_rows(&self) -> &[Subset] {
        &self.up
    }

    pub fn empty_set(&self) -> Subset {
        Subset::empty(self.n())
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.n())
    }

    pub fn up_set(&self, a: &Subset) -> Subset {
        let mut s = self.empty_set();
        for i in a.iter() {
            s.union_with(&self.up[i]);
        }
        s
    }

    pub fn down_set(&self, a: &Subset) -> Subset {
        let mut s = self.empty_set();
        for i in a.iter() {
            s.union_with(&self.down[i]);
        }
        s
    }

    pub fn is_up_set(&self, a: &Subset) -> bool {
        a.iter().all(|i| self.up[i].is_subset(a))
    }

    pub fn is_down_set(&self, a: &Subset) -> bool {
        a.iter().all(|i| self.down[i].is_subset(a))
    }

    /// `↓a ∩ ↑a = a`
    pub fn is_convex(&self, a: &Subset) -> bool {
        self.down_set(a).intersection(&self.up_set(a)) == *a
    }

    pub fn upper_bounds(&self, a: &Subset) -> Subset {
        let mut s = self.full_set();
        for i in a.iter() {
            s.intersect_with(&self.up[i]);
        }
        s
    }

    pub fn lower_bounds(&self, a: &Subset) -> Subset {
        let mut s = self.full_set();
        for i in a.iter() {
            s.intersect_with(&self.down[i]);
        }
        s
    }

    /// The greatest element of `a`, if `a` has one.
    pub fn maximum(&self, a: &Subset) -> Option<usize> {
        a.iter().find(|&m| a.is_subset(&self.down[m]))
    }

    pub fn minimum(&self, a: &Subset) -> Option<usize> {
        a.iter().find(|&m| a.is_subset(&self.up[m]))
    }

    pub fn maximal_elements(&self, a: &Subset) -> Subset {
        Subset::from_indices(
            self.n(),
            a.iter().filter(|&i| self.up[i].intersection(a).len() == 1),
        )
    }

    pub fn minimal_elements(&self, a: &Subset) -> Subset {
        Subset::from_indices(
            self.n(),
            a.iter().filter(|&i| self.down[i].intersection(a).len() == 1),
        )
    }

    /// Least upper bound of `a`, if it exists.
    pub fn sup(&self, a: &Subset) -> Option<usize> {
        self.minimum(&self.upper_bounds(a))
    }

    /// Greatest lower bound of `a`, if it exists.
    pub fn inf(&self, a: &Subset) -> Option<usize> {
        self.maximum(&self.lower_bounds(a))
    }

    /// Nonempty, and every pair in `d` has an upper bound in `d`.
    ///
    /// For finite `d` this holds iff `d` has a greatest element; debug builds
    /// check the two agree.
    pub fn is_directed(&self, d: &Subset) -> bool {
        if d.is_empty() {
            return false;
        }
        let pairwise = d.iter().all(|x| {
            d.iter()
                .all(|y| self.up[x].intersection(&self.up[y]).intersects(d))
        });
        debug_assert_eq!(pairwise, self.maximum(d).is_some());
        pairwise
    }

    /// `A^δ = {x : x <= y for every upper bound y of A}`.
    pub fn cut(&self, a: &Subset) -> Subset {
        self.lower_bounds(&self.upper_bounds(a))
    }

    /// Every directed subset, grouped by maximum: for each `m`, the sets
    /// `S ∪ {m}` with `S ⊆ ↓m`, in increasing numeric order within a group.
    pub fn directed_subsets(&self) -> Vec<Subset> {
        let n = self.n();
        let mut out = Vec::new();
        for m in 0..n {
            let below: Vec<usize> = self.down[m].iter().filter(|&i| i != m).collect();
            assert!(below.len() < 63, "directed_subsets: too many elements below {m}");
            for mask in 0u64..(1u64 << below.len()) {
                let mut d = Subset::singleton(n, m);
                for (k, &i) in below.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        d.insert(i);
                    }
                }
                out.push(d);
            }
        }
        out
    }

    /// The way-below relation, computed from its definition: `x ≪ y` iff every
    /// directed `D` whose supremum is above `y` meets `↑x`. Returns rows
    /// `rows[x] = {y : x ≪ y}`.
    pub fn way_below(&self) -> Vec<Subset> {
        let n = self.n();
        let dirs: Vec<(Subset, usize)> = self
            .directed_subsets()
            .into_iter()
            .map(|d| {
                let s = self.sup(&d).expect("finite directed sets have a supremum");
                (d, s)
            })
            .collect();
        (0..n)
            .map(|x| {
                Subset::from_indices(
                    n,
                    (0..n).filter(|&y| {
                        dirs.iter()
                            .filter(|(_, s)| self.le(y, *s))
                            .all(|(d, _)| d.intersects(&self.up[x]))
                    }),
                )
            })
            .collect()
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in self.up[i].iter() {
                if j == i {
                    continue;
                }
                let between = self.up[i].intersection(&self.down[j]);
                if between.len() == 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Number of elements in a longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![1; self.n()];
        for j in 0..self.n() {
            for i in self.down[j].iter() {
                if i != j {
                    h[j] = h[j].max(h[i] + 1);
                }
            }
        }
        h
    }

    /// Number of elements in a longest chain starting at each element.
    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![1; self.n()];
        for i in (0..self.n()).rev() {
            for j in self.up[i].iter() {
                if j != i {
                    d[i] = d[i].max(d[j] + 1);
                }
            }
        }
        d
    }

    pub fn comparable_pairs(&self) -> usize {
        self.up.iter().map(|r| r.len() - 1).sum()
    }

    /// The order dual, re-indexed canonically.
    pub fn dual(&self) -> FinitePoset {
        FinitePoset::from_up_rows(self.labels.clone(), self.down.clone())
            .unwrap()
            .0
    }

    /// The sub-poset on `s`, re-indexed canonically. Returns it with
    /// `perm[new] = old index in self`.
    pub fn restrict(&self, s: &Subset) -> (FinitePoset, Vec<usize>) {
        let idx: Vec<usize> = s.iter().collect();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let (p, perm) = FinitePoset::from_fn(labels, |a, b| self.le(idx[a], idx[b])).unwrap();
        (p, perm.into_iter().map(|k| idx[k]).collect())
    }

    /// All down-sets (including `∅`), in increasing numeric order.
    pub fn down_sets(&self) -> Vec<Subset> {
        let n = self.n();
        let mut out = Vec::new();
        let mut cur = Subset::empty(n);
        self.down_sets_rec(n, &mut cur, &mut out);
        out.sort();
        out
    }

    fn down_sets_rec(&self, i: usize, cur: &mut Subset, out: &mut Vec<Subset>) {
        if i == 0 {
            out.push(cur.clone());
            return;
        }
        let x = i - 1;
        let forced = self.up[x].iter().any(|j| j != x && cur.contains(j));
        if !forced {
            self.down_sets_rec(x, cur, out);
        }
        cur.insert(x);
        self.down_sets_rec(x, cur, out);
        cur.remove(x);
    }

    /// All up-sets (including `∅`), in increasing numeric order.
    pub fn up_sets(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = self.down_sets().iter().map(|d| d.complement()).collect();
        out.sort();
        out
    }

    /// Componentwise order on `P × Q`. Element `(p, q)` has label `(p,q)`.
    pub fn product(&self, q: &FinitePoset) -> FinitePoset {
        let (m, k) = (self.n(), q.n());
        let labels = (0..m * k)
            .map(|t| format!("({},{})", self.labels[t / k], q.labels[t % k]))
            .collect();
        FinitePoset::from_fn(labels, |s, t| {
            self.le(s / k, t / k) && q.le(s % k, t % k)
        })
        .unwrap()
        .0
    }
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(i, j)| format!("{}<{}", self.labels[i], self.labels[j]))
            .collect();
        write!(f, "Poset{:?} {{{}}}", self.labels, covers.join(" "))
    }
}

/// Labels `a, b, ..., z, a1, b1, ...`.
pub fn letter_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            let c = (b'a' + (i % 26) as u8) as char;
            if i < 26 {
                c.to_string()
            } else {
                format!("{c}{}", i / 26)
            }
        })
        .collect()
}

/// Renders a subset of labelled elements as `{a,b}`.
pub fn set_label(labels: &[String], s: &Subset) -> String {
    let parts: Vec<&str> = s.iter().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FinitePoset {
        FinitePoset::from_relation(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap()
    }

    #[test]
    fn relation_closure() {
        let p = FinitePoset::from_relation(&["a"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(p.n(), 1);
        assert!(p.le(0, 0));
        let c = FinitePoset::from_relation(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(c.le(0, 2));
        assert_eq!(c.comparable_pairs(), 3);
        let e = FinitePoset::from_relation(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(e, Err(Error::Cycle(_, _))));
        let e = FinitePoset::from_relation(&["a"], &[("a", "z")]);
        assert!(matches!(e, Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn canonical_indexing_follows_order_then_label() {
        let p = FinitePoset::from_relation(&["z", "y", "x"], &[("z", "x")]).unwrap();
        assert_eq!(p.labels(), &["y", "z", "x"]);
        p.check_axioms().unwrap();
    }

    #[test]
    fn up_down_and_cut() {
        let d = diamond();
        let ab = d.subset_of_labels(&["a", "b"]).unwrap();
        assert_eq!(d.labels_of(&d.up_set(&ab)), ["a", "b", "top"]);
        assert_eq!(d.labels_of(&d.down_set(&ab)), ["bot", "a", "b"]);
        assert!(d.up_set(&d.empty_set()).is_empty());
        assert_eq!(d.cut(&ab), d.full_set());
        let anti = FinitePoset::antichain(2);
        assert_eq!(anti.cut(&anti.full_set()), anti.full_set());
        let ch = FinitePoset::chain(2);
        assert_eq!(ch.cut(&Subset::singleton(2, 1)), ch.full_set());
    }

    #[test]
    fn directedness() {
        let d = diamond();
        assert!(!d.is_directed(&d.subset_of_labels(&["a", "b"]).unwrap()));
        assert!(d.is_directed(&d.subset_of_labels(&["a", "b", "top"]).unwrap()));
        assert!(!d.is_directed(&d.empty_set()));
        // bot has 1 directed set, a and b have 2, top has 8.
        assert_eq!(d.directed_subsets().len(), 13);
    }

    #[test]
    fn way_below_is_order_on_diamond() {
        let d = diamond();
        assert_eq!(d.way_below(), d.up_rows());
    }

    #[test]
    fn covers_and_dual() {
        let d = diamond();
        assert_eq!(d.covers().len(), 4);
        let dd = d.dual();
        assert_eq!(dd.labels()[0], "top");
        assert!(poset_isomorphic(&d, &dd).is_some());
    }

    #[test]
    fn down_sets_of_diamond() {
        // ∅, {bot}, {bot,a}, {bot,b}, {bot,a,b}, all
        assert_eq!(diamond().down_sets().len(), 6);
        assert_eq!(FinitePoset::antichain(3).down_sets().len(), 8);
    }

    #[test]
    fn products() {
        let c2 = FinitePoset::chain(2);
        let grid = c2.product(&c2);
        assert!(poset_isomorphic(&grid, &diamond()).is_some());
        let a2 = FinitePoset::antichain(2);
        assert_eq!(a2.product(&a2).comparable_pairs(), 0);
        let one = FinitePoset::chain(1);
        assert!(poset_isomorphic(&one.product(&diamond()), &diamond()).is_some());
    }
}
