use crate::error::{check_power, Error, Result};
use crate::order::FinitePoset;

/// Default bound on `Q.n^P.n` for exhaustive map searches.
pub const DEFAULT_MAP_GUARD: f64 = 1e7;

#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneMap<'a> {
    pub dom: &'a FinitePoset,
    pub cod: &'a FinitePoset,
    pub table: Vec<usize>,
}

impl<'a> MonotoneMap<'a> {
    pub fn new(dom: &'a FinitePoset, cod: &'a FinitePoset, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.n() || table.iter().any(|&t| t >= cod.n()) {
            return Err(Error::Invalid("map table has the wrong shape".into()));
        }
        if let Some((i, j)) = monotonicity_witness(dom, cod, &table) {
            return Err(Error::NotMonotone(format!(
                "{} <= {} but {} !<= {}",
                dom.label(i),
                dom.label(j),
                cod.label(table[i]),
                cod.label(table[j])
            )));
        }
        Ok(MonotoneMap { dom, cod, table })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }
}

impl std::fmt::Debug for MonotoneMap<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(i, &t)| format!("{}->{}", self.dom.label(i), self.cod.label(t)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A pair `i <= j` whose images are not ordered, if any.
pub fn monotonicity_witness(dom: &FinitePoset, cod: &FinitePoset, table: &[usize]) -> Option<(usize, usize)> {
    (0..dom.n()).find_map(|i| {
        dom.up_of(i)
            .iter()
            .find(|&j| !cod.le(table[i], table[j]))
            .map(|j| (i, j))
    })
}

/// Every monotone map `P -> Q`, in lexicographic table order.
///
/// Fails when `Q.n^P.n` exceeds `guard`, even though pruning would usually
/// visit far fewer tables.
pub fn enumerate_monotone_maps<'a>(p: &'a FinitePoset, q: &'a FinitePoset, guard: f64) -> Result<MonotoneMaps<'a>> {
    check_power("monotone maps", q.n(), p.n(), guard)?;
    Ok(MonotoneMaps {
        p,
        q,
        table: Vec::with_capacity(p.n()),
        next: 0,
        done: q.n() == 0 && p.n() > 0,
    })
}

/// Depth-first search over partial tables. Indices of `P` form a linear
/// extension, so when position `i` is filled every element below `i` already
/// has a value.
pub struct MonotoneMaps<'a> {
    p: &'a FinitePoset,
    q: &'a FinitePoset,
    table: Vec<usize>,
    next: usize,
    done: bool,
}

impl MonotoneMaps<'_> {
    fn fits(&self, v: usize) -> bool {
        let i = self.table.len();
        self.p
            .down_of(i)
            .iter()
            .all(|j| j == i || self.q.le(self.table[j], v))
    }
}

impl<'a> Iterator for MonotoneMaps<'a> {
    type Item = MonotoneMap<'a>;

    fn next(&mut self) -> Option<MonotoneMap<'a>> {
        let n = self.p.n();
        loop {
            if self.done {
                return None;
            }
            if self.table.len() == n {
                let out = MonotoneMap {
                    dom: self.p,
                    cod: self.q,
                    table: self.table.clone(),
                };
                match self.table.pop() {
                    Some(v) => self.next = v + 1,
                    None => self.done = true,
                }
                return Some(out);
            }
            let mut v = self.next;
            while v < self.q.n() && !self.fits(v) {
                v += 1;
            }
            if v < self.q.n() {
                self.table.push(v);
                self.next = 0;
            } else {
                match self.table.pop() {
                    Some(u) => self.next = u + 1,
                    None => self.done = true,
                }
            }
        }
    }
}
