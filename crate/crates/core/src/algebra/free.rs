//! Term universes, the least compatible preorder, quotients, and the free
//! algebra loop.

use crate::algebra::engine::{Engine, RawQuotient};
use crate::algebra::structure::{tuple_index, tuples};
use crate::algebra::{algebra_isomorphism, OrderedAlgebra, Signature, Term, Theory};
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::subset::Subset;

/// Default bound on the number of terms or graph nodes.
pub const DEFAULT_UNIVERSE_GUARD: usize = 200_000;

/// Depths tried by [`free_algebra`] when no schedule is given.
pub const DEFAULT_SCHEDULE: [usize; 6] = [1, 2, 3, 4, 5, 6];

/// All ground terms of height at most `depth`, ordered by height and then
/// by term order.
pub fn term_universe(sig: &Signature, gens: &FinitePoset, depth: usize, guard: usize) -> Result<Vec<Term>> {
    let mut levels: Vec<Vec<Term>> = vec![(0..gens.n()).map(Term::Gen).collect()];
    let mut total = gens.n();
    for h in 1..=depth {
        let below: usize = levels.iter().map(Vec::len).sum();
        let below_prev = below - levels[h - 1].len();
        // Tuples over all shallower terms, minus those avoiding the last level.
        let mut count = 0f64;
        for op in 0..sig.ops.len() {
            let a = sig.arity(op) as i32;
            count += if a == 0 {
                if h == 1 { 1.0 } else { 0.0 }
            } else {
                (below as f64).powi(a) - (below_prev as f64).powi(a)
            };
        }
        if total as f64 + count > guard as f64 {
            return Err(Error::UniverseTooLarge { depth: h, guard });
        }
        let pool: Vec<&Term> = levels.iter().flatten().collect();
        let mut level = Vec::with_capacity(count as usize);
        for op in 0..sig.ops.len() {
            let a = sig.arity(op);
            if a == 0 {
                if h == 1 {
                    level.push(Term::App(op, Vec::new()));
                }
                continue;
            }
            for t in tuples(pool.len(), a) {
                if t.iter().all(|&i| i < below_prev) {
                    continue;
                }
                level.push(Term::App(op, t.iter().map(|&i| pool[i].clone()).collect()));
            }
        }
        level.sort();
        total += level.len();
        levels.push(level);
    }
    Ok(levels.into_iter().flatten().collect())
}

/// A preorder on a term universe, stored as an order on its classes.
#[derive(Clone, Debug)]
pub struct Preorder {
    pub terms: Vec<Term>,
    pub class_of: Vec<usize>,
    /// `class_le[a]` holds every class above `a`.
    pub class_le: Vec<Subset>,
}

impl Preorder {
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.class_le[self.class_of[i]].contains(self.class_of[j])
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The least preorder on `universe` that contains the generator order, is
/// compatible with the operations, and contains every instance of the laws
/// whose sides both lie in the universe.
///
/// `universe` must be a full [`term_universe`] (all terms up to its largest
/// height), so "lies in the universe" is a height bound.
pub fn precongruence_closure(theory: &Theory, gens: &FinitePoset, universe: &[Term]) -> Result<Preorder> {
    let mut e = Engine::new(theory, gens, usize::MAX);
    let ids = e.insert_terms(universe)?;
    let bound = universe.iter().map(Term::height).max().unwrap_or(0);
    e.saturate(bound);
    Ok(Preorder {
        terms: universe.to_vec(),
        class_of: ids.iter().map(|&id| e.class_of_node(id)).collect(),
        class_le: e.order().to_vec(),
    })
}

/// Equivalence classes of a preorder with the induced order and operations.
/// Operation tables may be partial: `None` marks an application that leaves
/// the universe.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub sig: Signature,
    /// Labelled by the representative terms.
    pub poset: FinitePoset,
    /// Smallest term of each class, by height then term order.
    pub reps: Vec<Term>,
    pub tables: Vec<Vec<Option<usize>>>,
    pub unit: Vec<usize>,
}

impl Quotient {
    /// Canonically re-indexes raw classes. Also returns `inv[raw] = new`.
    fn from_raw(raw: RawQuotient, sig: &Signature, gen_labels: &[String]) -> (Quotient, Vec<usize>) {
        let k = raw.reps.len();
        let labels: Vec<String> = raw.reps.iter().map(|t| t.render(sig, gen_labels)).collect();
        let (poset, perm) = FinitePoset::from_up_rows(labels, raw.le).expect("classes form a partial order");
        let mut inv = vec![0; k];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let tables = raw
            .tables
            .iter()
            .enumerate()
            .map(|(op, old)| {
                tuples(k, sig.arity(op))
                    .map(|t| {
                        let old_t: Vec<usize> = t.iter().map(|&c| perm[c]).collect();
                        old[tuple_index(k, &old_t)].map(|c| inv[c])
                    })
                    .collect()
            })
            .collect();
        let q = Quotient {
            sig: sig.clone(),
            poset,
            reps: perm.iter().map(|&old| raw.reps[old].clone()).collect(),
            tables,
            unit: raw.unit.iter().map(|&c| inv[c]).collect(),
        };
        (q, inv)
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn is_total(&self) -> bool {
        self.tables.iter().all(|t| t.iter().all(Option::is_some))
    }

    pub fn to_algebra(&self) -> Result<OrderedAlgebra> {
        let n = self.n();
        let mut tables = Vec::new();
        for (op, t) in self.tables.iter().enumerate() {
            let mut full = Vec::with_capacity(t.len());
            for (args, v) in tuples(n, self.sig.arity(op)).zip(t) {
                match v {
                    Some(v) => full.push(*v),
                    None => {
                        let parts: Vec<&str> = args.iter().map(|&a| self.poset.label(a)).collect();
                        return Err(Error::PartialOperation {
                            op: self.sig.name(op).to_string(),
                            args: format!("({})", parts.join(",")),
                        });
                    }
                }
            }
            tables.push(full);
        }
        OrderedAlgebra::new(self.poset.clone(), self.sig.clone(), tables, Some(self.unit.clone()))
    }
}

/// Quotient of a preorder on a term universe. Returns the quotient and the
/// projection from term index to class.
pub fn quotient(pre: &Preorder, theory: &Theory, gens: &FinitePoset) -> Result<(Quotient, Vec<usize>)> {
    let sig = &theory.sig;
    let m = pre.len();
    // Collapse classes of the given preorder that are mutually below.
    let kc = pre.class_le.len();
    let mut root = vec![usize::MAX; kc];
    let mut k = 0;
    for a in 0..kc {
        if root[a] != usize::MAX {
            continue;
        }
        for b in a..kc {
            if root[b] == usize::MAX && pre.class_le[a].contains(b) && pre.class_le[b].contains(a) {
                root[b] = k;
            }
        }
        k += 1;
    }
    let proj_raw: Vec<usize> = (0..m).map(|i| root[pre.class_of[i]]).collect();
    let mut le = vec![Subset::empty(k); k];
    for a in 0..kc {
        for b in pre.class_le[a].iter() {
            le[root[a]].insert(root[b]);
        }
    }
    let mut reps: Vec<Option<Term>> = vec![None; k];
    let mut tables: Vec<Vec<Option<usize>>> = (0..sig.ops.len())
        .map(|op| vec![None; k.pow(sig.arity(op) as u32)])
        .collect();
    let index_of = |t: &Term| pre.terms.iter().position(|u| u == t);
    let positions: std::collections::HashMap<&Term, usize> =
        pre.terms.iter().enumerate().map(|(i, t)| (t, i)).collect();
    for (i, t) in pre.terms.iter().enumerate() {
        let c = proj_raw[i];
        let better = match &reps[c] {
            None => true,
            Some(r) => (t.height(), t) < (r.height(), r),
        };
        if better {
            reps[c] = Some(t.clone());
        }
        if let Term::App(op, args) = t {
            let arg_classes: Vec<usize> = args
                .iter()
                .map(|a| {
                    positions
                        .get(a)
                        .map(|&j| proj_raw[j])
                        .ok_or_else(|| Error::Invalid("universe is not closed under subterms".into()))
                })
                .collect::<Result<_>>()?;
            let slot = &mut tables[*op][tuple_index(k, &arg_classes)];
            match slot {
                Some(prev) if *prev != c => {
                    return Err(Error::IllDefinedOperation {
                        op: sig.name(*op).to_string(),
                        detail: format!("{} lands in two classes", t.render(sig, gens.labels())),
                    })
                }
                _ => *slot = Some(c),
            }
        }
    }
    let unit = (0..gens.n())
        .map(|g| index_of(&Term::Gen(g)).map(|i| proj_raw[i]))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| Error::Invalid("universe lacks a generator".into()))?;
    let raw = RawQuotient {
        le,
        tables,
        reps: reps.into_iter().map(|r| r.expect("nonempty class")).collect(),
        unit,
    };
    let (q, inv) = Quotient::from_raw(raw, sig, gens.labels());
    let proj = proj_raw.iter().map(|&c| inv[c]).collect();
    Ok((q, proj))
}

/// Result of [`free_algebra`].
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    /// The quotient at the depth reached; possibly partial.
    pub quotient: Quotient,
    /// The quotient as an algebra, when it is total and satisfies the laws.
    pub algebra: Option<OrderedAlgebra>,
    /// Two successive total quotients were isomorphic.
    pub stabilized: bool,
    /// Stabilized, and the theory is a preset with a known finite free object.
    pub exact: bool,
    pub depth: usize,
    pub node_count: usize,
}

/// Runs the saturation engine at each depth of `schedule`, stopping when two
/// successive quotients are total, satisfy the laws and are isomorphic by a
/// unit- and operation-preserving map.
pub fn free_algebra(theory: &Theory, gens: &FinitePoset, schedule: &[usize], guard: usize) -> Result<FreeAlgebra> {
    assert!(!schedule.is_empty(), "empty depth schedule");
    let mut e = Engine::new(theory, gens, guard);
    let mut prev: Option<OrderedAlgebra> = None;
    let mut last = None;
    for &d in schedule {
        e.run_compact(d)?;
        let (q, _) = Quotient::from_raw(e.snapshot(gens.n()), &theory.sig, gens.labels());
        let alg = if q.is_total() {
            q.to_algebra().ok().filter(|a| a.satisfies(theory).is_ok())
        } else {
            None
        };
        let stable = match (&prev, &alg) {
            (Some(p), Some(a)) => algebra_isomorphism(p, a).is_some(),
            _ => false,
        };
        if stable {
            return Ok(FreeAlgebra {
                quotient: q,
                algebra: alg,
                stabilized: true,
                exact: theory.preset().is_some(),
                depth: d,
                node_count: e.node_count(),
            });
        }
        prev = alg.clone();
        last = Some((q, alg, d));
    }
    let (q, alg, d) = last.unwrap();
    Ok(FreeAlgebra {
        quotient: q,
        algebra: alg,
        stabilized: false,
        exact: false,
        depth: d,
        node_count: e.node_count(),
    })
}
