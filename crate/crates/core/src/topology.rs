//! Finite T0 spaces, the directed topology, `Γ(X)`, `𝒬(X)` and the
//! D-completion.
//!
//! In a finite space the intersection of all opens around `x` is open and
//! equals `↑x` in the specialization order, so every finite T0 space is the
//! Alexandrov space of its specialization order. The checks below compute
//! each notion from its general definition anyway; the collapse is what the
//! test suite asserts.

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::order::{set_label, FinitePoset};
use crate::subset::Subset;

/// Largest point count accepted by definitional checks that scan all subsets.
pub const MAX_SCAN_POINTS: usize = 20;

/// A finite T0 space. Opens are stored explicitly, sorted numerically.
///
/// Points are indexed like the specialization poset, so
/// `specialization_order()` uses the same indices as the space.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    opens: Vec<Subset>,
}

impl FiniteSpace {
    /// Validates a topology (∅ and the full set are added) and rejects
    /// non-T0 families. Points are re-indexed canonically.
    pub fn new(labels: Vec<String>, opens: Vec<Subset>) -> Result<FiniteSpace> {
        let n = labels.len();
        let mut fam: Vec<Subset> = opens;
        if fam.iter().any(|u| u.universe() != n) {
            return Err(Error::Invalid("open set over the wrong universe".into()));
        }
        fam.push(Subset::empty(n));
        fam.push(Subset::full(n));
        fam.sort();
        fam.dedup();
        for a in &fam {
            for b in &fam {
                if fam.binary_search(&a.union(b)).is_err() {
                    return Err(Error::NotATopology(format!("{a:?} ∪ {b:?} is not open")));
                }
                if fam.binary_search(&a.intersection(b)).is_err() {
                    return Err(Error::NotATopology(format!("{a:?} ∩ {b:?} is not open")));
                }
            }
        }
        let nbhd = min_opens(n, &fam);
        for x in 0..n {
            for y in x + 1..n {
                if nbhd[x].contains(y) && nbhd[y].contains(x) {
                    return Err(Error::NotT0(labels[x].clone(), labels[y].clone()));
                }
            }
        }
        let (_, perm) = FinitePoset::from_up_rows(labels.clone(), nbhd).expect("T0 checked above");
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut opens: Vec<Subset> = fam.iter().map(|u| u.map(n, |i| inv[i])).collect();
        opens.sort();
        let labels = perm.iter().map(|&old| labels[old].clone()).collect();
        Ok(FiniteSpace { labels, opens })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn opens(&self) -> &[Subset] {
        &self.opens
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

    pub fn is_open(&self, u: &Subset) -> bool {
        self.opens.binary_search(u).is_ok()
    }

    pub fn is_closed(&self, f: &Subset) -> bool {
        self.is_open(&f.complement())
    }

    /// All closed sets, including `∅`, in increasing numeric order.
    pub fn closed_sets(&self) -> Vec<Subset> {
        let mut c: Vec<Subset> = self.opens.iter().map(|u| u.complement()).collect();
        c.sort();
        c
    }

    /// Largest open subset of `a`.
    pub fn interior(&self, a: &Subset) -> Subset {
        let mut s = Subset::empty(self.n());
        for u in self.opens.iter().filter(|u| u.is_subset(a)) {
            s.union_with(u);
        }
        s
    }

    pub fn closure(&self, a: &Subset) -> Subset {
        self.interior(&a.complement()).complement()
    }

    /// Intersection of all opens containing `x`.
    pub fn min_open(&self, x: usize) -> Subset {
        let mut s = Subset::full(self.n());
        for u in self.opens.iter().filter(|u| u.contains(x)) {
            s.intersect_with(u);
        }
        s
    }

    /// `x ⊑ y` iff every open containing `x` contains `y`.
    pub fn specialization_order(&self) -> FinitePoset {
        let n = self.n();
        let rows = (0..n)
            .map(|x| {
                Subset::from_indices(
                    n,
                    (0..n).filter(|&y| self.opens.iter().all(|u| !u.contains(x) || u.contains(y))),
                )
            })
            .collect();
        let (p, perm) = FinitePoset::from_up_rows(self.labels.clone(), rows).expect("space is T0");
        debug_assert!(perm.iter().enumerate().all(|(i, &k)| i == k));
        p
    }

    /// `D → x`: `D` meets every open neighbourhood of `x`.
    pub fn converges(&self, d: &Subset, x: usize) -> bool {
        self.opens
            .iter()
            .filter(|u| u.contains(x))
            .all(|u| u.intersects(d))
    }

    /// Pairs `(D, x)` with `D` directed in the specialization order and `D → x`.
    pub fn directed_limits(&self) -> Vec<(Subset, usize)> {
        let p = self.specialization_order();
        let mut out = Vec::new();
        for d in p.directed_subsets() {
            for x in 0..self.n() {
                if self.converges(&d, x) {
                    out.push((d.clone(), x));
                }
            }
        }
        out
    }

    /// The directed topology: `U` is open iff every directed `D` converging
    /// to a point of `U` meets `U`.
    pub fn d_topology(&self) -> Result<FiniteSpace> {
        let n = self.n();
        check_scan(n)?;
        let lims = self.directed_limits();
        let opens: Vec<Subset> = crate::subset::all_subsets(n)
            .filter(|u| {
                lims.iter()
                    .all(|(d, x)| !u.contains(*x) || d.intersects(u))
            })
            .collect();
        FiniteSpace::new(self.labels.clone(), opens)
    }

    pub fn is_directed_space(&self) -> Result<bool> {
        Ok(self.d_topology()?.opens == self.opens)
    }

    /// For every `x ∈ U` open there is `y ∈ U` with `x ∈ int(↑y)`.
    pub fn is_c_space(&self) -> bool {
        let p = self.specialization_order();
        self.opens.iter().all(|u| {
            u.iter().all(|x| {
                u.iter()
                    .any(|y| self.interior(p.up_of(y)).contains(x))
            })
        })
    }

    /// For every `x ∈ U` open there is `y ∈ U` with `↑y` open and `x ∈ ↑y`.
    pub fn is_b_space(&self) -> bool {
        let p = self.specialization_order();
        self.opens.iter().all(|u| {
            u.iter()
                .all(|x| u.iter().any(|y| p.up_of(y).contains(x) && self.is_open(p.up_of(y))))
        })
    }

    /// Way-below on a space: `x ≪ y` iff every directed `D` with `D → y`
    /// meets `↑x`. Rows `rows[x] = {y : x ≪ y}`.
    pub fn way_below(&self) -> Vec<Subset> {
        let n = self.n();
        let p = self.specialization_order();
        let lims = self.directed_limits();
        (0..n)
            .map(|x| {
                Subset::from_indices(
                    n,
                    (0..n).filter(|&y| {
                        lims.iter()
                            .filter(|(_, l)| *l == y)
                            .all(|(d, _)| d.intersects(p.up_of(x)))
                    }),
                )
            })
            .collect()
    }

    /// Directed space in which every `⇓x` is directed and converges to `x`.
    pub fn is_continuous_space(&self) -> Result<bool> {
        if !self.is_directed_space()? {
            return Ok(false);
        }
        let wb = self.way_below();
        let p = self.specialization_order();
        Ok((0..self.n()).all(|x| {
            let dd = Subset::from_indices(self.n(), (0..self.n()).filter(|&a| wb[a].contains(x)));
            p.is_directed(&dd) && self.converges(&dd, x)
        }))
    }

    /// Directed space in which every `comp(x) = {a ≤ x : a ≪ a}` is directed
    /// and converges to `x`.
    pub fn is_algebraic_space(&self) -> Result<bool> {
        if !self.is_directed_space()? {
            return Ok(false);
        }
        let wb = self.way_below();
        let p = self.specialization_order();
        Ok((0..self.n()).all(|x| {
            let comp = Subset::from_indices(
                self.n(),
                p.down_of(x).iter().filter(|&a| wb[a].contains(a)),
            );
            p.is_directed(&comp) && self.converges(&comp, x)
        }))
    }
}

impl std::fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let opens: Vec<String> = self.opens.iter().map(|u| set_label(&self.labels, u)).collect();
        write!(f, "Space{:?} opens [{}]", self.labels, opens.join(" "))
    }
}

fn min_opens(n: usize, fam: &[Subset]) -> Vec<Subset> {
    (0..n)
        .map(|x| {
            let mut s = Subset::full(n);
            for u in fam.iter().filter(|u| u.contains(x)) {
                s.intersect_with(u);
            }
            s
        })
        .collect()
}

fn check_scan(n: usize) -> Result<()> {
    if n > MAX_SCAN_POINTS {
        return Err(Error::SearchSpaceTooLarge {
            what: "subset scan".into(),
            size: 2f64.powi(n as i32),
            guard: 2f64.powi(MAX_SCAN_POINTS as i32),
        });
    }
    Ok(())
}

/// The Scott space of a finite poset.
///
/// Directed subsets of a finite poset contain their supremum, so every upper
/// set is inaccessible by directed suprema: the Scott opens are exactly the
/// upper sets.
pub fn alexandrov_of(p: &FinitePoset) -> FiniteSpace {
    let space = FiniteSpace::new(p.labels().to_vec(), p.up_sets()).expect("upper sets form a T0 topology");
    debug_assert_eq!(space.labels(), p.labels());
    space
}

/// Whether `table` is continuous `X -> Y`: preimages of opens are open.
pub fn is_continuous(x: &FiniteSpace, y: &FiniteSpace, table: &[usize]) -> bool {
    y.opens().iter().all(|v| {
        let pre = Subset::from_indices(x.n(), (0..x.n()).filter(|&i| v.contains(table[i])));
        x.is_open(&pre)
    })
}

/// Nonempty closed sets under inclusion.
pub fn gamma(x: &FiniteSpace) -> Carrier<Subset> {
    let sets: Vec<Subset> = x.closed_sets().into_iter().filter(|c| !c.is_empty()).collect();
    let labels = x.labels().to_vec();
    Carrier::new(sets, |s| set_label(&labels, s), |a, b| a.is_subset(b))
}

/// Nonempty compact saturated sets under reverse inclusion. In a finite space
/// every set is compact and the saturated sets are the upper sets.
pub fn compact_saturated(x: &FiniteSpace) -> Carrier<Subset> {
    let p = x.specialization_order();
    let sets: Vec<Subset> = p.up_sets().into_iter().filter(|u| !u.is_empty()).collect();
    let labels = x.labels().to_vec();
    Carrier::new(sets, |s| set_label(&labels, s), |a, b| b.is_subset(a))
}

/// The standard D-completion: the d-closure of `{↓x}` inside `Γ(X)`.
#[derive(Clone, Debug)]
pub struct DCompletion {
    pub base: FiniteSpace,
    pub gamma: Carrier<Subset>,
    /// Elements of the d-closure, as a sub-poset of `Γ(X)`.
    pub carrier: Carrier<Subset>,
    /// `eta[x]` is the carrier index of `↓x`.
    pub eta: Vec<usize>,
    /// `stage[i]` is the round in which carrier element `i` entered; points
    /// closures are round 0.
    pub stage: Vec<usize>,
    /// The carrier with opens `◊U = {A : A ∩ U ≠ ∅}` for `U` open in the base.
    pub space: FiniteSpace,
}

/// Largest family size whose directed subfamilies the d-closure enumerates.
const MAX_CLOSURE_FAMILY: usize = 20;

pub fn d_completion(x: &FiniteSpace) -> Result<DCompletion> {
    let n = x.n();
    let g = gamma(x);
    let labels = x.labels().to_vec();
    let point_closures: Vec<Subset> = (0..n).map(|i| x.closure(&Subset::singleton(n, i))).collect();

    // Members of the family, in entry order, with their stage.
    let mut fam: Vec<usize> = Vec::new();
    let mut stage_of: Vec<Option<usize>> = vec![None; g.n()];
    for c in &point_closures {
        let i = g.index_of(c).expect("point closures are nonempty closed sets");
        if stage_of[i].is_none() {
            stage_of[i] = Some(0);
            fam.push(i);
        }
    }
    let mut round = 0;
    loop {
        round += 1;
        if fam.len() > MAX_CLOSURE_FAMILY {
            return Err(Error::SearchSpaceTooLarge {
                what: "d-closure".into(),
                size: 2f64.powi(fam.len() as i32),
                guard: 2f64.powi(MAX_CLOSURE_FAMILY as i32),
            });
        }
        let members = fam.clone();
        let mut added = false;
        for mask in 1u64..(1u64 << members.len()) {
            let sub: Vec<usize> = (0..members.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| members[k])
                .collect();
            // Directed in Γ(X): every pair has an upper bound inside the family.
            let directed = sub.iter().all(|&a| {
                sub.iter().all(|&b| {
                    sub.iter()
                        .any(|&c| g.poset.le(a, c) && g.poset.le(b, c))
                })
            });
            if !directed {
                continue;
            }
            // Supremum in Γ(X) is the closure of the union.
            let mut u = Subset::empty(n);
            for &a in &sub {
                u.union_with(&g.elements[a]);
            }
            let s = g.index_of(&x.closure(&u)).expect("closure of a nonempty union");
            if stage_of[s].is_none() {
                stage_of[s] = Some(round);
                fam.push(s);
                added = true;
            }
        }
        if !added {
            break;
        }
    }

    let sets: Vec<Subset> = fam.iter().map(|&i| g.elements[i].clone()).collect();
    let carrier = Carrier::new(sets, |s| set_label(&labels, s), |a, b| a.is_subset(b));
    let eta = point_closures
        .iter()
        .map(|c| carrier.index_of(c).unwrap())
        .collect();
    let stage = carrier
        .elements
        .iter()
        .map(|e| stage_of[g.index_of(e).unwrap()].unwrap())
        .collect();
    let m = carrier.n();
    let diamonds: Vec<Subset> = x
        .opens()
        .iter()
        .map(|u| Subset::from_indices(m, (0..m).filter(|&i| carrier.elements[i].intersects(u))))
        .collect();
    let space = FiniteSpace::new(carrier.poset.labels().to_vec(), diamonds)?;
    // The ◊-topology is the Scott topology of the carrier order.
    assert_eq!(
        space.opens(),
        alexandrov_of(&carrier.poset).opens(),
        "◊-topology differs from the Scott topology of the completion"
    );
    Ok(DCompletion {
        base: x.clone(),
        gamma: g,
        carrier,
        eta,
        stage,
        space,
    })
}

impl DCompletion {
    /// `η` is an order-embedding, and for every closed `A`,
    /// `η(A) = η(X) ∩ cl(η(A))` in the completion.
    pub fn eta_is_embedding(&self) -> bool {
        let p = self.base.specialization_order();
        let n = p.n();
        let order_emb = (0..n).all(|a| {
            (0..n).all(|b| p.le(a, b) == self.carrier.poset.le(self.eta[a], self.eta[b]))
        });
        let m = self.carrier.n();
        let image = Subset::from_indices(m, self.eta.iter().copied());
        let closed_image = self.base.closed_sets().iter().all(|a| {
            let ea = a.map(m, |i| self.eta[i]);
            ea == image.intersection(&self.space.closure(&ea))
        });
        order_emb && closed_image
    }
}

/// The closed-set lattices of `X` and of its D-completion are isomorphic via
/// `A ↦ cl(Ψ(A))` with inverse `𝒜 ↦ ⋃𝒜`. Both maps are materialized and
/// checked to be mutually inverse and monotone.
pub fn gamma_iso_check(x: &FiniteSpace) -> Result<bool> {
    if !x.is_directed_space()? {
        return Err(Error::NotDirectedSpace);
    }
    let dc = d_completion(x)?;
    let n = x.n();
    let m = dc.carrier.n();
    let cx = x.closed_sets();
    let cxt = dc.space.closed_sets();
    let i_map: Vec<Subset> = cx
        .iter()
        .map(|a| dc.space.closure(&a.map(m, |p| dc.eta[p])))
        .collect();
    let u_map: Vec<Subset> = cxt
        .iter()
        .map(|fam| {
            let mut u = Subset::empty(n);
            for k in fam.iter() {
                u.union_with(&dc.carrier.elements[k]);
            }
            u
        })
        .collect();
    let into = i_map.iter().all(|s| dc.space.is_closed(s)) && u_map.iter().all(|s| x.is_closed(s));
    let inverse_1 = cx.iter().zip(&i_map).all(|(a, ia)| {
        let k = cxt.binary_search(ia).expect("closed in completion");
        u_map[k] == *a
    });
    let inverse_2 = cxt.iter().zip(&u_map).all(|(f, uf)| {
        let k = cx.binary_search(uf).expect("closed in base");
        i_map[k] == *f
    });
    let monotone = cx.iter().enumerate().all(|(s, a)| {
        cx.iter()
            .enumerate()
            .all(|(t, b)| a.is_subset(b) == i_map[s].is_subset(&i_map[t]))
    });
    Ok(into && inverse_1 && inverse_2 && monotone && cx.len() == cxt.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sierpinski() -> FiniteSpace {
        FiniteSpace::new(
            vec!["0".into(), "1".into()],
            vec![Subset::from_indices(2, [1])],
        )
        .unwrap()
    }

    #[test]
    fn alexandrov_opens() {
        assert_eq!(alexandrov_of(&FinitePoset::chain(1)).opens().len(), 2);
        let c = alexandrov_of(&FinitePoset::chain(2));
        assert_eq!(c.opens(), &[Subset::from_mask(2, 0), Subset::from_mask(2, 0b10), Subset::from_mask(2, 0b11)]);
        assert_eq!(alexandrov_of(&FinitePoset::antichain(2)).opens().len(), 4);
    }

    #[test]
    fn specialization_examples() {
        let s = sierpinski();
        let p = s.specialization_order();
        assert_eq!(p.labels(), &["0", "1"]);
        assert!(p.le(0, 1));
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let x = FiniteSpace::new(labels, vec![Subset::from_indices(3, [2]), Subset::from_indices(3, [1, 2])]).unwrap();
        let q = x.specialization_order();
        assert_eq!(q.comparable_pairs(), 3);
    }

    #[test]
    fn rejects_non_t0_and_non_topologies() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let e = FiniteSpace::new(labels.clone(), vec![Subset::from_indices(3, [2])]);
        assert!(matches!(e, Err(Error::NotT0(_, _))));
        let e = FiniteSpace::new(labels, vec![Subset::from_indices(3, [0]), Subset::from_indices(3, [1])]);
        assert!(matches!(e, Err(Error::NotATopology(_))));
    }

    #[test]
    fn sierpinski_is_everything() {
        let s = sierpinski();
        assert_eq!(s.d_topology().unwrap(), s);
        assert!(s.is_directed_space().unwrap());
        assert!(s.is_c_space() && s.is_b_space());
        let dc = d_completion(&s).unwrap();
        assert_eq!(dc.carrier.n(), 2);
        assert!(dc.eta_is_embedding());
        assert!(gamma_iso_check(&s).unwrap());
    }

    #[test]
    fn gamma_and_q_of_antichain() {
        let x = alexandrov_of(&FinitePoset::antichain(2));
        let g = gamma(&x);
        assert_eq!(g.n(), 3);
        assert_eq!(g.poset.comparable_pairs(), 2);
        let q = compact_saturated(&x);
        assert_eq!(q.n(), 3);
        let top = q.index_of(&Subset::full(2)).unwrap();
        assert_eq!(q.poset.up_of(top).len(), 3);
        assert_eq!(x.closed_sets().len(), 4);
    }
}
