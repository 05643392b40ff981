//! Convergence classes of directed subsets and the topologies they determine.
//!
//! Nets are directed subsets read as monotone nets. "`D` is eventually in
//! `U`" means some `d ∈ D` has `D ∩ ↑d ⊆ U`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::subset::{all_subsets, Subset};
use crate::topology::{FiniteSpace, MAX_SCAN_POINTS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceClass {
    pub base: FinitePoset,
    /// Sorted, without duplicates.
    pub pairs: Vec<(Subset, usize)>,
    /// Contains every `({y}, x)` with `x <= y`, and every pair has `x ∈ D^δ`.
    pub indu_admissible: bool,
}

fn check_directed(base: &FinitePoset, pairs: &[(Subset, usize)]) -> Result<()> {
    for (d, _) in pairs {
        if !base.is_directed(d) {
            return Err(Error::Directedness(base.labels_of(d)));
        }
    }
    Ok(())
}

/// `({y}, x)` for every `x <= y`.
pub fn order_pairs(base: &FinitePoset) -> Vec<(Subset, usize)> {
    let n = base.n();
    (0..n)
        .flat_map(|y| base.down_of(y).iter().map(move |x| (Subset::singleton(n, y), x)))
        .collect()
}

impl ConvergenceClass {
    /// A class with exactly the given pairs; no admissibility is claimed.
    pub fn new(base: FinitePoset, mut pairs: Vec<(Subset, usize)>) -> Result<ConvergenceClass> {
        check_directed(&base, &pairs)?;
        pairs.sort();
        pairs.dedup();
        Ok(ConvergenceClass {
            base,
            pairs,
            indu_admissible: false,
        })
    }

    pub fn order_only(base: FinitePoset) -> ConvergenceClass {
        admissible_saturate(base, Vec::new()).expect("order pairs are admissible")
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// `∃d ∈ D: D ∩ ↑d ⊆ U`.
    pub fn eventually_in(&self, d: &Subset, u: &Subset) -> bool {
        d.iter()
            .any(|e| d.intersection(self.base.up_of(e)).is_subset(u))
    }

    /// The open family determined by the class: `U` is open iff every pair
    /// `(D, x)` with `x ∈ U` has `D` eventually in `U`.
    pub fn generated_opens(&self) -> Result<Vec<Subset>> {
        self.opens_by(|d, u| self.eventually_in(d, u))
    }

    /// The same family with "eventually in `U`" replaced by "meets `U`".
    /// Agrees with [`Self::generated_opens`] whenever the opens are upper sets.
    pub fn generated_opens_meeting(&self) -> Result<Vec<Subset>> {
        self.opens_by(|d, u| d.intersects(u))
    }

    fn opens_by(&self, ev: impl Fn(&Subset, &Subset) -> bool) -> Result<Vec<Subset>> {
        let n = self.n();
        if n > MAX_SCAN_POINTS {
            return Err(Error::SearchSpaceTooLarge {
                what: "subset scan".into(),
                size: 2f64.powi(n as i32),
                guard: 2f64.powi(MAX_SCAN_POINTS as i32),
            });
        }
        Ok(all_subsets(n)
            .filter(|u| {
                self.pairs
                    .iter()
                    .all(|(d, x)| !u.contains(*x) || ev(d, u))
            })
            .collect())
    }

    /// The generated topology as a space. Fails with `NotT0` for classes whose
    /// topology does not separate points.
    pub fn generated_topology(&self) -> Result<FiniteSpace> {
        FiniteSpace::new(self.base.labels().to_vec(), self.generated_opens()?)
    }

    /// `F⁰ = F`, `F^{k+1} = F^k ∪ {x : (D, x) ∈ C, D ⊆ F^k}`, to the fixpoint.
    /// Returns every stage (the last one repeated once at most) and `F*`.
    pub fn closure_stages(&self, f: &Subset) -> (Vec<Subset>, Subset) {
        let mut stages = vec![f.clone()];
        loop {
            let cur = stages.last().unwrap();
            let mut next = cur.clone();
            for (d, x) in &self.pairs {
                if d.is_subset(cur) {
                    next.insert(*x);
                }
            }
            if next == *cur {
                let fstar = next;
                return (stages, fstar);
            }
            stages.push(next);
        }
    }

    /// A pair `(D, x)` with `D ⊆ F` and `x ∉ F`, if one exists.
    pub fn pair_closure_witness(&self, f: &Subset) -> Option<(Subset, usize)> {
        self.pairs
            .iter()
            .find(|(d, x)| d.is_subset(f) && !f.contains(*x))
            .cloned()
    }
}

/// Adds every `({y}, x)` with `x <= y` to `raw`, after checking each raw pair
/// is directed and satisfies `x ∈ D^δ`.
pub fn admissible_saturate(base: FinitePoset, raw: Vec<(Subset, usize)>) -> Result<ConvergenceClass> {
    check_directed(&base, &raw)?;
    for (d, x) in &raw {
        if !base.cut(d).contains(*x) {
            return Err(Error::CutViolation {
                d: base.labels_of(d),
                x: base.label(*x).to_string(),
            });
        }
    }
    let mut pairs = raw;
    pairs.extend(order_pairs(&base));
    let mut c = ConvergenceClass::new(base, pairs)?;
    c.indu_admissible = true;
    Ok(c)
}

/// Both sides of "closed ⇔ closed under the pairs" for one `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClosedCheck {
    pub closed: bool,
    pub pair_closed: bool,
    pub witness: Option<(Subset, usize)>,
}

impl PairClosedCheck {
    pub fn agrees(&self) -> bool {
        self.closed == self.pair_closed
    }
}

pub fn closed_iff_pair_closed_check(c: &ConvergenceClass, f: &Subset) -> Result<PairClosedCheck> {
    let opens = c.generated_opens()?;
    let closed = opens.binary_search(&f.complement()).is_ok();
    let witness = c.pair_closure_witness(f);
    Ok(PairClosedCheck {
        closed,
        pair_closed: witness.is_none(),
        witness,
    })
}

/// Both sides of the limit-continuity equivalence for a map `f` from the
/// class's carrier into `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitContinuity {
    /// Preimages of opens of `y` are open in the generated topology.
    pub continuous: bool,
    /// For every pair `(D, x)`, the net `f(D)` converges to `f(x)` in `y`.
    pub preserves_limits: bool,
}

impl LimitContinuity {
    pub fn agrees(&self) -> bool {
        self.continuous == self.preserves_limits
    }
}

pub fn limit_continuity_check(c: &ConvergenceClass, y: &FiniteSpace, table: &[usize]) -> Result<LimitContinuity> {
    let n = c.n();
    assert_eq!(table.len(), n, "map table has the wrong length");
    let opens = c.generated_opens()?;
    let preimage = |v: &Subset| Subset::from_indices(n, (0..n).filter(|&i| v.contains(table[i])));
    let continuous = y
        .opens()
        .iter()
        .all(|v| opens.binary_search(&preimage(v)).is_ok());
    // The net (f(d))_{d ∈ D} is eventually in V iff D is eventually in f⁻¹(V).
    let preserves_limits = c.pairs.iter().all(|(d, x)| {
        y.opens()
            .iter()
            .filter(|v| v.contains(table[*x]))
            .all(|v| c.eventually_in(d, &preimage(v)))
    });
    Ok(LimitContinuity {
        continuous,
        preserves_limits,
    })
}

/// The four conclusions for an admissible class, each with a witness on
/// failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InduReport {
    /// `F*` equals the topological closure of `F`, for every `F`.
    pub closure_is_fstar: bool,
    /// The specialization order of the generated topology is the base order.
    pub specialization_is_base: bool,
    /// The generated topology is a directed space.
    pub directed_space: bool,
    /// Closed ⇔ pair-closed, for every `F`.
    pub closed_iff_pair_closed: bool,
    /// The two readings of "eventually in" give the same opens.
    pub eventual_forms_agree: bool,
    pub witness: Option<String>,
}

impl InduReport {
    pub fn passed(&self) -> bool {
        self.closure_is_fstar
            && self.specialization_is_base
            && self.directed_space
            && self.closed_iff_pair_closed
            && self.eventual_forms_agree
    }
}

pub fn indu_audit(c: &ConvergenceClass) -> Result<InduReport> {
    if !c.indu_admissible {
        return Err(Error::Invalid("class is not flagged admissible".into()));
    }
    let n = c.n();
    let mut r = InduReport {
        eventual_forms_agree: c.generated_opens()? == c.generated_opens_meeting()?,
        ..InduReport::default()
    };
    let space = match c.generated_topology() {
        Ok(s) => s,
        Err(Error::NotT0(a, b)) => {
            r.witness = Some(format!("generated topology is not T0 at {a}, {b}"));
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let spec = space.specialization_order();
    r.specialization_is_base = spec == c.base;
    r.directed_space = space.is_directed_space()?;
    r.closure_is_fstar = true;
    r.closed_iff_pair_closed = true;
    for f in all_subsets(n) {
        let (_, fstar) = c.closure_stages(&f);
        if fstar != space.closure(&f) {
            r.closure_is_fstar = false;
            r.witness.get_or_insert_with(|| format!("F* differs from closure for F = {:?}", c.base.labels_of(&f)));
        }
        if !closed_iff_pair_closed_check(c, &f)?.agrees() {
            r.closed_iff_pair_closed = false;
            r.witness
                .get_or_insert_with(|| format!("closedness disagrees for F = {:?}", c.base.labels_of(&f)));
        }
    }
    Ok(r)
}

/// A seeded family of admissible classes: for each poset, `per_poset`
/// classes, the `k`-th adding `k` random pairs `(D, x)` with `D` directed and
/// `x` in its cut.
pub fn indu_family(seed: u64, posets: &[FinitePoset], per_poset: usize) -> Vec<ConvergenceClass> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for p in posets {
        let dirs = p.directed_subsets();
        for k in 0..per_poset {
            let raw = (0..k)
                .map(|_| {
                    let d = dirs.choose(&mut rng).expect("nonempty poset").clone();
                    let cut: Vec<usize> = p.cut(&d).iter().collect();
                    let x = cut[rng.gen_range(0..cut.len())];
                    (d, x)
                })
                .collect();
            out.push(admissible_saturate(p.clone(), raw).expect("pairs are drawn inside the cut"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinitePoset {
        FinitePoset::chain(3)
    }

    #[test]
    fn saturation_adds_order_pairs() {
        let c = admissible_saturate(FinitePoset::chain(2), vec![]).unwrap();
        assert_eq!(c.pairs.len(), 3);
        assert!(c.indu_admissible);
    }

    #[test]
    fn saturation_rejects_bad_pairs() {
        let d = FinitePoset::from_relation(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap();
        let ab = d.subset_of_labels(&["a", "b"]).unwrap();
        let e = admissible_saturate(d.clone(), vec![(ab, 3)]);
        assert!(matches!(e, Err(Error::Directedness(_))));
        let atop = d.subset_of_labels(&["a", "top"]).unwrap();
        assert!(admissible_saturate(d.clone(), vec![(atop, 0)]).is_ok());
        let c3 = chain3();
        let e = admissible_saturate(c3, vec![(Subset::singleton(3, 1), 2)]);
        assert!(matches!(e, Err(Error::CutViolation { .. })));
    }

    #[test]
    fn order_only_class_gives_alexandrov() {
        for p in crate::order::corpus(3) {
            let c = ConvergenceClass::order_only(p.clone());
            let space = c.generated_topology().unwrap();
            assert_eq!(space.opens(), crate::topology::alexandrov_of(&p).opens());
        }
    }

    #[test]
    fn stages_on_chain() {
        let c = admissible_saturate(chain3(), vec![(Subset::singleton(3, 2), 0)]).unwrap();
        let (stages, fstar) = c.closure_stages(&Subset::singleton(3, 2));
        assert_eq!(fstar, Subset::full(3));
        assert_eq!(stages.len(), 2);
        let (_, e) = c.closure_stages(&Subset::empty(3));
        assert!(e.is_empty());
        let r = indu_audit(&c).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn top_of_chain_is_not_closed() {
        let c = ConvergenceClass::order_only(FinitePoset::chain(2));
        let chk = closed_iff_pair_closed_check(&c, &Subset::singleton(2, 1)).unwrap();
        assert!(!chk.closed && !chk.pair_closed);
        assert_eq!(chk.witness, Some((Subset::singleton(2, 1), 0)));
    }

    #[test]
    fn identity_and_constant_maps() {
        let p = FinitePoset::chain(2);
        let c = ConvergenceClass::order_only(p.clone());
        let y = crate::topology::alexandrov_of(&p);
        let r = limit_continuity_check(&c, &y, &[0, 1]).unwrap();
        assert!(r.continuous && r.preserves_limits);
        let pt = crate::topology::alexandrov_of(&FinitePoset::chain(1));
        let r = limit_continuity_check(&c, &pt, &[0, 0]).unwrap();
        assert!(r.continuous && r.preserves_limits);
        let r = limit_continuity_check(&c, &y, &[1, 0]).unwrap();
        assert!(!r.continuous && r.agrees());
    }
}
