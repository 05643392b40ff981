//! Lower, upper and convex powerdomains of a finite poset, their lens and
//! closed-set representations, and the `ℱ_K` maps.
//!
//! Carrier elements are canonical sets (`↓F`, `↑F`, or the pair of both), not
//! the finite generating sets `F`; many `F` give the same element.

use std::hash::Hash;

use crate::algebra::{
    algebra_isomorphism, free_algebra, verify_universal_property, OrderedAlgebra, Preset, PresetModels,
    DEFAULT_SCHEDULE,
};
use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::order::{set_label, FinitePoset, DEFAULT_MAP_GUARD};
use crate::report::Check;
use crate::subset::{all_subsets, Subset};
use crate::topology::{alexandrov_of, compact_saturated, d_completion, gamma, FiniteSpace};

/// Largest base poset whose finite subsets are enumerated.
pub const MAX_POWER_POINTS: usize = 16;

/// A powerdomain carrier with its semilattice operation and unit `g ↦ η(g)`.
#[derive(Clone, Debug)]
pub struct Powerdomain<E> {
    pub preset: Preset,
    pub base: FinitePoset,
    pub carrier: Carrier<E>,
    pub algebra: OrderedAlgebra,
}

pub type ConvexElement = (Subset, Subset);

fn nonempty_subsets(p: &FinitePoset) -> Result<impl Iterator<Item = Subset>> {
    if p.n() > MAX_POWER_POINTS {
        return Err(Error::SearchSpaceTooLarge {
            what: "finite subsets".into(),
            size: 2f64.powi(p.n() as i32),
            guard: 2f64.powi(MAX_POWER_POINTS as i32),
        });
    }
    Ok(all_subsets(p.n()).filter(|s| !s.is_empty()))
}

/// The algebra of a binary operation on a carrier, checked against `preset`.
fn binary_algebra<E: Clone + Eq + Hash>(
    carrier: &Carrier<E>,
    preset: Preset,
    op: impl Fn(&E, &E) -> E,
    unit: Vec<E>,
) -> Result<OrderedAlgebra> {
    let m = carrier.n();
    let e = &carrier.elements;
    let table = (0..m * m)
        .map(|k| {
            carrier
                .index_of(&op(&e[k / m], &e[k % m]))
                .ok_or_else(|| Error::Invalid("carrier is not closed under its operation".into()))
        })
        .collect::<Result<Vec<usize>>>()?;
    let unit = unit
        .iter()
        .map(|u| {
            carrier
                .index_of(u)
                .ok_or_else(|| Error::Invalid("unit lies outside the carrier".into()))
        })
        .collect::<Result<Vec<usize>>>()?;
    let a = OrderedAlgebra::new(carrier.poset.clone(), preset.theory().sig, vec![table], Some(unit))?;
    a.satisfies(&preset.theory())?;
    Ok(a)
}

/// `{↓F : F finite nonempty}` under inclusion, with union.
pub fn lower_powerspace(p: &FinitePoset) -> Result<Powerdomain<Subset>> {
    let sets: Vec<Subset> = nonempty_subsets(p)?.map(|f| p.down_set(&f)).collect();
    let labels = p.labels().to_vec();
    let carrier = Carrier::new(sets, |s| set_label(&labels, s), |a, b| a.is_subset(b));
    debug_assert!({
        let mut ds: Vec<Subset> = p.down_sets().into_iter().filter(|d| !d.is_empty()).collect();
        let mut got = carrier.elements.clone();
        ds.sort();
        got.sort();
        ds == got
    });
    let unit = (0..p.n()).map(|g| p.down_of(g).clone()).collect();
    let algebra = binary_algebra(&carrier, Preset::Inflationary, |a, b| a.union(b), unit)?;
    Ok(Powerdomain {
        preset: Preset::Inflationary,
        base: p.clone(),
        carrier,
        algebra,
    })
}

/// `{↑F : F finite nonempty}` under reverse inclusion, with union as meet.
pub fn upper_powerspace(p: &FinitePoset) -> Result<Powerdomain<Subset>> {
    let sets: Vec<Subset> = nonempty_subsets(p)?.map(|f| p.up_set(&f)).collect();
    let labels = p.labels().to_vec();
    let carrier = Carrier::new(sets, |s| set_label(&labels, s), |a, b| b.is_subset(a));
    let unit = (0..p.n()).map(|g| p.up_of(g).clone()).collect();
    let algebra = binary_algebra(&carrier, Preset::Deflationary, |a, b| a.union(b), unit)?;
    Ok(Powerdomain {
        preset: Preset::Deflationary,
        base: p.clone(),
        carrier,
        algebra,
    })
}

/// Pairs `(↓F, ↑F)` under `↓F1 ⊆ ↓F2 ∧ ↑F2 ⊆ ↑F1`, with componentwise union.
/// Elements are labelled by the lens `↓F ∩ ↑F`.
pub fn convex_powerspace(p: &FinitePoset) -> Result<Powerdomain<ConvexElement>> {
    let pairs: Vec<ConvexElement> = nonempty_subsets(p)?
        .map(|f| (p.down_set(&f), p.up_set(&f)))
        .collect();
    let labels = p.labels().to_vec();
    let carrier = Carrier::new(
        pairs,
        |(d, u)| set_label(&labels, &d.intersection(u)),
        |a, b| a.0.is_subset(&b.0) && b.1.is_subset(&a.1),
    );
    let unit = (0..p.n())
        .map(|g| (p.down_of(g).clone(), p.up_of(g).clone()))
        .collect();
    let algebra = binary_algebra(&carrier, Preset::Semilattice, |a, b| (a.0.union(&b.0), a.1.union(&b.1)), unit)?;
    Ok(Powerdomain {
        preset: Preset::Semilattice,
        base: p.clone(),
        carrier,
        algebra,
    })
}

/// Nonempty order-convex subsets under the Egli–Milner order, with
/// `A + B = conv(A ∪ B)`, and the map to the convex carrier.
#[derive(Clone, Debug)]
pub struct Lenses {
    pub carrier: Carrier<Subset>,
    pub algebra: OrderedAlgebra,
    /// `to_convex[i]` is the convex-carrier index of `(↓A, ↑A)` for lens `i`.
    pub to_convex: Vec<usize>,
}

fn convex_hull(p: &FinitePoset, a: &Subset) -> Subset {
    p.down_set(a).intersection(&p.up_set(a))
}

pub fn lens_representation(p: &FinitePoset) -> Result<Lenses> {
    let sets: Vec<Subset> = nonempty_subsets(p)?.filter(|s| p.is_convex(s)).collect();
    let labels = p.labels().to_vec();
    let carrier = Carrier::new(
        sets,
        |s| set_label(&labels, s),
        |a, b| p.down_set(a).is_subset(&p.down_set(b)) && p.up_set(b).is_subset(&p.up_set(a)),
    );
    let unit = (0..p.n()).map(|g| Subset::singleton(p.n(), g)).collect();
    let algebra = binary_algebra(&carrier, Preset::Semilattice, |a, b| convex_hull(p, &a.union(b)), unit)?;
    let convex = convex_powerspace(p)?;
    let to_convex = carrier
        .elements
        .iter()
        .map(|l| {
            convex
                .carrier
                .index_of(&(p.down_set(l), p.up_set(l)))
                .ok_or_else(|| Error::Invalid(format!("lens {} has no convex pair", set_label(&labels, l))))
        })
        .collect::<Result<Vec<usize>>>()?;
    if let Some(w) = iso_witness(&algebra, &convex.algebra, &to_convex) {
        return Err(Error::Invalid(format!("lenses vs convex carrier: {w}")));
    }
    Ok(Lenses {
        carrier,
        algebra,
        to_convex,
    })
}

/// Why `map` fails to be a unit-preserving algebra isomorphism `A -> B`.
pub fn iso_witness(a: &OrderedAlgebra, b: &OrderedAlgebra, map: &[usize]) -> Option<String> {
    let (n, m) = (a.n(), b.n());
    if n != m || map.len() != n {
        return Some(format!("sizes differ: {n} vs {m}"));
    }
    let mut hit = vec![false; m];
    for &y in map {
        if hit[y] {
            return Some(format!("{} is hit twice", b.carrier.label(y)));
        }
        hit[y] = true;
    }
    for i in 0..n {
        for j in 0..n {
            if a.carrier.le(i, j) != b.carrier.le(map[i], map[j]) {
                return Some(format!(
                    "order between {} and {} is not preserved",
                    a.carrier.label(i),
                    a.carrier.label(j)
                ));
            }
        }
    }
    if !a.is_homomorphism(b, map) {
        return Some("map does not commute with the operation".into());
    }
    if let (Some(ua), Some(ub)) = (&a.unit, &b.unit) {
        if ua.iter().map(|&u| map[u]).ne(ub.iter().copied()) {
            return Some("map does not carry unit to unit".into());
        }
    }
    None
}

/// `Γ(X)` with `A ∨ B = cl(A ∪ B)` and unit `x ↦ cl{x}`.
pub fn gamma_algebra(x: &FiniteSpace) -> Result<OrderedAlgebra> {
    let g = gamma(x);
    let unit = (0..x.n()).map(|i| x.closure(&Subset::singleton(x.n(), i))).collect();
    binary_algebra(&g, Preset::Inflationary, |a, b| x.closure(&a.union(b)), unit)
}

/// `𝒬(X)` under reverse inclusion with `A ∧ B = A ∪ B` and unit
/// `x ↦` the saturation of `{x}`.
pub fn q_algebra(x: &FiniteSpace) -> Result<OrderedAlgebra> {
    let q = compact_saturated(x);
    let unit = (0..x.n()).map(|i| x.min_open(i)).collect();
    binary_algebra(&q, Preset::Deflationary, |a, b| a.union(b), unit)
}

/// `Γ(P)` with union replaced by intersection. Only monotone when `P` is a
/// chain; used as a candidate that must fail the universal property.
pub fn corrupted_lower(p: &FinitePoset) -> Result<OrderedAlgebra> {
    let g = gamma(&alexandrov_of(p));
    let m = g.n();
    let table = (0..m * m)
        .map(|k| {
            let meet = g.elements[k / m].intersection(&g.elements[k % m]);
            let v = if meet.is_empty() {
                g.elements[k / m].union(&g.elements[k % m])
            } else {
                meet
            };
            g.index_of(&v).expect("closed sets are closed under ∩ and ∪")
        })
        .collect();
    let unit = (0..p.n()).map(|i| g.index_of(p.down_of(i)).unwrap()).collect();
    OrderedAlgebra::new(g.poset.clone(), Preset::Inflationary.theory().sig, vec![table], Some(unit))
}

/// `ℱ_K = {↑F : K ⊆ ↑F}` for a nonempty upper set `K`, as carrier indices.
pub fn f_k_upper(upper: &Powerdomain<Subset>, k: &Subset) -> Result<Subset> {
    let p = &upper.base;
    if k.is_empty() || !p.is_up_set(k) {
        return Err(Error::BadK(format!("{} is not a nonempty upper set", set_label(p.labels(), k))));
    }
    let m = upper.carrier.n();
    let mut out = Subset::empty(m);
    for f in nonempty_subsets(p)? {
        let uf = p.up_set(&f);
        if k.is_subset(&uf) {
            out.insert(upper.carrier.index_of(&uf).expect("↑F is in the carrier"));
        }
    }
    Ok(out)
}

/// `ℱ_K = {↓F : F ⊆ K}` for a nonempty closed (down-) set `K`.
pub fn f_k_lower(lower: &Powerdomain<Subset>, k: &Subset) -> Result<Subset> {
    let p = &lower.base;
    if k.is_empty() || !p.is_down_set(k) {
        return Err(Error::BadK(format!("{} is not a nonempty closed set", set_label(p.labels(), k))));
    }
    let m = lower.carrier.n();
    let mut out = Subset::empty(m);
    for f in nonempty_subsets(p)?.filter(|f| f.is_subset(k)) {
        out.insert(lower.carrier.index_of(&p.down_set(&f)).expect("↓F is in the carrier"));
    }
    Ok(out)
}

/// Witness that `K ↦ ℱ_K` (given as `images[i]` for `ks[i]`) fails to be an
/// order-embedding, where `le` is the order on the `K`s.
fn embedding_witness(labels: &[String], ks: &[Subset], images: &[Subset], le: impl Fn(&Subset, &Subset) -> bool) -> Option<String> {
    for (i, a) in ks.iter().enumerate() {
        for (j, b) in ks.iter().enumerate() {
            if le(a, b) != images[i].is_subset(&images[j]) {
                return Some(format!(
                    "K1={} K2={}: order {} but ℱ inclusion {}",
                    set_label(labels, a),
                    set_label(labels, b),
                    le(a, b),
                    images[i].is_subset(&images[j])
                ));
            }
        }
    }
    None
}

/// `{ℱ_K}` equals the D-completion carrier of the powerdomain's Scott space,
/// and that completion adds nothing.
fn completion_witness(pd_poset: &FinitePoset, images: &[Subset]) -> Result<Option<String>> {
    let dc = d_completion(&alexandrov_of(pd_poset))?;
    if dc.carrier.n() != pd_poset.n() {
        return Ok(Some(format!(
            "D-completion has {} elements, carrier has {}",
            dc.carrier.n(),
            pd_poset.n()
        )));
    }
    let mut want: Vec<Subset> = dc.carrier.elements.clone();
    let mut got: Vec<Subset> = images.to_vec();
    want.sort();
    got.sort();
    got.dedup();
    if want != got {
        return Ok(Some("{ℱ_K} differs from the D-completion carrier".into()));
    }
    Ok(None)
}

/// Per-poset outcome of [`representation_audit`].
#[derive(Clone, Debug, serde::Serialize)]
pub struct RepresentationReport {
    pub poset: String,
    pub gamma: usize,
    pub q: usize,
    pub lenses: usize,
    pub checks: Vec<Check>,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::failed)
    }
}

/// Checks the three closed-form representations of `P`, and with `models`
/// also the universal property and agreement with the free-algebra engine.
pub fn representation_audit(p: &FinitePoset, models: Option<&PresetModels>) -> Result<RepresentationReport> {
    let space = alexandrov_of(p);
    let lower = lower_powerspace(p)?;
    let upper = upper_powerspace(p)?;
    let convex = convex_powerspace(p)?;
    let lenses = lens_representation(p)?;
    let g = gamma(&space);
    let q = compact_saturated(&space);
    let mut checks = Vec::new();

    // (i) LP and Γ(P): identity on sets, then K ↦ ℱ_K into the completion.
    checks.push(Check::from_result("lower=gamma", (|| {
        let ga = gamma_algebra(&space)?;
        let map: Option<Vec<usize>> = lower.carrier.elements.iter().map(|k| g.index_of(k)).collect();
        Ok(match map {
            None => Some("a lower-carrier element is not a nonempty closed set".into()),
            Some(map) => iso_witness(&lower.algebra, &ga, &map),
        })
    })()));
    checks.push(Check::from_result("lower-fk-completion", (|| {
        let images: Vec<Subset> = g.elements.iter().map(|k| f_k_lower(&lower, k)).collect::<Result<_>>()?;
        if let Some(w) = embedding_witness(p.labels(), &g.elements, &images, |a, b| a.is_subset(b)) {
            return Ok(Some(w));
        }
        completion_witness(&lower.carrier.poset, &images)
    })()));

    // (ii) UP and 𝒬(P), then K ↦ ℱ_K.
    checks.push(Check::from_result("upper=q", (|| {
        let qa = q_algebra(&space)?;
        let map: Option<Vec<usize>> = upper.carrier.elements.iter().map(|k| q.index_of(k)).collect();
        Ok(match map {
            None => Some("an upper-carrier element is not a nonempty upper set".into()),
            Some(map) => iso_witness(&upper.algebra, &qa, &map),
        })
    })()));
    checks.push(Check::from_result("upper-fk-completion", (|| {
        let images: Vec<Subset> = q.elements.iter().map(|k| f_k_upper(&upper, k)).collect::<Result<_>>()?;
        if let Some(w) = embedding_witness(p.labels(), &q.elements, &images, |a, b| b.is_subset(a)) {
            return Ok(Some(w));
        }
        completion_witness(&upper.carrier.poset, &images)
    })()));

    // (iii) lenses and the convex carrier.
    checks.push(Check::from_witness(
        "convex=lenses",
        iso_witness(&lenses.algebra, &convex.algebra, &lenses.to_convex),
    ));

    if let Some(models) = models {
        let carriers = [&convex.algebra, &lower.algebra, &upper.algebra];
        for (preset, alg) in Preset::ALL.into_iter().zip(carriers) {
            debug_assert_eq!(alg.sig, preset.theory().sig);
            checks.push(Check::from_result(format!("universal-{}", preset.name()), (|| {
                let r = verify_universal_property(alg, p, models.get(preset), DEFAULT_MAP_GUARD)?;
                Ok(r.violations.first().map(|v| {
                    format!(
                        "target {} f={:?}: {} extensions",
                        v.target,
                        v.f,
                        v.extensions.len()
                    )
                }))
            })()));
            checks.push(Check::from_result(format!("free-{}", preset.name()), (|| {
                free_matches(p, preset, alg)
            })()));
        }
    }

    Ok(RepresentationReport {
        poset: format!("{p:?}"),
        gamma: g.n(),
        q: q.n(),
        lenses: lenses.carrier.n(),
        checks,
    })
}

/// Runs the free-algebra engine for `preset` over `P` and compares its output
/// with `closed_form`.
pub fn free_matches(p: &FinitePoset, preset: Preset, closed_form: &OrderedAlgebra) -> Result<Option<String>> {
    let fa = free_algebra(&preset.theory(), p, &DEFAULT_SCHEDULE, crate::algebra::DEFAULT_UNIVERSE_GUARD)?;
    if !fa.exact {
        return Ok(Some(format!("engine did not stabilize by depth {}", fa.depth)));
    }
    let alg = fa.algebra.as_ref().expect("exact results carry an algebra");
    Ok(match algebra_isomorphism(alg, closed_form) {
        Some(iso) => iso_witness(alg, closed_form, &iso),
        None => Some(format!(
            "no unit-preserving isomorphism: engine has {} classes, closed form {}",
            alg.n(),
            closed_form.n()
        )),
    })
}

/// Checks on the `ℱ_K` maps of `P`: closedness and embedding in both modes,
/// the lower closure formula over directed families, and, when `upper_equal`
/// is set, the intersection formula over directed families of `𝒬(P)`.
pub fn fk_audit(p: &FinitePoset, upper_equal: bool) -> Result<Vec<Check>> {
    let space = alexandrov_of(p);
    let lower = lower_powerspace(p)?;
    let upper = upper_powerspace(p)?;
    let lspace = alexandrov_of(&lower.carrier.poset);
    let uspace = alexandrov_of(&upper.carrier.poset);
    let g = gamma(&space);
    let q = compact_saturated(&space);
    let labels = p.labels();
    let mut checks = Vec::new();

    let fu: Vec<Subset> = q.elements.iter().map(|k| f_k_upper(&upper, k)).collect::<Result<_>>()?;
    let fl: Vec<Subset> = g.elements.iter().map(|k| f_k_lower(&lower, k)).collect::<Result<_>>()?;

    checks.push(Check::from_witness(
        "fk-upper-closed",
        q.elements
            .iter()
            .zip(&fu)
            .find(|(_, f)| !uspace.is_closed(f))
            .map(|(k, _)| format!("ℱ_K not closed for K={}", set_label(labels, k))),
    ));
    checks.push(Check::from_witness(
        "fk-upper-embedding",
        embedding_witness(labels, &q.elements, &fu, |a, b| b.is_subset(a)),
    ));
    checks.push(Check::from_witness(
        "fk-lower-closed-directed",
        g.elements.iter().zip(&fl).find_map(|(k, f)| {
            let mut union = Subset::empty(p.n());
            for i in f.iter() {
                union.union_with(&lower.carrier.elements[i]);
            }
            let ok = lspace.is_closed(f) && lower.carrier.poset.is_directed(f) && union == *k;
            (!ok).then(|| format!("ℱ_K fails for K={}", set_label(labels, k)))
        }),
    ));
    checks.push(Check::from_witness(
        "fk-lower-embedding",
        embedding_witness(labels, &g.elements, &fl, |a, b| a.is_subset(b)),
    ));

    // cl(𝓕) in LP is {↓F : F ⊆ cl(⋃𝓕)} for directed 𝓕.
    let mut lw = None;
    for fam in lower.carrier.poset.directed_subsets() {
        let mut union = Subset::empty(p.n());
        for i in fam.iter() {
            union.union_with(&lower.carrier.elements[i]);
        }
        let target = f_k_lower(&lower, &space.closure(&union))?;
        if lspace.closure(&fam) != target {
            lw = Some(format!(
                "family {} has the wrong closure",
                set_label(lower.carrier.poset.labels(), &fam)
            ));
            break;
        }
    }
    checks.push(Check::from_witness("equal-trans-lower", lw));

    if upper_equal {
        let qp = &q.poset;
        let mut uw = None;
        for fam in qp.directed_subsets() {
            let mut meet = Subset::full(p.n());
            let mut union = Subset::empty(upper.carrier.n());
            for i in fam.iter() {
                meet.intersect_with(&q.elements[i]);
                union.union_with(&fu[i]);
            }
            let ok = !meet.is_empty()
                && p.is_up_set(&meet)
                && f_k_upper(&upper, &meet)? == uspace.closure(&union);
            if !ok {
                uw = Some(format!("directed family {} in 𝒬", set_label(qp.labels(), &fam)));
                break;
            }
        }
        checks.push(Check::from_witness("upper-equal", uw));
    }
    Ok(checks)
}

/// `A ≪ B` in `𝒬(P)`, computed from directed suprema, agrees with: there is a
/// finite `F` with `B ⊆ int(↑F) ⊆ ↑F ⊆ A`. Interiors are taken in the Scott
/// space, where `↑F` is already open.
pub fn way_below_q_audit(p: &FinitePoset) -> Result<Check> {
    let space = alexandrov_of(p);
    let q = compact_saturated(&space);
    let wb = q.poset.way_below();
    let ups: Vec<Subset> = nonempty_subsets(p)?.map(|f| p.up_set(&f)).collect();
    for (i, a) in q.elements.iter().enumerate() {
        for (j, b) in q.elements.iter().enumerate() {
            let by_f = ups
                .iter()
                .any(|uf| b.is_subset(&space.interior(uf)) && uf.is_subset(a));
            if wb[i].contains(j) != by_f {
                return Ok(Check::fail(
                    "way-below-q",
                    format!(
                        "A={} B={}: definition {} vs finite-F form {}",
                        set_label(p.labels(), a),
                        set_label(p.labels(), b),
                        wb[i].contains(j),
                        by_f
                    ),
                ));
            }
        }
    }
    Ok(Check::pass("way-below-q"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labelled(pd: &Carrier<Subset>) -> Vec<String> {
        pd.poset.labels().to_vec()
    }

    #[test]
    fn small_carriers() {
        let a2 = FinitePoset::antichain(2);
        let c2 = FinitePoset::chain(2);
        let l = lower_powerspace(&a2).unwrap();
        assert_eq!(labelled(&l.carrier), ["{a}", "{b}", "{a,b}"]);
        assert_eq!(l.carrier.poset.covers().len(), 2);
        let u = upper_powerspace(&a2).unwrap();
        assert_eq!(u.carrier.n(), 3);
        let top = u.carrier.index_of(&Subset::full(2)).unwrap();
        assert!((0..3).all(|i| u.carrier.poset.le(top, i)));
        let c = convex_powerspace(&c2).unwrap();
        assert_eq!(c.carrier.poset.labels(), ["{a}", "{a,b}", "{b}"]);
        assert_eq!(c.carrier.poset.comparable_pairs(), 3);
        let ca = convex_powerspace(&a2).unwrap();
        assert_eq!(ca.carrier.poset.comparable_pairs(), 0);
    }

    #[test]
    fn f_k_examples() {
        let a2 = FinitePoset::antichain(2);
        let u = upper_powerspace(&a2).unwrap();
        let l = lower_powerspace(&a2).unwrap();
        let k = Subset::full(2);
        assert_eq!(f_k_upper(&u, &k).unwrap().len(), 1);
        assert_eq!(f_k_lower(&l, &k).unwrap().len(), 3);
        assert!(matches!(f_k_upper(&u, &Subset::empty(2)), Err(Error::BadK(_))));
        let c2 = FinitePoset::chain(2);
        let lc = lower_powerspace(&c2).unwrap();
        assert!(matches!(f_k_lower(&lc, &Subset::singleton(2, 1)), Err(Error::BadK(_))));
    }

    #[test]
    fn corrupted_candidate_only_builds_on_chains() {
        assert!(corrupted_lower(&FinitePoset::chain(2)).is_ok());
        assert!(matches!(
            corrupted_lower(&FinitePoset::antichain(2)),
            Err(Error::NotMonotone(_))
        ));
    }
}
