//! dcpo presentations: generators with a preorder `≲` and covers `a ◁ U`.

use serde::Serialize;

use crate::algebra::{extensions, OrderedAlgebra, Signature};
use crate::carrier::Carrier;
use crate::convergence::ConvergenceClass;
use crate::error::{check_power, Error, Result};
use crate::order::{set_label, FinitePoset, DEFAULT_MAP_GUARD};
use crate::subset::{all_subsets, transitive_closure, Subset};

/// Largest generator count for which every subset is scanned.
pub const MAX_PRESENTATION_GENS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcpoPresentation {
    pub gens: Vec<String>,
    /// `below[a] = {b : b ≲ a}`; reflexive and transitive, not necessarily
    /// antisymmetric.
    pub below: Vec<Subset>,
    pub covers: Vec<(usize, Subset)>,
}

impl DcpoPresentation {
    /// `lesssim` pairs `(a, b)` mean `a ≲ b`; they are closed reflexively and
    /// transitively. Each cover set must be nonempty and `≲`-directed.
    pub fn new<S: AsRef<str>>(gens: &[S], lesssim: &[(S, S)], covers: &[(S, Vec<S>)]) -> Result<DcpoPresentation> {
        let gens: Vec<String> = gens.iter().map(|g| g.as_ref().to_string()).collect();
        let n = gens.len();
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].contains(g) {
                return Err(Error::DuplicateLabel(g.clone()));
            }
        }
        let idx = |l: &S| {
            gens.iter()
                .position(|g| g == l.as_ref())
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
        };
        let mut below = vec![Subset::empty(n); n];
        for (a, b) in lesssim {
            below[idx(b)?].insert(idx(a)?);
        }
        transitive_closure(&mut below);
        let mut cs = Vec::new();
        for (a, u) in covers {
            let a = idx(a)?;
            let u = Subset::from_indices(n, u.iter().map(&idx).collect::<Result<Vec<_>>>()?);
            cs.push((a, u));
        }
        let p = DcpoPresentation {
            gens,
            below,
            covers: cs,
        };
        for (_, u) in &p.covers {
            if !p.is_directed(u) {
                return Err(Error::Directedness(p.labels_of(u)));
            }
        }
        Ok(p)
    }

    /// The presentation of a convergence class: `≲` is the base order and each
    /// pair `(D, x)` becomes the cover `x ◁ D`.
    pub fn from_class(c: &ConvergenceClass) -> DcpoPresentation {
        let n = c.n();
        DcpoPresentation {
            gens: c.base.labels().to_vec(),
            below: (0..n).map(|i| c.base.down_of(i).clone()).collect(),
            covers: c.pairs.iter().map(|(d, x)| (*x, d.clone())).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn lesssim(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn labels_of(&self, s: &Subset) -> Vec<String> {
        s.iter().map(|i| self.gens[i].clone()).collect()
    }

    /// Nonempty, and every two members have a common `≲`-upper bound inside.
    pub fn is_directed(&self, u: &Subset) -> bool {
        !u.is_empty()
            && u.iter().all(|a| {
                u.iter()
                    .all(|b| u.iter().any(|c| self.lesssim(a, c) && self.lesssim(b, c)))
            })
    }

    pub fn down_close(&self, s: &Subset) -> Subset {
        let mut out = Subset::empty(self.n());
        for a in s.iter() {
            out.union_with(&self.below[a]);
        }
        out
    }

    /// `≲`-down-closed and containing `a` whenever it contains `U` for a cover
    /// `a ◁ U`.
    pub fn is_c_ideal(&self, s: &Subset) -> bool {
        self.down_close(s) == *s && self.covers.iter().all(|(a, u)| !u.is_subset(s) || s.contains(*a))
    }

    /// `⟨S⟩`: alternately down-close and fire covers until nothing changes.
    pub fn least_c_ideal(&self, s: &Subset) -> Subset {
        let mut cur = s.clone();
        loop {
            let mut next = self.down_close(&cur);
            for (a, u) in &self.covers {
                if u.is_subset(&next) {
                    next.insert(*a);
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Every C-ideal, including `∅`, ordered by inclusion.
    pub fn all_c_ideals(&self) -> Result<Carrier<Subset>> {
        if self.n() > MAX_PRESENTATION_GENS {
            return Err(Error::SearchSpaceTooLarge {
                what: "C-ideals".into(),
                size: 2f64.powi(self.n() as i32),
                guard: 2f64.powi(MAX_PRESENTATION_GENS as i32),
            });
        }
        let sets: Vec<Subset> = all_subsets(self.n()).filter(|s| self.is_c_ideal(s)).collect();
        let gens = self.gens.clone();
        Ok(Carrier::new(
            sets,
            |s| set_label(&gens, s),
            |a, b| a.is_subset(b),
        ))
    }

    /// Why `f: gens -> D` fails to preserve covers: either it is not monotone
    /// for `≲`, or some `f(a)` is not below `⋁f(U)`.
    ///
    /// `NoSupremum` is returned when `f(U)` has no join in `D`; for monotone
    /// `f` this cannot happen, since `f(U)` is then directed and finite.
    pub fn cover_preserving_check(&self, d: &FinitePoset, f: &[usize]) -> Result<Option<String>> {
        assert_eq!(f.len(), self.n());
        for b in 0..self.n() {
            for a in self.below[b].iter() {
                if !d.le(f[a], f[b]) {
                    return Ok(Some(format!("{} ≲ {} but images are not ordered", self.gens[a], self.gens[b])));
                }
            }
        }
        for (a, u) in &self.covers {
            let img = Subset::from_indices(d.n(), u.iter().map(|x| f[x]));
            let s = d.sup(&img).ok_or_else(|| Error::NoSupremum(d.labels_of(&img)))?;
            if !d.le(f[*a], s) {
                return Ok(Some(format!(
                    "{} ◁ {:?}: image {} is not below {}",
                    self.gens[*a],
                    self.labels_of(u),
                    d.label(f[*a]),
                    d.label(s)
                )));
            }
        }
        Ok(None)
    }
}

/// Candidate carriers for the dcpo freely generated by a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Candidate {
    /// Every C-ideal, `∅` included.
    WithEmpty,
    /// Every nonempty C-ideal.
    Nonempty,
    /// The principal ideals `⟨{p}⟩`, closed under directed joins of C-ideals.
    PrincipalClosure,
}

impl Candidate {
    pub const ALL: [Candidate; 3] = [Candidate::WithEmpty, Candidate::Nonempty, Candidate::PrincipalClosure];

    pub fn name(self) -> &'static str {
        match self {
            Candidate::WithEmpty => "with-empty",
            Candidate::Nonempty => "nonempty",
            Candidate::PrincipalClosure => "principal-closure",
        }
    }
}

/// The candidate carrier `kind` with `η(p) = ⟨{p}⟩`. `η` is `None` at a
/// generator whose principal ideal is missing from the carrier.
pub fn candidate_carrier(pres: &DcpoPresentation, kind: Candidate) -> Result<(Carrier<Subset>, Vec<Option<usize>>)> {
    let n = pres.n();
    let all = pres.all_c_ideals()?;
    let sets: Vec<Subset> = match kind {
        Candidate::WithEmpty => all.elements.clone(),
        Candidate::Nonempty => all.elements.iter().filter(|s| !s.is_empty()).cloned().collect(),
        Candidate::PrincipalClosure => {
            let mut fam: Vec<Subset> = Vec::new();
            for p in 0..n {
                let i = pres.least_c_ideal(&Subset::singleton(n, p));
                if !fam.contains(&i) {
                    fam.push(i);
                }
            }
            // Add unions of directed subfamilies until stable.
            loop {
                check_power("directed subfamilies", 2, fam.len(), DEFAULT_MAP_GUARD)?;
                let mut added = false;
                let members = fam.clone();
                for mask in 1u64..(1u64 << members.len()) {
                    let sub: Vec<&Subset> = (0..members.len())
                        .filter(|k| mask >> k & 1 == 1)
                        .map(|k| &members[k])
                        .collect();
                    let directed = sub
                        .iter()
                        .all(|a| sub.iter().all(|b| sub.iter().any(|c| a.is_subset(c) && b.is_subset(c))));
                    if !directed {
                        continue;
                    }
                    let mut u = Subset::empty(n);
                    for s in &sub {
                        u.union_with(s);
                    }
                    debug_assert!(pres.is_c_ideal(&u));
                    if !fam.contains(&u) {
                        fam.push(u);
                        added = true;
                    }
                }
                if !added {
                    break;
                }
            }
            fam
        }
    };
    let gens = pres.gens.clone();
    let carrier = Carrier::new(sets, |s| set_label(&gens, s), |a, b| a.is_subset(b));
    let eta = (0..n)
        .map(|p| carrier.index_of(&pres.least_c_ideal(&Subset::singleton(n, p))))
        .collect();
    Ok((carrier, eta))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateResult {
    pub candidate: Candidate,
    pub size: usize,
    pub maps_checked: usize,
    /// First few failures: a target, a cover-preserving `f` and the number of
    /// extensions found (0, or 2 meaning "at least two").
    pub violations: Vec<String>,
    pub violation_count: usize,
}

impl CandidateResult {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

const MAX_LISTED_VIOLATIONS: usize = 3;

/// Runs every candidate through the universal property against `targets`:
/// for each cover-preserving `f`, exactly one monotone `f̄` with `f̄ ∘ η = f`.
/// On finite targets Scott-continuity is monotonicity.
pub fn verify_free_generation(pres: &DcpoPresentation, targets: &[FinitePoset]) -> Result<Vec<CandidateResult>> {
    let n = pres.n();
    let empty_sig = Signature::new(Vec::new())?;
    let mut out = Vec::new();
    for kind in Candidate::ALL {
        let (carrier, eta) = candidate_carrier(pres, kind)?;
        let a = OrderedAlgebra::new(carrier.poset.clone(), empty_sig.clone(), Vec::new(), None)?;
        let mut r = CandidateResult {
            candidate: kind,
            size: carrier.n(),
            maps_checked: 0,
            violations: Vec::new(),
            violation_count: 0,
        };
        for (ti, d) in targets.iter().enumerate() {
            check_power("generator maps", d.n(), n, DEFAULT_MAP_GUARD)?;
            let b = OrderedAlgebra::new(d.clone(), empty_sig.clone(), Vec::new(), None)?;
            let total = d.n().pow(n as u32);
            for code in 0..total {
                let mut f = vec![0; n];
                let mut c = code;
                for slot in f.iter_mut().rev() {
                    *slot = c % d.n();
                    c /= d.n();
                }
                if pres.cover_preserving_check(d, &f)?.is_some() {
                    continue;
                }
                r.maps_checked += 1;
                let mut fixed = vec![None; carrier.n()];
                let mut ok = true;
                for (p, e) in eta.iter().enumerate() {
                    match e {
                        None => ok = false,
                        Some(e) => match fixed[*e] {
                            Some(v) if v != f[p] => ok = false,
                            _ => fixed[*e] = Some(f[p]),
                        },
                    }
                }
                let count = if ok {
                    extensions(&a, &b, &fixed, 2, DEFAULT_MAP_GUARD)?.len()
                } else {
                    0
                };
                if count != 1 {
                    r.violation_count += 1;
                    if r.violations.len() < MAX_LISTED_VIOLATIONS {
                        let img: Vec<&str> = f.iter().map(|&v| d.label(v)).collect();
                        r.violations.push(format!("target {ti} f={img:?}: {count} extensions"));
                    }
                }
            }
        }
        out.push(r);
    }
    Ok(out)
}

/// A named presentation for the curated suite.
pub struct NamedPresentation {
    pub name: &'static str,
    pub pres: DcpoPresentation,
}

/// Small presentations exercising preorders, forcing covers and cover chains.
pub fn presentation_suite() -> Vec<NamedPresentation> {
    let p = |gens: &[&str], le: &[(&str, &str)], covers: &[(&str, Vec<&str>)]| {
        DcpoPresentation::new(gens, le, covers).expect("suite presentations are valid")
    };
    vec![
        NamedPresentation {
            name: "point",
            pres: p(&["g"], &[], &[]),
        },
        NamedPresentation {
            name: "antichain2",
            pres: p(&["a", "b"], &[], &[]),
        },
        NamedPresentation {
            name: "chain3",
            pres: p(&["a", "b", "c"], &[("a", "b"), ("b", "c")], &[]),
        },
        NamedPresentation {
            name: "preorder-cycle",
            pres: p(&["a", "b", "c"], &[("a", "b"), ("b", "a")], &[]),
        },
        NamedPresentation {
            name: "single-cover",
            pres: p(&["a", "b"], &[], &[("a", vec!["b"])]),
        },
        NamedPresentation {
            name: "forcing-cover",
            pres: p(&["a", "b", "c"], &[("a", "b")], &[("c", vec!["a", "b"])]),
        },
        NamedPresentation {
            name: "cover-cycle",
            pres: p(&["a", "b", "c"], &[], &[("a", vec!["b"]), ("b", vec!["c"]), ("c", vec!["a"])]),
        },
        NamedPresentation {
            name: "two-chains-crossed",
            pres: p(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("c", "d")],
                &[("d", vec!["a", "b"]), ("a", vec!["c"])],
            ),
        },
        NamedPresentation {
            name: "diamond-covered",
            pres: p(
                &["bot", "l", "r", "top", "x"],
                &[("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
                &[("x", vec!["l"]), ("top", vec!["x"])],
            ),
        },
        NamedPresentation {
            name: "six-gens",
            pres: p(
                &["a", "b", "c", "d", "e", "f"],
                &[("a", "b"), ("b", "c"), ("d", "e")],
                &[("f", vec!["a", "b", "c"]), ("e", vec!["f"]), ("d", vec!["c"])],
            ),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_ideal_examples() {
        let s = presentation_suite();
        let forcing = &s[5].pres;
        let n = forcing.n();
        assert!(forcing.least_c_ideal(&Subset::empty(n)).is_empty());
        let b = Subset::singleton(n, 1);
        assert_eq!(forcing.least_c_ideal(&b), Subset::full(n));
        let chain = &s[2].pres;
        assert_eq!(chain.least_c_ideal(&Subset::singleton(3, 1)).len(), 2);
    }

    #[test]
    fn cover_free_ideals_are_down_sets() {
        let pres = DcpoPresentation::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        assert_eq!(pres.all_c_ideals().unwrap().n(), 3);
    }

    #[test]
    fn cover_sets_must_be_directed() {
        let e = DcpoPresentation::new(&["a", "b", "c"], &[], &[("c", vec!["a", "b"])]);
        assert!(matches!(e, Err(Error::Directedness(_))));
    }

    #[test]
    fn negative_cover_control() {
        let pres = DcpoPresentation::new(&["a", "b", "c"], &[("b", "c")], &[("a", vec!["b", "c"])]).unwrap();
        let d = FinitePoset::chain(2);
        // f(a) = top, f(b) = f(c) = bottom.
        let w = pres.cover_preserving_check(&d, &[1, 0, 0]).unwrap();
        assert!(w.unwrap().contains('◁'));
        assert!(pres.cover_preserving_check(&d, &[0, 0, 1]).unwrap().is_none());
    }
}
