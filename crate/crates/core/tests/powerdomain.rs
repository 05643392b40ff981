use std::collections::BTreeSet;

use pdlab::order::corpus;
use pdlab::powerdomain::{
    convex_powerspace, corrupted_lower, f_k_lower, f_k_upper, fk_audit, lens_representation, lower_powerspace,
    representation_audit, upper_powerspace, way_below_q_audit,
};
use pdlab::subset::all_subsets;
use pdlab::{Error, FinitePoset, Subset};

fn diamond() -> FinitePoset {
    FinitePoset::from_relation(
        &["bot", "a", "b", "top"],
        &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
    )
    .unwrap()
}

fn between_scan(p: &FinitePoset, a: &Subset) -> Subset {
    Subset::from_indices(
        p.n(),
        (0..p.n()).filter(|&y| a.iter().any(|x| p.le(x, y)) && a.iter().any(|z| p.le(y, z))),
    )
}

fn egli_milner(p: &FinitePoset, a: &Subset, b: &Subset) -> bool {
    a.iter().all(|x| b.iter().any(|y| p.le(x, y))) && b.iter().all(|y| a.iter().any(|x| p.le(x, y)))
}

#[test]
fn lenses_by_brute_force() {
    for p in corpus(4).into_iter().chain([diamond()]) {
        let lenses = lens_representation(&p).unwrap();
        let oracle: BTreeSet<Subset> = all_subsets(p.n())
            .filter(|s| !s.is_empty() && between_scan(&p, s) == *s)
            .collect();
        let ours: BTreeSet<Subset> = lenses.carrier.elements.iter().cloned().collect();
        assert_eq!(ours, oracle, "{p:?}");
        let e = &lenses.carrier.elements;
        for i in 0..e.len() {
            for j in 0..e.len() {
                assert_eq!(lenses.carrier.poset.le(i, j), egli_milner(&p, &e[i], &e[j]));
                let sum = lenses.algebra.apply(0, &[i, j]);
                assert_eq!(e[sum], between_scan(&p, &e[i].union(&e[j])));
            }
        }
        assert_eq!(convex_powerspace(&p).unwrap().carrier.n(), oracle.len());
    }
    assert_eq!(lens_representation(&diamond()).unwrap().carrier.n(), 12);
}

#[test]
fn convex_small_cases() {
    let anti = convex_powerspace(&FinitePoset::antichain(2)).unwrap();
    assert_eq!(anti.carrier.n(), 3);
    assert_eq!(anti.carrier.poset.comparable_pairs(), 0);
    let chain = convex_powerspace(&FinitePoset::chain(2)).unwrap();
    assert_eq!(chain.carrier.n(), 3);
    assert_eq!(chain.carrier.poset.comparable_pairs(), 3);
}

#[test]
fn lower_and_upper_carriers_by_scan() {
    for p in corpus(4) {
        let n = p.n();
        let downs: BTreeSet<Subset> = all_subsets(n)
            .filter(|s| !s.is_empty() && s.iter().all(|x| (0..n).all(|y| !p.le(y, x) || s.contains(y))))
            .collect();
        let ups: BTreeSet<Subset> = all_subsets(n)
            .filter(|s| !s.is_empty() && s.iter().all(|x| (0..n).all(|y| !p.le(x, y) || s.contains(y))))
            .collect();
        let lower = lower_powerspace(&p).unwrap();
        let upper = upper_powerspace(&p).unwrap();
        assert_eq!(lower.carrier.elements.iter().cloned().collect::<BTreeSet<_>>(), downs);
        assert_eq!(upper.carrier.elements.iter().cloned().collect::<BTreeSet<_>>(), ups);
        let (le, ue) = (&lower.carrier.elements, &upper.carrier.elements);
        for i in 0..le.len() {
            for j in 0..le.len() {
                assert_eq!(lower.carrier.poset.le(i, j), le[i].is_subset(&le[j]));
                assert_eq!(le[lower.algebra.apply(0, &[i, j])], le[i].union(&le[j]));
            }
        }
        for i in 0..ue.len() {
            for j in 0..ue.len() {
                assert_eq!(upper.carrier.poset.le(i, j), ue[j].is_subset(&ue[i]));
                assert_eq!(ue[upper.algebra.apply(0, &[i, j])], ue[i].union(&ue[j]));
            }
        }
    }
    let anti = FinitePoset::antichain(2);
    let lower = lower_powerspace(&anti).unwrap();
    let top = lower.carrier.index_of(&Subset::full(2)).unwrap();
    assert!((0..3).all(|i| lower.carrier.poset.le(i, top)));
    let upper = upper_powerspace(&anti).unwrap();
    let bot = upper.carrier.index_of(&Subset::full(2)).unwrap();
    assert!((0..3).all(|i| upper.carrier.poset.le(bot, i)));
}

#[test]
fn f_k_examples_and_scan() {
    let anti = FinitePoset::antichain(2);
    let ab = Subset::full(2);
    assert_eq!(f_k_upper(&upper_powerspace(&anti).unwrap(), &ab).unwrap().len(), 1);
    assert_eq!(f_k_lower(&lower_powerspace(&anti).unwrap(), &ab).unwrap().len(), 3);
    for p in corpus(4) {
        let upper = upper_powerspace(&p).unwrap();
        let lower = lower_powerspace(&p).unwrap();
        for k in all_subsets(p.n()).filter(|k| !k.is_empty()) {
            match f_k_upper(&upper, &k) {
                Ok(fk) => {
                    let scan = Subset::from_indices(
                        upper.carrier.n(),
                        (0..upper.carrier.n()).filter(|&i| k.is_subset(&upper.carrier.elements[i])),
                    );
                    assert_eq!(fk, scan);
                }
                Err(e) => {
                    assert!(!p.is_up_set(&k));
                    assert!(matches!(e, Error::BadK(_)));
                }
            }
            match f_k_lower(&lower, &k) {
                Ok(fk) => {
                    let scan = Subset::from_indices(
                        lower.carrier.n(),
                        (0..lower.carrier.n()).filter(|&i| lower.carrier.elements[i].is_subset(&k)),
                    );
                    assert_eq!(fk, scan);
                }
                Err(_) => assert!(!p.is_down_set(&k)),
            }
        }
    }
}

#[test]
fn audits_pass_on_corpus() {
    for p in corpus(4) {
        let r = representation_audit(&p, None).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        let checks = fk_audit(&p, p.n() <= 3).unwrap();
        assert!(checks.iter().all(|c| !c.failed()), "{checks:?}");
        assert!(!way_below_q_audit(&p).unwrap().failed());
    }
    let r = representation_audit(&diamond(), None).unwrap();
    assert_eq!((r.gamma, r.q, r.lenses), (5, 5, 12));
}

#[test]
fn corrupted_candidate_needs_a_chain() {
    assert!(corrupted_lower(&FinitePoset::chain(3)).is_ok());
    assert!(matches!(corrupted_lower(&FinitePoset::antichain(2)), Err(Error::NotMonotone(_))));
}
