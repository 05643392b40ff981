use crate::order::FinitePoset;

/// An order-isomorphism `P -> Q` as a table, if one exists.
pub fn poset_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    find_isomorphism(p, q, &vec![None; p.n()], |_| true)
}

/// Per-element invariant preserved by isomorphisms.
fn signature(p: &FinitePoset, i: usize, h: &[usize], d: &[usize]) -> (usize, usize, usize, usize) {
    (p.down_of(i).len(), p.up_of(i).len(), h[i], d[i])
}

/// Backtracking search for an order-isomorphism extending `fixed`.
///
/// Candidates for each element are restricted to codomain elements with the
/// same (down-degree, up-degree, height, depth) signature. `accept` sees the
/// partial assignment after each extension and can prune it; it must also
/// accept every complete isomorphism the caller wants returned.
pub fn find_isomorphism(
    p: &FinitePoset,
    q: &FinitePoset,
    fixed: &[Option<usize>],
    mut accept: impl FnMut(&[Option<usize>]) -> bool,
) -> Option<Vec<usize>> {
    let n = p.n();
    if n != q.n() || p.comparable_pairs() != q.comparable_pairs() {
        return None;
    }
    let (hp, dp, hq, dq) = (p.heights(), p.depths(), q.heights(), q.depths());
    let sp: Vec<_> = (0..n).map(|i| signature(p, i, &hp, &dp)).collect();
    let sq: Vec<_> = (0..n).map(|i| signature(q, i, &hq, &dq)).collect();
    let (mut a, mut b) = (sp.clone(), sq.clone());
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|i| match fixed[i] {
            Some(t) => vec![t],
            None => (0..n).filter(|&t| sq[t] == sp[i]).collect(),
        })
        .collect();
    // Most constrained elements first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (cands[i].len(), i));
    let mut assign = vec![None; n];
    let mut used = vec![false; n];
    if search(p, q, &order, 0, &cands, &mut assign, &mut used, &mut accept) {
        Some(assign.into_iter().map(|x| x.unwrap()).collect())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    p: &FinitePoset,
    q: &FinitePoset,
    order: &[usize],
    k: usize,
    cands: &[Vec<usize>],
    assign: &mut [Option<usize>],
    used: &mut [bool],
    accept: &mut impl FnMut(&[Option<usize>]) -> bool,
) -> bool {
    if k == order.len() {
        return true;
    }
    let i = order[k];
    for &t in &cands[i] {
        if used[t] {
            continue;
        }
        let consistent = order[..k].iter().all(|&j| {
            let u = assign[j].unwrap();
            p.le(i, j) == q.le(t, u) && p.le(j, i) == q.le(u, t)
        });
        if !consistent {
            continue;
        }
        assign[i] = Some(t);
        used[t] = true;
        if accept(assign) && search(p, q, order, k + 1, cands, assign, used, accept) {
            return true;
        }
        assign[i] = None;
        used[t] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_non_isomorphic() {
        let d = FinitePoset::chain(3);
        assert_eq!(poset_isomorphic(&d, &d), Some(vec![0, 1, 2]));
        assert!(poset_isomorphic(&FinitePoset::chain(2), &FinitePoset::antichain(2)).is_none());
    }

    #[test]
    fn found_map_is_an_isomorphism() {
        let p = FinitePoset::from_relation(&["a", "b", "c"], &[("a", "c")]).unwrap();
        let q = FinitePoset::from_relation(&["x", "y", "z"], &[("y", "z")]).unwrap();
        let f = poset_isomorphic(&p, &q).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.le(i, j), q.le(f[i], f[j]));
            }
        }
    }

    #[test]
    fn fixed_points_are_respected() {
        let a2 = FinitePoset::antichain(2);
        let f = find_isomorphism(&a2, &a2, &[Some(1), None], |_| true).unwrap();
        assert_eq!(f, vec![1, 0]);
        assert!(find_isomorphism(&a2, &a2, &[Some(1), Some(1)], |_| true).is_none());
    }
}
