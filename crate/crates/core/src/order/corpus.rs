use std::collections::BTreeMap;

use crate::order::{letter_labels, poset_isomorphic, FinitePoset};
use crate::subset::Subset;

/// Largest `max_n` accepted by [`corpus`].
pub const MAX_CORPUS_N: usize = 6;

type Invariant = (usize, Vec<(usize, usize, usize, usize)>);

fn invariant(p: &FinitePoset) -> Invariant {
    let (h, d) = (p.heights(), p.depths());
    let mut sig: Vec<_> = (0..p.n())
        .map(|i| (p.down_of(i).len(), p.up_of(i).len(), h[i], d[i]))
        .collect();
    sig.sort();
    (p.comparable_pairs(), sig)
}

/// One representative of every isomorphism class of `n`-element posets.
///
/// Candidates are the strict orders contained in `<` on `0..n` (every poset
/// has such a natural labelling), filtered by transitivity and deduplicated
/// by [`poset_isomorphic`] within invariant buckets. Representatives appear in
/// order of first discovery by relation bitmask.
pub fn corpus_of_size(n: usize) -> Vec<FinitePoset> {
    assert!(n <= MAX_CORPUS_N, "corpus supports n <= {MAX_CORPUS_N}");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let labels = letter_labels(n);
    let mut buckets: BTreeMap<Invariant, Vec<usize>> = BTreeMap::new();
    let mut reps: Vec<FinitePoset> = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rows = vec![Subset::empty(n); n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rows[i].insert(j);
            }
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row.insert(i);
        }
        let transitive = (0..n).all(|i| rows[i].iter().all(|j| rows[j].is_subset(&rows[i])));
        if !transitive {
            continue;
        }
        let p = FinitePoset::from_up_rows(labels.clone(), rows).unwrap().0;
        let bucket = buckets.entry(invariant(&p)).or_default();
        if bucket.iter().any(|&r| poset_isomorphic(&reps[r], &p).is_some()) {
            continue;
        }
        bucket.push(reps.len());
        reps.push(p);
    }
    reps
}

/// Representatives of all posets with `1..=max_n` elements, by size.
pub fn corpus(max_n: usize) -> Vec<FinitePoset> {
    (1..=max_n).flat_map(corpus_of_size).collect()
}
