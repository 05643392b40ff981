//! Posets whose elements are structured values (sets, pairs of sets).

use std::collections::HashMap;
use std::hash::Hash;

use crate::order::FinitePoset;

/// A finite poset together with the value each element stands for.
///
/// `elements[i]` is the value of poset element `i`; the poset is canonically
/// indexed, so `elements` follows a linear extension of the order.
#[derive(Clone, Debug)]
pub struct Carrier<E> {
    pub elements: Vec<E>,
    pub poset: FinitePoset,
    index: HashMap<E, usize>,
}

impl<E: Clone + Eq + Hash> Carrier<E> {
    /// Builds the carrier of `values` (duplicates dropped) ordered by `le`,
    /// which must be a partial order on the distinct values.
    pub fn new(values: Vec<E>, label: impl Fn(&E) -> String, le: impl Fn(&E, &E) -> bool) -> Carrier<E> {
        let mut seen = HashMap::new();
        let mut vals = Vec::new();
        for v in values {
            if !seen.contains_key(&v) {
                seen.insert(v.clone(), vals.len());
                vals.push(v);
            }
        }
        let labels = vals.iter().map(&label).collect();
        let (poset, perm) = FinitePoset::from_fn(labels, |i, j| le(&vals[i], &vals[j]))
            .expect("carrier order must be antisymmetric");
        let elements: Vec<E> = perm.iter().map(|&k| vals[k].clone()).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Carrier {
            elements,
            poset,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }
}
