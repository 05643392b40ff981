use std::collections::BTreeSet;

use crate::algebra::structure::{tuple_index, tuples};
use crate::algebra::{OrderedAlgebra, Preset, Theory};
use crate::error::Result;
use crate::order::{corpus, FinitePoset};

/// Order automorphisms of a small poset, by brute force over permutations.
fn automorphisms(p: &FinitePoset) -> Vec<Vec<usize>> {
    let n = p.n();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |s| {
        if (0..n).all(|i| (0..n).all(|j| p.le(i, j) == p.le(s[i], s[j]))) {
            out.push(s.to_vec());
        }
    });
    out
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Every ordered algebra on a corpus poset of size `1..=max_n` that
/// satisfies `theory`, one per isomorphism class of (poset, tables).
pub fn enumerate_theory_models(theory: &Theory, max_n: usize, guard: f64) -> Result<Vec<OrderedAlgebra>> {
    let sig = &theory.sig;
    let mut out = Vec::new();
    for p in corpus(max_n) {
        let n = p.n();
        let cells: usize = (0..sig.ops.len()).map(|op| n.pow(sig.arity(op) as u32)).sum();
        crate::error::check_power("model tables", n, cells, guard)?;
        let autos = automorphisms(&p);
        // Flattened cells: (op, tuple) in op-major, lexicographic order.
        let layout: Vec<(usize, Vec<usize>)> = (0..sig.ops.len())
            .flat_map(|op| tuples(n, sig.arity(op)).map(move |t| (op, t)))
            .collect();
        // For each cell, the earlier cells of the same operation whose tuple
        // lies pointwise below it.
        let below: Vec<Vec<usize>> = layout
            .iter()
            .enumerate()
            .map(|(c, (op, t))| {
                (0..c)
                    .filter(|&d| {
                        layout[d].0 == *op && layout[d].1.iter().zip(t).all(|(&x, &y)| p.le(x, y))
                    })
                    .collect()
            })
            .collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut vals = vec![0; layout.len()];
        let mut found = Vec::new();
        fill(&p, &below, 0, &mut vals, &mut |vals| {
            let tables = split(sig, n, vals);
            let a = OrderedAlgebra::new(p.clone(), sig.clone(), tables, None).expect("monotone by construction");
            if a.satisfies(theory).is_ok() {
                found.push(a);
            }
        });
        for a in found {
            let key = autos
                .iter()
                .map(|s| relabel(&a, s))
                .min()
                .expect("identity is an automorphism");
            if seen.insert(key) {
                out.push(a);
            }
        }
    }
    Ok(out)
}

fn fill(p: &FinitePoset, below: &[Vec<usize>], c: usize, vals: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if c == vals.len() {
        emit(vals);
        return;
    }
    for v in 0..p.n() {
        if below[c].iter().all(|&d| p.le(vals[d], v)) {
            vals[c] = v;
            fill(p, below, c + 1, vals, emit);
        }
    }
}

fn split(sig: &crate::algebra::Signature, n: usize, vals: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for op in 0..sig.ops.len() {
        let len = n.pow(sig.arity(op) as u32);
        out.push(vals[start..start + len].to_vec());
        start += len;
    }
    out
}

/// Tables of `a` transported along the permutation `s`, flattened.
fn relabel(a: &OrderedAlgebra, s: &[usize]) -> Vec<usize> {
    let n = a.n();
    let mut out = Vec::new();
    for (op, t) in a.tables.iter().enumerate() {
        let mut moved = vec![0; t.len()];
        for args in tuples(n, a.sig.arity(op)) {
            let img: Vec<usize> = args.iter().map(|&x| s[x]).collect();
            moved[tuple_index(n, &img)] = s[t[tuple_index(n, &args)]];
        }
        out.extend(moved);
    }
    out
}

/// Models of each preset theory up to a carrier size, enumerated once and
/// shared between audits.
#[derive(Clone, Debug)]
pub struct PresetModels {
    pub max_n: usize,
    by_preset: Vec<(Preset, Vec<OrderedAlgebra>)>,
}

impl PresetModels {
    pub fn enumerate(max_n: usize, guard: f64) -> Result<PresetModels> {
        let by_preset = Preset::ALL
            .iter()
            .map(|&p| Ok((p, enumerate_theory_models(&p.theory(), max_n, guard)?)))
            .collect::<Result<_>>()?;
        Ok(PresetModels { max_n, by_preset })
    }

    pub fn get(&self, preset: Preset) -> &[OrderedAlgebra] {
        &self
            .by_preset
            .iter()
            .find(|(p, _)| *p == preset)
            .expect("every preset is enumerated")
            .1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Preset;

    #[test]
    fn semilattice_models() {
        let t = Preset::Semilattice.theory();
        assert_eq!(enumerate_theory_models(&t, 1, 1e7).unwrap().len(), 1);
        assert_eq!(enumerate_theory_models(&t, 2, 1e7).unwrap().len(), 4);
    }

    #[test]
    fn inflationary_models() {
        let t = Preset::Inflationary.theory();
        let ms = enumerate_theory_models(&t, 2, 1e7).unwrap();
        assert_eq!(ms.len(), 2);
        assert!(ms.iter().all(|m| m.satisfies(&t).is_ok()));
    }

    #[test]
    fn guard_trips() {
        let t = Preset::Semilattice.theory();
        assert!(enumerate_theory_models(&t, 3, 1e3).is_err());
    }
}
