use crate::algebra::structure::tuples;
use crate::algebra::OrderedAlgebra;
use crate::error::{Error, Result};
use crate::order::{enumerate_monotone_maps, FinitePoset, MonotoneMap};

/// Constraint `table[result] = op(table[args])`, checked once every element
/// involved has a value.
struct Constraint {
    op: usize,
    args: Vec<usize>,
    result: usize,
}

/// Monotone homomorphisms `A -> B` that agree with `fixed` where it is set,
/// in lexicographic table order, stopping after `limit` of them.
///
/// Fails when `B.n` raised to the number of free positions exceeds `guard`.
pub fn extensions(
    a: &OrderedAlgebra,
    b: &OrderedAlgebra,
    fixed: &[Option<usize>],
    limit: usize,
    guard: f64,
) -> Result<Vec<Vec<usize>>> {
    let n = a.n();
    assert_eq!(fixed.len(), n);
    assert_eq!(a.sig.ops.len(), b.sig.ops.len(), "signature mismatch");
    let free = fixed.iter().filter(|f| f.is_none()).count();
    crate::error::check_power("homomorphism search", b.n(), free, guard)?;
    let mut at: Vec<Vec<Constraint>> = (0..n).map(|_| Vec::new()).collect();
    for op in 0..a.sig.ops.len() {
        for args in tuples(n, a.sig.arity(op)) {
            let result = a.apply(op, &args);
            let last = args.iter().copied().chain([result]).max().unwrap();
            at[last].push(Constraint { op, args, result });
        }
    }
    let mut out = Vec::new();
    let mut table = vec![0; n];
    search(a, b, fixed, &at, 0, &mut table, limit, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &OrderedAlgebra,
    b: &OrderedAlgebra,
    fixed: &[Option<usize>],
    at: &[Vec<Constraint>],
    e: usize,
    table: &mut Vec<usize>,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if out.len() >= limit {
        return;
    }
    if e == a.n() {
        out.push(table.clone());
        return;
    }
    let cands: Vec<usize> = match fixed[e] {
        Some(v) => vec![v],
        None => (0..b.n()).collect(),
    };
    for v in cands {
        let monotone = a
            .carrier
            .down_of(e)
            .iter()
            .all(|j| j == e || b.carrier.le(table[j], v));
        if !monotone {
            continue;
        }
        table[e] = v;
        let ok = at[e].iter().all(|c| {
            let img: Vec<usize> = c.args.iter().map(|&x| table[x]).collect();
            b.apply(c.op, &img) == table[c.result]
        });
        if ok {
            search(a, b, fixed, at, e + 1, table, limit, out);
            if out.len() >= limit {
                return;
            }
        }
    }
}

/// Every monotone map `A -> B` commuting with all operations.
pub fn enumerate_homomorphisms<'a>(a: &'a OrderedAlgebra, b: &'a OrderedAlgebra, guard: f64) -> Result<Vec<MonotoneMap<'a>>> {
    Ok(extensions(a, b, &vec![None; a.n()], usize::MAX, guard)?
        .into_iter()
        .map(|table| MonotoneMap {
            dom: &a.carrier,
            cod: &b.carrier,
            table,
        })
        .collect())
}

/// A monotone `f` from the generators into a target with no extension, or
/// with more than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub target: usize,
    pub f: Vec<usize>,
    /// Empty (no extension) or two distinct extensions.
    pub extensions: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniversalReport {
    pub targets: usize,
    pub maps_checked: usize,
    pub violations: Vec<Violation>,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every target `B` and every monotone `f: P -> B`, counts the
/// homomorphisms `F -> B` that restrict to `f` along the unit of `F`; the
/// universal property holds when every count is exactly one.
pub fn verify_universal_property(
    free: &OrderedAlgebra,
    gens: &FinitePoset,
    targets: &[OrderedAlgebra],
    guard: f64,
) -> Result<UniversalReport> {
    let unit = free
        .unit
        .as_ref()
        .ok_or_else(|| Error::Invalid("candidate free algebra has no unit".into()))?;
    if unit.len() != gens.n() {
        return Err(Error::Invalid("unit does not match the generators".into()));
    }
    let mut report = UniversalReport {
        targets: targets.len(),
        ..UniversalReport::default()
    };
    for (ti, b) in targets.iter().enumerate() {
        for f in enumerate_monotone_maps(gens, &b.carrier, guard)? {
            report.maps_checked += 1;
            let mut fixed = vec![None; free.n()];
            let mut clash = false;
            for (g, &u) in unit.iter().enumerate() {
                match fixed[u] {
                    Some(v) if v != f.table[g] => clash = true,
                    _ => fixed[u] = Some(f.table[g]),
                }
            }
            let exts = if clash {
                Vec::new()
            } else {
                extensions(free, b, &fixed, 2, guard)?
            };
            if exts.len() != 1 {
                report.violations.push(Violation {
                    target: ti,
                    f: f.table,
                    extensions: exts,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Preset, Signature};

    fn join_chain2() -> OrderedAlgebra {
        let sig = Signature::new(vec![("join".into(), 2)]).unwrap();
        OrderedAlgebra::new(FinitePoset::chain(2), sig, vec![vec![0, 1, 1, 1]], None).unwrap()
    }

    #[test]
    fn homs_of_small_algebras() {
        let sig = Signature::new(vec![("join".into(), 2)]).unwrap();
        let one = OrderedAlgebra::new(FinitePoset::chain(1), sig, vec![vec![0]], None).unwrap();
        assert_eq!(enumerate_homomorphisms(&one, &one, 1e6).unwrap().len(), 1);
        // Monotone join-preserving self-maps of the 2-chain: both constants and the identity.
        let c = join_chain2();
        assert_eq!(enumerate_homomorphisms(&c, &c, 1e6).unwrap().len(), 3);
    }

    #[test]
    fn point_is_free_over_one_generator() {
        let sig = Preset::Inflationary.theory().sig;
        let one = OrderedAlgebra::new(FinitePoset::chain(1), sig, vec![vec![0]], Some(vec![0])).unwrap();
        let r = verify_universal_property(&one, &FinitePoset::chain(1), &[join_chain2()], 1e6).unwrap();
        assert!(r.passed());
        assert_eq!(r.maps_checked, 2);
    }
}
