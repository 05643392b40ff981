use crate::algebra::{Signature, Term, Theory};
use crate::error::{Error, Result};
use crate::order::{find_isomorphism, FinitePoset};

/// A finite poset with a monotone table for every operation symbol.
///
/// `tables[op]` is indexed row-major by argument tuples: the tuple
/// `(a_0, ..., a_{k-1})` sits at `Σ a_i · n^{k-1-i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedAlgebra {
    pub carrier: FinitePoset,
    pub sig: Signature,
    pub tables: Vec<Vec<usize>>,
    /// Image of each generator, for candidate free objects.
    pub unit: Option<Vec<usize>>,
}

pub(crate) fn tuple_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// All `k`-tuples over `0..n` in lexicographic order.
pub(crate) fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(k as u32).expect("tuple space overflows");
    (0..total).map(move |mut idx| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        t
    })
}

impl OrderedAlgebra {
    pub fn new(
        carrier: FinitePoset,
        sig: Signature,
        tables: Vec<Vec<usize>>,
        unit: Option<Vec<usize>>,
    ) -> Result<OrderedAlgebra> {
        let n = carrier.n();
        if tables.len() != sig.ops.len() {
            return Err(Error::Invalid("one table per operation expected".into()));
        }
        for (op, t) in tables.iter().enumerate() {
            if t.len() != n.pow(sig.arity(op) as u32) || t.iter().any(|&v| v >= n) {
                return Err(Error::Invalid(format!("table for {} has the wrong shape", sig.name(op))));
            }
        }
        if let Some(u) = &unit {
            if u.iter().any(|&v| v >= n) {
                return Err(Error::Invalid("unit points outside the carrier".into()));
            }
        }
        let a = OrderedAlgebra {
            carrier,
            sig,
            tables,
            unit,
        };
        for op in 0..a.sig.ops.len() {
            let per_arg = a.per_argument_witness(op);
            let joint = a.joint_witness(op);
            assert_eq!(
                per_arg.is_none(),
                joint.is_none(),
                "per-argument and joint monotonicity disagree"
            );
            if let Some(w) = per_arg {
                return Err(Error::NotMonotone(format!("{}: {w}", a.sig.name(op))));
            }
        }
        Ok(a)
    }

    pub fn n(&self) -> usize {
        self.carrier.n()
    }

    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][tuple_index(self.n(), args)]
    }

    fn render_tuple(&self, args: &[usize]) -> String {
        let parts: Vec<&str> = args.iter().map(|&a| self.carrier.label(a)).collect();
        format!("({})", parts.join(","))
    }

    /// A tuple and a position where raising one argument lowers the result.
    fn per_argument_witness(&self, op: usize) -> Option<String> {
        let (n, k) = (self.n(), self.sig.arity(op));
        for args in tuples(n, k) {
            let r = self.apply(op, &args);
            for p in 0..k {
                for y in self.carrier.up_of(args[p]).iter() {
                    let mut b = args.clone();
                    b[p] = y;
                    if !self.carrier.le(r, self.apply(op, &b)) {
                        return Some(format!("{} vs {}", self.render_tuple(&args), self.render_tuple(&b)));
                    }
                }
            }
        }
        None
    }

    /// Two pointwise-ordered tuples whose results are not ordered.
    fn joint_witness(&self, op: usize) -> Option<String> {
        let (n, k) = (self.n(), self.sig.arity(op));
        let all: Vec<Vec<usize>> = tuples(n, k).collect();
        for a in &all {
            for b in &all {
                let below = a.iter().zip(b).all(|(&x, &y)| self.carrier.le(x, y));
                if below && !self.carrier.le(self.apply(op, a), self.apply(op, b)) {
                    return Some(format!("{} vs {}", self.render_tuple(a), self.render_tuple(b)));
                }
            }
        }
        None
    }

    /// Value of `t` with generators read through the unit and variables
    /// through `vars`.
    pub fn eval(&self, t: &Term, vars: &[usize]) -> usize {
        match t {
            Term::Gen(g) => self.unit.as_ref().expect("algebra has no unit")[*g],
            Term::Var(v) => vars[*v],
            Term::App(op, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.eval(a, vars)).collect();
                self.apply(*op, &vals)
            }
        }
    }

    /// The first law instance that fails, rendered.
    pub fn law_witness(&self, theory: &Theory) -> Option<String> {
        assert_eq!(self.sig.ops.len(), theory.sig.ops.len(), "signature mismatch");
        for (k, (l, r)) in theory.ineqs.iter().enumerate() {
            let m = l.var_count().max(r.var_count());
            for vars in tuples(self.n(), m) {
                if !self.carrier.le(self.eval(l, &vars), self.eval(r, &vars)) {
                    return Some(format!(
                        "{} fails at {}",
                        theory.render_ineq(k),
                        self.render_tuple(&vars)
                    ));
                }
            }
        }
        None
    }

    pub fn satisfies(&self, theory: &Theory) -> Result<()> {
        match self.law_witness(theory) {
            Some(w) => Err(Error::LawViolated(w)),
            None => Ok(()),
        }
    }

    /// Whether `table` commutes with every operation into `b`.
    pub fn is_homomorphism(&self, b: &OrderedAlgebra, table: &[usize]) -> bool {
        (0..self.sig.ops.len()).all(|op| {
            tuples(self.n(), self.sig.arity(op)).all(|args| {
                let img: Vec<usize> = args.iter().map(|&a| table[a]).collect();
                table[self.apply(op, &args)] == b.apply(op, &img)
            })
        })
    }
}

/// An isomorphism `A -> B` of ordered algebras that also carries the unit of
/// `A` onto the unit of `B` when both have one.
pub fn algebra_isomorphism(a: &OrderedAlgebra, b: &OrderedAlgebra) -> Option<Vec<usize>> {
    let n = a.n();
    if n != b.n() || a.sig.ops.len() != b.sig.ops.len() {
        return None;
    }
    if (0..a.sig.ops.len()).any(|op| a.sig.arity(op) != b.sig.arity(op)) {
        return None;
    }
    let mut fixed: Vec<Option<usize>> = vec![None; n];
    if let (Some(ua), Some(ub)) = (&a.unit, &b.unit) {
        if ua.len() != ub.len() {
            return None;
        }
        for (&x, &y) in ua.iter().zip(ub) {
            match fixed[x] {
                Some(z) if z != y => return None,
                _ => fixed[x] = Some(y),
            }
        }
        // Close the forced assignment under the operations.
        let mut changed = true;
        while changed {
            changed = false;
            for op in 0..a.sig.ops.len() {
                for args in tuples(n, a.sig.arity(op)) {
                    let img: Option<Vec<usize>> = args.iter().map(|&x| fixed[x]).collect();
                    if let Some(img) = img {
                        let (r, s) = (a.apply(op, &args), b.apply(op, &img));
                        match fixed[r] {
                            Some(t) if t != s => return None,
                            Some(_) => {}
                            None => {
                                fixed[r] = Some(s);
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
    }
    let consistent = |assign: &[Option<usize>]| {
        (0..a.sig.ops.len()).all(|op| {
            tuples(n, a.sig.arity(op)).all(|args| {
                let img: Option<Vec<usize>> = args.iter().map(|&x| assign[x]).collect();
                match (img, assign[a.apply(op, &args)]) {
                    (Some(img), Some(r)) => b.apply(op, &img) == r,
                    _ => true,
                }
            })
        })
    };
    if !consistent(&fixed) {
        return None;
    }
    let iso = find_isomorphism(&a.carrier, &b.carrier, &fixed, consistent)?;
    debug_assert!(a.is_homomorphism(b, &iso));
    Some(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Preset;

    fn chain_max() -> OrderedAlgebra {
        let t = Preset::Inflationary.theory();
        OrderedAlgebra::new(FinitePoset::chain(2), t.sig, vec![vec![0, 1, 1, 1]], None).unwrap()
    }

    #[test]
    fn laws_and_monotonicity() {
        let a = chain_max();
        assert!(a.satisfies(&Preset::Inflationary.theory()).is_ok());
        let min = OrderedAlgebra::new(
            FinitePoset::chain(2),
            a.sig.clone(),
            vec![vec![0, 0, 0, 1]],
            None,
        )
        .unwrap();
        assert!(min.satisfies(&Preset::Semilattice.theory()).is_ok());
        assert!(min.satisfies(&Preset::Inflationary.theory()).is_err());
        let bad = OrderedAlgebra::new(FinitePoset::chain(2), a.sig.clone(), vec![vec![1, 0, 0, 0]], None);
        assert!(matches!(bad, Err(Error::NotMonotone(_))));
    }

    #[test]
    fn iso_respects_tables() {
        let a = chain_max();
        assert_eq!(algebra_isomorphism(&a, &a), Some(vec![0, 1]));
        let min = OrderedAlgebra::new(FinitePoset::chain(2), a.sig.clone(), vec![vec![0, 0, 0, 1]], None).unwrap();
        assert!(algebra_isomorphism(&a, &min).is_none());
    }

    #[test]
    fn tuple_enumeration() {
        let t: Vec<Vec<usize>> = tuples(2, 2).collect();
        assert_eq!(t, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0).count(), 1);
        assert_eq!(tuple_index(3, &[2, 1]), 7);
    }
}
