//! Signatures, inequational theories, ordered algebras and free algebras.

mod engine;
mod free;
mod models;
mod structure;
mod universal;

pub use free::{
    free_algebra, precongruence_closure, quotient, term_universe, FreeAlgebra, Preorder, Quotient,
    DEFAULT_SCHEDULE, DEFAULT_UNIVERSE_GUARD,
};
pub use models::{enumerate_theory_models, PresetModels};
pub use structure::{algebra_isomorphism, OrderedAlgebra};
pub use universal::{
    enumerate_homomorphisms, extensions, verify_universal_property, UniversalReport, Violation,
};

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub ops: Vec<(String, usize)>,
}

impl Signature {
    pub fn new(ops: Vec<(String, usize)>) -> Result<Signature> {
        let mut seen = BTreeSet::new();
        for (name, _) in &ops {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidTheory(format!("duplicate operation {name:?}")));
            }
        }
        Ok(Signature { ops })
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].1
    }

    pub fn name(&self, op: usize) -> &str {
        &self.ops[op].0
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|(n, _)| n == name)
    }
}

/// A term over generators (ground terms) or variables (law schemas).
///
/// The derived order compares generators before variables before
/// applications, then operation index, then children lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Gen(usize),
    Var(usize),
    App(usize, Vec<Term>),
}

impl Term {
    pub fn app(op: usize, args: Vec<Term>) -> Term {
        Term::App(op, args)
    }

    pub fn height(&self) -> usize {
        match self {
            Term::Gen(_) | Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::height).max().unwrap_or(0),
        }
    }

    /// One more than the largest variable index, or 0.
    pub fn var_count(&self) -> usize {
        match self {
            Term::Gen(_) => 0,
            Term::Var(v) => v + 1,
            Term::App(_, args) => args.iter().map(Term::var_count).max().unwrap_or(0),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Gen(_) => true,
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Largest number of operation nodes above an occurrence of each
    /// variable, indexed by variable; `None` when the variable is absent.
    pub fn var_depths(&self, out: &mut Vec<Option<usize>>) {
        fn go(t: &Term, depth: usize, out: &mut Vec<Option<usize>>) {
            match t {
                Term::Gen(_) => {}
                Term::Var(v) => {
                    if out.len() <= *v {
                        out.resize(v + 1, None);
                    }
                    out[*v] = Some(out[*v].map_or(depth, |d| d.max(depth)));
                }
                Term::App(_, args) => args.iter().for_each(|a| go(a, depth + 1, out)),
            }
        }
        go(self, 0, out)
    }

    /// Renders with generator labels and signature names, e.g. `join(a,v1)`.
    pub fn render(&self, sig: &Signature, gens: &[String]) -> String {
        match self {
            Term::Gen(g) => gens[*g].clone(),
            Term::Var(v) => format!("v{v}"),
            Term::App(op, args) => {
                let parts: Vec<String> = args.iter().map(|a| a.render(sig, gens)).collect();
                if parts.is_empty() {
                    sig.name(*op).to_string()
                } else {
                    format!("{}({})", sig.name(*op), parts.join(","))
                }
            }
        }
    }

    fn check_arity(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Gen(_) | Term::Var(_) => Ok(()),
            Term::App(op, args) => {
                if *op >= sig.ops.len() || sig.arity(*op) != args.len() {
                    return Err(Error::InvalidTheory(format!("arity mismatch at operation {op}")));
                }
                args.iter().try_for_each(|a| a.check_arity(sig))
            }
        }
    }
}

/// The three preset theories, each with one binary operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// `plus`: associative, commutative, idempotent.
    Semilattice,
    /// `join`: as above, plus `v0 <= join(v0, v1)`.
    Inflationary,
    /// `meet`: as above, plus `meet(v0, v1) <= v0`.
    Deflationary,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Semilattice, Preset::Inflationary, Preset::Deflationary];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Semilattice => "semilattice",
            Preset::Inflationary => "inflationary",
            Preset::Deflationary => "deflationary",
        }
    }

    pub fn op_name(self) -> &'static str {
        match self {
            Preset::Semilattice => "plus",
            Preset::Inflationary => "join",
            Preset::Deflationary => "meet",
        }
    }

    pub fn from_name(name: &str) -> Option<Preset> {
        Preset::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn theory(self) -> Theory {
        let sig = Signature::new(vec![(self.op_name().to_string(), 2)]).unwrap();
        let mut ineqs = aci_laws(0);
        let (x, y) = (Term::Var(0), Term::Var(1));
        match self {
            Preset::Semilattice => {}
            Preset::Inflationary => ineqs.push((x.clone(), Term::app(0, vec![x, y]))),
            Preset::Deflationary => ineqs.push((Term::app(0, vec![x.clone(), y]), x)),
        }
        Theory::new(sig, ineqs).unwrap()
    }
}

/// Associativity, commutativity and idempotence of binary `op`, each as two
/// inequalities.
fn aci_laws(op: usize) -> Vec<(Term, Term)> {
    let (x, y, z) = (Term::Var(0), Term::Var(1), Term::Var(2));
    let f = |a: Term, b: Term| Term::app(op, vec![a, b]);
    let eqs = vec![
        (f(f(x.clone(), y.clone()), z.clone()), f(x.clone(), f(y.clone(), z))),
        (f(x.clone(), y.clone()), f(y, x.clone())),
        (f(x.clone(), x.clone()), x),
    ];
    eqs.into_iter()
        .flat_map(|(l, r)| [(l.clone(), r.clone()), (r, l)])
        .collect()
}

/// A signature with inequalities `lhs <= rhs` between variable terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub sig: Signature,
    pub ineqs: Vec<(Term, Term)>,
}

impl Theory {
    pub fn new(sig: Signature, ineqs: Vec<(Term, Term)>) -> Result<Theory> {
        for (l, r) in &ineqs {
            l.check_arity(&sig)?;
            r.check_arity(&sig)?;
            if contains_gen(l) || contains_gen(r) {
                return Err(Error::InvalidTheory("laws may only mention variables".into()));
            }
        }
        Ok(Theory { sig, ineqs })
    }

    /// The preset this theory is, up to renaming its single operation.
    pub fn preset(&self) -> Option<Preset> {
        if self.sig.ops.len() != 1 || self.sig.arity(0) != 2 {
            return None;
        }
        let mine: BTreeSet<&(Term, Term)> = self.ineqs.iter().collect();
        Preset::ALL.into_iter().find(|p| {
            let t = p.theory();
            let theirs: BTreeSet<&(Term, Term)> = t.ineqs.iter().collect();
            mine == theirs
        })
    }

    pub fn render_ineq(&self, k: usize) -> String {
        let (l, r) = &self.ineqs[k];
        format!("{} <= {}", l.render(&self.sig, &[]), r.render(&self.sig, &[]))
    }
}

fn contains_gen(t: &Term) -> bool {
    match t {
        Term::Gen(_) => true,
        Term::Var(_) => false,
        Term::App(_, args) => args.iter().any(contains_gen),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_detect_themselves() {
        for p in Preset::ALL {
            assert_eq!(p.theory().preset(), Some(p));
            assert_eq!(Preset::from_name(p.name()), Some(p));
        }
        let mut t = Preset::Inflationary.theory();
        t.ineqs.pop();
        assert_eq!(t.preset(), Some(Preset::Semilattice));
        t.ineqs.pop();
        assert_eq!(t.preset(), None);
    }

    #[test]
    fn var_depths_and_height() {
        let t = Term::app(0, vec![Term::app(0, vec![Term::Var(0), Term::Var(1)]), Term::Var(0)]);
        let mut d = Vec::new();
        t.var_depths(&mut d);
        assert_eq!(d, vec![Some(2), Some(2)]);
        assert_eq!(t.height(), 2);
        assert_eq!(t.var_count(), 2);
    }

    #[test]
    fn rejects_ground_laws() {
        let sig = Signature::new(vec![("f".into(), 1)]).unwrap();
        let e = Theory::new(sig.clone(), vec![(Term::Gen(0), Term::Var(0))]);
        assert!(e.is_err());
        let e = Theory::new(sig, vec![(Term::app(0, vec![]), Term::Var(0))]);
        assert!(e.is_err());
    }
}
