//! JSON forms of posets, spaces, convergence classes, theories,
//! presentations and powerdomain carriers.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Signature, Term, Theory};
use crate::convergence::ConvergenceClass;
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::powerdomain::{convex_powerspace, lower_powerspace, upper_powerspace};
use crate::presentation::DcpoPresentation;
use crate::subset::Subset;
use crate::topology::FiniteSpace;

pub const SCHEMA: &str = "powerdomain-lab/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    /// Pairs `[x, y]` meaning `x <= y`; closure is implied.
    #[serde(default)]
    pub le: Vec<(String, String)>,
}

impl PosetJson {
    pub fn build(&self) -> Result<FinitePoset> {
        FinitePoset::from_relation(&self.elements, &self.le)
    }

    /// Covering pairs only.
    pub fn from_poset(p: &FinitePoset) -> PosetJson {
        PosetJson {
            elements: p.labels().to_vec(),
            le: p
                .covers()
                .into_iter()
                .map(|(i, j)| (p.label(i).to_string(), p.label(j).to_string()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

impl SpaceJson {
    pub fn build(&self) -> Result<FiniteSpace> {
        let n = self.points.len();
        let idx = |l: &String| {
            self.points
                .iter()
                .position(|p| p == l)
                .ok_or_else(|| Error::UnknownLabel(l.clone()))
        };
        let opens = self
            .opens
            .iter()
            .map(|u| Ok(Subset::from_indices(n, u.iter().map(idx).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<Vec<_>>>()?;
        FiniteSpace::new(self.points.clone(), opens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(rename = "D")]
    pub d: Vec<String>,
    pub x: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub poset: PosetJson,
    pub pairs: Vec<PairJson>,
}

impl ClassJson {
    /// The class with exactly the listed pairs.
    pub fn build(&self) -> Result<ConvergenceClass> {
        let p = self.poset.build()?;
        let pairs = self
            .pairs
            .iter()
            .map(|pr| Ok((p.subset_of_labels(&pr.d)?, p.index_of(&pr.x)?)))
            .collect::<Result<Vec<_>>>()?;
        ConvergenceClass::new(p, pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IneqJson {
    pub le: (Value, Value),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoryJson {
    pub ops: Vec<(String, usize)>,
    #[serde(default)]
    pub ineqs: Vec<IneqJson>,
    /// Equalities, each read as two inequalities.
    #[serde(default)]
    pub eqs: Vec<(Value, Value)>,
}

/// `"v3"` is a variable, `"c"` a constant, `["f", t1, ..]` an application.
fn parse_term(sig: &Signature, v: &Value) -> Result<Term> {
    let bad = || Error::InvalidTheory(format!("cannot read term {v}"));
    match v {
        Value::String(s) => {
            if let Some(k) = s.strip_prefix('v').and_then(|k| k.parse::<usize>().ok()) {
                return Ok(Term::Var(k));
            }
            match sig.op_index(s) {
                Some(op) if sig.arity(op) == 0 => Ok(Term::App(op, Vec::new())),
                _ => Err(bad()),
            }
        }
        Value::Array(items) => {
            let (head, args) = items.split_first().ok_or_else(bad)?;
            let name = head.as_str().ok_or_else(bad)?;
            let op = sig.op_index(name).ok_or_else(bad)?;
            let args = args.iter().map(|a| parse_term(sig, a)).collect::<Result<Vec<_>>>()?;
            if args.len() != sig.arity(op) {
                return Err(Error::InvalidTheory(format!("{name} expects {} arguments", sig.arity(op))));
            }
            Ok(Term::App(op, args))
        }
        _ => Err(bad()),
    }
}

fn render_term(sig: &Signature, t: &Term) -> Value {
    match t {
        Term::Var(k) => Value::String(format!("v{k}")),
        Term::Gen(g) => Value::String(format!("g{g}")),
        Term::App(op, args) if args.is_empty() => Value::String(sig.name(*op).to_string()),
        Term::App(op, args) => {
            let mut items = vec![Value::String(sig.name(*op).to_string())];
            items.extend(args.iter().map(|a| render_term(sig, a)));
            Value::Array(items)
        }
    }
}

impl TheoryJson {
    pub fn build(&self) -> Result<Theory> {
        let sig = Signature::new(self.ops.clone())?;
        let mut ineqs = Vec::new();
        for i in &self.ineqs {
            ineqs.push((parse_term(&sig, &i.le.0)?, parse_term(&sig, &i.le.1)?));
        }
        for (l, r) in &self.eqs {
            let (l, r) = (parse_term(&sig, l)?, parse_term(&sig, r)?);
            ineqs.push((l.clone(), r.clone()));
            ineqs.push((r, l));
        }
        Theory::new(sig, ineqs)
    }

    pub fn from_theory(t: &Theory) -> TheoryJson {
        TheoryJson {
            ops: t.sig.ops.clone(),
            ineqs: t
                .ineqs
                .iter()
                .map(|(l, r)| IneqJson {
                    le: (render_term(&t.sig, l), render_term(&t.sig, r)),
                })
                .collect(),
            eqs: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub a: String,
    #[serde(rename = "U")]
    pub u: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub gens: Vec<String>,
    #[serde(default)]
    pub lesssim: Vec<(String, String)>,
    #[serde(default)]
    pub covers: Vec<CoverJson>,
}

impl PresentationJson {
    pub fn build(&self) -> Result<DcpoPresentation> {
        let covers: Vec<(String, Vec<String>)> = self.covers.iter().map(|c| (c.a.clone(), c.u.clone())).collect();
        DcpoPresentation::new(&self.gens, &self.lesssim, &covers)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerKind {
    Lower,
    Upper,
    Convex,
}

impl PowerKind {
    pub fn name(self) -> &'static str {
        match self {
            PowerKind::Lower => "lower",
            PowerKind::Upper => "upper",
            PowerKind::Convex => "convex",
        }
    }
}

/// A powerdomain carrier: each element as the sorted labels of its set
/// (the lens for the convex kind), and the order as covering pairs of
/// element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrierJson {
    pub schema: String,
    pub kind: PowerKind,
    pub base: PosetJson,
    pub elements: Vec<Vec<String>>,
    pub covers: Vec<(usize, usize)>,
}

fn sorted_labels(p: &FinitePoset, s: &Subset) -> Vec<String> {
    let mut v = p.labels_of(s);
    v.sort();
    v
}

/// The carrier of `kind` over `p` in its JSON form, plus its order.
pub fn carrier_json(p: &FinitePoset, kind: PowerKind) -> Result<(CarrierJson, FinitePoset)> {
    let (sets, poset): (Vec<Subset>, FinitePoset) = match kind {
        PowerKind::Lower => {
            let c = lower_powerspace(p)?.carrier;
            (c.elements, c.poset)
        }
        PowerKind::Upper => {
            let c = upper_powerspace(p)?.carrier;
            (c.elements, c.poset)
        }
        PowerKind::Convex => {
            let c = convex_powerspace(p)?.carrier;
            (c.elements.iter().map(|(d, u)| d.intersection(u)).collect(), c.poset)
        }
    };
    let json = CarrierJson {
        schema: SCHEMA.to_string(),
        kind,
        base: PosetJson::from_poset(p),
        elements: sets.iter().map(|s| sorted_labels(p, s)).collect(),
        covers: poset.covers(),
    };
    Ok((json, poset))
}

/// Recomputes a carrier file from its base and reports the first
/// difference.
pub fn carrier_file_witness(c: &CarrierJson) -> Result<Option<String>> {
    if c.schema != SCHEMA {
        return Ok(Some(format!("schema {:?}, expected {SCHEMA:?}", c.schema)));
    }
    let p = c.base.build()?;
    let (want, _) = carrier_json(&p, c.kind)?;
    if want.elements.len() != c.elements.len() {
        return Ok(Some(format!(
            "{} elements listed, {} expected",
            c.elements.len(),
            want.elements.len()
        )));
    }
    for (i, (got, exp)) in c.elements.iter().zip(&want.elements).enumerate() {
        if got != exp {
            return Ok(Some(format!("element {i} is {got:?}, expected {exp:?}")));
        }
    }
    let mut got = c.covers.clone();
    got.sort();
    let mut exp = want.covers.clone();
    exp.sort();
    if got != exp {
        let extra: Vec<_> = got.iter().filter(|x| !exp.contains(x)).collect();
        let missing: Vec<_> = exp.iter().filter(|x| !got.contains(x)).collect();
        return Ok(Some(format!("cover pairs differ: extra {extra:?}, missing {missing:?}")));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Preset;

    #[test]
    fn poset_round_trip() {
        let j: PosetJson = serde_json::from_str(r#"{"elements":["a","b","c"],"le":[["a","b"],["b","c"]]}"#).unwrap();
        let p = j.build().unwrap();
        assert!(p.le(0, 2));
        assert_eq!(PosetJson::from_poset(&p).build().unwrap(), p);
    }

    #[test]
    fn theory_round_trip() {
        for preset in Preset::ALL {
            let t = preset.theory();
            let back = TheoryJson::from_theory(&t).build().unwrap();
            assert_eq!(back, t);
        }
        let j: TheoryJson =
            serde_json::from_str(r#"{"ops":[["join",2]],"ineqs":[{"le":["v0",["join","v0","v1"]]}]}"#).unwrap();
        assert_eq!(j.build().unwrap().ineqs.len(), 1);
    }

    #[test]
    fn tampered_carrier_is_caught() {
        let (mut c, _) = carrier_json(&FinitePoset::chain(2), PowerKind::Convex).unwrap();
        assert!(carrier_file_witness(&c).unwrap().is_none());
        c.covers.pop();
        assert!(carrier_file_witness(&c).unwrap().is_some());
    }

    #[test]
    fn space_json() {
        let j: SpaceJson = serde_json::from_str(r#"{"points":["0","1"],"opens":[["1"]]}"#).unwrap();
        let s = j.build().unwrap();
        assert_eq!(s.opens().len(), 3);
    }
}
