//! Audit suites over a set of posets, collected into one JSON report.
//!
//! Reports are deterministic: units run through [`Exec::map`], which keeps
//! input order, and wall times are only recorded when asked for.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::{free_algebra, verify_universal_property, Preset, PresetModels, DEFAULT_SCHEDULE, DEFAULT_UNIVERSE_GUARD};
use crate::convergence::{indu_audit, indu_family, limit_continuity_check, ConvergenceClass};
use crate::error::{check_power, Result};
use crate::exec::Exec;
use crate::json::{carrier_file_witness, CarrierJson, SCHEMA};
use crate::order::{corpus, corpus_of_size, poset_isomorphic, FinitePoset, DEFAULT_MAP_GUARD};
use crate::powerdomain::{
    convex_powerspace, corrupted_lower, free_matches, fk_audit, lower_powerspace, representation_audit,
    upper_powerspace, way_below_q_audit,
};
use crate::presentation::{presentation_suite, verify_free_generation, Candidate, DcpoPresentation};
use crate::report::{Check, Status};
use crate::subset::all_subsets;
use crate::topology::{alexandrov_of, d_completion, gamma_iso_check, FiniteSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Representations,
    Universal,
    Free,
    Dcompletion,
    Indu,
    Presentations,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Representations,
        Suite::Universal,
        Suite::Free,
        Suite::Dcompletion,
        Suite::Indu,
        Suite::Presentations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Representations => "representations",
            Suite::Universal => "universal",
            Suite::Free => "free",
            Suite::Dcompletion => "dcompletion",
            Suite::Indu => "indu",
            Suite::Presentations => "presentations",
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedPoset {
    pub name: String,
    pub poset: FinitePoset,
}

/// A corpus entry that is not a plain poset.
#[derive(Clone, Debug)]
pub enum ExtraInput {
    Carrier { name: String, json: CarrierJson },
    /// A file that could not be read as any known schema.
    Broken { name: String, error: String },
}

/// The generated corpus, named `n<size>-<index>`.
pub fn named_corpus(max_n: usize) -> Vec<NamedPoset> {
    (1..=max_n)
        .flat_map(|n| {
            corpus_of_size(n)
                .into_iter()
                .enumerate()
                .map(move |(k, poset)| NamedPoset {
                    name: format!("n{n}-{k:02}"),
                    poset,
                })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub suites: Vec<Suite>,
    /// Posets larger than this are left out.
    pub max_n: usize,
    /// Largest carrier of the theory models used as targets.
    pub model_max_n: usize,
    /// Largest poset checked against the models.
    pub universal_max_n: usize,
    pub presets: Vec<Preset>,
    pub seed: u64,
    pub indu_per_poset: usize,
    /// Largest carrier of the spaces used as limit-continuity targets.
    pub continuity_target_n: usize,
    pub bridge_instances: usize,
    pub threads: Option<usize>,
    #[serde(skip)]
    pub timing: bool,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suites: Suite::ALL.to_vec(),
            max_n: 4,
            model_max_n: 3,
            universal_max_n: 3,
            presets: Preset::ALL.to_vec(),
            seed: 0,
            indu_per_poset: 3,
            continuity_target_n: 3,
            bridge_instances: 20,
            threads: None,
            timing: false,
            exec: Exec::Parallel,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(name: &str, checks: Vec<Check>) -> SuiteReport {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        SuiteReport {
            name: name.to_string(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
            wall_ms: None,
            checks,
        }
    }
}

/// A deliberately broken input and how it was classified.
#[derive(Clone, Debug, Serialize)]
pub struct Control {
    pub name: String,
    pub expected: Status,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Control {
    pub fn as_expected(&self) -> bool {
        self.expected == self.status
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub controls_as_expected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: String,
    pub tool: String,
    pub config: VerifyConfig,
    pub inputs: Vec<String>,
    pub suites: Vec<SuiteReport>,
    pub controls: Vec<Control>,
    pub summary: Summary,
}

impl VerifyReport {
    /// No failed check and every control behaved as expected.
    pub fn ok(&self) -> bool {
        self.summary.failed == 0 && self.summary.controls_as_expected
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{prefix}:{}", c.name);
            c
        })
        .collect()
}

fn guarded(name: String, r: Result<Vec<Check>>) -> Vec<Check> {
    match r {
        Ok(cs) => cs,
        Err(e) => vec![Check::from_result(name, Err(e))],
    }
}

/// Runs the configured suites over `posets` (those within `max_n`), plus a
/// check per extra input file.
pub fn run(cfg: &VerifyConfig, posets: &[NamedPoset], extra: &[ExtraInput]) -> VerifyReport {
    let posets: Vec<NamedPoset> = posets.iter().filter(|p| p.poset.n() <= cfg.max_n).cloned().collect();
    let mut inputs: Vec<String> = posets.iter().map(|p| p.name.clone()).collect();
    let mut suites = Vec::new();
    let mut controls = Vec::new();

    if !extra.is_empty() {
        let checks = extra
            .iter()
            .map(|e| match e {
                ExtraInput::Carrier { name, json } => {
                    inputs.push(name.clone());
                    Check::from_result(format!("{name}:carrier-file"), carrier_file_witness(json))
                }
                ExtraInput::Broken { name, error } => {
                    inputs.push(name.clone());
                    Check::fail(format!("{name}:readable"), error.clone())
                }
            })
            .collect();
        suites.push(SuiteReport::new("inputs", checks));
    }

    let models = if cfg.suites.iter().any(|s| matches!(s, Suite::Representations | Suite::Universal)) {
        Some(PresetModels::enumerate(cfg.model_max_n, DEFAULT_MAP_GUARD))
    } else {
        None
    };

    for &suite in &cfg.suites {
        let start = Instant::now();
        let checks = match suite {
            Suite::Representations => representations(cfg, &posets, models.as_ref().unwrap()),
            Suite::Universal => {
                let (checks, control) = universal(cfg, &posets, models.as_ref().unwrap());
                controls.extend(control);
                checks
            }
            Suite::Free => free(cfg, &posets),
            Suite::Dcompletion => dcompletion(cfg, &posets),
            Suite::Indu => indu(cfg, &posets),
            Suite::Presentations => presentations(cfg, &posets),
        };
        let mut r = SuiteReport::new(suite.name(), checks);
        if cfg.timing {
            r.wall_ms = Some(start.elapsed().as_millis());
        }
        suites.push(r);
    }

    let summary = Summary {
        passed: suites.iter().map(|s| s.passed).sum(),
        failed: suites.iter().map(|s| s.failed).sum(),
        skipped: suites.iter().map(|s| s.skipped).sum(),
        controls_as_expected: controls.iter().all(Control::as_expected),
    };
    VerifyReport {
        schema: SCHEMA.to_string(),
        tool: format!("pdlab {}", env!("CARGO_PKG_VERSION")),
        config: cfg.clone(),
        inputs,
        suites,
        controls,
        summary,
    }
}

fn representations(cfg: &VerifyConfig, posets: &[NamedPoset], models: &Result<PresetModels>) -> Vec<Check> {
    cfg.exec
        .map(posets, |np| {
            let p = &np.poset;
            let full = p.n() <= cfg.universal_max_n;
            guarded(format!("{}:audit", np.name), (|| {
                let models = match (full, models) {
                    (true, Ok(m)) => Some(m),
                    (true, Err(e)) => return Err(e.clone()),
                    (false, _) => None,
                };
                let mut cs = representation_audit(p, models)?.checks;
                cs.extend(fk_audit(p, true)?);
                cs.push(way_below_q_audit(p)?);
                Ok(prefixed(&np.name, cs))
            })())
        })
        .into_iter()
        .flatten()
        .collect()
}

fn universal(cfg: &VerifyConfig, posets: &[NamedPoset], models: &Result<PresetModels>) -> (Vec<Check>, Vec<Control>) {
    let models = match models {
        Ok(m) => m,
        Err(e) => return (vec![Check::from_result("models", Err(e.clone()))], Vec::new()),
    };
    let units: Vec<(&NamedPoset, Preset)> = posets
        .iter()
        .filter(|np| np.poset.n() <= cfg.universal_max_n)
        .flat_map(|np| cfg.presets.iter().map(move |&t| (np, t)))
        .collect();
    let checks = cfg.exec.map(&units, |(np, preset)| {
        Check::from_result(format!("{}:{}", np.name, preset.name()), (|| {
            let fa = free_algebra(&preset.theory(), &np.poset, &DEFAULT_SCHEDULE, DEFAULT_UNIVERSE_GUARD)?;
            let Some(alg) = fa.algebra.as_ref().filter(|_| fa.exact) else {
                return Ok(Some(format!("engine not exact at depth {}", fa.depth)));
            };
            let r = verify_universal_property(alg, &np.poset, models.get(*preset), DEFAULT_MAP_GUARD)?;
            Ok(r.violations.first().map(|v| {
                let t = &models.get(*preset)[v.target];
                format!("target {:?} f={:?}: {} extensions", t.carrier, v.f, v.extensions.len())
            }))
        })())
    });
    (checks, vec![negative_control(models)])
}

/// `Γ(2-chain)` with intersection in place of union, against the
/// inflationary models: must be reported as a failure.
pub fn negative_control(models: &PresetModels) -> Control {
    let p = FinitePoset::chain(2);
    let check = Check::from_result("corrupted-lower", (|| {
        let bad = corrupted_lower(&p)?;
        let r = verify_universal_property(&bad, &p, models.get(Preset::Inflationary), DEFAULT_MAP_GUARD)?;
        let targets = models.get(Preset::Inflationary);
        Ok(r.violations.first().map(|v| {
            format!(
                "target {:?} with join {:?}, f={:?}: {} extensions ({} violations in {} maps)",
                targets[v.target].carrier,
                targets[v.target].tables[0],
                v.f,
                v.extensions.len(),
                r.violations.len(),
                r.maps_checked
            )
        }))
    })());
    Control {
        name: check.name,
        expected: Status::Fail,
        status: check.status,
        witness: check.witness,
    }
}

fn free(cfg: &VerifyConfig, posets: &[NamedPoset]) -> Vec<Check> {
    let units: Vec<(&NamedPoset, Preset)> = posets
        .iter()
        .flat_map(|np| cfg.presets.iter().map(move |&t| (np, t)))
        .collect();
    cfg.exec.map(&units, |(np, preset)| {
        Check::from_result(format!("{}:{}", np.name, preset.name()), (|| {
            let p = &np.poset;
            let closed_form = match preset {
                Preset::Semilattice => convex_powerspace(p)?.algebra,
                Preset::Inflationary => lower_powerspace(p)?.algebra,
                Preset::Deflationary => upper_powerspace(p)?.algebra,
            };
            free_matches(p, *preset, &closed_form)
        })())
    })
}

fn dcompletion(cfg: &VerifyConfig, posets: &[NamedPoset]) -> Vec<Check> {
    cfg.exec.map(posets, |np| {
        Check::from_result(format!("{}:d-completion", np.name), (|| {
            let x = alexandrov_of(&np.poset);
            if !x.is_directed_space()? {
                return Ok(Some("Scott space is not a directed space".into()));
            }
            let dc = d_completion(&x)?;
            if poset_isomorphic(&dc.carrier.poset, &x.specialization_order()).is_none() {
                return Ok(Some("completion carrier differs from the specialization order".into()));
            }
            if !dc.eta_is_embedding() {
                return Ok(Some("η is not an embedding".into()));
            }
            if !gamma_iso_check(&x)? {
                return Ok(Some("closed-set lattices differ".into()));
            }
            Ok(None)
        })())
    })
}

fn continuity_targets(max_n: usize) -> Vec<FiniteSpace> {
    corpus(max_n).iter().map(alexandrov_of).collect()
}

fn indu_class_check(c: &ConvergenceClass, targets: &[FiniteSpace]) -> Result<Option<String>> {
    let r = indu_audit(c)?;
    if !r.passed() {
        return Ok(Some(r.witness.clone().unwrap_or_else(|| format!("{r:?}"))));
    }
    let n = c.n();
    for y in targets {
        check_power("limit-continuity maps", y.n(), n, DEFAULT_MAP_GUARD)?;
        for code in 0..y.n().pow(n as u32) {
            let mut table = vec![0; n];
            let mut k = code;
            for slot in table.iter_mut().rev() {
                *slot = k % y.n();
                k /= y.n();
            }
            if !limit_continuity_check(c, y, &table)?.agrees() {
                return Ok(Some(format!("limit continuity disagrees for map {table:?} into {:?}", y.labels())));
            }
        }
    }
    Ok(None)
}

fn indu(cfg: &VerifyConfig, posets: &[NamedPoset]) -> Vec<Check> {
    let ps: Vec<FinitePoset> = posets.iter().map(|np| np.poset.clone()).collect();
    let family = indu_family(cfg.seed, &ps, cfg.indu_per_poset);
    let names: Vec<String> = posets
        .iter()
        .flat_map(|np| (0..cfg.indu_per_poset).map(move |k| format!("{}:class{k}", np.name)))
        .collect();
    let targets = continuity_targets(cfg.continuity_target_n);
    let units: Vec<(&String, &ConvergenceClass)> = names.iter().zip(&family).collect();
    cfg.exec.map(&units, |(name, c)| {
        Check::from_result(format!("{name}:indu+limit-continuity"), indu_class_check(c, &targets))
    })
}

/// `⟨S⟩` is the least enumerated C-ideal above `S`, for every `S`, and `⟨-⟩`
/// is a closure operator.
fn least_ideal_witness(pres: &DcpoPresentation) -> Result<Option<String>> {
    let ideals = pres.all_c_ideals()?;
    let subsets: Vec<_> = all_subsets(pres.n()).collect();
    for s in &subsets {
        let least = pres.least_c_ideal(s);
        let min = ideals
            .elements
            .iter()
            .filter(|i| s.is_subset(i))
            .find(|i| ideals.elements.iter().filter(|j| s.is_subset(j)).all(|j| i.is_subset(j)));
        if min != Some(&least) {
            return Ok(Some(format!("⟨{:?}⟩ is not the least C-ideal above it", pres.labels_of(s))));
        }
        if !s.is_subset(&least) || pres.least_c_ideal(&least) != least {
            return Ok(Some(format!("⟨-⟩ is not extensive and idempotent at {:?}", pres.labels_of(s))));
        }
    }
    for s in &subsets {
        for t in subsets.iter().filter(|t| s.is_subset(t)) {
            if !pres.least_c_ideal(s).is_subset(&pres.least_c_ideal(t)) {
                return Ok(Some(format!(
                    "⟨-⟩ is not monotone at {:?} ⊆ {:?}",
                    pres.labels_of(s),
                    pres.labels_of(t)
                )));
            }
        }
    }
    Ok(None)
}

fn presentations(cfg: &VerifyConfig, posets: &[NamedPoset]) -> Vec<Check> {
    let targets: Vec<FinitePoset> = posets
        .iter()
        .filter(|np| np.poset.n() <= cfg.universal_max_n)
        .map(|np| np.poset.clone())
        .collect();
    let suite = presentation_suite();
    let mut checks: Vec<Check> = cfg
        .exec
        .map(&suite, |np| {
            let least = Check::from_result(format!("{}:least-c-ideal", np.name), least_ideal_witness(&np.pres));
            let free = Check::from_result(format!("{}:free-generation", np.name), (|| {
                let rs = verify_free_generation(&np.pres, &targets)?;
                let chosen = rs
                    .iter()
                    .find(|r| r.candidate == Candidate::PrincipalClosure)
                    .expect("every candidate is tried");
                Ok((!chosen.passed()).then(|| chosen.violations.join("; ")))
            })());
            vec![least, free]
        })
        .into_iter()
        .flatten()
        .collect();

    // Convergence classes read as presentations: C-ideals are the closed sets.
    let ps: Vec<FinitePoset> = posets.iter().map(|np| np.poset.clone()).collect();
    let family = indu_family(cfg.seed, &ps, cfg.indu_per_poset);
    let bridged: Vec<&ConvergenceClass> = family.iter().take(cfg.bridge_instances).collect();
    checks.extend(cfg.exec.map(&bridged, |c| {
        let name = format!("bridge:{:?}:{}pairs", c.base, c.pairs.len());
        Check::from_result(name, (|| {
            let pres = DcpoPresentation::from_class(c);
            let ideals = pres.all_c_ideals()?;
            let mut got = ideals.elements.clone();
            got.sort();
            let closed = c.generated_topology()?.closed_sets();
            Ok((got != closed).then(|| format!("{} C-ideals vs {} closed sets", got.len(), closed.len())))
        })())
    }));
    checks
}
