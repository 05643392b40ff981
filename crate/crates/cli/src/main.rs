use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pdlab::algebra::{free_algebra, Preset, Theory, DEFAULT_UNIVERSE_GUARD};
use pdlab::dot::hasse_dot;
use pdlab::error::Error;
use pdlab::exec::{configure_threads, Exec};
use pdlab::json::{carrier_json, CarrierJson, PosetJson, PowerKind, TheoryJson, SCHEMA};
use pdlab::order::FinitePoset;
use pdlab::report::Status;
use pdlab::verify::{self, ExtraInput, NamedPoset, Suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "pdlab", version, about = "Finite-scale domain theory workbench")]
struct Cli {
    /// Worker threads for the audit suites.
    #[arg(long, global = true, env = "PDLAB_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load, draw or enumerate posets.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Build a powerdomain carrier over a poset.
    Power {
        kind: Kind,
        poset: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the free-algebra engine.
    Free {
        /// A preset name or a theory JSON file.
        theory: String,
        /// Generator poset; a single point when omitted.
        #[arg(long)]
        gens: Option<PathBuf>,
        /// Largest saturation depth to try.
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
        #[arg(long, default_value_t = DEFAULT_UNIVERSE_GUARD)]
        guard: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run audit suites and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum PosetCmd {
    Check { file: PathBuf },
    Hasse {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write one file per isomorphism class, sizes 1 to max-n.
    Corpus {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Lower,
    Upper,
    Convex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Representations,
    Universal,
    Free,
    Dcompletion,
    Indu,
    Presentations,
}

#[derive(Args)]
struct VerifyArgs {
    suite: SuiteArg,
    /// Directory of poset and carrier files; the generated corpus otherwise.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Individual poset files, used instead of the corpus.
    #[arg(long)]
    poset: Vec<PathBuf>,
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    /// Restrict to one preset theory.
    #[arg(long)]
    theory: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record wall time per suite. Makes reports differ between runs.
    #[arg(long)]
    timing: bool,
    /// Run every unit on the calling thread.
    #[arg(long)]
    sequential: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    /// One row per suite, then every failed or skipped check.
    Table,
}

fn report_table(r: &verify::VerifyReport) -> String {
    let mut s = format!("{:<16} {:>6} {:>6} {:>7}\n", "suite", "pass", "fail", "skipped");
    for suite in &r.suites {
        s += &format!("{:<16} {:>6} {:>6} {:>7}\n", suite.name, suite.passed, suite.failed, suite.skipped);
    }
    for suite in &r.suites {
        for c in suite.checks.iter().filter(|c| c.status != Status::Pass) {
            s += &format!("{:?} {}: {}\n", c.status, c.name, c.witness.as_deref().unwrap_or(""));
        }
    }
    for c in &r.controls {
        s += &format!("control {}: expected {:?}, got {:?}\n", c.name, c.expected, c.status);
    }
    s
}

fn read_poset(path: &Path) -> anyhow::Result<FinitePoset> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let j: PosetJson = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(j.build()?)
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Poset files become audit inputs; files with a `schema` field are read as
/// carriers; anything else is reported as unreadable.
fn load_corpus(dir: &Path) -> anyhow::Result<(Vec<NamedPoset>, Vec<ExtraInput>)> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
    paths.sort();
    let mut posets = Vec::new();
    let mut extra = Vec::new();
    for path in paths {
        let name = stem(&path);
        let text = fs::read_to_string(&path)?;
        let value: serde_json::Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(e) => {
                extra.push(ExtraInput::Broken { name, error: e.to_string() });
                continue;
            }
        };
        if value.get("schema").is_some() {
            match serde_json::from_value::<CarrierJson>(value) {
                Ok(json) => extra.push(ExtraInput::Carrier { name, json }),
                Err(e) => extra.push(ExtraInput::Broken { name, error: e.to_string() }),
            }
            continue;
        }
        match serde_json::from_value::<PosetJson>(value).map_err(|e| e.to_string()).and_then(|j| j.build().map_err(|e| e.to_string())) {
            Ok(poset) => posets.push(NamedPoset { name, poset }),
            Err(error) => extra.push(ExtraInput::Broken { name, error }),
        }
    }
    Ok((posets, extra))
}

#[derive(Serialize)]
struct FreeOutput {
    schema: &'static str,
    gens: PosetJson,
    exact: bool,
    stabilized: bool,
    depth: usize,
    node_count: usize,
    carrier: Option<PosetJson>,
    ops: Vec<(String, usize)>,
    tables: Option<Vec<Vec<usize>>>,
    unit: Option<Vec<usize>>,
}

fn cmd_free(theory: &str, gens: Option<&Path>, max_depth: usize, guard: usize) -> anyhow::Result<String> {
    let theory: Theory = match Preset::from_name(theory) {
        Some(p) => p.theory(),
        None => {
            let text = fs::read_to_string(theory).with_context(|| format!("{theory:?} is neither a preset nor a readable file"))?;
            serde_json::from_str::<TheoryJson>(&text)?.build()?
        }
    };
    let gens = match gens {
        Some(p) => read_poset(p)?,
        None => FinitePoset::chain(1),
    };
    let schedule: Vec<usize> = (1..=max_depth.max(1)).collect();
    let fa = free_algebra(&theory, &gens, &schedule, guard)?;
    let alg = fa.algebra.as_ref();
    to_json(&FreeOutput {
        schema: SCHEMA,
        gens: PosetJson::from_poset(&gens),
        exact: fa.exact,
        stabilized: fa.stabilized,
        depth: fa.depth,
        node_count: fa.node_count,
        carrier: alg.map(|a| PosetJson::from_poset(&a.carrier)),
        ops: theory.sig.ops.clone(),
        tables: alg.map(|a| a.tables.clone()),
        unit: alg.and_then(|a| a.unit.clone()),
    })
}

fn cmd_verify(a: &VerifyArgs, threads: Option<usize>) -> anyhow::Result<ExitCode> {
    let suites = match a.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Representations => vec![Suite::Representations],
        SuiteArg::Universal => vec![Suite::Universal],
        SuiteArg::Free => vec![Suite::Free],
        SuiteArg::Dcompletion => vec![Suite::Dcompletion],
        SuiteArg::Indu => vec![Suite::Indu],
        SuiteArg::Presentations => vec![Suite::Presentations],
    };
    let presets = match &a.theory {
        None => Preset::ALL.to_vec(),
        Some(t) => vec![Preset::from_name(t).with_context(|| {
            format!("unknown preset {t:?}; expected semilattice, inflationary or deflationary")
        })?],
    };
    let (posets, extra) = if !a.poset.is_empty() {
        let posets = a
            .poset
            .iter()
            .map(|p| Ok(NamedPoset { name: stem(p), poset: read_poset(p)? }))
            .collect::<anyhow::Result<Vec<_>>>()?;
        (posets, Vec::new())
    } else if let Some(dir) = &a.corpus {
        load_corpus(dir)?
    } else {
        (verify::named_corpus(a.max_n), Vec::new())
    };
    let cfg = VerifyConfig {
        suites,
        max_n: a.max_n,
        presets,
        seed: a.seed,
        threads,
        timing: a.timing,
        exec: if a.sequential { Exec::Sequential } else { Exec::Parallel },
        ..VerifyConfig::default()
    };
    let report = verify::run(&cfg, &posets, &extra);
    let text = match a.format {
        ReportFormat::Json => to_json(&report)?,
        ReportFormat::Table => report_table(&report),
    };
    emit(a.out.as_deref(), &text)?;
    let s = &report.summary;
    eprintln!(
        "{} passed, {} failed, {} skipped; controls {}",
        s.passed,
        s.failed,
        s.skipped,
        if s.controls_as_expected { "as expected" } else { "NOT as expected" }
    );
    Ok(if !report.ok() {
        ExitCode::from(1)
    } else if s.skipped > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(t) = cli.threads {
        configure_threads(t);
    }
    match cli.cmd {
        Cmd::Poset(PosetCmd::Check { file }) => {
            let p = read_poset(&file)?;
            let c = p.covers().len();
            println!("ok: {} element{}, {} cover pair{}", p.n(), plural(p.n()), c, plural(c));
        }
        Cmd::Poset(PosetCmd::Hasse { file, out }) => {
            let p = read_poset(&file)?;
            emit(out.as_deref(), &hasse_dot(&stem(&file), &p))?;
        }
        Cmd::Poset(PosetCmd::Corpus { max_n, out }) => {
            if max_n == 0 {
                bail!("--max-n must be positive");
            }
            fs::create_dir_all(&out)?;
            let named = verify::named_corpus(max_n);
            for np in &named {
                fs::write(out.join(format!("{}.json", np.name)), to_json(&PosetJson::from_poset(&np.poset))?)?;
            }
            for n in 1..=max_n {
                let k = named.iter().filter(|np| np.poset.n() == n).count();
                println!("n={n}: {k} classes");
            }
        }
        Cmd::Power { kind, poset, format, out } => {
            let p = read_poset(&poset)?;
            let kind = match kind {
                Kind::Lower => PowerKind::Lower,
                Kind::Upper => PowerKind::Upper,
                Kind::Convex => PowerKind::Convex,
            };
            let (json, order) = carrier_json(&p, kind)?;
            let text = match format {
                Format::Json => to_json(&json)?,
                Format::Dot => hasse_dot(&format!("{}-{}", kind.name(), stem(&poset)), &order),
            };
            emit(out.as_deref(), &text)?;
        }
        Cmd::Free { theory, gens, max_depth, guard, out } => {
            emit(out.as_deref(), &cmd_free(&theory, gens.as_deref(), max_depth, guard)?)?;
        }
        Cmd::Verify(a) => return cmd_verify(&a, cli.threads),
    }
    Ok(ExitCode::SUCCESS)
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(err) if err.is_guard() => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
