//! Runs the nine acceptance criteria against the built binary and prints one
//! line per criterion. Exits non-zero if any fails.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn pdlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdlab")).args(args).output().unwrap()
}

fn report(args: &[&str]) -> Result<Value, String> {
    let o = pdlab(args);
    if !o.status.success() {
        return Err(format!("exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr).trim()));
    }
    serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())
}

fn suite<'a>(r: &'a Value, name: &str) -> Result<&'a Value, String> {
    r["suites"]
        .as_array()
        .and_then(|s| s.iter().find(|s| s["name"] == name))
        .ok_or_else(|| format!("no {name} suite"))
}

fn checks(s: &Value) -> &[Value] {
    s["checks"].as_array().map(Vec::as_slice).unwrap_or(&[])
}

/// Fails unless every check in `s` whose name contains one of `parts`
/// passes, and at least `min` such checks exist.
fn all_pass(s: &Value, parts: &[&str], min: usize) -> Result<usize, String> {
    let sel: Vec<&Value> = checks(s)
        .iter()
        .filter(|c| parts.is_empty() || parts.iter().any(|p| c["name"].as_str().unwrap_or("").contains(p)))
        .collect();
    if sel.len() < min {
        return Err(format!("{} checks, expected at least {min}", sel.len()));
    }
    if let Some(c) = sel.iter().find(|c| c["status"] != "PASS") {
        return Err(format!("{} is {}: {}", c["name"], c["status"], c["witness"]));
    }
    Ok(sel.len())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    permutations(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..n).map(move |k| {
                let mut q = p.clone();
                q.insert(k, n - 1);
                q
            })
        })
        .collect()
}

/// Smallest adjacency bitmask of `<` over all relabellings.
fn canonical(n: usize, lt: &[Vec<bool>], perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| {
            let mut m = 0u64;
            for i in 0..n {
                for j in 0..n {
                    if lt[p[i]][p[j]] {
                        m |= 1 << (i * n + j);
                    }
                }
            }
            m
        })
        .min()
        .unwrap()
}

/// Isomorphism classes of `n`-element posets: all strict relations on
/// labelled points, filtered for transitivity, up to relabelling.
fn brute_force_classes(n: usize) -> BTreeSet<u64> {
    let perms = permutations(n);
    let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = BTreeSet::new();
    'next: for bits in 0u64..(1 << off.len()) {
        let mut r = vec![vec![false; n]; n];
        for (k, &(i, j)) in off.iter().enumerate() {
            r[i][j] = bits >> k & 1 == 1;
        }
        for i in 0..n {
            for j in 0..n {
                if r[i][j] && r[j][i] {
                    continue 'next;
                }
                for k in 0..n {
                    if r[i][j] && r[j][k] && !r[i][k] {
                        continue 'next;
                    }
                }
            }
        }
        out.insert(canonical(n, &r, &perms));
    }
    out
}

/// Strict order of a poset file, with `le` closed transitively.
fn read_order(path: &Path) -> Result<(usize, Vec<Vec<bool>>), String> {
    let v: Value = serde_json::from_str(&fs::read_to_string(path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let elems: Vec<&str> = v["elements"].as_array().unwrap().iter().map(|e| e.as_str().unwrap()).collect();
    let n = elems.len();
    let mut r = vec![vec![false; n]; n];
    for pair in v["le"].as_array().unwrap() {
        let a = elems.iter().position(|e| *e == pair[0]).unwrap();
        let b = elems.iter().position(|e| *e == pair[1]).unwrap();
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    Ok((n, r))
}

fn corpus_integrity(dir: &Path) -> Result<String, String> {
    let o = pdlab(&["poset", "corpus", "--max-n", "5", "--out", dir.to_str().unwrap()]);
    if !o.status.success() {
        return Err("corpus command failed".into());
    }
    let mut counts = Vec::new();
    for (n, expected) in [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)] {
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for e in fs::read_dir(dir).unwrap() {
            let path = e.unwrap().path();
            if path.file_name().unwrap().to_string_lossy().starts_with(&format!("n{n}-")) {
                let (m, r) = read_order(&path)?;
                if m != n {
                    return Err(format!("{} has {m} elements", path.display()));
                }
                if !seen.insert(canonical(n, &r, &perms)) {
                    return Err(format!("{} duplicates a class", path.display()));
                }
            }
        }
        let oracle = brute_force_classes(n);
        if seen.len() != expected || oracle.len() != expected || seen != oracle {
            return Err(format!("n={n}: {} files, oracle {} classes, expected {expected}", seen.len(), oracle.len()));
        }
        counts.push(seen.len().to_string());
    }
    Ok(format!("classes {}", counts.join(", ")))
}

fn indu() -> Result<String, String> {
    let r = report(&["verify", "indu", "--max-n", "4"])?;
    if r["config"]["continuity_target_n"] != 3 {
        return Err("continuity targets are not the n <= 3 spaces".into());
    }
    let k = all_pass(suite(&r, "indu")?, &[], 50)?;
    Ok(format!("{k} admissible classes, all maps into corpus spaces n <= 3"))
}

fn representations(r: &Value) -> Result<String, String> {
    let s = suite(r, "representations")?;
    let k = all_pass(s, &["lower=gamma", "upper=q", "convex=lenses"], 3 * 24)?;
    Ok(format!("{k} representation checks over 24 posets"))
}

fn fk(r: &Value) -> Result<String, String> {
    let s = suite(r, "representations")?;
    let k = all_pass(s, &["fk-", "equal-trans", "upper-equal", "way-below"], 24 * 7)?;
    Ok(format!("{k} ℱ_K checks over 24 posets"))
}

fn free() -> Result<String, String> {
    let r = report(&["verify", "free", "--max-n", "4"])?;
    let k = all_pass(suite(&r, "free")?, &[], 24 * 3)?;
    Ok(format!("{k} (poset, preset) pairs exact and isomorphic"))
}

fn universal() -> Result<String, String> {
    let r = report(&["verify", "universal", "--max-n", "3"])?;
    let k = all_pass(suite(&r, "universal")?, &[], 8 * 3)?;
    let c = &r["controls"][0];
    if c["status"] != "FAIL" || c["witness"].as_str().is_none() {
        return Err(format!("negative control not reported as a failure: {c}"));
    }
    Ok(format!("{k} free objects pass; control fails with witness"))
}

fn dcompletion() -> Result<String, String> {
    let r = report(&["verify", "dcompletion", "--max-n", "4"])?;
    let k = all_pass(suite(&r, "dcompletion")?, &[], 24)?;
    Ok(format!("{k} spaces"))
}

fn presentations() -> Result<String, String> {
    let r = report(&["verify", "presentations", "--max-n", "3"])?;
    let s = suite(&r, "presentations")?;
    let a = all_pass(s, &["least-c-ideal"], 10)?;
    let b = all_pass(s, &["free-generation"], 10)?;
    let c = all_pass(s, &["bridge:"], 20)?;
    Ok(format!("{a} least-ideal, {b} free-generation, {c} bridge checks"))
}

fn determinism(dir: &Path) -> Result<String, String> {
    let args = ["verify", "all", "--corpus", dir.to_str().unwrap(), "--max-n", "3"];
    let (a, b) = (pdlab(&args), pdlab(&args));
    if !a.status.success() {
        return Err(format!("verify all exited {:?}", a.status.code()));
    }
    if a.stdout != b.stdout {
        return Err("reports differ".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let dir = std::env::temp_dir().join(format!("pdlab-acceptance-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();

    let mut failed = 0;
    let mut line = |k: usize, what: &str, limit: Option<u64>, start: Instant, r: Result<String, String>| {
        let t = start.elapsed();
        let over = limit.is_some_and(|l| t > Duration::from_secs(l));
        let ok = r.is_ok() && !over;
        if !ok {
            failed += 1;
        }
        let detail = match (&r, over) {
            (Ok(d), false) => d.clone(),
            (Ok(d), true) => format!("{d}; over time limit"),
            (Err(e), _) => e.clone(),
        };
        let limit = limit.map_or("no limit".to_string(), |l| format!("{l}s"));
        println!(
            "criterion {k} {what}: {} ({:.2}s / {limit}) {detail}",
            if ok { "PASS" } else { "FAIL" },
            t.as_secs_f64()
        );
    };

    let t = Instant::now();
    line(1, "corpus integrity", Some(60), t, corpus_integrity(&dir));
    let t = Instant::now();
    line(2, "INDU suite", Some(120), t, indu());
    // Criteria 3 and 7 share one run; both are charged its full time.
    let t = Instant::now();
    let reps = report(&["verify", "representations", "--max-n", "4"]);
    let shared = t.elapsed();
    line(3, "representation audit", Some(60), t, reps.clone().and_then(|r| representations(&r)));
    let t = Instant::now();
    line(4, "free-algebra equivalence", Some(300), t, free());
    let t = Instant::now();
    line(5, "universal property", Some(300), t, universal());
    let t = Instant::now();
    line(6, "D-completion identity", Some(30), t, dcompletion());
    let t7 = Instant::now() - shared;
    line(7, "ℱ_K machinery", Some(120), t7, reps.and_then(|r| fk(&r)));
    let t = Instant::now();
    line(8, "presentations", Some(120), t, presentations());
    let t = Instant::now();
    line(9, "determinism", None, t, determinism(&dir));

    let _ = fs::remove_dir_all(&dir);
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
