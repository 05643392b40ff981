use std::collections::{BTreeSet, HashMap};

use pdlab::algebra::{
    algebra_isomorphism, enumerate_theory_models, free_algebra, precongruence_closure, term_universe,
    verify_universal_property, OrderedAlgebra, Preset, Term, Theory, DEFAULT_SCHEDULE, DEFAULT_UNIVERSE_GUARD,
};
use pdlab::order::{corpus, DEFAULT_MAP_GUARD};
use pdlab::powerdomain::{convex_powerspace, corrupted_lower, lower_powerspace, upper_powerspace};
use pdlab::FinitePoset;

/// Ground terms over one binary op, by height, built recursively.
fn terms_up_to(gens: usize, depth: usize) -> Vec<Term> {
    let mut all: Vec<Term> = (0..gens).map(Term::Gen).collect();
    for _ in 0..depth {
        let mut next = all.clone();
        for a in &all {
            for b in &all {
                let t = Term::App(0, vec![a.clone(), b.clone()]);
                if !next.contains(&t) {
                    next.push(t);
                }
            }
        }
        all = next;
    }
    all
}

#[test]
fn term_counts() {
    let sig = Preset::Semilattice.theory().sig;
    let two = FinitePoset::antichain(2);
    for d in 0..=2 {
        let ours = term_universe(&sig, &two, d, DEFAULT_UNIVERSE_GUARD).unwrap();
        let oracle: BTreeSet<Term> = terms_up_to(2, d).into_iter().collect();
        assert_eq!(ours.iter().cloned().collect::<BTreeSet<_>>(), oracle);
    }
    assert_eq!(term_universe(&sig, &two, 2, DEFAULT_UNIVERSE_GUARD).unwrap().len(), 38);
    assert!(term_universe(&sig, &two, 5, 1000).unwrap_err().is_guard());
}

fn height(t: &Term) -> usize {
    match t {
        Term::App(_, args) => 1 + args.iter().map(height).max().unwrap_or(0),
        _ => 0,
    }
}

fn substitute(t: &Term, s: &[Term]) -> Term {
    match t {
        Term::Var(k) => s[*k].clone(),
        Term::App(op, args) => Term::App(*op, args.iter().map(|a| substitute(a, s)).collect()),
        g => g.clone(),
    }
}

/// Depth of the deepest occurrence of each variable.
fn var_depth(t: &Term, d: usize, out: &mut HashMap<usize, usize>) {
    match t {
        Term::Var(k) => {
            let e = out.entry(*k).or_insert(0);
            *e = (*e).max(d);
        }
        Term::App(_, args) => args.iter().for_each(|a| var_depth(a, d + 1, out)),
        Term::Gen(_) => {}
    }
}

/// The least preorder on the depth-`d` universe containing the generator
/// order and every law instance inside the universe, closed under
/// compatibility and transitivity: plain fixpoint iteration on a matrix.
fn naive_closure(theory: &Theory, gens: &FinitePoset, universe: &[Term]) -> Vec<Vec<bool>> {
    let n = universe.len();
    let d = universe.iter().map(height).max().unwrap();
    let idx: HashMap<&Term, usize> = universe.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        le[i][i] = true;
    }
    for a in 0..gens.n() {
        for b in 0..gens.n() {
            if gens.le(a, b) {
                le[idx[&Term::Gen(a)]][idx[&Term::Gen(b)]] = true;
            }
        }
    }
    for (l, r) in &theory.ineqs {
        let mut depths = HashMap::new();
        var_depth(l, 0, &mut depths);
        var_depth(r, 0, &mut depths);
        let vars = depths.keys().max().map_or(0, |m| m + 1);
        let pools: Vec<Vec<&Term>> = (0..vars)
            .map(|k| {
                let room = d.saturating_sub(*depths.get(&k).unwrap_or(&0));
                universe.iter().filter(|t| height(t) <= room).collect()
            })
            .collect();
        let mut choice = vec![0; vars];
        loop {
            let s: Vec<Term> = (0..vars).map(|k| pools[k][choice[k]].clone()).collect();
            if let (Some(&i), Some(&j)) = (idx.get(&substitute(l, &s)), idx.get(&substitute(r, &s))) {
                le[i][j] = true;
            }
            let mut k = 0;
            while k < vars && choice[k] + 1 == pools[k].len() {
                choice[k] = 0;
                k += 1;
            }
            if k == vars {
                break;
            }
            choice[k] += 1;
        }
    }
    let apps: Vec<(usize, usize, usize)> = universe
        .iter()
        .enumerate()
        .filter_map(|(i, t)| match t {
            Term::App(_, args) => Some((i, idx[&args[0]], idx[&args[1]])),
            _ => None,
        })
        .collect();
    loop {
        let mut changed = false;
        for &(i, a1, a2) in &apps {
            for &(j, b1, b2) in &apps {
                if !le[i][j] && le[a1][b1] && le[a2][b2] {
                    le[i][j] = true;
                    changed = true;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] && !le[i][j] {
                            le[i][j] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return le;
        }
    }
}

#[test]
fn precongruence_matches_naive_fixpoint() {
    let chain = FinitePoset::chain(2);
    let anti = FinitePoset::antichain(2);
    for preset in Preset::ALL {
        let th = preset.theory();
        for (gens, depth) in [(&chain, 1), (&chain, 2), (&anti, 2), (&FinitePoset::chain(1), 3)] {
            let universe = term_universe(&th.sig, gens, depth, DEFAULT_UNIVERSE_GUARD).unwrap();
            let pre = precongruence_closure(&th, gens, &universe).unwrap();
            let naive = naive_closure(&th, gens, &universe);
            for i in 0..universe.len() {
                for j in 0..universe.len() {
                    assert_eq!(pre.le(i, j), naive[i][j], "{} {:?} <= {:?}", preset.name(), universe[i], universe[j]);
                }
            }
        }
    }
}

fn closed_form(preset: Preset, p: &FinitePoset) -> OrderedAlgebra {
    match preset {
        Preset::Semilattice => convex_powerspace(p).unwrap().algebra,
        Preset::Inflationary => lower_powerspace(p).unwrap().algebra,
        Preset::Deflationary => upper_powerspace(p).unwrap().algebra,
    }
}

#[test]
fn free_algebras_small_cases() {
    let anti = FinitePoset::antichain(2);
    for preset in Preset::ALL {
        let fa = free_algebra(&preset.theory(), &anti, &DEFAULT_SCHEDULE, DEFAULT_UNIVERSE_GUARD).unwrap();
        assert!(fa.exact);
        let alg = fa.algebra.unwrap();
        assert_eq!(alg.n(), 3, "{}", preset.name());
        assert!(algebra_isomorphism(&alg, &closed_form(preset, &anti)).is_some());
    }
    // Over the 2-chain the semilattice free object is the 3-chain {a} < {a,b} < {b}.
    let fa = free_algebra(&Preset::Semilattice.theory(), &FinitePoset::chain(2), &DEFAULT_SCHEDULE, DEFAULT_UNIVERSE_GUARD).unwrap();
    let alg = fa.algebra.unwrap();
    assert_eq!(alg.carrier.comparable_pairs(), 3);
    let unit = alg.unit.clone().unwrap();
    let join = alg.apply(0, &[unit[0], unit[1]]);
    assert!(alg.carrier.lt(unit[0], join) && alg.carrier.lt(join, unit[1]));
}

fn all_tables(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let cells = n * n;
    (0..n.pow(cells as u32)).map(move |code| (0..cells).map(|c| code / n.pow(c as u32) % n).collect())
}

fn satisfies(p: &FinitePoset, t: &[usize], preset: Preset) -> bool {
    let n = p.n();
    let f = |a: usize, b: usize| t[a * n + b];
    let mono = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !p.le(a, b) || (p.le(f(a, c), f(b, c)) && p.le(f(c, a), f(c, b))))));
    let aci = (0..n).all(|a| {
        f(a, a) == a && (0..n).all(|b| f(a, b) == f(b, a) && (0..n).all(|c| f(f(a, b), c) == f(a, f(b, c))))
    });
    let extra = (0..n).all(|a| {
        (0..n).all(|b| match preset {
            Preset::Semilattice => true,
            Preset::Inflationary => p.le(a, f(a, b)),
            Preset::Deflationary => p.le(f(a, b), a),
        })
    });
    mono && aci && extra
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

#[test]
fn model_counts_by_table_scan() {
    for preset in Preset::ALL {
        for max_n in 1..=3 {
            let mut oracle = 0;
            for p in corpus(max_n) {
                let n = p.n();
                let autos: Vec<Vec<usize>> = permutations(n)
                    .into_iter()
                    .filter(|s| (0..n).all(|i| (0..n).all(|j| p.le(i, j) == p.le(s[i], s[j]))))
                    .collect();
                let mut seen = BTreeSet::new();
                for t in all_tables(n).filter(|t| satisfies(&p, t, preset)) {
                    let canon = autos
                        .iter()
                        .map(|s| {
                            let mut u = vec![0; n * n];
                            for a in 0..n {
                                for b in 0..n {
                                    u[s[a] * n + s[b]] = s[t[a * n + b]];
                                }
                            }
                            u
                        })
                        .min()
                        .unwrap();
                    seen.insert(canon);
                }
                oracle += seen.len();
            }
            let ours = enumerate_theory_models(&preset.theory(), max_n, DEFAULT_MAP_GUARD).unwrap();
            assert_eq!(ours.len(), oracle, "{} max_n={max_n}", preset.name());
        }
    }
}

/// Counts extensions of `f` by brute force over all tables `F -> B`.
fn extension_count(free: &OrderedAlgebra, b: &OrderedAlgebra, f: &[usize]) -> usize {
    let (n, m) = (free.n(), b.n());
    let unit = free.unit.as_ref().unwrap();
    (0..m.pow(n as u32))
        .map(|code| (0..n).map(|i| code / m.pow(i as u32) % m).collect::<Vec<_>>())
        .filter(|h| {
            unit.iter().zip(f).all(|(&u, &v)| h[u] == v)
                && (0..n).all(|x| (0..n).all(|y| {
                    (!free.carrier.le(x, y) || b.carrier.le(h[x], h[y]))
                        && h[free.apply(0, &[x, y])] == b.apply(0, &[h[x], h[y]])
                }))
        })
        .count()
}

#[test]
fn universal_property_by_brute_force() {
    for preset in Preset::ALL {
        let models = enumerate_theory_models(&preset.theory(), 3, DEFAULT_MAP_GUARD).unwrap();
        let gen_posets = if preset == Preset::Semilattice { corpus(2) } else { corpus(3) };
        for p in &gen_posets {
            let fa = free_algebra(&preset.theory(), p, &DEFAULT_SCHEDULE, DEFAULT_UNIVERSE_GUARD).unwrap();
            let free = fa.algebra.unwrap();
            for b in &models {
                let (n, m) = (p.n(), b.n());
                for code in 0..m.pow(n as u32) {
                    let f: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
                    if (0..n).all(|i| (0..n).all(|j| !p.le(i, j) || b.carrier.le(f[i], f[j]))) {
                        assert_eq!(extension_count(&free, b, &f), 1, "{} over {p:?}", preset.name());
                    }
                }
            }
            assert!(verify_universal_property(&free, p, &models, DEFAULT_MAP_GUARD).unwrap().passed());
        }
    }
}

#[test]
fn negative_control_fails_by_brute_force() {
    let p = FinitePoset::chain(2);
    let bad = corrupted_lower(&p).unwrap();
    let models = enumerate_theory_models(&Preset::Inflationary.theory(), 3, DEFAULT_MAP_GUARD).unwrap();
    let mut wrong = 0;
    for b in &models {
        let m = b.n();
        for f0 in 0..m {
            for f1 in 0..m {
                if b.carrier.le(f0, f1) && extension_count(&bad, b, &[f0, f1]) != 1 {
                    wrong += 1;
                }
            }
        }
    }
    let r = verify_universal_property(&bad, &p, &models, DEFAULT_MAP_GUARD).unwrap();
    assert!(wrong > 0);
    assert_eq!(r.violations.len(), wrong);
}
