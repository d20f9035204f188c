//! Acceptance criteria, one line per criterion. Runs as a plain binary so
//! the report is always printed; exits non-zero if any criterion fails.

mod common;

use biset_cover::connectivity::{augment, covers_set, k_connected_subgraph, opt_k, st_crossing_to_biset, st_image, AugmentInstance};
use biset_cover::crossing::{cover_crossing_gamma, cover_crossing_log, cover_crossing_regular};
use biset_cover::exact::{exact_opt, tau_lp, verify_cover, verify_dual, verify_semi_intersecting};
use biset_cover::generators::{
    gen_complete_costs, gen_crossing_family, gen_ell_connected_digraph, gen_intersecting_family, gen_regular_family,
    gen_semi_intersecting_family, gen_st_crossing_family,
};
use biset_cover::oracle::ExplicitFamily;
use biset_cover::primal_dual::{cover_intersecting, semi_intersecting_cover, PdResult};
use biset_cover::digraph::is_k_connected_arcs;
use biset_cover::{Biset, Edge, WeightedDigraph};
use common::*;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    check(start.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", start.elapsed()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for seed in 0..200u64 {
        let n = 3 + (seed % 4) as usize;
        let fam = gen_intersecting_family(n, seed, 2 + (seed % 4) as usize, 20).map_err(|e| e.to_string())?;
        check(fam.is_intersecting() && fam.len() <= 20, || format!("seed {seed}: generator broke its contract"))?;
        let g = gen_complete_costs(n, 1, 10, seed ^ 0xC0FFEE).unwrap();
        let r = cover_intersecting(&fam, &g).map_err(|e| format!("seed {seed}: {e}"))?;
        let ex = exact_opt(&fam, &g).unwrap();
        check(r.cost == ex.opt_integral && r.dual.value() == r.cost, || {
            format!("seed {seed}: pd {} opt {} dual {}", r.cost, ex.opt_integral, r.dual.value())
        })?;
        check(verify_cover(&fam, &g, &r.edges), || format!("seed {seed}: not a cover"))?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("200 intersecting families, cost = opt = dual value, {:.1?}", start.elapsed()))
}

/// The q-semi-intersecting corpus: half grown directly, half the small part
/// of a k-regular family.
fn semi_corpus() -> Vec<(ExplicitFamily, WeightedDigraph, usize)> {
    let mut out = Vec::new();
    for seed in 0..200u64 {
        let q = 1 + (seed % 3) as usize;
        let fam = if seed % 2 == 0 {
            let n = (2 * q + 2).max(4) + (seed / 2 % 2) as usize;
            gen_semi_intersecting_family(n, q, seed, 5 + (seed % 5) as usize).unwrap()
        } else {
            let k = 1 + (seed / 3 % 2) as usize;
            let n = k + 2 * q + (seed / 6 % 2) as usize;
            gen_regular_family(n, k, seed).unwrap().restrict_small(q)
        };
        let g = gen_complete_costs(fam.ground_set().n(), 1, 10, seed.wrapping_mul(31)).unwrap();
        out.push((fam, g, q));
    }
    out
}

fn residual_cores(fam: &ExplicitFamily, g: &WeightedDigraph, ids: &[usize]) -> Vec<(u64, u64)> {
    let arcs = pairs(g);
    let left: Vec<(u64, u64)> = fam
        .members()
        .iter()
        .map(from_biset)
        .filter(|&m| !ids.iter().any(|&i| edge_covers(arcs[i], m)))
        .collect();
    brute_minimal(&left)
}

fn criterion_2(corpus: &[(ExplicitFamily, WeightedDigraph, usize)], runs: &[PdResult]) -> Outcome {
    for (i, ((fam, g, q), r)) in corpus.iter().zip(runs).enumerate() {
        let n = g.n();
        check(verify_semi_intersecting(fam, *q), || format!("instance {i}: not {q}-semi-intersecting"))?;
        let nu = residual_cores(fam, g, &r.edges).len();
        check(nu <= n / (q + 1), || format!("instance {i}: ν = {nu} > {}", n / (q + 1)))?;
        if fam.is_empty() {
            continue;
        }
        let tau = tau_lp(fam, g).unwrap();
        check(r.cost <= tau, || format!("instance {i}: cost {} > τ {tau}", r.cost))?;
        let audit = verify_dual(fam, g, &r.dual, &r.edges, Some(&r.family_u), true).unwrap();
        check(audit.ok(), || format!("instance {i}: {audit:?}"))?;
    }
    Ok(format!("{} semi-intersecting instances, ν bound, c(J) <= τ, dual audit clean", corpus.len()))
}

fn criterion_3(corpus: &[(ExplicitFamily, WeightedDigraph, usize)], runs: &[PdResult]) -> Outcome {
    let (mut residual_seen, mut touching_seen) = (0, 0);
    for (i, ((fam, g, _), r)) in corpus.iter().zip(runs).enumerate() {
        let arcs = pairs(g);
        let covering = |ids: &[usize], m: (u64, u64)| -> Vec<usize> { ids.iter().copied().filter(|&e| edge_covers(arcs[e], m)).collect() };
        let u: Vec<(u64, u64)> = r.family_u.iter().map(from_biset).collect();
        for (a, x) in u.iter().enumerate() {
            for y in &u[a + 1..] {
                check(x.0 & y.0 == 0, || format!("instance {i}: U members intersect"))?;
            }
            check(covering(&r.edges, *x).len() == 1, || format!("instance {i}: |δ_J(U)| != 1"))?;
        }
        let cores = residual_cores(fam, g, &r.edges);
        residual_seen += cores.len();
        for &c in &cores {
            let touching: Vec<(u64, u64)> = u.iter().copied().filter(|x| x.0 & c.0 != 0).collect();
            touching_seen += touching.len();
            for x in &touching {
                let e_u = covering(&r.edges, *x);
                let meet = (x.0 & c.0, x.1 & c.1);
                check(covering(&r.edges, meet) == e_u, || format!("instance {i}: δ_J(C ∩ U) != {{e_U}}"))?;
                let others = cores.iter().filter(|&&d| d != c && d.0 & x.0 != 0).count();
                check(others == 0, || format!("instance {i}: U meets two residual cores"))?;
            }
            let b = touching.iter().fold(c, |acc, x| (acc.0 | x.0, acc.1 | x.1));
            check(covering(&r.phase1_edges, b).is_empty(), || format!("instance {i}: δ_F(B_C) non-empty"))?;
            check(!fam.members().iter().any(|m| from_biset(m) == b), || format!("instance {i}: B_C in the family"))?;
        }
    }
    check(residual_seen > 0 && touching_seen > 0, || "no residual core met U; the checks were vacuous".into())?;
    Ok(format!("{} instances, {residual_seen} residual cores, {touching_seen} core/U contacts, all structural checks hold", corpus.len()))
}

fn crossing_corpus() -> Vec<(ExplicitFamily, WeightedDigraph)> {
    (0..200u64)
        .map(|seed| {
            let n = 3 + (seed % 4) as usize;
            let fam = gen_crossing_family(n, seed, 2 + (seed % 3) as usize).unwrap();
            let g = gen_complete_costs(n, 1, 10, seed + 7_000).unwrap();
            (fam, g)
        })
        .collect()
}

fn criterion_4(corpus: &[(ExplicitFamily, WeightedDigraph)]) -> Outcome {
    for (i, (fam, g)) in corpus.iter().enumerate() {
        let r = cover_crossing_log(fam, g).map_err(|e| format!("instance {i}: {e}"))?;
        let tau = tau_lp(fam, g).unwrap();
        let nu = brute_minimal(&fam.members().iter().map(from_biset).collect::<Vec<_>>()).len();
        check(r.cost <= h(nu) * &tau, || format!("instance {i}: cost {} > H({nu}) τ, τ = {tau}", r.cost))?;
        check(verify_cover(fam, g, &r.edges), || format!("instance {i}: not a cover"))?;
        for (step, t) in r.trace.iter().enumerate() {
            check(t.nu_before == nu - step, || format!("instance {i}: ν not decreasing by one"))?;
            check(t.cost.clone() * int((nu - step) as i64) <= tau, || format!("instance {i}: step {step} over budget"))?;
        }
    }
    Ok(format!("{} crossing families, cost <= H(ν) τ, per-step budget held", corpus.len()))
}

fn criterion_5() -> Outcome {
    let mut runs = 0;
    for seed in 0..40u64 {
        let k = 1 + (seed % 2) as usize;
        let n = 5 + (seed / 2 % 4) as usize;
        let fam = gen_regular_family(n, k, seed).unwrap();
        let g = gen_complete_costs(n, 1, 10, seed + 11_000).unwrap();
        let tau = tau_lp(&fam, &g).unwrap();
        let r = cover_crossing_regular(&fam, &g, k).map_err(|e| format!("seed {seed}: regular: {e}"))?;
        check(verify_cover(&fam, &g, &r.edges), || format!("seed {seed}: regular output is not a cover"))?;
        let stated = stated_regular_ratio(n, k);
        check(r.cost <= &stated * &tau, || format!("seed {seed}: regular cost {} > {stated} τ, τ = {tau}", r.cost))?;

        // γ <= k: families with boundary k or k-1, both k-regular.
        let ell = k - (seed / 8 % 2) as usize;
        let fam = gen_regular_family(n, ell, seed + 1).unwrap();
        let tau = tau_lp(&fam, &g).unwrap();
        let r = cover_crossing_gamma(&fam, &g, k).map_err(|e| format!("seed {seed}: gamma: {e}"))?;
        check(verify_cover(&fam, &g, &r.edges), || format!("seed {seed}: gamma output is not a cover"))?;
        let stated = stated_regular_ratio(n, k) + stated_hitting_ratio(n, k);
        check(r.cost <= &stated * &tau, || format!("seed {seed}: gamma cost {} > {stated} τ", r.cost))?;
        runs += 2;
    }
    Ok(format!("{runs} runs on k-regular families (n 5..8, k 1..2), stated bounds held, covers verified"))
}

fn random_edges(n: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if a != b && state % 3 == 0 {
                out.push((a, b));
            }
        }
    }
    out
}

/// Members of `fam` containing core `c` and no other core.
fn branch(members: &[(u64, u64)], cores: &[(u64, u64)], c: (u64, u64)) -> Vec<(u64, u64)> {
    let contains = |big: (u64, u64), small: (u64, u64)| small.0 & !big.0 == 0 && small.1 & !big.1 == 0;
    members.iter().copied().filter(|&m| contains(m, c) && !cores.iter().any(|&d| d != c && contains(m, d))).collect()
}

fn family_of(n: usize, members: &[(u64, u64)]) -> ExplicitFamily {
    ExplicitFamily::new(n, members.iter().map(|&m| to_biset(m))).unwrap()
}

fn criterion_6(crossing: &[(ExplicitFamily, WeightedDigraph)], semi: &[(ExplicitFamily, WeightedDigraph, usize)]) -> Outcome {
    let mut checks = 0usize;
    for (i, (fam, _)) in crossing.iter().enumerate() {
        let n = fam.ground_set().n();
        let residual = fam.residual_family(&arcs(&random_edges(n, i as u64)));
        check(residual.is_crossing(), || format!("crossing {i}: residual family not crossing"))?;
        check(fam.co_family().is_crossing(), || format!("crossing {i}: co-family not crossing"))?;
        let members: Vec<(u64, u64)> = fam.members().iter().map(from_biset).collect();
        let cores = brute_minimal(&members);
        let branches: Vec<Vec<(u64, u64)>> = cores.iter().map(|&c| branch(&members, &cores, c)).collect();
        for (a, ba) in branches.iter().enumerate() {
            let co = family_of(n, ba).co_family();
            check(co.is_intersecting(), || format!("crossing {i}: co-family of a core branch not intersecting"))?;
            for x in ba {
                for y in ba {
                    let (bx, by) = (to_biset(*x), to_biset(*y));
                    if bx.crosses(&by, fam.ground_set()) {
                        let inside = |z: Biset| ba.contains(&from_biset(&z));
                        check(inside(bx.meet(&by)) && inside(bx.join(&by)), || format!("crossing {i}: branch not closed"))?;
                    }
                }
            }
            for bb in &branches[a + 1..] {
                for &x in ba {
                    for &y in bb {
                        check(!to_biset(x).crosses(&to_biset(y), fam.ground_set()), || format!("crossing {i}: branches cross"))?;
                        let shared = (0..n).any(|t| (0..n).any(|hd| t != hd && edge_covers((t, hd), x) && edge_covers((t, hd), y)));
                        check(!shared, || format!("crossing {i}: an edge covers two branches"))?;
                        checks += 1;
                    }
                }
            }
        }
    }
    // A corpus of arbitrary families for the equivalence in both directions.
    for seed in 0..200u64 {
        let n = 4;
        let all = proper_pairs(n);
        let pick: Vec<(u64, u64)> = all.iter().copied().enumerate().filter(|(j, _)| (seed.wrapping_mul(2654435761) >> (j % 60)) & 7 == 0).map(|(_, m)| m).take(6).collect();
        let fam = family_of(n, &pick);
        check(fam.is_crossing() == fam.co_family().is_crossing(), || format!("seed {seed}: co-family equivalence fails"))?;
    }
    for (i, (fam, _, _)) in semi.iter().enumerate() {
        if fam.intersection_closed_violation().is_none() {
            let cores = brute_minimal(&fam.members().iter().map(from_biset).collect::<Vec<_>>());
            for (a, x) in cores.iter().enumerate() {
                for y in &cores[a + 1..] {
                    check(x.0 & y.0 == 0, || format!("semi {i}: cores intersect"))?;
                }
            }
        }
    }
    for seed in 0..40u64 {
        let k = 1 + (seed % 2) as usize;
        let n = 5 + (seed / 2 % 4) as usize;
        let fam = gen_regular_family(n, k, seed + 500).unwrap();
        for q in 1..=(n - k) / 2 {
            check(verify_semi_intersecting(&fam.restrict_small(q), q), || format!("seed {seed}: small part not {q}-semi-intersecting"))?;
        }
    }
    // Covering facts over all bisets and edges on four nodes.
    let n = 4;
    let mut every = Vec::new();
    for outer in 0..=full(n) {
        let mut inner = outer;
        loop {
            every.push((inner, outer));
            if inner == 0 {
                break;
            }
            inner = (inner - 1) & outer;
        }
    }
    for &x in &every {
        for &y in &every {
            let meet = (x.0 & y.0, x.1 & y.1);
            let join = (x.0 | y.0, x.1 | y.1);
            for t in 0..n {
                for hd in (0..n).filter(|&hd| hd != t) {
                    let e = (t, hd);
                    let (cx, cy, cm, cj) = (edge_covers(e, x), edge_covers(e, y), edge_covers(e, meet), edge_covers(e, join));
                    check(!(cm || cj) || cx || cy, || "covering fact (i) fails".into())?;
                    check(!(cj && x.0 >> t & 1 == 1) || cx, || "covering fact (ii) fails".into())?;
                    check(!(cm && cj) || (cx && cy), || "covering fact (iii) fails".into())?;
                }
            }
        }
    }
    Ok(format!("residual/co-family closure, branch lemmas ({checks} cross-branch pairs), disjoint cores, small parts semi-intersecting, covering facts on n = 4"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let c4: Vec<Edge> = (0..4).map(|i| Edge::new(i, (i + 1) % 4)).collect();
    let unit = WeightedDigraph::complete(4, |_, _| int(1)).unwrap();
    let inst = AugmentInstance::new(c4.clone(), unit.clone(), 1).unwrap();
    let r = augment(&inst).map_err(|e| e.to_string())?;
    let mut all: Vec<(usize, usize)> = c4.iter().map(|e| (e.tail, e.head)).collect();
    all.extend(r.edges.iter().map(|&i| (unit.edge(i).tail, unit.edge(i).head)));
    let tight: Vec<(u64, u64)> = brute_tight(4, &c4.iter().map(|e| (e.tail, e.head)).collect::<Vec<_>>(), 1);
    let brute_opt = brute_min_cover(&tight, &pairs(&unit), unit.costs()).unwrap();
    check(brute_opt == int(4), || format!("brute-force optimum is {brute_opt}"))?;
    check(r.cost == int(4) && brute_k_connected(4, &all, 2), || format!("C4: cost {}", r.cost))?;
    check(is_k_connected_arcs(4, &arcs(&all), 2), || "C4: library connectivity check disagrees".into())?;

    for seed in 0..50u64 {
        let ell = 1 + (seed % 2) as usize;
        let n = 4 + (seed / 2 % 3) as usize;
        let base = gen_ell_connected_digraph(n, ell, seed).unwrap();
        let base_pairs = pairs(&base);
        let cand = gen_complete_costs(n, 1, 10, seed + 99).unwrap();
        let inst = AugmentInstance::new(base.edges().to_vec(), cand.clone(), ell).unwrap();
        let r = augment(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        let mut all = base_pairs.clone();
        all.extend(r.edges.iter().map(|&i| (cand.edge(i).tail, cand.edge(i).head)));
        check(brute_k_connected(n, &all, ell + 1), || format!("seed {seed}: result not {}-connected", ell + 1))?;
        check(is_k_connected_arcs(n, &arcs(&all), ell + 1), || format!("seed {seed}: library connectivity check disagrees"))?;
        let tight = family_of(n, &brute_tight(n, &base_pairs, ell));
        let tau = if tight.is_empty() { int(0) } else { tau_lp(&tight, &cand).unwrap() };
        check(r.cost <= &r.ratio_bound * &tau, || format!("seed {seed}: cost {} > {} τ, τ = {tau}", r.cost, r.ratio_bound))?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("C4 cost 4 = brute-force optimum, 50 seeded augmentations connected and within bound, {:.1?}", start.elapsed()))
}

fn criterion_8() -> Outcome {
    let k4 = WeightedDigraph::complete(4, |_, _| int(1)).unwrap();
    let r = k_connected_subgraph(&k4, 2).map_err(|e| e.to_string())?;
    let chosen: Vec<(usize, usize)> = r.edges.iter().map(|&i| (k4.edge(i).tail, k4.edge(i).head)).collect();
    check(brute_k_connected(4, &chosen, 2), || "ladder output not 2-connected".into())?;
    let opt = opt_k(&k4, 2).unwrap();
    // Each node needs two units of out-degree, and x = 2/3 everywhere is feasible.
    check(opt == int(8), || format!("opt_k = {opt}, expected 8"))?;
    check(r.cost <= &r.harmonic_factor * &opt, || format!("cost {} > {} opt_k", r.cost, r.harmonic_factor))?;
    check(is_k_connected_arcs(4, &arcs(&chosen), 2), || "library connectivity check disagrees".into())?;
    Ok(format!("K4, k = 2: cost {} <= H(2) α opt_k = {} x 8, 2-connected", r.cost, r.harmonic_factor))
}

fn criterion_9() -> Outcome {
    let mut edges_checked = 0;
    for seed in 0..50u64 {
        let n = 3 + (seed % 4) as usize;
        let (sets, s, t) = gen_st_crossing_family(n, seed, 2 + (seed % 3) as usize).unwrap();
        let image = st_crossing_to_biset(n, &sets, s, t).map_err(|e| e.to_string())?;
        check(image.is_crossing(), || format!("seed {seed}: image not crossing"))?;
        for &x in &sets {
            let xb = st_image(x, s, t);
            for a in s.iter() {
                for b in t.iter() {
                    let set_cover = x.contains(a) && !x.contains(b);
                    check(set_cover == Edge::new(a, b).covers(&xb), || format!("seed {seed}: edge {a}->{b} disagrees"))?;
                    check(covers_set(Edge::new(a, b), x) == set_cover, || "covers_set disagrees".into())?;
                    edges_checked += 1;
                }
            }
        }
    }
    Ok(format!("50 (S,T)-crossing families, images crossing, {edges_checked} edge/set pairs agree"))
}

fn main() {
    let timed = |name: &'static str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let out = f();
        eprintln!("criterion {name} ran in {:.1?}", start.elapsed());
        (name, out)
    };
    let crossing = crossing_corpus();
    let semi = semi_corpus();
    let runs: Vec<PdResult> = semi.iter().map(|(f, g, _)| semi_intersecting_cover(f, g).unwrap()).collect();
    let results: Vec<(&str, Outcome)> = vec![
        timed("1 primal-dual exactness", &criterion_1),
        timed("2 semi-intersecting residual and cost", &|| criterion_2(&semi, &runs)),
        timed("3 primal-dual structure", &|| criterion_3(&semi, &runs)),
        timed("4 greedy core ratio", &|| criterion_4(&crossing)),
        timed("5 regular and gamma bounds", &criterion_5),
        timed("6 structural lemmas", &|| criterion_6(&crossing, &semi)),
        timed("7 augmentation", &criterion_7),
        timed("8 k-connected ladder", &criterion_8),
        timed("9 (S,T) reduction", &criterion_9),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

