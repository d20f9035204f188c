//! Approximation algorithms for covering crossing biset-families.
//!
//! * [`cover_crossing_log`]: greedy core elimination, ratio `H(ν(F))`.
//! * [`cover_crossing_regular`]: small inner parts on both sides, for
//!   k-regular families with uniform boundary size `k`.
//! * [`cover_crossing_gamma`]: the same small-side phase, then a hitting set
//!   of the remaining large cores, for `γ(F) <= k`.
//! * [`decompose_baseline`]: splitting into `2(γ+1)` intersecting families.
//!
//! Edge indices are shared between a graph and its reverse, so partial covers
//! computed on co-families combine with plain set union.

use crate::biset::{Biset, Edge};
use crate::digraph::WeightedDigraph;
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;
use crate::oracle::{CoFamily, FamilyOracle, InAnchored, Masked, SmallInner};
use crate::primal_dual::{cover_branch_via_co, cover_intersecting, semi_intersecting_cover, uncross_witness};
use crate::rational::{self, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// One step of an algorithm run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub phase: String,
    /// The core whose branch was covered, when the step covers one branch.
    pub core: Option<Biset>,
    pub edges: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub cost: Rational,
    /// Number of relevant cores before and after the step.
    pub nu_before: usize,
    pub nu_after: usize,
}

/// Edge set chosen by an algorithm together with its a-priori guarantee.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    /// Sorted edge indices into the input graph.
    pub edges: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub cost: Rational,
    /// The algorithm guarantees `cost <= ratio_bound * τ(F)`.
    #[serde(with = "rational::serde_str")]
    pub ratio_bound: Rational,
    pub trace: Vec<TraceStep>,
}

impl CoverResult {
    fn new(g: &WeightedDigraph, edges: impl IntoIterator<Item = usize>, ratio_bound: Rational, trace: Vec<TraceStep>) -> Self {
        let edges: Vec<usize> = edges.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        CoverResult { cost: g.cost(&edges), edges, ratio_bound, trace }
    }
}

/// Iterations of the halving loop when cores start with inner size 1 and
/// may not exceed `q`: sizes `1, 2, 4, ...` stay at most `q`.
pub fn halving_iterations(q: usize) -> usize {
    if q == 0 {
        0
    } else {
        rational::floor_log2(q) + 1
    }
}

/// Ratio of the semi-intersecting strategy: one LP value for the first phase
/// plus `H` of the residual core bound `floor(n / (q + 1))`.
pub fn semi_bound(n: usize, q: usize) -> Rational {
    rational::one() + rational::harmonic(n / (q + 1))
}

/// `q = floor((n - k) / 2)`, the largest inner size of the small side.
pub fn small_side(n: usize, k: usize) -> Result<usize> {
    if k + 2 > n {
        return Err(Error::usage(format!("k = {k} leaves no proper biset with boundary k on {n} nodes")));
    }
    Ok((n - k) / 2)
}

/// Guarantee of [`cover_crossing_regular`]: both sides, each the better of
/// halving and semi+log.
pub fn regular_bound(n: usize, k: usize) -> Result<Rational> {
    let q = small_side(n, k)?;
    let halving = rational::int(halving_iterations(q) as i64);
    Ok(rational::int(2) * semi_bound(n, q).min(halving))
}

/// `(n/q) H(floor(n/q))`: greedy hitting set size over cores with inner
/// parts of size at least `q` on both sides.
pub fn hitting_bound(n: usize, q: usize) -> Rational {
    rational::ratio(n as i64, q as i64) * rational::harmonic(n / q)
}

/// Guarantee of [`cover_crossing_gamma`].
pub fn gamma_bound(n: usize, k: usize) -> Result<Rational> {
    let q = small_side(n, k)?;
    Ok(regular_bound(n, k)? + hitting_bound(n, q + 1))
}

fn with_edges(base: &[usize], extra: &[usize]) -> Vec<usize> {
    let mut all = base.to_vec();
    all.extend_from_slice(extra);
    all
}

fn small_cores(oracle: &dyn FamilyOracle, residual: &[Edge], limit: Option<usize>) -> Result<Vec<Biset>> {
    let cores = oracle.cores(residual)?;
    Ok(match limit {
        Some(q) => cores.into_iter().filter(|c| c.inner().len() <= q).collect(),
        None => cores,
    })
}

/// Repeatedly adds the cheapest optimal branch cover among the (small) cores
/// of `F^J`, starting from `J = start`. Returns the edges added.
fn greedy_branches(
    oracle: &dyn FamilyOracle,
    g: &WeightedDigraph,
    start: &[usize],
    limit: Option<usize>,
    phase: &str,
    trace: &mut Vec<TraceStep>,
) -> Result<Vec<usize>> {
    let mut added: Vec<usize> = Vec::new();
    let mut cores = small_cores(oracle, &g.arcs(&with_edges(start, &added)), limit)?;
    while !cores.is_empty() {
        let residual = g.arcs(&with_edges(start, &added));
        let mut best: Option<(Biset, Vec<usize>, Rational)> = None;
        for core in &cores {
            let branch = cover_branch_via_co(oracle, core, &residual, g)?;
            if best.as_ref().map_or(true, |(_, _, c)| branch.cost < *c) {
                best = Some((*core, branch.edges, branch.cost));
            }
        }
        let (core, edges, cost) = best.expect("cores is non-empty");
        added.extend_from_slice(&edges);
        let next = small_cores(oracle, &g.arcs(&with_edges(start, &added)), limit)?;
        if next.len() >= cores.len() {
            return Err(Error::invariant(format!("covering the branch of {core} did not remove a core")));
        }
        trace.push(TraceStep { phase: phase.to_string(), core: Some(core), edges, cost, nu_before: cores.len(), nu_after: next.len() });
        cores = next;
    }
    Ok(added)
}

/// Greedy core-branch cover of a crossing family with ratio `H(ν(F))`. Each iteration
/// covers the cheapest branch `F^J(C)` exactly, which removes one core.
pub fn cover_crossing_log(oracle: &dyn FamilyOracle, g: &WeightedDigraph) -> Result<CoverResult> {
    check_ground(oracle, g)?;
    let nu = oracle.cores(&[])?.len();
    let mut trace = Vec::new();
    let edges = greedy_branches(oracle, g, &[], None, "log", &mut trace)?;
    Ok(CoverResult::new(g, edges, rational::harmonic(nu), trace))
}

/// Optimal covers of the branches of all current cores (or only of those with
/// inner size at most `limit`) under `J = start`, united. The branches are
/// pairwise edge-disjoint in demand, so the total is at most `τ(F^J)`.
pub fn cover_all_core_branches(
    oracle: &dyn FamilyOracle,
    start: &[usize],
    g: &WeightedDigraph,
    limit: Option<usize>,
) -> Result<Vec<usize>> {
    let residual = g.arcs(start);
    let mut union = BTreeSet::new();
    for core in small_cores(oracle, &residual, limit)? {
        union.extend(cover_branch_via_co(oracle, &core, &residual, g)?.edges);
    }
    Ok(union.into_iter().collect())
}

/// Halving: cover the branches of all small cores at once until no member
/// with inner size at most `q` is left. Core inner sizes at least double each
/// round, so at most [`halving_iterations`] rounds run.
pub fn cover_small_halving(oracle: &dyn FamilyOracle, g: &WeightedDigraph, q: usize, start: &[usize]) -> Result<CoverResult> {
    check_ground(oracle, g)?;
    let cap = halving_iterations(q);
    let mut added: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    loop {
        let current = with_edges(start, &added);
        let cores = small_cores(oracle, &g.arcs(&current), Some(q))?;
        if cores.is_empty() {
            break;
        }
        if trace.len() == cap {
            return Err(Error::invariant(format!("halving exceeded {cap} rounds; family is not q-semi-intersecting for q = {q}")));
        }
        let edges = cover_all_core_branches(oracle, &current, g, Some(q))?;
        added.extend_from_slice(&edges);
        let after = small_cores(oracle, &g.arcs(&with_edges(start, &added)), Some(q))?.len();
        trace.push(TraceStep { phase: "halving".into(), core: None, cost: g.cost(&edges), edges, nu_before: cores.len(), nu_after: after });
    }
    Ok(CoverResult::new(g, added, rational::int(cap as i64), trace))
}

/// Semi+log: the two-phase primal-dual on the small sub-family, then greedy
/// branch covers restricted to the small cores that remain.
pub fn cover_small_semi(oracle: &dyn FamilyOracle, g: &WeightedDigraph, q: usize, start: &[usize]) -> Result<CoverResult> {
    check_ground(oracle, g)?;
    let small = SmallInner::new(oracle, q);
    let masked = Masked::new(&small, g.arcs(start));
    let pd = semi_intersecting_cover(&masked, g)?;
    let before = small.cores(&g.arcs(start))?.len();
    let mut trace = vec![TraceStep {
        phase: "semi".into(),
        core: None,
        edges: pd.edges.clone(),
        cost: pd.cost.clone(),
        nu_before: before,
        nu_after: pd.residual_cores,
    }];
    let mut added = pd.edges;
    let rest = greedy_branches(oracle, g, &with_edges(start, &added), Some(q), "semi-log", &mut trace)?;
    added.extend(rest);
    Ok(CoverResult::new(g, added, semi_bound(g.n(), q), trace))
}

/// The better of halving and semi+log on the small side; halving wins ties.
fn cover_small_side(oracle: &dyn FamilyOracle, g: &WeightedDigraph, q: usize, start: &[usize]) -> Result<CoverResult> {
    let halving = cover_small_halving(oracle, g, q, start)?;
    let semi = cover_small_semi(oracle, g, q, start)?;
    Ok(if semi.cost < halving.cost { semi } else { halving })
}

/// Small sides of `F` and of its co-family. The co-family side runs on the
/// reversed graph and starts from the edges already chosen.
fn cover_both_sides(oracle: &dyn FamilyOracle, g: &WeightedDigraph, q: usize) -> Result<(Vec<usize>, Vec<TraceStep>)> {
    let forward = cover_small_side(oracle, g, q, &[])?;
    let co = CoFamily::new(oracle);
    let reversed = g.reverse();
    let backward = cover_small_side(&co, &reversed, q, &forward.edges).map_err(|e| uncross_witness(e, g.ground()))?;
    let mut trace = forward.trace;
    trace.extend(backward.trace.into_iter().map(|mut s| {
        s.phase = format!("co-{}", s.phase);
        s.core = s.core.map(|c| c.co(g.ground()));
        s
    }));
    Ok((with_edges(&forward.edges, &backward.edges), trace))
}

fn check_ground(oracle: &dyn FamilyOracle, g: &WeightedDigraph) -> Result<()> {
    if oracle.ground() != g.ground() {
        return Err(Error::usage("family and graph have different ground sets"));
    }
    Ok(())
}

fn require_covered(oracle: &dyn FamilyOracle, g: &WeightedDigraph, edges: &[usize], what: &str) -> Result<()> {
    let left = oracle.cores(&g.arcs(edges))?;
    match left.first() {
        None => Ok(()),
        Some(c) => Err(Error::invariant(format!("{what} left {} uncovered cores, first {c}", left.len()))),
    }
}

/// Two-sided small cover for k-regular crossing `F` whose co-family is k-regular too and
/// whose members all have boundary size `k`. Every member has inner size at
/// most `q = floor((n-k)/2)` on one of the two sides, so covering both small
/// sides covers `F`.
pub fn cover_crossing_regular(oracle: &dyn FamilyOracle, g: &WeightedDigraph, k: usize) -> Result<CoverResult> {
    check_ground(oracle, g)?;
    let n = g.n();
    let q = small_side(n, k)?;
    let (edges, trace) = cover_both_sides(oracle, g, q)?;
    require_covered(oracle, g, &edges, "two-sided small cover")?;
    Ok(CoverResult::new(g, edges, regular_bound(n, k)?, trace))
}

/// Greedy hitting set of the given node sets: repeatedly take the node in
/// the most unhit sets, lowest index on ties.
pub fn greedy_hitting_set(parts: &[NodeSet], n: usize) -> Result<NodeSet> {
    if let Some(i) = parts.iter().position(|p| p.is_empty()) {
        return Err(Error::usage(format!("set {i} of the hypergraph is empty")));
    }
    let mut unhit: Vec<NodeSet> = parts.to_vec();
    let mut hit = NodeSet::default();
    while !unhit.is_empty() {
        let best = (0..n)
            .max_by_key(|&v| (unhit.iter().filter(|p| p.contains(v)).count(), std::cmp::Reverse(v)))
            .expect("ground set is non-empty");
        hit.insert(best);
        unhit.retain(|p| !p.contains(best));
    }
    Ok(hit)
}

/// Exact cover of `F^J_s = { S in F^J : s in S }`. Its co-family consists of
/// the co-bisets whose outer part avoids `s` and is intersecting, so it is
/// covered on the reversed graph.
fn cover_containing(oracle: &dyn FamilyOracle, g: &WeightedDigraph, reversed: &WeightedDigraph, start: &[usize], s: usize) -> Result<Vec<usize>> {
    let masked = Masked::new(oracle, g.arcs(start));
    let co = CoFamily::new(&masked);
    let anchored = InAnchored::new(&co, s)?;
    Ok(cover_intersecting(&anchored, reversed).map_err(|e| uncross_witness(e, g.ground()))?.edges)
}

/// Exact cover of `F^J_in(s) = { S in F^J : s outside S+ }`, an intersecting family.
fn cover_avoiding(oracle: &dyn FamilyOracle, g: &WeightedDigraph, start: &[usize], s: usize) -> Result<Vec<usize>> {
    let masked = Masked::new(oracle, g.arcs(start));
    let anchored = InAnchored::new(&masked, s)?;
    Ok(cover_intersecting(&anchored, g)?.edges)
}

/// Small sides plus hitting set for k-regular crossing `F` (co-family k-regular as well) with
/// `γ(F) <= k`. After both small sides are covered, every residual member and
/// co-member has inner size above `q`; a hitting set `T` of the residual core
/// inner parts then meets every residual member, and `F_s` is covered exactly
/// for each `s` in `T`.
pub fn cover_crossing_gamma(oracle: &dyn FamilyOracle, g: &WeightedDigraph, k: usize) -> Result<CoverResult> {
    check_ground(oracle, g)?;
    let n = g.n();
    let q = small_side(n, k)?;
    let (mut edges, mut trace) = cover_both_sides(oracle, g, q)?;

    let residual = oracle.cores(&g.arcs(&edges))?;
    if !residual.is_empty() {
        let parts: Vec<NodeSet> = residual.iter().map(|c| c.inner()).collect();
        let hitting = greedy_hitting_set(&parts, n)?;
        let reversed = g.reverse();
        for s in hitting.iter() {
            let before = oracle.cores(&g.arcs(&edges))?.len();
            let added = cover_containing(oracle, g, &reversed, &edges, s)?;
            edges.extend_from_slice(&added);
            let after = oracle.cores(&g.arcs(&edges))?.len();
            trace.push(TraceStep { phase: format!("hit-{s}"), core: None, cost: g.cost(&added), edges: added, nu_before: before, nu_after: after });
        }
    }
    require_covered(oracle, g, &edges, "hitting-set phase")?;
    Ok(CoverResult::new(g, edges, gamma_bound(n, k)?, trace))
}

/// The decomposition baseline with ratio `2(γ+1)`. For anchors
/// `s, s+1, ..., s+γ` (mod n), no boundary of size at most `γ` contains all
/// of them, so every member has some anchor inside its inner part or outside
/// its outer part. Each of the `2(γ+1)` resulting sub-families is covered
/// exactly, on top of the edges already chosen.
pub fn decompose_baseline(oracle: &dyn FamilyOracle, g: &WeightedDigraph, s: usize) -> Result<CoverResult> {
    check_ground(oracle, g)?;
    let n = g.n();
    g.ground().check_node(s)?;
    let gamma = oracle.claims().gamma.ok_or(Error::Unsupported("baseline needs a boundary-size bound"))?;
    if gamma + 1 > n {
        return Err(Error::usage(format!("boundary bound {gamma} too large for {n} nodes")));
    }
    let reversed = g.reverse();
    let mut edges: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    for anchor in (0..=gamma).map(|i| (s + i) % n) {
        for inside in [true, false] {
            let before = oracle.cores(&g.arcs(&edges))?.len();
            let added = if inside {
                cover_containing(oracle, g, &reversed, &edges, anchor)?
            } else {
                cover_avoiding(oracle, g, &edges, anchor)?
            };
            edges.extend_from_slice(&added);
            let after = oracle.cores(&g.arcs(&edges))?.len();
            let phase = format!("{}-{anchor}", if inside { "out" } else { "in" });
            trace.push(TraceStep { phase, core: None, cost: g.cost(&added), edges: added, nu_before: before, nu_after: after });
        }
    }
    require_covered(oracle, g, &edges, "baseline")?;
    Ok(CoverResult::new(g, edges, rational::int(2 * (gamma as i64 + 1)), trace))
}
