//! Vertex-connectivity applications: raising the connectivity of a digraph by
//! one, the level-by-level k-connected subgraph ladder, and the reduction of
//! (S,T)-crossing set families to crossing biset-families.

use crate::biset::{Biset, Edge};
use crate::crossing::{cover_crossing_log, cover_crossing_regular, regular_bound, CoverResult};
use crate::digraph::{is_k_connected_arcs, WeightedDigraph};
use crate::error::{Error, Result};
use crate::lp::{self, CoverRow};
use crate::nodeset::NodeSet;
use crate::oracle::{ConnectivityFamily, ExplicitFamily};
use crate::rational::{self, Rational};
use serde::Serialize;

/// Raise the connectivity of the zero-cost digraph `base` from `ell` to
/// `ell + 1` using the priced `candidates`.
#[derive(Debug, Clone)]
pub struct AugmentInstance {
    base: Vec<Edge>,
    candidates: WeightedDigraph,
    ell: usize,
}

impl AugmentInstance {
    pub fn new(base: Vec<Edge>, candidates: WeightedDigraph, ell: usize) -> Result<Self> {
        let n = candidates.n();
        for &e in &base {
            candidates.ground().check_edge(e)?;
        }
        if ell + 2 > n {
            return Err(Error::usage(format!("{n} nodes cannot be {}-connected", ell + 1)));
        }
        if !is_k_connected_arcs(n, &base, ell) {
            return Err(Error::usage(format!("base graph is not {ell}-connected")));
        }
        Ok(AugmentInstance { base, candidates, ell })
    }

    pub fn base(&self) -> &[Edge] {
        &self.base
    }

    pub fn candidates(&self) -> &WeightedDigraph {
        &self.candidates
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// The tight-biset family whose covers are exactly the augmenting sets.
    pub fn family(&self) -> Result<ConnectivityFamily> {
        ConnectivityFamily::new(self.candidates.n(), self.base.clone(), self.ell)
    }

    /// `base ∪ J` is `(ell + 1)`-connected.
    pub fn is_solution(&self, ids: &[usize]) -> bool {
        let mut arcs = self.base.clone();
        arcs.extend(self.candidates.arcs(ids));
        is_k_connected_arcs(self.candidates.n(), &arcs, self.ell + 1)
    }
}

/// Cheaper of the two-sided regular algorithm and the greedy core algorithm
/// on the tight family; the guarantee is the smaller of their bounds.
pub fn augment(inst: &AugmentInstance) -> Result<CoverResult> {
    let family = inst.family()?;
    let g = inst.candidates();
    let regular = cover_crossing_regular(&family, g, inst.ell)?;
    let log = cover_crossing_log(&family, g)?;
    let bound = regular.ratio_bound.clone().min(log.ratio_bound.clone());
    let mut best = if log.cost < regular.cost { log } else { regular };
    best.ratio_bound = bound;
    if !inst.is_solution(&best.edges) {
        return Err(Error::invariant(format!("augmented graph is not {}-connected", inst.ell + 1)));
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelResult {
    pub ell: usize,
    /// Edge indices into the input graph bought at this level.
    pub edges: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub cost: Rational,
    /// Guarantee of the augmentation at this level against its LP value.
    #[serde(with = "rational::serde_str")]
    pub ratio_bound: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderResult {
    pub k: usize,
    pub levels: Vec<LevelResult>,
    /// All bought edges, sorted.
    pub edges: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub cost: Rational,
    /// `Σ_ℓ ratio_ℓ / (k - ℓ)`: the cost is at most this times `opt_k`.
    #[serde(with = "rational::serde_str")]
    pub opt_k_factor: Rational,
    /// `α(n, k) H(k)` with `α(n, k)` the a-priori guarantee of one level,
    /// maximised over the levels; never below `opt_k_factor`.
    #[serde(with = "rational::serde_str")]
    pub harmonic_factor: Rational,
}

/// A-priori guarantee of one augmentation level on `n` nodes, `α(n, ℓ)`.
pub fn level_alpha(n: usize, ell: usize) -> Result<Rational> {
    regular_bound(n, ell)
}

/// Builds a k-connected spanning subgraph of `g` by augmenting level by level.
/// At level `ℓ` the edges bought so far form the zero-cost base.
pub fn k_connected_subgraph(g: &WeightedDigraph, k: usize) -> Result<LadderResult> {
    let n = g.n();
    if k > 0 && k + 1 > n {
        return Err(Error::usage(format!("{n} nodes cannot be {k}-connected")));
    }
    let mut bought: Vec<usize> = Vec::new();
    let mut levels = Vec::new();
    for ell in 0..k {
        let rest: Vec<usize> = (0..g.edge_count()).filter(|e| !bought.contains(e)).collect();
        let mut candidates = WeightedDigraph::new(n)?;
        for &e in &rest {
            let edge = g.edge(e);
            candidates.add_edge(edge.tail, edge.head, g.cost_of(e).clone())?;
        }
        let inst = AugmentInstance::new(g.arcs(&bought), candidates, ell)?;
        let r = augment(&inst)?;
        let edges: Vec<usize> = r.edges.iter().map(|&i| rest[i]).collect();
        bought.extend_from_slice(&edges);
        levels.push(LevelResult { ell, cost: g.cost(&edges), edges, ratio_bound: r.ratio_bound });
    }
    bought.sort();
    if !is_k_connected_arcs(n, &g.arcs(&bought), k) {
        return Err(Error::invariant(format!("ladder output is not {k}-connected")));
    }
    let opt_k_factor = levels.iter().map(|l| &l.ratio_bound / rational::int((k - l.ell) as i64)).sum();
    let alpha = (0..k).map(|ell| level_alpha(n, ell)).collect::<Result<Vec<_>>>()?;
    let alpha_max = alpha.into_iter().chain(levels.iter().map(|l| l.ratio_bound.clone())).max().unwrap_or_default();
    Ok(LadderResult { k, cost: g.cost(&bought), edges: bought, levels, opt_k_factor, harmonic_factor: alpha_max * rational::harmonic(k) })
}

/// `opt_k`: `min c·x` over `x >= 0` with `x(δ(Ŝ)) >= k - |Γ(Ŝ)|` for every
/// proper biset. Enumerates all proper bisets, so small `n` only.
pub fn opt_k(g: &WeightedDigraph, k: usize) -> Result<Rational> {
    let ground = g.ground();
    let bisets: Vec<Biset> = ground.proper_bisets().into_iter().filter(|x| x.boundary().len() < k).collect();
    let rows: Vec<CoverRow> = bisets
        .iter()
        .map(|x| CoverRow { vars: g.covering(x), rhs: rational::int((k - x.boundary().len()) as i64) })
        .collect();
    let sol = lp::solve_covering(g.costs(), &rows).map_err(|i| Error::Infeasible { witness: bisets[i] })?;
    lp::certify(g.costs(), &rows, &sol)?;
    Ok(sol.value)
}

/// An edge `(u, v)` covers a set `X` when `u ∈ X` and `v ∉ X`.
pub fn covers_set(e: Edge, x: NodeSet) -> bool {
    x.contains(e.tail) && !x.contains(e.head)
}

/// Nodes sets `S`, `T` partitioning `V = {0..n-1}`.
fn check_partition(n: usize, s: NodeSet, t: NodeSet) -> Result<()> {
    if !s.is_disjoint(t) || s.union(t) != NodeSet::full(n) {
        return Err(Error::usage("S and T must partition the node set"));
    }
    Ok(())
}

/// `X ↦ (X ∩ S, S ∪ (X ∩ T))`.
pub fn st_image(x: NodeSet, s: NodeSet, t: NodeSet) -> Biset {
    Biset::new(x.intersection(s), s.union(x.intersection(t))).expect("X ∩ S ⊆ S")
}

/// Sets `X, Y` (S,T)-cross when `X ∩ Y ∩ S` and `T \ (X ∪ Y)` are non-empty.
pub fn st_cross(x: NodeSet, y: NodeSet, s: NodeSet, t: NodeSet) -> bool {
    !x.intersection(y).intersection(s).is_empty() && !t.difference(x.union(y)).is_empty()
}

/// First pair of members that (S,T)-cross without their intersection and
/// union in the family.
pub fn st_crossing_violation(sets: &[NodeSet], s: NodeSet, t: NodeSet) -> Option<(NodeSet, NodeSet)> {
    for (i, &x) in sets.iter().enumerate() {
        for &y in &sets[i + 1..] {
            if st_cross(x, y, s, t) && !(sets.contains(&x.intersection(y)) && sets.contains(&x.union(y))) {
                return Some((x, y));
            }
        }
    }
    None
}

/// The biset image of a set family over `V = S ∪ T`. Each member must meet
/// `S` and miss part of `T`, so that its image is proper.
pub fn st_crossing_to_biset(n: usize, sets: &[NodeSet], s: NodeSet, t: NodeSet) -> Result<ExplicitFamily> {
    check_partition(n, s, t)?;
    for &x in sets {
        if x.intersection(s).is_empty() || t.is_subset(x) || !x.is_subset(NodeSet::full(n)) {
            return Err(Error::usage(format!("set {x:?} must meet S and miss part of T")));
        }
    }
    ExplicitFamily::new(n, sets.iter().map(|&x| st_image(x, s, t)))
}

/// Covers an (S,T)-crossing set family with `S -> T` edges through its biset
/// image and the greedy core algorithm.
pub fn cover_st_family(n: usize, sets: &[NodeSet], s: NodeSet, t: NodeSet, g: &WeightedDigraph) -> Result<CoverResult> {
    let image = st_crossing_to_biset(n, sets, s, t)?;
    if let Some(e) = g.edges().iter().find(|e| !(s.contains(e.tail) && t.contains(e.head))) {
        return Err(Error::usage(format!("edge {}->{} does not go from S to T", e.tail, e.head)));
    }
    cover_crossing_log(&image, g)
}
