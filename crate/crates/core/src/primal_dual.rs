//! Primal-dual covering of intersecting and weakly-intersecting families.
//!
//! Phase 1 repeatedly takes one core `C` of the residual family, records it in
//! the maintained sub-family `U` (dropping members of `U` that `C` contains),
//! raises the dual of `C` alone until a covering edge is tight, and buys that
//! edge. Phase 2 deletes edges in reverse purchase order as long as no member
//! of `U` contains a core of what would remain uncovered, i.e. as if only the
//! members below `U` had to be covered.
//!
//! For a q-semi-intersecting family the result has cost at most the LP value
//! of the family and leaves at most `floor(n / (q + 1))` residual cores. With
//! `q = n` every intersecting family qualifies and the cover is optimal.

use crate::biset::{Biset, GroundSet};
use crate::digraph::WeightedDigraph;
use crate::error::{Error, Result};
use crate::oracle::{CoFamily, FamilyOracle, InAnchored};
use crate::rational::{self, Rational};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Sparse dual solution: biset -> positive value.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualSolution(BTreeMap<Biset, Rational>);

impl DualSolution {
    pub fn new() -> Self {
        DualSolution(BTreeMap::new())
    }

    /// Records `value` for `x`; zero values are not stored.
    pub fn set(&mut self, x: Biset, value: Rational) {
        if value.is_zero() {
            self.0.remove(&x);
        } else {
            self.0.insert(x, value);
        }
    }

    pub fn get(&self, x: &Biset) -> Rational {
        self.0.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Biset, &Rational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Objective value `Σ y`.
    pub fn value(&self) -> Rational {
        rational::sum(self.0.values())
    }

    /// Each value multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> DualSolution {
        DualSolution(self.0.iter().map(|(k, v)| (*k, v * factor)).collect())
    }

    /// `Σ y_S` over the support bisets covered by the edge with index `id`.
    pub fn load(&self, g: &WeightedDigraph, id: usize) -> Rational {
        let e = g.edge(id);
        self.0.iter().filter(|(x, _)| e.covers(x)).fold(Rational::zero(), |acc, (_, y)| acc + y)
    }
}

#[derive(Serialize, Deserialize)]
struct DualEntry {
    biset: Biset,
    #[serde(with = "rational::serde_str")]
    y: Rational,
}

impl Serialize for DualSolution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<DualEntry> = self.0.iter().map(|(b, y)| DualEntry { biset: *b, y: y.clone() }).collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DualSolution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<DualEntry>::deserialize(d)?;
        let mut out = DualSolution::new();
        for e in entries {
            if !rational::is_nonnegative(&e.y) {
                return Err(serde::de::Error::custom(format!("negative dual value on {}", e.biset)));
            }
            out.set(e.biset, e.y);
        }
        Ok(out)
    }
}

/// Output of a primal-dual run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PdResult {
    /// The final edge set, in purchase order.
    pub edges: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub cost: Rational,
    /// The maintained sub-family `U`; pairwise disjoint.
    pub family_u: Vec<Biset>,
    pub dual: DualSolution,
    /// Edge sequence bought in phase 1, before reverse delete.
    pub phase1_edges: Vec<usize>,
    /// Number of cores left uncovered by `edges`.
    pub residual_cores: usize,
}

/// Two-phase primal-dual for weakly-intersecting families. The bound
/// `ν(S^J) <= floor(n / (q + 1))` holds when the family is q-semi-intersecting;
/// `q` does not influence the run.
pub fn semi_intersecting_cover(oracle: &dyn FamilyOracle, g: &WeightedDigraph) -> Result<PdResult> {
    if oracle.ground() != g.ground() {
        return Err(Error::usage("family and graph have different ground sets"));
    }
    let mut bought: Vec<usize> = Vec::new();
    let mut family_u: Vec<Biset> = Vec::new();
    let mut dual = DualSolution::new();
    let mut load: Vec<Rational> = vec![Rational::zero(); g.edge_count()];

    loop {
        let cores = oracle.cores(&g.arcs(&bought))?;
        let Some(core) = cores.first().copied() else { break };

        family_u.retain(|x| !core.contains(x));
        family_u.push(core);

        let mut best: Option<(usize, Rational)> = None;
        for id in g.covering(&core) {
            let slack = g.cost_of(id) - &load[id];
            if best.as_ref().map_or(true, |(_, s)| slack < *s) {
                best = Some((id, slack));
            }
        }
        let Some((entering, raise)) = best else {
            return Err(Error::Infeasible { witness: core });
        };
        if raise < Rational::zero() {
            return Err(Error::invariant(format!("dual infeasible on edge {entering} before raising {core}")));
        }
        for id in g.covering(&core) {
            load[id] += &raise;
        }
        dual.set(core, raise);
        bought.push(entering);
    }

    let phase1_edges = bought.clone();
    let mut kept = bought;
    for pos in (0..kept.len()).rev() {
        let mut without = kept.clone();
        without.remove(pos);
        let cores = oracle.cores(&g.arcs(&without))?;
        let still_covered = !cores.iter().any(|c| family_u.iter().any(|u| u.contains(c)));
        if still_covered {
            kept = without;
        }
    }

    let residual_cores = oracle.cores(&g.arcs(&kept))?.len();
    family_u.sort();
    Ok(PdResult { cost: g.cost(&kept), edges: kept, family_u, dual, phase1_edges, residual_cores })
}

/// Exact cover of an intersecting family. A leftover core means the family
/// was not intersecting after all.
pub fn cover_intersecting(oracle: &dyn FamilyOracle, g: &WeightedDigraph) -> Result<PdResult> {
    let r = semi_intersecting_cover(oracle, g)?;
    if r.residual_cores > 0 {
        return Err(Error::invariant(format!("{} cores left uncovered; family is not intersecting", r.residual_cores)));
    }
    Ok(r)
}

/// Optimal cover of the branch `F^J(C)` of a crossing family, computed as an
/// exact cover of its (intersecting) co-family over the reversed edges. The
/// returned edge indices refer to `g`; the dual lives on co-bisets.
pub fn cover_branch_via_co(
    oracle: &dyn FamilyOracle,
    core: &Biset,
    residual: &[crate::biset::Edge],
    g: &WeightedDigraph,
) -> Result<PdResult> {
    let branch = crate::oracle::core_branch(oracle, core, residual)?;
    let co = CoFamily::new(&branch);
    let anchor = core.inner().first().expect("cores are proper");
    let anchored = InAnchored::new(&co, anchor)?;
    cover_intersecting(&anchored, &g.reverse()).map_err(|e| uncross_witness(e, g.ground()))
}

/// Maps an infeasibility witness found on a co-family back to the original side.
pub(crate) fn uncross_witness(err: Error, ground: GroundSet) -> Error {
    match err {
        Error::Infeasible { witness } => Error::Infeasible { witness: witness.co(ground) },
        other => other,
    }
}
