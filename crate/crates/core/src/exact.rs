//! Ground truth for explicit families: optimal integral covers, exact LP
//! values, structural checks and certificate audits.

use crate::biset::Biset;
use crate::digraph::WeightedDigraph;
use crate::error::{Error, Result};
use crate::lp::{self, CoverRow, LpSolution};
use crate::oracle::ExplicitFamily;
use crate::primal_dual::DualSolution;
use crate::rational::{self, Rational};
use num::{Signed, Zero};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactReport {
    #[serde(with = "rational::serde_str")]
    pub opt_integral: Rational,
    #[serde(with = "rational::serde_str")]
    pub tau_fractional: Rational,
    pub optimal_edges: Vec<usize>,
    /// Non-zero entries of an optimal fractional cover.
    pub lp_support: Vec<LpEntry>,
    /// `tau <= opt` and the LP optimum passed its exact certificate.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpEntry {
    pub edge: usize,
    #[serde(with = "rational::serde_str")]
    pub x: Rational,
}

fn cover_rows(fam: &ExplicitFamily, g: &WeightedDigraph) -> Result<Vec<CoverRow>> {
    fam.members()
        .iter()
        .map(|x| {
            let vars = g.covering(x);
            if vars.is_empty() {
                Err(Error::Infeasible { witness: *x })
            } else {
                Ok(CoverRow { vars, rhs: rational::one() })
            }
        })
        .collect()
}

fn check_same_ground(fam: &ExplicitFamily, g: &WeightedDigraph) -> Result<()> {
    if fam.ground_set() != g.ground() {
        return Err(Error::usage("family and graph have different ground sets"));
    }
    Ok(())
}

/// Optimal solution of the covering LP of `fam` over the edges of `g`.
pub fn tau_solution(fam: &ExplicitFamily, g: &WeightedDigraph) -> Result<LpSolution> {
    check_same_ground(fam, g)?;
    let rows = cover_rows(fam, g)?;
    let sol = lp::solve_covering(g.costs(), &rows).map_err(|i| Error::Infeasible { witness: fam.members()[i] })?;
    lp::certify(g.costs(), &rows, &sol)?;
    Ok(sol)
}

/// `τ(F)`: optimal value of the covering LP.
pub fn tau_lp(fam: &ExplicitFamily, g: &WeightedDigraph) -> Result<Rational> {
    Ok(tau_solution(fam, g)?.value)
}

/// The LP optimum as a dual solution over the members.
pub fn tau_dual(fam: &ExplicitFamily, g: &WeightedDigraph) -> Result<DualSolution> {
    let sol = tau_solution(fam, g)?;
    let mut y = DualSolution::new();
    for (x, v) in fam.members().iter().zip(sol.y) {
        y.set(*x, v);
    }
    Ok(y)
}

struct Search<'a> {
    costs: &'a [Rational],
    /// Covering edges of each member, cheapest first.
    rows: Vec<Vec<usize>>,
    best: Option<(Rational, Vec<usize>)>,
}

impl Search<'_> {
    /// Sum of cheapest allowed covering edges over a greedy family of
    /// uncovered members with pairwise disjoint covering sets.
    fn packing_bound(&self, uncovered: &[usize], banned: &HashSet<usize>) -> Option<Rational> {
        let mut used: HashSet<usize> = HashSet::new();
        let mut total = Rational::zero();
        for &m in uncovered {
            let allowed: Vec<usize> = self.rows[m].iter().copied().filter(|e| !banned.contains(e)).collect();
            let cheapest = allowed.first()?;
            if allowed.iter().all(|e| !used.contains(e)) {
                total += &self.costs[*cheapest];
                used.extend(allowed);
            }
        }
        Some(total)
    }

    fn run(&mut self, chosen: &mut Vec<usize>, cost: Rational, banned: &mut HashSet<usize>) {
        let uncovered: Vec<usize> = (0..self.rows.len()).filter(|&m| !self.rows[m].iter().any(|e| chosen.contains(e))).collect();
        if uncovered.is_empty() {
            if self.best.as_ref().map_or(true, |(b, _)| cost < *b) {
                self.best = Some((cost, chosen.clone()));
            }
            return;
        }
        let Some(lower) = self.packing_bound(&uncovered, banned) else { return };
        if self.best.as_ref().is_some_and(|(b, _)| &cost + lower >= *b) {
            return;
        }
        let branch = *uncovered
            .iter()
            .min_by_key(|&&m| self.rows[m].iter().filter(|e| !banned.contains(e)).count())
            .expect("non-empty");
        let options: Vec<usize> = self.rows[branch].iter().copied().filter(|e| !banned.contains(e)).collect();
        let mut newly_banned = Vec::new();
        for e in options {
            chosen.push(e);
            let c = &cost + &self.costs[e];
            self.run(chosen, c, banned);
            chosen.pop();
            banned.insert(e);
            newly_banned.push(e);
        }
        for e in newly_banned {
            banned.remove(&e);
        }
    }
}

/// Minimum-cost cover of every member by branch and bound: branch on the
/// uncovered member with the fewest usable edges, each branch forbidding the
/// edges tried before it.
pub fn min_cover(fam: &ExplicitFamily, g: &WeightedDigraph) -> Result<(Rational, Vec<usize>)> {
    check_same_ground(fam, g)?;
    let rows: Vec<Vec<usize>> = cover_rows(fam, g)?
        .into_iter()
        .map(|r| {
            let mut v = r.vars;
            v.sort_by(|a, b| g.cost_of(*a).cmp(g.cost_of(*b)).then(a.cmp(b)));
            v
        })
        .collect();
    let mut search = Search { costs: g.costs(), rows, best: None };
    search.run(&mut Vec::new(), Rational::zero(), &mut HashSet::new());
    let (cost, mut edges) = search.best.expect("every member has a covering edge");
    edges.sort();
    Ok((cost, edges))
}

/// Integral optimum and LP value of an explicit instance.
pub fn exact_opt(fam: &ExplicitFamily, g: &WeightedDigraph) -> Result<ExactReport> {
    let (opt, edges) = min_cover(fam, g)?;
    let sol = tau_solution(fam, g)?;
    let lp_support = sol
        .x
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(edge, x)| LpEntry { edge, x: x.clone() })
        .collect();
    Ok(ExactReport { verified: sol.value <= opt, opt_integral: opt, tau_fractional: sol.value, optimal_edges: edges, lp_support })
}

/// First member left uncovered by the edges `ids` of `g`, if any.
pub fn uncovered_member(fam: &ExplicitFamily, g: &WeightedDigraph, ids: &[usize]) -> Option<Biset> {
    fam.residual(&g.arcs(ids)).first().copied()
}

pub fn verify_cover(fam: &ExplicitFamily, g: &WeightedDigraph, ids: &[usize]) -> bool {
    uncovered_member(fam, g, ids).is_none()
}

/// Audit of a dual solution against a family, a graph and an edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualReport {
    #[serde(with = "rational::serde_str")]
    pub dual_value: Rational,
    #[serde(with = "rational::serde_str")]
    pub primal_cost: Rational,
    #[serde(with = "rational::serde_opt")]
    pub tau: Option<Rational>,
    /// Support bisets that are not members of the family.
    pub outside_family: Vec<Biset>,
    /// Edges whose load exceeds their cost.
    pub overloaded_edges: Vec<usize>,
    /// Edges of `J` whose load is below their cost.
    pub slack_edges: Vec<usize>,
    /// Support bisets inside the declared sub-family with `|δ_J| != 1`.
    pub multiply_covered: Vec<Biset>,
    pub exceeds_tau: bool,
}

impl DualReport {
    pub fn violations(&self) -> usize {
        self.outside_family.len() + self.overloaded_edges.len() + self.slack_edges.len() + self.multiply_covered.len() + usize::from(self.exceeds_tau)
    }

    pub fn ok(&self) -> bool {
        self.violations() == 0
    }
}

/// Checks `y` for feasibility in the dual LP of `fam`, tightness of every
/// edge of `J`, and `|δ_J(S)| = 1` for support bisets `S` lying below some
/// member of `upper` (all support bisets when `upper` is `None`). The dual
/// value is compared with `τ(fam)` when `with_tau` is set.
pub fn verify_dual(
    fam: &ExplicitFamily,
    g: &WeightedDigraph,
    y: &DualSolution,
    ids: &[usize],
    upper: Option<&[Biset]>,
    with_tau: bool,
) -> Result<DualReport> {
    check_same_ground(fam, g)?;
    g.check_ids(ids)?;
    let outside_family = y.iter().map(|(x, _)| *x).filter(|x| !fam.has(x)).collect();
    let load: Vec<Rational> = (0..g.edge_count()).map(|e| y.load(g, e)).collect();
    let overloaded_edges = (0..g.edge_count()).filter(|&e| load[e] > *g.cost_of(e)).collect();
    let mut slack_edges: Vec<usize> = ids.iter().copied().filter(|&e| load[e] < *g.cost_of(e)).collect();
    slack_edges.dedup();
    let arcs = g.arcs(ids);
    let multiply_covered = y
        .iter()
        .map(|(x, _)| *x)
        .filter(|x| upper.map_or(true, |us| us.iter().any(|u| u.contains(x))))
        .filter(|x| arcs.iter().filter(|e| e.covers(x)).count() != 1)
        .collect();
    let dual_value = y.value();
    let tau = if with_tau { Some(tau_lp(fam, g)?) } else { None };
    let exceeds_tau = tau.as_ref().is_some_and(|t| dual_value > *t) || y.iter().any(|(_, v)| v.is_negative());
    Ok(DualReport { primal_cost: g.cost(ids), dual_value, tau, outside_family, overloaded_edges, slack_edges, multiply_covered, exceeds_tau })
}

/// A pair witnessing that `fam` is not q-semi-intersecting: a member with
/// inner size above `q` (reported twice), an intersecting pair whose meet is
/// missing, or one whose join has inner size at most `q` but is missing.
pub fn semi_intersecting_violation(fam: &ExplicitFamily, q: usize) -> Option<(Biset, Biset)> {
    if let Some(x) = fam.members().iter().find(|x| x.inner().len() > q) {
        return Some((*x, *x));
    }
    let ms = fam.members();
    for (i, x) in ms.iter().enumerate() {
        for y in &ms[i + 1..] {
            if !x.intersects(y) {
                continue;
            }
            let join = x.join(y);
            if !fam.has(&x.meet(y)) || (join.inner().len() <= q && !fam.has(&join)) {
                return Some((*x, *y));
            }
        }
    }
    None
}

pub fn verify_semi_intersecting(fam: &ExplicitFamily, q: usize) -> bool {
    semi_intersecting_violation(fam, q).is_none()
}

/// A pair witnessing that some down-set `{ S in fam : S ⊆ U }` is not
/// intersecting: two intersecting members below a common member whose meet or
/// join is missing.
pub fn weakly_intersecting_violation(fam: &ExplicitFamily) -> Option<(Biset, Biset)> {
    let ms = fam.members();
    for (i, x) in ms.iter().enumerate() {
        for y in &ms[i + 1..] {
            if !x.intersects(y) {
                continue;
            }
            let join = x.join(y);
            let below_common = ms.iter().any(|u| u.contains(&join));
            if below_common && !(fam.has(&x.meet(y)) && fam.has(&join)) {
                return Some((*x, *y));
            }
        }
    }
    None
}

pub fn verify_weakly_intersecting(fam: &ExplicitFamily) -> bool {
    weakly_intersecting_violation(fam).is_none()
}
