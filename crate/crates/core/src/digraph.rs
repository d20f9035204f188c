//! Weighted digraphs, biset coverage and Menger-type vertex cuts.

use crate::biset::{Biset, Edge, GroundSet};
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;
use crate::rational::{self, Rational};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// A directed multigraph with nonnegative exact costs. Edge indices are stable
/// and shared with [`WeightedDigraph::reverse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    ground: GroundSet,
    edges: Vec<Edge>,
    costs: Vec<Rational>,
}

impl WeightedDigraph {
    pub fn new(n: usize) -> Result<Self> {
        Ok(WeightedDigraph { ground: GroundSet::new(n)?, edges: Vec::new(), costs: Vec::new() })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, Rational)>) -> Result<Self> {
        let mut g = WeightedDigraph::new(n)?;
        for (t, h, c) in edges {
            g.add_edge(t, h, c)?;
        }
        Ok(g)
    }

    /// Every ordered pair `u != v` once, with cost `cost(u, v)`.
    pub fn complete(n: usize, mut cost: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut g = WeightedDigraph::new(n)?;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    let c = cost(u, v);
                    g.add_edge(u, v, c)?;
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, tail: usize, head: usize, cost: Rational) -> Result<usize> {
        self.ground.check_node(tail)?;
        self.ground.check_node(head)?;
        if tail == head {
            return Err(Error::usage(format!("self-loop at node {tail}")));
        }
        if !rational::is_nonnegative(&cost) {
            return Err(Error::usage(format!("negative cost on edge {tail}->{head}")));
        }
        self.edges.push(Edge::new(tail, head));
        self.costs.push(cost);
        Ok(self.edges.len() - 1)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn cost_of(&self, id: usize) -> &Rational {
        &self.costs[id]
    }

    pub fn costs(&self) -> &[Rational] {
        &self.costs
    }

    /// `c(J)` for a set of edge indices.
    pub fn cost(&self, ids: &[usize]) -> Rational {
        ids.iter().fold(Rational::zero(), |acc, &i| acc + &self.costs[i])
    }

    pub fn arcs(&self, ids: &[usize]) -> Vec<Edge> {
        ids.iter().map(|&i| self.edges[i]).collect()
    }

    /// `δ_J(x)`: the members of `ids` covering `x`.
    pub fn delta(&self, ids: &[usize], x: &Biset) -> Vec<usize> {
        ids.iter().copied().filter(|&i| self.edges[i].covers(x)).collect()
    }

    /// All edge indices covering `x`.
    pub fn covering(&self, x: &Biset) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].covers(x)).collect()
    }

    /// Every edge flipped; indices and costs are preserved.
    pub fn reverse(&self) -> WeightedDigraph {
        WeightedDigraph {
            ground: self.ground,
            edges: self.edges.iter().map(|e| e.reversed()).collect(),
            costs: self.costs.clone(),
        }
    }

    pub fn check_ids(&self, ids: &[usize]) -> Result<()> {
        match ids.iter().find(|&&i| i >= self.edges.len()) {
            Some(i) => Err(Error::usage(format!("edge index {i} out of range ({} edges)", self.edges.len()))),
            None => Ok(()),
        }
    }
}

/// Outcome of a minimum vertex-cut query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexCut {
    /// `u -> v` is an edge, so no vertex set separates them.
    Adjacent,
    Cut {
        /// Maximum number of internally disjoint `u -> v` paths.
        value: usize,
        /// The inner-minimal biset with `u` inside, `v` outside, no leaving
        /// edge and boundary of size `value`.
        witness: Biset,
    },
}

impl VertexCut {
    pub fn value(&self) -> Option<usize> {
        match self {
            VertexCut::Adjacent => None,
            VertexCut::Cut { value, .. } => Some(*value),
        }
    }
}

/// Unit node capacities, node-split flow network on a dense matrix. Node `w`
/// becomes `2w` (in) and `2w + 1` (out).
struct SplitNetwork {
    size: usize,
    cap: Vec<u32>,
}

impl SplitNetwork {
    fn build(n: usize, arcs: &[Edge], u: usize, v: usize) -> Self {
        let size = 2 * n;
        let inf = (n + 1) as u32;
        let mut cap = vec![0u32; size * size];
        for w in 0..n {
            let c = if w == u || w == v { inf } else { 1 };
            cap[(2 * w) * size + 2 * w + 1] = c;
        }
        for e in arcs {
            cap[(2 * e.tail + 1) * size + 2 * e.head] = inf;
        }
        SplitNetwork { size, cap }
    }

    fn residual_reach(&self, source: usize) -> (Vec<bool>, Vec<usize>) {
        let mut seen = vec![false; self.size];
        let mut parent = vec![usize::MAX; self.size];
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(a) = queue.pop_front() {
            let row = &self.cap[a * self.size..(a + 1) * self.size];
            for (b, &c) in row.iter().enumerate() {
                if c > 0 && !seen[b] {
                    seen[b] = true;
                    parent[b] = a;
                    queue.push_back(b);
                }
            }
        }
        (seen, parent)
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut flow = 0;
        loop {
            let (seen, parent) = self.residual_reach(source);
            if !seen[sink] {
                return flow;
            }
            let mut b = sink;
            while b != source {
                let a = parent[b];
                self.cap[a * self.size + b] -= 1;
                self.cap[b * self.size + a] += 1;
                b = a;
            }
            flow += 1;
        }
    }
}

/// Menger-type minimum vertex cut between `u` and `v` in the digraph on `n`
/// nodes with edges `arcs`.
pub fn min_vertex_cut(n: usize, arcs: &[Edge], u: usize, v: usize) -> Result<VertexCut> {
    if u == v {
        return Err(Error::usage(format!("vertex cut needs distinct endpoints, got {u} twice")));
    }
    if u >= n || v >= n {
        return Err(Error::usage(format!("endpoint outside 0..{n}")));
    }
    if arcs.iter().any(|e| e.tail == u && e.head == v) {
        return Ok(VertexCut::Adjacent);
    }
    let mut net = SplitNetwork::build(n, arcs, u, v);
    let value = net.max_flow(2 * u + 1, 2 * v);
    let (reach, _) = net.residual_reach(2 * u + 1);
    let mut inner = NodeSet::EMPTY;
    let mut boundary = NodeSet::EMPTY;
    for w in 0..n {
        if reach[2 * w + 1] {
            inner.insert(w);
        } else if reach[2 * w] {
            boundary.insert(w);
        }
    }
    debug_assert_eq!(boundary.len(), value);
    Ok(VertexCut::Cut { value, witness: Biset::new_unchecked(inner, inner.union(boundary)) })
}

/// Number of internally disjoint `u -> v` paths, counting a direct edge as one
/// path (all parallel `u -> v` edges are removed and 1 is added back).
pub fn local_connectivity(n: usize, arcs: &[Edge], u: usize, v: usize) -> Result<usize> {
    match min_vertex_cut(n, arcs, u, v)? {
        VertexCut::Cut { value, .. } => Ok(value),
        VertexCut::Adjacent => {
            let rest: Vec<Edge> = arcs.iter().copied().filter(|e| !(e.tail == u && e.head == v)).collect();
            match min_vertex_cut(n, &rest, u, v)? {
                VertexCut::Cut { value, .. } => Ok(value + 1),
                VertexCut::Adjacent => unreachable!("all u->v edges were removed"),
            }
        }
    }
}

/// `k` internally disjoint paths between every ordered pair, and `n >= k + 1`.
pub fn is_k_connected_arcs(n: usize, arcs: &[Edge], k: usize) -> bool {
    if n < k + 1 {
        return false;
    }
    if k == 0 {
        return true;
    }
    (0..n).all(|u| {
        (0..n).filter(|&v| v != u).all(|v| local_connectivity(n, arcs, u, v).map_or(false, |c| c >= k))
    })
}

pub fn is_k_connected(g: &WeightedDigraph, k: usize) -> bool {
    is_k_connected_arcs(g.n(), g.edges(), k)
}

#[derive(Serialize, Deserialize)]
struct EdgeRepr {
    tail: usize,
    head: usize,
    #[serde(with = "rational::serde_str")]
    cost: Rational,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<EdgeRepr>,
}

impl Serialize for WeightedDigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n(),
            edges: self
                .edges
                .iter()
                .zip(&self.costs)
                .map(|(e, c)| EdgeRepr { tail: e.tail, head: e.head, cost: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedDigraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        WeightedDigraph::from_edges(repr.n, repr.edges.into_iter().map(|e| (e.tail, e.head, e.cost)))
            .map_err(serde::de::Error::custom)
    }
}
