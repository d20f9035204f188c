//! Biset algebra.
//!
//! A biset is a pair `(inner, outer)` of node sets with `inner ⊆ outer`; the
//! nodes in `outer \ inner` form its boundary. Bisets are ordered
//! componentwise: `x ⊆ y` iff `x.inner ⊆ y.inner` and `x.outer ⊆ y.outer`.

use crate::error::{Error, Result};
use crate::nodeset::{NodeSet, MAX_NODES};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// The node universe `{0, .., n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_NODES {
            return Err(Error::usage(format!(
                "ground set size must be in 1..={MAX_NODES}, got {n}"
            )));
        }
        Ok(GroundSet { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn all(self) -> NodeSet {
        NodeSet::full(self.n)
    }

    pub fn nodes(self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn check_node(self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::usage(format!("node {v} outside ground set of size {}", self.n)));
        }
        Ok(())
    }

    pub fn check_biset(self, x: &Biset) -> Result<()> {
        if !x.outer.is_subset(self.all()) {
            return Err(Error::usage(format!("{x} references nodes outside 0..{}", self.n)));
        }
        Ok(())
    }

    pub fn check_edge(self, e: Edge) -> Result<()> {
        self.check_node(e.tail)?;
        self.check_node(e.head)
    }

    /// Every proper biset on this ground set, in a fixed order. Only sensible
    /// for small `n` (there are fewer than `3^n`).
    pub fn proper_bisets(self) -> Vec<Biset> {
        let n = self.n;
        let mut out = Vec::new();
        let mut digits = vec![0u8; n];
        loop {
            let mut inner = NodeSet::EMPTY;
            let mut outer = NodeSet::EMPTY;
            for (v, &d) in digits.iter().enumerate() {
                if d == 0 {
                    inner.insert(v);
                }
                if d <= 1 {
                    outer.insert(v);
                }
            }
            let b = Biset { inner, outer };
            if b.is_proper(self) {
                out.push(b);
            }
            let mut i = 0;
            while i < n && digits[i] == 2 {
                digits[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            digits[i] += 1;
        }
        out.sort();
        out
    }
}

/// A directed edge `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn new(tail: usize, head: usize) -> Self {
        Edge { tail, head }
    }

    pub fn reversed(self) -> Edge {
        Edge { tail: self.head, head: self.tail }
    }

    /// `self` goes from the inner part of `x` to the complement of its outer part.
    pub fn covers(self, x: &Biset) -> bool {
        x.inner.contains(self.tail) && !x.outer.contains(self.head)
    }
}

pub fn reverse_all(edges: &[Edge]) -> Vec<Edge> {
    edges.iter().map(|e| e.reversed()).collect()
}

/// True if some edge of `edges` covers `x`.
pub fn is_covered(edges: &[Edge], x: &Biset) -> bool {
    edges.iter().any(|e| e.covers(x))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Biset {
    inner: NodeSet,
    outer: NodeSet,
}

impl Biset {
    pub fn new(inner: NodeSet, outer: NodeSet) -> Result<Self> {
        if !inner.is_subset(outer) {
            return Err(Error::usage(format!(
                "inner part {inner:?} is not contained in outer part {outer:?}"
            )));
        }
        Ok(Biset { inner, outer })
    }

    /// Builds from node lists; panics if `inner ⊄ outer`. Meant for fixtures.
    pub fn from_lists(inner: &[usize], outer: &[usize]) -> Self {
        let b = Biset::new(inner.iter().copied().collect(), outer.iter().copied().collect());
        b.expect("inner part must be a subset of the outer part")
    }

    /// The set `s` viewed as the biset `(s, s)`.
    pub fn set(s: NodeSet) -> Self {
        Biset { inner: s, outer: s }
    }

    pub(crate) fn new_unchecked(inner: NodeSet, outer: NodeSet) -> Self {
        debug_assert!(inner.is_subset(outer));
        Biset { inner, outer }
    }

    pub fn inner(&self) -> NodeSet {
        self.inner
    }

    pub fn outer(&self) -> NodeSet {
        self.outer
    }

    pub fn boundary(&self) -> NodeSet {
        self.outer.difference(self.inner)
    }

    pub fn is_proper(&self, ground: GroundSet) -> bool {
        !self.inner.is_empty() && self.outer != ground.all()
    }

    pub fn intersects(&self, other: &Biset) -> bool {
        !self.inner.is_disjoint(other.inner)
    }

    pub fn crosses(&self, other: &Biset, ground: GroundSet) -> bool {
        self.intersects(other) && self.outer.union(other.outer) != ground.all()
    }

    pub fn meet(&self, other: &Biset) -> Biset {
        Biset {
            inner: self.inner.intersection(other.inner),
            outer: self.outer.intersection(other.outer),
        }
    }

    pub fn join(&self, other: &Biset) -> Biset {
        Biset {
            inner: self.inner.union(other.inner),
            outer: self.outer.union(other.outer),
        }
    }

    /// `(V \ outer, V \ inner)`.
    pub fn co(&self, ground: GroundSet) -> Biset {
        let n = ground.n();
        Biset {
            inner: self.outer.complement(n),
            outer: self.inner.complement(n),
        }
    }

    /// `x ⊆ self` in the componentwise order.
    pub fn contains(&self, x: &Biset) -> bool {
        x.inner.is_subset(self.inner) && x.outer.is_subset(self.outer)
    }

    pub fn properly_contains(&self, x: &Biset) -> bool {
        self != x && self.contains(x)
    }

    /// Edges that go from the inner part to outside the outer part.
    pub fn covering_edges(&self, ground: GroundSet) -> impl Iterator<Item = Edge> + '_ {
        let outside = self.outer.complement(ground.n());
        self.inner
            .iter()
            .flat_map(move |t| outside.iter().map(move |h| Edge::new(t, h)))
    }
}

impl Ord for Biset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.inner
            .cmp_lex(other.inner)
            .then_with(|| self.outer.cmp_lex(other.outer))
    }
}

impl PartialOrd for Biset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Biset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.inner, self.outer)
    }
}

impl fmt::Display for Biset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct BisetRepr {
    inner: Vec<usize>,
    outer: Vec<usize>,
}

impl Serialize for Biset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BisetRepr { inner: self.inner.to_vec(), outer: self.outer.to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Biset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = BisetRepr::deserialize(d)?;
        if let Some(v) = repr.inner.iter().chain(&repr.outer).find(|&&v| v >= MAX_NODES) {
            return Err(serde::de::Error::custom(format!("node id {v} exceeds {}", MAX_NODES - 1)));
        }
        Biset::new(repr.inner.into_iter().collect(), repr.outer.into_iter().collect())
            .map_err(serde::de::Error::custom)
    }
}

/// Keeps the inclusion-minimal members of `items`, sorted and deduplicated.
pub fn minimal_members(items: impl IntoIterator<Item = Biset>) -> Vec<Biset> {
    let mut all: Vec<Biset> = items.into_iter().collect();
    all.sort();
    all.dedup();
    let keep: Vec<bool> = all
        .iter()
        .map(|x| !all.iter().any(|y| x.properly_contains(y)))
        .collect();
    all.into_iter().zip(keep).filter_map(|(x, k)| k.then_some(x)).collect()
}
