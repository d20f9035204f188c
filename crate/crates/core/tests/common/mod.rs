//! Brute-force reference computations shared by the integration tests.
//! None of these call into the algorithms they are used to check; node sets
//! are plain `u64` masks and graphs are plain arc lists.

#![allow(dead_code)]

use biset_cover::rational::Rational;
use biset_cover::{Biset, Edge, NodeSet, WeightedDigraph};
use num::{One, Zero};

pub fn mask(v: &[usize]) -> u64 {
    v.iter().fold(0, |m, &x| m | 1 << x)
}

pub fn full(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// Every proper biset as a pair of masks `(inner, outer)`.
pub fn proper_pairs(n: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for outer in 0..full(n) {
        // all non-empty submasks of outer
        let mut inner = outer;
        while inner != 0 {
            out.push((inner, outer));
            inner = (inner - 1) & outer;
        }
    }
    out
}

pub fn to_biset((inner, outer): (u64, u64)) -> Biset {
    Biset::new(NodeSet::from_bits(inner), NodeSet::from_bits(outer)).unwrap()
}

pub fn from_biset(x: &Biset) -> (u64, u64) {
    (x.inner().bits(), x.outer().bits())
}

pub fn edge_covers((tail, head): (usize, usize), (inner, outer): (u64, u64)) -> bool {
    inner >> tail & 1 == 1 && outer >> head & 1 == 0
}

/// Nodes reachable from `u` in the digraph minus the nodes of `removed`.
pub fn reach(n: usize, arcs: &[(usize, usize)], u: usize, removed: u64) -> u64 {
    let mut seen = 1u64 << u;
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        for &(a, b) in arcs {
            if a == x && removed >> b & 1 == 0 && seen >> b & 1 == 0 {
                seen |= 1 << b;
                stack.push(b);
            }
        }
    }
    let _ = n;
    seen
}

/// Minimum number of nodes (other than u, v) whose removal separates v from
/// u, or `None` when the arc `u -> v` exists.
pub fn brute_vertex_cut(n: usize, arcs: &[(usize, usize)], u: usize, v: usize) -> Option<usize> {
    if arcs.contains(&(u, v)) {
        return None;
    }
    let others: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
    let mut best = others.len();
    for bits in 0u64..1 << others.len() {
        let removed: u64 = others.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).fold(0, |m, (_, &x)| m | 1 << x);
        if (removed.count_ones() as usize) < best && reach(n, arcs, u, removed) >> v & 1 == 0 {
            best = removed.count_ones() as usize;
        }
    }
    Some(best)
}

/// k-connectivity by definition: at least k+1 nodes and strongly connected
/// after deleting any set of fewer than k nodes.
pub fn brute_k_connected(n: usize, arcs: &[(usize, usize)], k: usize) -> bool {
    if n < k + 1 {
        return false;
    }
    for removed in 0..1u64 << n {
        if removed.count_ones() as usize >= k {
            continue;
        }
        let alive = full(n) & !removed;
        let start = alive.trailing_zeros() as usize;
        if alive == 0 {
            continue;
        }
        let fwd = reach(n, arcs, start, removed);
        let rev: Vec<(usize, usize)> = arcs.iter().map(|&(a, b)| (b, a)).collect();
        let bwd = reach(n, &rev, start, removed);
        if fwd & alive != alive || bwd & alive != alive {
            return false;
        }
    }
    true
}

/// Tight bisets of a digraph: proper, no arc leaving, boundary size `ell`.
pub fn brute_tight(n: usize, arcs: &[(usize, usize)], ell: usize) -> Vec<(u64, u64)> {
    proper_pairs(n)
        .into_iter()
        .filter(|&(i, o)| (o & !i).count_ones() as usize == ell && !arcs.iter().any(|&a| edge_covers(a, (i, o))))
        .collect()
}

/// Members minimal under componentwise inclusion.
pub fn brute_minimal(members: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let below = |a: (u64, u64), b: (u64, u64)| a != b && a.0 & !b.0 == 0 && a.1 & !b.1 == 0;
    members.iter().copied().filter(|&m| !members.iter().any(|&o| below(o, m))).collect()
}

/// Minimum cost of an edge subset covering every member, by enumerating all
/// subsets. `None` when no subset covers.
pub fn brute_min_cover(members: &[(u64, u64)], edges: &[(usize, usize)], costs: &[Rational]) -> Option<Rational> {
    assert!(edges.len() <= 20, "too many edges for subset enumeration");
    let cover_masks: Vec<u32> = members
        .iter()
        .map(|&m| edges.iter().enumerate().filter(|(_, &e)| edge_covers(e, m)).fold(0u32, |acc, (i, _)| acc | 1 << i))
        .collect();
    let mut best: Option<Rational> = None;
    for subset in 0u32..1 << edges.len() {
        if cover_masks.iter().all(|&c| c & subset != 0) {
            let cost: Rational = (0..edges.len()).filter(|i| subset >> i & 1 == 1).map(|i| costs[i].clone()).sum();
            if best.as_ref().map_or(true, |b| cost < *b) {
                best = Some(cost);
            }
        }
    }
    best
}

pub fn pairs(g: &WeightedDigraph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.tail, e.head)).collect()
}

pub fn arcs(list: &[(usize, usize)]) -> Vec<Edge> {
    list.iter().map(|&(a, b)| Edge::new(a, b)).collect()
}

/// `H(m) = 1 + 1/2 + ... + 1/m`.
pub fn h(m: usize) -> Rational {
    (1..=m).map(|i| Rational::new(1.into(), (i as i64).into())).fold(Rational::zero(), |a, b| a + b)
}

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn floor_log2(x: usize) -> usize {
    assert!(x > 0);
    (usize::BITS - 1 - x.leading_zeros()) as usize
}

/// The ratio stated for the two-sided small-side algorithm on k-regular
/// families: `2 min{1 + H(floor(2n/(n-k+2))), floor(log2 floor((n-k+2)/2))}`.
pub fn stated_regular_ratio(n: usize, k: usize) -> Rational {
    let semi = Rational::one() + h(2 * n / (n - k + 2));
    let halving = int(floor_log2((n - k + 2) / 2) as i64);
    int(2) * semi.min(halving)
}

/// The hitting-set phase ratio with `q = (n-k)/2`:
/// `(n/q) H(floor(n/q)) = (2n/(n-k)) H(floor(2n/(n-k)))`.
pub fn stated_hitting_ratio(n: usize, k: usize) -> Rational {
    q(2 * n as i64, (n - k) as i64) * h(2 * n / (n - k))
}
