//! Seeded instance generators. Every artifact is checked by its own verifier
//! before it is returned; failed attempts are retried with the same stream.

use crate::biset::{Biset, Edge, GroundSet};
use crate::digraph::{is_k_connected_arcs, WeightedDigraph};
use crate::error::{Error, Result};
use crate::exact::verify_semi_intersecting;
use crate::nodeset::NodeSet;
use crate::oracle::{ConnectivityFamily, ExplicitFamily};
use crate::rational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

const ATTEMPTS: usize = 200;
/// Closures larger than this are discarded.
pub const FAMILY_CAP: usize = 60;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn exhausted(what: &str) -> Error {
    Error::invariant(format!("could not generate {what} within {ATTEMPTS} attempts"))
}

/// A random proper biset; each node lands on the boundary with probability
/// `p_boundary`, otherwise inside or outside with equal odds. Nodes in
/// `avoid` always land outside.
fn random_biset(r: &mut ChaCha8Rng, n: usize, p_boundary: f64, avoid: NodeSet) -> Biset {
    let ground = GroundSet::new(n).expect("n checked by callers");
    loop {
        let mut inner = NodeSet::default();
        let mut outer = NodeSet::default();
        for v in 0..n {
            if avoid.contains(v) {
                continue;
            }
            if r.gen_bool(p_boundary) {
                outer.insert(v);
            } else if r.gen_bool(0.5) {
                inner.insert(v);
                outer.insert(v);
            }
        }
        let x = Biset::new(inner, outer).expect("inner is inside outer");
        if x.is_proper(ground) {
            return x;
        }
    }
}

/// Adds meets and joins of pairs accepted by `rule` until nothing changes.
/// `None` if the closure grows past `cap` or produces an improper biset.
fn close(ground: GroundSet, seeds: impl IntoIterator<Item = Biset>, rule: impl Fn(&Biset, &Biset) -> bool, cap: usize) -> Option<Vec<Biset>> {
    let mut members: BTreeSet<Biset> = seeds.into_iter().collect();
    loop {
        let list: Vec<Biset> = members.iter().copied().collect();
        let mut added = false;
        for (i, x) in list.iter().enumerate() {
            for y in &list[i + 1..] {
                if !rule(x, y) {
                    continue;
                }
                for z in [x.meet(y), x.join(y)] {
                    if !z.is_proper(ground) {
                        return None;
                    }
                    added |= members.insert(z);
                }
                if members.len() > cap {
                    return None;
                }
            }
        }
        if !added {
            return Some(members.into_iter().collect());
        }
    }
}

/// A crossing family grown from `size_target` random proper bisets.
pub fn gen_crossing_family(n: usize, seed: u64, size_target: usize) -> Result<ExplicitFamily> {
    let ground = GroundSet::new(n)?;
    if n < 2 {
        return Err(Error::usage("a proper biset needs two nodes"));
    }
    let mut r = rng(seed);
    for _ in 0..ATTEMPTS {
        let seeds: Vec<Biset> = (0..size_target.max(1)).map(|_| random_biset(&mut r, n, 0.2, NodeSet::default())).collect();
        let Some(members) = close(ground, seeds, |x, y| x.crosses(y, ground), FAMILY_CAP) else { continue };
        let fam = ExplicitFamily::new(n, members)?;
        if fam.is_crossing() {
            return Ok(fam);
        }
    }
    Err(exhausted("a crossing family"))
}

/// An intersecting family of at most `cap` members. All outer parts avoid a
/// random node, so joins of intersecting pairs stay proper.
pub fn gen_intersecting_family(n: usize, seed: u64, size_target: usize, cap: usize) -> Result<ExplicitFamily> {
    let ground = GroundSet::new(n)?;
    if n < 2 {
        return Err(Error::usage("an intersecting family needs two nodes"));
    }
    let mut r = rng(seed);
    for _ in 0..ATTEMPTS {
        let sink = NodeSet::singleton(r.gen_range(0..n));
        let seeds: Vec<Biset> = (0..size_target.max(1)).map(|_| random_biset(&mut r, n, 0.2, sink)).collect();
        let Some(members) = close(ground, seeds, |x, y| x.intersects(y), cap) else { continue };
        let fam = ExplicitFamily::new(n, members)?;
        if fam.is_intersecting() {
            return Ok(fam);
        }
    }
    Err(exhausted("an intersecting family"))
}

/// A q-semi-intersecting family: random bisets with inner size at most `q`,
/// closed under meets of intersecting pairs and under joins whose inner part
/// stays within `q`. Half of the attempts keep every outer part away from a
/// common node.
pub fn gen_semi_intersecting_family(n: usize, q: usize, seed: u64, size_target: usize) -> Result<ExplicitFamily> {
    let ground = GroundSet::new(n)?;
    if q == 0 || n < 2 {
        return Err(Error::usage("q-semi-intersecting generation needs q >= 1 and n >= 2"));
    }
    let mut r = rng(seed);
    for _ in 0..ATTEMPTS {
        let avoid = if r.gen_bool(0.5) { NodeSet::singleton(r.gen_range(0..n)) } else { NodeSet::default() };
        let mut seeds = Vec::new();
        while seeds.len() < size_target.max(1) {
            let x = random_biset(&mut r, n, 0.25, avoid);
            if x.inner().len() <= q {
                seeds.push(x);
            }
        }
        let members = close_semi(ground, seeds, q);
        let Some(members) = members else { continue };
        let fam = ExplicitFamily::new(n, members)?;
        if verify_semi_intersecting(&fam, q) {
            return Ok(fam);
        }
    }
    Err(exhausted("a q-semi-intersecting family"))
}

fn close_semi(ground: GroundSet, seeds: Vec<Biset>, q: usize) -> Option<Vec<Biset>> {
    let mut members: BTreeSet<Biset> = seeds.into_iter().collect();
    loop {
        let list: Vec<Biset> = members.iter().copied().collect();
        let mut added = false;
        for (i, x) in list.iter().enumerate() {
            for y in &list[i + 1..] {
                if !x.intersects(y) {
                    continue;
                }
                added |= members.insert(x.meet(y));
                let join = x.join(y);
                if join.inner().len() <= q {
                    if !join.is_proper(ground) {
                        return None;
                    }
                    added |= members.insert(join);
                }
                if members.len() > FAMILY_CAP {
                    return None;
                }
            }
        }
        if !added {
            return Some(members.into_iter().collect());
        }
    }
}

/// A digraph on `n` nodes that is `ell`-connected: the union of `ell` random
/// Hamiltonian cycles, plus random extra edges until the check passes. All
/// edges cost zero. `ell = 0` gives the edgeless graph.
pub fn gen_ell_connected_digraph(n: usize, ell: usize, seed: u64) -> Result<WeightedDigraph> {
    GroundSet::new(n)?;
    if ell > 0 && ell + 1 > n {
        return Err(Error::usage(format!("{n} nodes cannot be {ell}-connected")));
    }
    let mut r = rng(seed);
    let mut arcs: BTreeSet<Edge> = BTreeSet::new();
    for _ in 0..ell {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut r);
        for i in 0..n {
            arcs.insert(Edge::new(order[i], order[(i + 1) % n]));
        }
    }
    let all: Vec<Edge> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| Edge::new(u, v))).collect();
    while !is_k_connected_arcs(n, &arcs.iter().copied().collect::<Vec<_>>(), ell) {
        let missing: Vec<Edge> = all.iter().copied().filter(|e| !arcs.contains(e)).collect();
        arcs.insert(*missing.choose(&mut r).expect("the complete digraph is ell-connected"));
    }
    WeightedDigraph::from_edges(n, arcs.into_iter().map(|e| (e.tail, e.head, rational::int(0))))
}

/// The complete digraph with integer costs drawn from `lo..=hi`.
pub fn gen_complete_costs(n: usize, lo: i64, hi: i64, seed: u64) -> Result<WeightedDigraph> {
    if lo < 0 || lo > hi {
        return Err(Error::usage("costs need 0 <= lo <= hi"));
    }
    let mut r = rng(seed);
    WeightedDigraph::complete(n, |_, _| rational::int(r.gen_range(lo..=hi)))
}

/// `{ S in F : |S| <= q }` for an explicit family.
pub fn small_members(fam: &ExplicitFamily, q: usize) -> ExplicitFamily {
    fam.restrict_small(q)
}

/// A sub-family of the tight family of a random `k`-connected digraph,
/// closed under crossing pairs and under the k-regular rule on both the
/// family and its co-family. Every member has boundary size exactly `k`.
/// Verified crossing, k-regular and co-k-regular.
pub fn gen_regular_family(n: usize, k: usize, seed: u64) -> Result<ExplicitFamily> {
    let ground = GroundSet::new(n)?;
    if k + 2 > n {
        return Err(Error::usage(format!("no proper biset on {n} nodes has boundary {k}")));
    }
    let mut r = rng(seed);
    for _ in 0..ATTEMPTS {
        let g = gen_ell_connected_digraph(n, k, r.gen())?;
        let tight = ConnectivityFamily::new(n, g.edges().to_vec(), k)?.to_explicit();
        if tight.is_empty() {
            continue;
        }
        let pick = r.gen_range(1..=tight.len().min(6));
        let seeds: Vec<Biset> = tight.members().choose_multiple(&mut r, pick).copied().collect();
        let rule = |x: &Biset, y: &Biset| {
            let regular = x.intersects(y) && n - x.inner().union(y.inner()).len() > k;
            let co_regular = !x.outer().union(y.outer()).complement(n).is_empty() && x.outer().intersection(y.outer()).len() > k;
            x.crosses(y, ground) || regular || co_regular
        };
        let Some(members) = close(ground, seeds, rule, FAMILY_CAP) else { continue };
        let fam = ExplicitFamily::new(n, members)?;
        let r = fam.properties(Some(k));
        if r.is_crossing && r.k_regular == Some((k, true, true)) && r.uniform_boundary && fam.gamma() == k {
            return Ok(fam);
        }
    }
    Err(exhausted("a k-regular family"))
}

/// An (S,T)-crossing set family over `V = S ∪ T` together with the partition.
pub fn gen_st_crossing_family(n: usize, seed: u64, size_target: usize) -> Result<(Vec<NodeSet>, NodeSet, NodeSet)> {
    if n < 2 {
        return Err(Error::usage("need at least two nodes"));
    }
    let mut r = rng(seed);
    for _ in 0..ATTEMPTS {
        let mut s = NodeSet::default();
        for v in 0..n {
            if r.gen_bool(0.5) {
                s.insert(v);
            }
        }
        let t = s.complement(n);
        if s.is_empty() || t.is_empty() {
            continue;
        }
        let mut sets: BTreeSet<NodeSet> = BTreeSet::new();
        for _ in 0..ATTEMPTS {
            if sets.len() >= size_target.max(1) {
                break;
            }
            let x: NodeSet = (0..n).filter(|_| r.gen_bool(0.5)).collect();
            if !x.intersection(s).is_empty() && !t.is_subset(x) {
                sets.insert(x);
            }
        }
        let mut closed = true;
        loop {
            let list: Vec<NodeSet> = sets.iter().copied().collect();
            let before = sets.len();
            for (i, &x) in list.iter().enumerate() {
                for &y in &list[i + 1..] {
                    if crate::connectivity::st_cross(x, y, s, t) {
                        sets.insert(x.intersection(y));
                        sets.insert(x.union(y));
                    }
                }
            }
            if sets.len() > FAMILY_CAP {
                closed = false;
                break;
            }
            if sets.len() == before {
                break;
            }
        }
        let list: Vec<NodeSet> = sets.into_iter().collect();
        if closed && crate::connectivity::st_crossing_violation(&list, s, t).is_none() {
            return Ok((list, s, t));
        }
    }
    Err(exhausted("an (S,T)-crossing family"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::verify_semi_intersecting;

    #[test]
    fn crossing_families_are_crossing_and_deterministic() {
        for seed in 0..10 {
            let f = gen_crossing_family(4, seed, 3).unwrap();
            assert!(f.is_crossing());
            assert_eq!(f, gen_crossing_family(4, seed, 3).unwrap());
        }
        assert_eq!(gen_crossing_family(4, 1, 1).unwrap().len(), 1);
    }

    #[test]
    fn closure_of_all_proper_sets_is_itself() {
        let ground = GroundSet::new(3).unwrap();
        let all: Vec<Biset> = (1..7u64).map(|m| Biset::set(NodeSet::from_bits(m))).collect();
        let closed = close(ground, all.clone(), |x, y| x.crosses(y, ground), FAMILY_CAP).unwrap();
        assert_eq!(closed.len(), all.len());
    }

    #[test]
    fn intersecting_and_semi_families() {
        for seed in 0..10 {
            let f = gen_intersecting_family(5, seed, 4, 20).unwrap();
            assert!(f.is_intersecting() && f.len() <= 20);
            let s = gen_semi_intersecting_family(6, 2, seed, 4).unwrap();
            assert!(verify_semi_intersecting(&s, 2));
        }
    }

    #[test]
    fn digraphs() {
        let g = gen_ell_connected_digraph(4, 1, 3).unwrap();
        assert!(crate::digraph::is_k_connected(&g, 1));
        assert_eq!(gen_ell_connected_digraph(4, 0, 3).unwrap().edge_count(), 0);
        let g = gen_ell_connected_digraph(6, 2, 9).unwrap();
        assert!(crate::digraph::is_k_connected(&g, 2));
    }

    #[test]
    fn regular_families() {
        let f = gen_regular_family(6, 2, 5).unwrap();
        let r = f.properties(Some(2));
        assert!(r.is_crossing && r.uniform_boundary);
        assert_eq!(r.k_regular, Some((2, true, true)));
    }

    #[test]
    fn st_families() {
        for seed in 0..5 {
            let (sets, s, t) = gen_st_crossing_family(5, seed, 3).unwrap();
            assert!(crate::connectivity::st_crossing_violation(&sets, s, t).is_none());
        }
    }
}
