use super::{check_pair, unique_minimal, Claims, FamilyOracle};
use crate::biset::{is_covered, minimal_members, Biset, Edge, GroundSet};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// A family given by the list of its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitFamily {
    ground: GroundSet,
    members: Vec<Biset>,
    index: HashSet<Biset>,
}

/// Exhaustively verified structure of an explicit family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub size: usize,
    pub is_crossing: bool,
    pub is_intersecting: bool,
    pub is_intersection_closed: bool,
    /// `(k, F is k-regular, co-family is k-regular)` when a `k` was asked for.
    pub k_regular: Option<(usize, bool, bool)>,
    pub gamma: usize,
    /// Every member has boundary size exactly `gamma`.
    pub uniform_boundary: bool,
    /// A pair violating the first failed closure rule, for diagnostics.
    pub witness: Option<(Biset, Biset)>,
}

impl ExplicitFamily {
    /// Members must be proper and distinct; they are stored sorted.
    pub fn new(n: usize, members: impl IntoIterator<Item = Biset>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut list: Vec<Biset> = members.into_iter().collect();
        for x in &list {
            ground.check_biset(x)?;
            if !x.is_proper(ground) {
                return Err(Error::usage(format!("{x} is not a proper biset on {n} nodes")));
            }
        }
        list.sort();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::usage(format!("duplicate member {}", w[0])));
        }
        let index = list.iter().copied().collect();
        Ok(ExplicitFamily { ground, members: list, index })
    }

    pub fn ground_set(&self) -> GroundSet {
        self.ground
    }

    pub fn members(&self) -> &[Biset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn has(&self, x: &Biset) -> bool {
        self.index.contains(x)
    }

    /// Members not covered by `residual`.
    pub fn residual(&self, residual: &[Edge]) -> Vec<Biset> {
        self.members.iter().copied().filter(|x| !is_covered(residual, x)).collect()
    }

    pub fn residual_family(&self, residual: &[Edge]) -> ExplicitFamily {
        Self::from_sorted(self.ground, self.residual(residual))
    }

    /// Cores by direct scan of the residual members.
    pub fn scan_cores(&self, residual: &[Edge]) -> Vec<Biset> {
        minimal_members(self.residual(residual))
    }

    pub fn co_family(&self) -> ExplicitFamily {
        let mut list: Vec<Biset> = self.members.iter().map(|x| x.co(self.ground)).collect();
        list.sort();
        Self::from_sorted(self.ground, list)
    }

    /// Members with inner part of size at most `q`.
    pub fn restrict_small(&self, q: usize) -> ExplicitFamily {
        Self::from_sorted(self.ground, self.members.iter().copied().filter(|x| x.inner().len() <= q).collect())
    }

    pub fn filter(&self, keep: impl Fn(&Biset) -> bool) -> ExplicitFamily {
        Self::from_sorted(self.ground, self.members.iter().copied().filter(|x| keep(x)).collect())
    }

    fn from_sorted(ground: GroundSet, members: Vec<Biset>) -> ExplicitFamily {
        let index = members.iter().copied().collect();
        ExplicitFamily { ground, members, index }
    }

    pub fn gamma(&self) -> usize {
        self.members.iter().map(|x| x.boundary().len()).max().unwrap_or(0)
    }

    /// First pair satisfying `applies` whose meet or join is missing.
    fn closure_violation(&self, applies: impl Fn(&Biset, &Biset) -> bool, need_join: bool) -> Option<(Biset, Biset)> {
        for (i, x) in self.members.iter().enumerate() {
            for y in &self.members[i + 1..] {
                if applies(x, y) && (!self.has(&x.meet(y)) || (need_join && !self.has(&x.join(y)))) {
                    return Some((*x, *y));
                }
            }
        }
        None
    }

    pub fn crossing_violation(&self) -> Option<(Biset, Biset)> {
        let g = self.ground;
        self.closure_violation(|x, y| x.crosses(y, g), true)
    }

    pub fn intersecting_violation(&self) -> Option<(Biset, Biset)> {
        self.closure_violation(|x, y| x.intersects(y), true)
    }

    pub fn intersection_closed_violation(&self) -> Option<(Biset, Biset)> {
        self.closure_violation(|x, y| x.intersects(y), false)
    }

    /// Pairs that intersect and leave at least `k + 1` nodes outside the union
    /// of their inner parts.
    pub fn regular_violation(&self, k: usize) -> Option<(Biset, Biset)> {
        let n = self.ground.n();
        self.closure_violation(|x, y| x.intersects(y) && n - x.inner().union(y.inner()).len() > k, true)
    }

    pub fn is_crossing(&self) -> bool {
        self.crossing_violation().is_none()
    }

    pub fn is_intersecting(&self) -> bool {
        self.intersecting_violation().is_none()
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        self.regular_violation(k).is_none()
    }

    pub fn properties(&self, k: Option<usize>) -> FamilyReport {
        let crossing = self.crossing_violation();
        let intersecting = self.intersecting_violation();
        let closed = self.intersection_closed_violation();
        let gamma = self.gamma();
        let k_regular = k.map(|k| (k, self.is_k_regular(k), self.co_family().is_k_regular(k)));
        FamilyReport {
            size: self.len(),
            is_crossing: crossing.is_none(),
            is_intersecting: intersecting.is_none(),
            is_intersection_closed: closed.is_none(),
            k_regular,
            gamma,
            uniform_boundary: self.members.iter().all(|x| x.boundary().len() == gamma),
            witness: crossing.or(intersecting).or(closed),
        }
    }

    fn pair_candidates<'a>(&'a self, u: usize, v: usize, residual: &'a [Edge]) -> impl Iterator<Item = &'a Biset> + 'a {
        self.members
            .iter()
            .filter(move |x| x.inner().contains(u) && !x.outer().contains(v) && !is_covered(residual, x))
    }
}

impl FamilyOracle for ExplicitFamily {
    fn ground(&self) -> GroundSet {
        self.ground
    }

    fn claims(&self) -> Claims {
        Claims {
            crossing: self.is_crossing(),
            intersecting: self.is_intersecting(),
            gamma: Some(self.gamma()),
        }
    }

    fn min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        check_pair(self.ground, u, v)?;
        unique_minimal(u, v, self.pair_candidates(u, v, residual).copied().collect())
    }

    fn co_min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        check_pair(self.ground, u, v)?;
        let g = self.ground;
        unique_minimal(u, v, self.pair_candidates(u, v, residual).map(|x| x.co(g)).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    n: usize,
    bisets: Vec<Biset>,
}

impl Serialize for ExplicitFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyRepr { n: self.ground.n(), bisets: self.members.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExplicitFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FamilyRepr::deserialize(d)?;
        ExplicitFamily::new(repr.n, repr.bisets).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nodeset::NodeSet;

    fn b(inner: &[usize], outer: &[usize]) -> Biset {
        Biset::from_lists(inner, outer)
    }

    fn two_singletons() -> ExplicitFamily {
        ExplicitFamily::new(4, [b(&[0], &[0]), b(&[1], &[1]), b(&[0, 1], &[0, 1])]).unwrap()
    }

    fn all_proper_sets(n: usize) -> ExplicitFamily {
        let full = (1u64 << n) - 1;
        ExplicitFamily::new(n, (1..full).map(|m| Biset::set(NodeSet::from_bits(m)))).unwrap()
    }

    #[test]
    fn min_core_examples() {
        let f = two_singletons();
        assert_eq!(f.min_core(0, 2, &[]).unwrap(), Some(b(&[0], &[0])));
        assert_eq!(f.min_core(0, 2, &[Edge::new(0, 2)]).unwrap(), None);
        assert!(f.min_core(1, 1, &[]).is_err());
    }

    #[test]
    fn co_min_core_maps_then_scans() {
        let f = two_singletons();
        let g = f.ground_set();
        // F(0,2) = {({0},{0}), ({0,1},{0,1})}; the co-family minimum is the
        // co-biset of the larger one.
        assert_eq!(f.co_min_core(0, 2, &[]).unwrap(), Some(b(&[0, 1], &[0, 1]).co(g)));
        assert_eq!(f.co_min_core(0, 2, &[Edge::new(0, 3)]).unwrap(), None);
    }

    #[test]
    fn cores_examples() {
        let f = two_singletons();
        assert_eq!(f.cores(&[]).unwrap(), vec![b(&[0], &[0]), b(&[1], &[1])]);
        let all: Vec<Edge> = (0..4).flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| Edge::new(u, v))).collect();
        assert!(f.cores(&all).unwrap().is_empty());
    }

    #[test]
    fn duplicate_and_improper_members_rejected() {
        assert!(ExplicitFamily::new(3, [b(&[0], &[0]), b(&[0], &[0])]).is_err());
        assert!(ExplicitFamily::new(3, [b(&[], &[0])]).is_err());
        assert!(ExplicitFamily::new(3, [b(&[0], &[0, 1, 2])]).is_err());
        assert!(ExplicitFamily::new(3, [b(&[0], &[0, 5])]).is_err());
    }

    #[test]
    fn properties_examples() {
        assert!(two_singletons().properties(None).is_crossing);
        let singles = ExplicitFamily::new(3, (0..3).map(|v| b(&[v], &[v]))).unwrap();
        let r = singles.properties(None);
        assert!(r.is_intersecting);
        assert_eq!(r.gamma, 0);
        let r = all_proper_sets(4).properties(Some(0));
        assert!(r.is_crossing);
        assert_eq!(r.k_regular, Some((0, true, true)));
    }

    #[test]
    fn non_crossing_family_is_ambiguous() {
        // The two members cross but their meet ({0},{0}) is missing, so the
        // pair (0, 3) has two incomparable minimal members.
        let f = ExplicitFamily::new(4, [b(&[0, 1], &[0, 1]), b(&[0, 2], &[0, 2])]).unwrap();
        assert!(!f.is_crossing());
        assert!(matches!(f.min_core(0, 3, &[]), Err(Error::Ambiguous { count: 2, .. })));
    }

    #[test]
    fn restrict_small_filters_by_inner_size() {
        let f = two_singletons();
        assert_eq!(f.restrict_small(1).len(), 2);
        assert_eq!(f.restrict_small(2), f);
    }

    #[test]
    fn json_round_trip() {
        let f = two_singletons();
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.starts_with(r#"{"n":4,"bisets":[{"inner":[0],"outer":[0]}"#));
        assert_eq!(serde_json::from_str::<ExplicitFamily>(&text).unwrap(), f);
    }
}
