use super::{check_pair, Claims, ExplicitFamily, FamilyOracle};
use crate::biset::{reverse_all, Biset, Edge, GroundSet};
use crate::digraph::{is_k_connected_arcs, min_vertex_cut, VertexCut};
use crate::error::{Error, Result};

/// The tight bisets of an `ℓ`-connected digraph `G0`: proper `S` with no edge
/// of `G0` leaving it and `|Γ(S)| = ℓ`.
///
/// Membership is never enumerated. A query for the pair `(u, v)` under `J` is
/// a single max-flow on `G0 ∪ J`; the family is non-empty for the pair exactly
/// when the minimum `u -> v` vertex cut has size `ℓ`, and the inner-minimal
/// cut side is its unique minimal member.
#[derive(Debug, Clone)]
pub struct ConnectivityFamily {
    ground: GroundSet,
    base: Vec<Edge>,
    level: usize,
}

impl ConnectivityFamily {
    pub fn new(n: usize, base: Vec<Edge>, level: usize) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        for &e in &base {
            ground.check_edge(e)?;
        }
        if !is_k_connected_arcs(n, &base, level) {
            return Err(Error::usage(format!("base graph is not {level}-connected")));
        }
        Ok(ConnectivityFamily { ground, base, level })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn base(&self) -> &[Edge] {
        &self.base
    }

    fn tight_core(&self, arcs: &[Edge], u: usize, v: usize) -> Result<Option<Biset>> {
        match min_vertex_cut(self.ground.n(), arcs, u, v)? {
            VertexCut::Adjacent => Ok(None),
            VertexCut::Cut { value, witness } if value == self.level => Ok(Some(witness)),
            VertexCut::Cut { value, .. } if value > self.level => Ok(None),
            VertexCut::Cut { value, .. } => Err(Error::invariant(format!(
                "({u},{v}) cut of size {value} below level {}",
                self.level
            ))),
        }
    }

    fn with(&self, residual: &[Edge]) -> Vec<Edge> {
        let mut arcs = self.base.clone();
        arcs.extend_from_slice(residual);
        arcs
    }

    /// A tight biset is proper, has no base edge leaving it, and has exactly
    /// `ℓ` boundary nodes.
    pub fn is_member(&self, x: &Biset) -> bool {
        x.is_proper(self.ground)
            && x.boundary().len() == self.level
            && !self.base.iter().any(|e| e.covers(x))
    }

    /// Every tight biset, by enumeration of all proper bisets. Small `n` only.
    pub fn to_explicit(&self) -> ExplicitFamily {
        let members = self.ground.proper_bisets().into_iter().filter(|x| self.is_member(x));
        ExplicitFamily::new(self.ground.n(), members).expect("proper bisets are distinct")
    }
}

impl FamilyOracle for ConnectivityFamily {
    fn ground(&self) -> GroundSet {
        self.ground
    }

    fn claims(&self) -> Claims {
        Claims { crossing: true, intersecting: false, gamma: Some(self.level) }
    }

    fn min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        check_pair(self.ground, u, v)?;
        self.tight_core(&self.with(residual), u, v)
    }

    /// The co-family of a tight family is the tight family of the reversed
    /// graph, so this is a `v -> u` cut there.
    fn co_min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        check_pair(self.ground, u, v)?;
        self.tight_core(&reverse_all(&self.with(residual)), v, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> ConnectivityFamily {
        ConnectivityFamily::new(4, (0..4).map(|i| Edge::new(i, (i + 1) % 4)).collect(), 1).unwrap()
    }

    #[test]
    fn min_core_on_four_cycle() {
        assert_eq!(c4().min_core(0, 2, &[]).unwrap(), Some(Biset::from_lists(&[0], &[0, 1])));
        assert_eq!(c4().min_core(0, 1, &[]).unwrap(), None);
    }

    #[test]
    fn cores_of_four_cycle() {
        let expected: Vec<Biset> = (0..4).map(|i| Biset::from_lists(&[i], &[i, (i + 1) % 4])).collect();
        let mut got = c4().cores(&[]).unwrap();
        got.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(got, want);
        assert_eq!(c4().to_explicit().scan_cores(&[]), got);
    }

    #[test]
    fn co_min_core_on_four_cycle() {
        let f = c4();
        let g = f.ground();
        // Largest tight biset with 2 inside and 0 outside is ({1,2},{1,2,3}).
        let co = f.co_min_core(2, 0, &[]).unwrap().unwrap();
        assert_eq!(co, Biset::from_lists(&[1, 2], &[1, 2, 3]).co(g));
        assert!(f.to_explicit().has(&co.co(g)));
    }

    #[test]
    fn rejects_insufficient_base() {
        let path = vec![Edge::new(0, 1), Edge::new(1, 2)];
        assert!(ConnectivityFamily::new(3, path, 1).is_err());
    }
}
