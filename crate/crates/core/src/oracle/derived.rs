//! Families built from another oracle's queries.

use super::{check_pair, Claims, FamilyOracle};
use crate::biset::{minimal_members, reverse_all, Biset, Edge, GroundSet};
use crate::error::{Error, Result};

/// The co-family `{ (V \ S+, V \ S) : S in F }`. An edge set `J` covers a
/// co-biset exactly when the reversed `J` covers the original biset.
pub struct CoFamily<'a> {
    base: &'a dyn FamilyOracle,
}

impl<'a> CoFamily<'a> {
    pub fn new(base: &'a dyn FamilyOracle) -> Self {
        CoFamily { base }
    }
}

impl FamilyOracle for CoFamily<'_> {
    fn ground(&self) -> GroundSet {
        self.base.ground()
    }

    fn claims(&self) -> Claims {
        let c = self.base.claims();
        Claims { crossing: c.crossing, intersecting: false, gamma: c.gamma }
    }

    fn min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        self.base.co_min_core(v, u, &reverse_all(residual))
    }

    fn co_min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        self.base.min_core(v, u, &reverse_all(residual))
    }
}

/// `F^K` for a fixed edge set `K`: every query sees `J ∪ K`.
pub struct Masked<'a> {
    base: &'a dyn FamilyOracle,
    mask: Vec<Edge>,
}

impl<'a> Masked<'a> {
    pub fn new(base: &'a dyn FamilyOracle, mask: Vec<Edge>) -> Self {
        Masked { base, mask }
    }

    pub fn mask(&self) -> &[Edge] {
        &self.mask
    }

    fn with(&self, residual: &[Edge]) -> Vec<Edge> {
        let mut all = self.mask.clone();
        all.extend_from_slice(residual);
        all
    }
}

impl FamilyOracle for Masked<'_> {
    fn ground(&self) -> GroundSet {
        self.base.ground()
    }

    fn claims(&self) -> Claims {
        self.base.claims()
    }

    fn min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        self.base.min_core(u, v, &self.with(residual))
    }

    fn co_min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        self.base.co_min_core(u, v, &self.with(residual))
    }

    fn cores(&self, residual: &[Edge]) -> Result<Vec<Biset>> {
        self.base.cores(&self.with(residual))
    }
}

/// Members of a crossing family whose outer part avoids `anchor`:
/// `{ S in F : anchor in V \ S+ }`.
///
/// Any two members that intersect also cross (their outer parts both miss
/// `anchor`), so this sub-family is intersecting. Its cores are the minimal
/// members among the pair cores `F(u, anchor)`.
pub struct InAnchored<'a> {
    base: &'a dyn FamilyOracle,
    anchor: usize,
}

impl<'a> InAnchored<'a> {
    pub fn new(base: &'a dyn FamilyOracle, anchor: usize) -> Result<Self> {
        base.ground().check_node(anchor)?;
        Ok(InAnchored { base, anchor })
    }
}

impl FamilyOracle for InAnchored<'_> {
    fn ground(&self) -> GroundSet {
        self.base.ground()
    }

    fn claims(&self) -> Claims {
        let c = self.base.claims();
        Claims { crossing: c.crossing, intersecting: c.crossing, gamma: c.gamma }
    }

    /// The pair cores of `F(u, v)` and `F(u, anchor)` cross whenever both
    /// outer parts miss `v`, so their join is the minimal member with `u`
    /// inside and both `v` and `anchor` outside.
    fn min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        check_pair(self.ground(), u, v)?;
        if u == self.anchor {
            return Ok(None);
        }
        let Some(to_anchor) = self.base.min_core(u, self.anchor, residual)? else {
            return Ok(None);
        };
        if v == self.anchor {
            return Ok(Some(to_anchor));
        }
        let Some(to_v) = self.base.min_core(u, v, residual)? else {
            return Ok(None);
        };
        let joined = to_anchor.join(&to_v);
        if joined.outer().contains(v) || joined.outer().contains(self.anchor) {
            return Ok(None);
        }
        Ok(Some(joined))
    }

    fn co_min_core(&self, _u: usize, _v: usize, _residual: &[Edge]) -> Result<Option<Biset>> {
        Err(Error::Unsupported("co-family of an anchored sub-family"))
    }

    fn cores(&self, residual: &[Edge]) -> Result<Vec<Biset>> {
        let mut found = Vec::new();
        for u in self.ground().nodes().filter(|&u| u != self.anchor) {
            if let Some(c) = self.base.min_core(u, self.anchor, residual)? {
                found.push(c);
            }
        }
        Ok(minimal_members(found))
    }
}

/// `{ S in F : |S| <= q }` over a crossing `F`.
///
/// Sound because the pair core of a crossing family is contained in every
/// member for that pair: if it is too large, so is every other member.
pub struct SmallInner<'a> {
    base: &'a dyn FamilyOracle,
    q: usize,
}

impl<'a> SmallInner<'a> {
    pub fn new(base: &'a dyn FamilyOracle, q: usize) -> Self {
        SmallInner { base, q }
    }

    pub fn q(&self) -> usize {
        self.q
    }
}

impl FamilyOracle for SmallInner<'_> {
    fn ground(&self) -> GroundSet {
        self.base.ground()
    }

    fn claims(&self) -> Claims {
        let c = self.base.claims();
        Claims { crossing: false, intersecting: false, gamma: c.gamma }
    }

    fn min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        Ok(self.base.min_core(u, v, residual)?.filter(|c| c.inner().len() <= self.q))
    }

    fn co_min_core(&self, _u: usize, _v: usize, _residual: &[Edge]) -> Result<Option<Biset>> {
        Err(Error::Unsupported("co-family of a size-restricted sub-family"))
    }

    fn cores(&self, residual: &[Edge]) -> Result<Vec<Biset>> {
        Ok(self.base.cores(residual)?.into_iter().filter(|c| c.inner().len() <= self.q).collect())
    }
}

/// Oracle for the sub-family `{ S in F : |S| <= q }`.
pub fn restrict_small(oracle: &dyn FamilyOracle, q: usize) -> SmallInner<'_> {
    SmallInner::new(oracle, q)
}

/// Oracle for `F^J(C)`: members of `F^J` containing the core `C` and no
/// other `F^J`-core. Realised by adding, for every other core `S`, all edges
/// from `S` to `V \ S+` to the residual edge set.
pub fn core_branch<'a>(oracle: &'a dyn FamilyOracle, core: &Biset, residual: &[Edge]) -> Result<Masked<'a>> {
    let cores = oracle.cores(residual)?;
    if !cores.contains(core) {
        return Err(Error::usage(format!("{core} is not a core of the residual family")));
    }
    let ground = oracle.ground();
    let mut mask = residual.to_vec();
    for other in cores.iter().filter(|c| *c != core) {
        mask.extend(other.covering_edges(ground));
    }
    mask.sort();
    mask.dedup();
    Ok(Masked::new(oracle, mask))
}

/// Cores of the co-family of `F^J(C)`. This family is intersecting; its cores
/// come from one query per node `v`, all anchored at a fixed `u` in `C`.
pub fn branch_co_cores(oracle: &dyn FamilyOracle, core: &Biset, residual: &[Edge]) -> Result<Vec<Biset>> {
    let branch = core_branch(oracle, core, residual)?;
    let co = CoFamily::new(&branch);
    let u = core.inner().first().expect("cores are proper");
    InAnchored::new(&co, u)?.cores(&[])
}
