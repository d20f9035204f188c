//! Query access to biset-families.
//!
//! Algorithms never enumerate a family. They ask an oracle for the unique
//! minimal member of `F^J(u,v) = { S in F^J : u in S, v outside S+ }` and for
//! the unique minimal member of its co-family, where `F^J` is the set of
//! members left uncovered by the edges `J`. Everything else (cores, branch
//! families, co-families, anchored sub-families) is assembled from these two
//! queries by the wrappers in [`derived`].

mod connectivity;
mod derived;
mod explicit;

pub use connectivity::ConnectivityFamily;
pub use derived::{branch_co_cores, core_branch, restrict_small, CoFamily, InAnchored, Masked, SmallInner};
pub use explicit::{ExplicitFamily, FamilyReport};

use crate::biset::{minimal_members, Biset, Edge, GroundSet};
use crate::error::{Error, Result};
use serde::Serialize;

/// Structure an oracle's constructor asserts about its family. Algorithms
/// trust these; explicit families can be checked with
/// [`ExplicitFamily::properties`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Claims {
    pub crossing: bool,
    pub intersecting: bool,
    /// Upper bound on boundary sizes, `γ(F)`.
    pub gamma: Option<usize>,
}

pub trait FamilyOracle {
    fn ground(&self) -> GroundSet;

    fn claims(&self) -> Claims;

    /// Minimal member of `F^J(u,v)`, or `None` when that family is empty.
    fn min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>>;

    /// Minimal member of the co-family of `F^J(u,v)`, i.e. the co-biset of the
    /// largest member of `F^J(u,v)`.
    fn co_min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>>;

    /// The cores of `F^J`: minimal members among all pairwise minimal cores.
    /// At most `n(n-1)` of them for crossing families.
    fn cores(&self, residual: &[Edge]) -> Result<Vec<Biset>> {
        pairwise_cores(self, residual)
    }
}

impl<T: FamilyOracle + ?Sized> FamilyOracle for &T {
    fn ground(&self) -> GroundSet {
        (**self).ground()
    }
    fn claims(&self) -> Claims {
        (**self).claims()
    }
    fn min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        (**self).min_core(u, v, residual)
    }
    fn co_min_core(&self, u: usize, v: usize, residual: &[Edge]) -> Result<Option<Biset>> {
        (**self).co_min_core(u, v, residual)
    }
    fn cores(&self, residual: &[Edge]) -> Result<Vec<Biset>> {
        (**self).cores(residual)
    }
}

pub fn pairwise_cores<O: FamilyOracle + ?Sized>(oracle: &O, residual: &[Edge]) -> Result<Vec<Biset>> {
    let n = oracle.ground().n();
    let mut found = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v {
                if let Some(c) = oracle.min_core(u, v, residual)? {
                    found.push(c);
                }
            }
        }
    }
    Ok(minimal_members(found))
}

/// Number of cores `ν(F^J)`.
pub fn nu<O: FamilyOracle + ?Sized>(oracle: &O, residual: &[Edge]) -> Result<usize> {
    Ok(oracle.cores(residual)?.len())
}

pub(crate) fn check_pair(ground: GroundSet, u: usize, v: usize) -> Result<()> {
    ground.check_node(u)?;
    ground.check_node(v)?;
    if u == v {
        return Err(Error::usage(format!("core query needs distinct nodes, got ({u},{u})")));
    }
    Ok(())
}

/// Returns the only candidate, `None` for none, and an ambiguity error otherwise.
pub(crate) fn unique_minimal(u: usize, v: usize, candidates: Vec<Biset>) -> Result<Option<Biset>> {
    let mut mins = minimal_members(candidates);
    match mins.len() {
        0 => Ok(None),
        1 => Ok(mins.pop()),
        count => Err(Error::Ambiguous { u, v, count }),
    }
}
