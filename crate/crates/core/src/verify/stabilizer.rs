//! Stabilizer specifications shared by the manifest and the command line.
//!
//! Grammar:
//! * `point:K`: stabilizer of point `K` (1-based).
//! * `census:LABEL`: first class representative of a Sylow-7 census for the
//!   stabilizer type `LABEL`, e.g. `census:F_42xZ_2`.
//! * otherwise: generators in cycle notation separated by `;`.

use std::fmt;
use std::str::FromStr;

use crate::atlas::GroupType;
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::subgroups::{CensusOptions, SylowLocalization};

use super::VerifyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilizerSpec {
    Point(usize),
    Census(GroupType),
    Generators(Vec<String>),
}

impl FromStr for StabilizerSpec {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |why: &str| VerifyError::InvalidStabilizer(format!("{s:?}: {why}"));
        if let Some(k) = s.strip_prefix("point:") {
            let k: usize = k.trim().parse().map_err(|_| bad("point must be a positive integer"))?;
            if k == 0 {
                return Err(bad("points are 1-based"));
            }
            return Ok(StabilizerSpec::Point(k));
        }
        if let Some(label) = s.strip_prefix("census:") {
            let t: GroupType = label.trim().parse().map_err(|_| bad("unknown stabilizer type"))?;
            return Ok(StabilizerSpec::Census(t));
        }
        let gens: Vec<String> = s
            .split(';')
            .map(str::trim)
            .filter(|g| !g.is_empty())
            .map(String::from)
            .collect();
        if gens.is_empty() {
            return Err(bad("no generators"));
        }
        Ok(StabilizerSpec::Generators(gens))
    }
}

impl fmt::Display for StabilizerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilizerSpec::Point(k) => write!(f, "point:{k}"),
            StabilizerSpec::Census(t) => write!(f, "census:{t}"),
            StabilizerSpec::Generators(g) => write!(f, "{}", g.join(";")),
        }
    }
}

impl StabilizerSpec {
    /// Builds the stabilizer inside `g`. A census spec uses `localize` to get
    /// the Sylow-7 data of `g`, so callers may cache it.
    pub fn resolve_with(
        &self,
        g: &PermGroup,
        localize: &dyn Fn() -> Result<std::sync::Arc<SylowLocalization>, VerifyError>,
    ) -> Result<PermGroup, VerifyError> {
        match self {
            StabilizerSpec::Point(k) => {
                if *k > g.degree() {
                    return Err(VerifyError::InvalidStabilizer(format!(
                        "point {k} exceeds degree {}",
                        g.degree()
                    )));
                }
                Ok(g.point_stabilizer(k - 1)?)
            }
            StabilizerSpec::Census(t) => {
                let census = localize()?.census(*t)?;
                census
                    .classes
                    .into_iter()
                    .next()
                    .map(|c| c.representative)
                    .ok_or_else(|| VerifyError::NoSuchSubgroup {
                        group: g.name().to_string(),
                        label: t.label().to_string(),
                    })
            }
            StabilizerSpec::Generators(gens) => {
                let perms = gens
                    .iter()
                    .map(|c| Permutation::parse_cycles(c, g.degree()))
                    .collect::<Result<Vec<_>, _>>()?;
                let h = PermGroup::new(g.degree(), perms)?;
                if !h.is_subgroup_of(g)? {
                    return Err(VerifyError::InvalidStabilizer(format!(
                        "generators {} do not lie in {}",
                        self,
                        g.name()
                    )));
                }
                Ok(h)
            }
        }
    }

    /// Resolves without caching.
    pub fn resolve(&self, g: &PermGroup, opts: &CensusOptions) -> Result<PermGroup, VerifyError> {
        self.resolve_with(g, &|| Ok(std::sync::Arc::new(SylowLocalization::new(g, opts)?)))
    }
}
