//! Subgroup censuses up to conjugacy.
//!
//! * [`enumerate_solvable_subgroups`]: cyclic extension over the whole
//!   ambient group (order at most 10⁴).
//! * [`subgroups_with_normal_sylow7`]: census of one stabilizer type, localized
//!   to the normalizer of a Sylow 7-subgroup, for ambient groups up to the scan
//!   budget.
//! * [`feasible_elements`]: 2-elements defining 7-valent arc-transitive coset
//!   graphs.

mod extension;
mod feasible;
pub mod iso;
mod sylow;
mod table;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atlas::GroupType;
use crate::group::{GroupError, PermGroup};

pub use feasible::{
    feasible_elements, FeasibilityChecks, FeasibleElement, FeasibleSearch, FeasibleSummary,
};
pub use iso::{is_isomorphic_to, iso_type_identify, CayleyTable, Fingerprint, IsoLabel};
pub use sylow::{
    subgroups_with_normal_sylow7, CensusOptions, SylowCensus, SylowCensusSummary, SylowLocalization,
};

use extension::cyclic_extension;
use table::ElementTable;

/// Largest ambient order for full cyclic extension.
pub const MAX_EXTENSION_AMBIENT: u64 = 10_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("ambient group of order {order} exceeds the limit {limit}")]
    AmbientTooLarge { order: u64, limit: u64 },
    #[error("group of order {order} exceeds the isomorphism-test limit {limit}")]
    TooLarge { order: u64, limit: u64 },
    #[error("{0} does not have a unique Sylow 7-subgroup")]
    PreconditionN7(GroupType),
    #[error("7 does not divide the ambient order {0}")]
    NoSevenTorsion(u64),
    #[error("Sylow 7-subgroups of the ambient group (order {0}) are not of order 7")]
    Sylow7NotCyclicOfOrder7(u64),
    #[error("no element of order 7 found in {0} random draws")]
    SevenElementNotFound(usize),
    #[error("stabilizer order {0} is not divisible by 7")]
    StabilizerOrderNotDivisibleBy7(u64),
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("class-size check failed: {conjugates} conjugates, normalizer order {normalizer}, ambient order {ambient}")]
    ClassSizeMismatch {
        conjugates: u64,
        normalizer: u64,
        ambient: u64,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    CyclicExtension,
    Sylow7Localized,
}

/// One conjugacy class of subgroups, given by a representative.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub representative: PermGroup,
    pub ambient: String,
    pub order: u64,
    pub iso_label: String,
    pub iso_type: Option<GroupType>,
    /// Number of conjugates in the ambient group.
    pub class_size: u64,
    /// Order of the normalizer of the representative in the ambient group.
    pub normalizer_order: u64,
    pub method: Method,
}

/// Serializable summary of a [`SubgroupClass`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub order: u64,
    pub iso_label: String,
    pub class_size: u64,
    pub normalizer_order: u64,
    pub method: Method,
    pub generators: Vec<String>,
}

impl SubgroupClass {
    pub fn summary(&self) -> ClassSummary {
        ClassSummary {
            order: self.order,
            iso_label: self.iso_label.clone(),
            class_size: self.class_size,
            normalizer_order: self.normalizer_order,
            method: self.method,
            generators: self.representative.generator_strings(),
        }
    }

    /// Re-checks membership, Lagrange, the class-size identity and the label.
    pub fn validate(&self, ambient: &PermGroup) -> Result<bool, SearchError> {
        let n = ambient.order()?;
        let ok = self.representative.is_subgroup_of(ambient)?
            && self.representative.order()? == self.order
            && n % self.order == 0
            && self.class_size * self.normalizer_order == n;
        if !ok {
            return Ok(false);
        }
        Ok(match self.iso_type {
            Some(t) => is_isomorphic_to(&self.representative, t)?,
            None => true,
        })
    }
}

/// Label for a group: the atlas type name when orders allow a match,
/// otherwise the fingerprint. Groups above the iso limit get a bare order.
pub(crate) fn label_of(h: &PermGroup) -> Result<(String, Option<GroupType>), SearchError> {
    let order = h.order()?;
    if order > iso::MAX_ISO_ORDER {
        return Ok((format!("other(order={order})"), None));
    }
    let label = iso_type_identify(h)?;
    Ok((label.to_string(), label.group_type()))
}

fn check_class_size(conjugates: u64, normalizer: u64, ambient: u64) -> Result<(), SearchError> {
    if conjugates * normalizer != ambient {
        return Err(SearchError::ClassSizeMismatch {
            conjugates,
            normalizer,
            ambient,
        });
    }
    Ok(())
}

fn run_extension(
    g: &PermGroup,
    allowed: &dyn Fn(u64) -> bool,
) -> Result<Vec<SubgroupClass>, SearchError> {
    let order = g.order()?;
    if order > MAX_EXTENSION_AMBIENT {
        return Err(SearchError::AmbientTooLarge {
            order,
            limit: MAX_EXTENSION_AMBIENT,
        });
    }
    let table = ElementTable::new(g, MAX_EXTENSION_AMBIENT)?;
    let records = cyclic_extension(&table, &[], allowed);
    let mut out = Vec::with_capacity(records.len());
    for r in records {
        check_class_size(r.conjugates, r.normalizer_order, order)?;
        let rep = table.group(&r.gens);
        let (iso_label, iso_type) = label_of(&rep)?;
        out.push(SubgroupClass {
            order: r.elements.len() as u64,
            representative: rep,
            ambient: g.name().to_string(),
            iso_label,
            iso_type,
            class_size: r.conjugates,
            normalizer_order: r.normalizer_order,
            method: Method::CyclicExtension,
        });
    }
    out.sort_by_key(|c| c.order);
    Ok(out)
}

/// All solvable subgroups of order at most `max_order`, up to conjugacy,
/// sorted by order (stable with respect to discovery order).
pub fn enumerate_solvable_subgroups(
    g: &PermGroup,
    max_order: u64,
) -> Result<Vec<SubgroupClass>, SearchError> {
    run_extension(g, &|k| k <= max_order)
}

/// All solvable subgroups whose order divides `n`, up to conjugacy. Complete
/// for every solvable subgroup of order dividing `n`, since each step of a
/// prime-index series again has order dividing `n`.
pub fn enumerate_solvable_subgroups_dividing(
    g: &PermGroup,
    n: u64,
) -> Result<Vec<SubgroupClass>, SearchError> {
    run_extension(g, &|k| n % k == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas;
    use crate::perm::Permutation;
    use std::collections::{BTreeMap, HashSet};

    /// Every subgroup of a small group by closing all element pairs, then
    /// grouping into conjugacy classes. Independent of the extension code
    /// (2-generated subgroups suffice for the groups used here).
    fn brute_force_classes(g: &PermGroup) -> BTreeMap<u64, usize> {
        let els = g.elements(1000).unwrap();
        let mut subgroups: HashSet<Vec<Permutation>> = HashSet::new();
        for a in &els {
            for b in &els {
                let h = PermGroup::new(g.degree(), vec![a.clone(), b.clone()]).unwrap();
                subgroups.insert(h.elements(1000).unwrap());
            }
        }
        let mut classes: Vec<Vec<Permutation>> = Vec::new();
        let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
        for s in &subgroups {
            if seen.contains(s) {
                continue;
            }
            for x in &els {
                let mut c: Vec<Permutation> = s.iter().map(|y| y.conjugate_by(x)).collect();
                c.sort();
                seen.insert(c);
            }
            classes.push(s.clone());
        }
        let mut out = BTreeMap::new();
        for c in classes {
            *out.entry(c.len() as u64).or_insert(0) += 1;
        }
        out
    }

    fn counts(classes: &[SubgroupClass]) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for c in classes {
            *out.entry(c.order).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn s3_has_four_classes() {
        let s3 = atlas::make_symmetric(3).unwrap();
        let classes = enumerate_solvable_subgroups(&s3, 6).unwrap();
        assert_eq!(classes.iter().map(|c| c.order).collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        assert_eq!(
            classes.iter().map(|c| c.class_size).collect::<Vec<_>>(),
            vec![1, 3, 1, 1]
        );
    }

    #[test]
    fn f42_has_one_class_per_divisor() {
        let f42 = atlas::make_frobenius(42).unwrap();
        let classes = enumerate_solvable_subgroups(&f42, 42).unwrap();
        let expected: BTreeMap<u64, usize> =
            [1, 2, 3, 6, 7, 14, 21, 42].into_iter().map(|d| (d, 1)).collect();
        assert_eq!(counts(&classes), expected);
        assert_eq!(brute_force_classes(&f42), expected);
        let top = classes.last().unwrap();
        assert_eq!(top.iso_type, Some(GroupType::F42));
        for c in &classes {
            assert!(c.validate(&f42).unwrap());
        }
    }

    #[test]
    fn extension_matches_brute_force_on_small_groups() {
        for g in [
            atlas::make_symmetric(4).unwrap(),
            atlas::make_dihedral(7).unwrap(),
            GroupType::D7xZ2.model(),
            atlas::make_alternating(5).unwrap(),
        ] {
            // A_5 itself is the only non-solvable subgroup there
            let mut brute = brute_force_classes(&g);
            if g.order().unwrap() == 60 {
                brute.remove(&60);
            }
            let classes = enumerate_solvable_subgroups(&g, 1000).unwrap();
            assert_eq!(counts(&classes), brute, "{}", g.name());
        }
    }

    #[test]
    fn psl27_census_and_labels() {
        let g = atlas::load_atlas_group("PSL(2,7)").unwrap();
        let classes = enumerate_solvable_subgroups(&g, 168).unwrap();
        // 15 classes of subgroups, minus PSL(2,7) itself
        assert_eq!(classes.len(), 14);
        let f21: Vec<_> = classes.iter().filter(|c| c.iso_type == Some(GroupType::F21)).collect();
        assert_eq!(f21.len(), 1);
        assert_eq!(f21[0].class_size, 8);
        for c in &classes {
            assert!(c.validate(&g).unwrap());
        }
    }

    #[test]
    fn ambient_limit() {
        let a8 = atlas::make_alternating(8).unwrap();
        assert!(matches!(
            enumerate_solvable_subgroups(&a8, 10),
            Err(SearchError::AmbientTooLarge { order: 20160, .. })
        ));
    }
}
