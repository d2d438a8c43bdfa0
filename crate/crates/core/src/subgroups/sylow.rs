//! Census of one stabilizer type by Sylow-7 localization.
//!
//! Every target type `X` has a unique (so normal, so characteristic) Sylow
//! 7-subgroup of order 7. If `S ≅ X` lies in `G` then `S ≤ N_G(Syl₇(S))`,
//! and when `7 ∥ |G|` all subgroups of order 7 are conjugate. So up to
//! conjugacy `S` lies in `N = N_G(P)` for one fixed `P = ⟨x⟩` and contains
//! `P`. Two such subgroups conjugate in `G` by `g` have `P^g = P`, so `g ∈ N`:
//! conjugacy in `G` equals conjugacy in `N`, and `N_G(S) = N_N(S)`.

use serde::{Deserialize, Serialize};

use super::extension::cyclic_extension;
use super::iso::is_isomorphic_to;
use super::table::ElementTable;
use super::{check_class_size, Method, SearchError, SubgroupClass};
use crate::atlas::{sylow7_count, GroupType};
use crate::group::{PermGroup, ScanOptions};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusOptions {
    pub seed: u64,
    pub scan: ScanOptions,
    /// Cap on random draws while looking for an element of order 7.
    pub max_draws: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            seed: 7,
            scan: ScanOptions::default(),
            max_draws: 100_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SylowCensus {
    pub ambient: String,
    pub ambient_order: u64,
    pub target: GroupType,
    pub seven_element: Permutation,
    /// Random draws used to find `seven_element`.
    pub draws: usize,
    pub sylow_normalizer: PermGroup,
    pub classes: Vec<SubgroupClass>,
    pub seed: u64,
}

/// Serializable view of a [`SylowCensus`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowCensusSummary {
    pub ambient: String,
    pub target: GroupType,
    pub class_count: usize,
    pub seven_element: String,
    pub sylow_normalizer_order: u64,
    pub classes: Vec<super::ClassSummary>,
    pub seed: u64,
}

impl SylowCensus {
    pub fn summary(&self) -> SylowCensusSummary {
        SylowCensusSummary {
            ambient: self.ambient.clone(),
            target: self.target,
            class_count: self.classes.len(),
            seven_element: self.seven_element.to_cycle_string(),
            sylow_normalizer_order: self.sylow_normalizer.order().unwrap_or(0),
            classes: self.classes.iter().map(|c| c.summary()).collect(),
            seed: self.seed,
        }
    }
}

fn seven_part(mut n: u64) -> u32 {
    let mut k = 0;
    while n % 7 == 0 {
        n /= 7;
        k += 1;
    }
    k
}

/// An element of order 7 from seeded uniform draws, and the number of draws.
pub(crate) fn find_seven_element(
    g: &PermGroup,
    seed: u64,
    max_draws: usize,
) -> Result<(Permutation, usize), SearchError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for draw in 1..=max_draws {
        let x = g.random_element_with(&mut rng);
        let o = x.order();
        if o % 7 == 0 {
            return Ok((x.pow((o / 7) as i64), draw));
        }
    }
    Err(SearchError::SevenElementNotFound(max_draws))
}

/// The data shared by every census in one ambient group: an element `x` of
/// order 7 and `N_G(⟨x⟩)`, computed once by a full scan.
#[derive(Debug, Clone)]
pub struct SylowLocalization {
    ambient: String,
    ambient_order: u64,
    seven_element: Permutation,
    draws: usize,
    normalizer: PermGroup,
    table: ElementTable,
    seed: u64,
}

impl SylowLocalization {
    pub fn new(g: &PermGroup, opts: &CensusOptions) -> Result<SylowLocalization, SearchError> {
        let order = g.order()?;
        match seven_part(order) {
            0 => return Err(SearchError::NoSevenTorsion(order)),
            1 => {}
            _ => return Err(SearchError::Sylow7NotCyclicOfOrder7(order)),
        }
        if order > opts.scan.budget {
            return Err(crate::group::GroupError::ScanBudgetExceeded {
                order,
                budget: opts.scan.budget,
            }
            .into());
        }
        let (x, draws) = find_seven_element(g, opts.seed, opts.max_draws)?;
        let p = PermGroup::new(g.degree(), vec![x.clone()])?;
        let normalizer = g.normalizer_scan(&p, &opts.scan)?;
        log::info!(
            "{}: N(<{}>) has order {}",
            g.name(),
            x.to_cycle_string(),
            normalizer.order()?
        );
        let table = ElementTable::new(&normalizer, opts.scan.budget)?;
        Ok(SylowLocalization {
            ambient: g.name().to_string(),
            ambient_order: order,
            seven_element: x,
            draws,
            normalizer,
            table,
            seed: opts.seed,
        })
    }

    pub fn normalizer(&self) -> &PermGroup {
        &self.normalizer
    }

    pub fn seven_element(&self) -> &Permutation {
        &self.seven_element
    }

    /// All classes of subgroups isomorphic to `target`, up to conjugacy in
    /// the ambient group.
    pub fn census(&self, target: GroupType) -> Result<SylowCensus, SearchError> {
        if sylow7_count(&target.model(), target.order())? != 1 {
            return Err(SearchError::PreconditionN7(target));
        }
        let table = &self.table;
        let x_index = table
            .index_of(&self.seven_element)
            .expect("x lies in its normalizer");
        let target_order = target.order();
        let records = cyclic_extension(table, &[x_index], &|k| target_order % k == 0);
        let n_order = table.len() as u64;
        let mut classes = Vec::new();
        for r in records {
            check_class_size(r.conjugates, r.normalizer_order, n_order)?;
            if r.elements.len() as u64 != target_order {
                continue;
            }
            let rep = table.group(&r.gens);
            if !is_isomorphic_to(&rep, target)? {
                continue;
            }
            classes.push(SubgroupClass {
                order: target_order,
                representative: rep.with_name(target.label()),
                ambient: self.ambient.clone(),
                iso_label: target.label().to_string(),
                iso_type: Some(target),
                class_size: self.ambient_order / r.normalizer_order,
                normalizer_order: r.normalizer_order,
                method: Method::Sylow7Localized,
            });
        }
        Ok(SylowCensus {
            ambient: self.ambient.clone(),
            ambient_order: self.ambient_order,
            target,
            seven_element: self.seven_element.clone(),
            draws: self.draws,
            sylow_normalizer: self.normalizer.clone(),
            classes,
            seed: self.seed,
        })
    }
}

/// All classes of subgroups of `g` isomorphic to `target`, up to conjugacy.
pub fn subgroups_with_normal_sylow7(
    g: &PermGroup,
    target: GroupType,
    opts: &CensusOptions,
) -> Result<SylowCensus, SearchError> {
    if sylow7_count(&target.model(), target.order())? != 1 {
        return Err(SearchError::PreconditionN7(target));
    }
    SylowLocalization::new(g, opts)?.census(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas;
    use crate::subgroups::enumerate_solvable_subgroups_dividing;

    #[test]
    fn a7_has_no_f42() {
        let a7 = atlas::make_alternating(7).unwrap();
        let c = subgroups_with_normal_sylow7(&a7, GroupType::F42, &CensusOptions::default()).unwrap();
        assert!(c.classes.is_empty());
        assert_eq!(c.sylow_normalizer.order().unwrap(), 21);
        let s7 = atlas::make_symmetric(7).unwrap();
        let c = subgroups_with_normal_sylow7(&s7, GroupType::F42, &CensusOptions::default()).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert!(c.classes[0].validate(&s7).unwrap());
    }

    #[test]
    fn psl27_has_one_f21_class_under_every_seed() {
        let g = atlas::load_atlas_group("PSL(2,7)").unwrap();
        for seed in 0..5 {
            let opts = CensusOptions {
                seed,
                ..CensusOptions::default()
            };
            let c = subgroups_with_normal_sylow7(&g, GroupType::F21, &opts).unwrap();
            assert_eq!(c.classes.len(), 1);
            assert_eq!(c.classes[0].class_size, 8);
        }
    }

    #[test]
    fn preconditions() {
        let a5 = atlas::make_alternating(5).unwrap();
        assert!(matches!(
            subgroups_with_normal_sylow7(&a5, GroupType::Z7, &CensusOptions::default()),
            Err(SearchError::NoSevenTorsion(60))
        ));
        let z7z7 = atlas::resolve_group("Z_7xZ_7").unwrap();
        assert!(matches!(
            subgroups_with_normal_sylow7(&z7z7, GroupType::Z7, &CensusOptions::default()),
            Err(SearchError::Sylow7NotCyclicOfOrder7(49))
        ));
    }

    #[test]
    fn agrees_with_full_extension_on_psl28() {
        let g = atlas::load_atlas_group("PSL(2,8)").unwrap();
        for t in crate::atlas::STABILIZER_TYPES {
            let local = subgroups_with_normal_sylow7(&g, t, &CensusOptions::default()).unwrap();
            let full = enumerate_solvable_subgroups_dividing(&g, t.order())
                .unwrap()
                .into_iter()
                .filter(|c| c.iso_type == Some(t))
                .count();
            assert_eq!(local.classes.len(), full, "{t}");
        }
    }
}
