//! Feasible 2-elements: `t` with `t` a 2-element, `t² ∈ H`, `⟨H, t⟩ = G` and
//! `|H : H ∩ H^t| = 7`, searched inside `N_G(L)` for each index-7 subgroup `L`
//! of `H`. Such `t` normalizes `L = H ∩ H^t`, so every feasible element is
//! found for some class representative `L` (up to `H`-conjugacy of `L`).

use serde::{Deserialize, Serialize};

use super::{enumerate_solvable_subgroups_dividing, SearchError};
use crate::group::{PermGroup, ScanOptions};
use crate::perm::Permutation;

/// The conditions defining a feasible element, recorded individually.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityChecks {
    pub two_element: bool,
    pub square_in_h: bool,
    /// `|H : H ∩ H^t|`.
    pub index: u64,
    pub generates: bool,
    pub normalizes_l: bool,
}

impl FeasibilityChecks {
    pub fn all_hold(&self) -> bool {
        self.two_element && self.square_in_h && self.index == 7 && self.generates && self.normalizes_l
    }
}

#[derive(Debug, Clone)]
pub struct FeasibleElement {
    pub element: Permutation,
    /// `H ∩ H^t`.
    pub l: PermGroup,
    pub checks: FeasibilityChecks,
}

#[derive(Debug, Clone)]
pub struct FeasibleSearch {
    pub elements: Vec<FeasibleElement>,
    /// Classes of index-7 subgroups of `H`, up to `H`-conjugacy.
    pub index7_classes: usize,
    /// `|N_G(L)|` for each class, in class order.
    pub normalizer_orders: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibleSummary {
    pub element: String,
    pub l_generators: Vec<String>,
    pub l_order: u64,
    pub checks: FeasibilityChecks,
}

impl FeasibleElement {
    pub fn summary(&self) -> FeasibleSummary {
        FeasibleSummary {
            element: self.element.to_cycle_string(),
            l_generators: self.l.generator_strings(),
            l_order: self.l.order().unwrap_or(0),
            checks: self.checks,
        }
    }

    /// Recomputes every condition from scratch.
    pub fn recheck(&self, g: &PermGroup, h: &PermGroup) -> Result<FeasibilityChecks, SearchError> {
        evaluate(g, h, &self.element, &h.elements(super::iso::MAX_ISO_ORDER)?)
    }
}

/// Elements of `h` conjugated by `t` that stay in `h`: `|h ∩ h^t|`.
fn intersection_order(h_elements: &[Permutation], t: &Permutation) -> u64 {
    let t_inv = t.inverse();
    h_elements
        .iter()
        .filter(|u| h_elements.binary_search(&u.conjugate_by(&t_inv)).is_ok())
        .count() as u64
}

fn evaluate(
    g: &PermGroup,
    h: &PermGroup,
    t: &Permutation,
    h_elements: &[Permutation],
) -> Result<FeasibilityChecks, SearchError> {
    let h_order = h_elements.len() as u64;
    let inter = intersection_order(h_elements, t);
    // L = H ∩ H^t as a group, for the normalizing check
    let t_inv = t.inverse();
    let l: Vec<&Permutation> = h_elements
        .iter()
        .filter(|u| h_elements.binary_search(&u.conjugate_by(&t_inv)).is_ok())
        .collect();
    let normalizes_l = l.iter().all(|u| {
        let c = u.conjugate_by(t);
        l.binary_search(&&c).is_ok()
    });
    let generates = h.join(std::slice::from_ref(t))?.order()? == g.order()?;
    Ok(FeasibilityChecks {
        two_element: t.order().is_power_of_two(),
        square_in_h: h_elements.binary_search(&t.then(t)).is_ok(),
        index: h_order / inter,
        generates,
        normalizes_l,
    })
}

/// Searches for feasible elements of `g` relative to the stabilizer `h`.
pub fn feasible_elements(
    g: &PermGroup,
    h: &PermGroup,
    scan: &ScanOptions,
) -> Result<FeasibleSearch, SearchError> {
    if h.degree() != g.degree() || !h.is_subgroup_of(g)? {
        return Err(SearchError::NotASubgroup);
    }
    let h_order = h.order()?;
    if h_order % 7 != 0 {
        return Err(SearchError::StabilizerOrderNotDivisibleBy7(h_order));
    }
    if h_order > super::iso::MAX_ISO_ORDER {
        return Err(SearchError::TooLarge {
            order: h_order,
            limit: super::iso::MAX_ISO_ORDER,
        });
    }
    let g_order = g.order()?;
    if g_order > scan.budget {
        return Err(crate::group::GroupError::ScanBudgetExceeded {
            order: g_order,
            budget: scan.budget,
        }
        .into());
    }
    let h_elements = h.elements(h_order)?;
    let l_order = h_order / 7;
    let ls: Vec<PermGroup> = enumerate_solvable_subgroups_dividing(h, l_order)?
        .into_iter()
        .filter(|c| c.order == l_order)
        .map(|c| c.representative)
        .collect();
    let mut elements = Vec::new();
    let mut normalizer_orders = Vec::new();
    for l in &ls {
        let nl = g.normalizer_scan(l, scan)?;
        normalizer_orders.push(nl.order()?);
        log::info!("|N_G(L)| = {} for |L| = {}", nl.order()?, l_order);
        let mut found: Vec<Permutation> = nl
            .enumerate_elements(scan.budget)?
            .filter(|t| {
                t.order().is_power_of_two()
                    && h_elements.binary_search(&t.then(t)).is_ok()
                    && intersection_order(&h_elements, t) == l_order
            })
            .collect();
        found.sort();
        for t in found {
            let checks = evaluate(g, h, &t, &h_elements)?;
            if checks.all_hold() {
                elements.push(FeasibleElement {
                    element: t,
                    l: l.clone(),
                    checks,
                });
            }
        }
    }
    Ok(FeasibleSearch {
        elements,
        index7_classes: ls.len(),
        normalizer_orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas;

    #[test]
    fn psl27_with_f21_has_feasible_involutions() {
        let g = atlas::load_atlas_group("PSL(2,7)").unwrap();
        let h = g.point_stabilizer(0).unwrap();
        let found = feasible_elements(&g, &h, &ScanOptions::default()).unwrap();
        assert_eq!(found.index7_classes, 1);
        assert!(!found.elements.is_empty());
        // brute force over all of PSL(2,7)
        let h_els = h.elements(1000).unwrap();
        let brute: Vec<Permutation> = g
            .elements(1000)
            .unwrap()
            .into_iter()
            .filter(|t| evaluate(&g, &h, t, &h_els).unwrap().all_hold())
            .collect();
        assert!(!brute.is_empty());
        for f in &found.elements {
            assert!(brute.contains(&f.element));
            assert!(f.recheck(&g, &h).unwrap().all_hold());
        }
        for t in &brute {
            assert_eq!(t.order(), 2);
        }
    }

    #[test]
    fn stabilizer_must_have_order_divisible_by_7() {
        let a7 = atlas::make_alternating(7).unwrap();
        let z6 = PermGroup::from_cycle_strings(7, &["(1 2 3)(4 5)(6 7)"]).unwrap();
        assert!(matches!(
            feasible_elements(&a7, &z6, &ScanOptions::default()),
            Err(SearchError::StabilizerOrderNotDivisibleBy7(6))
        ));
        let outside = PermGroup::from_cycle_strings(7, &["(1 2)"]).unwrap();
        assert!(matches!(
            feasible_elements(&a7, &outside, &ScanOptions::default()),
            Err(SearchError::NotASubgroup)
        ));
    }
}
