//! Permutation groups backed by a lazily built base and strong generating set.

mod chain;
mod enumerate;
mod randomized;
mod scan;

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::perm::{PermError, Permutation};

pub use chain::{Level, StabChain};
pub use enumerate::ElementCursor;
pub use randomized::{randomized_order, ProductReplacement};
pub use scan::ScanOptions;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("degree mismatch: group has degree {expected}, element has degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order does not fit in 64 bits")]
    ArithmeticOverflow,
    #[error("scan of {order} elements exceeds budget {budget}")]
    ScanBudgetExceeded { order: u64, budget: u64 },
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("point {point} outside degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
}

/// A permutation group given by generators.
pub struct PermGroup {
    name: Option<String>,
    degree: usize,
    generators: Vec<Permutation>,
    base_prefix: Vec<u8>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            name: self.name.clone(),
            degree: self.degree,
            generators: self.generators.clone(),
            base_prefix: self.base_prefix.clone(),
            chain: self.chain.clone(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup, GroupError> {
        if !(1..=crate::perm::MAX_DEGREE).contains(&degree) {
            return Err(PermError::BadDegree(degree).into());
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            name: None,
            degree,
            generators,
            base_prefix: Vec::new(),
            chain: OnceLock::new(),
        })
    }

    /// Group from generators that share one degree (at least one generator).
    pub fn from_generators(generators: Vec<Permutation>) -> Result<PermGroup, GroupError> {
        let degree = generators
            .first()
            .map(|g| g.degree())
            .ok_or(PermError::BadDegree(0))?;
        PermGroup::new(degree, generators)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("valid degree")
    }

    /// Parses generators in 1-based cycle notation.
    pub fn from_cycle_strings<S: AsRef<str>>(
        degree: usize,
        gens: &[S],
    ) -> Result<PermGroup, GroupError> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s.as_ref(), degree))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> PermGroup {
        self.name = Some(name.into());
        self
    }

    /// Requests that the chain starts with the given base points.
    pub fn with_base_prefix(mut self, prefix: &[usize]) -> PermGroup {
        self.base_prefix = prefix.iter().map(|&p| p as u8).collect();
        self.chain = OnceLock::new();
        self
    }

    pub fn name(&self) -> &str {
        self.name.as_deref().unwrap_or("G")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_cycle_string()).collect()
    }

    /// The stabilizer chain, built on first use.
    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &self.base_prefix))
    }

    pub fn order(&self) -> Result<u64, GroupError> {
        self.chain().order().ok_or(GroupError::ArithmeticOverflow)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    fn check_degree(&self, p: &Permutation) -> Result<(), GroupError> {
        if p.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        self.check_degree(p)?;
        Ok(self.chain().contains(p))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool, GroupError> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same element set (checked through generators and orders).
    pub fn same_group(&self, other: &PermGroup) -> Result<bool, GroupError> {
        Ok(self.degree == other.degree
            && self.order()? == other.order()?
            && self.is_subgroup_of(other)?)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }

    pub fn orbit(&self, point: usize) -> Result<Vec<usize>, GroupError> {
        if point >= self.degree {
            return Err(GroupError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        let mut out = vec![point];
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orb = self.orbit(p).expect("point in range");
                for &q in &orb {
                    seen[q] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup, GroupError> {
        if point >= self.degree {
            return Err(GroupError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let rebased = PermGroup::new(self.degree, self.generators.clone())?
            .with_base_prefix(&[point]);
        let chain = rebased.chain();
        let tail = chain.tail(1);
        let gens = tail.strong_generators();
        let stab = PermGroup::new(self.degree, gens)?;
        stab.chain.set(tail).ok();
        Ok(stab.with_name(format!("{}_{}", self.name(), point + 1)))
    }

    /// Uniform random element: independent uniform picks from each transversal.
    pub fn random_element_with<R: Rng>(&self, rng: &mut R) -> Permutation {
        let chain = self.chain();
        let mut g = Permutation::identity(self.degree);
        for level in &chain.levels {
            let gamma = level.orbit[rng.gen_range(0..level.orbit.len())] as usize;
            g = level.representative(gamma).unwrap().then(&g);
        }
        g
    }

    pub fn random_element(&self, seed: u64) -> Permutation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_element_with(&mut rng)
    }

    /// Deterministic stream of all elements (see [`ElementCursor`]).
    pub fn enumerate_elements(&self, budget: u64) -> Result<ElementCursor<'_>, GroupError> {
        let order = self.order()?;
        if order > budget {
            return Err(GroupError::ScanBudgetExceeded { order, budget });
        }
        Ok(ElementCursor::new(self.chain(), 0, order))
    }

    /// Elements `start .. start + count` of the deterministic stream.
    pub fn elements_from(&self, start: u64, count: u64) -> ElementCursor<'_> {
        ElementCursor::new(self.chain(), start, count)
    }

    /// All elements, sorted lexicographically.
    pub fn elements(&self, budget: u64) -> Result<Vec<Permutation>, GroupError> {
        let mut out: Vec<Permutation> = self.enumerate_elements(budget)?.collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Subgroup generated by this group's generators and `extra`.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermGroup, GroupError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    /// `g⁻¹ H g`.
    pub fn conjugate(&self, g: &Permutation) -> Result<PermGroup, GroupError> {
        self.check_degree(g)?;
        PermGroup::new(
            self.degree,
            self.generators.iter().map(|x| x.conjugate_by(g)).collect(),
        )
    }

    /// Drops generators that are redundant given the earlier ones.
    pub fn reduced_generators(&self) -> Vec<Permutation> {
        let target = self.chain().order();
        let mut kept: Vec<Permutation> = Vec::new();
        let mut current = StabChain::build(self.degree, &kept, &[]);
        for g in &self.generators {
            if current.order() == target {
                break;
            }
            if !current.contains(g) {
                kept.push(g.clone());
                current = StabChain::build(self.degree, &kept, &[]);
            }
        }
        kept
    }

    /// Randomized check that products of the generators sift through the chain.
    pub fn verify_chain(&self, seed: u64, rounds: usize) -> Result<(), GroupError> {
        let chain = self.chain();
        for g in &self.generators {
            if !chain.contains(g) {
                return Err(GroupError::NotASubgroup);
            }
        }
        let mut pr = ProductReplacement::new(self.degree, &self.generators, seed);
        for _ in 0..rounds {
            if !chain.contains(&pr.next_element()) {
                return Err(GroupError::NotASubgroup);
            }
        }
        Ok(())
    }

    /// Whether the group is the full alternating group on all of its points.
    pub fn is_natural_alternating(&self) -> Result<bool, GroupError> {
        let n = self.degree as u64;
        let Some(fact) = (1..=n).try_fold(1u64, |a, k| a.checked_mul(k)) else {
            return Ok(false);
        };
        Ok(n >= 3
            && self.order()? == fact / 2
            && self.generators.iter().all(|g| g.parity() == crate::perm::Parity::Even))
    }

    pub fn is_natural_symmetric(&self) -> Result<bool, GroupError> {
        let n = self.degree as u64;
        let Some(fact) = (1..=n).try_fold(1u64, |a, k| a.checked_mul(k)) else {
            return Ok(false);
        };
        Ok(self.order()? == fact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas;

    fn cyc(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn a12_from_standard_generators() {
        let g = PermGroup::from_cycle_strings(12, &["(1 2 3)", "(2 3 4 5 6 7 8 9 10 11 12)"]).unwrap();
        assert_eq!(g.order().unwrap(), 239_500_800);
        assert!(g.contains(&cyc("(1 2 3 4 5 6 7)", 12)).unwrap());
        assert!(!g.contains(&cyc("(1 2)", 12)).unwrap());
        assert!(g.contains(&Permutation::identity(12)).unwrap());
        assert!(g.is_natural_alternating().unwrap());
    }

    #[test]
    fn contains_rejects_wrong_degree() {
        let g = PermGroup::from_cycle_strings(5, &["(1 2 3)"]).unwrap();
        assert!(matches!(
            g.contains(&Permutation::identity(6)),
            Err(GroupError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn trivial_group_has_order_one() {
        let g = PermGroup::trivial(4);
        assert_eq!(g.order().unwrap(), 1);
        let all: Vec<_> = g.enumerate_elements(10).unwrap().collect();
        assert_eq!(all, vec![Permutation::identity(4)]);
        assert!(g.random_element(3).is_identity());
    }

    #[test]
    fn single_seven_cycle() {
        let g = PermGroup::from_cycle_strings(12, &["(1 2 3 4 5 6 7)"]).unwrap();
        assert_eq!(g.order().unwrap(), 7);
        let els: Vec<_> = g.enumerate_elements(100).unwrap().collect();
        assert_eq!(els.len(), 7);
        assert!(els[0].is_identity());
        assert_eq!(g.orbit(7).unwrap(), vec![7]);
        let stab = g.point_stabilizer(7).unwrap();
        assert_eq!(stab.order().unwrap(), 7);
    }

    #[test]
    fn s3_enumeration_has_no_duplicates() {
        let g = PermGroup::from_cycle_strings(3, &["(1 2)", "(1 2 3)"]).unwrap();
        let mut els: Vec<_> = g.enumerate_elements(10).unwrap().collect();
        assert_eq!(els.len(), 6);
        els.sort();
        els.dedup();
        assert_eq!(els.len(), 6);
    }

    #[test]
    fn enumeration_is_lexicographic_in_base_images() {
        let g = atlas::make_symmetric(5).unwrap();
        let base = g.base();
        let tuples: Vec<Vec<usize>> = g
            .enumerate_elements(1000)
            .unwrap()
            .map(|p| base.iter().map(|&b| p.image(b)).collect())
            .collect();
        assert_eq!(tuples.len(), 120);
        assert!(tuples.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn restart_from_index_matches_full_stream() {
        let g = atlas::make_alternating(6).unwrap();
        let full: Vec<_> = g.enumerate_elements(1000).unwrap().collect();
        for start in [0u64, 1, 17, 59, 200, 359] {
            let part: Vec<_> = g.elements_from(start, 360 - start).collect();
            assert_eq!(part.as_slice(), &full[start as usize..]);
        }
        assert_eq!(g.elements_from(400, 5).count(), 0);
    }

    #[test]
    fn budget_exceeded_is_an_error() {
        let g = atlas::make_alternating(8).unwrap();
        assert_eq!(
            g.enumerate_elements(100).err(),
            Some(GroupError::ScanBudgetExceeded {
                order: 20160,
                budget: 100
            })
        );
    }

    #[test]
    fn orbit_stabilizer_on_a12() {
        let g = atlas::make_alternating(12).unwrap();
        assert_eq!(g.orbit(0).unwrap(), (0..12).collect::<Vec<_>>());
        assert_eq!(g.point_stabilizer(0).unwrap().order().unwrap(), 19_958_400);
    }

    #[test]
    fn point_stabilizer_rejects_out_of_range() {
        let g = atlas::make_alternating(5).unwrap();
        assert!(matches!(
            g.point_stabilizer(5),
            Err(GroupError::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn different_base_order_same_order() {
        let g = atlas::load_atlas_group("PSU(3,3)").unwrap();
        for prefix in [[5usize, 3], [27, 0], [13, 14]] {
            let h = PermGroup::new(g.degree(), g.generators().to_vec())
                .unwrap()
                .with_base_prefix(&prefix);
            assert_eq!(h.base()[..2], prefix);
            assert_eq!(h.order().unwrap(), 6048);
        }
    }

    #[test]
    fn randomized_route_agrees_with_deterministic() {
        for name in ["PSU(3,3)", "PSL(2,8)", "PSU(4,3)"] {
            let g = atlas::load_atlas_group(name).unwrap();
            let r = randomized_order(g.degree(), g.generators(), 99, 40).unwrap();
            assert_eq!(r, g.order().unwrap(), "{name}");
        }
    }

    #[test]
    fn random_elements_are_members_and_reproducible() {
        let g = atlas::load_atlas_group("PSU(3,3)").unwrap();
        for seed in [1, 2, 3] {
            let x = g.random_element(seed);
            assert!(g.contains(&x).unwrap());
            assert_eq!(x, g.random_element(seed));
        }
    }

    #[test]
    fn random_element_cycle_type_frequencies_in_s5() {
        use std::collections::HashMap;
        // class size of cycle type with multiplicities m_k: n! / prod(k^m_k m_k!)
        fn class_size(ct: &[usize]) -> f64 {
            let mut mult: HashMap<usize, u32> = HashMap::new();
            for &k in ct {
                *mult.entry(k).or_default() += 1;
            }
            let denom: f64 = mult
                .iter()
                .map(|(&k, &m)| (k as f64).powi(m as i32) * (1..=m).product::<u32>() as f64)
                .product();
            120.0 / denom
        }
        let g = atlas::make_symmetric(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let draws = 100_000usize;
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for _ in 0..draws {
            *counts.entry(g.random_element_with(&mut rng).cycle_type()).or_default() += 1;
        }
        assert_eq!(counts.len(), 7);
        let total: f64 = counts.keys().map(|ct| class_size(ct)).sum();
        assert_eq!(total, 120.0);
        for (ct, &c) in &counts {
            let p = class_size(ct) / 120.0;
            let mean = p * draws as f64;
            let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
            assert!(
                (c as f64 - mean).abs() <= 3.0 * sigma,
                "{ct:?}: {c} vs {mean}±{sigma}"
            );
        }
    }

    #[test]
    fn conjugate_and_join() {
        let z7 = atlas::make_cyclic(7).unwrap();
        let g = cyc("(1 2)", 7);
        let c = z7.conjugate(&g).unwrap();
        assert_eq!(c.order().unwrap(), 7);
        assert!(!c.same_group(&z7).unwrap());
        let s7 = z7.join(&[g]).unwrap();
        assert_eq!(s7.order().unwrap(), 5040);
    }

    #[test]
    fn reduced_generators_drop_redundancy() {
        let g = PermGroup::from_cycle_strings(5, &["(1 2 3)", "(1 3 2)", "(1 2 3 4 5)", "(3 4 5)"]).unwrap();
        let kept = g.reduced_generators();
        assert_eq!(kept.len(), 2);
        assert_eq!(PermGroup::new(5, kept).unwrap().order().unwrap(), 60);
    }
}
