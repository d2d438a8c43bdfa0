//! Element scans: normalizers and centralizers by exhaustive enumeration.
//!
//! The enumeration range is cut into a fixed number of chunks; chunks may run
//! concurrently and their results are merged by set union in chunk order, so
//! the outcome does not depend on scheduling or thread count.

use rayon::prelude::*;

use super::{ElementCursor, GroupError, PermGroup, StabChain};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    /// Largest group order an exhaustive scan may walk.
    pub budget: u64,
    /// Number of index chunks (fixed, independent of the thread count).
    pub chunks: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            budget: 250_000_000,
            chunks: 64,
        }
    }
}

impl ScanOptions {
    pub fn with_budget(budget: u64) -> ScanOptions {
        ScanOptions {
            budget,
            ..ScanOptions::default()
        }
    }
}

/// Incrementally generated subgroup used to collect scan hits.
struct Collector {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabChain,
}

impl Collector {
    fn new(degree: usize, seed: &[Permutation]) -> Collector {
        let gens: Vec<Permutation> = seed.iter().filter(|g| !g.is_identity()).cloned().collect();
        Collector {
            degree,
            chain: StabChain::build(degree, &gens, &[]),
            gens,
        }
    }

    fn absorb(&mut self, x: &Permutation) {
        if !self.chain.contains(x) {
            self.gens.push(x.clone());
            self.chain = StabChain::build(self.degree, &self.gens, &[]);
        }
    }
}

/// Membership oracle for the subgroup being normalized.
enum Members<'a> {
    Sorted(Vec<Permutation>),
    Chain(&'a StabChain),
}

impl Members<'_> {
    fn contains(&self, images: &[u8]) -> bool {
        match self {
            Members::Sorted(v) => v.binary_search_by(|p| p.images().cmp(images)).is_ok(),
            Members::Chain(c) => {
                c.contains(&Permutation::from_images(images.to_vec()).expect("permutation"))
            }
        }
    }
}

impl PermGroup {
    fn check_budget(&self, opts: &ScanOptions) -> Result<u64, GroupError> {
        let order = self.order()?;
        if order > opts.budget {
            return Err(GroupError::ScanBudgetExceeded {
                order,
                budget: opts.budget,
            });
        }
        Ok(order)
    }

    /// Runs `visit` over every element, chunk by chunk. Returns per-chunk states.
    pub fn scan_chunks<T, I, V>(
        &self,
        opts: &ScanOptions,
        init: I,
        visit: V,
    ) -> Result<Vec<T>, GroupError>
    where
        T: Send,
        I: Fn() -> T + Sync,
        V: Fn(&mut T, &Permutation) + Sync,
    {
        let order = self.check_budget(opts)?;
        let chain = self.chain();
        let chunks = opts.chunks.clamp(1, order);
        let size = order.div_ceil(chunks);
        let states = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * size;
                let count = size.min(order.saturating_sub(start));
                let mut state = init();
                let mut cursor = ElementCursor::new(chain, start, count);
                while let Some(x) = cursor.next_element() {
                    visit(&mut state, x);
                }
                state
            })
            .collect();
        Ok(states)
    }

    fn collect_subgroup<P>(
        &self,
        opts: &ScanOptions,
        seed: &[Permutation],
        accept: P,
    ) -> Result<PermGroup, GroupError>
    where
        P: Fn(&Permutation, &mut [u8]) -> bool + Sync,
    {
        let degree = self.degree();
        let states = self.scan_chunks(
            opts,
            || (Collector::new(degree, seed), vec![0u8; degree]),
            |(col, buf), x| {
                if accept(x, buf) {
                    col.absorb(x);
                }
            },
        )?;
        let mut gens: Vec<Permutation> = Vec::new();
        for (col, _) in states {
            for g in col.gens {
                if !gens.contains(&g) {
                    gens.push(g);
                }
            }
        }
        let merged = PermGroup::new(degree, gens)?;
        let reduced = merged.reduced_generators();
        PermGroup::new(degree, reduced)
    }

    /// `N_G(H) = {x ∈ G : x⁻¹ H x = H}` by scanning every element of `G`.
    /// An element is accepted when it conjugates each generator of `H` into `H`.
    pub fn normalizer_scan(&self, h: &PermGroup, opts: &ScanOptions) -> Result<PermGroup, GroupError> {
        if h.degree() != self.degree() || !h.is_subgroup_of(self)? {
            return Err(GroupError::NotASubgroup);
        }
        self.check_budget(opts)?;
        let gens: Vec<Permutation> = h
            .reduced_generators()
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        let members = if h.order()? <= 4096 {
            Members::Sorted(h.elements(4096)?)
        } else {
            Members::Chain(h.chain())
        };
        // a normalizing element permutes the orbits of h, so it preserves orbit length
        let mut orbit_len = vec![0usize; self.degree()];
        for orb in h.orbits() {
            for &p in &orb {
                orbit_len[p] = orb.len();
            }
        }
        let norm = self.collect_subgroup(opts, &gens, |x, buf| {
            let xi = x.images();
            (0..xi.len()).all(|i| orbit_len[xi[i] as usize] == orbit_len[i])
                && gens.iter().all(|y| {
                y.conjugate_by_into(x.images(), buf);
                members.contains(buf)
            })
        })?;
        Ok(norm.with_name(format!("N({})", h.name())))
    }

    /// `C_G(p) = {x ∈ G : x⁻¹ p x = p}` by scanning every element of `G`.
    pub fn centralizer_scan(&self, p: &Permutation, opts: &ScanOptions) -> Result<PermGroup, GroupError> {
        if p.degree() != self.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree(),
                found: p.degree(),
            });
        }
        self.check_budget(opts)?;
        let pi = p.images();
        let seed: Vec<Permutation> = if self.contains(p)? {
            vec![p.clone()]
        } else {
            Vec::new()
        };
        let cent = self.collect_subgroup(opts, &seed, |x, _| {
            let xi = x.images();
            (0..pi.len()).all(|i| pi[xi[i] as usize] == xi[pi[i] as usize])
        })?;
        Ok(cent.with_name("C"))
    }
}
