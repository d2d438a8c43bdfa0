//! Indexed element lists for small groups.

use std::collections::HashMap;

use crate::group::{GroupError, PermGroup};
use crate::perm::Permutation;

/// All elements of a small group, sorted, with a reverse index.
/// Index 0 is always the identity.
#[derive(Debug, Clone)]
pub(crate) struct ElementTable {
    pub(crate) elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    /// Indices of a generating set, used for conjugation sweeps.
    pub(crate) gens: Vec<u32>,
    degree: usize,
}

impl ElementTable {
    pub(crate) fn new(g: &PermGroup, budget: u64) -> Result<ElementTable, GroupError> {
        let elements = g.elements(budget)?;
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let gens = g
            .reduced_generators()
            .iter()
            .map(|x| index[x])
            .collect();
        Ok(ElementTable {
            elements,
            index,
            gens,
            degree: g.degree(),
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.elements.len()
    }

    pub(crate) fn get(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub(crate) fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// `a` then `b`.
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&self.get(a).then(self.get(b))]
    }

    /// `by⁻¹ a by`.
    pub(crate) fn conj(&self, a: u32, by: u32) -> u32 {
        self.index[&self.get(a).conjugate_by(self.get(by))]
    }

    /// The conjugate set `x⁻¹ S x`, sorted.
    pub(crate) fn conj_set(&self, set: &[u32], x: u32) -> Vec<u32> {
        let mut out: Vec<u32> = set.iter().map(|&a| self.conj(a, x)).collect();
        out.sort_unstable();
        out
    }

    /// Closure of `gens` under multiplication, sorted.
    pub(crate) fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut head = 0;
        while head < out.len() {
            let a = out[head];
            head += 1;
            for &s in gens {
                let b = self.mul(a, s);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    out.push(b);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn group(&self, gens: &[u32]) -> PermGroup {
        PermGroup::new(
            self.degree,
            gens.iter().map(|&i| self.get(i).clone()).collect(),
        )
        .expect("elements share the table degree")
    }
}

/// Membership bitset over table indices.
#[derive(Debug, Clone)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub(crate) fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub(crate) fn from_indices(n: usize, idx: &[u32]) -> Bits {
        let mut b = Bits::new(n);
        for &i in idx {
            b.insert(i);
        }
        b
    }

    pub(crate) fn insert(&mut self, i: u32) {
        self.0[i as usize / 64] |= 1 << (i % 64);
    }

    pub(crate) fn contains(&self, i: u32) -> bool {
        self.0[i as usize / 64] >> (i % 64) & 1 == 1
    }
}
