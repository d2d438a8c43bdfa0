//! Deterministic element enumeration in lexicographic order of base images.
//!
//! Every element factors uniquely as `g = u_k ⋯ u_1` (apply `u_k` first) with
//! `u_j` a transversal element of level `j`. The image of the `j`-th base point
//! under `g` is `h_{j-1}(γ_j)` where `h_{j-1} = u_{j-1} ⋯ u_1`, so sorting each
//! basic orbit by its image under the current prefix yields lexicographic
//! order of base-image tuples. Position `i` in that order is a mixed-radix
//! number, which makes the stream restartable from any index.

use super::chain::{Level, StabChain};
use crate::perm::Permutation;

pub struct ElementCursor<'a> {
    levels: Vec<&'a Level>,
    sorted: Vec<Vec<u8>>,
    pos: Vec<usize>,
    prefix: Vec<Permutation>,
    remaining: u64,
    fresh: bool,
}

impl<'a> ElementCursor<'a> {
    /// Cursor over elements `start .. start + count` of the enumeration.
    pub(crate) fn new(chain: &'a StabChain, start: u64, count: u64) -> ElementCursor<'a> {
        let levels: Vec<&Level> = chain.levels.iter().filter(|l| l.orbit.len() > 1).collect();
        let k = levels.len();
        let mut digits = vec![0usize; k];
        let mut rest = start;
        for j in (0..k).rev() {
            let radix = levels[j].orbit.len() as u64;
            digits[j] = (rest % radix) as usize;
            rest /= radix;
        }
        let id = Permutation::identity(chain.degree);
        let mut cursor = ElementCursor {
            sorted: levels.iter().map(|l| l.orbit.clone()).collect(),
            pos: digits,
            prefix: vec![id; k + 1],
            levels,
            remaining: count,
            fresh: true,
        };
        if rest > 0 {
            // start index beyond the group order
            cursor.remaining = 0;
        }
        cursor.refill(0, false);
        cursor
    }

    fn refill(&mut self, from: usize, reset: bool) {
        for m in from..self.levels.len() {
            let (head, tail) = self.prefix.split_at_mut(m + 1);
            let pre = &head[m];
            let sorted = &mut self.sorted[m];
            sorted.sort_unstable_by_key(|&g| pre.images()[g as usize]);
            if reset {
                self.pos[m] = 0;
            }
            let gamma = sorted[self.pos[m]] as usize;
            let u = self.levels[m].representative(gamma).unwrap();
            u.then_into(pre, &mut tail[0]);
        }
    }

    /// Advances and returns the next element, borrowing the cursor's buffer.
    pub fn next_element(&mut self) -> Option<&Permutation> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        if self.fresh {
            self.fresh = false;
            return self.prefix.last();
        }
        let k = self.levels.len();
        let mut j = k;
        while j > 0 {
            j -= 1;
            self.pos[j] += 1;
            if self.pos[j] < self.sorted[j].len() {
                let (head, tail) = self.prefix.split_at_mut(j + 1);
                let gamma = self.sorted[j][self.pos[j]] as usize;
                let u = self.levels[j].representative(gamma).unwrap();
                u.then_into(&head[j], &mut tail[0]);
                self.refill(j + 1, true);
                return self.prefix.last();
            }
        }
        self.remaining = 0;
        None
    }
}

impl Iterator for ElementCursor<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        self.next_element().cloned()
    }
}
