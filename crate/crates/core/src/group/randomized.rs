//! Randomized Schreier–Sims, kept separate from the deterministic chain code
//! so the two can cross-check each other's orders.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::perm::Permutation;

/// Product-replacement random elements of `⟨gens⟩`.
pub struct ProductReplacement {
    state: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    pub fn new(degree: usize, gens: &[Permutation], seed: u64) -> ProductReplacement {
        let mut state: Vec<Permutation> = gens.to_vec();
        if state.is_empty() {
            state.push(Permutation::identity(degree));
        }
        let base = state.clone();
        while state.len() < 10 {
            state.push(base[state.len() % base.len()].clone());
        }
        let mut pr = ProductReplacement {
            state,
            acc: Permutation::identity(degree),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..60 {
            pr.next_element();
        }
        pr
    }

    pub fn next_element(&mut self) -> Permutation {
        let n = self.state.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.gen_bool(0.5) {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        self.state[i] = if self.rng.gen_bool(0.5) {
            self.state[i].then(&other)
        } else {
            other.then(&self.state[i])
        };
        self.acc = self.acc.then(&self.state[i]);
        self.acc.clone()
    }
}

struct PartialLevel {
    point: usize,
    gens: Vec<Permutation>,
    reps: Vec<Option<Permutation>>,
}

impl PartialLevel {
    fn recompute(&mut self, degree: usize) {
        self.reps = vec![None; degree];
        self.reps[self.point] = Some(Permutation::identity(degree));
        let mut queue = vec![self.point];
        while let Some(gamma) = queue.pop() {
            for s in &self.gens {
                let delta = s.image(gamma);
                if self.reps[delta].is_none() {
                    // stored as inverses: reps[δ] maps δ back to the base point
                    let back = s.inverse().then(self.reps[gamma].as_ref().unwrap());
                    self.reps[delta] = Some(back);
                    queue.push(delta);
                }
            }
        }
    }

    fn orbit_len(&self) -> usize {
        self.reps.iter().filter(|r| r.is_some()).count()
    }
}

/// Order of `⟨gens⟩` by randomized Schreier–Sims: random elements are sifted
/// until `quiet_rounds` consecutive ones sift to the identity. The result is
/// a lower bound that equals the true order with overwhelming probability.
pub fn randomized_order(
    degree: usize,
    gens: &[Permutation],
    seed: u64,
    quiet_rounds: usize,
) -> Option<u64> {
    let mut levels: Vec<PartialLevel> = Vec::new();
    let mut source = ProductReplacement::new(degree, gens, seed);
    let mut quiet = 0;
    let mut pending: Vec<Permutation> = gens.to_vec();
    while quiet < quiet_rounds {
        let g = match pending.pop() {
            Some(g) => g,
            None => source.next_element(),
        };
        let mut h = g;
        let mut depth = levels.len();
        for (idx, level) in levels.iter().enumerate() {
            let gamma = h.image(level.point);
            match &level.reps[gamma] {
                Some(back) => h = h.then(back),
                None => {
                    depth = idx;
                    break;
                }
            }
        }
        if depth == levels.len() && h.is_identity() {
            quiet += 1;
            continue;
        }
        quiet = 0;
        if depth == levels.len() {
            let point = h.smallest_moved_point().unwrap();
            levels.push(PartialLevel {
                point,
                gens: Vec::new(),
                reps: Vec::new(),
            });
        }
        for level in &mut levels[..=depth] {
            level.gens.push(h.clone());
            level.recompute(degree);
        }
    }
    levels
        .iter()
        .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit_len() as u64))
}
