//! Stabilizer chains built by deterministic Schreier–Sims.

use crate::perm::Permutation;

/// One level of a stabilizer chain: the basic orbit of `point` under the
/// strong generators fixing all earlier base points, with explicit
/// transversal elements `u_γ` satisfying `u_γ(point) = γ`.
#[derive(Clone, Debug)]
pub struct Level {
    pub(crate) point: u8,
    pub(crate) generators: Vec<Permutation>,
    pub(crate) orbit: Vec<u8>,
    pub(crate) transversal: Vec<Option<Permutation>>,
    pub(crate) inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(point: u8, degree: usize) -> Level {
        let mut level = Level {
            point,
            generators: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inverse: vec![None; degree],
        };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.inverse.iter_mut().for_each(|t| *t = None);
        let id = Permutation::identity(degree);
        self.transversal[self.point as usize] = Some(id.clone());
        self.inverse[self.point as usize] = Some(id);
        self.orbit.clear();
        self.orbit.push(self.point);
        let mut head = 0;
        while head < self.orbit.len() {
            let gamma = self.orbit[head] as usize;
            head += 1;
            for s in &self.generators {
                let delta = s.image(gamma);
                if self.transversal[delta].is_none() {
                    let u = self.transversal[gamma].as_ref().unwrap().then(s);
                    self.inverse[delta] = Some(u.inverse());
                    self.transversal[delta] = Some(u);
                    self.orbit.push(delta as u8);
                }
            }
        }
    }

    pub fn base_point(&self) -> usize {
        self.point as usize
    }

    pub fn orbit(&self) -> &[u8] {
        &self.orbit
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub(crate) fn representative(&self, gamma: usize) -> Option<&Permutation> {
        self.transversal[gamma].as_ref()
    }
}

/// Base and strong generating set.
#[derive(Clone, Debug)]
pub struct StabChain {
    pub(crate) degree: usize,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    /// Schreier–Sims. Base points listed in `base_prefix` come first; every
    /// further base point is the smallest point moved by the element that
    /// forced the extension.
    pub(crate) fn build(degree: usize, gens: &[Permutation], base_prefix: &[u8]) -> StabChain {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut levels: Vec<Level> = Vec::new();
        for &b in base_prefix {
            if levels.iter().all(|l| l.point != b) {
                levels.push(Level::new(b, degree));
            }
        }
        for g in &strong {
            if levels.iter().all(|l| g.fixes(l.point as usize)) {
                let b = g.smallest_moved_point().unwrap() as u8;
                levels.push(Level::new(b, degree));
            }
        }
        for i in 0..levels.len() {
            let fixed: Vec<u8> = levels[..i].iter().map(|l| l.point).collect();
            levels[i].generators = strong
                .iter()
                .filter(|g| fixed.iter().all(|&b| g.fixes(b as usize)))
                .cloned()
                .collect();
            levels[i].rebuild_orbit();
        }

        let mut i = levels.len();
        while i > 0 {
            let l = i - 1;
            match failing_schreier_generator(&levels, l) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == levels.len() {
                        let b = h.smallest_moved_point().unwrap() as u8;
                        levels.push(Level::new(b, degree));
                    }
                    for level in &mut levels[l + 1..=j] {
                        level.generators.push(h.clone());
                        level.rebuild_orbit();
                    }
                    i = j + 1;
                }
            }
        }
        StabChain { degree, levels }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point as usize).collect()
    }

    /// Product of basic orbit lengths, `None` on `u64` overflow.
    pub fn order(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        let (h, j) = strip(&self.levels, p.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Distinct strong generators in level order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.generators {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// The chain of the stabilizer of the first `k` base points.
    pub(crate) fn tail(&self, k: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels[k..].to_vec(),
        }
    }
}

fn failing_schreier_generator(levels: &[Level], l: usize) -> Option<(Permutation, usize)> {
    let level = &levels[l];
    for &gamma in &level.orbit {
        let u = level.transversal[gamma as usize].as_ref().unwrap();
        for s in &level.generators {
            let delta = s.image(gamma as usize);
            let schreier = u.then(s).then(level.inverse[delta].as_ref().unwrap());
            if schreier.is_identity() {
                continue;
            }
            let (h, j) = strip(levels, schreier, l + 1);
            if j < levels.len() || !h.is_identity() {
                return Some((h, j));
            }
        }
    }
    None
}

/// Sifts `g` through `levels[start..]`. Returns the residue and the index of
/// the level where sifting stopped (`levels.len()` when it went through).
pub(crate) fn strip(levels: &[Level], mut g: Permutation, start: usize) -> (Permutation, usize) {
    for (idx, level) in levels.iter().enumerate().skip(start) {
        let gamma = g.image(level.point as usize);
        match &level.inverse[gamma] {
            Some(inv) => g = g.then(inv),
            None => return (g, idx),
        }
    }
    (g, levels.len())
}
