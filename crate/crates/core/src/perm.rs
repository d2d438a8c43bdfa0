//! Permutations of `{0, …, n-1}` stored as one byte per point.
//!
//! Composition convention, used everywhere in this crate and in every file
//! format it reads or writes: `p.then(q)` (and [`Permutation::compose`])
//! applies `p` first and `q` second, so the result maps `i` to `q(p(i))`.
//! In right-action notation this is the product `pq`, and conjugation
//! `x^g = g⁻¹ x g`.
//!
//! Points are 0-based internally and 1-based in cycle notation.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported degree; every point must fit into a `u8`.
pub const MAX_DEGREE: usize = 255;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} outside 1..={MAX_DEGREE}")]
    BadDegree(usize),
    #[error("image array is not a bijection")]
    NotABijection,
    #[error("cycle notation: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `+1` for even, `-1` for odd.
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

/// A bijection on `{0, …, degree-1}`. Ordered lexicographically by image tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        assert!(
            (1..=MAX_DEGREE).contains(&degree),
            "degree {degree} outside 1..={MAX_DEGREE}"
        );
        Permutation {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Permutation, PermError> {
        let n = images.len();
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(PermError::BadDegree(n));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotABijection);
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub fn from_usize_images(images: &[usize]) -> Result<Permutation, PermError> {
        if images.iter().any(|&x| x > u8::MAX as usize) {
            return Err(PermError::NotABijection);
        }
        Permutation::from_images(images.iter().map(|&x| x as u8).collect())
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Permutation, PermError> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(PermError::BadDegree(degree));
        }
        let mut images: Vec<u8> = (0..degree).map(|i| i as u8).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(PermError::Parse(format!(
                        "point {} exceeds degree {degree}",
                        a + 1
                    )));
                }
                if used[a] {
                    return Err(PermError::Parse(format!("point {} repeated", a + 1)));
                }
                used[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()] as u8;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses 1-based cycle notation such as `"(1 2 3)(4 5)"`; `"()"` is the identity.
    /// Points may be separated by spaces or commas.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Parse(format!("expected '(' in {text:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| PermError::Parse(format!("unbalanced parentheses in {text:?}")))?;
            let mut cycle = Vec::new();
            for tok in body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
            {
                let v: usize = tok
                    .parse()
                    .map_err(|_| PermError::Parse(format!("bad point {tok:?}")))?;
                if v == 0 {
                    return Err(PermError::Parse("points are 1-based".into()));
                }
                cycle.push(v - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    /// Canonical 1-based cycle notation: cycles start at their smallest point
    /// and are ordered by it, fixed points omitted, identity is `"()"`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for c in cycles {
            out.push('(');
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
            }
            out.push(')');
        }
        out
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Checked composition: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Apply `self`, then `other`. Panics on a degree mismatch.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// Writes `self.then(other)` into `out`.
    #[inline]
    pub(crate) fn then_into(&self, other: &Permutation, out: &mut Permutation) {
        for (o, &x) in out.images.iter_mut().zip(self.images.iter()) {
            *o = other.images[x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g⁻¹ · self · g`, the image of `self` under relabelling points by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u8; self.degree()];
        for i in 0..self.degree() {
            out[g.images[i] as usize] = g.images[self.images[i] as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// Writes `g⁻¹ · self · g` into `out` without allocating.
    #[inline]
    pub(crate) fn conjugate_by_into(&self, g: &[u8], out: &mut [u8]) {
        for i in 0..self.images.len() {
            out[g[i] as usize] = g[self.images[i] as usize];
        }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let mut base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least 2, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.image(p);
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn parity(&self) -> Parity {
        let cycles = self.cycle_type().len();
        if (self.degree() - cycles) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.images[point] as usize == point
    }

    /// Embeds into a larger degree, fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree() && degree <= MAX_DEGREE);
        let mut images = self.images.to_vec();
        images.extend((self.degree()..degree).map(|i| i as u8));
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Moves every point up by `offset` inside a permutation of degree `degree`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree && degree <= MAX_DEGREE);
        let mut images: Vec<u8> = (0..degree).map(|i| i as u8).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = (offset + x as usize) as u8;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[deg {}]", self.to_cycle_string(), self.degree())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
