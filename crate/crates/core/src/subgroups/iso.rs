//! Isomorphism testing and fingerprints for groups of order at most 252.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::table::ElementTable;
use super::SearchError;
use crate::atlas::GroupType;
use crate::group::PermGroup;

/// Largest order handled by the Cayley-table routines.
pub const MAX_ISO_ORDER: u64 = 252;

/// Multiplication table; index 0 is the identity.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    orders: Vec<u32>,
}

impl CayleyTable {
    pub fn from_group(h: &PermGroup) -> Result<CayleyTable, SearchError> {
        let order = h.order()?;
        if order > MAX_ISO_ORDER {
            return Err(SearchError::TooLarge {
                order,
                limit: MAX_ISO_ORDER,
            });
        }
        let t = ElementTable::new(h, MAX_ISO_ORDER)?;
        let n = t.len();
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = t.mul(a as u32, b as u32) as u16;
            }
        }
        Ok(CayleyTable::from_mul(n, mul))
    }

    fn from_mul(n: usize, mul: Vec<u16>) -> CayleyTable {
        let mut inv = vec![0u16; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("group") as u16;
        }
        let mut table = CayleyTable {
            n,
            mul,
            inv,
            orders: Vec::new(),
        };
        table.orders = (0..n)
            .map(|a| {
                let (mut x, mut k) = (a as u16, 1u32);
                while x != 0 {
                    x = table.m(x, a as u16);
                    k += 1;
                }
                k
            })
            .collect();
        table
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn m(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.n + b as usize]
    }

    fn commutes(&self, a: u16, b: u16) -> bool {
        self.m(a, b) == self.m(b, a)
    }

    fn centralizer_size(&self, a: u16) -> usize {
        (0..self.n as u16).filter(|&b| self.commutes(a, b)).count()
    }

    fn invariants(&self) -> Vec<(u32, usize)> {
        (0..self.n as u16)
            .map(|a| (self.orders[a as usize], self.centralizer_size(a)))
            .collect()
    }

    /// Subgroup generated by `gens`, as a membership mask.
    fn closure(&self, gens: &[u16]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0u16];
        while let Some(a) = stack.pop() {
            for &s in gens {
                let b = self.m(a, s);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    stack.push(b);
                }
            }
        }
        seen
    }

    /// A small generating set: each step adds the element that enlarges the
    /// generated subgroup most, ties broken by larger order then lower index.
    pub fn generating_set(&self) -> Vec<u16> {
        let mut gens: Vec<u16> = Vec::new();
        let mut size = 1;
        while size < self.n {
            let mut best: Option<(usize, u32, u16)> = None;
            for a in 1..self.n as u16 {
                let mut trial = gens.clone();
                trial.push(a);
                let s = self.closure(&trial).iter().filter(|&&x| x).count();
                let key = (s, self.orders[a as usize]);
                if best.is_none_or(|(bs, bo, _)| key > (bs, bo)) {
                    best = Some((s, self.orders[a as usize], a));
                }
            }
            let (s, _, a) = best.expect("nontrivial group");
            gens.push(a);
            size = s;
        }
        gens
    }

    /// Extends `gens[i] ↦ images[i]` along the Cayley graph; returns whether
    /// the result is a well-defined bijective homomorphism.
    fn extends_to_isomorphism(&self, gens: &[u16], other: &CayleyTable, images: &[u16]) -> bool {
        let mut phi: Vec<Option<u16>> = vec![None; self.n];
        phi[0] = Some(0);
        let mut stack = vec![0u16];
        while let Some(a) = stack.pop() {
            let pa = phi[a as usize].unwrap();
            for (&s, &t) in gens.iter().zip(images) {
                let b = self.m(a, s);
                let target = other.m(pa, t);
                match phi[b as usize] {
                    Some(pb) if pb != target => return false,
                    Some(_) => {}
                    None => {
                        phi[b as usize] = Some(target);
                        stack.push(b);
                    }
                }
            }
        }
        let mut hit = vec![false; other.n];
        for p in phi {
            let p = p.expect("generating set reaches every element") as usize;
            if hit[p] {
                return false;
            }
            hit[p] = true;
        }
        true
    }

    pub fn is_isomorphic(&self, other: &CayleyTable) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut mine = self.invariants();
        let mut theirs = other.invariants();
        let by_elem_self = mine.clone();
        let by_elem_other = theirs.clone();
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs {
            return false;
        }
        let gens = self.generating_set();
        let candidates: Vec<Vec<u16>> = gens
            .iter()
            .map(|&g| {
                (0..other.n as u16)
                    .filter(|&b| by_elem_other[b as usize] == by_elem_self[g as usize])
                    .collect()
            })
            .collect();
        let mut images = vec![0u16; gens.len()];
        self.search(&gens, other, &candidates, &mut images, 0)
    }

    fn search(
        &self,
        gens: &[u16],
        other: &CayleyTable,
        candidates: &[Vec<u16>],
        images: &mut Vec<u16>,
        depth: usize,
    ) -> bool {
        if depth == gens.len() {
            return self.extends_to_isomorphism(gens, other, images);
        }
        for &c in &candidates[depth] {
            // relations between earlier generators constrain commuting pairs
            let consistent = (0..depth).all(|i| {
                self.commutes(gens[i], gens[depth]) == other.commutes(images[i], c)
            });
            if !consistent {
                continue;
            }
            images[depth] = c;
            if self.search(gens, other, candidates, images, depth + 1) {
                return true;
            }
        }
        false
    }

    fn center_size(&self) -> usize {
        (0..self.n as u16)
            .filter(|&a| self.centralizer_size(a) == self.n)
            .count()
    }

    fn derived_subgroup(&self) -> Vec<bool> {
        let mut comms: Vec<u16> = Vec::new();
        let mut seen = vec![false; self.n];
        for a in 0..self.n as u16 {
            for b in 0..self.n as u16 {
                let c = self.m(self.m(self.inv[a as usize], self.inv[b as usize]), self.m(a, b));
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    comms.push(c);
                }
            }
        }
        self.closure(&comms)
    }

    /// Invariants of `G/G'` as a sorted list of prime powers.
    fn abelianization(&self, derived: &[bool]) -> Vec<u64> {
        // coset of a: minimal index in a·G'
        let dset: Vec<u16> = (0..self.n as u16).filter(|&d| derived[d as usize]).collect();
        let coset: Vec<u16> = (0..self.n as u16)
            .map(|a| dset.iter().map(|&d| self.m(a, d)).min().unwrap())
            .collect();
        let mut reps: Vec<u16> = coset.clone();
        reps.sort_unstable();
        reps.dedup();
        let q = reps.len() as u64;
        let quotient_order = |a: u16| -> u64 {
            let (mut x, mut k) = (a, 1u64);
            while !derived[x as usize] {
                x = self.m(x, a);
                k += 1;
            }
            k
        };
        let qorders: Vec<u64> = reps.iter().map(|&r| quotient_order(r)).collect();
        let mut out = Vec::new();
        for p in prime_factors(q) {
            let mut prev_rank = 0u32;
            let mut counts_by_k = Vec::new();
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let c = qorders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let rank = c.ilog(p);
                counts_by_k.push(rank - prev_rank);
                if rank == prev_rank {
                    break;
                }
                prev_rank = rank;
                k += 1;
            }
            // counts_by_k[k-1] = number of cyclic p-factors of exponent ≥ k
            for (k, w) in counts_by_k.iter().enumerate() {
                let next = counts_by_k.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(w - next) {
                    out.push(p.pow(k as u32 + 1));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut histogram = BTreeMap::new();
        for &o in &self.orders {
            *histogram.entry(o as u64).or_insert(0u64) += 1;
        }
        let derived = self.derived_subgroup();
        Fingerprint {
            order: self.n as u64,
            element_orders: histogram,
            center: self.center_size() as u64,
            derived: derived.iter().filter(|&&x| x).count() as u64,
            abelianization: self.abelianization(&derived),
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Isomorphism invariants reported for groups that match no named type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u64,
    pub element_orders: BTreeMap<u64, u64>,
    pub center: u64,
    pub derived: u64,
    pub abelianization: Vec<u64>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self
            .element_orders
            .iter()
            .map(|(o, c)| format!("{o}:{c}"))
            .collect();
        let ab: Vec<String> = self.abelianization.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "other(order={}, orders={{{}}}, center={}, derived={}, abelianization=[{}])",
            self.order,
            orders.join(","),
            self.center,
            self.derived,
            ab.join(",")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoLabel {
    Known(GroupType),
    Other(Fingerprint),
}

impl IsoLabel {
    pub fn group_type(&self) -> Option<GroupType> {
        match self {
            IsoLabel::Known(t) => Some(*t),
            IsoLabel::Other(_) => None,
        }
    }
}

impl fmt::Display for IsoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoLabel::Known(t) => write!(f, "{t}"),
            IsoLabel::Other(fp) => write!(f, "{fp}"),
        }
    }
}

/// Cayley tables of the atlas models, built once.
pub fn model_table(t: GroupType) -> &'static CayleyTable {
    static TABLES: OnceLock<Vec<CayleyTable>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        GroupType::ALL
            .iter()
            .map(|t| CayleyTable::from_group(&t.model()).expect("models are small"))
            .collect()
    });
    let i = GroupType::ALL.iter().position(|&x| x == t).unwrap();
    &tables[i]
}

/// Whether `h` is isomorphic to the model of `t`.
pub fn is_isomorphic_to(h: &PermGroup, t: GroupType) -> Result<bool, SearchError> {
    if h.order()? != t.order() {
        return Ok(false);
    }
    Ok(CayleyTable::from_group(h)?.is_isomorphic(model_table(t)))
}

/// Names `h` if it is isomorphic to one of the atlas types, otherwise
/// returns its fingerprint.
pub fn iso_type_identify(h: &PermGroup) -> Result<IsoLabel, SearchError> {
    let table = CayleyTable::from_group(h)?;
    for t in GroupType::ALL {
        if t.order() == table.n as u64 && table.is_isomorphic(model_table(t)) {
            return Ok(IsoLabel::Known(t));
        }
    }
    Ok(IsoLabel::Other(table.fingerprint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{self, make_cyclic, make_direct_product, make_frobenius};
    use crate::perm::Permutation;

    /// Right-regular representation of a group, as permutations of its elements.
    fn regular(g: &PermGroup) -> PermGroup {
        let els = g.elements(1000).unwrap();
        let pos = |p: &Permutation| els.binary_search(p).unwrap();
        let gens = g
            .generators()
            .iter()
            .map(|s| {
                let img: Vec<usize> = els.iter().map(|x| pos(&x.then(s))).collect();
                Permutation::from_usize_images(&img).unwrap()
            })
            .collect();
        PermGroup::new(els.len(), gens).unwrap()
    }

    #[test]
    fn regular_f42_is_recognized() {
        let r = regular(&make_frobenius(42).unwrap());
        assert_eq!(r.degree(), 42);
        assert_eq!(iso_type_identify(&r).unwrap(), IsoLabel::Known(GroupType::F42));
    }

    #[test]
    fn cyclic_42_is_not_f42() {
        let label = iso_type_identify(&make_cyclic(42).unwrap()).unwrap();
        let IsoLabel::Other(fp) = &label else {
            panic!("{label}")
        };
        assert_eq!(fp.order, 42);
        assert_eq!(fp.center, 42);
        assert_eq!(fp.derived, 1);
        assert_eq!(fp.abelianization, vec![2, 3, 7]);
        assert!(label.to_string().starts_with("other(order=42"));
    }

    #[test]
    fn psl27_point_stabilizer_is_f21() {
        let g = atlas::load_atlas_group("PSL(2,7)").unwrap();
        let h = g.point_stabilizer(0).unwrap();
        assert_eq!(h.order().unwrap(), 21);
        assert_eq!(iso_type_identify(&h).unwrap(), IsoLabel::Known(GroupType::F21));
    }

    #[test]
    fn product_with_trivial_group_keeps_type() {
        let x = make_direct_product(&make_frobenius(42).unwrap(), &PermGroup::trivial(1)).unwrap();
        assert_eq!(iso_type_identify(&x).unwrap(), IsoLabel::Known(GroupType::F42));
    }

    #[test]
    fn f42xz3_and_f21xz6_are_told_apart() {
        let a = GroupType::F42xZ3.model();
        let b = GroupType::F21xZ6.model();
        assert!(!model_table(GroupType::F42xZ3).is_isomorphic(model_table(GroupType::F21xZ6)));
        // centralizer of a 7-element: 21 versus 42
        let seven = |g: &PermGroup| {
            g.enumerate_elements(1000)
                .unwrap()
                .find(|x| x.order() == 7)
                .unwrap()
        };
        let opts = crate::group::ScanOptions::default();
        assert_eq!(a.centralizer_scan(&seven(&a), &opts).unwrap().order().unwrap(), 21);
        assert_eq!(b.centralizer_scan(&seven(&b), &opts).unwrap().order().unwrap(), 42);
        assert_eq!(iso_type_identify(&a).unwrap(), IsoLabel::Known(GroupType::F42xZ3));
        assert_eq!(iso_type_identify(&b).unwrap(), IsoLabel::Known(GroupType::F21xZ6));
    }

    #[test]
    fn models_are_pairwise_distinct_and_self_isomorphic() {
        for a in GroupType::ALL {
            for b in GroupType::ALL {
                assert_eq!(model_table(a).is_isomorphic(model_table(b)), a == b, "{a} {b}");
            }
        }
    }

    #[test]
    fn conjugated_models_are_recognized() {
        let g = atlas::make_symmetric(9).unwrap();
        for (k, t) in GroupType::ALL.into_iter().filter(|t| t.model().degree() <= 9).enumerate() {
            let m = t.model();
            let m = PermGroup::new(9, m.generators().iter().map(|x| x.extend_to(9)).collect()).unwrap();
            let c = m.conjugate(&g.random_element(k as u64)).unwrap();
            assert_eq!(iso_type_identify(&c).unwrap(), IsoLabel::Known(t));
        }
    }

    #[test]
    fn too_large_is_refused() {
        let a6 = atlas::make_alternating(6).unwrap();
        assert!(matches!(
            iso_type_identify(&a6),
            Err(SearchError::TooLarge { order: 360, .. })
        ));
    }

    #[test]
    fn abelianization_invariants() {
        let t = CayleyTable::from_group(&GroupType::F42xZ6.model()).unwrap();
        assert_eq!(t.fingerprint().abelianization, vec![2, 2, 3, 3]);
        let z = make_direct_product(&make_cyclic(4).unwrap(), &make_cyclic(2).unwrap()).unwrap();
        let t = CayleyTable::from_group(&z).unwrap();
        assert_eq!(t.fingerprint().abelianization, vec![2, 4]);
        let d7 = CayleyTable::from_group(&GroupType::D7.model()).unwrap().fingerprint();
        assert_eq!((d7.center, d7.derived, d7.abelianization), (1, 7, vec![2]));
    }
}
