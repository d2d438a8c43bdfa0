//! Cyclic extension: solvable subgroups up to conjugacy.
//!
//! A class `U` is extended by every `x ∈ N(U) \ U` whose image in `N(U)/U`
//! has prime order `p`, giving `⟨U, x⟩ = U ∪ Ux ∪ … ∪ Ux^{p-1}`. Every
//! solvable subgroup has a series with prime-index normal steps, so starting
//! from the trivial group (or from a subgroup normal in the ambient group)
//! reaches every solvable subgroup above the start up to conjugacy.
//!
//! Dedupe keeps the sorted element-index list of every conjugate of every
//! class, so a new candidate is a new class iff its key is unseen.

use std::collections::{HashMap, VecDeque};

use super::table::{Bits, ElementTable};

#[derive(Debug, Clone)]
pub(crate) struct ClassRecord {
    /// Sorted element indices.
    pub(crate) elements: Vec<u32>,
    pub(crate) gens: Vec<u32>,
    /// Number of distinct conjugates found by the conjugation sweep.
    pub(crate) conjugates: u64,
    pub(crate) normalizer_order: u64,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// All conjugates of `set` under the table's generators.
fn conjugates(table: &ElementTable, set: Vec<u32>) -> Vec<Vec<u32>> {
    let mut seen: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
    seen.insert(set.clone());
    let mut queue = VecDeque::from([set]);
    let mut out = Vec::new();
    while let Some(s) = queue.pop_front() {
        for &g in &table.gens {
            let c = table.conj_set(&s, g);
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
        out.push(s);
    }
    out
}

fn normalizer(table: &ElementTable, members: &Bits, gens: &[u32]) -> Vec<u32> {
    (0..table.len() as u32)
        .filter(|&x| gens.iter().all(|&u| members.contains(table.conj(u, x))))
        .collect()
}

/// Classes of subgroups `S ≥ ⟨start⟩` with `allowed(|S|)`, up to conjugacy
/// in the table's group. `⟨start⟩` must be normal in that group (the trivial
/// group always is). Classes are returned in discovery order.
pub(crate) fn cyclic_extension(
    table: &ElementTable,
    start: &[u32],
    allowed: &dyn Fn(u64) -> bool,
) -> Vec<ClassRecord> {
    let n = table.len();
    let first = table.closure(start);
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let conj = conjugates(table, first.clone());
    debug_assert_eq!(conj.len(), 1, "start subgroup must be normal");
    let mut classes = vec![ClassRecord {
        conjugates: conj.len() as u64,
        elements: first,
        gens: start.iter().copied().filter(|&g| g != 0).collect(),
        normalizer_order: 0,
    }];
    for c in conj {
        index.insert(c, 0);
    }
    let mut next = 0;
    while next < classes.len() {
        let u = classes[next].elements.clone();
        let u_gens = classes[next].gens.clone();
        let members = Bits::from_indices(n, &u);
        let norm = normalizer(table, &members, &u_gens);
        classes[next].normalizer_order = norm.len() as u64;
        debug_assert_eq!(
            classes[next].conjugates * norm.len() as u64,
            n as u64,
            "orbit-stabilizer on subgroup classes"
        );
        let mut covered = members.clone();
        for &x in &norm {
            if covered.contains(x) {
                continue;
            }
            // smallest m with x^m ∈ U; x normalizes U so this is the order of xU
            let mut powers = vec![0u32, x];
            while !members.contains(*powers.last().unwrap()) {
                let y = table.mul(*powers.last().unwrap(), x);
                powers.push(y);
            }
            let m = powers.len() - 1;
            if !is_prime(m) || !allowed((u.len() * m) as u64) {
                continue;
            }
            let mut s: Vec<u32> = Vec::with_capacity(u.len() * m);
            for &xi in &powers[..m] {
                for &a in &u {
                    s.push(table.mul(a, xi));
                }
            }
            s.sort_unstable();
            for &e in &s {
                covered.insert(e);
            }
            if index.contains_key(&s) {
                continue;
            }
            let id = classes.len();
            let conj = conjugates(table, s.clone());
            let count = conj.len() as u64;
            for c in conj {
                index.insert(c, id);
            }
            let mut gens = u_gens.clone();
            gens.push(x);
            classes.push(ClassRecord {
                elements: s,
                gens,
                conjugates: count,
                normalizer_order: 0,
            });
        }
        next += 1;
    }
    classes
}
