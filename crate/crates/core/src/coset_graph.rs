//! Coset graphs `Cos(G, H, HtH)` and their quotients.
//!
//! Vertices are the right cosets `Hx`. A coset is named by its
//! lexicographically least member `min_{h ∈ H} hx`, and vertices are numbered
//! in increasing order of that name, so numbering is stable across runs.
//! `Hx ~ Hdx` for `d ∈ HtH`; since `Hdx = H(th)x`, the neighbours of `Hx` are
//! `Hr x` for the distinct cosets `Hr` inside `HtH`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupError, PermGroup};
use crate::perm::{Parity, Permutation};

/// Default cap on `|G : H|`.
pub const VERTEX_BUDGET: usize = 100_000;
/// Cap on the vertex count for arc-orbit and quotient computations.
pub const ANALYSIS_BUDGET: usize = 10_000;
/// Cap on `|H|`: each coset name costs `|H|` products.
pub const MAX_STABILIZER_ORDER: u64 = 10_000;

#[derive(Debug, Error)]
pub enum CosetGraphError {
    #[error("stabilizer is not a subgroup of the group")]
    NotASubgroup,
    #[error("element does not lie in the group")]
    ElementNotInGroup,
    #[error("t² is not in the stabilizer, so HtH is not closed under inverses")]
    InvolutionConditionFailed,
    #[error("{vertices} vertices exceed the budget {budget}")]
    VertexBudgetExceeded { vertices: u64, budget: usize },
    #[error("stabilizer order {0} exceeds {MAX_STABILIZER_ORDER}")]
    StabilizerTooLarge(u64),
    #[error("vertex degrees differ ({min} to {max})")]
    Irregular { min: usize, max: usize },
    #[error("subgroup has {0} elements, too many to act on vertices")]
    ActingGroupTooLarge(u64),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphProvenance {
    pub group: String,
    pub group_generators: Vec<String>,
    pub stabilizer_generators: Vec<String>,
    pub element: String,
}

#[derive(Debug, Clone)]
pub struct CosetGraph {
    provenance: GraphProvenance,
    degree: usize,
    h_elements: Vec<Permutation>,
    labels: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    adjacency: Vec<Vec<u32>>,
    /// Vertex permutations induced by the generators of `G`.
    generator_actions: Vec<Vec<u32>>,
    /// Orders of the two sides of the connectivity criterion.
    group_order: u64,
    generated_order: u64,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    provenance: &'a GraphProvenance,
    vertex_count: usize,
    edges: Vec<[u32; 2]>,
}

struct Canon<'a> {
    h: &'a [Permutation],
    buf: Vec<u8>,
}

impl<'a> Canon<'a> {
    fn new(h: &'a [Permutation], degree: usize) -> Canon<'a> {
        Canon {
            h,
            buf: vec![0; degree],
        }
    }

    /// Least member of the right coset `Hx`.
    fn name(&mut self, x: &Permutation) -> Permutation {
        let xi = x.images();
        let mut best: Option<Vec<u8>> = None;
        for h in self.h {
            for (i, &p) in h.images().iter().enumerate() {
                self.buf[i] = xi[p as usize];
            }
            if best.as_ref().is_none_or(|b| self.buf < *b) {
                best = Some(self.buf.clone());
            }
        }
        Permutation::from_images(best.expect("H is nonempty")).expect("coset member")
    }
}

impl CosetGraph {
    /// Builds `Cos(G, H, HtH)`.
    pub fn build(g: &PermGroup, h: &PermGroup, t: &Permutation) -> Result<CosetGraph, CosetGraphError> {
        CosetGraph::build_with_budget(g, h, t, VERTEX_BUDGET)
    }

    pub fn build_with_budget(
        g: &PermGroup,
        h: &PermGroup,
        t: &Permutation,
        budget: usize,
    ) -> Result<CosetGraph, CosetGraphError> {
        if h.degree() != g.degree() || !h.is_subgroup_of(g)? {
            return Err(CosetGraphError::NotASubgroup);
        }
        if !g.contains(t)? {
            return Err(CosetGraphError::ElementNotInGroup);
        }
        if !h.contains(&t.then(t))? {
            return Err(CosetGraphError::InvolutionConditionFailed);
        }
        let h_order = h.order()?;
        if h_order > MAX_STABILIZER_ORDER {
            return Err(CosetGraphError::StabilizerTooLarge(h_order));
        }
        let g_order = g.order()?;
        let vertices = g_order / h_order;
        if vertices > budget as u64 {
            return Err(CosetGraphError::VertexBudgetExceeded { vertices, budget });
        }
        let h_elements = h.elements(h_order)?;
        let degree = g.degree();
        let mut canon = Canon::new(&h_elements, degree);

        let start = canon.name(&Permutation::identity(degree));
        let mut seen: HashMap<Permutation, ()> = HashMap::from([(start.clone(), ())]);
        let mut queue = VecDeque::from([start]);
        let mut labels = Vec::new();
        while let Some(x) = queue.pop_front() {
            for s in g.generators() {
                let y = canon.name(&x.then(s));
                if seen.insert(y.clone(), ()).is_none() {
                    queue.push_back(y);
                }
            }
            labels.push(x);
        }
        labels.sort();
        debug_assert_eq!(labels.len() as u64, vertices);
        let index: HashMap<Permutation, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();

        // cosets Hr inside HtH, without H itself (no loops)
        let mut reps: BTreeSet<Permutation> = h_elements.iter().map(|k| canon.name(&t.then(k))).collect();
        reps.remove(&labels[0]);
        let adjacency: Vec<Vec<u32>> = labels
            .iter()
            .map(|x| {
                let mut nb: Vec<u32> = reps.iter().map(|r| index[&canon.name(&r.then(x))]).collect();
                nb.sort_unstable();
                nb.dedup();
                nb
            })
            .collect();
        let generator_actions = g
            .generators()
            .iter()
            .map(|s| labels.iter().map(|x| index[&canon.name(&x.then(s))]).collect())
            .collect();
        let generated_order = h.join(std::slice::from_ref(t))?.order()?;
        let provenance = GraphProvenance {
            group: g.name().to_string(),
            group_generators: g.generator_strings(),
            stabilizer_generators: h.generator_strings(),
            element: t.to_cycle_string(),
        };
        Ok(CosetGraph {
            provenance,
            degree,
            h_elements,
            labels,
            index,
            adjacency,
            generator_actions,
            group_order: g_order,
            generated_order,
        })
    }

    pub fn provenance(&self) -> &GraphProvenance {
        &self.provenance
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Canonical coset representative of each vertex.
    pub fn labels(&self) -> &[Permutation] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    /// Vertex of the coset `Hx`.
    pub fn vertex_of(&self, x: &Permutation) -> Option<usize> {
        let mut canon = Canon::new(&self.h_elements, self.degree);
        self.index.get(&canon.name(x)).map(|&v| v as usize)
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<[u32; 2]> {
        let mut out = Vec::new();
        for (u, nb) in self.adjacency.iter().enumerate() {
            for &v in nb {
                if (u as u32) < v {
                    out.push([u as u32, v]);
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.adjacency.iter().enumerate().all(|(u, nb)| {
            nb.iter()
                .all(|&v| self.adjacency[v as usize].binary_search(&(u as u32)).is_ok())
        })
    }

    pub fn valency(&self) -> Result<usize, CosetGraphError> {
        let min = self.adjacency.iter().map(Vec::len).min().unwrap_or(0);
        let max = self.adjacency.iter().map(Vec::len).max().unwrap_or(0);
        if min != max {
            return Err(CosetGraphError::Irregular { min, max });
        }
        Ok(min)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0u32];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// `|⟨H, t⟩| = |G|`, the group-theoretic side of connectivity.
    pub fn generation_holds(&self) -> bool {
        self.generated_order == self.group_order
    }

    pub fn diameter(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best = 0;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if dist[v as usize] == usize::MAX {
                        dist[v as usize] = dist[u] + 1;
                        queue.push_back(v as usize);
                    }
                }
            }
            let far = *dist.iter().max().unwrap();
            if far == usize::MAX {
                return None;
            }
            best = best.max(far);
        }
        Some(best)
    }

    pub fn generator_actions(&self) -> &[Vec<u32>] {
        &self.generator_actions
    }

    /// Vertex permutation induced by right multiplication with `x`.
    pub fn action_of(&self, x: &Permutation) -> Result<Vec<u32>, CosetGraphError> {
        let mut canon = Canon::new(&self.h_elements, self.degree);
        self.labels
            .iter()
            .map(|y| {
                self.index
                    .get(&canon.name(&y.then(x)))
                    .copied()
                    .ok_or(CosetGraphError::ElementNotInGroup)
            })
            .collect()
    }

    /// Whether every generator action maps edges to edges.
    pub fn generators_preserve_edges(&self) -> bool {
        self.generator_actions.iter().all(|a| {
            self.adjacency.iter().enumerate().all(|(u, nb)| {
                let au = a[u] as usize;
                nb.iter()
                    .all(|&v| self.adjacency[au].binary_search(&a[v as usize]).is_ok())
            })
        })
    }

    fn check_analysis_budget(&self) -> Result<(), CosetGraphError> {
        if self.vertex_count() > ANALYSIS_BUDGET {
            return Err(CosetGraphError::VertexBudgetExceeded {
                vertices: self.vertex_count() as u64,
                budget: ANALYSIS_BUDGET,
            });
        }
        Ok(())
    }

    /// Number of orbits of the subgroup `a` (of `G`) on arcs.
    pub fn arc_orbit_count(&self, a: &PermGroup) -> Result<usize, CosetGraphError> {
        self.check_analysis_budget()?;
        let actions = a
            .generators()
            .iter()
            .map(|x| self.action_of(x))
            .collect::<Result<Vec<_>, _>>()?;
        let mut offset = vec![0usize; self.vertex_count() + 1];
        for (u, nb) in self.adjacency.iter().enumerate() {
            offset[u + 1] = offset[u] + nb.len();
        }
        let arc_id = |u: usize, v: u32| -> usize {
            offset[u] + self.adjacency[u].binary_search(&v).expect("arc")
        };
        let mut uf = UnionFind::new(offset[self.vertex_count()]);
        for act in &actions {
            for (u, nb) in self.adjacency.iter().enumerate() {
                for &v in nb {
                    let image = arc_id(act[u] as usize, act[v as usize]);
                    uf.union(arc_id(u, v), image);
                }
            }
        }
        Ok(uf.count())
    }

    /// JSON `{provenance, vertex_count, edges}`.
    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            provenance: &self.provenance,
            vertex_count: self.vertex_count(),
            edges: self.edges(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    /// One `u v` line per edge, 0-based, `u < v`, sorted.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for [u, v] in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Orbit partition of a subgroup `n` of `G` and the quotient graph.
    pub fn quotient_graph(&self, g: &PermGroup, n: &PermGroup) -> Result<QuotientGraph, CosetGraphError> {
        self.check_analysis_budget()?;
        if !n.is_subgroup_of(g)? {
            return Err(CosetGraphError::NotASubgroup);
        }
        let n_order = n.order()?;
        let vcount = self.vertex_count();
        if n_order.saturating_mul(vcount as u64) > 100_000_000 {
            return Err(CosetGraphError::ActingGroupTooLarge(n_order));
        }
        let actions = n
            .generators()
            .iter()
            .map(|x| self.action_of(x))
            .collect::<Result<Vec<_>, _>>()?;
        let mut uf = UnionFind::new(vcount);
        for act in &actions {
            for (v, &w) in act.iter().enumerate() {
                uf.union(v, w as usize);
            }
        }
        // orbits numbered by least vertex
        let mut orbit_of = vec![u32::MAX; vcount];
        let mut root_id: HashMap<usize, u32> = HashMap::new();
        for v in 0..vcount {
            let r = uf.find(v);
            let next = root_id.len() as u32;
            orbit_of[v] = *root_id.entry(r).or_insert(next);
        }
        let orbit_count = root_id.len();

        let semiregular = induced_action_is_semiregular(&actions, vcount);
        let normal = n.generators().iter().all(|x| {
            g.generators()
                .iter()
                .all(|s| n.contains(&x.conjugate_by(s)).unwrap_or(false))
        });

        let mut quotient: BTreeSet<(u32, u32)> = BTreeSet::new();
        let mut crossing = 0usize;
        let mut internal = 0usize;
        for [u, v] in self.edges() {
            let (a, b) = (orbit_of[u as usize], orbit_of[v as usize]);
            if a == b {
                internal += 1;
            } else {
                crossing += 1;
                quotient.insert((a.min(b), a.max(b)));
            }
        }
        let mut adjacency = vec![Vec::new(); orbit_count];
        for &(a, b) in &quotient {
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }

        let parent_valency = self.valency()?;
        let gate = if !semiregular {
            QuotientGate::NotSemiregular
        } else if !normal {
            QuotientGate::NotNormal
        } else if orbit_count < 3 {
            QuotientGate::FewerThanThreeOrbits
        } else if !crate::atlas::is_prime(parent_valency as u64) {
            QuotientGate::ValencyNotPrime
        } else if self.arc_orbit_count(g)? != 1 {
            QuotientGate::NotArcTransitive
        } else {
            QuotientGate::Applies
        };
        let quotient_valency = {
            let lens: BTreeSet<usize> = adjacency.iter().map(Vec::len).collect();
            (lens.len() == 1).then(|| *lens.iter().next().unwrap())
        };
        let valency_preserved =
            (gate == QuotientGate::Applies).then_some(quotient_valency == Some(parent_valency));
        Ok(QuotientGraph {
            orbit_of,
            orbit_count,
            adjacency,
            collapsed_edges: crossing - quotient.len(),
            internal_edges: internal,
            semiregular,
            normal,
            gate,
            parent_valency,
            quotient_valency,
            valency_preserved,
        })
    }
}

/// Whether the group generated by the vertex permutations `actions` acts
/// semiregularly: no non-identity element fixes a vertex.
fn induced_action_is_semiregular(actions: &[Vec<u32>], n: usize) -> bool {
    let id: Vec<u32> = (0..n as u32).collect();
    let mut seen: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for a in actions {
            let q: Vec<u32> = p.iter().map(|&i| a[i as usize]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.iter().all(|p| {
        p.iter().enumerate().all(|(i, &j)| i as u32 == j) || p.iter().enumerate().all(|(i, &j)| i as u32 != j)
    })
}

/// Which hypothesis of the valency-preservation statement failed, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuotientGate {
    Applies,
    NotSemiregular,
    NotNormal,
    FewerThanThreeOrbits,
    ValencyNotPrime,
    NotArcTransitive,
}

/// Quotient by the orbits of a subgroup. Multi-edges collapse to single edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientGraph {
    /// Orbit index of each parent vertex; orbits numbered by least vertex.
    pub orbit_of: Vec<u32>,
    pub orbit_count: usize,
    pub adjacency: Vec<Vec<u32>>,
    /// Parent edges between distinct orbits beyond the first for each pair.
    pub collapsed_edges: usize,
    /// Parent edges inside a single orbit (dropped).
    pub internal_edges: usize,
    pub semiregular: bool,
    pub normal: bool,
    pub gate: QuotientGate,
    pub parent_valency: usize,
    pub quotient_valency: Option<usize>,
    /// `Some` only when every hypothesis holds.
    pub valency_preserved: Option<bool>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// `|H : H ∩ H^t|`, the valency predicted by group theory.
pub fn group_theoretic_valency(h: &PermGroup, t: &Permutation) -> Result<u64, GroupError> {
    let els = h.elements(MAX_STABILIZER_ORDER)?;
    let t_inv = t.inverse();
    let inter = els
        .iter()
        .filter(|u| els.binary_search(&u.conjugate_by(&t_inv)).is_ok())
        .count() as u64;
    Ok(els.len() as u64 / inter)
}

/// Parity of a permutation made of `orbit_count` disjoint `orbit_size`-cycles:
/// sign `(−1)^{orbit_count·(orbit_size−1)}`.
pub fn semiregular_parity(orbit_size: usize, orbit_count: usize) -> Parity {
    assert!(orbit_size >= 1, "orbit size must be positive");
    if (orbit_count * (orbit_size - 1)) % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Whether the right-regular representation of `h` contains an odd
/// permutation: an element of order `k` acts as `|h|/k` cycles of length `k`.
pub fn regular_representation_has_odd(h: &PermGroup) -> Result<bool, GroupError> {
    let n = h.order()?;
    Ok(h
        .enumerate_elements(MAX_STABILIZER_ORDER)?
        .any(|x| semiregular_parity(x.order() as usize, (n / x.order()) as usize) == Parity::Odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas;
    use crate::subgroups::feasible_elements;

    fn k8() -> (PermGroup, PermGroup, Permutation) {
        let g = atlas::load_atlas_group("PSL(2,7)").unwrap();
        let h = g.point_stabilizer(0).unwrap();
        let t = feasible_elements(&g, &h, &Default::default()).unwrap().elements[0]
            .element
            .clone();
        (g, h, t)
    }

    #[test]
    fn psl27_gives_k8() {
        let (g, h, t) = k8();
        let cg = CosetGraph::build(&g, &h, &t).unwrap();
        assert_eq!(cg.vertex_count(), 8);
        assert_eq!(cg.valency().unwrap(), 7);
        assert_eq!(group_theoretic_valency(&h, &t).unwrap(), 7);
        assert!(cg.is_connected() && cg.generation_holds());
        assert_eq!(cg.diameter(), Some(1));
        assert_eq!(cg.edges().len(), 28);
        assert!(cg.is_symmetric());
        assert!(cg.generators_preserve_edges());
        assert_eq!(cg.arc_orbit_count(&g).unwrap(), 1);
        assert_eq!(cg.arc_orbit_count(&PermGroup::trivial(8)).unwrap(), 56);
        assert_eq!(cg.vertex_of(&Permutation::identity(8)), Some(0));
    }

    #[test]
    fn whole_group_as_stabilizer_gives_a_point() {
        let g = atlas::make_alternating(5).unwrap();
        let cg = CosetGraph::build(&g, &g, &Permutation::identity(5)).unwrap();
        assert_eq!(cg.vertex_count(), 1);
        assert_eq!(cg.valency().unwrap(), 0);
        assert!(cg.is_connected());
        assert!(cg.edges().is_empty());
    }

    #[test]
    fn disconnected_when_h_and_t_generate_a_proper_subgroup() {
        let g = atlas::make_symmetric(4).unwrap();
        let h = PermGroup::trivial(4);
        let t = Permutation::parse_cycles("(1 2)", 4).unwrap();
        let cg = CosetGraph::build(&g, &h, &t).unwrap();
        assert_eq!((cg.vertex_count(), cg.valency().unwrap()), (24, 1));
        assert!(!cg.is_connected());
        assert!(!cg.generation_holds());
        let s3 = PermGroup::from_cycle_strings(4, &["(1 2)"]).unwrap();
        let t2 = Permutation::parse_cycles("(1 2 3 4)", 4).unwrap();
        // t² ∉ H
        assert!(matches!(
            CosetGraph::build(&g, &s3, &t2),
            Err(CosetGraphError::InvolutionConditionFailed)
        ));
    }

    #[test]
    fn connectivity_matches_generation_on_s4() {
        let g = atlas::make_symmetric(4).unwrap();
        let h = PermGroup::from_cycle_strings(4, &["(1 2)"]).unwrap();
        for t in g.elements(100).unwrap() {
            if !h.contains(&t.then(&t)).unwrap() || h.contains(&t).unwrap() {
                continue;
            }
            let cg = CosetGraph::build(&g, &h, &t).unwrap();
            assert_eq!(cg.is_connected(), cg.generation_holds(), "{t}");
            assert_eq!(cg.valency().unwrap() as u64, group_theoretic_valency(&h, &t).unwrap());
            assert!(cg.is_symmetric() && cg.generators_preserve_edges());
            assert_eq!(cg.arc_orbit_count(&g).unwrap(), usize::from(cg.valency().unwrap() > 0));
        }
    }

    #[test]
    fn exports_are_sorted_and_consistent() {
        let (g, h, t) = k8();
        let cg = CosetGraph::build(&g, &h, &t).unwrap();
        let text = cg.edge_list();
        assert_eq!(text.lines().count(), 28);
        assert!(text.starts_with("0 1\n0 2\n"));
        let v: serde_json::Value = serde_json::from_str(&cg.to_json()).unwrap();
        assert_eq!(v["vertex_count"], 8);
        assert_eq!(v["edges"].as_array().unwrap().len(), 28);
        assert_eq!(v["provenance"]["group"], "PSL(2,7)");
        let again = CosetGraph::build(&g, &h, &t).unwrap();
        assert_eq!(again.edge_list(), text);
    }

    #[test]
    fn vertex_budget() {
        let g = atlas::make_alternating(9).unwrap();
        let h = PermGroup::trivial(9);
        assert!(matches!(
            CosetGraph::build(&g, &h, &Permutation::identity(9)),
            Err(CosetGraphError::VertexBudgetExceeded { vertices: 181440, .. })
        ));
    }

    #[test]
    fn trivial_quotient_is_the_parent() {
        let (g, h, t) = k8();
        let cg = CosetGraph::build(&g, &h, &t).unwrap();
        let q = cg.quotient_graph(&g, &PermGroup::trivial(8)).unwrap();
        assert_eq!(q.orbit_count, 8);
        assert_eq!(q.quotient_valency, Some(7));
        assert_eq!(q.collapsed_edges, 0);
        assert_eq!(q.gate, QuotientGate::Applies);
        assert_eq!(q.valency_preserved, Some(true));
    }

    #[test]
    fn k8_quotient_by_an_involution_is_gated() {
        let (g, h, t) = k8();
        let cg = CosetGraph::build(&g, &h, &t).unwrap();
        let inv = g
            .elements(1000)
            .unwrap()
            .into_iter()
            .find(|x| x.order() == 2)
            .unwrap();
        let z2 = PermGroup::new(8, vec![inv]).unwrap();
        let q = cg.quotient_graph(&g, &z2).unwrap();
        assert!(q.semiregular);
        assert!(!q.normal);
        assert_eq!(q.orbit_count, 4);
        assert_eq!(q.quotient_valency, Some(3));
        // 28 edges: 4 inside orbits, 24 across 6 orbit pairs
        assert_eq!((q.internal_edges, q.collapsed_edges), (4, 18));
        assert_eq!(q.gate, QuotientGate::NotNormal);
        assert_eq!(q.valency_preserved, None);
    }

    #[test]
    fn parity_of_semiregular_elements() {
        assert_eq!(semiregular_parity(2, 7), Parity::Odd);
        assert_eq!(semiregular_parity(6, 7), Parity::Odd);
        assert_eq!(semiregular_parity(1, 7), Parity::Even);
        for m in 1..=36 {
            let cycles: Vec<Vec<usize>> = (0..7).map(|i| (i * m..(i + 1) * m).collect()).collect();
            let p = Permutation::from_cycles(7 * m, &cycles).unwrap();
            assert_eq!(semiregular_parity(m, 7), p.parity(), "m = {m}");
        }
    }

    #[test]
    fn regular_representation_parity() {
        use crate::atlas::GroupType;
        let odd: Vec<u64> = GroupType::ALL
            .into_iter()
            .filter(|t| t.is_stabilizer_type())
            .filter(|t| regular_representation_has_odd(&t.model()).unwrap())
            .map(|t| t.order())
            .collect();
        assert_eq!(odd, vec![14, 42, 126]);
    }
}
