//! The computation behind each claim kind.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use super::{Claim, ClaimKind, StabilizerSpec, Verifier, VerifyError};
use crate::atlas::{known_order, sylow7_count, Atlas, GroupType, STABILIZER_TYPES};
use crate::coset_graph::{semiregular_parity, regular_representation_has_odd, CosetGraph};
use crate::group::{PermGroup, ScanOptions};
use crate::perm::{Parity, Permutation};
use crate::subgroups::{
    enumerate_solvable_subgroups_dividing, feasible_elements, is_isomorphic_to, CensusOptions,
    SubgroupClass,
};

#[derive(Debug, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case", deny_unknown_fields)]
pub(super) enum CensusParams {
    /// Every class of subgroups of the given order.
    Order { group: String, order: u64 },
    /// Classes of each target type, by Sylow-7 localization.
    Sylow7 { group: String, targets: Vec<GroupType> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct StabilizerParams {
    group: String,
    stabilizer: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct TableRow {
    t: String,
    m: String,
    index: String,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case", deny_unknown_fields)]
pub(super) enum ArithmeticParams {
    StabilizerOrders {
        bound: u64,
    },
    TableIndices {
        rows: Vec<TableRow>,
    },
    PrimeSupport {
        primes: Vec<u64>,
        groups: Vec<String>,
        #[serde(default)]
        stated: BTreeMap<String, String>,
    },
    AdmissibleDegrees {
        bound: u64,
        arc_bound: u64,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct ParityParams {
    orbit_sizes: Vec<usize>,
    orbit_count: usize,
}

#[derive(Debug)]
pub(super) enum Task {
    Census(CensusParams),
    Feasibility(StabilizerParams, StabilizerSpec),
    Graph(StabilizerParams, StabilizerSpec),
    Arithmetic(ArithmeticParams),
    Parity(ParityParams),
}

pub(super) struct Outcome {
    pub computed: Value,
    pub witness: Value,
}

fn params<T: serde::de::DeserializeOwned>(claim: &Claim) -> Result<T, VerifyError> {
    serde_json::from_value(claim.parameters.clone()).map_err(|e| VerifyError::InvalidClaim {
        id: claim.id.clone(),
        reason: e.to_string(),
    })
}

impl Task {
    /// Typed parameters; checks everything that needs no group computation.
    pub(super) fn parse(claim: &Claim) -> Result<Task, VerifyError> {
        let invalid = |reason: String| VerifyError::InvalidClaim {
            id: claim.id.clone(),
            reason,
        };
        let task = match claim.kind {
            ClaimKind::SubgroupCensus => Task::Census(params(claim)?),
            ClaimKind::Feasibility | ClaimKind::GraphProperty => {
                let p: StabilizerParams = params(claim)?;
                let spec = p.stabilizer.parse().map_err(|e: VerifyError| invalid(e.to_string()))?;
                if claim.kind == ClaimKind::Feasibility {
                    Task::Feasibility(p, spec)
                } else {
                    Task::Graph(p, spec)
                }
            }
            ClaimKind::Arithmetic => Task::Arithmetic(params(claim)?),
            ClaimKind::Parity => Task::Parity(params(claim)?),
        };
        match &task {
            Task::Census(CensusParams::Sylow7 { targets, .. }) if targets.is_empty() => {
                return Err(invalid("no census targets".into()));
            }
            Task::Census(CensusParams::Order { order: 0, .. }) => {
                return Err(invalid("order must be positive".into()));
            }
            Task::Parity(p) if p.orbit_sizes.contains(&0) => {
                return Err(invalid("orbit sizes must be positive".into()));
            }
            _ => {}
        }
        Ok(task)
    }

    pub(super) fn execute(&self, v: &Verifier, claim: &Claim, seed: u64) -> Result<Outcome, VerifyError> {
        let opts = CensusOptions {
            seed,
            scan: ScanOptions::with_budget(claim.budget),
            ..CensusOptions::default()
        };
        match self {
            Task::Census(p) => census(v, p, &opts),
            Task::Feasibility(p, spec) => feasibility(v, p, spec, &opts),
            Task::Graph(p, spec) => graph(v, p, spec, &opts),
            Task::Arithmetic(p) => arithmetic(v.atlas(), p),
            Task::Parity(p) => Ok(parity(p)),
        }
    }
}

/// Resolves a group and refuses it before any work if its order exceeds the
/// claim budget.
fn ambient(v: &Verifier, name: &str, opts: &CensusOptions) -> Result<PermGroup, VerifyError> {
    let g = v.atlas().resolve(name)?.with_name(name);
    let order = g.order()?;
    if order > opts.scan.budget {
        return Err(crate::group::GroupError::ScanBudgetExceeded {
            order,
            budget: opts.scan.budget,
        }
        .into());
    }
    Ok(g)
}

fn subgroup_witness(group: &str, c: &SubgroupClass) -> Value {
    json!({
        "group": group,
        "iso_label": c.iso_label,
        "order": c.order,
        "class_size": c.class_size,
        "normalizer_order": c.normalizer_order,
        "generators": c.representative.generator_strings(),
    })
}

fn census(v: &Verifier, p: &CensusParams, opts: &CensusOptions) -> Result<Outcome, VerifyError> {
    match p {
        CensusParams::Order { group, order } => {
            let g = ambient(v, group, opts)?;
            let all = enumerate_solvable_subgroups_dividing(&g, *order)?;
            let hits: Vec<&SubgroupClass> = all.iter().filter(|c| c.order == *order).collect();
            let mut by_order: BTreeMap<String, usize> = BTreeMap::new();
            for c in &all {
                *by_order.entry(c.order.to_string()).or_insert(0) += 1;
            }
            Ok(Outcome {
                computed: json!({
                    "group_order": g.order()?,
                    "class_count": hits.len(),
                    "classes_of_order_dividing": all.len(),
                    "classes_by_order": by_order,
                }),
                witness: json!({
                    "subgroups": hits.iter().map(|c| subgroup_witness(group, c)).collect::<Vec<_>>(),
                }),
            })
        }
        CensusParams::Sylow7 { group, targets } => {
            let g = ambient(v, group, opts)?;
            let loc = v.localization(&g, opts)?;
            let mut counts = BTreeMap::new();
            let mut subgroups = Vec::new();
            for &t in targets {
                let c = loc.census(t)?;
                counts.insert(t.label().to_string(), c.classes.len());
                subgroups.extend(c.classes.iter().map(|c| subgroup_witness(group, c)));
            }
            Ok(Outcome {
                computed: json!({
                    "group_order": g.order()?,
                    "class_counts": counts,
                    "sylow7_normalizer_order": loc.normalizer().order()?,
                }),
                witness: json!({
                    "seven_element": loc.seven_element().to_cycle_string(),
                    "subgroups": subgroups,
                }),
            })
        }
    }
}

fn stabilizer(
    v: &Verifier,
    g: &PermGroup,
    spec: &StabilizerSpec,
    opts: &CensusOptions,
) -> Result<PermGroup, VerifyError> {
    spec.resolve_with(g, &|| v.localization(g, opts))
}

fn feasible_witness(group: &str, h: &PermGroup, t: &Permutation, l: &PermGroup) -> Value {
    json!({
        "group": group,
        "stabilizer_generators": h.generator_strings(),
        "element": t.to_cycle_string(),
        "l_generators": l.generator_strings(),
    })
}

fn feasibility(
    v: &Verifier,
    p: &StabilizerParams,
    spec: &StabilizerSpec,
    opts: &CensusOptions,
) -> Result<Outcome, VerifyError> {
    let g = ambient(v, &p.group, opts)?;
    let h = stabilizer(v, &g, spec, opts)?;
    let search = feasible_elements(&g, &h, &opts.scan)?;
    Ok(Outcome {
        computed: json!({
            "stabilizer_order": h.order()?,
            "feasible_count": search.elements.len(),
            "index7_classes": search.index7_classes,
            "l_normalizer_orders": search.normalizer_orders,
        }),
        witness: json!({
            "stabilizer_generators": h.generator_strings(),
            "feasible": search
                .elements
                .iter()
                .map(|f| feasible_witness(&p.group, &h, &f.element, &f.l))
                .collect::<Vec<_>>(),
        }),
    })
}

fn graph(
    v: &Verifier,
    p: &StabilizerParams,
    spec: &StabilizerSpec,
    opts: &CensusOptions,
) -> Result<Outcome, VerifyError> {
    let g = ambient(v, &p.group, opts)?;
    let h = stabilizer(v, &g, spec, opts)?;
    let search = feasible_elements(&g, &h, &opts.scan)?;
    let Some(first) = search.elements.first() else {
        return Ok(Outcome {
            computed: json!({ "feasible_nonempty": false, "feasible_count": 0 }),
            witness: Value::Null,
        });
    };
    let cg = CosetGraph::build(&g, &h, &first.element)?;
    Ok(Outcome {
        computed: json!({
            "feasible_nonempty": true,
            "feasible_count": search.elements.len(),
            "vertex_count": cg.vertex_count(),
            "valency": cg.valency()?,
            "connected": cg.is_connected(),
            "generation_holds": cg.generation_holds(),
            "arc_orbits": cg.arc_orbit_count(&g)?,
            "diameter": cg.diameter(),
            "edge_count": cg.edges().len(),
        }),
        witness: json!({
            "feasible": [feasible_witness(&p.group, &h, &first.element, &first.l)],
        }),
    })
}

/// `n` as a sorted list of (prime, exponent).
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut k = 0;
        while n % d == 0 {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn factor_string(n: u64) -> String {
    factorize(n)
        .into_iter()
        .map(|(p, k)| if k == 1 { p.to_string() } else { format!("{p}^{k}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Evaluates a product like `2^2*3*7`.
fn eval_product(s: &str) -> Option<u64> {
    s.split('*').try_fold(1u64, |acc, f| {
        let f = f.trim();
        let v = match f.split_once('^') {
            Some((p, k)) => p.parse::<u64>().ok()?.checked_pow(k.parse().ok()?)?,
            None => f.parse().ok()?,
        };
        acc.checked_mul(v)
    })
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn arithmetic(atlas: &Atlas, p: &ArithmeticParams) -> Result<Outcome, VerifyError> {
    match p {
        ArithmeticParams::StabilizerOrders { bound } => {
            let mut rows = Vec::new();
            let (mut all_divide, mut all_unique) = (true, true);
            for t in STABILIZER_TYPES {
                let m = t.model();
                let order = m.order()?;
                let n7 = sylow7_count(&m, order)?;
                all_divide &= bound % order == 0;
                all_unique &= n7 == 1;
                rows.push(json!({ "type": t.label(), "order": order, "sylow7_count": n7 }));
            }
            Ok(Outcome {
                computed: json!({
                    "all_divide": all_divide,
                    "all_unique_sylow7": all_unique,
                    "type_count": STABILIZER_TYPES.len(),
                    "types": rows,
                }),
                witness: Value::Null,
            })
        }
        ArithmeticParams::TableIndices { rows } => {
            let mut out = Vec::new();
            let (mut checked, mut all_match) = (0usize, true);
            for r in rows {
                let (t, m, stated) = (known_order(&r.t), known_order(&r.m), eval_product(&r.index));
                let row = match (t, m, stated) {
                    (Some(t), Some(m), Some(stated)) => {
                        checked += 1;
                        let ok = t % m == 0 && t / m == stated;
                        all_match &= ok;
                        json!({ "t": r.t, "m": r.m, "t_order": t, "m_order": m,
                                "index": t / m, "stated": stated, "match": ok })
                    }
                    _ => json!({ "t": r.t, "m": r.m, "skipped": "symbolic row" }),
                };
                out.push(row);
            }
            Ok(Outcome {
                computed: json!({ "all_match": all_match, "checked_rows": checked, "rows": out }),
                witness: Value::Null,
            })
        }
        ArithmeticParams::PrimeSupport { primes, groups, stated } => {
            let mut rows = Vec::new();
            let mut all_supported = true;
            let mut mismatches = Vec::new();
            for name in groups {
                let order = atlas.resolve(name)?.order()?;
                let supported = factorize(order).iter().all(|(p, _)| primes.contains(p));
                all_supported &= supported;
                let stated_value = stated.get(name).map(|s| eval_product(s));
                if let Some(s) = stated_value {
                    if s != Some(order) {
                        mismatches.push(name.clone());
                    }
                }
                rows.push(json!({
                    "group": name,
                    "order": order,
                    "factorization": factor_string(order),
                    "supported": supported,
                    "stated": stated.get(name),
                    "stated_value": stated_value.flatten(),
                }));
            }
            Ok(Outcome {
                computed: json!({
                    "all_supported": all_supported,
                    "stated_mismatches": mismatches,
                    "groups": rows,
                }),
                witness: Value::Null,
            })
        }
        ArithmeticParams::AdmissibleDegrees { bound, arc_bound } => admissible_degrees(*bound, *arc_bound),
    }
}

/// Degrees `n` left open for `(A_{n-1}, A_n)`: `n = 7` or `n ≥ 14`, with
/// `n | bound` and `A_{n-1}` simple.
fn exceptional_degrees(bound: u64) -> Vec<u64> {
    divisors(bound)
        .into_iter()
        .filter(|&n| n == 7 || n >= 14)
        .collect()
}

fn admissible_degrees(bound: u64, arc_bound: u64) -> Result<Outcome, VerifyError> {
    let open = exceptional_degrees(bound);
    // arc-transitive: |T : G| = n divides the 7'-part of the stabilizer bound
    let arc: Vec<u64> = divisors(arc_bound)
        .into_iter()
        .filter(|n| open.contains(n))
        .collect();

    // regular: n = |T_v| is a stabilizer order; drop n when every index-7
    // subgroup of the type is cyclic of even order, since its generator is
    // then seven disjoint even cycles on the regular orbit
    let mut regular = Vec::new();
    let mut rows = Vec::new();
    let mut regular_odd = Vec::new();
    for t in STABILIZER_TYPES {
        let n = t.order();
        if !open.contains(&n) {
            continue;
        }
        let h = t.model();
        let m = n / 7;
        let ls: Vec<SubgroupClass> = enumerate_solvable_subgroups_dividing(&h, m)?
            .into_iter()
            .filter(|c| c.order == m)
            .collect();
        let cyclic = |l: &PermGroup| -> Result<bool, VerifyError> {
            Ok(l.enumerate_elements(m)?.any(|x| x.order() == m))
        };
        let mut obstructed = !ls.is_empty();
        for l in &ls {
            obstructed &= cyclic(&l.representative)? && semiregular_parity(m as usize, 7) == Parity::Odd;
        }
        if !obstructed {
            regular.push(n);
        }
        if regular_representation_has_odd(&h)? {
            regular_odd.push(n);
        }
        rows.push(json!({ "type": t.label(), "n": n, "index7_classes": ls.len(), "parity_obstructed": obstructed }));
    }
    Ok(Outcome {
        computed: json!({
            "open_degrees": open,
            "arc_transitive": arc,
            "regular": regular,
            "types": rows,
            "regular_representation_has_odd": regular_odd,
        }),
        witness: Value::Null,
    })
}

fn parity(p: &ParityParams) -> Outcome {
    let mut parities = Vec::new();
    let mut explicit = Vec::new();
    for &m in &p.orbit_sizes {
        parities.push(semiregular_parity(m, p.orbit_count).to_string());
        let degree = m * p.orbit_count;
        let cycles: Vec<Vec<usize>> = (0..p.orbit_count).map(|i| (i * m..(i + 1) * m).collect()).collect();
        let x = (degree <= crate::perm::MAX_DEGREE)
            .then(|| Permutation::from_cycles(degree, &cycles).ok())
            .flatten()
            .map(|x| x.parity().to_string());
        explicit.push(x);
    }
    Outcome {
        computed: json!({ "parities": parities, "explicit": explicit }),
        witness: Value::Null,
    }
}

/// Result of re-checking the witnesses of a report.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WitnessCheck {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Rebuilds every subgroup and feasible-element witness in `report` from its
/// generators and re-checks membership, order, type and the feasibility
/// conditions.
pub fn revalidate_witness(report: &super::ClaimReport, atlas: &Atlas) -> Result<WitnessCheck, VerifyError> {
    let mut out = WitnessCheck::default();
    let empty = Vec::new();
    let perms = |gens: &Value, degree: usize| -> Result<Vec<Permutation>, VerifyError> {
        gens.as_array()
            .unwrap_or(&empty)
            .iter()
            .map(|s| Ok(Permutation::parse_cycles(s.as_str().unwrap_or(""), degree)?))
            .collect()
    };
    let subgroups = report.witness.get("subgroups").and_then(Value::as_array);
    for w in subgroups.unwrap_or(&empty) {
        out.checked += 1;
        let name = w["group"].as_str().unwrap_or("");
        let g = atlas.resolve(name)?;
        let h = PermGroup::new(g.degree(), perms(&w["generators"], g.degree())?)?;
        let label = w["iso_label"].as_str().unwrap_or("");
        let mut ok = h.is_subgroup_of(&g)? && Some(h.order()?) == w["order"].as_u64();
        if let Ok(t) = label.parse::<GroupType>() {
            ok &= is_isomorphic_to(&h, t)?;
        }
        if !ok {
            out.failures.push(format!("{}: subgroup {label} in {name}", report.id));
        }
    }
    let feasible = report.witness.get("feasible").and_then(Value::as_array);
    for w in feasible.unwrap_or(&empty) {
        out.checked += 1;
        let name = w["group"].as_str().unwrap_or("");
        let g = atlas.resolve(name)?;
        let h = PermGroup::new(g.degree(), perms(&w["stabilizer_generators"], g.degree())?)?;
        let t = Permutation::parse_cycles(w["element"].as_str().unwrap_or(""), g.degree())?;
        let l = PermGroup::new(g.degree(), perms(&w["l_generators"], g.degree())?)?;
        let element = crate::subgroups::FeasibleElement {
            element: t,
            l,
            checks: Default::default(),
        };
        let ok = g.contains(&element.element)? && element.recheck(&g, &h)?.all_hold();
        if !ok {
            out.failures.push(format!("{}: feasible {}", report.id, w["element"]));
        }
    }
    Ok(out)
}
