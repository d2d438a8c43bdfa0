//! Concrete groups: constructors for the small families, the nine solvable
//! stabilizer types, shipped generator files for the simple groups, and
//! order constants for groups that only enter through index arithmetic.
//!
//! `D_n` denotes the dihedral group of order `2n` and `F_n` the Frobenius
//! group of order `n` (`F_21 = Z_7⋊Z_3`, `F_42 = Z_7⋊Z_6`).

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupError, PermGroup};
use crate::perm::{Permutation, MAX_DEGREE};

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("{name}: built order {found} differs from expected {expected}")]
    OrderMismatch {
        name: String,
        expected: u64,
        found: u64,
    },
    #[error("unsupported construction: {0}")]
    UnsupportedConstruction(String),
    #[error("duplicate atlas entry {0:?}")]
    DuplicateName(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parsing {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Constructed,
    #[default]
    DataFile,
}

/// A named group given by generators in 1-based cycle notation.
///
/// The on-disk JSON carries `name`, `degree`, `generators`, `expected_order`
/// and `source_note`; [`GroupSpec::to_json`] reproduces shipped files byte
/// for byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected_order: Option<u64>,
    #[serde(default)]
    pub source_note: String,
    #[serde(skip)]
    pub provenance: Provenance,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<GroupSpec, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Builds the group; refuses to return it if `expected_order` disagrees.
    pub fn build(&self) -> Result<PermGroup, AtlasError> {
        let g = PermGroup::from_cycle_strings(self.degree, &self.generators)?
            .with_name(self.name.clone());
        if let Some(expected) = self.expected_order {
            let found = g.order()?;
            if found != expected {
                return Err(AtlasError::OrderMismatch {
                    name: self.name.clone(),
                    expected,
                    found,
                });
            }
        }
        Ok(g)
    }

    pub fn from_group(g: &PermGroup, note: impl Into<String>) -> Result<GroupSpec, GroupError> {
        Ok(GroupSpec {
            name: g.name().to_string(),
            degree: g.degree(),
            generators: g.generator_strings(),
            expected_order: Some(g.order()?),
            source_note: note.into(),
            provenance: Provenance::Constructed,
        })
    }
}

const SHIPPED: &[(&str, &str)] = &[
    ("psl2_7.json", include_str!("../data/atlas/psl2_7.json")),
    ("psl2_8.json", include_str!("../data/atlas/psl2_8.json")),
    ("psu3_3.json", include_str!("../data/atlas/psu3_3.json")),
    ("psu4_3.json", include_str!("../data/atlas/psu4_3.json")),
];

/// A set of group data files, either the embedded copies or a directory.
#[derive(Debug, Clone)]
pub struct Atlas {
    specs: BTreeMap<String, GroupSpec>,
}

impl Atlas {
    pub fn embedded() -> Atlas {
        let mut specs = BTreeMap::new();
        for (file, text) in SHIPPED {
            let spec = GroupSpec::from_json(text).unwrap_or_else(|e| panic!("{file}: {e}"));
            specs.insert(spec.name.clone(), spec);
        }
        Atlas { specs }
    }

    /// Loads every `*.json` group file in `dir`.
    pub fn from_dir(dir: &Path) -> Result<Atlas, AtlasError> {
        let io_err = |source| AtlasError::Io {
            path: dir.display().to_string(),
            source,
        };
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(io_err)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut specs = BTreeMap::new();
        for path in paths {
            let text = std::fs::read_to_string(&path).map_err(|source| AtlasError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let spec = GroupSpec::from_json(&text).map_err(|source| AtlasError::Json {
                path: path.display().to_string(),
                source,
            })?;
            if specs.contains_key(&spec.name) {
                return Err(AtlasError::DuplicateName(spec.name));
            }
            specs.insert(spec.name.clone(), spec);
        }
        Ok(Atlas { specs })
    }

    pub fn names(&self) -> Vec<String> {
        self.specs.keys().cloned().collect()
    }

    pub fn spec(&self, name: &str) -> Option<&GroupSpec> {
        self.specs.get(name)
    }

    /// A shipped data-file group, order-checked.
    pub fn load(&self, name: &str) -> Result<PermGroup, AtlasError> {
        self.specs
            .get(name)
            .ok_or_else(|| AtlasError::UnknownGroup(name.to_string()))?
            .build()
    }

    /// Resolves data-file names, the constructed families `Z_n`, `D_n`, `F_21`,
    /// `F_42`, `A_n`, `S_n`, and direct products written `XxY`.
    pub fn resolve(&self, name: &str) -> Result<PermGroup, AtlasError> {
        let name = name.trim();
        if let Some(spec) = self.specs.get(name) {
            return spec.build();
        }
        let factors = split_top_level(name, 'x');
        if factors.len() > 1 {
            let mut acc = self.resolve(factors[0])?;
            for f in &factors[1..] {
                acc = make_direct_product(&acc, &self.resolve(f)?)?;
            }
            return Ok(acc.with_name(name));
        }
        let (family, n) = name
            .split_once('_')
            .and_then(|(f, n)| n.parse::<usize>().ok().map(|n| (f, n)))
            .ok_or_else(|| AtlasError::UnknownGroup(name.to_string()))?;
        match family {
            "Z" => make_cyclic(n),
            "D" => make_dihedral(n),
            "F" => make_frobenius(n),
            "A" => make_alternating(n),
            "S" => make_symmetric(n),
            _ => Err(AtlasError::UnknownGroup(name.to_string())),
        }
    }
}

impl Default for Atlas {
    fn default() -> Self {
        Atlas::embedded()
    }
}

/// A shipped data-file group from the embedded atlas.
pub fn load_atlas_group(name: &str) -> Result<PermGroup, AtlasError> {
    Atlas::embedded().load(name)
}

/// Any group name understood by [`Atlas::resolve`], using the embedded atlas.
pub fn resolve_group(name: &str) -> Result<PermGroup, AtlasError> {
    Atlas::embedded().resolve(name)
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn check_degree(n: usize, what: &str) -> Result<(), AtlasError> {
    if n == 0 || n > MAX_DEGREE {
        return Err(AtlasError::UnsupportedConstruction(format!(
            "{what} on {n} points"
        )));
    }
    Ok(())
}

fn cycle_on(points: std::ops::Range<usize>, degree: usize) -> Permutation {
    let pts: Vec<usize> = points.collect();
    Permutation::from_cycles(degree, &[pts]).expect("valid cycle")
}

fn affine_map(degree: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_usize_images(&(0..degree).map(f).collect::<Vec<_>>()).expect("bijection")
}

/// `Z_n` acting regularly on `n` points.
pub fn make_cyclic(n: usize) -> Result<PermGroup, AtlasError> {
    check_degree(n, "Z_n")?;
    Ok(PermGroup::new(n, vec![cycle_on(0..n, n)])?.with_name(format!("Z_{n}")))
}

/// `D_n` of order `2n` on `n` points (`n ≥ 3`).
pub fn make_dihedral(n: usize) -> Result<PermGroup, AtlasError> {
    if n < 3 {
        return Err(AtlasError::UnsupportedConstruction(format!(
            "D_{n} has no faithful action on {n} points"
        )));
    }
    check_degree(n, "D_n")?;
    let rotation = cycle_on(0..n, n);
    let reflection = affine_map(n, |i| (n - i) % n);
    Ok(PermGroup::new(n, vec![rotation, reflection])?.with_name(format!("D_{n}")))
}

/// `F_21 = Z_7⋊Z_3` or `F_42 = Z_7⋊Z_6`, affine maps on `GF(7)`.
pub fn make_frobenius(n: usize) -> Result<PermGroup, AtlasError> {
    let multiplier = match n {
        21 => 2, // order 3 mod 7
        42 => 3, // primitive root mod 7
        _ => {
            return Err(AtlasError::UnsupportedConstruction(format!(
                "F_{n}: only F_21 and F_42 are provided"
            )))
        }
    };
    let translation = affine_map(7, |x| (x + 1) % 7);
    let scaling = affine_map(7, |x| (multiplier * x) % 7);
    Ok(PermGroup::new(7, vec![translation, scaling])?.with_name(format!("F_{n}")))
}

pub fn make_alternating(n: usize) -> Result<PermGroup, AtlasError> {
    check_degree(n, "A_n")?;
    let gens = if n < 3 {
        Vec::new()
    } else if n % 2 == 1 {
        vec![cycle_on(0..3, n), cycle_on(0..n, n)]
    } else {
        vec![cycle_on(0..3, n), cycle_on(1..n, n)]
    };
    Ok(PermGroup::new(n, gens)?.with_name(format!("A_{n}")))
}

pub fn make_symmetric(n: usize) -> Result<PermGroup, AtlasError> {
    check_degree(n, "S_n")?;
    let gens = if n < 2 {
        Vec::new()
    } else {
        vec![cycle_on(0..2, n), cycle_on(0..n, n)]
    };
    Ok(PermGroup::new(n, gens)?.with_name(format!("S_{n}")))
}

/// `A × B` on the disjoint union of the two point sets.
pub fn make_direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup, AtlasError> {
    let degree = a.degree() + b.degree();
    check_degree(degree, "direct product")?;
    let mut gens: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|g| g.extend_to(degree))
        .collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), degree)));
    Ok(PermGroup::new(degree, gens)?.with_name(format!("{}x{}", a.name(), b.name())))
}

/// Isomorphism types used as census targets: the nine solvable vertex
/// stabilizers of 7-valent arc-transitive graphs, plus `F_21×Z_6`, which only
/// appears as an auxiliary target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupType {
    #[serde(rename = "Z_7")]
    Z7,
    #[serde(rename = "D_7")]
    D7,
    #[serde(rename = "F_21")]
    F21,
    #[serde(rename = "D_7xZ_2")]
    D7xZ2,
    #[serde(rename = "F_21xZ_3")]
    F21xZ3,
    #[serde(rename = "F_42")]
    F42,
    #[serde(rename = "F_42xZ_2")]
    F42xZ2,
    #[serde(rename = "F_42xZ_3")]
    F42xZ3,
    #[serde(rename = "F_42xZ_6")]
    F42xZ6,
    #[serde(rename = "F_21xZ_6")]
    F21xZ6,
}

pub const STABILIZER_TYPES: [GroupType; 9] = [
    GroupType::Z7,
    GroupType::D7,
    GroupType::F21,
    GroupType::D7xZ2,
    GroupType::F21xZ3,
    GroupType::F42,
    GroupType::F42xZ2,
    GroupType::F42xZ3,
    GroupType::F42xZ6,
];

impl GroupType {
    pub const ALL: [GroupType; 10] = [
        GroupType::Z7,
        GroupType::D7,
        GroupType::F21,
        GroupType::D7xZ2,
        GroupType::F21xZ3,
        GroupType::F42,
        GroupType::F42xZ2,
        GroupType::F42xZ3,
        GroupType::F42xZ6,
        GroupType::F21xZ6,
    ];

    pub fn label(self) -> &'static str {
        match self {
            GroupType::Z7 => "Z_7",
            GroupType::D7 => "D_7",
            GroupType::F21 => "F_21",
            GroupType::D7xZ2 => "D_7xZ_2",
            GroupType::F21xZ3 => "F_21xZ_3",
            GroupType::F42 => "F_42",
            GroupType::F42xZ2 => "F_42xZ_2",
            GroupType::F42xZ3 => "F_42xZ_3",
            GroupType::F42xZ6 => "F_42xZ_6",
            GroupType::F21xZ6 => "F_21xZ_6",
        }
    }

    pub fn order(self) -> u64 {
        match self {
            GroupType::Z7 => 7,
            GroupType::D7 => 14,
            GroupType::F21 => 21,
            GroupType::D7xZ2 => 28,
            GroupType::F42 => 42,
            GroupType::F21xZ3 => 63,
            GroupType::F42xZ2 => 84,
            GroupType::F42xZ3 | GroupType::F21xZ6 => 126,
            GroupType::F42xZ6 => 252,
        }
    }

    pub fn is_stabilizer_type(self) -> bool {
        self != GroupType::F21xZ6
    }

    /// The permutation model: a direct product of the natural actions.
    pub fn model(self) -> PermGroup {
        let build = || -> Result<PermGroup, AtlasError> {
            Ok(match self {
                GroupType::Z7 => make_cyclic(7)?,
                GroupType::D7 => make_dihedral(7)?,
                GroupType::F21 => make_frobenius(21)?,
                GroupType::F42 => make_frobenius(42)?,
                GroupType::D7xZ2 => make_direct_product(&make_dihedral(7)?, &make_cyclic(2)?)?,
                GroupType::F21xZ3 => make_direct_product(&make_frobenius(21)?, &make_cyclic(3)?)?,
                GroupType::F42xZ2 => make_direct_product(&make_frobenius(42)?, &make_cyclic(2)?)?,
                GroupType::F42xZ3 => make_direct_product(&make_frobenius(42)?, &make_cyclic(3)?)?,
                GroupType::F42xZ6 => make_direct_product(&make_frobenius(42)?, &make_cyclic(6)?)?,
                GroupType::F21xZ6 => make_direct_product(&make_frobenius(21)?, &make_cyclic(6)?)?,
            })
        };
        build().expect("model construction").with_name(self.label())
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for GroupType {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupType::ALL
            .into_iter()
            .find(|t| t.label() == s.trim())
            .ok_or_else(|| AtlasError::UnknownGroup(s.to_string()))
    }
}

/// Orders of groups that enter only through index arithmetic. Accepts the
/// names above plus `A_n`, `S_n`, `Z_n`, prime powers `p^k`, and structure
/// descriptions built from them with `x` (direct product) and `:` (split
/// extension), e.g. `(A_4xA_5):2` or `2^5:S_6`.
pub fn known_order(expr: &str) -> Option<u64> {
    let expr = expr.trim();
    let constant = match expr {
        "PSL(2,7)" => Some(168),
        "PSL(2,8)" => Some(504),
        "PSL(2,11)" => Some(660),
        "PSL(3,4)" => Some(20160),
        "PSU(3,3)" => Some(6048),
        "PSU(4,2)" => Some(25920),
        "PSU(4,3)" => Some(3_265_920),
        "PSp(6,2)" => Some(1_451_520),
        "M_11" => Some(7920),
        "M_12" => Some(95040),
        _ => None,
    };
    if constant.is_some() {
        return constant;
    }
    for sep in [':', 'x'] {
        let parts = split_top_level(expr, sep);
        if parts.len() > 1 {
            return parts
                .iter()
                .try_fold(1u64, |acc, p| acc.checked_mul(known_order(p)?));
        }
    }
    if let Some(inner) = expr.strip_prefix('(').and_then(|e| e.strip_suffix(')')) {
        return known_order(inner);
    }
    if let Some((p, k)) = expr.split_once('^') {
        let p: u64 = p.parse().ok()?;
        let k: u32 = k.parse().ok()?;
        return p.checked_pow(k);
    }
    if let Ok(n) = expr.parse::<u64>() {
        return Some(n);
    }
    let (family, n) = expr.split_once('_')?;
    let n: u64 = n.parse().ok()?;
    let factorial = (1..=n).try_fold(1u64, |a, k| a.checked_mul(k))?;
    match family {
        "A" if n >= 2 => Some(factorial / 2),
        "A" => Some(1),
        "S" => Some(factorial),
        "Z" => Some(n),
        "D" => Some(2 * n),
        _ => None,
    }
}

/// Number of subgroups of order 7, for groups whose order 7 is the full 7-part.
pub fn sylow7_count(g: &PermGroup, budget: u64) -> Result<u64, GroupError> {
    let sevens = g
        .enumerate_elements(budget)?
        .filter(|x| x.order() == 7)
        .count() as u64;
    Ok(sevens / 6)
}

/// Simplicity test for groups of order at most `limit`: the normal closure of
/// every element of prime order must be the whole group.
pub fn is_simple_small(g: &PermGroup, limit: u64) -> Result<bool, GroupError> {
    let order = g.order()?;
    if order == 1 {
        return Ok(false);
    }
    let elements = g.elements(limit)?;
    let mut done: HashSet<Permutation> = HashSet::new();
    for x in &elements {
        if x.is_identity() || done.contains(x) || !is_prime(x.order()) {
            continue;
        }
        if normal_closure(g, x)?.order()? != order {
            return Ok(false);
        }
        // the whole conjugacy class has the same normal closure
        let mut queue = vec![x.clone()];
        done.insert(x.clone());
        while let Some(y) = queue.pop() {
            for s in g.generators() {
                let z = y.conjugate_by(s);
                if done.insert(z.clone()) {
                    queue.push(z);
                }
            }
        }
    }
    Ok(true)
}

pub fn normal_closure(g: &PermGroup, x: &Permutation) -> Result<PermGroup, GroupError> {
    let mut closure = PermGroup::new(g.degree(), vec![x.clone()])?;
    loop {
        let mut added = false;
        let gens = closure.generators().to_vec();
        let mut extra = Vec::new();
        for k in &gens {
            for s in g.generators() {
                let c = k.conjugate_by(s);
                if !closure.contains(&c)? && !extra.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if !extra.is_empty() {
            added = true;
            closure = closure.join(&extra)?;
        }
        if !added {
            return Ok(closure);
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn order_histogram(g: &PermGroup) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for x in g.enumerate_elements(10_000_000).unwrap() {
            *h.entry(x.order()).or_insert(0) += 1;
        }
        h
    }

    #[test]
    fn constructor_orders_and_degrees() {
        let f21 = make_frobenius(21).unwrap();
        assert_eq!((f21.order().unwrap(), f21.degree()), (21, 7));
        assert_eq!(sylow7_count(&f21, 1000).unwrap(), 1);
        assert_eq!(make_dihedral(7).unwrap().order().unwrap(), 14);
        assert_eq!(make_alternating(7).unwrap().order().unwrap(), 2520);
        assert_eq!(make_symmetric(7).unwrap().order().unwrap(), 5040);
        assert_eq!(make_cyclic(6).unwrap().order().unwrap(), 6);
        assert_eq!(make_frobenius(42).unwrap().order().unwrap(), 42);
        for n in 3..=10 {
            let a = make_alternating(n).unwrap();
            assert_eq!(Some(a.order().unwrap()), known_order(&format!("A_{n}")));
        }
    }

    #[test]
    fn unsupported_constructions() {
        assert!(matches!(
            make_frobenius(20),
            Err(AtlasError::UnsupportedConstruction(_))
        ));
        assert!(matches!(
            make_dihedral(2),
            Err(AtlasError::UnsupportedConstruction(_))
        ));
        assert!(matches!(
            make_cyclic(300),
            Err(AtlasError::UnsupportedConstruction(_))
        ));
    }

    #[test]
    fn direct_products() {
        let f42 = make_frobenius(42).unwrap();
        let p = make_direct_product(&f42, &make_cyclic(2).unwrap()).unwrap();
        assert_eq!((p.order().unwrap(), p.degree()), (84, 9));
        let q = make_direct_product(&f42, &make_cyclic(6).unwrap()).unwrap();
        assert_eq!(q.order().unwrap(), 252);
        assert_eq!(252 % q.order().unwrap(), 0);
    }

    #[test]
    fn constructors_are_deterministic() {
        for t in GroupType::ALL {
            assert_eq!(t.model().generators(), t.model().generators());
        }
        assert_eq!(
            make_alternating(9).unwrap().generators(),
            make_alternating(9).unwrap().generators()
        );
    }

    #[test]
    fn stabilizer_models_have_listed_orders_and_unique_sylow7() {
        for t in GroupType::ALL {
            let m = t.model();
            assert_eq!(m.order().unwrap(), t.order(), "{t}");
            assert_eq!(252 % t.order(), 0, "{t}");
            assert_eq!(sylow7_count(&m, 1000).unwrap(), 1, "{t}");
            assert_eq!(t.label().parse::<GroupType>().unwrap(), t);
        }
    }

    #[test]
    fn shipped_groups_load_with_expected_orders() {
        let g = load_atlas_group("PSL(2,7)").unwrap();
        assert_eq!((g.degree(), g.order().unwrap()), (8, 168));
        let g = load_atlas_group("PSL(2,8)").unwrap();
        assert_eq!((g.degree(), g.order().unwrap()), (9, 504));
        assert_eq!(504, 8 * 9 * 7);
        let g = load_atlas_group("PSU(3,3)").unwrap();
        assert_eq!((g.degree(), g.order().unwrap()), (28, 6048));
        let g = load_atlas_group("PSU(4,3)").unwrap();
        assert_eq!((g.degree(), g.order().unwrap()), (112, 3_265_920));
        g.verify_chain(11, 50).unwrap();
    }

    #[test]
    fn order_formulas_for_the_simple_groups() {
        // |PSL(2,q)| = q(q^2-1)/gcd(2,q-1)
        let psl = |q: u64| q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 };
        assert_eq!(psl(7), 168);
        assert_eq!(psl(8), 504);
        // |PSU(3,q)| = q^3(q^2-1)(q^3+1)/gcd(3,q+1)
        let q = 3u64;
        assert_eq!(q.pow(3) * (q * q - 1) * (q.pow(3) + 1), 6048);
        // |PSU(4,q)| = q^6(q^2-1)(q^3+1)(q^4-1)/gcd(4,q+1)
        assert_eq!(
            q.pow(6) * (q * q - 1) * (q.pow(3) + 1) * (q.pow(4) - 1) / 4,
            3_265_920
        );
    }

    #[test]
    fn element_order_statistics_guard_transcription() {
        let psu = load_atlas_group("PSU(3,3)").unwrap();
        let expected: BTreeMap<u64, u64> = [
            (1, 1),
            (2, 63),
            (3, 728),
            (4, 504),
            (6, 504),
            (7, 1728),
            (8, 1512),
            (12, 1008),
        ]
        .into_iter()
        .collect();
        assert_eq!(order_histogram(&psu), expected);
        let psl = load_atlas_group("PSL(2,7)").unwrap();
        let expected: BTreeMap<u64, u64> =
            [(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)].into_iter().collect();
        assert_eq!(order_histogram(&psl), expected);
        let psl8 = load_atlas_group("PSL(2,8)").unwrap();
        let expected: BTreeMap<u64, u64> =
            [(1, 1), (2, 63), (3, 56), (7, 216), (9, 168)].into_iter().collect();
        assert_eq!(order_histogram(&psl8), expected);
    }

    #[test]
    fn simplicity_at_desk_scale() {
        for name in ["PSL(2,7)", "PSL(2,8)", "PSU(3,3)"] {
            assert!(is_simple_small(&load_atlas_group(name).unwrap(), 10_000).unwrap(), "{name}");
        }
        assert!(is_simple_small(&make_alternating(7).unwrap(), 10_000).unwrap());
        assert!(!is_simple_small(&make_symmetric(5).unwrap(), 10_000).unwrap());
        assert!(!is_simple_small(&make_frobenius(42).unwrap(), 10_000).unwrap());
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(
            load_atlas_group("PSU(5,2)"),
            Err(AtlasError::UnknownGroup(_))
        ));
        assert!(matches!(resolve_group("Q_8"), Err(AtlasError::UnknownGroup(_))));
        assert!(matches!(load_atlas_group("A_7"), Err(AtlasError::UnknownGroup(_))));
    }

    #[test]
    fn resolve_products_and_families() {
        let g = resolve_group("PSL(2,8)xZ_7").unwrap();
        assert_eq!((g.degree(), g.order().unwrap()), (16, 3528));
        assert_eq!(resolve_group("F_42xZ_6").unwrap().order().unwrap(), 252);
        assert_eq!(resolve_group("A_12").unwrap().degree(), 12);
    }

    #[test]
    fn shipped_files_round_trip_bit_exact() {
        for (file, text) in SHIPPED {
            let spec = GroupSpec::from_json(text).unwrap();
            assert_eq!(spec.to_json(), *text, "{file}");
        }
    }

    #[test]
    fn corrupted_file_is_refused() {
        let mut spec = Atlas::embedded().spec("PSL(2,7)").unwrap().clone();
        spec.generators.truncate(1);
        assert!(matches!(
            spec.build(),
            Err(AtlasError::OrderMismatch { expected: 168, .. })
        ));
    }

    #[test]
    fn table_orders() {
        assert_eq!(known_order("(A_4xA_5):2"), Some(1440));
        assert_eq!(known_order("(A_6xZ_3):2"), Some(2160));
        assert_eq!(known_order("2^5:S_6"), Some(23040));
        assert_eq!(known_order("2^4:A_5"), Some(960));
        assert_eq!(known_order("PSU(4,2):2"), Some(51840));
        assert_eq!(known_order("S_6"), Some(720));
        assert_eq!(known_order("Foo"), None);
    }
}
