//! Claim manifest and reproducible pass/fail reports.
//!
//! A claim binds an id to one computation and an expected result. PASS
//! needs every expected field to equal the computed field of the same name.
//! A claim carrying a `discrepancy` note reports DISCREPANCY-NOTED instead of
//! PASS: the computation agrees, the source text does not. Load failures and
//! budget overruns become SKIPPED, never half-results.

mod run;
mod stabilizer;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::atlas::{Atlas, AtlasError};
use crate::coset_graph::CosetGraphError;
use crate::group::{GroupError, PermGroup};
use crate::perm::PermError;
use crate::subgroups::{CensusOptions, SearchError, SylowLocalization};

pub use run::{revalidate_witness, WitnessCheck};
pub use stabilizer::StabilizerSpec;

/// Version of the report JSON layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;
/// Environment variable overriding every manifest seed.
pub const SEED_ENV: &str = "SYMGRAPH_SEED";

const SHIPPED_MANIFEST: &str = include_str!("../../data/claims.json");

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("invalid claim {id}: {reason}")]
    InvalidClaim { id: String, reason: String },
    #[error("duplicate claim id {0:?}")]
    DuplicateClaim(String),
    #[error("manifest: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid filter: {0}")]
    Filter(#[from] glob::PatternError),
    #[error("invalid stabilizer {0}")]
    InvalidStabilizer(String),
    #[error("{group} has no subgroup of type {label}")]
    NoSuchSubgroup { group: String, label: String },
    #[error("invalid {SEED_ENV}: {0:?}")]
    Seed(String),
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Graph(#[from] CosetGraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

impl VerifyError {
    /// A scan that would exceed its budget, wherever it was raised.
    fn is_budget(&self) -> bool {
        let budget = |e: &GroupError| matches!(e, GroupError::ScanBudgetExceeded { .. });
        match self {
            VerifyError::Group(e) => budget(e),
            VerifyError::Search(SearchError::Group(e)) => budget(e),
            VerifyError::Search(SearchError::AmbientTooLarge { .. }) => true,
            VerifyError::Graph(CosetGraphError::Group(e)) => budget(e),
            VerifyError::Graph(CosetGraphError::VertexBudgetExceeded { .. }) => true,
            VerifyError::Atlas(AtlasError::Group(e)) => budget(e),
            _ => false,
        }
    }

    fn is_load(&self) -> bool {
        matches!(self, VerifyError::Atlas(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    SubgroupCensus,
    Feasibility,
    Arithmetic,
    Parity,
    GraphProperty,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub id: String,
    /// Short label such as `C5`; accepted wherever an id is.
    pub label: String,
    /// Free text shown verbatim in reports.
    pub anchor: String,
    pub kind: ClaimKind,
    pub parameters: Value,
    pub expected: Value,
    pub seed: u64,
    /// Largest group order any scan of this claim may walk.
    pub budget: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub claims: Vec<Claim>,
}

impl Manifest {
    pub fn embedded() -> Manifest {
        Manifest::from_json(SHIPPED_MANIFEST).expect("shipped manifest is valid")
    }

    pub fn from_path(path: &Path) -> Result<Manifest, VerifyError> {
        let text = std::fs::read_to_string(path).map_err(|source| VerifyError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Manifest::from_json(&text)
    }

    /// Parses and validates every claim's parameters, so malformed claims
    /// fail here and not after heavy work.
    pub fn from_json(text: &str) -> Result<Manifest, VerifyError> {
        let m: Manifest = serde_json::from_str(text)?;
        let mut seen = std::collections::HashSet::new();
        for c in &m.claims {
            if !seen.insert(c.id.as_str()) || !seen.insert(c.label.as_str()) {
                return Err(VerifyError::DuplicateClaim(c.id.clone()));
            }
            run::Task::parse(c)?;
            if !c.expected.is_object() {
                return Err(VerifyError::InvalidClaim {
                    id: c.id.clone(),
                    reason: "expected must be an object".into(),
                });
            }
        }
        Ok(m)
    }

    pub fn claim(&self, id: &str) -> Result<&Claim, VerifyError> {
        self.claims
            .iter()
            .find(|c| c.id == id || c.label == id)
            .ok_or_else(|| VerifyError::UnknownClaim(id.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    DiscrepancyNoted,
    Skipped(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail => write!(f, "FAIL"),
            Status::DiscrepancyNoted => write!(f, "DISCREPANCY-NOTED"),
            Status::Skipped(reason) => write!(f, "SKIPPED({reason})"),
        }
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "PASS" => Ok(Status::Pass),
            "FAIL" => Ok(Status::Fail),
            "DISCREPANCY-NOTED" => Ok(Status::DiscrepancyNoted),
            _ => s
                .strip_prefix("SKIPPED(")
                .and_then(|r| r.strip_suffix(')'))
                .map(|r| Status::Skipped(r.to_string()))
                .ok_or_else(|| format!("unknown status {s:?}")),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Status {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedSource {
    Manifest,
    Environment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub schema_version: u32,
    pub id: String,
    pub label: String,
    pub anchor: String,
    pub kind: ClaimKind,
    pub status: Status,
    pub expected: Value,
    pub computed: Value,
    pub witness: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<String>,
    pub seed: u64,
    pub seed_source: SeedSource,
    pub wall_time_ms: u64,
}

impl ClaimReport {
    /// Report JSON without the wall time; identical across reruns with the
    /// same seed.
    pub fn body_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().unwrap().remove("wall_time_ms");
        serde_json::to_string_pretty(&v).unwrap()
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        format!(
            "{:<4} {:<22} {:<18} {:>8} ms  {}",
            self.label, self.id, self.status.to_string(), self.wall_time_ms, self.anchor
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub pass: usize,
    pub fail: usize,
    pub discrepancy_noted: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub filter: Option<String>,
    pub reports: Vec<ClaimReport>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    /// 0 iff no claim failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }
}

type LocalizationSlot = Arc<Mutex<Option<Arc<SylowLocalization>>>>;

/// Runs claims against an atlas; Sylow-7 data is computed once per
/// (group, seed, budget) and shared between claims.
pub struct Verifier {
    manifest: Manifest,
    atlas: Atlas,
    seed_override: Option<u64>,
    localizations: Mutex<HashMap<(String, u64, u64), LocalizationSlot>>,
}

impl Verifier {
    pub fn new(manifest: Manifest, atlas: Atlas) -> Verifier {
        Verifier {
            manifest,
            atlas,
            seed_override: None,
            localizations: Mutex::new(HashMap::new()),
        }
    }

    /// Shipped manifest and embedded atlas.
    pub fn embedded() -> Verifier {
        Verifier::new(Manifest::embedded(), Atlas::embedded())
    }

    pub fn with_seed_override(mut self, seed: Option<u64>) -> Verifier {
        self.seed_override = seed;
        self
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    pub fn atlas(&self) -> &Atlas {
        &self.atlas
    }

    pub(crate) fn localization(
        &self,
        g: &PermGroup,
        opts: &CensusOptions,
    ) -> Result<Arc<SylowLocalization>, VerifyError> {
        let key = (g.name().to_string(), opts.seed, opts.scan.budget);
        let slot = self
            .localizations
            .lock()
            .unwrap()
            .entry(key)
            .or_default()
            .clone();
        // held while computing, so a concurrent claim waits and reuses
        let mut guard = slot.lock().unwrap();
        if let Some(loc) = guard.as_ref() {
            return Ok(loc.clone());
        }
        let loc = Arc::new(SylowLocalization::new(g, opts)?);
        *guard = Some(loc.clone());
        Ok(loc)
    }

    pub fn run_claim(&self, id: &str) -> Result<ClaimReport, VerifyError> {
        let claim = self.manifest.claim(id)?;
        Ok(self.run(claim))
    }

    fn run(&self, claim: &Claim) -> ClaimReport {
        let (seed, seed_source) = match self.seed_override {
            Some(s) => (s, SeedSource::Environment),
            None => (claim.seed, SeedSource::Manifest),
        };
        log::info!("running {} ({})", claim.id, claim.label);
        let start = Instant::now();
        let result = run::Task::parse(claim).and_then(|task| task.execute(self, claim, seed));
        let wall_time_ms = start.elapsed().as_millis() as u64;
        let (status, computed, witness) = match result {
            Ok(outcome) => {
                let agrees = expected_matches(&claim.expected, &outcome.computed);
                let status = match (agrees, &claim.discrepancy) {
                    (false, _) => Status::Fail,
                    (true, Some(_)) => Status::DiscrepancyNoted,
                    (true, None) => Status::Pass,
                };
                (status, outcome.computed, outcome.witness)
            }
            Err(e) => {
                let status = if e.is_load() {
                    Status::Skipped("load-error".into())
                } else if e.is_budget() {
                    Status::Skipped("budget".into())
                } else {
                    Status::Fail
                };
                (status, serde_json::json!({ "error": e.to_string() }), Value::Null)
            }
        };
        ClaimReport {
            schema_version: REPORT_SCHEMA_VERSION,
            id: claim.id.clone(),
            label: claim.label.clone(),
            anchor: claim.anchor.clone(),
            kind: claim.kind,
            status,
            expected: claim.expected.clone(),
            computed,
            witness,
            discrepancy: claim.discrepancy.clone(),
            seed,
            seed_source,
            wall_time_ms,
        }
    }

    /// Runs every claim whose id or label matches the glob `filter`, in
    /// manifest order either way.
    pub fn run_suite(&self, filter: Option<&str>, parallel: bool) -> Result<SuiteReport, VerifyError> {
        let pattern = filter.map(glob::Pattern::new).transpose()?;
        let selected: Vec<&Claim> = self
            .manifest
            .claims
            .iter()
            .filter(|c| {
                pattern
                    .as_ref()
                    .is_none_or(|p| p.matches(&c.id) || p.matches(&c.label))
            })
            .collect();
        let reports: Vec<ClaimReport> = if parallel {
            selected.par_iter().map(|c| self.run(c)).collect()
        } else {
            selected.iter().map(|c| self.run(c)).collect()
        };
        let mut summary = SuiteSummary::default();
        for r in &reports {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::DiscrepancyNoted => summary.discrepancy_noted += 1,
                Status::Skipped(_) => summary.skipped += 1,
            }
        }
        Ok(SuiteReport {
            schema_version: REPORT_SCHEMA_VERSION,
            filter: filter.map(String::from),
            reports,
            summary,
        })
    }
}

/// Every field of `expected` is present in `computed` with an equal value.
fn expected_matches(expected: &Value, computed: &Value) -> bool {
    match (expected.as_object(), computed.as_object()) {
        (Some(e), Some(c)) => e.iter().all(|(k, v)| c.get(k) == Some(v)),
        _ => false,
    }
}

/// Reads the seed override from the environment, if set.
pub fn seed_override_from_env() -> Result<Option<u64>, VerifyError> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| VerifyError::Seed(s)),
        Err(_) => Ok(None),
    }
}

/// Counts per status, for quick assertions.
pub fn status_counts(reports: &[ClaimReport]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for r in reports {
        *out.entry(r.status.to_string()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_manifest_has_twelve_claims() {
        let m = Manifest::embedded();
        assert_eq!(m.claims.len(), 12);
        let labels: Vec<&str> = m.claims.iter().map(|c| c.label.as_str()).collect();
        let want: Vec<String> = (1..=12).map(|i| format!("C{i}")).collect();
        assert_eq!(labels, want);
        assert_eq!(m.claim("C5").unwrap().id, "a12-unique-F42x2");
    }

    #[test]
    fn unknown_claim() {
        assert!(matches!(
            Verifier::embedded().run_claim("nonexistent"),
            Err(VerifyError::UnknownClaim(_))
        ));
    }

    #[test]
    fn status_round_trip() {
        for s in [
            Status::Pass,
            Status::Fail,
            Status::DiscrepancyNoted,
            Status::Skipped("load-error".into()),
        ] {
            let j = serde_json::to_string(&s).unwrap();
            assert_eq!(serde_json::from_str::<Status>(&j).unwrap(), s);
        }
        assert_eq!(Status::Skipped("budget".into()).to_string(), "SKIPPED(budget)");
    }

    #[test]
    fn expectation_matching() {
        let e = serde_json::json!({ "a": 1 });
        assert!(expected_matches(&e, &serde_json::json!({ "a": 1, "b": 2 })));
        assert!(!expected_matches(&e, &serde_json::json!({ "a": 2 })));
        assert!(!expected_matches(&e, &serde_json::json!({ "b": 1 })));
    }

    #[test]
    fn malformed_claims_are_rejected_at_load() {
        let base = serde_json::to_value(Manifest::embedded()).unwrap();
        let mut bad = base.clone();
        bad["claims"][0]["parameters"]["mode"] = "bogus".into();
        assert!(matches!(
            Manifest::from_json(&bad.to_string()),
            Err(VerifyError::InvalidClaim { .. })
        ));
        let mut dup = base.clone();
        dup["claims"][1]["id"] = "psu33-index24".into();
        assert!(matches!(
            Manifest::from_json(&dup.to_string()),
            Err(VerifyError::DuplicateClaim(_))
        ));
        let mut bad_type = base;
        bad_type["claims"][1]["parameters"]["targets"] = serde_json::json!(["Q_8"]);
        assert!(Manifest::from_json(&bad_type.to_string()).is_err());
    }

    #[test]
    fn filter_and_light_claims() {
        let v = Verifier::embedded();
        let suite = v.run_suite(Some("C[789]"), false).unwrap();
        assert_eq!(suite.reports.len(), 3);
        assert_eq!(suite.summary.pass, 3, "{:#?}", suite.reports);
        assert_eq!(suite.exit_code(), 0);
        assert!(matches!(v.run_suite(Some("[abc"), false), Err(VerifyError::Filter(_))));
    }

    #[test]
    fn budget_overrun_is_skipped() {
        let mut m = Manifest::embedded();
        m.claims.retain(|c| c.label == "C2");
        m.claims[0].budget = 100;
        let v = Verifier::new(m, Atlas::embedded());
        let r = v.run_claim("C2").unwrap();
        assert_eq!(r.status, Status::Skipped("budget".into()));
    }
}
