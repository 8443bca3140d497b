//! Executable checks of the solvability, nilpotency and real-element criteria.
//!
//! Each check runs against one corpus group and returns a [`VerdictReport`]. An
//! `Inconsistent` outcome means a verified computation contradicted the criterion
//! being checked; it never occurs on the shipped corpus.
//!
//! Pair scans reduce the first coordinate to class representatives and the second to
//! one member of each centralizer orbit on a class. Every scanned predicate is invariant
//! under simultaneous conjugation, so this loses nothing (the oracle tests compare
//! against unreduced scans).

mod checks;
mod replay;
mod scan;
pub mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atlas::{self, AtlasError, GroupSpec};
use crate::group::{GroupError, PermGroup, DEFAULT_ENUMERATION_CAP};
use crate::structure::DEFAULT_DEGREE_CAP;
use crate::table::GroupTable;

pub use checks::{
    alt_inverting_involution, diagonal_identity_trials, find_normalizing_pair, table_d_scan,
    NormalizingPair, TableDScan,
};
pub use replay::replay;
pub use scan::GroupContext;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("witness does not replay: {0}")]
    Replay(String),
}

/// Default groups for `run_corpus`.
pub const DEFAULT_MANIFEST: &str = include_str!("default.manifest");

/// Largest group order for which the element graphs are built (quadratic memory).
pub const DEFAULT_GRAPH_ORDER_CAP: u128 = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    PropertyStar,
    SolvableCriterion,
    NilpotentCondition,
    NilpotentCriterion,
    NormalizingPair,
    RealCentralizers,
    DirectFactor,
    RadicalMembership,
    GraphEqualities,
    MinimalNonNilpotent,
    RadicalQuotient,
    BaerSuzuki,
    PCoreMembership,
    TableDM11,
    DiagonalIdentity,
}

impl CheckId {
    pub const ALL: [CheckId; 15] = [
        CheckId::PropertyStar,
        CheckId::SolvableCriterion,
        CheckId::NilpotentCondition,
        CheckId::NilpotentCriterion,
        CheckId::NormalizingPair,
        CheckId::RealCentralizers,
        CheckId::DirectFactor,
        CheckId::RadicalMembership,
        CheckId::GraphEqualities,
        CheckId::MinimalNonNilpotent,
        CheckId::RadicalQuotient,
        CheckId::BaerSuzuki,
        CheckId::PCoreMembership,
        CheckId::TableDM11,
        CheckId::DiagonalIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::PropertyStar => "property-star",
            CheckId::SolvableCriterion => "thm-solvable",
            CheckId::NilpotentCondition => "nilpotent-condition",
            CheckId::NilpotentCriterion => "thm-nilpotent",
            CheckId::NormalizingPair => "normalizing-pair",
            CheckId::RealCentralizers => "real-centralizers",
            CheckId::DirectFactor => "direct-factor",
            CheckId::RadicalMembership => "radical-membership",
            CheckId::GraphEqualities => "graph-equalities",
            CheckId::MinimalNonNilpotent => "minimal-non-nilpotent",
            CheckId::RadicalQuotient => "radical-quotient",
            CheckId::BaerSuzuki => "baer-suzuki",
            CheckId::PCoreMembership => "p-core-membership",
            CheckId::TableDM11 => "table-d-m11",
            CheckId::DiagonalIdentity => "diagonal-identity",
        }
    }

    /// Parses a comma-separated list, rejecting unknown ids.
    pub fn parse_list(text: &str) -> Result<Vec<CheckId>, HarnessError> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(CheckId::from_str)
            .collect()
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| HarnessError::UnknownCheck(s.to_string()))
    }
}

impl Serialize for CheckId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum Outcome {
    Consistent,
    WitnessFound,
    Inconsistent(String),
    Skipped(String),
}

impl Outcome {
    pub fn is_inconsistent(&self) -> bool {
        matches!(self, Outcome::Inconsistent(_))
    }
}

/// One concrete piece of evidence: named elements as cycle strings, named orders of
/// subgroups or centralizers, and a short note.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessItem {
    pub elements: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub orders: BTreeMap<String, u128>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl WitnessItem {
    pub fn element(mut self, name: &str, p: &crate::Permutation) -> Self {
        self.elements.insert(name.to_string(), p.to_string());
        self
    }

    pub fn order(mut self, name: &str, value: u128) -> Self {
        self.orders.insert(name.to_string(), value);
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.note = text.into();
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub pairs: u64,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub spec: String,
    pub check: CheckId,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessItem>>,
    /// Named boolean or numeric facts computed along the way.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub facts: BTreeMap<String, serde_json::Value>,
    pub stats: Stats,
}

impl VerdictReport {
    pub(crate) fn new(spec: &str, check: CheckId, outcome: Outcome) -> Self {
        VerdictReport {
            spec: spec.to_string(),
            check,
            outcome,
            witness: None,
            facts: BTreeMap::new(),
            stats: Stats::default(),
        }
    }

    pub(crate) fn with_witness(mut self, items: Vec<WitnessItem>) -> Self {
        self.witness = (!items.is_empty()).then_some(items);
        self
    }

    pub(crate) fn fact(mut self, name: &str, value: impl Into<serde_json::Value>) -> Self {
        self.facts.insert(name.to_string(), value.into());
        self
    }

    pub fn fact_bool(&self, name: &str) -> Option<bool> {
        self.facts.get(name).and_then(|v| v.as_bool())
    }

    pub fn witness_items(&self) -> &[WitnessItem] {
        self.witness.as_deref().unwrap_or(&[])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub cap: u128,
    pub degree_cap: u128,
    pub extended: bool,
    pub graph_order_cap: u128,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cap: DEFAULT_ENUMERATION_CAP,
            degree_cap: DEFAULT_DEGREE_CAP,
            extended: false,
            graph_order_cap: DEFAULT_GRAPH_ORDER_CAP,
        }
    }
}

/// Runs one check against a prepared context.
pub fn run_check(ctx: &GroupContext, check: CheckId) -> VerdictReport {
    let start = Instant::now();
    let mut report = checks::dispatch(ctx, check);
    report.stats.millis = start.elapsed().as_millis() as u64;
    report
}

/// Runs `checks` over every group of `specs`. Groups run in parallel; reports come back
/// in (group, check) order.
pub fn run_corpus(
    specs: &[GroupSpec],
    checks: &[CheckId],
    config: &RunConfig,
) -> Vec<VerdictReport> {
    specs
        .par_iter()
        .map(|spec| match GroupContext::new(spec, config) {
            Ok(ctx) => checks.iter().map(|&c| run_check(&ctx, c)).collect(),
            Err(e) => checks
                .iter()
                .map(|&c| VerdictReport::new(&spec.to_string(), c, Outcome::Skipped(e.to_string())))
                .collect::<Vec<_>>(),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Parses a comma-separated check list and a manifest, then runs the corpus. Check ids
/// are validated before any group is built.
pub fn run_corpus_text(
    manifest: &str,
    checks: &str,
    config: &RunConfig,
) -> Result<Vec<VerdictReport>, HarnessError> {
    let checks = if checks.trim().is_empty() {
        CheckId::ALL.to_vec()
    } else {
        CheckId::parse_list(checks)?
    };
    let specs = atlas::parse_manifest(manifest)?;
    Ok(run_corpus(&specs, &checks, config))
}

/// The default manifest's groups.
pub fn default_corpus() -> Vec<GroupSpec> {
    atlas::parse_manifest(DEFAULT_MANIFEST).expect("shipped manifest parses")
}

/// Every abelian group of order at most `max_order`, one per isomorphism type, as
/// products of cyclic groups of prime-power order.
pub fn abelian_specs(max_order: u64) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for n in 2..=max_order {
        let factors = crate::numtheory::factorize(n as u128);
        let mut per_prime: Vec<Vec<Vec<u64>>> = Vec::new();
        for (p, e) in factors {
            per_prime.push(
                partitions(e as u64)
                    .into_iter()
                    .map(|part| part.iter().map(|&k| (p as u64).pow(k as u32)).collect())
                    .collect(),
            );
        }
        let mut combos: Vec<Vec<u64>> = vec![Vec::new()];
        for choices in per_prime {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    choices.iter().map(move |ch| {
                        let mut v = c.clone();
                        v.extend(ch);
                        v
                    })
                })
                .collect();
        }
        for cyclic_orders in combos {
            let mut it = cyclic_orders
                .into_iter()
                .map(|k| GroupSpec::Cyclic(k as usize));
            let first = it.next().expect("n > 1");
            out.push(it.fold(first, |acc, c| {
                GroupSpec::Product(Box::new(acc), Box::new(c))
            }));
        }
    }
    out
}

fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Builds a context directly from a group, for groups outside the spec grammar.
pub fn context_for(
    name: &str,
    group: PermGroup,
    config: &RunConfig,
) -> Result<GroupContext, HarnessError> {
    GroupContext::from_group(name, None, group, config)
}

pub(crate) fn table_or_skip<'a>(
    ctx: &'a GroupContext,
    check: CheckId,
) -> Result<&'a GroupTable, VerdictReport> {
    ctx.table().ok_or_else(|| {
        VerdictReport::new(
            ctx.name(),
            check,
            Outcome::Skipped(ctx.skip_reason().unwrap_or("not enumerated").to_string()),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_ids_round_trip() {
        for c in CheckId::ALL {
            assert_eq!(c.name().parse::<CheckId>().unwrap(), c);
        }
        assert!(matches!(
            CheckId::parse_list("thm-solvable,nope"),
            Err(HarnessError::UnknownCheck(_))
        ));
    }

    #[test]
    fn abelian_type_counts() {
        let specs = abelian_specs(16);
        let count = |n: u128| {
            specs
                .iter()
                .filter(|s| s.expected_order().unwrap() == n)
                .count()
        };
        assert_eq!(count(8), 3);
        assert_eq!(count(16), 5);
        assert_eq!(count(12), 2);
        assert_eq!(count(7), 1);
    }

    #[test]
    fn unknown_check_fails_before_work() {
        let err = run_corpus_text("M:24", "bogus", &RunConfig::default()).unwrap_err();
        assert!(matches!(err, HarnessError::UnknownCheck(_)));
    }

    #[test]
    fn one_group_one_check() {
        let r = run_corpus_text("S:4", "thm-solvable", &RunConfig::default()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].outcome, Outcome::Consistent);
    }

    #[test]
    fn report_json_shape() {
        let r = run_corpus_text("A:5", "thm-solvable", &RunConfig::default()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r[0]).unwrap();
        assert_eq!(v["spec"], "A:5");
        assert_eq!(v["check"], "thm-solvable");
        assert_eq!(v["outcome"]["status"], "consistent");
        assert!(v["witness"].is_array());
        assert!(v["stats"]["pairs"].as_u64().unwrap() > 0);
        let back: VerdictReport = serde_json::from_value(v).unwrap();
        assert_eq!(back.spec, "A:5");
    }
}
