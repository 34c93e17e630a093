//! Built-in corpus of resolution graphs with frozen expected values.
//!
//! Each entry is a JSON fixture embedded at compile time. Entries carry a
//! graph, its basic analytic data, a set of named cycles, and a list of
//! checks whose expected values were computed independently and frozen.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use crate::graph::{Cycle, DualGraph};
use crate::invariants::{colength, IdealDescriptor};
use crate::singularity::{
    canonical_cycle, degree, fundamental_cycle, is_numerically_gorenstein, k_dot, SingularityData,
};
use crate::{Error, Result, Tri};

const RAW_ENTRIES: &[&str] = &[
    include_str!("corpus/a1.json"),
    include_str!("corpus/a2_chain.json"),
    include_str!("corpus/quotient_3.json"),
    include_str!("corpus/d4_star.json"),
    include_str!("corpus/e8.json"),
    include_str!("corpus/e237.json"),
    include_str!("corpus/degree4_star.json"),
    include_str!("corpus/genus2_cone.json"),
    include_str!("corpus/cubic_cone.json"),
    include_str!("corpus/cubic_cone_blown.json"),
    include_str!("corpus/ell_e1.json"),
    include_str!("corpus/ell_e2.json"),
    include_str!("corpus/ell_e4.json"),
    include_str!("corpus/ell_e5.json"),
    include_str!("corpus/x1_degree1.json"),
];

/// How an expected value in a check was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in standard references for this singularity.
    Literature,
    /// Immediate from the defining formulas.
    Definition,
    /// Computed by an independent method and frozen.
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Literature => "literature",
            Provenance::Definition => "definition",
            Provenance::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

/// A single frozen expectation. Cycle fields name entries in the cycle table.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum CheckOp {
    FundamentalCycle { expect: String },
    CanonicalCycle { expect: String },
    SelfPairing { cycle: String, expect: i64 },
    Pairing { a: String, b: String, expect: i64 },
    KDot { cycle: String, expect: i64 },
    Degree { expect: i64 },
    NumericallyGorenstein { expect: bool },
    Minimal { expect: bool },
    Colength { cycle: String, h1: u64, gap: u64, expect: u64 },
}

/// A check plus the provenance of its expected value.
#[derive(Debug, Clone, Deserialize)]
pub struct Check {
    #[serde(flatten)]
    pub op: CheckOp,
    pub provenance: Provenance,
}

#[derive(Deserialize)]
struct EntryJson {
    name: String,
    doc: String,
    graph: serde_json::Value,
    pg: Option<u64>,
    gorenstein: bool,
    #[serde(default)]
    cycles: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    maximal_ideal_cycle: Option<String>,
    #[serde(default)]
    cohomological_cycle: Option<String>,
    checks: Vec<Check>,
}

/// A parsed corpus entry ready to run checks against.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub doc: String,
    pub sing: SingularityData,
    pub cycles: BTreeMap<String, Cycle>,
    pub checks: Vec<Check>,
}

impl CorpusEntry {
    pub fn graph(&self) -> &Arc<DualGraph> {
        self.sing.graph()
    }

    fn cycle(&self, name: &str) -> Result<&Cycle> {
        self.cycles
            .get(name)
            .ok_or_else(|| Error::invalid(format!("entry {} has no cycle {name}", self.name)))
    }
}

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub description: String,
    pub provenance: Provenance,
    pub passed: bool,
    pub expected: String,
    pub got: String,
}

fn parse_entry(raw: &str) -> Result<CorpusEntry> {
    let entry: EntryJson =
        serde_json::from_str(raw).map_err(|err| Error::Json(err.to_string()))?;
    let graph = DualGraph::from_json(&entry.graph.to_string())?;
    let mut cycles = BTreeMap::new();
    for (name, value) in &entry.cycles {
        cycles.insert(name.clone(), Cycle::from_json(&graph, &value.to_string())?);
    }
    let pg = match entry.pg {
        Some(p) => Tri::Known(p),
        None => Tri::unknown("p_g"),
    };
    let mut sing =
        SingularityData::new(Arc::clone(&graph), pg).with_gorenstein(entry.gorenstein);
    if let Some(name) = &entry.maximal_ideal_cycle {
        let cycle = cycles
            .get(name)
            .ok_or_else(|| Error::invalid(format!("unknown maximal ideal cycle {name}")))?;
        sing = sing.with_maximal_ideal_cycle(cycle.clone())?;
    }
    if let Some(name) = &entry.cohomological_cycle {
        let cycle = cycles
            .get(name)
            .ok_or_else(|| Error::invalid(format!("unknown cohomological cycle {name}")))?;
        sing = sing.with_cohomological_cycle(cycle.clone())?;
    }
    Ok(CorpusEntry {
        name: entry.name,
        doc: entry.doc,
        sing,
        cycles,
        checks: entry.checks,
    })
}

/// Parses every built-in entry.
pub fn entries() -> Result<Vec<CorpusEntry>> {
    RAW_ENTRIES.iter().map(|raw| parse_entry(raw)).collect()
}

/// Looks up one entry by name.
pub fn entry(name: &str) -> Result<CorpusEntry> {
    entries()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::invalid(format!("no corpus entry named {name}")))
}

fn report(
    description: String,
    provenance: Provenance,
    expected: impl fmt::Display,
    got: impl fmt::Display,
    passed: bool,
) -> CheckReport {
    CheckReport {
        description,
        provenance,
        passed,
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

/// Runs one check and reports the comparison. Errors mean the check could
/// not be evaluated at all, not that it failed.
pub fn run_check(entry: &CorpusEntry, check: &Check) -> Result<CheckReport> {
    let graph = entry.graph();
    let prov = check.provenance;
    match &check.op {
        CheckOp::FundamentalCycle { expect } => {
            let want = entry.cycle(expect)?;
            let got = fundamental_cycle(graph);
            Ok(report(
                format!("fundamental cycle is {expect}"),
                prov,
                want,
                &got,
                got == *want,
            ))
        }
        CheckOp::CanonicalCycle { expect } => {
            let want = entry.cycle(expect)?;
            let got = canonical_cycle(graph);
            Ok(report(
                format!("canonical cycle is {expect}"),
                prov,
                want,
                &got,
                got == *want,
            ))
        }
        CheckOp::SelfPairing { cycle, expect } => {
            let z = entry.cycle(cycle)?;
            let got = z.self_intersection();
            let want = num::BigRational::from_integer((*expect).into());
            Ok(report(
                format!("{cycle} pairs with itself to {expect}"),
                prov,
                &want,
                &got,
                got == want,
            ))
        }
        CheckOp::Pairing { a, b, expect } => {
            let za = entry.cycle(a)?;
            let zb = entry.cycle(b)?;
            let got = za.intersect(zb)?;
            let want = num::BigRational::from_integer((*expect).into());
            Ok(report(
                format!("{a} pairs with {b} to {expect}"),
                prov,
                &want,
                &got,
                got == want,
            ))
        }
        CheckOp::KDot { cycle, expect } => {
            let z = entry.cycle(cycle)?;
            let got = k_dot(z);
            let want = num::BigRational::from_integer((*expect).into());
            Ok(report(
                format!("canonical degree of {cycle} is {expect}"),
                prov,
                &want,
                &got,
                got == want,
            ))
        }
        CheckOp::Degree { expect } => {
            let got = degree(&entry.sing)?;
            let want = num::BigInt::from(*expect);
            Ok(report(
                format!("degree is {expect}"),
                prov,
                &want,
                &got,
                got == want,
            ))
        }
        CheckOp::NumericallyGorenstein { expect } => {
            let got = is_numerically_gorenstein(graph);
            Ok(report(
                format!("numerically Gorenstein is {expect}"),
                prov,
                expect,
                got,
                got == *expect,
            ))
        }
        CheckOp::Minimal { expect } => {
            let got = graph.is_minimal();
            Ok(report(
                format!("minimal resolution is {expect}"),
                prov,
                expect,
                got,
                got == *expect,
            ))
        }
        CheckOp::Colength { cycle, h1, gap, expect } => {
            let z = entry.cycle(cycle)?;
            let descriptor = IdealDescriptor::new(entry.sing.clone(), z.clone())?
                .with_h1(Tri::Known(*h1))?
                .with_integral_gap(Tri::Known(*gap));
            let got = colength(&descriptor)?;
            let want = num::BigInt::from(*expect);
            let passed = matches!(&got, Tri::Known(v) if *v == want);
            Ok(report(
                format!("colength of {cycle} with h1 {h1} and gap {gap} is {expect}"),
                prov,
                &want,
                &got,
                passed,
            ))
        }
    }
}

/// Runs every check of an entry.
pub fn run_entry(entry: &CorpusEntry) -> Result<Vec<CheckReport>> {
    entry.checks.iter().map(|c| run_check(entry, c)).collect()
}
