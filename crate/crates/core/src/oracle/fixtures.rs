//! Known pairs with expected classifications, j-sets and graph facts, read
//! from a JSON-lines file (schema in `docs/schemas.md`).

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::OracleError;
use crate::graph::{graphs_isomorphic, pair_graphs, side_set, ModpolyStore};
use crate::pairs::{classify, PairRecord, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFacts {
    pub degrees: Vec<u64>,
    /// Vertex counts of the two sides.
    pub vertices: [usize; 2],
    pub isomorphic: bool,
    #[serde(default)]
    pub allow_supersingular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCase {
    pub q1: u64,
    pub q2: u64,
    pub e1: Status,
    pub e2: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<i128>,
    /// j-invariants of one side, as integers; every j must lie in the prime subfield.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub js1: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub js2: Option<Vec<u64>>,
    /// Number of isomorphism classes of one side.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphFacts>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub q1: u64,
    pub q2: u64,
    pub note: String,
    /// Empty when every expectation held.
    pub failures: Vec<String>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn load_fixtures(path: &Path) -> Result<Vec<FixtureCase>, OracleError> {
    let text = std::fs::read_to_string(path).map_err(|e| OracleError::Fixtures(format!("{}: {e}", path.display())))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| OracleError::Fixtures(format!("line {}: {e}", i + 1))))
        .collect()
}

/// Evaluates every case; failures are collected, never raised.
pub fn run_fixture_suite(cases: &[FixtureCase], store: &ModpolyStore) -> Vec<FixtureOutcome> {
    cases
        .iter()
        .map(|c| FixtureOutcome { q1: c.q1, q2: c.q2, note: c.note.clone(), failures: check(c, store) })
        .collect()
}

fn check(c: &FixtureCase, store: &ModpolyStore) -> Vec<String> {
    let mut fails = Vec::new();
    let record = match classify(c.q1, c.q2) {
        Ok(r) => r,
        Err(e) => return vec![format!("classify: {e}")],
    };
    if (record.e1_status, record.e2_status) != (c.e1, c.e2) {
        fails.push(format!("statuses {:?}/{:?}", record.e1_status, record.e2_status));
    }
    if c.delta.is_some_and(|d| d != record.delta) {
        fails.push(format!("delta {}", record.delta));
    }
    for (side, js, classes) in [(1, &c.js1, c.classes1), (2, &c.js2, c.classes2)] {
        if js.is_none() && classes.is_none() {
            continue;
        }
        if let Err(e) = check_side(&record, side, js.as_deref(), classes) {
            fails.push(format!("side {side}: {e}"));
        }
    }
    if let Some(g) = &c.graph {
        match pair_graphs(&record, &g.degrees, store, g.allow_supersingular) {
            Err(e) => fails.push(format!("graph: {e}")),
            Ok([g1, g2]) => {
                let counts = [g1.vertices.len(), g2.vertices.len()];
                if counts != g.vertices {
                    fails.push(format!("vertex counts {counts:?}"));
                }
                match graphs_isomorphic(&g1, &g2) {
                    Ok(m) if m.is_some() != g.isomorphic => fails.push(format!("isomorphic = {}", m.is_some())),
                    Err(e) => fails.push(format!("isomorphism: {e}")),
                    _ => {}
                }
            }
        }
    }
    fails
}

fn check_side(record: &PairRecord, side: u8, js: Option<&[u64]>, classes: Option<usize>) -> Result<(), String> {
    let set = side_set(record, side).map_err(|e| e.to_string())?;
    if let Some(want) = js {
        let got: Option<Vec<u64>> = set.js().iter().map(|j| j.as_prime_subfield()).collect();
        let mut want = want.to_vec();
        want.sort_unstable();
        match got {
            Some(mut got) => {
                got.sort_unstable();
                if got != want {
                    return Err(format!("js {got:?}"));
                }
            }
            None => return Err("j outside the prime subfield".into()),
        }
    }
    if let Some(n) = classes {
        if !set.complete || set.classes.len() != n {
            return Err(format!("{} classes (complete = {})", set.classes.len(), set.complete));
        }
    }
    Ok(())
}
