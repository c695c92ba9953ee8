//! One function per subcommand. Each writes its output and returns the exit
//! code for a completed run; usage and environment errors come back as
//! [`Failure`].

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use hasse_core::density::{andrica_scan, hasse_partner_count, hasse_window, sieve, threshold_report, Over};
use hasse_core::graph::{
    graphs_isomorphic, pair_graphs, side_set, GraphError, IsogenyGraph, ModpolyStore, DEFAULT_DEGREES, MODPOLY_DEGREES,
};
use hasse_core::pairs::{classify as classify_pair, enumerate_hasse_pairs, PairRecord, Status, TableCell};
use hasse_core::{CurveError, DensityError, PairError};
use rayon::prelude::*;
use rayon::ThreadPool;
use serde_json::{json, Value};

use crate::output::{line, Failure, Summary};

const CHUNK: usize = 4096;
const MODPOLY_ENV: &str = "HASSE_MODPOLY_DIR";

pub struct Context {
    store: ModpolyStore,
    pool: ThreadPool,
    timing: bool,
}

impl Context {
    pub fn new(modpoly_dir: Option<PathBuf>, jobs: Option<usize>, timing: bool) -> Result<Context, Failure> {
        let dir = modpoly_dir
            .or_else(|| std::env::var_os(MODPOLY_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("data/modpoly"));
        if jobs == Some(0) {
            return Err(Failure::usage("jobs", "--jobs must be at least 1"));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.unwrap_or(0))
            .build()
            .map_err(|e| Failure::environment(e.to_string()))?;
        Ok(Context { store: ModpolyStore::new(dir), pool, timing })
    }

    /// Maps `items` on the pool in chunks and hands results to `sink` in
    /// input order, so output does not depend on the number of workers.
    fn ordered<T, R, F, S>(&self, items: impl Iterator<Item = T>, map: F, mut sink: S) -> Result<usize, Failure>
    where
        T: Send + Sync,
        R: Send,
        F: Fn(&T) -> R + Sync,
        S: FnMut(R) -> Result<(), Failure>,
    {
        let mut items = items.peekable();
        let mut seen = 0;
        while items.peek().is_some() {
            let chunk: Vec<T> = items.by_ref().take(CHUNK).collect();
            seen += chunk.len();
            let mapped: Vec<R> = self.pool.install(|| chunk.par_iter().map(&map).collect());
            for r in mapped {
                sink(r)?;
            }
        }
        Ok(seen)
    }
}

fn pair_failure(e: PairError) -> Failure {
    Failure::usage("pair", e.to_string())
}

fn density_failure(e: DensityError) -> Failure {
    Failure::usage("bound", e.to_string())
}

/// Graph errors split into findings (`Ok(reason)`, exit 1) and failures.
fn graph_outcome(e: GraphError) -> Result<String, Failure> {
    match e {
        GraphError::MissingFile(_) | GraphError::MalformedLine { .. } | GraphError::NonMonic(_) => {
            Err(Failure::with_reason("environment", "modpoly", e.to_string()))
        }
        GraphError::Supersingular
        | GraphError::SupersingularDegree(_)
        | GraphError::EmptySet
        | GraphError::MixedTypes
        | GraphError::DegreeSetMismatch(..) => Ok(e.to_string()),
        GraphError::Curve(CurveError::FieldTooLarge { .. }) => Err(Failure::usage("bound", e.to_string())),
        _ => Err(Failure::usage("graph", e.to_string())),
    }
}

fn unsupported(record: &PairRecord, reason: String, out: &mut dyn Write) -> Result<u8, Failure> {
    line(out, &json!({"type": "unsupported", "q1": record.q1.q, "q2": record.q2.q, "reason": reason}))?;
    Ok(1)
}

/// Validated degree set; without `--degrees`, a supersingular side (when
/// allowed) selects its characteristic and anything else the default set.
fn resolve_degrees(given: Option<Vec<u64>>, record: &PairRecord, allow_ss: bool) -> Result<Vec<u64>, Failure> {
    let mut degrees = match given {
        Some(d) => d,
        None => {
            let ss = [(record.q1, record.e1_status), (record.q2, record.e2_status)]
                .into_iter()
                .find(|(_, s)| *s == Status::Supersingular);
            match ss {
                Some((q, _)) if allow_ss => vec![q.p],
                _ => DEFAULT_DEGREES.to_vec(),
            }
        }
    };
    if let Some(bad) = degrees.iter().find(|d| !MODPOLY_DEGREES.contains(d)) {
        return Err(Failure::usage("degrees", format!("degree {bad} is not in {MODPOLY_DEGREES:?}")));
    }
    if degrees.is_empty() {
        return Err(Failure::usage("degrees", "empty degree set"));
    }
    degrees.sort_unstable();
    degrees.dedup();
    Ok(degrees)
}

pub fn classify(_ctx: &Context, q1: u64, q2: u64, curves: bool, out: &mut dyn Write) -> Result<u8, Failure> {
    let record = classify_pair(q1, q2).map_err(pair_failure)?;
    let mut json = record.to_json();
    if curves {
        for side in [1u8, 2] {
            let set = side_set(&record, side).map_err(|e| match graph_outcome(e) {
                Ok(reason) => Failure::usage("curves", reason),
                Err(f) => f,
            })?;
            let target = if side == 1 { &mut json.e1 } else { &mut json.e2 };
            target.js = Some(set.js().iter().map(|j| j.to_string()).collect());
            target.count = set.complete.then_some(set.classes.len() as u64);
        }
    }
    line(out, &serde_json::to_value(&json).expect("record serializes"))?;
    Ok(0)
}

fn graph_json(g: &IsogenyGraph, q: u64, order: u64) -> Value {
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|(&(u, v, ell), &m)| json!({"from": g.labels[u], "to": g.labels[v], "degree": ell, "mult": m}))
        .collect();
    json!({
        "type": "graph",
        "side": g.side,
        "q": q,
        "order": order,
        "supersingular": g.supersingular,
        "degrees": g.degrees,
        "vertices": g.labels,
        "edges": edges,
    })
}

pub fn graph(
    ctx: &Context,
    q1: u64,
    q2: u64,
    degrees: Option<Vec<u64>>,
    dot: bool,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let record = classify_pair(q1, q2).map_err(pair_failure)?;
    let degrees = resolve_degrees(degrees, &record, true)?;
    let graphs = match pair_graphs(&record, &degrees, &ctx.store, true) {
        Ok(g) => g,
        Err(e) => return unsupported(&record, graph_outcome(e)?, out),
    };
    let sides = [(q1, q2), (q2, q1)];
    for (g, (q, order)) in graphs.iter().zip(sides) {
        if dot {
            writeln!(out, "// side {}: F_{q}, {order} points", g.side)?;
            write!(out, "{}", hasse_core::graph::to_dot(g))?;
        } else {
            line(out, &graph_json(g, q, order))?;
        }
    }
    Ok(0)
}

/// Cheap invariants compared in order to explain a failed isomorphism.
fn invariants(g: &IsogenyGraph) -> Vec<(String, Value)> {
    let mut inv = vec![("vertices".to_string(), json!(g.vertices.len()))];
    for &ell in &g.degrees {
        let of_degree = g.edges.iter().filter(|(&(_, _, l), _)| l == ell);
        let total: u32 = of_degree.clone().map(|(_, &m)| m).sum();
        let loops: u32 = of_degree.filter(|(&(u, v, _), _)| u == v).map(|(_, &m)| m).sum();
        let mut outs: Vec<u32> = (0..g.vertices.len()).map(|u| g.out_degree(u, ell)).collect();
        outs.sort_unstable();
        inv.push((format!("edges[{ell}]"), json!(total)));
        inv.push((format!("loops[{ell}]"), json!(loops)));
        inv.push((format!("out_degrees[{ell}]"), json!(outs)));
    }
    inv
}

pub fn verify_iso(
    ctx: &Context,
    q1: u64,
    q2: u64,
    degrees: Option<Vec<u64>>,
    allow_ss: bool,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let record = classify_pair(q1, q2).map_err(pair_failure)?;
    let degrees = resolve_degrees(degrees, &record, allow_ss)?;
    let [g1, g2] = match pair_graphs(&record, &degrees, &ctx.store, allow_ss) {
        Ok(g) => g,
        Err(e) => return unsupported(&record, graph_outcome(e)?, out),
    };
    match graphs_isomorphic(&g1, &g2) {
        Ok(Some(map)) => {
            let bijection: Vec<Value> =
                map.iter().enumerate().map(|(u, &v)| json!([g1.labels[u], g2.labels[v]])).collect();
            line(
                out,
                &json!({"type": "isomorphic", "q1": q1, "q2": q2, "degrees": degrees, "vertices": g1.vertices.len(), "bijection": bijection}),
            )?;
            Ok(0)
        }
        Ok(None) => {
            let witness = invariants(&g1)
                .into_iter()
                .zip(invariants(&g2))
                .find(|(a, b)| a.1 != b.1)
                .map(|((name, a), (_, b))| json!({"invariant": name, "side1": a, "side2": b}));
            line(
                out,
                &json!({
                    "type": "non-isomorphic",
                    "q1": q1,
                    "q2": q2,
                    "degrees": degrees,
                    "vertices": [g1.vertices.len(), g2.vertices.len()],
                    "witness": witness,
                }),
            )?;
            Ok(1)
        }
        Err(e) => unsupported(&record, graph_outcome(e)?, out),
    }
}

fn pairs_up_to(max: u64, odd_only: bool) -> Result<impl Iterator<Item = PairRecord>, Failure> {
    enumerate_hasse_pairs(max, odd_only).map_err(pair_failure)
}

fn record_json(r: &PairRecord) -> Value {
    serde_json::to_value(r.to_json()).expect("record serializes")
}

pub fn search_empty(ctx: &Context, max: u64, out: &mut dyn Write) -> Result<u8, Failure> {
    let mut summary = Summary::new("search-empty", ctx.timing);
    let mut findings = 0u64;
    let checked = ctx.ordered(
        pairs_up_to(max, false)?,
        |r| (r.e1_status == Status::Empty && r.e2_status == Status::Empty).then(|| record_json(r)),
        |found| {
            if let Some(v) = found {
                findings += 1;
                line(out, &v)?;
            }
            Ok(())
        },
    )?;
    summary.set("max", max);
    summary.set("pairs", checked);
    summary.set("findings", findings);
    summary.finish(out)?;
    Ok(0)
}

pub fn enumerate(
    ctx: &Context,
    max: u64,
    filter: Option<TableCell>,
    odd_only: bool,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let mut summary = Summary::new("enumerate", ctx.timing);
    let mut cells: BTreeMap<String, u64> = BTreeMap::new();
    let mut emitted = 0u64;
    let checked = ctx.ordered(
        pairs_up_to(max, odd_only)?,
        |r| (r.table_cell.to_string(), filter.map_or(true, |c| c == r.table_cell).then(|| record_json(r))),
        |(cell, found)| {
            *cells.entry(cell).or_default() += 1;
            if let Some(v) = found {
                emitted += 1;
                line(out, &v)?;
            }
            Ok(())
        },
    )?;
    summary.set("max", max);
    summary.set("odd_only", odd_only);
    summary.set("filter", filter.map(|c| c.to_string()));
    summary.set("pairs", checked);
    summary.set("emitted", emitted);
    summary.set("cells", serde_json::to_value(cells).expect("counts serialize"));
    summary.finish(out)?;
    Ok(0)
}

pub fn andrica(ctx: &Context, max: u64, over: Over, out: &mut dyn Write) -> Result<u8, Failure> {
    let mut summary = Summary::new("andrica", ctx.timing);
    let table = sieve(max).map_err(density_failure)?;
    let report = andrica_scan(&table, over);
    let mut findings: Vec<(u64, u64, &str)> = report
        .violations
        .iter()
        .map(|&(q, n)| (q, n, "violation"))
        .chain(report.equalities.iter().map(|&(q, n)| (q, n, "equality")))
        .collect();
    findings.sort_unstable();
    for (q, next, kind) in findings {
        line(out, &json!({"type": kind, "q": q, "next": next, "gap": next - q - 1}))?;
    }
    summary.set("max", max);
    summary.set("over", serde_json::to_value(over).expect("enum serializes"));
    summary.set("checked", report.checked);
    summary.set("violations", report.violations.len());
    summary.set("equalities", report.equalities.len());
    summary.finish(out)?;
    Ok(if report.violations.is_empty() { 0 } else { 1 })
}

pub fn partners(ctx: &Context, max: u64, out: &mut dyn Write) -> Result<u8, Failure> {
    let mut summary = Summary::new("partners", ctx.timing);
    if max < 2 {
        return Err(density_failure(DensityError::BoundTooSmall(max)));
    }
    let table = sieve(hasse_window(max).1).map_err(density_failure)?;
    let report = ctx.pool.install(|| threshold_report(&table, max)).map_err(density_failure)?;
    let primes = table.primes().take_while(|&p| p <= max);
    ctx.ordered(
        primes,
        |&p| {
            let count = hasse_partner_count(p, &table).expect("window inside the table");
            let (lo, hi) = hasse_window(p);
            json!({"type": "partners", "p": p, "window": [lo, hi], "count": count})
        },
        |v| line(out, &v),
    )?;
    let below = report.exceptions.iter().map(|e| json!({"p": e.p, "count": e.count, "threshold": e.threshold}));
    summary.set("max", max);
    summary.set("primes", report.checked);
    summary.set("below_threshold", Value::Array(below.collect()));
    summary.set("ties", report.ties.len());
    summary.finish(out)?;
    Ok(if report.exceptions.is_empty() { 0 } else { 1 })
}
