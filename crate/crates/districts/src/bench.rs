//! Timed runs over random center sets, every algorithm on the same sets.

use std::io::Write;
use std::time::Instant;

use districts_core::rng::{sample_centers, SplitMix64};
use districts_core::solve::{solve, Algorithm, OracleKind, SolveError, SolveOptions};
use districts_core::{Instance, InstanceError, MemoryBudget, RoadGraph};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub graph_name: String,
    pub ks: Vec<usize>,
    pub runs: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub budget: MemoryBudget,
    pub oracle: OracleKind,
    /// Run center sets on separate threads. Times are then not comparable.
    pub parallel: bool,
}

impl BenchConfig {
    pub fn new(graph_name: impl Into<String>, ks: Vec<usize>, algorithms: Vec<Algorithm>) -> Self {
        BenchConfig {
            graph_name: graph_name.into(),
            ks,
            runs: 10,
            seed: 1,
            algorithms,
            budget: MemoryBudget::default(),
            oracle: OracleKind::default(),
            parallel: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("runs must be at least 1")]
    NoRuns,
    #[error("k = {k} outside 1..={n}")]
    BadK { k: usize, n: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Ok,
    RefusedMemory,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Seed of this center set; `solve --random-centers k --seed <seed>`
    /// reproduces it.
    pub seed: u64,
    pub center_set: usize,
    pub algorithm: Algorithm,
    pub time_ms: f64,
    pub work: Option<u64>,
    pub outcome: Outcome,
    pub digest: Option<u64>,
}

pub fn center_set_seed(base: u64, k: usize, index: usize) -> u64 {
    SplitMix64::new(base ^ ((k as u64) << 32) ^ index as u64).next_u64()
}

fn run_set(
    g: &RoadGraph,
    cfg: &BenchConfig,
    k: usize,
    index: usize,
) -> Result<Vec<BenchRecord>, BenchError> {
    let seed = center_set_seed(cfg.seed, k, index);
    let centers = sample_centers(g.node_count(), k, seed).expect("k checked against n");
    let inst = Instance::with_equal_quotas(g, centers)?;
    let opts = SolveOptions {
        budget: cfg.budget,
        oracle: cfg.oracle,
    };
    let mut out = Vec::with_capacity(cfg.algorithms.len());
    for &algorithm in &cfg.algorithms {
        let start = Instant::now();
        let result = solve(&inst, algorithm, &opts);
        let time_ms = start.elapsed().as_secs_f64() * 1e3;
        let (outcome, work, digest) = match result {
            Ok(s) => (Outcome::Ok, Some(s.work), Some(s.assignment.digest())),
            Err(SolveError::Memory(_)) => (Outcome::RefusedMemory, None, None),
            Err(e) => return Err(e.into()),
        };
        out.push(BenchRecord {
            graph: cfg.graph_name.clone(),
            n: g.node_count(),
            m: g.edge_count(),
            k,
            seed,
            center_set: index,
            algorithm,
            time_ms,
            work,
            outcome,
            digest,
        });
    }
    Ok(out)
}

/// For each `k` and each of `runs` center sets, runs every configured
/// algorithm on the identical equal-quota instance. Memory refusals become
/// records rather than errors.
pub fn run_bench(g: &RoadGraph, cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    if cfg.runs == 0 {
        return Err(BenchError::NoRuns);
    }
    let n = g.node_count();
    if let Some(&k) = cfg.ks.iter().find(|&&k| k == 0 || k > n) {
        return Err(BenchError::BadK { k, n });
    }
    let mut records = Vec::new();
    for &k in &cfg.ks {
        if cfg.parallel {
            let results: Vec<_> = std::thread::scope(|s| {
                let handles: Vec<_> = (0..cfg.runs)
                    .map(|i| s.spawn(move || run_set(g, cfg, k, i)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("bench worker panicked"))
                    .collect()
            });
            for r in results {
                records.extend(r?);
            }
        } else {
            for i in 0..cfg.runs {
                records.extend(run_set(g, cfg, k, i)?);
            }
        }
    }
    Ok(records)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    graph: &'a str,
    n: usize,
    m: usize,
    k: usize,
    seed: u64,
    center_set: usize,
    algorithm: &'a str,
    time_ms: String,
    work: Option<u64>,
    outcome: Outcome,
    digest: Option<String>,
}

pub const CSV_HEADER: &str = "graph,n,m,k,seed,center_set,algorithm,time_ms,work,outcome,digest";

/// With `omit_timing`, `time_ms` is written as `NA` so output depends only
/// on the inputs.
pub fn write_csv(records: &[BenchRecord], out: impl Write, omit_timing: bool) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(CsvRow {
            graph: &r.graph,
            n: r.n,
            m: r.m,
            k: r.k,
            seed: r.seed,
            center_set: r.center_set,
            algorithm: r.algorithm.name(),
            time_ms: if omit_timing {
                "NA".into()
            } else {
                format!("{:.3}", r.time_ms)
            },
            work: r.work,
            outcome: r.outcome,
            digest: r.digest.map(|d| format!("{d:016x}")),
        })?;
    }
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

/// Mean wall time per `k` for one algorithm over its ok records.
pub fn mean_time_by_k(records: &[BenchRecord], algorithm: Algorithm) -> Vec<(usize, f64)> {
    mean_by_k(records, algorithm, |r| r.time_ms)
}

/// Mean work counter per `k` for one algorithm over its ok records.
pub fn mean_work_by_k(records: &[BenchRecord], algorithm: Algorithm) -> Vec<(usize, f64)> {
    mean_by_k(records, algorithm, |r| r.work.unwrap_or(0) as f64)
}

fn mean_by_k(records: &[BenchRecord], algorithm: Algorithm, value: impl Fn(&BenchRecord) -> f64) -> Vec<(usize, f64)> {
    let mut ks: Vec<usize> = records.iter().map(|r| r.k).collect();
    ks.sort_unstable();
    ks.dedup();
    ks.into_iter()
        .filter_map(|k| {
            let vals: Vec<f64> = records
                .iter()
                .filter(|r| r.k == k && r.algorithm == algorithm && r.outcome == Outcome::Ok)
                .map(&value)
                .collect();
            (!vals.is_empty()).then(|| (k, vals.iter().sum::<f64>() / vals.len() as f64))
        })
        .collect()
}
