//! One entry point over all solvers, with memory admission.

use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::circle::{run_circle_growing, CircleOptions};
use crate::gale_shapley::{build_preferences, solve_gs_centers, solve_gs_nodes};
use crate::memory::{pair_table_bytes, settled_bitset_bytes, MemoryBudget, MemoryRefused};
use crate::model::{Assignment, Instance};
use crate::nnc::{run_mutual_closest, run_nnc, Incremental, NncError, NncOptions, TruncatedDijkstra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    GsCenters,
    GsNodes,
    Circle,
    Nnc,
    Mutual,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::GsCenters,
        Algorithm::GsNodes,
        Algorithm::Circle,
        Algorithm::Nnc,
        Algorithm::Mutual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::GsCenters => "gs-centers",
            Algorithm::GsNodes => "gs-nodes",
            Algorithm::Circle => "circle",
            Algorithm::Nnc => "nnc",
            Algorithm::Mutual => "mutual",
        }
    }

    /// Estimated peak bytes of the solver's `n · k`-sized state; zero for
    /// solvers whose state is linear in `n`.
    pub fn memory_estimate(self, n: usize, k: usize) -> u64 {
        match self {
            Algorithm::GsCenters | Algorithm::GsNodes | Algorithm::Mutual => pair_table_bytes(n, k),
            Algorithm::Circle => settled_bitset_bytes(n, k),
            Algorithm::Nnc => 0,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown algorithm {0:?} (expected gs-centers, gs-nodes, circle, nnc, or mutual)")]
pub struct UnknownAlgorithm(pub alloc::string::String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAlgorithm(s.into()))
    }
}

/// Which dynamic nearest-neighbor oracles the chain solver uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OracleKind {
    #[default]
    Incremental,
    Truncated,
}

impl FromStr for OracleKind {
    type Err = alloc::string::String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "incremental" => Ok(OracleKind::Incremental),
            "truncated" => Ok(OracleKind::Truncated),
            other => Err(alloc::format!("unknown oracle {other:?} (expected incremental or truncated)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub budget: MemoryBudget,
    pub oracle: OracleKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Memory(#[from] MemoryRefused),
    #[error("chain solver failed: {0}")]
    Nnc(#[from] NncError),
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub assignment: Assignment,
    /// Algorithm-specific work: proposals for Gale-Shapley, settled nodes
    /// for circle growing, oracle settles for the chain, pairs scanned for
    /// the reference solver.
    pub work: u64,
}

pub fn solve(inst: &Instance<'_>, algo: Algorithm, opts: &SolveOptions) -> Result<Solution, SolveError> {
    opts.budget
        .admit(algo.memory_estimate(inst.node_count(), inst.center_count()))?;
    Ok(match algo {
        Algorithm::GsCenters | Algorithm::GsNodes => {
            let prefs = build_preferences(inst);
            let (assignment, stats) = if algo == Algorithm::GsCenters {
                solve_gs_centers(inst, &prefs)
            } else {
                solve_gs_nodes(inst, &prefs)
            };
            Solution {
                assignment,
                work: stats.proposals,
            }
        }
        Algorithm::Circle => {
            let run = run_circle_growing(inst, CircleOptions { instrument: true }, &mut ());
            let work = run.work_counters().expect("instrumented").settled_total;
            Solution {
                assignment: run.assignment,
                work,
            }
        }
        Algorithm::Nnc => {
            let (assignment, stats) = match opts.oracle {
                OracleKind::Incremental => run_nnc(inst, &Incremental, NncOptions::default(), |_| {})?,
                OracleKind::Truncated => run_nnc(inst, &TruncatedDijkstra, NncOptions::default(), |_| {})?,
            };
            Solution {
                assignment,
                work: stats.oracle_work,
            }
        }
        Algorithm::Mutual => {
            let (assignment, work) = run_mutual_closest(inst, |_| {});
            Solution { assignment, work }
        }
    })
}
