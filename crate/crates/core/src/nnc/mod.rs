//! Nearest-neighbor chain matching.
//!
//! A stack holds a chain of agents, each the nearest opposite-side agent of
//! the one below it, so the score between consecutive entries strictly
//! decreases upward. When the top's nearest neighbor is already on the
//! stack it can only be the entry just below, and the two form a mutual
//! closest pair that every stable assignment must contain. The run uses
//! `O(n)` oracle queries and updates in total.

mod incremental;
mod mutual;
mod oracle;

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{Assignment, Instance};
use crate::score::Score;

pub use incremental::{Incremental, StreamingNodes, VoronoiCenters};
pub use mutual::{run_mutual_closest, solve_mutual_closest, MutualStep};
pub use oracle::{DnnOracle, OracleFactory, TruncatedCenters, TruncatedDijkstra, TruncatedNodes};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Agent {
    Node(usize),
    Center(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NncError {
    #[error("oracle returned inactive {0:?}")]
    InactiveElement(Agent),
    #[error("oracle found no active partner for {0:?}")]
    NoPartner(Agent),
    #[error("{found:?} is on the stack but not second from the top")]
    NotSecondFromTop { found: Agent },
    #[error("chain score did not decrease: {next:?} after {prev:?}")]
    ChainNotDecreasing { prev: Score, next: Score },
}

#[derive(Debug, Clone, Copy)]
pub struct NncOptions {
    /// Keep a center with quota left on the stack after it matches the node
    /// above it, instead of popping both.
    pub keep_center: bool,
    /// Node to seed the first chain with; later seeds are the lowest-id
    /// unmatched node.
    pub first_seed: Option<usize>,
}

impl Default for NncOptions {
    fn default() -> Self {
        NncOptions {
            keep_center: true,
            first_seed: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NncEvent {
    Push { agent: Agent, link: Option<Score> },
    Match { pair: Score },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NncStats {
    pub pushes: u64,
    pub seeds: u64,
    pub queries: u64,
    pub matches: u64,
    /// Settle operations inside the oracles.
    pub oracle_work: u64,
}

pub fn solve_nnc<F: OracleFactory>(inst: &Instance<'_>, factory: &F) -> Result<Assignment, NncError> {
    run_nnc(inst, factory, NncOptions::default(), |_| {}).map(|(a, _)| a)
}

struct Entry {
    agent: Agent,
    /// Score between this agent and the one below it.
    link: Option<Score>,
}

pub fn run_nnc<F: OracleFactory>(
    inst: &Instance<'_>,
    factory: &F,
    opts: NncOptions,
    mut observer: impl FnMut(NncEvent),
) -> Result<(Assignment, NncStats), NncError> {
    let (n, k) = (inst.node_count(), inst.center_count());
    let (mut centers, mut nodes) = factory.build(inst);
    let mut stack: Vec<Entry> = Vec::new();
    let mut node_on_stack = vec![false; n];
    let mut center_on_stack = vec![false; k];
    let mut remaining = inst.quotas().to_vec();
    let mut center_of = vec![usize::MAX; n];
    let mut dist = vec![f64::INFINITY; n];
    let mut stats = NncStats::default();
    let mut seed_cursor = 0;
    let mut first_seed = opts.first_seed.filter(|&u| u < n);

    while stats.matches < n as u64 {
        if stack.is_empty() {
            let seed = first_seed.take().unwrap_or_else(|| {
                while center_of[seed_cursor] != usize::MAX {
                    seed_cursor += 1;
                }
                seed_cursor
            });
            stack.push(Entry {
                agent: Agent::Node(seed),
                link: None,
            });
            node_on_stack[seed] = true;
            stats.seeds += 1;
            stats.pushes += 1;
            observer(NncEvent::Push {
                agent: Agent::Node(seed),
                link: None,
            });
        }

        let top = stack.last().expect("stack seeded");
        stats.queries += 1;
        let (next, score, on_stack) = match top.agent {
            Agent::Node(u) => {
                let (c, d) = centers.nearest(u).ok_or(NncError::NoPartner(top.agent))?;
                if !centers.is_active(c) {
                    return Err(NncError::InactiveElement(Agent::Center(c)));
                }
                (Agent::Center(c), Score::new(d, u, c), center_on_stack[c])
            }
            Agent::Center(c) => {
                let (u, d) = nodes.nearest(c).ok_or(NncError::NoPartner(top.agent))?;
                if !nodes.is_active(u) {
                    return Err(NncError::InactiveElement(Agent::Node(u)));
                }
                (Agent::Node(u), Score::new(d, u, c), node_on_stack[u])
            }
        };

        if !on_stack {
            if let Some(prev) = top.link {
                if score >= prev {
                    return Err(NncError::ChainNotDecreasing { prev, next: score });
                }
            }
            match next {
                Agent::Node(u) => node_on_stack[u] = true,
                Agent::Center(c) => center_on_stack[c] = true,
            }
            stack.push(Entry {
                agent: next,
                link: Some(score),
            });
            stats.pushes += 1;
            observer(NncEvent::Push {
                agent: next,
                link: Some(score),
            });
            continue;
        }

        if stack.len() < 2 || stack[stack.len() - 2].agent != next {
            return Err(NncError::NotSecondFromTop { found: next });
        }

        let Score { node: u, center: c, dist: d } = score;
        center_of[u] = c;
        dist[u] = d;
        stats.matches += 1;
        observer(NncEvent::Match { pair: score });
        nodes.remove(u);
        centers.retire_query(u);
        remaining[c] -= 1;
        let exhausted = remaining[c] == 0;
        if exhausted {
            centers.remove(c);
            nodes.retire_query(c);
        }

        let top_was_node = matches!(stack.pop().map(|e| e.agent), Some(Agent::Node(_)));
        if !(top_was_node && opts.keep_center && !exhausted) {
            stack.pop();
            center_on_stack[c] = false;
        }
        node_on_stack[u] = false;
    }

    stats.oracle_work = centers.work() + nodes.work();
    Ok((Assignment { center_of, dist }, stats))
}
