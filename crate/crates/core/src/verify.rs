//! Stability check that does not share code with any solver.

use alloc::vec::Vec;

use thiserror::Error;

use crate::dijkstra::{dijkstra, DistRow};
use crate::model::{Assignment, Instance};
use crate::score::Score;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("assignment covers {got} nodes, graph has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("center {center} has {actual} nodes, quota is {quota}")]
    QuotaViolation {
        center: usize,
        quota: usize,
        actual: usize,
    },
    #[error("distance rows do not match the instance centers")]
    RowMismatch,
}

/// A node and center that prefer each other over their current matches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockingPair {
    pub node: usize,
    pub center: usize,
    /// Distance between `node` and `center`.
    pub dist: f64,
    pub assigned_center: usize,
    pub assigned_dist: f64,
    /// Least preferred node currently held by `center`.
    pub worst_node: usize,
    pub worst_dist: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Stable,
    /// The blocking pair with the smallest [`Score`].
    Blocking(BlockingPair),
}

impl Verdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, Verdict::Stable)
    }
}

/// One shortest-path row per center, in center order.
pub fn center_distances(inst: &Instance<'_>) -> Vec<DistRow> {
    inst.centers()
        .iter()
        .map(|&c| dijkstra(inst.graph(), c).expect("centers are in range"))
        .collect()
}

/// Checks quotas, then searches every unmatched (node, center) pair for a
/// blocking pair under the [`Score`] order.
pub fn verify_stable(
    inst: &Instance<'_>,
    a: &Assignment,
    dists: &[DistRow],
) -> Result<Verdict, VerifyError> {
    let n = inst.node_count();
    let k = inst.center_count();
    if a.center_of.len() != n {
        return Err(VerifyError::LengthMismatch {
            expected: n,
            got: a.center_of.len(),
        });
    }
    if let Some((center, quota, actual)) = a.quota_violation(inst.quotas()) {
        return Err(VerifyError::QuotaViolation {
            center,
            quota,
            actual,
        });
    }
    if dists.len() != k
        || dists
            .iter()
            .zip(inst.centers())
            .any(|(row, &c)| row.source != c || row.dist.len() != n)
    {
        return Err(VerifyError::RowMismatch);
    }
    let score = |u: usize, c: usize| Score::new(dists[c].dist[u], u, c);

    let mut worst: Vec<Option<Score>> = alloc::vec![None; k];
    for (u, &c) in a.center_of.iter().enumerate() {
        let s = score(u, c);
        if worst[c].is_none_or(|w| s > w) {
            worst[c] = Some(s);
        }
    }

    let mut best: Option<(Score, usize)> = None;
    for (u, &mine) in a.center_of.iter().enumerate() {
        let current = score(u, mine);
        for c in (0..k).filter(|&c| c != mine) {
            let s = score(u, c);
            let w = worst[c].expect("quotas are positive");
            if s < current && s < w && best.is_none_or(|(b, _)| s < b) {
                best = Some((s, w.node));
            }
        }
    }
    Ok(match best {
        None => Verdict::Stable,
        Some((s, worst_node)) => {
            let mine = a.center_of[s.node];
            Verdict::Blocking(BlockingPair {
                node: s.node,
                center: s.center,
                dist: s.dist,
                assigned_center: mine,
                assigned_dist: dists[mine].dist[s.node],
                worst_node,
                worst_dist: dists[s.center].dist[worst_node],
            })
        }
    })
}
