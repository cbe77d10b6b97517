//! Deferred acceptance over fully materialized preference tables.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;

use crate::dijkstra::dijkstra;
use crate::model::{Assignment, Instance};
use crate::score::Score;

/// All `k · n` center/node distances and both sides' sorted rankings.
#[derive(Debug, Clone)]
pub struct PreferenceTables {
    n: usize,
    k: usize,
    /// Row `c`: node ids by ascending score for center `c`.
    center_prefs: Vec<u32>,
    /// Row `u`: center indices by ascending score for node `u`.
    node_prefs: Vec<u32>,
    /// Row `c`: distance from center `c` to every node.
    dist: Vec<f64>,
}

impl PreferenceTables {
    pub fn center_prefs(&self, c: usize) -> &[u32] {
        &self.center_prefs[c * self.n..(c + 1) * self.n]
    }

    pub fn node_prefs(&self, u: usize) -> &[u32] {
        &self.node_prefs[u * self.k..(u + 1) * self.k]
    }

    #[inline]
    pub fn dist(&self, c: usize, u: usize) -> f64 {
        self.dist[c * self.n + u]
    }

    #[inline]
    pub fn score(&self, u: usize, c: usize) -> Score {
        Score::new(self.dist(c, u), u, c)
    }
}

/// Runs one Dijkstra per center and sorts both sides under the score order.
pub fn build_preferences(inst: &Instance<'_>) -> PreferenceTables {
    let (n, k) = (inst.node_count(), inst.center_count());
    let mut dist = Vec::with_capacity(n * k);
    for &c in inst.centers() {
        dist.extend(dijkstra(inst.graph(), c).expect("centers are in range").dist);
    }
    let mut center_prefs = Vec::with_capacity(n * k);
    for c in 0..k {
        let row = &dist[c * n..(c + 1) * n];
        let start = center_prefs.len();
        center_prefs.extend(0..n as u32);
        center_prefs[start..].sort_unstable_by(|&a, &b| {
            row[a as usize]
                .total_cmp(&row[b as usize])
                .then(a.cmp(&b))
        });
    }
    let mut node_prefs = Vec::with_capacity(n * k);
    for u in 0..n {
        let start = node_prefs.len();
        node_prefs.extend(0..k as u32);
        node_prefs[start..].sort_unstable_by(|&a, &b| {
            dist[a as usize * n + u]
                .total_cmp(&dist[b as usize * n + u])
                .then(a.cmp(&b))
        });
    }
    PreferenceTables {
        n,
        k,
        center_prefs,
        node_prefs,
        dist,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GsStats {
    pub proposals: u64,
}

fn finish(prefs: &PreferenceTables, center_of: Vec<usize>) -> Assignment {
    let dist = center_of
        .iter()
        .enumerate()
        .map(|(u, &c)| prefs.dist(c, u))
        .collect();
    Assignment { center_of, dist }
}

/// Centers propose down their lists while under quota; a node keeps the
/// better of its current center and the proposer.
pub fn solve_gs_centers(inst: &Instance<'_>, prefs: &PreferenceTables) -> (Assignment, GsStats) {
    let (n, k) = (inst.node_count(), inst.center_count());
    const UNMATCHED: usize = usize::MAX;
    let mut center_of = vec![UNMATCHED; n];
    let mut held = vec![0usize; k];
    let mut next = vec![0usize; k];
    let mut stats = GsStats::default();
    let mut free: Vec<usize> = (0..k).rev().collect();

    while let Some(c) = free.pop() {
        let list = prefs.center_prefs(c);
        while held[c] < inst.quotas()[c] {
            let u = list[next[c]] as usize;
            next[c] += 1;
            stats.proposals += 1;
            let current = center_of[u];
            if current == UNMATCHED {
                center_of[u] = c;
                held[c] += 1;
            } else if prefs.score(u, c) < prefs.score(u, current) {
                center_of[u] = c;
                held[c] += 1;
                held[current] -= 1;
                free.push(current);
            }
        }
    }
    (finish(prefs, center_of), stats)
}

/// Nodes propose down their lists; a full center keeps its quota best
/// proposers, tracking its worst held node in a max-heap.
pub fn solve_gs_nodes(inst: &Instance<'_>, prefs: &PreferenceTables) -> (Assignment, GsStats) {
    let (n, k) = (inst.node_count(), inst.center_count());
    let mut center_of = vec![usize::MAX; n];
    let mut held: Vec<BinaryHeap<Score>> = (0..k)
        .map(|c| BinaryHeap::with_capacity(inst.quotas()[c]))
        .collect();
    let mut next = vec![0usize; n];
    let mut stats = GsStats::default();
    let mut free: Vec<usize> = (0..n).rev().collect();

    while let Some(mut u) = free.pop() {
        loop {
            let c = prefs.node_prefs(u)[next[u]] as usize;
            next[u] += 1;
            stats.proposals += 1;
            let s = prefs.score(u, c);
            let heap = &mut held[c];
            if heap.len() < inst.quotas()[c] {
                heap.push(s);
                center_of[u] = c;
                break;
            }
            let worst = *heap.peek().expect("quota is positive");
            if s < worst {
                heap.pop();
                heap.push(s);
                center_of[u] = c;
                center_of[worst.node] = usize::MAX;
                u = worst.node;
            }
        }
    }
    (finish(prefs, center_of), stats)
}
