//! Single-source shortest paths with a binary heap and lazy deletion.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::graph::{GraphError, RoadGraph};

/// Shortest-path distances from one source to every node.
#[derive(Debug, Clone, PartialEq)]
pub struct DistRow {
    pub source: usize,
    /// `f64::INFINITY` for unreachable nodes.
    pub dist: Vec<f64>,
}

/// Heap entry ordered so that `BinaryHeap` pops the smallest `(dist, tie)`.
///
/// `tie` orders entries at equal distance; callers use it to make settle
/// order follow the [`Score`](crate::Score) order.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Queued {
    pub dist: f64,
    pub tie: usize,
    pub node: usize,
}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then(other.tie.cmp(&self.tie))
            .then(other.node.cmp(&self.node))
    }
}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Queued {}

pub fn dijkstra(g: &RoadGraph, source: usize) -> Result<DistRow, GraphError> {
    g.check_node(source)?;
    let mut dist = vec![f64::INFINITY; g.node_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Queued {
        dist: 0.0,
        tie: source,
        node: source,
    });
    while let Some(Queued { dist: d, node: u, .. }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for (v, w) in g.neighbors(u) {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Queued {
                    dist: nd,
                    tie: v,
                    node: v,
                });
            }
        }
    }
    Ok(DistRow { source, dist })
}
