use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;

use crate::dijkstra::Queued;
use crate::graph::RoadGraph;
use crate::model::Instance;

/// Dynamic nearest-neighbor structure over one side of the matching.
///
/// The structure holds a shrinking active set of elements (center indices
/// or node ids) and answers, for a query agent of the opposite side, the
/// active element with the smallest [`Score`](crate::Score) together with
/// its distance.
pub trait DnnOracle {
    fn nearest(&mut self, query: usize) -> Option<(usize, f64)>;

    /// Deactivates `element`; it is never returned again.
    fn remove(&mut self, element: usize);

    fn is_active(&self, element: usize) -> bool;

    /// Signals that `query` will not be asked about again.
    fn retire_query(&mut self, _query: usize) {}

    /// Nodes settled by internal searches so far.
    fn work(&self) -> u64 {
        0
    }
}

/// Builds the oracle pair for a run: the center side answers node queries,
/// the node side answers center queries.
pub trait OracleFactory {
    type Centers<'a>: DnnOracle
    where
        Self: 'a;
    type Nodes<'a>: DnnOracle
    where
        Self: 'a;

    fn build<'a>(&'a self, inst: &'a Instance<'a>) -> (Self::Centers<'a>, Self::Nodes<'a>);
}

/// Dijkstra scratch space reused across queries, reset by generation stamp.
#[derive(Debug)]
pub(crate) struct Scratch {
    dist: Vec<f64>,
    stamp: Vec<u32>,
    generation: u32,
    heap: BinaryHeap<Queued>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Scratch {
            dist: vec![f64::INFINITY; n],
            stamp: vec![0; n],
            generation: 0,
            heap: BinaryHeap::new(),
        }
    }

    /// Runs Dijkstra from `source`, settling in `(dist, tie(node))` order,
    /// and stops at the first settled node for which `hit` returns an
    /// element. Returns that element, its distance, and the settle count.
    pub(crate) fn search(
        &mut self,
        g: &RoadGraph,
        source: usize,
        tie: impl Fn(usize) -> usize,
        mut hit: impl FnMut(usize) -> Option<usize>,
    ) -> (Option<(usize, f64)>, u64) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.fill(0);
            self.generation = 1;
        }
        let generation = self.generation;
        self.heap.clear();
        self.dist[source] = 0.0;
        self.stamp[source] = generation;
        self.heap.push(Queued {
            dist: 0.0,
            tie: tie(source),
            node: source,
        });
        let mut settled = 0;
        while let Some(Queued { dist: d, node: u, .. }) = self.heap.pop() {
            if d > self.dist[u] {
                continue;
            }
            settled += 1;
            if let Some(found) = hit(u) {
                return (Some((found, d)), settled);
            }
            for (v, w) in g.neighbors(u) {
                let nd = d + w;
                if self.stamp[v] != generation || nd < self.dist[v] {
                    self.stamp[v] = generation;
                    self.dist[v] = nd;
                    self.heap.push(Queued {
                        dist: nd,
                        tie: tie(v),
                        node: v,
                    });
                }
            }
        }
        (None, settled)
    }
}

/// Baseline oracles: every query runs a fresh Dijkstra from the query agent
/// and stops at the first active element it settles.
#[derive(Debug, Clone, Copy, Default)]
pub struct TruncatedDijkstra;

impl OracleFactory for TruncatedDijkstra {
    type Centers<'a> = TruncatedCenters<'a>;
    type Nodes<'a> = TruncatedNodes<'a>;

    fn build<'a>(&'a self, inst: &'a Instance<'a>) -> (TruncatedCenters<'a>, TruncatedNodes<'a>) {
        (TruncatedCenters::new(inst), TruncatedNodes::new(inst))
    }
}

/// Active centers; queries are node ids.
#[derive(Debug)]
pub struct TruncatedCenters<'a> {
    inst: &'a Instance<'a>,
    active: Vec<bool>,
    live: usize,
    scratch: Scratch,
    work: u64,
}

impl<'a> TruncatedCenters<'a> {
    pub fn new(inst: &'a Instance<'a>) -> Self {
        TruncatedCenters {
            inst,
            active: vec![true; inst.center_count()],
            live: inst.center_count(),
            scratch: Scratch::new(inst.node_count()),
            work: 0,
        }
    }
}

impl DnnOracle for TruncatedCenters<'_> {
    fn nearest(&mut self, node: usize) -> Option<(usize, f64)> {
        if self.live == 0 {
            return None;
        }
        let inst = self.inst;
        let active = &self.active;
        // Centers settle before plain nodes at equal distance, lowest index first.
        let (found, work) = self.scratch.search(
            inst.graph(),
            node,
            |v| inst.center_at(v).unwrap_or(usize::MAX),
            |v| inst.center_at(v).filter(|&c| active[c]),
        );
        self.work += work;
        found
    }

    fn remove(&mut self, center: usize) {
        if core::mem::replace(&mut self.active[center], false) {
            self.live -= 1;
        }
    }

    fn is_active(&self, center: usize) -> bool {
        self.active[center]
    }

    fn work(&self) -> u64 {
        self.work
    }
}

/// Unmatched nodes; queries are center indices.
#[derive(Debug)]
pub struct TruncatedNodes<'a> {
    inst: &'a Instance<'a>,
    active: Vec<bool>,
    live: usize,
    scratch: Scratch,
    work: u64,
}

impl<'a> TruncatedNodes<'a> {
    pub fn new(inst: &'a Instance<'a>) -> Self {
        TruncatedNodes {
            inst,
            active: vec![true; inst.node_count()],
            live: inst.node_count(),
            scratch: Scratch::new(inst.node_count()),
            work: 0,
        }
    }
}

impl DnnOracle for TruncatedNodes<'_> {
    fn nearest(&mut self, center: usize) -> Option<(usize, f64)> {
        if self.live == 0 {
            return None;
        }
        let active = &self.active;
        let (found, work) = self.scratch.search(
            self.inst.graph(),
            self.inst.centers()[center],
            |v| v,
            |v| active[v].then_some(v),
        );
        self.work += work;
        found
    }

    fn remove(&mut self, node: usize) {
        if core::mem::replace(&mut self.active[node], false) {
            self.live -= 1;
        }
    }

    fn is_active(&self, node: usize) -> bool {
        self.active[node]
    }

    fn work(&self) -> u64 {
        self.work
    }
}
