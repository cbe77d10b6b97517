//! Oracles that keep search state between queries.
//!
//! Both exploit that active sets only shrink, so answers only get farther:
//!
//! * [`VoronoiCenters`] labels every node with its nearest active center
//!   (a graph Voronoi partition). Queries are lookups; removing a center
//!   re-labels just that center's cell, seeded from the cell boundary.
//! * [`StreamingNodes`] keeps one paused Dijkstra per center. A query
//!   resumes it until the next settled node is still active.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use hashbrown::HashMap;

use crate::dijkstra::Queued;
use crate::model::Instance;
use crate::nnc::oracle::{DnnOracle, OracleFactory};

const NO_CENTER: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, Default)]
pub struct Incremental;

impl OracleFactory for Incremental {
    type Centers<'a> = VoronoiCenters<'a>;
    type Nodes<'a> = StreamingNodes<'a>;

    fn build<'a>(&'a self, inst: &'a Instance<'a>) -> (VoronoiCenters<'a>, StreamingNodes<'a>) {
        (VoronoiCenters::new(inst), StreamingNodes::new(inst))
    }
}

/// `(dist, center)` labels compared lexicographically, so ties go to the
/// lower center index exactly as the score order requires.
fn better(d1: f64, c1: u32, d2: f64, c2: u32) -> bool {
    match d1.total_cmp(&d2) {
        Ordering::Less => true,
        Ordering::Equal => c1 < c2,
        Ordering::Greater => false,
    }
}

#[derive(Debug)]
pub struct VoronoiCenters<'a> {
    inst: &'a Instance<'a>,
    label: Vec<u32>,
    dist: Vec<f64>,
    cells: Vec<Vec<u32>>,
    active: Vec<bool>,
    repairing: Vec<bool>,
    heap: BinaryHeap<Queued>,
    work: u64,
}

impl<'a> VoronoiCenters<'a> {
    pub fn new(inst: &'a Instance<'a>) -> Self {
        let n = inst.node_count();
        let k = inst.center_count();
        let mut this = VoronoiCenters {
            inst,
            label: vec![NO_CENTER; n],
            dist: vec![f64::INFINITY; n],
            cells: vec![Vec::new(); k],
            active: vec![true; k],
            repairing: vec![true; n],
            heap: BinaryHeap::new(),
            work: 0,
        };
        for (c, &node) in inst.centers().iter().enumerate() {
            this.offer(node, 0.0, c as u32);
        }
        let all: Vec<u32> = (0..n as u32).collect();
        this.propagate(&all);
        this
    }

    fn offer(&mut self, u: usize, d: f64, c: u32) {
        if self.repairing[u] && better(d, c, self.dist[u], self.label[u]) {
            self.dist[u] = d;
            self.label[u] = c;
            self.heap.push(Queued {
                dist: d,
                tie: c as usize,
                node: u,
            });
        }
    }

    /// Settles queued labels over the nodes flagged `repairing`, then files
    /// each node of `region` under its new cell.
    fn propagate(&mut self, region: &[u32]) {
        let g = self.inst.graph();
        while let Some(Queued { dist: d, tie: c, node: u }) = self.heap.pop() {
            if self.label[u] != c as u32 || self.dist[u] != d {
                continue;
            }
            self.work += 1;
            for (v, w) in g.neighbors(u) {
                self.offer(v, d + w, c as u32);
            }
        }
        for &u in region {
            let u = u as usize;
            self.repairing[u] = false;
            if self.label[u] != NO_CENTER {
                self.cells[self.label[u] as usize].push(u as u32);
            }
        }
    }
}

impl DnnOracle for VoronoiCenters<'_> {
    fn nearest(&mut self, node: usize) -> Option<(usize, f64)> {
        match self.label[node] {
            NO_CENTER => None,
            c => Some((c as usize, self.dist[node])),
        }
    }

    fn remove(&mut self, center: usize) {
        if !core::mem::replace(&mut self.active[center], false) {
            return;
        }
        let cell = core::mem::take(&mut self.cells[center]);
        for &u in &cell {
            let u = u as usize;
            self.label[u] = NO_CENTER;
            self.dist[u] = f64::INFINITY;
            self.repairing[u] = true;
        }
        let g = self.inst.graph();
        for &u in &cell {
            let u = u as usize;
            for (v, w) in g.neighbors(u) {
                if !self.repairing[v] && self.label[v] != NO_CENTER {
                    self.offer(u, self.dist[v] + w, self.label[v]);
                }
            }
        }
        self.propagate(&cell);
    }

    fn is_active(&self, center: usize) -> bool {
        self.active[center]
    }

    fn work(&self) -> u64 {
        self.work
    }
}

#[derive(Debug, Default)]
struct Stream {
    heap: BinaryHeap<Queued>,
    /// Tentative distance and settled flag per reached node.
    reached: HashMap<u32, (f64, bool)>,
    head: Option<(usize, f64)>,
}

#[derive(Debug)]
pub struct StreamingNodes<'a> {
    inst: &'a Instance<'a>,
    active: Vec<bool>,
    streams: Vec<Option<Stream>>,
    work: u64,
}

impl<'a> StreamingNodes<'a> {
    pub fn new(inst: &'a Instance<'a>) -> Self {
        StreamingNodes {
            inst,
            active: vec![true; inst.node_count()],
            streams: (0..inst.center_count()).map(|_| None).collect(),
            work: 0,
        }
    }
}

impl DnnOracle for StreamingNodes<'_> {
    fn nearest(&mut self, center: usize) -> Option<(usize, f64)> {
        let g = self.inst.graph();
        let source = self.inst.centers()[center];
        let s = self.streams[center].get_or_insert_with(|| {
            let mut s = Stream::default();
            s.reached.insert(source as u32, (0.0, false));
            s.heap.push(Queued {
                dist: 0.0,
                tie: source,
                node: source,
            });
            s
        });
        loop {
            if let Some((u, d)) = s.head {
                if self.active[u] {
                    return Some((u, d));
                }
            }
            s.head = None;
            let Queued { dist: d, node: u, .. } = s.heap.pop()?;
            let entry = s.reached.get_mut(&(u as u32)).expect("queued nodes are reached");
            if entry.1 || d > entry.0 {
                continue;
            }
            entry.1 = true;
            self.work += 1;
            for (v, w) in g.neighbors(u) {
                let nd = d + w;
                let e = s.reached.entry(v as u32).or_insert((f64::INFINITY, false));
                if !e.1 && nd < e.0 {
                    e.0 = nd;
                    s.heap.push(Queued {
                        dist: nd,
                        tie: v,
                        node: v,
                    });
                }
            }
            s.head = Some((u, d));
        }
    }

    fn remove(&mut self, node: usize) {
        self.active[node] = false;
    }

    fn is_active(&self, node: usize) -> bool {
        self.active[node]
    }

    fn retire_query(&mut self, center: usize) {
        self.streams[center] = None;
    }

    fn work(&self) -> u64 {
        self.work
    }
}
