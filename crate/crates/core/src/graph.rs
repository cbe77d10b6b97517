//! Immutable weighted undirected graph in compressed adjacency form.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph has no nodes")]
    Empty,
    #[error("self-loop on node {node}")]
    SelfLoop { node: u64 },
    #[error("edge {u}-{v} has invalid weight {weight} (must be positive and finite)")]
    InvalidWeight { u: u64, v: u64, weight: f64 },
    #[error("invalid coordinate for node {node}")]
    InvalidCoordinate { node: u64 },
    #[error("node {node} has no coordinates while other nodes do")]
    MissingCoordinates { node: u64 },
    #[error("node index {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
}

/// Weighted undirected graph with dense node ids `0..node_count`.
///
/// Adjacency is stored in CSR form with both directions of every edge.
/// `original_ids` is strictly increasing, so dense ids preserve the order of
/// the identifiers in the source file.
#[derive(Debug, Clone, PartialEq)]
pub struct RoadGraph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
    coords: Option<Vec<(f64, f64)>>,
    original_ids: Vec<u64>,
}

impl RoadGraph {
    pub fn node_count(&self) -> usize {
        self.original_ids.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[u]..self.offsets[u + 1];
        self.targets[range.clone()]
            .iter()
            .zip(&self.weights[range])
            .map(|(&v, &w)| (v as usize, w))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    /// Each undirected edge once, as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, w)| (u, v, w))
        })
    }

    pub fn coords(&self) -> Option<&[(f64, f64)]> {
        self.coords.as_deref()
    }

    pub fn original_id(&self, u: usize) -> u64 {
        self.original_ids[u]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    /// Dense id of a node given its source-file identifier.
    pub fn index_of(&self, original: u64) -> Option<usize> {
        self.original_ids.binary_search(&original).ok()
    }

    pub fn check_node(&self, u: usize) -> Result<(), GraphError> {
        if u < self.node_count() {
            Ok(())
        } else {
            Err(GraphError::NodeOutOfRange {
                node: u,
                node_count: self.node_count(),
            })
        }
    }

    /// Component label per node, labels numbered in order of first node.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for (v, _) in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.component_labels().1 == 1
    }

    /// Induced subgraph on the largest connected component.
    ///
    /// Among components of equal size the one holding the smallest original
    /// id wins. Since ids are sorted, that is the component whose first
    /// dense node comes first, i.e. the smallest label.
    pub fn largest_component(&self) -> Result<RoadGraph, GraphError> {
        let n = self.node_count();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let (label, count) = self.component_labels();
        if count == 1 {
            return Ok(self.clone());
        }
        let mut sizes = vec![0usize; count];
        for &l in &label {
            sizes[l] += 1;
        }
        let mut best = 0;
        for (l, &size) in sizes.iter().enumerate() {
            if size > sizes[best] {
                best = l;
            }
        }
        let keep: Vec<bool> = label.iter().map(|&l| l == best).collect();
        Ok(self.induced(&keep))
    }

    fn induced(&self, keep: &[bool]) -> RoadGraph {
        let mut remap = vec![u32::MAX; self.node_count()];
        let mut original_ids = Vec::new();
        for (u, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            remap[u] = original_ids.len() as u32;
            original_ids.push(self.original_ids[u]);
        }
        let mut offsets = Vec::with_capacity(original_ids.len() + 1);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        offsets.push(0);
        for u in (0..self.node_count()).filter(|&u| keep[u]) {
            for (v, w) in self.neighbors(u) {
                if keep[v] {
                    targets.push(remap[v]);
                    weights.push(w);
                }
            }
            offsets.push(targets.len());
        }
        let coords = self.coords.as_ref().map(|c| {
            c.iter()
                .zip(keep)
                .filter(|(_, &k)| k)
                .map(|(&p, _)| p)
                .collect()
        });
        RoadGraph {
            offsets,
            targets,
            weights,
            coords,
            original_ids,
        }
    }
}

/// Collects nodes, edges, and coordinates keyed by source identifiers and
/// normalizes them into a [`RoadGraph`].
///
/// Edges are symmetrized and parallel edges collapse to the minimum weight.
/// Dense ids follow ascending source id.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    nodes: Vec<u64>,
    edges: Vec<(u64, u64, f64)>,
    coords: Vec<(u64, f64, f64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a node so it exists even without incident edges.
    pub fn add_node(&mut self, id: u64) -> &mut Self {
        self.nodes.push(id);
        self
    }

    pub fn add_edge(&mut self, u: u64, v: u64, weight: f64) -> Result<&mut Self, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop { node: u });
        }
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(GraphError::InvalidWeight { u, v, weight });
        }
        self.edges.push((u.min(v), u.max(v), weight));
        Ok(self)
    }

    pub fn set_coord(&mut self, id: u64, x: f64, y: f64) -> Result<&mut Self, GraphError> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(GraphError::InvalidCoordinate { node: id });
        }
        self.coords.push((id, x, y));
        Ok(self)
    }

    pub fn build(self) -> Result<RoadGraph, GraphError> {
        let GraphBuilder {
            mut nodes,
            mut edges,
            coords,
        } = self;
        nodes.extend(edges.iter().flat_map(|&(u, v, _)| [u, v]));
        nodes.extend(coords.iter().map(|&(id, _, _)| id));
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.is_empty() {
            return Err(GraphError::Empty);
        }
        let n = nodes.len();
        let dense = |id: u64| nodes.binary_search(&id).expect("interned id");

        edges.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then(a.2.total_cmp(&b.2)));
        edges.dedup_by(|later, first| later.0 == first.0 && later.1 == first.1);

        let mut degree = vec![0usize; n + 1];
        let dense_edges: Vec<(usize, usize, f64)> = edges
            .iter()
            .map(|&(u, v, w)| (dense(u), dense(v), w))
            .collect();
        for &(u, v, _) in &dense_edges {
            degree[u + 1] += 1;
            degree[v + 1] += 1;
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let offsets = degree;
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; offsets[n]];
        let mut weights = vec![0f64; offsets[n]];
        for &(u, v, w) in &dense_edges {
            targets[cursor[u]] = v as u32;
            weights[cursor[u]] = w;
            cursor[u] += 1;
            targets[cursor[v]] = u as u32;
            weights[cursor[v]] = w;
            cursor[v] += 1;
        }
        for u in 0..n {
            // Sorted neighbor lists make the layout independent of input order.
            let range = offsets[u]..offsets[u + 1];
            let mut adj: Vec<(u32, f64)> = targets[range.clone()]
                .iter()
                .copied()
                .zip(weights[range.clone()].iter().copied())
                .collect();
            adj.sort_unstable_by_key(|&(v, _)| v);
            for (i, (v, w)) in adj.into_iter().enumerate() {
                targets[range.start + i] = v;
                weights[range.start + i] = w;
            }
        }

        let coords = if coords.is_empty() {
            None
        } else {
            let mut out = vec![(f64::NAN, f64::NAN); n];
            for &(id, x, y) in &coords {
                out[dense(id)] = (x, y);
            }
            if let Some(u) = out.iter().position(|p| p.0.is_nan()) {
                return Err(GraphError::MissingCoordinates { node: nodes[u] });
            }
            Some(out)
        };

        Ok(RoadGraph {
            offsets,
            targets,
            weights,
            coords,
            original_ids: nodes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(edges: &[(u64, u64, f64)]) -> RoadGraph {
        let mut b = GraphBuilder::new();
        for &(u, v, w) in edges {
            b.add_edge(u, v, w).unwrap();
        }
        b.build().unwrap()
    }

    #[test]
    fn symmetric_edges_collapse() {
        let g = build(&[(1, 2, 5.0), (2, 1, 5.0)]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), [(1, 5.0)]);
        assert_eq!(g.neighbors(1).collect::<Vec<_>>(), [(0, 5.0)]);
    }

    #[test]
    fn parallel_edges_keep_minimum() {
        let g = build(&[(1, 2, 5.0), (1, 2, 3.0), (2, 1, 4.0)]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1, 3.0)]);
    }

    #[test]
    fn rejects_self_loop_and_bad_weights() {
        let mut b = GraphBuilder::new();
        assert_eq!(b.add_edge(1, 1, 2.0).unwrap_err(), GraphError::SelfLoop { node: 1 });
        assert!(matches!(
            b.add_edge(1, 2, 0.0),
            Err(GraphError::InvalidWeight { .. })
        ));
        assert!(b.add_edge(1, 2, -1.0).is_err());
        assert!(b.add_edge(1, 2, f64::INFINITY).is_err());
        assert!(b.add_edge(1, 2, f64::NAN).is_err());
        assert_eq!(GraphBuilder::new().build().unwrap_err(), GraphError::Empty);
    }

    #[test]
    fn dense_ids_follow_sorted_original_ids() {
        let g = build(&[(30, 10, 1.0), (20, 30, 2.0)]);
        assert_eq!(g.original_ids(), &[10, 20, 30]);
        assert_eq!(g.index_of(20), Some(1));
        assert_eq!(g.index_of(25), None);
    }

    #[test]
    fn partial_coordinates_rejected() {
        let mut b = GraphBuilder::new();
        b.add_edge(1, 2, 1.0).unwrap();
        b.set_coord(1, 0.0, 0.0).unwrap();
        assert_eq!(b.build().unwrap_err(), GraphError::MissingCoordinates { node: 2 });
    }

    #[test]
    fn largest_component_drops_isolated_node() {
        let mut b = GraphBuilder::new();
        b.add_edge(1, 2, 1.0).unwrap();
        b.add_edge(2, 3, 1.0).unwrap();
        b.add_node(4);
        let g = b.build().unwrap();
        assert_eq!(g.node_count(), 4);
        assert!(!g.is_connected());
        let lc = g.largest_component().unwrap();
        assert_eq!(lc.node_count(), 3);
        assert_eq!(lc.edge_count(), 2);
        assert_eq!(lc.original_ids(), &[1, 2, 3]);
    }

    #[test]
    fn largest_component_identity_on_connected() {
        let g = build(&[(1, 2, 1.0), (2, 3, 2.0), (3, 1, 4.0)]);
        assert_eq!(g.largest_component().unwrap(), g);
    }

    #[test]
    fn largest_component_tie_goes_to_smallest_id() {
        // Two 4-cycles; the one holding id 1 is listed second.
        let g = build(&[
            (5, 6, 1.0),
            (6, 7, 1.0),
            (7, 8, 1.0),
            (8, 5, 1.0),
            (1, 2, 1.0),
            (2, 3, 1.0),
            (3, 4, 1.0),
            (4, 1, 1.0),
        ]);
        let lc = g.largest_component().unwrap();
        assert_eq!(lc.original_ids(), &[1, 2, 3, 4]);
        assert_eq!(lc.edge_count(), 4);
    }

    #[test]
    fn largest_component_keeps_coordinates() {
        let mut b = GraphBuilder::new();
        b.add_edge(1, 2, 1.0).unwrap();
        b.add_node(3);
        for id in 1..=3 {
            b.set_coord(id, id as f64, -(id as f64)).unwrap();
        }
        let lc = b.build().unwrap().largest_component().unwrap();
        assert_eq!(lc.coords().unwrap(), &[(1.0, -1.0), (2.0, -2.0)]);
    }
}
