//! Synthetic graphs for tests and benchmarks.

use crate::graph::{GraphBuilder, RoadGraph};
use crate::rng::SplitMix64;

/// Jittered weights are multiples of this, so path sums stay exact in `f64`
/// and distances do not depend on summation order.
pub const JITTER_QUANTUM: f64 = 1.0 / (1u64 << 20) as f64;

/// `width × height` grid with 4-neighborhood edges.
///
/// Node ids are row-major starting at 0 and coordinates are `(column, row)`.
/// Edge weights are 1, or drawn from `[1, 2)` when `jitter_seed` is given;
/// edges draw in row-major order, right edge before down edge.
pub fn grid_graph(width: usize, height: usize, jitter_seed: Option<u64>) -> RoadGraph {
    let mut rng = jitter_seed.map(SplitMix64::new);
    let mut weight = || match rng.as_mut() {
        Some(r) => 1.0 + (r.next_u64() >> 44) as f64 * JITTER_QUANTUM,
        None => 1.0,
    };
    let mut b = GraphBuilder::new();
    for row in 0..height {
        for col in 0..width {
            let id = (row * width + col) as u64;
            b.add_node(id);
            b.set_coord(id, col as f64, row as f64).unwrap();
            if col + 1 < width {
                b.add_edge(id, id + 1, weight()).unwrap();
            }
            if row + 1 < height {
                b.add_edge(id, id + width as u64, weight()).unwrap();
            }
        }
    }
    b.build().expect("grid has at least one node")
}

/// Unit-weight path on `n` nodes, coordinates `(i, 0)`.
pub fn path_graph(n: usize) -> RoadGraph {
    grid_graph(n, 1, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        let g = grid_graph(4, 4, None);
        assert_eq!(g.node_count(), 16);
        assert_eq!(g.edge_count(), 24);
        assert!(g.is_connected());
        let g = grid_graph(100, 100, Some(1));
        assert_eq!(g.edge_count(), 2 * 100 * 99);
    }

    #[test]
    fn jitter_in_range_and_seeded() {
        let a = grid_graph(5, 5, Some(3));
        let b = grid_graph(5, 5, Some(3));
        assert_eq!(a, b);
        assert_ne!(a, grid_graph(5, 5, Some(4)));
        for (_, _, w) in a.edges() {
            assert!((1.0..2.0).contains(&w));
            assert_eq!((w / JITTER_QUANTUM).fract(), 0.0);
        }
    }

    #[test]
    fn path_shape() {
        let g = path_graph(6);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.coords().unwrap()[5], (5.0, 0.0));
    }
}
