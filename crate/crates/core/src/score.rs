use core::cmp::Ordering;

/// Preference value of a (node, center) pair, shared by both sides.
///
/// Ordered lexicographically by `(dist, node, center)`, so every pair has a
/// distinct score and the node's ranking of centers agrees with the center's
/// ranking of nodes. Lower is better.
#[derive(Debug, Clone, Copy)]
pub struct Score {
    pub dist: f64,
    pub node: usize,
    pub center: usize,
}

impl Score {
    pub const fn new(dist: f64, node: usize, center: usize) -> Self {
        Score { dist, node, center }
    }
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then(self.node.cmp(&other.node))
            .then(self.center.cmp(&other.center))
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Score {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Score {}
