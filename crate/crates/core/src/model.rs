//! Problem instances and their solutions.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::RoadGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("need 1 <= k <= n centers, got k = {k} for n = {n}")]
    CenterCount { n: usize, k: usize },
    #[error("center node {node} out of range for {node_count} nodes")]
    CenterOutOfRange { node: usize, node_count: usize },
    #[error("node {node} listed as a center more than once")]
    DuplicateCenter { node: usize },
    #[error("{quotas} quotas given for {centers} centers")]
    QuotaCount { centers: usize, quotas: usize },
    #[error("center {center} has zero quota")]
    ZeroQuota { center: usize },
    #[error("quotas sum to {sum} but the graph has {node_count} nodes ({})", deficit(*.sum, *.node_count))]
    QuotaSum { sum: usize, node_count: usize },
    #[error("graph is not connected ({components} components)")]
    Disconnected { components: usize },
}

fn deficit(sum: usize, n: usize) -> alloc::string::String {
    use alloc::format;
    if sum < n {
        format!("{} short", n - sum)
    } else {
        format!("{} over", sum - n)
    }
}

/// `k` quotas differing by at most one and summing to `n`; the first
/// `n mod k` centers get the larger share.
pub fn equal_quotas(n: usize, k: usize) -> Result<Vec<usize>, InstanceError> {
    if k == 0 || k > n {
        return Err(InstanceError::CenterCount { n, k });
    }
    let (base, extra) = (n / k, n % k);
    Ok((0..k).map(|i| base + usize::from(i < extra)).collect())
}

pub const NOT_A_CENTER: u32 = u32::MAX;

/// A connected graph, its ordered centers, and one quota per center.
#[derive(Debug, Clone)]
pub struct Instance<'g> {
    graph: &'g RoadGraph,
    centers: Vec<usize>,
    quotas: Vec<usize>,
    center_at: Vec<u32>,
}

impl<'g> Instance<'g> {
    pub fn new(
        graph: &'g RoadGraph,
        centers: Vec<usize>,
        quotas: Vec<usize>,
    ) -> Result<Self, InstanceError> {
        let n = graph.node_count();
        let k = centers.len();
        if k == 0 || k > n {
            return Err(InstanceError::CenterCount { n, k });
        }
        if quotas.len() != k {
            return Err(InstanceError::QuotaCount {
                centers: k,
                quotas: quotas.len(),
            });
        }
        let mut center_at = vec![NOT_A_CENTER; n];
        for (i, &c) in centers.iter().enumerate() {
            if c >= n {
                return Err(InstanceError::CenterOutOfRange {
                    node: c,
                    node_count: n,
                });
            }
            if center_at[c] != NOT_A_CENTER {
                return Err(InstanceError::DuplicateCenter { node: c });
            }
            center_at[c] = i as u32;
        }
        if let Some(center) = quotas.iter().position(|&q| q == 0) {
            return Err(InstanceError::ZeroQuota { center });
        }
        let sum: usize = quotas.iter().sum();
        if sum != n {
            return Err(InstanceError::QuotaSum { sum, node_count: n });
        }
        let (_, components) = graph.component_labels();
        if components != 1 {
            return Err(InstanceError::Disconnected { components });
        }
        Ok(Instance {
            graph,
            centers,
            quotas,
            center_at,
        })
    }

    pub fn with_equal_quotas(graph: &'g RoadGraph, centers: Vec<usize>) -> Result<Self, InstanceError> {
        let quotas = equal_quotas(graph.node_count(), centers.len())?;
        Self::new(graph, centers, quotas)
    }

    pub fn graph(&self) -> &'g RoadGraph {
        self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn center_count(&self) -> usize {
        self.centers.len()
    }

    /// Center nodes, indexed by center index.
    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    pub fn quotas(&self) -> &[usize] {
        &self.quotas
    }

    /// Center index located at `node`, if any.
    pub fn center_at(&self, node: usize) -> Option<usize> {
        match self.center_at[node] {
            NOT_A_CENTER => None,
            c => Some(c as usize),
        }
    }
}

/// Node-to-center matching: `center_of[u]` is a center index and `dist[u]`
/// the shortest-path length from `u` to that center.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub center_of: Vec<usize>,
    pub dist: Vec<f64>,
}

impl Assignment {
    pub fn member_counts(&self, k: usize) -> Vec<usize> {
        let mut counts = vec![0; k];
        for &c in &self.center_of {
            if c < k {
                counts[c] += 1;
            }
        }
        counts
    }

    /// First center whose member count differs from its quota, as
    /// `(center, quota, actual)`. Out-of-range center indices count as a
    /// violation of center `k`.
    pub fn quota_violation(&self, quotas: &[usize]) -> Option<(usize, usize, usize)> {
        let k = quotas.len();
        if let Some(&bad) = self.center_of.iter().find(|&&c| c >= k) {
            return Some((bad, 0, self.center_of.iter().filter(|&&c| c == bad).count()));
        }
        let counts = self.member_counts(k);
        (0..k)
            .find(|&c| counts[c] != quotas[c])
            .map(|c| (c, quotas[c], counts[c]))
    }

    /// FNV-1a over the match array, each center index as little-endian u32.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &c in &self.center_of {
            for b in (c as u32).to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::grid::path_graph;
    use alloc::string::ToString;

    #[test]
    fn equal_quota_examples() {
        assert_eq!(equal_quotas(6, 2).unwrap(), [3, 3]);
        assert_eq!(equal_quotas(7, 3).unwrap(), [3, 2, 2]);
        assert_eq!(equal_quotas(5, 5).unwrap(), [1, 1, 1, 1, 1]);
        assert!(equal_quotas(5, 0).is_err());
        assert!(equal_quotas(5, 6).is_err());
    }

    #[test]
    fn instance_validation() {
        let g = path_graph(6);
        assert!(Instance::new(&g, vec![0, 5], vec![3, 3]).is_ok());
        assert_eq!(
            Instance::new(&g, vec![0, 0], vec![3, 3]).unwrap_err(),
            InstanceError::DuplicateCenter { node: 0 }
        );
        assert_eq!(
            Instance::new(&g, vec![0, 6], vec![3, 3]).unwrap_err(),
            InstanceError::CenterOutOfRange { node: 6, node_count: 6 }
        );
        assert_eq!(
            Instance::new(&g, vec![0, 5], vec![3]).unwrap_err(),
            InstanceError::QuotaCount { centers: 2, quotas: 1 }
        );
        assert_eq!(
            Instance::new(&g, vec![0, 5], vec![6, 0]).unwrap_err(),
            InstanceError::ZeroQuota { center: 1 }
        );
        let err = Instance::new(&g, vec![0, 5], vec![3, 2]).unwrap_err();
        assert_eq!(err, InstanceError::QuotaSum { sum: 5, node_count: 6 });
        assert!(err.to_string().contains("1 short"));
        assert!(Instance::new(&g, vec![], vec![]).is_err());
    }

    #[test]
    fn disconnected_rejected() {
        let mut b = GraphBuilder::new();
        b.add_edge(1, 2, 1.0).unwrap();
        b.add_node(3);
        let g = b.build().unwrap();
        assert_eq!(
            Instance::new(&g, vec![0], vec![3]).unwrap_err(),
            InstanceError::Disconnected { components: 2 }
        );
    }

    #[test]
    fn center_lookup() {
        let g = path_graph(6);
        let inst = Instance::new(&g, vec![4, 1], vec![3, 3]).unwrap();
        assert_eq!(inst.center_at(4), Some(0));
        assert_eq!(inst.center_at(1), Some(1));
        assert_eq!(inst.center_at(0), None);
    }

    #[test]
    fn quota_violation_reporting() {
        let a = Assignment {
            center_of: vec![0, 0, 1],
            dist: vec![0.0; 3],
        };
        assert_eq!(a.quota_violation(&[2, 1]), None);
        assert_eq!(a.quota_violation(&[1, 2]), Some((0, 1, 2)));
        let b = Assignment {
            center_of: vec![0, 5, 1],
            dist: vec![0.0; 3],
        };
        assert_eq!(b.quota_violation(&[1, 2]), Some((5, 0, 1)));
    }

    #[test]
    fn digest_depends_on_match() {
        let a = Assignment {
            center_of: vec![0, 1, 1],
            dist: vec![0.0; 3],
        };
        let mut b = a.clone();
        b.center_of.swap(0, 1);
        assert_ne!(a.digest(), b.digest());
        b.dist[0] = 9.0;
        b.center_of.swap(0, 1);
        assert_eq!(a.digest(), b.digest());
    }
}
