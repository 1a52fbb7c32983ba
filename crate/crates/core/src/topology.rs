//! Undirected simple graphs with dense node ids.
//!
//! Neighbor lists are sorted ascending. That order is the left-to-right order
//! used by every rooted traversal in the crate.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("a topology needs at least one node")]
    Empty,
    #[error("edge ({0}, {1}) references a node outside 0..{2}")]
    NodeOutOfRange(NodeId, NodeId, usize),
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(NodeId, NodeId),
    #[error("node {0} does not exist")]
    UnknownNode(NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTopology", into = "RawTopology")]
pub struct Topology {
    adjacency: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
}

#[derive(Serialize, Deserialize)]
struct RawTopology {
    nodes: usize,
    edges: Vec<[NodeId; 2]>,
}

impl TryFrom<RawTopology> for Topology {
    type Error = TopologyError;
    fn try_from(raw: RawTopology) -> Result<Self, Self::Error> {
        Topology::new(raw.nodes, raw.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Topology> for RawTopology {
    fn from(t: Topology) -> Self {
        RawTopology {
            nodes: t.node_count(),
            edges: t.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Topology {
    pub fn new(
        node_count: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, TopologyError> {
        if node_count == 0 {
            return Err(TopologyError::Empty);
        }
        let mut adjacency = vec![Vec::new(); node_count];
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(TopologyError::NodeOutOfRange(u, v, node_count));
            }
            if u == v {
                return Err(TopologyError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(TopologyError::DuplicateEdge(w[0].0, w[0].1));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Topology {
            adjacency,
            edges: normalized,
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        node < self.node_count()
    }

    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn are_adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Common degree when every node has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.degree(0);
        self.adjacency
            .iter()
            .all(|n| n.len() == first)
            .then_some(first)
    }

    /// Breadth-first distances from `source`; unreachable nodes get `None`.
    pub fn distances_from(&self, source: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = VecDeque::from([source]);
        dist[source] = Some(0);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued nodes have a distance");
            for &w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.node_count() && self.is_connected()
    }

    /// Same graph with `extra` isolated nodes appended after the existing ids.
    pub fn with_isolated_nodes(&self, extra: usize) -> Topology {
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(std::iter::repeat_with(Vec::new).take(extra));
        Topology {
            adjacency,
            edges: self.edges.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let t = Topology::new(4, [(3, 0), (0, 1), (2, 0)]).unwrap();
        assert_eq!(t.neighbors(0), &[1, 2, 3]);
        assert_eq!(t.neighbors(3), &[0]);
        assert_eq!(t.edges(), &[(0, 1), (0, 2), (0, 3)]);
        for (u, v) in t.edges().iter().copied() {
            assert!(t.are_adjacent(u, v) && t.are_adjacent(v, u));
        }
    }

    #[test]
    fn rejects_non_simple_graphs() {
        assert_eq!(Topology::new(3, [(1, 1)]), Err(TopologyError::SelfLoop(1)));
        assert_eq!(
            Topology::new(3, [(0, 1), (1, 0)]),
            Err(TopologyError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Topology::new(2, [(0, 2)]),
            Err(TopologyError::NodeOutOfRange(..))
        ));
        assert_eq!(Topology::new(0, []), Err(TopologyError::Empty));
    }

    #[test]
    fn structure_queries() {
        let path = Topology::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(path.is_tree());
        assert_eq!(path.regular_degree(), None);
        let triangle = Topology::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!triangle.is_tree());
        assert_eq!(triangle.regular_degree(), Some(2));
        let split = Topology::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!split.is_connected());
        assert_eq!(path.with_isolated_nodes(2).node_count(), 5);
    }

    #[test]
    fn json_round_trip() {
        let t = Topology::new(3, [(0, 1), (1, 2)]).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"nodes":3,"edges":[[0,1],[1,2]]}"#);
        let back: Topology = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
