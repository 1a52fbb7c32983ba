//! Reduction gadget from Independent Set: the instance has an equilibrium
//! exactly when the input graph has an independent set of size `s`.

use std::collections::BTreeMap;

use crate::game::{Agent, AgentId, Assignment, GameError, GameInstance};
use crate::topology::{NodeId, Topology, TopologyError};

pub const RED: usize = 1;
pub const BLUE: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GadgetError {
    #[error("input graph: {0}")]
    Graph(#[from] TopologyError),
    #[error("s must be at least 1")]
    ZeroSize,
    #[error("{vertices} vertices leave too few free nodes for s = {s}")]
    TooFewVertices { vertices: usize, s: usize },
    #[error("{0}")]
    Game(#[from] GameError),
    #[error("expected {expected} vertices, got {found}")]
    WrongSetSize { expected: usize, found: usize },
    #[error("vertex {0} is not a vertex of the input graph")]
    UnknownVertex(NodeId),
}

/// The gadget instance and the node ids of its parts.
///
/// Nodes `0..|X|` are the input graph's vertices, followed by the hub set
/// `W`, then `x`, `y`, `z` and finally the stubborn leaves around them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub game: GameInstance,
    pub s: usize,
    pub vertices: usize,
    pub hubs: std::ops::Range<NodeId>,
    pub x: NodeId,
    pub y: NodeId,
    pub z: NodeId,
}

/// Builds the gadget for the input graph on `vertices` nodes with `h_edges`.
pub fn build_gadget(vertices: usize, h_edges: &[(NodeId, NodeId)], s: usize) -> Result<Gadget, GadgetError> {
    if s == 0 {
        return Err(GadgetError::ZeroSize);
    }
    if vertices + 2 < s {
        return Err(GadgetError::TooFewVertices { vertices, s });
    }
    // validates the input graph on its own
    Topology::new(vertices.max(1), h_edges.iter().copied())?;

    let hub_count = 7 * s + 1;
    let hubs = vertices..vertices + hub_count;
    let x = hubs.end;
    let y = x + 1;
    let z = x + 2;
    let mut next = z + 1;
    let mut edges: Vec<(NodeId, NodeId)> = h_edges.to_vec();
    for h in 0..vertices {
        edges.extend(hubs.clone().map(|w| (h, w)));
    }
    edges.push((x, y));

    let mut agents = Vec::new();
    let mut placement = BTreeMap::new();
    for id in 0..=s {
        agents.push(Agent::strategic(id, RED));
    }
    let mut stubborn = |type_id: usize, node: NodeId, agents: &mut Vec<Agent>| {
        let id = agents.len();
        agents.push(Agent::stubborn(id, type_id));
        placement.insert(id, node);
    };
    for (i, w) in hubs.clone().enumerate() {
        stubborn(if i < 5 * s + 1 { BLUE } else { RED }, w, &mut agents);
    }
    let first_g2_stubborn = next;
    let mut leaves = |owner: NodeId, red: usize, blue: usize, agents: &mut Vec<Agent>| {
        for i in 0..red + blue {
            edges.push((owner, next));
            stubborn(if i < red { RED } else { BLUE }, next, agents);
            next += 1;
        }
    };
    leaves(x, 0, 1, &mut agents);
    leaves(y, 1, 5, &mut agents);
    leaves(z, 3, 4, &mut agents);
    edges.push((hubs.start, first_g2_stubborn));

    let topology = Topology::new(next, edges)?;
    let game = GameInstance::new(topology, 2, agents, placement)?;
    Ok(Gadget {
        game,
        s,
        vertices,
        hubs,
        x,
        y,
        z,
    })
}

impl Gadget {
    /// Strategic reds on `independent_set` and the remaining one on `x`.
    pub fn canonical_assignment(&self, independent_set: &[NodeId]) -> Result<Assignment, GadgetError> {
        if independent_set.len() != self.s {
            return Err(GadgetError::WrongSetSize {
                expected: self.s,
                found: independent_set.len(),
            });
        }
        if let Some(&v) = independent_set.iter().find(|&&v| v >= self.vertices) {
            return Err(GadgetError::UnknownVertex(v));
        }
        let mut placement: BTreeMap<AgentId, NodeId> = self.game.stubborn_placement().clone();
        for (id, &v) in independent_set.iter().enumerate() {
            placement.insert(id, v);
        }
        placement.insert(self.s, self.x);
        Ok(Assignment::new(&self.game, placement)?)
    }
}
