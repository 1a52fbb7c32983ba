//! Game instances, agents, assignments and the occupant-class view of an
//! assignment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::topology::{NodeId, Topology, TopologyError};

pub type AgentId = usize;
/// Type labels run from 1 to k.
pub type TypeId = usize;

/// Largest supported number of types; class states pack a type into 7 bits.
pub const MAX_TYPES: usize = 127;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("need at least 2 types, got {0}")]
    TooFewTypes(usize),
    #[error("at most {MAX_TYPES} types are supported, got {0}")]
    TooManyTypes(usize),
    #[error("need at least 2 agents, got {0}")]
    TooFewAgents(usize),
    #[error("{agents} agents need strictly more than {agents} nodes, topology has {nodes}")]
    NotEnoughNodes { nodes: usize, agents: usize },
    #[error("agent id {0} appears more than once")]
    DuplicateAgent(AgentId),
    #[error("agent {agent} has type {type_id}, outside 1..={k}")]
    TypeOutOfRange {
        agent: AgentId,
        type_id: TypeId,
        k: usize,
    },
    #[error("stubborn agent {0} has no fixed node")]
    StubbornWithoutNode(AgentId),
    #[error("strategic agent {0} must not carry a fixed node")]
    StrategicWithNode(AgentId),
    #[error("agent {agent} is placed on node {node}, which does not exist")]
    NodeOutOfRange { agent: AgentId, node: NodeId },
    #[error("node {node} is shared by agents {first} and {second}")]
    SharedNode {
        node: NodeId,
        first: AgentId,
        second: AgentId,
    },
    #[error("agent {0} is not placed")]
    UnplacedAgent(AgentId),
    #[error("agent {0} is not part of the game")]
    UnknownAgent(AgentId),
    #[error("stubborn agent {agent} must stay on node {expected}, found on {found}")]
    StubbornMoved {
        agent: AgentId,
        expected: NodeId,
        found: NodeId,
    },
    #[error("node {0} does not exist")]
    InvalidNode(NodeId),
    #[error("class state has {found} nodes, topology has {expected}")]
    StateSizeMismatch { expected: usize, found: usize },
    #[error("class state does not match the game's agents: {0}")]
    StateMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgentKind {
    Strategic,
    Stubborn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Agent {
    pub id: AgentId,
    pub type_id: TypeId,
    pub kind: AgentKind,
}

impl Agent {
    pub fn strategic(id: AgentId, type_id: TypeId) -> Self {
        Agent {
            id,
            type_id,
            kind: AgentKind::Strategic,
        }
    }

    pub fn stubborn(id: AgentId, type_id: TypeId) -> Self {
        Agent {
            id,
            type_id,
            kind: AgentKind::Stubborn,
        }
    }

    pub fn is_strategic(&self) -> bool {
        self.kind == AgentKind::Strategic
    }
}

/// What a node holds, ignoring which agent of a type sits there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Occupant {
    Empty,
    Stubborn(TypeId),
    Strategic(TypeId),
}

impl Occupant {
    pub fn type_id(self) -> Option<TypeId> {
        match self {
            Occupant::Empty => None,
            Occupant::Stubborn(t) | Occupant::Strategic(t) => Some(t),
        }
    }

    pub fn is_empty(self) -> bool {
        self == Occupant::Empty
    }

    fn encode(self) -> u8 {
        match self {
            Occupant::Empty => 0,
            Occupant::Strategic(t) => t as u8,
            Occupant::Stubborn(t) => 0x80 | t as u8,
        }
    }

    fn decode(code: u8) -> Self {
        match code {
            0 => Occupant::Empty,
            c if c & 0x80 != 0 => Occupant::Stubborn((c & 0x7f) as TypeId),
            c => Occupant::Strategic(c as TypeId),
        }
    }
}

impl fmt::Display for Occupant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Occupant::Empty => write!(f, "."),
            Occupant::Strategic(t) => write!(f, "{t}"),
            Occupant::Stubborn(t) => write!(f, "s{t}"),
        }
    }
}

/// Node-indexed occupant classes. Utilities, welfare and equilibrium status are
/// functions of this map alone, so it is the key for hashing and enumeration.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassState(Box<[u8]>);

impl ClassState {
    pub fn from_occupants(occupants: impl IntoIterator<Item = Occupant>) -> Self {
        ClassState(occupants.into_iter().map(Occupant::encode).collect())
    }

    pub fn node_count(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, node: NodeId) -> Occupant {
        Occupant::decode(self.0[node])
    }

    pub fn type_at(&self, node: NodeId) -> Option<TypeId> {
        match self.0[node] {
            0 => None,
            c => Some((c & 0x7f) as TypeId),
        }
    }

    pub fn is_empty_at(&self, node: NodeId) -> bool {
        self.0[node] == 0
    }

    pub fn is_strategic_at(&self, node: NodeId) -> bool {
        let c = self.0[node];
        c != 0 && c & 0x80 == 0
    }

    pub fn occupants(&self) -> impl Iterator<Item = Occupant> + '_ {
        self.0.iter().map(|&c| Occupant::decode(c))
    }

    pub fn empty_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(v, _)| v)
    }

    /// State after the occupant of `from` jumps to the empty node `to`.
    pub fn with_jump(&self, from: NodeId, to: NodeId) -> ClassState {
        debug_assert!(self.is_strategic_at(from) && self.is_empty_at(to));
        let mut cells = self.0.clone();
        cells[to] = cells[from];
        cells[from] = 0;
        ClassState(cells)
    }

    pub(crate) fn from_codes(codes: Box<[u8]>) -> Self {
        ClassState(codes)
    }

    pub(crate) fn codes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for ClassState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, o) in self.occupants().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, "]")
    }
}

/// An instance: topology, type partition, and the fixed nodes of stubborn agents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GameFile", into = "GameFile")]
pub struct GameInstance {
    topology: Topology,
    num_types: usize,
    /// Sorted by agent id.
    agents: Vec<Agent>,
    stubborn_placement: BTreeMap<AgentId, NodeId>,
}

impl GameInstance {
    pub fn new(
        topology: Topology,
        num_types: usize,
        mut agents: Vec<Agent>,
        stubborn_placement: BTreeMap<AgentId, NodeId>,
    ) -> Result<Self, GameError> {
        if num_types < 2 {
            return Err(GameError::TooFewTypes(num_types));
        }
        if num_types > MAX_TYPES {
            return Err(GameError::TooManyTypes(num_types));
        }
        if agents.len() < 2 {
            return Err(GameError::TooFewAgents(agents.len()));
        }
        if topology.node_count() <= agents.len() {
            return Err(GameError::NotEnoughNodes {
                nodes: topology.node_count(),
                agents: agents.len(),
            });
        }
        agents.sort_by_key(|a| a.id);
        if let Some(w) = agents.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(GameError::DuplicateAgent(w[0].id));
        }
        for agent in &agents {
            if agent.type_id == 0 || agent.type_id > num_types {
                return Err(GameError::TypeOutOfRange {
                    agent: agent.id,
                    type_id: agent.type_id,
                    k: num_types,
                });
            }
        }
        let mut used: BTreeMap<NodeId, AgentId> = BTreeMap::new();
        for agent in &agents {
            let fixed = stubborn_placement.get(&agent.id).copied();
            match (agent.kind, fixed) {
                (AgentKind::Stubborn, None) => return Err(GameError::StubbornWithoutNode(agent.id)),
                (AgentKind::Strategic, Some(_)) => {
                    return Err(GameError::StrategicWithNode(agent.id))
                }
                (AgentKind::Stubborn, Some(node)) => {
                    if !topology.contains(node) {
                        return Err(GameError::NodeOutOfRange {
                            agent: agent.id,
                            node,
                        });
                    }
                    if let Some(&first) = used.get(&node) {
                        return Err(GameError::SharedNode {
                            node,
                            first,
                            second: agent.id,
                        });
                    }
                    used.insert(node, agent.id);
                }
                (AgentKind::Strategic, None) => {}
            }
        }
        if let Some(&id) = stubborn_placement
            .keys()
            .find(|&&id| agents.binary_search_by_key(&id, |a| a.id).is_err())
        {
            return Err(GameError::UnknownAgent(id));
        }
        Ok(GameInstance {
            topology,
            num_types,
            agents,
            stubborn_placement,
        })
    }

    /// All agents strategic; `type_sizes[i]` agents of type `i + 1`, ids assigned
    /// consecutively from 0.
    pub fn all_strategic(topology: Topology, type_sizes: &[usize]) -> Result<Self, GameError> {
        let mut agents = Vec::new();
        for (i, &size) in type_sizes.iter().enumerate() {
            for _ in 0..size {
                agents.push(Agent::strategic(agents.len(), i + 1));
            }
        }
        GameInstance::new(topology, type_sizes.len(), agents, BTreeMap::new())
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn num_types(&self) -> usize {
        self.num_types
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agent(&self, id: AgentId) -> Option<&Agent> {
        self.agents
            .binary_search_by_key(&id, |a| a.id)
            .ok()
            .map(|i| &self.agents[i])
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn strategic_agents(&self) -> impl Iterator<Item = &Agent> + '_ {
        self.agents.iter().filter(|a| a.is_strategic())
    }

    pub fn stubborn_agents(&self) -> impl Iterator<Item = &Agent> + '_ {
        self.agents.iter().filter(|a| !a.is_strategic())
    }

    pub fn has_stubborn(&self) -> bool {
        !self.stubborn_placement.is_empty()
    }

    pub fn stubborn_placement(&self) -> &BTreeMap<AgentId, NodeId> {
        &self.stubborn_placement
    }

    /// Strategic agent count per type; entry `i` is type `i + 1`.
    pub fn strategic_type_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_types];
        for a in self.strategic_agents() {
            counts[a.type_id - 1] += 1;
        }
        counts
    }

    /// Agent count per type (strategic and stubborn); entry `i` is type `i + 1`.
    pub fn type_sizes(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_types];
        for a in &self.agents {
            counts[a.type_id - 1] += 1;
        }
        counts
    }

    /// Nodes not reserved for a stubborn agent.
    pub fn free_nodes(&self) -> Vec<NodeId> {
        let fixed: BTreeSet<NodeId> = self.stubborn_placement.values().copied().collect();
        self.topology
            .nodes()
            .filter(|v| !fixed.contains(v))
            .collect()
    }

    /// The same game where the listed strategic agents become stubborn, fixed at
    /// their nodes in `at`.
    pub fn with_stubborn_subset(
        &self,
        subset: &[AgentId],
        at: &Assignment,
    ) -> Result<GameInstance, GameError> {
        let mut agents = self.agents.clone();
        let mut placement = self.stubborn_placement.clone();
        for &id in subset {
            let agent = agents
                .iter_mut()
                .find(|a| a.id == id)
                .ok_or(GameError::UnknownAgent(id))?;
            if agent.kind == AgentKind::Strategic {
                agent.kind = AgentKind::Stubborn;
                let node = at.node_of(id).ok_or(GameError::UnplacedAgent(id))?;
                placement.insert(id, node);
            }
        }
        GameInstance::new(self.topology.clone(), self.num_types, agents, placement)
    }

    /// The class state with only stubborn agents placed.
    pub fn stubborn_state(&self) -> ClassState {
        let mut cells = vec![Occupant::Empty; self.topology.node_count()];
        for (&id, &node) in &self.stubborn_placement {
            let t = self.agent(id).expect("validated").type_id;
            cells[node] = Occupant::Stubborn(t);
        }
        ClassState::from_occupants(cells)
    }
}

/// Serialized form of a game instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameFile {
    pub nodes: usize,
    pub edges: Vec<[NodeId; 2]>,
    pub k: usize,
    pub agents: Vec<AgentEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentEntry {
    pub id: AgentId,
    #[serde(rename = "type")]
    pub type_id: TypeId,
    pub kind: AgentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node: Option<NodeId>,
}

impl TryFrom<GameFile> for GameInstance {
    type Error = GameError;

    fn try_from(file: GameFile) -> Result<Self, Self::Error> {
        let topology = Topology::new(file.nodes, file.edges.iter().map(|&[u, v]| (u, v)))?;
        let mut agents = Vec::with_capacity(file.agents.len());
        let mut placement = BTreeMap::new();
        for entry in &file.agents {
            agents.push(Agent {
                id: entry.id,
                type_id: entry.type_id,
                kind: entry.kind,
            });
            match (entry.kind, entry.node) {
                (AgentKind::Stubborn, Some(node)) => {
                    placement.insert(entry.id, node);
                }
                (AgentKind::Stubborn, None) => {
                    return Err(GameError::StubbornWithoutNode(entry.id))
                }
                (AgentKind::Strategic, Some(_)) => {
                    return Err(GameError::StrategicWithNode(entry.id))
                }
                (AgentKind::Strategic, None) => {}
            }
        }
        GameInstance::new(topology, file.k, agents, placement)
    }
}

impl From<GameInstance> for GameFile {
    fn from(game: GameInstance) -> Self {
        GameFile {
            nodes: game.topology.node_count(),
            edges: game.topology.edges().iter().map(|&(u, v)| [u, v]).collect(),
            k: game.num_types,
            agents: game
                .agents
                .iter()
                .map(|a| AgentEntry {
                    id: a.id,
                    type_id: a.type_id,
                    kind: a.kind,
                    node: game.stubborn_placement.get(&a.id).copied(),
                })
                .collect(),
        }
    }
}

/// Injective placement of every agent, respecting the stubborn nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    placement: BTreeMap<AgentId, NodeId>,
}

impl Assignment {
    pub fn new(game: &GameInstance, placement: BTreeMap<AgentId, NodeId>) -> Result<Self, GameError> {
        let assignment = Assignment { placement };
        assignment.validate(game)?;
        Ok(assignment)
    }

    /// Wraps a placement without checking it against a game.
    pub fn from_placement_unchecked(placement: BTreeMap<AgentId, NodeId>) -> Self {
        Assignment { placement }
    }

    pub fn validate(&self, game: &GameInstance) -> Result<(), GameError> {
        let mut used: BTreeMap<NodeId, AgentId> = BTreeMap::new();
        for (&id, &node) in &self.placement {
            if game.agent(id).is_none() {
                return Err(GameError::UnknownAgent(id));
            }
            if !game.topology().contains(node) {
                return Err(GameError::NodeOutOfRange { agent: id, node });
            }
            if let Some(&first) = used.get(&node) {
                return Err(GameError::SharedNode {
                    node,
                    first,
                    second: id,
                });
            }
            used.insert(node, id);
        }
        for agent in game.agents() {
            let node = *self
                .placement
                .get(&agent.id)
                .ok_or(GameError::UnplacedAgent(agent.id))?;
            if let Some(&expected) = game.stubborn_placement().get(&agent.id) {
                if expected != node {
                    return Err(GameError::StubbornMoved {
                        agent: agent.id,
                        expected,
                        found: node,
                    });
                }
            }
        }
        Ok(())
    }

    /// Canonical assignment for a class state: within each type, strategic agents
    /// in ascending id order go to the matching nodes in ascending node order.
    pub fn from_class_state(game: &GameInstance, state: &ClassState) -> Result<Self, GameError> {
        let topology = game.topology();
        if state.node_count() != topology.node_count() {
            return Err(GameError::StateSizeMismatch {
                expected: topology.node_count(),
                found: state.node_count(),
            });
        }
        let mut placement: BTreeMap<AgentId, NodeId> = game.stubborn_placement().clone();
        for (&id, &node) in game.stubborn_placement() {
            let t = game.agent(id).expect("validated").type_id;
            if state.get(node) != Occupant::Stubborn(t) {
                return Err(GameError::StateMismatch(format!(
                    "node {node} should hold stubborn type {t}"
                )));
            }
        }
        let mut by_type: Vec<Vec<AgentId>> = vec![Vec::new(); game.num_types()];
        for a in game.strategic_agents() {
            by_type[a.type_id - 1].push(a.id);
        }
        let mut cursor = vec![0usize; game.num_types()];
        for v in topology.nodes() {
            match state.get(v) {
                Occupant::Strategic(t) => {
                    if t == 0 || t > game.num_types() {
                        return Err(GameError::StateMismatch(format!("type {t} out of range")));
                    }
                    let slot = cursor[t - 1];
                    let id = *by_type[t - 1].get(slot).ok_or_else(|| {
                        GameError::StateMismatch(format!("too many strategic type-{t} nodes"))
                    })?;
                    cursor[t - 1] += 1;
                    placement.insert(id, v);
                }
                Occupant::Stubborn(_) if !game.stubborn_placement().values().any(|&n| n == v) => {
                    return Err(GameError::StateMismatch(format!(
                        "node {v} is stubborn but no stubborn agent lives there"
                    )));
                }
                _ => {}
            }
        }
        if cursor.iter().zip(&by_type).any(|(&c, ids)| c != ids.len()) {
            return Err(GameError::StateMismatch(
                "strategic type counts differ from the game".into(),
            ));
        }
        Ok(Assignment { placement })
    }

    pub fn placement(&self) -> &BTreeMap<AgentId, NodeId> {
        &self.placement
    }

    pub fn node_of(&self, agent: AgentId) -> Option<NodeId> {
        self.placement.get(&agent).copied()
    }

    /// Node-indexed occupant ids.
    pub fn occupants(&self, node_count: usize) -> Vec<Option<AgentId>> {
        let mut occ = vec![None; node_count];
        for (&id, &node) in &self.placement {
            occ[node] = Some(id);
        }
        occ
    }

    pub fn class_state(&self, game: &GameInstance) -> ClassState {
        let mut cells = vec![Occupant::Empty; game.topology().node_count()];
        for (&id, &node) in &self.placement {
            let agent = game.agent(id).expect("assignment validated against game");
            cells[node] = match agent.kind {
                AgentKind::Strategic => Occupant::Strategic(agent.type_id),
                AgentKind::Stubborn => Occupant::Stubborn(agent.type_id),
            };
        }
        ClassState::from_occupants(cells)
    }

    pub(crate) fn relocate(&mut self, agent: AgentId, to: NodeId) {
        self.placement.insert(agent, to);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Topology {
        Topology::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn rejects_invalid_instances() {
        assert_eq!(
            GameInstance::all_strategic(path(3), &[1, 1, 1]),
            Err(GameError::NotEnoughNodes { nodes: 3, agents: 3 })
        );
        assert_eq!(
            GameInstance::all_strategic(path(3), &[1]),
            Err(GameError::TooFewTypes(1))
        );
        let agents = vec![Agent::strategic(0, 1), Agent::stubborn(1, 2)];
        assert_eq!(
            GameInstance::new(path(4), 2, agents.clone(), BTreeMap::new()),
            Err(GameError::StubbornWithoutNode(1))
        );
        let agents = vec![Agent::strategic(0, 1), Agent::strategic(0, 2)];
        assert_eq!(
            GameInstance::new(path(4), 2, agents, BTreeMap::new()),
            Err(GameError::DuplicateAgent(0))
        );
        let agents = vec![Agent::strategic(0, 1), Agent::strategic(1, 3)];
        assert!(matches!(
            GameInstance::new(path(4), 2, agents, BTreeMap::new()),
            Err(GameError::TypeOutOfRange { .. })
        ));
    }

    #[test]
    fn empty_types_are_allowed() {
        let game = GameInstance::all_strategic(path(4), &[2, 0, 1]).unwrap();
        assert_eq!(game.type_sizes(), vec![2, 0, 1]);
    }

    #[test]
    fn assignment_validation() {
        let agents = vec![Agent::strategic(0, 1), Agent::stubborn(1, 2)];
        let game = GameInstance::new(path(4), 2, agents, BTreeMap::from([(1, 3)])).unwrap();
        assert!(Assignment::new(&game, BTreeMap::from([(0, 0), (1, 3)])).is_ok());
        assert!(matches!(
            Assignment::new(&game, BTreeMap::from([(0, 0), (1, 2)])),
            Err(GameError::StubbornMoved { .. })
        ));
        assert!(matches!(
            Assignment::new(&game, BTreeMap::from([(0, 3), (1, 3)])),
            Err(GameError::SharedNode { .. })
        ));
        assert_eq!(
            Assignment::new(&game, BTreeMap::from([(1, 3)])),
            Err(GameError::UnplacedAgent(0))
        );
    }

    #[test]
    fn class_state_round_trip() {
        let agents = vec![
            Agent::strategic(4, 1),
            Agent::strategic(2, 1),
            Agent::strategic(7, 2),
            Agent::stubborn(9, 2),
        ];
        let game = GameInstance::new(path(6), 2, agents, BTreeMap::from([(9, 0)])).unwrap();
        let a = Assignment::new(&game, BTreeMap::from([(4, 1), (2, 5), (7, 3), (9, 0)])).unwrap();
        let state = a.class_state(&game);
        assert_eq!(format!("{state:?}"), "[s2 1 . 2 . 1]");
        let canonical = Assignment::from_class_state(&game, &state).unwrap();
        assert_eq!(canonical.node_of(2), Some(1));
        assert_eq!(canonical.node_of(4), Some(5));
        assert_eq!(canonical.class_state(&game), state);
    }

    #[test]
    fn game_file_round_trip() {
        let agents = vec![Agent::strategic(0, 1), Agent::stubborn(1, 2)];
        let game = GameInstance::new(path(3), 2, agents, BTreeMap::from([(1, 2)])).unwrap();
        let json = serde_json::to_string(&game).unwrap();
        assert_eq!(
            json,
            r#"{"nodes":3,"edges":[[0,1],[1,2]],"k":2,"agents":[{"id":0,"type":1,"kind":"strategic"},{"id":1,"type":2,"kind":"stubborn","node":2}]}"#
        );
        let back: GameInstance = serde_json::from_str(&json).unwrap();
        assert_eq!(back, game);
        let bad = r#"{"nodes":3,"edges":[[0,1]],"k":2,"agents":[{"id":0,"type":1,"kind":"strategic","node":1},{"id":1,"type":2,"kind":"strategic"}]}"#;
        assert!(serde_json::from_str::<GameInstance>(bad).is_err());
    }

    #[test]
    fn assignment_file_format() {
        let a = Assignment::from_placement_unchecked(BTreeMap::from([(0, 2), (10, 1)]));
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"placement":{"0":2,"10":1}}"#);
        assert_eq!(serde_json::from_str::<Assignment>(&json).unwrap(), a);
    }
}
