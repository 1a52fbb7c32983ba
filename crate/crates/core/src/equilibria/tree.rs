//! Constructive equilibria on trees with strategic agents only.
//!
//! The agents are first packed into a subtree with exactly one spare node
//! (the root) using a level-parity fill. In the full tree the extra empty
//! nodes may tempt red agents, so a preprocessing step and a sequence of
//! moves to "available" nodes repair the assignment.

use std::collections::{BTreeMap, BinaryHeap, VecDeque};

use super::check::{is_equilibrium, DeviationWitness, Stability};
use crate::game::{AgentId, Assignment, GameInstance, TypeId};
use crate::rational::Rational;
use crate::topology::NodeId;
use crate::utility::utility_in_state;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("topology is not a tree")]
    NotATree,
    #[error("the tree constructor requires strategic agents only")]
    StubbornPresent,
    #[error("{agents} agents need at least {} nodes, the tree has {nodes}", agents + 1)]
    TooManyAgents { agents: usize, nodes: usize },
    #[error("constructed assignment is not an equilibrium: {0:?}")]
    InternalVerificationFailed(DeviationWitness),
}

struct Layout<'g> {
    game: &'g GameInstance,
    /// Agent on each node.
    at: Vec<Option<AgentId>>,
    in_subtree: Vec<bool>,
    parent: Vec<Option<NodeId>>,
    level: Vec<usize>,
    red: TypeId,
}

impl Layout<'_> {
    fn type_at(&self, v: NodeId) -> Option<TypeId> {
        self.at[v].map(|a| self.game.agent(a).expect("known agent").type_id)
    }

    fn is_red(&self, v: NodeId) -> bool {
        self.type_at(v) == Some(self.red)
    }

    /// Subtree children of `v`, ascending by id.
    fn children(&self, v: NodeId) -> Vec<NodeId> {
        self.game
            .topology()
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.in_subtree[w] && self.parent[w] == Some(v))
            .collect()
    }

    fn is_mixed(&self, v: NodeId) -> bool {
        if !self.is_red(v) {
            return false;
        }
        let kids = self.children(v);
        let red = kids.iter().filter(|&&w| self.is_red(w)).count();
        let non_red = kids.iter().filter(|&&w| self.at[w].is_some() && !self.is_red(w)).count();
        red > 0 && non_red > 0
    }

    fn has_occupied_child(&self, v: NodeId) -> bool {
        self.children(v).iter().any(|&w| self.at[w].is_some())
    }

    fn state(&self) -> crate::game::ClassState {
        crate::game::ClassState::from_occupants(self.at.iter().map(|a| match a {
            None => crate::game::Occupant::Empty,
            Some(id) => crate::game::Occupant::Strategic(self.game.agent(*id).expect("known").type_id),
        }))
    }

    fn utility(&self, v: NodeId) -> Rational {
        let t = self.type_at(v).expect("occupied");
        utility_in_state(self.game.topology(), &self.state(), v, t, None)
    }

    fn swap(&mut self, u: NodeId, w: NodeId) {
        self.at.swap(u, w);
    }

    fn mixed_agents(&self, order: &[NodeId]) -> Vec<NodeId> {
        order.iter().copied().filter(|&v| self.is_mixed(v)).collect()
    }

    /// Swaps between the red children of `a` that have children and the
    /// non-red leaf children of `a`, so that afterwards either every red
    /// child of `a` has utility 0 or every non-red child has a child.
    fn preprocess(&mut self, a: NodeId, b: Option<NodeId>) {
        let kids = self.children(a);
        let b_child = b.filter(|bb| kids.contains(bb));
        let mut s1: Vec<NodeId> = kids
            .iter()
            .copied()
            .filter(|&w| self.is_red(w) && self.has_occupied_child(w))
            .collect();
        let s2: Vec<NodeId> = kids
            .iter()
            .copied()
            .filter(|&w| self.at[w].is_some() && !self.is_red(w) && !self.has_occupied_child(w))
            .collect();
        if s2.is_empty() {
            if let Some(bb) = b_child {
                if let Some(&w) = kids.iter().find(|&&w| self.at[w].is_some() && !self.is_red(w)) {
                    self.swap(bb, w);
                }
            }
            return;
        }
        if let Some(bb) = b_child {
            if let Some(pos) = s1.iter().position(|&w| w == bb) {
                s1.remove(pos);
                s1.insert(0, bb);
            }
        }
        for (&u, &w) in s1.iter().zip(&s2) {
            self.swap(u, w);
        }
    }

    /// Empty, with an occupied neighbor, and no red neighbor.
    fn is_available(&self, e: NodeId) -> bool {
        if self.at[e].is_some() {
            return false;
        }
        let nbrs = self.game.topology().neighbors(e);
        nbrs.iter().any(|&w| self.at[w].is_some()) && !nbrs.iter().any(|&w| self.is_red(w))
    }
}

/// Builds an equilibrium assignment on a tree whose agents are all strategic.
pub fn construct_tree_equilibrium(game: &GameInstance) -> Result<Assignment, TreeError> {
    let topology = game.topology();
    if !topology.is_tree() {
        return Err(TreeError::NotATree);
    }
    if game.has_stubborn() {
        return Err(TreeError::StubbornPresent);
    }
    let agents = game.agent_count();
    let nodes = topology.node_count();
    if nodes < agents + 1 {
        return Err(TreeError::TooManyAgents { agents, nodes });
    }

    let root = topology
        .nodes()
        .find(|&u| topology.degree(u) == 1)
        .expect("a tree with at least two nodes has a leaf");
    let depth: Vec<usize> = topology
        .distances_from(root)
        .into_iter()
        .map(|d| d.expect("connected"))
        .collect();

    // Prune the deepest leaves (largest id first among equals) until the
    // subtree has one node more than there are agents.
    let mut in_subtree = vec![true; nodes];
    let mut degree: Vec<usize> = topology.nodes().map(|u| topology.degree(u)).collect();
    let mut leaves: BinaryHeap<(usize, NodeId)> = topology
        .nodes()
        .filter(|&u| u != root && degree[u] == 1)
        .map(|u| (depth[u], u))
        .collect();
    let mut alive = nodes;
    while alive > agents + 1 {
        let (_, leaf) = leaves.pop().expect("a tree larger than its root has leaves");
        in_subtree[leaf] = false;
        alive -= 1;
        for &w in topology.neighbors(leaf) {
            if in_subtree[w] {
                degree[w] -= 1;
                if w != root && degree[w] == 1 {
                    leaves.push((depth[w], w));
                }
            }
        }
    }

    // Breadth-first order with children ascending by id: this is the
    // left-to-right order within each level.
    let mut parent = vec![None; nodes];
    let mut order = Vec::with_capacity(alive);
    let mut queue = VecDeque::from([root]);
    let mut seen = vec![false; nodes];
    seen[root] = true;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in topology.neighbors(u) {
            if in_subtree[w] && !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                queue.push_back(w);
            }
        }
    }
    let max_level = order.iter().map(|&u| depth[u]).max().unwrap_or(0);

    // Types by descending size (ties by id), agents by id within a type.
    let mut by_type: BTreeMap<TypeId, Vec<AgentId>> = BTreeMap::new();
    for a in game.agents() {
        by_type.entry(a.type_id).or_default().push(a.id);
    }
    let mut types: Vec<(TypeId, Vec<AgentId>)> = by_type.into_iter().collect();
    types.sort_by(|x, y| y.1.len().cmp(&x.1.len()).then(x.0.cmp(&y.0)));
    let mut queue_agents = types.into_iter().flat_map(|(_, ids)| ids);

    let odd_levels = (1..=max_level).rev().filter(|l| l % 2 == 1);
    let even_levels = (2..=max_level).filter(|l| l % 2 == 0);
    let mut fill_order = Vec::with_capacity(agents);
    for l in odd_levels.chain(even_levels) {
        fill_order.extend(order.iter().copied().filter(|&u| depth[u] == l));
    }
    let mut at = vec![None; nodes];
    for u in fill_order {
        at[u] = Some(queue_agents.next().expect("one agent per non-root subtree node"));
    }
    let v = topology.neighbors(root)[0];
    let red = game.agent(at[v].expect("v is filled")).expect("known").type_id;

    let mut layout = Layout {
        game,
        at,
        in_subtree,
        parent,
        level: depth,
        red,
    };

    if nodes > agents + 1 {
        repair(&mut layout, &order);
    }

    let placement = layout
        .at
        .iter()
        .enumerate()
        .filter_map(|(node, a)| a.map(|id| (id, node)))
        .collect();
    let assignment = Assignment::new(game, placement).expect("one node per agent");
    match is_equilibrium(game, &assignment).expect("valid assignment") {
        Stability::Equilibrium => Ok(assignment),
        Stability::Deviation(w) => Err(TreeError::InternalVerificationFailed(w)),
    }
}

fn repair(layout: &mut Layout<'_>, order: &[NodeId]) {
    let mixed = layout.mixed_agents(order);
    if let Some(&a) = mixed.first() {
        let b = mixed.get(1).copied();
        layout.preprocess(a, b);
        if let Some(b) = b {
            if layout.is_mixed(b) && layout.parent[b] != Some(a) {
                layout.preprocess(b, None);
            }
        }
    }

    // Red agents with utility 0 by level then id, then the mixed agents
    // whose red children do not all have utility 0.
    let mut by_level: Vec<NodeId> = order
        .iter()
        .copied()
        .filter(|&u| layout.is_red(u) && layout.utility(u).is_zero())
        .collect();
    by_level.sort_by_key(|&u| (layout.level[u], u));
    let mut candidates: Vec<AgentId> = by_level.iter().map(|&u| layout.at[u].expect("occupied")).collect();
    for u in layout.mixed_agents(order) {
        let all_zero = layout
            .children(u)
            .into_iter()
            .filter(|&w| layout.is_red(w))
            .all(|w| layout.utility(w).is_zero());
        let id = layout.at[u].expect("occupied");
        if !all_zero && !candidates.contains(&id) {
            candidates.push(id);
        }
    }

    let nodes = layout.at.len();
    for id in candidates {
        let Some(target) = (0..nodes).find(|&e| layout.is_available(e)) else {
            break;
        };
        let from = layout.at.iter().position(|&a| a == Some(id)).expect("placed");
        let state = layout.state();
        let topology = layout.game.topology();
        let t = layout.red;
        let before = utility_in_state(topology, &state, from, t, None);
        let after = utility_in_state(topology, &state, target, t, Some(from));
        if after > before {
            layout.at[target] = Some(id);
            layout.at[from] = None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Topology;
    use crate::utility::utility;

    #[test]
    fn three_node_path() {
        let t = Topology::new(3, [(0, 1), (1, 2)]).unwrap();
        let game = GameInstance::all_strategic(t, &[1, 1]).unwrap();
        let a = construct_tree_equilibrium(&game).unwrap();
        assert_eq!(a.node_of(0), Some(1));
        assert_eq!(a.node_of(1), Some(2));
        assert_eq!(utility(&game, &a, 0).unwrap(), Rational::ONE);
        assert_eq!(utility(&game, &a, 1).unwrap(), Rational::ONE);
    }

    #[test]
    fn errors() {
        let cycle = Topology::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let game = GameInstance::all_strategic(cycle, &[1, 1]).unwrap();
        assert_eq!(construct_tree_equilibrium(&game), Err(TreeError::NotATree));
    }
}
