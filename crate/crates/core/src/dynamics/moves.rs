use serde::{Deserialize, Serialize};

use super::DynamicsError;
use crate::game::{AgentId, Assignment, ClassState, GameError, GameInstance};
use crate::rational::Rational;
use crate::topology::{NodeId, Topology};
use crate::utility::utility_in_state;

/// A jump of one strategic agent to an empty node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub agent: AgentId,
    pub from: NodeId,
    pub to: NodeId,
    pub utility_before: Rational,
    pub utility_after: Rational,
}

impl Move {
    pub fn is_improving(&self) -> bool {
        self.utility_after > self.utility_before
    }
}

/// An improving jump between nodes of a class state (no agent identity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Jump {
    pub from: NodeId,
    pub to: NodeId,
    pub utility_before: Rational,
    pub utility_after: Rational,
}

/// Every improving jump of a strategic occupant, ordered by `(from, to)`.
///
/// The utility at the target is computed with the origin vacated.
pub fn improving_jumps(topology: &Topology, state: &ClassState) -> Vec<Jump> {
    let empties: Vec<NodeId> = state.empty_nodes().collect();
    let mut jumps = Vec::new();
    for from in topology.nodes() {
        if !state.is_strategic_at(from) {
            continue;
        }
        let t = state.type_at(from).expect("occupied");
        jumps.extend(jumps_of(topology, state, from, t, &empties));
    }
    jumps
}

fn jumps_of<'a>(
    topology: &'a Topology,
    state: &'a ClassState,
    from: NodeId,
    t: usize,
    empties: &'a [NodeId],
) -> impl Iterator<Item = Jump> + 'a {
    let before = utility_in_state(topology, state, from, t, None);
    empties.iter().filter_map(move |&to| {
        let after = utility_in_state(topology, state, to, t, Some(from));
        (after > before).then_some(Jump {
            from,
            to,
            utility_before: before,
            utility_after: after,
        })
    })
}

/// Improving moves of every strategic agent, or only of `agent` when given,
/// ordered by `(agent id, target node)`.
pub fn improving_moves(
    game: &GameInstance,
    assignment: &Assignment,
    agent: Option<AgentId>,
) -> Result<Vec<Move>, DynamicsError> {
    let state = assignment.class_state(game);
    if let Some(id) = agent {
        let a = game.agent(id).ok_or(GameError::UnknownAgent(id))?;
        if !a.is_strategic() {
            return Err(DynamicsError::StubbornAgent(id));
        }
        assignment.node_of(id).ok_or(GameError::UnplacedAgent(id))?;
    }
    Ok(moves_in_state(game, assignment, &state, agent))
}

pub(crate) fn moves_in_state(
    game: &GameInstance,
    assignment: &Assignment,
    state: &ClassState,
    only: Option<AgentId>,
) -> Vec<Move> {
    let topology = game.topology();
    let empties: Vec<NodeId> = state.empty_nodes().collect();
    let mut moves = Vec::new();
    for a in game.strategic_agents() {
        if only.is_some_and(|id| id != a.id) {
            continue;
        }
        let Some(from) = assignment.node_of(a.id) else {
            continue;
        };
        moves.extend(
            jumps_of(topology, state, from, a.type_id, &empties).map(|j| Move {
                agent: a.id,
                from,
                to: j.to,
                utility_before: j.utility_before,
                utility_after: j.utility_after,
            }),
        );
    }
    moves
}

/// The assignment after `mv`; everything else stays put.
pub fn apply_move(
    game: &GameInstance,
    assignment: &Assignment,
    mv: &Move,
) -> Result<Assignment, DynamicsError> {
    let agent = game
        .agent(mv.agent)
        .ok_or(GameError::UnknownAgent(mv.agent))?;
    if !agent.is_strategic() {
        return Err(DynamicsError::StubbornAgent(mv.agent));
    }
    if assignment.node_of(mv.agent) != Some(mv.from) {
        return Err(DynamicsError::AgentNotAtSource {
            agent: mv.agent,
            from: mv.from,
        });
    }
    if !game.topology().contains(mv.to) {
        return Err(GameError::InvalidNode(mv.to).into());
    }
    if assignment.placement().values().any(|&n| n == mv.to) {
        return Err(DynamicsError::OccupiedTarget(mv.to));
    }
    let mut next = assignment.clone();
    next.relocate(mv.agent, mv.to);
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::utility::utility;
    use std::collections::BTreeMap;

    fn path_game(n: usize, sizes: &[usize]) -> GameInstance {
        let t = Topology::new(n, (1..n).map(|i| (i - 1, i))).unwrap();
        GameInstance::all_strategic(t, sizes).unwrap()
    }

    #[test]
    fn happy_path_has_no_moves() {
        // r - v - w with v red, w blue and r empty
        let game = path_game(3, &[1, 1]);
        let a = Assignment::new(&game, BTreeMap::from([(0, 1), (1, 2)])).unwrap();
        assert!(improving_moves(&game, &a, None).unwrap().is_empty());
    }

    #[test]
    fn adjacent_target_counts_vacated_origin_as_empty() {
        // 1 1 . 2 : agent 1 at node 1 moving to node 2 sees only node 3 (type 2)
        let game = path_game(4, &[2, 1]);
        let a = Assignment::new(&game, BTreeMap::from([(0, 0), (1, 1), (2, 3)])).unwrap();
        let moves = improving_moves(&game, &a, Some(1)).unwrap();
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].to, 2);
        assert_eq!(moves[0].utility_before, Rational::ZERO);
        assert_eq!(moves[0].utility_after, Rational::ONE);
        // moves are sorted by (agent, target)
        let all = improving_moves(&game, &a, None).unwrap();
        let keys: Vec<_> = all.iter().map(|m| (m.agent, m.to)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn apply_and_reverse() {
        let game = path_game(4, &[2, 1]);
        let a = Assignment::new(&game, BTreeMap::from([(0, 0), (1, 1), (2, 3)])).unwrap();
        let mv = improving_moves(&game, &a, Some(1)).unwrap().remove(0);
        let b = apply_move(&game, &a, &mv).unwrap();
        assert_eq!(utility(&game, &b, 1).unwrap(), mv.utility_after);
        let back = Move {
            agent: 1,
            from: mv.to,
            to: mv.from,
            utility_before: mv.utility_after,
            utility_after: mv.utility_before,
        };
        assert_eq!(apply_move(&game, &b, &back).unwrap(), a);
    }

    #[test]
    fn apply_errors() {
        let game = path_game(4, &[2, 1]);
        let a = Assignment::new(&game, BTreeMap::from([(0, 0), (1, 1), (2, 3)])).unwrap();
        let mv = Move {
            agent: 0,
            from: 0,
            to: 1,
            utility_before: Rational::ZERO,
            utility_after: Rational::ONE,
        };
        assert_eq!(apply_move(&game, &a, &mv), Err(DynamicsError::OccupiedTarget(1)));
        let wrong = Move { from: 2, to: 2, ..mv };
        assert!(matches!(
            apply_move(&game, &a, &wrong),
            Err(DynamicsError::AgentNotAtSource { .. })
        ));
    }
}
