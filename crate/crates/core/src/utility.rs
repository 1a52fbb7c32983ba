//! Neighborhood counts, agent utilities and social welfare.
//!
//! An agent's diversity utility is the fraction of its occupied neighbors whose
//! type differs from its own, and 0 when no neighbor is occupied. The
//! similarity utility (same-type fraction) is provided for contrast.

use std::collections::BTreeMap;

use crate::game::{AgentId, Assignment, ClassState, GameError, GameInstance, TypeId};
use crate::rational::Rational;
use crate::topology::{NodeId, Topology};

/// Occupied-neighbor counts of `node` per type. Types with no occupied
/// neighbor are omitted.
pub fn neighbor_type_counts(
    game: &GameInstance,
    assignment: &Assignment,
    node: NodeId,
) -> Result<BTreeMap<TypeId, usize>, GameError> {
    if !game.topology().contains(node) {
        return Err(GameError::InvalidNode(node));
    }
    let state = assignment.class_state(game);
    let mut counts = BTreeMap::new();
    for &w in game.topology().neighbors(node) {
        if let Some(t) = state.type_at(w) {
            *counts.entry(t).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

fn placed_agent(
    game: &GameInstance,
    assignment: &Assignment,
    agent: AgentId,
) -> Result<(NodeId, TypeId), GameError> {
    let a = game.agent(agent).ok_or(GameError::UnknownAgent(agent))?;
    let node = assignment
        .node_of(agent)
        .ok_or(GameError::UnplacedAgent(agent))?;
    Ok((node, a.type_id))
}

pub fn utility(
    game: &GameInstance,
    assignment: &Assignment,
    agent: AgentId,
) -> Result<Rational, GameError> {
    let (node, t) = placed_agent(game, assignment, agent)?;
    let state = assignment.class_state(game);
    Ok(utility_in_state(game.topology(), &state, node, t, None))
}

pub fn similarity_utility(
    game: &GameInstance,
    assignment: &Assignment,
    agent: AgentId,
) -> Result<Rational, GameError> {
    let (node, t) = placed_agent(game, assignment, agent)?;
    let state = assignment.class_state(game);
    let (different, occupied) = diversity_counts(game.topology(), &state, node, t, None);
    Ok(Rational::fraction(occupied - different, occupied))
}

/// Sum of the strategic agents' utilities.
pub fn social_welfare(game: &GameInstance, assignment: &Assignment) -> Result<Rational, GameError> {
    assignment.validate(game)?;
    Ok(welfare_of_state(game.topology(), &assignment.class_state(game)))
}

/// `(different-type, total)` occupied neighbors seen by a type-`t` agent at
/// `node`, with `vacated` (if any) treated as empty.
pub fn diversity_counts(
    topology: &Topology,
    state: &ClassState,
    node: NodeId,
    t: TypeId,
    vacated: Option<NodeId>,
) -> (usize, usize) {
    let mut different = 0;
    let mut occupied = 0;
    for &w in topology.neighbors(node) {
        if Some(w) == vacated {
            continue;
        }
        if let Some(tw) = state.type_at(w) {
            occupied += 1;
            if tw != t {
                different += 1;
            }
        }
    }
    (different, occupied)
}

/// Diversity utility of a type-`t` agent standing at `node`.
pub fn utility_in_state(
    topology: &Topology,
    state: &ClassState,
    node: NodeId,
    t: TypeId,
    vacated: Option<NodeId>,
) -> Rational {
    let (different, occupied) = diversity_counts(topology, state, node, t, vacated);
    Rational::fraction(different, occupied)
}

/// Welfare of a class state: utilities of strategic occupants only.
pub fn welfare_of_state(topology: &Topology, state: &ClassState) -> Rational {
    topology
        .nodes()
        .filter(|&v| state.is_strategic_at(v))
        .map(|v| {
            let t = state.type_at(v).expect("occupied");
            utility_in_state(topology, state, v, t, None)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Agent, Occupant};

    fn path3_game() -> GameInstance {
        let t = Topology::new(4, [(0, 1), (1, 2)]).unwrap();
        GameInstance::all_strategic(t, &[1, 1]).unwrap()
    }

    #[test]
    fn counts_skip_empty_neighbors() {
        let game = path3_game();
        let a = Assignment::new(&game, BTreeMap::from([(0, 0), (1, 2)])).unwrap();
        let counts = neighbor_type_counts(&game, &a, 1).unwrap();
        assert_eq!(counts, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(counts.values().sum::<usize>(), 2);
        // node 3 is isolated
        assert!(neighbor_type_counts(&game, &a, 3).unwrap().is_empty());
        assert_eq!(
            neighbor_type_counts(&game, &a, 9),
            Err(GameError::InvalidNode(9))
        );
    }

    #[test]
    fn no_occupied_neighbor_means_zero_in_both_modes() {
        let game = path3_game();
        // agent 0 on the end of the path, its only neighbor empty
        let a = Assignment::new(&game, BTreeMap::from([(0, 0), (1, 2)])).unwrap();
        assert_eq!(utility(&game, &a, 0).unwrap(), Rational::ZERO);
        assert_eq!(similarity_utility(&game, &a, 0).unwrap(), Rational::ZERO);
        assert_eq!(social_welfare(&game, &a).unwrap(), Rational::ZERO);
    }

    #[test]
    fn mixed_neighborhood() {
        let t = Topology::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let game = GameInstance::all_strategic(t, &[2, 1]).unwrap();
        let a = Assignment::new(&game, BTreeMap::from([(0, 1), (1, 0), (2, 2)])).unwrap();
        assert_eq!(utility(&game, &a, 0).unwrap(), Rational::new(1, 2));
        assert_eq!(similarity_utility(&game, &a, 0).unwrap(), Rational::new(1, 2));
        assert_eq!(utility(&game, &a, 2).unwrap(), Rational::ONE);
        assert_eq!(similarity_utility(&game, &a, 1).unwrap(), Rational::ONE);
        assert_eq!(utility(&game, &a, 7), Err(GameError::UnknownAgent(7)));
    }

    #[test]
    fn welfare_ignores_stubborn_agents() {
        let t = Topology::new(3, [(0, 1), (1, 2)]).unwrap();
        let agents = vec![Agent::strategic(0, 1), Agent::stubborn(1, 2)];
        let game = GameInstance::new(t, 2, agents, BTreeMap::from([(1, 1)])).unwrap();
        let a = Assignment::new(&game, BTreeMap::from([(0, 0), (1, 1)])).unwrap();
        assert_eq!(utility(&game, &a, 1).unwrap(), Rational::ONE);
        assert_eq!(social_welfare(&game, &a).unwrap(), Rational::ONE);
    }

    #[test]
    fn vacated_node_is_ignored() {
        let t = Topology::new(3, [(0, 1), (1, 2)]).unwrap();
        let state = ClassState::from_occupants([
            Occupant::Strategic(1),
            Occupant::Empty,
            Occupant::Strategic(2),
        ]);
        assert_eq!(diversity_counts(&t, &state, 1, 1, None), (1, 2));
        assert_eq!(diversity_counts(&t, &state, 1, 1, Some(0)), (1, 1));
    }
}
