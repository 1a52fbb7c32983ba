use serde::{Deserialize, Serialize};

use crate::dynamics::improving_moves;
use crate::game::{AgentId, Assignment, GameError, GameInstance};
use crate::rational::Rational;
use crate::topology::NodeId;

/// An improving jump that rules out an equilibrium.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviationWitness {
    pub agent: AgentId,
    pub target: NodeId,
    pub utility_current: Rational,
    pub utility_at_target: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stability {
    Equilibrium,
    Deviation(DeviationWitness),
}

impl Stability {
    pub fn is_equilibrium(&self) -> bool {
        matches!(self, Stability::Equilibrium)
    }

    pub fn witness(&self) -> Option<&DeviationWitness> {
        match self {
            Stability::Equilibrium => None,
            Stability::Deviation(w) => Some(w),
        }
    }
}

/// Checks that no strategic agent has an improving jump. On failure the
/// witness is the first deviation in `(agent, target)` order.
pub fn is_equilibrium(game: &GameInstance, assignment: &Assignment) -> Result<Stability, GameError> {
    assignment.validate(game)?;
    let moves = improving_moves(game, assignment, None).map_err(|e| match e {
        crate::dynamics::DynamicsError::Game(g) => g,
        other => unreachable!("no agent filter was given: {other}"),
    })?;
    Ok(match moves.into_iter().next() {
        None => Stability::Equilibrium,
        Some(mv) => Stability::Deviation(DeviationWitness {
            agent: mv.agent,
            target: mv.to,
            utility_current: mv.utility_before,
            utility_at_target: mv.utility_after,
        }),
    })
}
