//! Improving-response dynamics, the edge-weight potential, spider move
//! classification and cycle detection.

mod ird;
mod moves;
mod potential;
mod spider;

use crate::game::{AgentId, GameError};
use crate::rational::Rational;
use crate::topology::NodeId;

pub use ird::{
    run_ird, IrdOptions, MoveRecord, Policy, RunOutcome, RunStatus, TerminalRecord,
};
pub use moves::{apply_move, improving_jumps, improving_moves, Jump, Move};
pub use potential::{edge_weight, jump_potential_delta, potential, potential_of_state, PotentialConfig};
pub use spider::{classify_spider_move, is_spider, spider_move_delta_bound, SpiderMove};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("agent {0} is stubborn and never moves")]
    StubbornAgent(AgentId),
    #[error("target node {0} is occupied")]
    OccupiedTarget(NodeId),
    #[error("agent {agent} is not on node {from}")]
    AgentNotAtSource { agent: AgentId, from: NodeId },
    #[error("max_steps must be positive")]
    NonPositiveStepLimit,
    #[error("potential parameter m = {0} must lie strictly between 0 and 1")]
    InvalidPotentialParameter(Rational),
    #[error("spider bounds require m < 1/2, got {0}")]
    SpiderParameterTooLarge(Rational),
    #[error("topology is disconnected")]
    Disconnected,
    #[error("topology is not a spider")]
    NotASpider,
    #[error("spider bounds need exactly one empty node, found {0}")]
    EmptyNodeCount(usize),
    #[error("move {from} -> {to} with utilities {before} -> {after} fits no spider table row")]
    UnclassifiedMove {
        from: NodeId,
        to: NodeId,
        before: Rational,
        after: Rational,
    },
}
