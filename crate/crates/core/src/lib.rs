//! Jump games on graphs where agents prefer neighbors of other types.
//!
//! Agents of `k` types sit on the nodes of a graph; strategic agents jump to
//! empty nodes whenever that raises the fraction of their occupied neighbors
//! that belong to a different type. The crate evaluates utilities and
//! welfare, runs improving-response dynamics, checks and constructs
//! equilibria, computes exact price-of-anarchy and price-of-stability ratios
//! by exhaustive search, and searches for improving-response cycles.

pub mod dynamics;
pub mod equilibria;
pub mod game;
pub mod instances;
pub mod rational;
pub mod topology;
pub mod utility;

pub use game::{
    Agent, AgentId, AgentKind, Assignment, ClassState, GameError, GameInstance, Occupant, TypeId,
    MAX_TYPES,
};
pub use rational::Rational;
pub use topology::{NodeId, Topology, TopologyError};
