//! Topology families, the lower-bound constructions and JSON instance specs.

mod constructions;
mod families;
mod fixture;
mod spec;

pub use constructions::{
    gen_poa_line_equilibrium, gen_poa_line_ktypes, gen_star_asymmetric, poa_line_optimum,
    star_blue_center,
};
pub use families::{gen_cycle, gen_line, gen_regular, gen_spider, gen_star, gen_tree};
pub use fixture::{
    load_pos_fixture, parse_pos_fixture, pinned_pos_fixture, pos_node, search_pos_topologies,
    PosFixture, POS_NODE_NAMES,
};
pub use spec::{random_assignment, with_profile, Family, InstanceSpec, TypeProfile};

use crate::equilibria::GadgetError;
use crate::game::GameError;
use crate::topology::TopologyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("{0}")]
    InvalidParameter(String),
    #[error("no connected {degree}-regular simple graph on {nodes} nodes was produced")]
    InfeasibleRegular { nodes: usize, degree: usize },
    #[error("a spider needs at least 3 legs, got {0}")]
    NotASpider(usize),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("fixture: {0}")]
    Fixture(String),
}
