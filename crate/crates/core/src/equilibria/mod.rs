//! Equilibrium checking, exhaustive oracles, cycle search, the tree
//! constructor and the hardness gadget.

mod check;
mod gadget;
mod irc;
mod oracle;
mod space;
mod tree;

pub use check::{is_equilibrium, DeviationWitness, Stability};
pub use gadget::{build_gadget, Gadget, GadgetError, BLUE, RED};
pub use irc::{find_irc, find_irc_from, IrcWitness};
pub use oracle::{
    brute_force, class_state_count, enumerate_equilibria, OracleError, OracleReport, PriceRatio,
};
pub use tree::{construct_tree_equilibrium, TreeError};
