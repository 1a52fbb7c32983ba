//! The seven-node instance separating the optimum from the best equilibrium.
//!
//! Only part of its topology is pinned down by the known facts, so it is
//! recovered by search: node `a` hangs off `b`, `d1` and `d2` have degree 2,
//! `e1` and `e2` are adjacent, swapping `d1` with `d2` or `e1` with `e2` is
//! an automorphism (the case analysis treats each pair as interchangeable),
//! and with two red and four blue agents the
//! optimum is 65/12 and the best equilibrium 62/12, the optimum being
//! broken by the agent on `b` jumping to the empty `e1` (2/3 to 3/4). The
//! first match in search order is stored in `fixtures/pos_fixture.json`.

use serde::{Deserialize, Serialize};

use super::InstanceError;
use crate::equilibria::{brute_force, is_equilibrium, Stability};
use crate::game::{Assignment, ClassState, GameInstance, Occupant};
use crate::rational::Rational;
use crate::topology::{NodeId, Topology};
use crate::utility::welfare_of_state;

pub const POS_NODE_NAMES: [&str; 7] = ["a", "b", "c", "d1", "d2", "e1", "e2"];
const A: NodeId = 0;
const B: NodeId = 1;
const D1: NodeId = 3;
const D2: NodeId = 4;
const E1: NodeId = 5;
const E2: NodeId = 6;

const PINNED: &str = include_str!("../../fixtures/pos_fixture.json");

/// The instance together with its optimum and best equilibrium.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosFixture {
    pub names: Vec<String>,
    pub game: GameInstance,
    pub optimum: Assignment,
    pub best_equilibrium: Assignment,
}

pub fn parse_pos_fixture(text: &str) -> Result<PosFixture, InstanceError> {
    let fixture: PosFixture =
        serde_json::from_str(text).map_err(|e| InstanceError::Fixture(e.to_string()))?;
    fixture
        .optimum
        .validate(&fixture.game)
        .and_then(|_| fixture.best_equilibrium.validate(&fixture.game))
        .map_err(|e| InstanceError::Fixture(e.to_string()))?;
    Ok(fixture)
}

/// The pinned fixture shipped with the crate.
pub fn pinned_pos_fixture() -> PosFixture {
    parse_pos_fixture(PINNED).expect("pinned fixture is valid")
}

pub fn load_pos_fixture() -> GameInstance {
    pinned_pos_fixture().game
}

/// Every topology consistent with the known facts, in search order.
pub fn search_pos_topologies() -> Vec<PosFixture> {
    let free_pairs: Vec<(NodeId, NodeId)> = (B..7)
        .flat_map(|u| (u + 1..7).map(move |v| (u, v)))
        .filter(|&p| p != (E1, E2))
        .collect();
    let target_opt = Rational::new(65, 12);
    let target_eq = Rational::new(62, 12);
    let mut found = Vec::new();
    for mask in 0u32..1 << free_pairs.len() {
        let mut edges = vec![(A, B), (E1, E2)];
        edges.extend(
            free_pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p),
        );
        let topology = Topology::new(7, edges).expect("simple by construction");
        if topology.degree(D1) != 2 || topology.degree(D2) != 2 || !topology.is_connected() {
            continue;
        }
        if !swap_is_automorphism(&topology, D1, D2) || !swap_is_automorphism(&topology, E1, E2) {
            continue;
        }
        let game = GameInstance::all_strategic(topology, &[2, 4]).expect("valid sizes");
        let report = brute_force(&game, 1_000).expect("105 states");
        if report.opt_welfare != target_opt || report.max_eq_welfare != Some(target_eq) {
            continue;
        }
        let Some(optimum) = broken_optimum(&game, target_opt) else {
            continue;
        };
        found.push(PosFixture {
            names: POS_NODE_NAMES.iter().map(|s| s.to_string()).collect(),
            game,
            optimum,
            best_equilibrium: report.best_equilibrium.expect("equilibria exist"),
        });
    }
    found
}

fn swap_is_automorphism(topology: &Topology, u: NodeId, v: NodeId) -> bool {
    let image = |w: NodeId| {
        if w == u {
            v
        } else if w == v {
            u
        } else {
            w
        }
    };
    topology
        .edges()
        .iter()
        .all(|&(p, q)| topology.are_adjacent(image(p), image(q)))
}

/// An optimum with `e1` empty whose first deviation is `b`'s 2/3 to 3/4
/// jump into `e1`.
fn broken_optimum(game: &GameInstance, opt: Rational) -> Option<Assignment> {
    let others: Vec<NodeId> = (0..7).filter(|&v| v != E1).collect();
    for i in 0..others.len() {
        for j in i + 1..others.len() {
            let state = ClassState::from_occupants((0..7).map(|v| {
                if v == E1 {
                    Occupant::Empty
                } else if v == others[i] || v == others[j] {
                    Occupant::Strategic(1)
                } else {
                    Occupant::Strategic(2)
                }
            }));
            if welfare_of_state(game.topology(), &state) != opt {
                continue;
            }
            let assignment = Assignment::from_class_state(game, &state).ok()?;
            if let Stability::Deviation(w) = is_equilibrium(game, &assignment).ok()? {
                let at_b = assignment.node_of(w.agent) == Some(B);
                if at_b
                    && w.target == E1
                    && w.utility_current == Rational::new(2, 3)
                    && w.utility_at_target == Rational::new(3, 4)
                {
                    return Some(assignment);
                }
            }
        }
    }
    None
}

/// Node id of a fixture node name.
pub fn pos_node(name: &str) -> Option<NodeId> {
    POS_NODE_NAMES.iter().position(|&n| n == name)
}
