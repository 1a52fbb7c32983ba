use serde::{Deserialize, Serialize};

use super::DynamicsError;
use crate::game::{Assignment, ClassState, GameInstance};
use crate::rational::Rational;
use crate::topology::{NodeId, Topology};

/// Weight given to edges with an unoccupied endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialConfig {
    m: Rational,
}

impl PotentialConfig {
    pub fn new(m: Rational) -> Result<Self, DynamicsError> {
        if m.is_positive() && m < Rational::ONE {
            Ok(PotentialConfig { m })
        } else {
            Err(DynamicsError::InvalidPotentialParameter(m))
        }
    }

    pub fn m(&self) -> Rational {
        self.m
    }
}

impl Default for PotentialConfig {
    fn default() -> Self {
        PotentialConfig {
            m: Rational::new(1, 4),
        }
    }
}

/// 1 for two occupants of the same type, `m` when either endpoint is empty
/// (both empty included), 0 otherwise.
pub fn edge_weight(state: &ClassState, u: NodeId, v: NodeId, m: Rational) -> Rational {
    match (state.type_at(u), state.type_at(v)) {
        (Some(a), Some(b)) if a == b => Rational::ONE,
        (Some(_), Some(_)) => Rational::ZERO,
        _ => m,
    }
}

pub fn potential_of_state(topology: &Topology, state: &ClassState, m: Rational) -> Rational {
    topology
        .edges()
        .iter()
        .map(|&(u, v)| edge_weight(state, u, v, m))
        .sum()
}

pub fn potential(game: &GameInstance, assignment: &Assignment, config: &PotentialConfig) -> Rational {
    potential_of_state(game.topology(), &assignment.class_state(game), config.m)
}

/// Potential change of the jump `from -> to`, from the edges it touches.
pub fn jump_potential_delta(
    topology: &Topology,
    state: &ClassState,
    from: NodeId,
    to: NodeId,
    m: Rational,
) -> Rational {
    let after = state.with_jump(from, to);
    let mut delta = Rational::ZERO;
    for &w in topology.neighbors(from) {
        delta += edge_weight(&after, from, w, m) - edge_weight(state, from, w, m);
    }
    for &w in topology.neighbors(to) {
        if w == from {
            continue;
        }
        delta += edge_weight(&after, to, w, m) - edge_weight(state, to, w, m);
    }
    delta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Occupant::{Empty, Strategic};

    #[test]
    fn definition_cases() {
        let t = Topology::new(3, [(0, 1), (1, 2)]).unwrap();
        let s = ClassState::from_occupants([Strategic(1), Strategic(2), Empty]);
        assert_eq!(
            potential_of_state(&t, &s, Rational::new(1, 4)),
            Rational::new(1, 4)
        );
        let k4 = Topology::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let same = ClassState::from_occupants([Strategic(1); 4]);
        assert_eq!(
            potential_of_state(&k4, &same, Rational::new(1, 4)),
            Rational::from_integer(6)
        );
    }

    #[test]
    fn both_empty_edge_weighs_m() {
        let t = Topology::new(2, [(0, 1)]).unwrap();
        let s = ClassState::from_occupants([Empty, Empty]);
        assert_eq!(potential_of_state(&t, &s, Rational::new(1, 3)), Rational::new(1, 3));
    }

    #[test]
    fn local_delta_matches_recomputation() {
        let t = Topology::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)]).unwrap();
        let s = ClassState::from_occupants([Strategic(1), Strategic(1), Empty, Strategic(2), Empty]);
        let m = Rational::new(1, 4);
        for (from, to) in [(0, 2), (1, 2), (1, 4), (3, 2), (0, 4)] {
            let after = s.with_jump(from, to);
            assert_eq!(
                jump_potential_delta(&t, &s, from, to, m),
                potential_of_state(&t, &after, m) - potential_of_state(&t, &s, m)
            );
        }
    }

    #[test]
    fn parameter_range() {
        assert!(PotentialConfig::new(Rational::ZERO).is_err());
        assert!(PotentialConfig::new(Rational::ONE).is_err());
        assert!(PotentialConfig::new(Rational::new(3, 4)).is_ok());
        assert_eq!(PotentialConfig::default().m(), Rational::new(1, 4));
    }
}
