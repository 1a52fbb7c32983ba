use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::families::{gen_cycle, gen_line, gen_regular, gen_spider, gen_star, gen_tree};
use super::fixture::load_pos_fixture;
use super::InstanceError;
use crate::equilibria::build_gadget;
use crate::game::{Agent, Assignment, GameFile, GameInstance, TypeId};
use crate::topology::{NodeId, Topology};

/// Agents of one type: how many move and how many are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeProfile {
    #[serde(rename = "type")]
    pub type_id: TypeId,
    #[serde(default)]
    pub strategic: usize,
    #[serde(default)]
    pub stubborn: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Line { nodes: usize },
    Cycle { nodes: usize },
    Star { leaves: usize },
    Spider { legs: Vec<usize> },
    TreeRandom { nodes: usize, seed: u64 },
    Regular { nodes: usize, degree: usize, seed: u64 },
    Gadget { vertices: usize, edges: Vec<(NodeId, NodeId)>, s: usize },
    PosFixture,
    Custom { game: GameFile },
}

/// A JSON description of an instance: a topology family plus a type
/// profile. Stubborn agents are placed on a seeded random choice of nodes.
/// The gadget, fixture and custom families carry their own agents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub type_profile: Vec<TypeProfile>,
    #[serde(default)]
    pub placement_seed: u64,
}

impl InstanceSpec {
    pub fn build(&self) -> Result<GameInstance, InstanceError> {
        let topology = match &self.family {
            Family::Line { nodes } => gen_line(*nodes)?,
            Family::Cycle { nodes } => gen_cycle(*nodes)?,
            Family::Star { leaves } => gen_star(*leaves)?,
            Family::Spider { legs } => gen_spider(legs)?,
            Family::TreeRandom { nodes, seed } => gen_tree(*nodes, *seed)?,
            Family::Regular { nodes, degree, seed } => gen_regular(*nodes, *degree, *seed)?,
            Family::Gadget { vertices, edges, s } => {
                self.no_profile()?;
                return Ok(build_gadget(*vertices, edges, *s)?.game);
            }
            Family::PosFixture => {
                self.no_profile()?;
                return Ok(load_pos_fixture());
            }
            Family::Custom { game } => {
                self.no_profile()?;
                return Ok(GameInstance::try_from(game.clone())?);
            }
        };
        with_profile(topology, &self.type_profile, self.placement_seed)
    }

    fn no_profile(&self) -> Result<(), InstanceError> {
        if self.type_profile.is_empty() {
            Ok(())
        } else {
            Err(InstanceError::InvalidParameter(
                "this family defines its own agents; drop type_profile".into(),
            ))
        }
    }
}

/// Populates `topology` per `profile`: strategic agents get the lowest ids
/// (by type), stubborn agents follow and sit on seeded random nodes.
pub fn with_profile(
    topology: Topology,
    profile: &[TypeProfile],
    seed: u64,
) -> Result<GameInstance, InstanceError> {
    let k = profile.iter().map(|p| p.type_id).max().unwrap_or(0);
    if profile.iter().any(|p| p.type_id == 0) {
        return Err(InstanceError::InvalidParameter("type ids start at 1".into()));
    }
    let mut sorted: Vec<&TypeProfile> = profile.iter().collect();
    sorted.sort_by_key(|p| p.type_id);
    if sorted.windows(2).any(|w| w[0].type_id == w[1].type_id) {
        return Err(InstanceError::InvalidParameter("type listed twice".into()));
    }
    let mut agents = Vec::new();
    for p in &sorted {
        for _ in 0..p.strategic {
            agents.push(Agent::strategic(agents.len(), p.type_id));
        }
    }
    let stubborn_total: usize = sorted.iter().map(|p| p.stubborn).sum();
    if stubborn_total > topology.node_count() {
        return Err(InstanceError::InvalidParameter("more stubborn agents than nodes".into()));
    }
    let mut nodes: Vec<NodeId> = topology.nodes().collect();
    nodes.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut spots = nodes.into_iter();
    let mut placement = BTreeMap::new();
    for p in &sorted {
        for _ in 0..p.stubborn {
            let id = agents.len();
            agents.push(Agent::stubborn(id, p.type_id));
            placement.insert(id, spots.next().expect("checked above"));
        }
    }
    Ok(GameInstance::new(topology, k, agents, placement)?)
}

/// Strategic agents on a seeded random choice of the free nodes.
pub fn random_assignment(game: &GameInstance, seed: u64) -> Assignment {
    let mut free = game.free_nodes();
    free.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut placement = game.stubborn_placement().clone();
    for (a, node) in game.strategic_agents().zip(free) {
        placement.insert(a.id, node);
    }
    Assignment::new(game, placement).expect("free nodes outnumber strategic agents")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_json_round_trip() {
        let text = r#"{"family":"star","leaves":5,
            "type_profile":[{"type":1,"strategic":4},{"type":2,"strategic":1}]}"#;
        let spec: InstanceSpec = serde_json::from_str(text).unwrap();
        let game = spec.build().unwrap();
        assert_eq!(game.topology().node_count(), 6);
        assert_eq!(game.type_sizes(), vec![4, 1]);
        let again: InstanceSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn stubborn_placement_is_seeded() {
        let profile = vec![
            TypeProfile { type_id: 1, strategic: 2, stubborn: 1 },
            TypeProfile { type_id: 2, strategic: 2, stubborn: 2 },
        ];
        let a = with_profile(gen_line(10).unwrap(), &profile, 3).unwrap();
        let b = with_profile(gen_line(10).unwrap(), &profile, 3).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.stubborn_agents().count(), 3);
        let start = random_assignment(&a, 1);
        assert!(start.validate(&a).is_ok());
    }
}
