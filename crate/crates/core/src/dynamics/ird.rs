use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::moves::moves_in_state;
use super::{apply_move, jump_potential_delta, potential_of_state, DynamicsError, Move, PotentialConfig};
use crate::game::{AgentId, Assignment, ClassState, GameInstance, TypeId};
use crate::rational::Rational;
use crate::topology::NodeId;
use crate::utility::welfare_of_state;

/// Which improving move to play when several exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum Policy {
    /// The first move in `(agent, target)` order.
    First,
    /// The move reaching the highest utility; ties go to the first.
    BestResponse,
    /// A uniformly random move from a seeded generator.
    Random { seed: u64 },
    /// Cycles through the listed `(from, to)` jumps, e.g. the moves of a
    /// known improving-response cycle. When the scheduled jump is not
    /// available the first move is played instead.
    Scripted { jumps: Vec<(NodeId, NodeId)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrdOptions {
    pub policy: Policy,
    pub max_steps: usize,
    pub detect_cycles: bool,
    pub potential: PotentialConfig,
}

impl Default for IrdOptions {
    fn default() -> Self {
        IrdOptions {
            policy: Policy::First,
            max_steps: 10_000,
            detect_cycles: true,
            potential: PotentialConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Converged,
    CycleDetected,
    StepLimit,
}

/// One played move, as written to a JSON-lines trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub step: usize,
    pub agent: AgentId,
    #[serde(rename = "type")]
    pub type_id: TypeId,
    pub from: NodeId,
    pub to: NodeId,
    pub u_before: Rational,
    pub u_after: Rational,
    pub phi_before: Rational,
    pub phi_after: Rational,
}

/// Last line of a trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalRecord {
    pub status: RunStatus,
    pub steps: usize,
    pub social_welfare: Rational,
    pub potential: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: RunStatus,
    pub final_assignment: Assignment,
    pub trace: Vec<MoveRecord>,
    /// Assignment at which the detected cycle begins; replaying
    /// `trace[cycle_start_step..]` from it returns to the same class state.
    pub cycle_start: Option<Assignment>,
    pub cycle_start_step: Option<usize>,
}

impl RunOutcome {
    pub fn steps(&self) -> usize {
        self.trace.len()
    }

    /// The moves forming the detected cycle.
    pub fn cycle(&self) -> Option<&[MoveRecord]> {
        self.cycle_start_step.map(|s| &self.trace[s..])
    }

    pub fn terminal_record(&self, game: &GameInstance, config: &PotentialConfig) -> TerminalRecord {
        let state = self.final_assignment.class_state(game);
        TerminalRecord {
            status: self.status,
            steps: self.steps(),
            social_welfare: welfare_of_state(game.topology(), &state),
            potential: potential_of_state(game.topology(), &state, config.m()),
        }
    }

    /// The trace as JSON lines: one record per move, then the terminal record.
    pub fn to_json_lines(&self, game: &GameInstance, config: &PotentialConfig) -> String {
        let mut out = String::new();
        for r in &self.trace {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        let terminal = self.terminal_record(game, config);
        out.push_str(&serde_json::to_string(&terminal).expect("record serializes"));
        out.push('\n');
        out
    }
}

fn choose(moves: &[Move], policy: &Policy, step: usize, rng: &mut Option<ChaCha8Rng>) -> usize {
    match policy {
        Policy::First => 0,
        Policy::BestResponse => {
            let mut best = 0;
            for (i, mv) in moves.iter().enumerate().skip(1) {
                if mv.utility_after > moves[best].utility_after {
                    best = i;
                }
            }
            best
        }
        Policy::Random { .. } => rng
            .as_mut()
            .expect("seeded for the random policy")
            .gen_range(0..moves.len()),
        Policy::Scripted { jumps } if !jumps.is_empty() => {
            let (from, to) = jumps[step % jumps.len()];
            moves
                .iter()
                .position(|m| m.from == from && m.to == to)
                .unwrap_or(0)
        }
        Policy::Scripted { .. } => 0,
    }
}

/// Runs improving-response dynamics from `start` until no agent can improve,
/// a class state repeats (when `detect_cycles` is set) or `max_steps` moves
/// have been played.
pub fn run_ird(
    game: &GameInstance,
    start: &Assignment,
    options: &IrdOptions,
) -> Result<RunOutcome, DynamicsError> {
    if options.max_steps == 0 {
        return Err(DynamicsError::NonPositiveStepLimit);
    }
    start.validate(game)?;
    let topology = game.topology();
    let m = options.potential.m();
    let mut rng = match options.policy {
        Policy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut current = start.clone();
    let mut state: ClassState = current.class_state(game);
    let mut phi = potential_of_state(topology, &state, m);
    let mut seen: HashMap<ClassState, usize> = HashMap::new();
    let mut trace = Vec::new();
    // the assignment at each step is only kept while cycle detection needs it
    let mut history: Vec<Assignment> = Vec::new();
    loop {
        if options.detect_cycles {
            if let Some(&first) = seen.get(&state) {
                return Ok(RunOutcome {
                    status: RunStatus::CycleDetected,
                    final_assignment: current,
                    trace,
                    cycle_start: Some(history[first].clone()),
                    cycle_start_step: Some(first),
                });
            }
            seen.insert(state.clone(), trace.len());
            history.push(current.clone());
        }
        let moves = moves_in_state(game, &current, &state, None);
        if moves.is_empty() {
            return Ok(finished(RunStatus::Converged, current, trace));
        }
        if trace.len() == options.max_steps {
            return Ok(finished(RunStatus::StepLimit, current, trace));
        }
        let mv = &moves[choose(&moves, &options.policy, trace.len(), &mut rng)];
        let delta = jump_potential_delta(topology, &state, mv.from, mv.to, m);
        let type_id = state.type_at(mv.from).expect("mover is placed");
        trace.push(MoveRecord {
            step: trace.len() + 1,
            agent: mv.agent,
            type_id,
            from: mv.from,
            to: mv.to,
            u_before: mv.utility_before,
            u_after: mv.utility_after,
            phi_before: phi,
            phi_after: phi + delta,
        });
        current = apply_move(game, &current, mv)?;
        state = state.with_jump(mv.from, mv.to);
        phi += delta;
    }
}

fn finished(status: RunStatus, final_assignment: Assignment, trace: Vec<MoveRecord>) -> RunOutcome {
    RunOutcome {
        status,
        final_assignment,
        trace,
        cycle_start: None,
        cycle_start_step: None,
    }
}

impl MoveRecord {
    pub fn delta_phi(&self) -> Rational {
        self.phi_after - self.phi_before
    }

    pub fn as_move(&self) -> Move {
        Move {
            agent: self.agent,
            from: self.from,
            to: self.to,
            utility_before: self.u_before,
            utility_after: self.u_after,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Topology;
    use crate::utility::social_welfare;
    use std::collections::BTreeMap;

    fn line_game() -> (GameInstance, Assignment) {
        let t = Topology::new(6, (1..6).map(|i| (i - 1, i))).unwrap();
        let game = GameInstance::all_strategic(t, &[2, 2]).unwrap();
        // 1 1 2 2 . .
        let a = Assignment::new(&game, BTreeMap::from([(0, 0), (1, 1), (2, 2), (3, 3)])).unwrap();
        (game, a)
    }

    #[test]
    fn converges_with_every_policy() {
        let (game, start) = line_game();
        for policy in [Policy::First, Policy::BestResponse, Policy::Random { seed: 7 }] {
            let options = IrdOptions {
                policy,
                ..IrdOptions::default()
            };
            let out = run_ird(&game, &start, &options).unwrap();
            assert_eq!(out.status, RunStatus::Converged);
            assert!(improving_moves_empty(&game, &out.final_assignment));
            for r in &out.trace {
                assert!(r.u_after > r.u_before);
            }
        }
    }

    fn improving_moves_empty(game: &GameInstance, a: &Assignment) -> bool {
        crate::dynamics::improving_moves(game, a, None).unwrap().is_empty()
    }

    #[test]
    fn random_policy_is_reproducible() {
        let (game, start) = line_game();
        let options = IrdOptions {
            policy: Policy::Random { seed: 42 },
            ..IrdOptions::default()
        };
        let a = run_ird(&game, &start, &options).unwrap();
        let b = run_ird(&game, &start, &options).unwrap();
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn step_limit_and_zero_limit() {
        let (game, start) = line_game();
        let options = IrdOptions {
            max_steps: 1,
            ..IrdOptions::default()
        };
        let out = run_ird(&game, &start, &options).unwrap();
        assert_eq!(out.status, RunStatus::StepLimit);
        assert_eq!(out.steps(), 1);
        let zero = IrdOptions {
            max_steps: 0,
            ..IrdOptions::default()
        };
        assert_eq!(run_ird(&game, &start, &zero), Err(DynamicsError::NonPositiveStepLimit));
    }

    #[test]
    fn json_lines_end_with_terminal_record() {
        let (game, start) = line_game();
        let options = IrdOptions::default();
        let out = run_ird(&game, &start, &options).unwrap();
        let text = out.to_json_lines(&game, &options.potential);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), out.steps() + 1);
        let last: TerminalRecord = serde_json::from_str(lines.last().unwrap()).unwrap();
        assert_eq!(last.status, RunStatus::Converged);
        assert_eq!(
            last.social_welfare,
            social_welfare(&game, &out.final_assignment).unwrap()
        );
        let first: MoveRecord = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(first.step, 1);
    }
}
