use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::space::{Evaluator, StateSpace};
use super::OracleError;
use crate::dynamics::{apply_move, improving_moves, Move};
use crate::game::{Assignment, ClassState, GameInstance};
use crate::topology::NodeId;

/// An improving-response cycle: playing `moves` from `start` returns to the
/// class state of `start`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrcWitness {
    pub start: Assignment,
    pub moves: Vec<Move>,
}

impl IrcWitness {
    /// Replays the cycle with exact utilities. True when every move is an
    /// improving move of the current assignment and the final class state
    /// equals the starting one.
    pub fn verify(&self, game: &GameInstance) -> bool {
        if self.moves.is_empty() || self.start.validate(game).is_err() {
            return false;
        }
        let mut current = self.start.clone();
        for mv in &self.moves {
            let available = match improving_moves(game, &current, Some(mv.agent)) {
                Ok(list) => list,
                Err(_) => return false,
            };
            if !available.contains(mv) {
                return false;
            }
            current = match apply_move(game, &current, mv) {
                Ok(next) => next,
                Err(_) => return false,
            };
        }
        current.class_state(game) == self.start.class_state(game)
    }
}

const GRAY: u8 = 1;
const BLACK: u8 = 2;

struct Search<'g> {
    game: &'g GameInstance,
    eval: Evaluator<'g>,
    color: HashMap<Box<[u8]>, u8>,
    budget: u128,
}

struct Frame {
    codes: Box<[u8]>,
    jumps: Vec<(NodeId, NodeId)>,
    next: usize,
}

/// Class state where a cycle starts, and its jumps.
type FoundCycle = (Box<[u8]>, Vec<(NodeId, NodeId)>);

impl<'g> Search<'g> {
    fn new(game: &'g GameInstance, budget: u128) -> Self {
        Search {
            game,
            eval: Evaluator::new(game.topology(), game.num_types()),
            color: HashMap::new(),
            budget,
        }
    }

    fn discover(&mut self, codes: Box<[u8]>) -> Result<Frame, OracleError> {
        if self.color.len() as u128 >= self.budget {
            return Err(OracleError::BudgetExceeded {
                states: self.color.len() as u128 + 1,
                budget: self.budget,
            });
        }
        let mut jumps = Vec::new();
        self.eval.jumps(&codes, &mut jumps);
        self.color.insert(codes.clone(), GRAY);
        Ok(Frame {
            codes,
            jumps,
            next: 0,
        })
    }

    /// Depth-first search from `root`; returns the class states and jumps of
    /// the first cycle closed by a back edge.
    fn dfs(&mut self, root: Box<[u8]>) -> Result<Option<FoundCycle>, OracleError> {
        if self.color.contains_key(&root) {
            return Ok(None);
        }
        let mut stack = vec![self.discover(root)?];
        while let Some(top) = stack.last_mut() {
            if top.next == top.jumps.len() {
                let done = stack.pop().expect("nonempty");
                self.color.insert(done.codes, BLACK);
                continue;
            }
            let (from, to) = top.jumps[top.next];
            top.next += 1;
            let mut succ = top.codes.clone();
            succ.swap(from, to);
            match self.color.get(&succ) {
                Some(&GRAY) => {
                    let first = stack
                        .iter()
                        .position(|f| f.codes == succ)
                        .expect("gray states are on the stack");
                    let jumps = stack[first..]
                        .iter()
                        .map(|f| f.jumps[f.next - 1])
                        .collect();
                    return Ok(Some((succ, jumps)));
                }
                Some(_) => {}
                None => {
                    let frame = self.discover(succ)?;
                    stack.push(frame);
                }
            }
        }
        Ok(None)
    }

    fn witness(&self, start: Box<[u8]>, jumps: Vec<(NodeId, NodeId)>) -> IrcWitness {
        let state = ClassState::from_codes(start);
        let start = Assignment::from_class_state(self.game, &state).expect("reachable state is consistent");
        let mut current = start.clone();
        let mut moves = Vec::with_capacity(jumps.len());
        for (from, to) in jumps {
            let mv = improving_moves(self.game, &current, None)
                .expect("valid assignment")
                .into_iter()
                .find(|m| m.from == from && m.to == to)
                .expect("integer and exact evaluation agree");
            current = apply_move(self.game, &current, &mv).expect("move is legal");
            moves.push(mv);
        }
        IrcWitness { start, moves }
    }
}

/// Searches the improving-move graph over class states for a cycle, starting
/// a depth-first search from every state in enumeration order.
///
/// `Ok(None)` means the whole state space was explored and is acyclic.
/// `BudgetExceeded` means the search stopped after `budget` distinct states
/// and is inconclusive.
pub fn find_irc(game: &GameInstance, budget: u128) -> Result<Option<IrcWitness>, OracleError> {
    let mut search = Search::new(game, budget);
    let mut outcome = Ok(None);
    StateSpace::new(game).for_each(|codes| match search.dfs(codes.into()) {
        Ok(None) => true,
        other => {
            outcome = other;
            false
        }
    });
    outcome.map(|found| found.map(|(start, jumps)| search.witness(start, jumps)))
}

/// Like [`find_irc`] but explores only the states reachable from `start`.
pub fn find_irc_from(
    game: &GameInstance,
    start: &Assignment,
    budget: u128,
) -> Result<Option<IrcWitness>, OracleError> {
    let mut search = Search::new(game, budget);
    let root: Box<[u8]> = start.class_state(game).codes().into();
    let found = search.dfs(root)?;
    Ok(found.map(|(s, jumps)| search.witness(s, jumps)))
}
