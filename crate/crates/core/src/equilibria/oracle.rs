use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::space::{Evaluator, StateSpace};
use crate::game::{Assignment, ClassState, GameInstance};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("state space has {states} class states, over the budget of {budget}")]
    BudgetExceeded { states: u128, budget: u128 },
}

/// A price of anarchy or stability. Infinite when the relevant equilibrium
/// welfare is 0 while the optimum is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PriceRatio {
    Finite(Rational),
    Infinite,
}

impl PriceRatio {
    fn of(opt: Rational, eq: Rational) -> Self {
        if opt.is_zero() {
            PriceRatio::Finite(Rational::ONE)
        } else if eq.is_zero() {
            PriceRatio::Infinite
        } else {
            PriceRatio::Finite(opt / eq)
        }
    }

    pub fn finite(self) -> Option<Rational> {
        match self {
            PriceRatio::Finite(r) => Some(r),
            PriceRatio::Infinite => None,
        }
    }
}

impl fmt::Display for PriceRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PriceRatio::Finite(r) => write!(f, "{r}"),
            PriceRatio::Infinite => f.write_str("infinite"),
        }
    }
}

impl FromStr for PriceRatio {
    type Err = crate::rational::ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "infinite" {
            Ok(PriceRatio::Infinite)
        } else {
            s.parse().map(PriceRatio::Finite)
        }
    }
}

impl Serialize for PriceRatio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PriceRatio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Result of exhaustive search over all class states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub total_states_examined: u64,
    pub equilibrium_count: u64,
    pub opt_welfare: Rational,
    pub min_eq_welfare: Option<Rational>,
    pub max_eq_welfare: Option<Rational>,
    pub poa: Option<PriceRatio>,
    pub pos: Option<PriceRatio>,
    /// An equilibrium of minimum welfare.
    pub example_equilibrium: Option<Assignment>,
    /// An equilibrium of maximum welfare.
    pub best_equilibrium: Option<Assignment>,
    pub example_optimum: Assignment,
}

fn check_budget(space: &StateSpace, budget: u128) -> Result<(), OracleError> {
    let states = space.size();
    if states > budget {
        Err(OracleError::BudgetExceeded { states, budget })
    } else {
        Ok(())
    }
}

/// Number of class states `brute_force` would examine (saturating).
pub fn class_state_count(game: &GameInstance) -> u128 {
    StateSpace::new(game).size()
}

/// Enumerates every class state, keeping the first one (in enumeration
/// order) attaining each extreme.
pub fn brute_force(game: &GameInstance, budget: u128) -> Result<OracleReport, OracleError> {
    let space = StateSpace::new(game);
    check_budget(&space, budget)?;
    let mut eval = Evaluator::new(game.topology(), game.num_types());
    if eval.scale().is_some() {
        Ok(search(game, &space, &mut eval, |e, c| e.scaled_welfare(c).expect("scale fits")))
    } else {
        Ok(search(game, &space, &mut eval, |e, c| e.welfare(c)))
    }
}

struct Best<W> {
    value: W,
    codes: Vec<u8>,
}

fn keep<W: Ord + Copy>(slot: &mut Option<Best<W>>, value: W, codes: &[u8], better: fn(&W, &W) -> bool) {
    match slot {
        Some(b) if !better(&value, &b.value) => {}
        _ => {
            *slot = Some(Best {
                value,
                codes: codes.to_vec(),
            })
        }
    }
}

fn search<W: Ord + Copy>(
    game: &GameInstance,
    space: &StateSpace,
    eval: &mut Evaluator<'_>,
    welfare: impl Fn(&Evaluator<'_>, &[u8]) -> W,
) -> OracleReport {
    let mut examined = 0u64;
    let mut eq_count = 0u64;
    let mut opt: Option<Best<W>> = None;
    let mut worst_eq: Option<Best<W>> = None;
    let mut best_eq: Option<Best<W>> = None;
    space.for_each(|codes| {
        examined += 1;
        let w = welfare(eval, codes);
        keep(&mut opt, w, codes, |a, b| a > b);
        if eval.is_equilibrium(codes) {
            eq_count += 1;
            keep(&mut worst_eq, w, codes, |a, b| a < b);
            keep(&mut best_eq, w, codes, |a, b| a > b);
        }
        true
    });
    let exact = |codes: &[u8]| eval.welfare(codes);
    let to_assignment = |codes: &[u8]| {
        let state = ClassState::from_codes(codes.to_vec().into_boxed_slice());
        Assignment::from_class_state(game, &state).expect("enumerated state is consistent")
    };
    let opt = opt.expect("at least one state");
    let opt_welfare = exact(&opt.codes);
    let min_eq = worst_eq.as_ref().map(|b| exact(&b.codes));
    let max_eq = best_eq.as_ref().map(|b| exact(&b.codes));
    OracleReport {
        total_states_examined: examined,
        equilibrium_count: eq_count,
        opt_welfare,
        min_eq_welfare: min_eq,
        max_eq_welfare: max_eq,
        poa: min_eq.map(|w| PriceRatio::of(opt_welfare, w)),
        pos: max_eq.map(|w| PriceRatio::of(opt_welfare, w)),
        example_equilibrium: worst_eq.map(|b| to_assignment(&b.codes)),
        best_equilibrium: best_eq.map(|b| to_assignment(&b.codes)),
        example_optimum: to_assignment(&opt.codes),
    }
}

/// All equilibrium class states of the game, in enumeration order.
pub fn enumerate_equilibria(game: &GameInstance, budget: u128) -> Result<Vec<ClassState>, OracleError> {
    let space = StateSpace::new(game);
    check_budget(&space, budget)?;
    let mut eval = Evaluator::new(game.topology(), game.num_types());
    let mut found = Vec::new();
    space.for_each(|codes| {
        if eval.is_equilibrium(codes) {
            found.push(ClassState::from_codes(codes.to_vec().into_boxed_slice()));
        }
        true
    });
    Ok(found)
}
