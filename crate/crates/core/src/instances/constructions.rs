//! Lower-bound instances for the price of anarchy on lines and stars.

use std::collections::BTreeMap;

use super::families::{gen_line, gen_star};
use super::InstanceError;
use crate::game::{AgentId, Assignment, GameInstance, TypeId};
use crate::topology::NodeId;

/// Places agents along `pattern` (one entry per node, `None` for empty),
/// taking the lowest unused agent id of the requested type each time.
fn place(game: &GameInstance, pattern: &[Option<TypeId>]) -> Result<Assignment, InstanceError> {
    let mut pools: BTreeMap<TypeId, std::vec::IntoIter<AgentId>> = BTreeMap::new();
    for t in 1..=game.num_types() {
        let ids: Vec<AgentId> = game.agents().iter().filter(|a| a.type_id == t).map(|a| a.id).collect();
        pools.insert(t, ids.into_iter());
    }
    let mut placement = BTreeMap::new();
    for (node, t) in pattern.iter().enumerate() {
        if let Some(t) = t {
            let id = pools
                .get_mut(t)
                .and_then(Iterator::next)
                .expect("pattern matches the type sizes");
            placement.insert(id, node as NodeId);
        }
    }
    Ok(Assignment::new(game, placement)?)
}

/// The symmetric two-type line of `n + 1` nodes with its low-welfare
/// equilibrium, of welfare `(n + 4) / 2`.
///
/// The pattern ends `r, _, b, r` and is preceded by pairs alternating
/// between `b, b` and `r, r`, the pair next to that tail being `b, b`. The
/// first node takes whichever type keeps the counts balanced, so it is red
/// when the number of pairs is odd and blue otherwise.
pub fn gen_poa_line_equilibrium(n: usize) -> Result<(GameInstance, Assignment), InstanceError> {
    if n < 8 || n % 2 == 1 {
        return Err(InstanceError::InvalidParameter(format!(
            "the line pattern needs an even n >= 8, got {n}"
        )));
    }
    const R: Option<TypeId> = Some(1);
    const B: Option<TypeId> = Some(2);
    let pairs = (n - 4) / 2;
    let mut pattern = vec![if pairs % 2 == 1 { R } else { B }];
    for i in 0..pairs {
        // the last pair (i = pairs - 1) is blue
        let blue = (pairs - 1 - i).is_multiple_of(2);
        let t = if blue { B } else { R };
        pattern.extend([t, t]);
    }
    pattern.extend([R, None, B, R]);
    let game = GameInstance::all_strategic(gen_line(n + 1)?, &[n / 2, n / 2])?;
    let assignment = place(&game, &pattern)?;
    Ok((game, assignment))
}

/// The alternating assignment `r, b, r, b, ...` on the same line, which is
/// optimal with welfare `n`.
pub fn poa_line_optimum(game: &GameInstance) -> Result<Assignment, InstanceError> {
    let n = game.agent_count();
    let pattern: Vec<Option<TypeId>> = (0..n).map(|i| Some(1 + i % 2)).collect();
    place(game, &pattern)
}

/// The `k`-type line of `n + 1` nodes: `n / k` repetitions of types
/// `1..k-1`, then all agents of type `k`, then one empty node. Its welfare
/// is `(k - 1) n / k + 1/2`.
pub fn gen_poa_line_ktypes(n: usize, k: usize) -> Result<(GameInstance, Assignment), InstanceError> {
    if k < 3 || !n.is_multiple_of(k) || n / k < 2 {
        return Err(InstanceError::InvalidParameter(format!(
            "need k >= 3 dividing n with n / k >= 2, got n = {n}, k = {k}"
        )));
    }
    let block = n / k;
    let mut pattern = Vec::with_capacity(n + 1);
    for _ in 0..block {
        pattern.extend((1..k).map(Some));
    }
    pattern.extend(std::iter::repeat_n(Some(k), block));
    pattern.push(None);
    let game = GameInstance::all_strategic(gen_line(n + 1)?, &vec![block; k])?;
    let assignment = place(&game, &pattern)?;
    Ok((game, assignment))
}

/// Star with `n + 1` nodes; type 1 has `n - k + 1` agents and types
/// `2..=k` one agent each.
pub fn gen_star_asymmetric(n: usize, k: usize) -> Result<GameInstance, InstanceError> {
    if k < 2 || k > n {
        return Err(InstanceError::InvalidParameter(format!(
            "need 2 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let mut sizes = vec![1; k];
    sizes[0] = n - k + 1;
    Ok(GameInstance::all_strategic(gen_star(n)?, &sizes)?)
}

/// A type-2 agent on the center and everyone else on leaves: welfare `n`.
pub fn star_blue_center(game: &GameInstance) -> Result<Assignment, InstanceError> {
    let n = game.agent_count();
    let blue = game
        .agents()
        .iter()
        .find(|a| a.type_id == 2)
        .ok_or_else(|| InstanceError::InvalidParameter("no type-2 agent".into()))?;
    let mut placement = BTreeMap::from([(blue.id, 0)]);
    let mut leaf = 1;
    for a in game.agents() {
        if a.id != blue.id {
            placement.insert(a.id, leaf);
            leaf += 1;
        }
    }
    debug_assert_eq!(leaf, n);
    Ok(Assignment::new(game, placement)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use crate::utility::social_welfare;

    #[test]
    fn line_patterns_have_stated_welfare() {
        for n in [8, 10, 12, 14] {
            let (game, a) = gen_poa_line_equilibrium(n).unwrap();
            assert_eq!(
                social_welfare(&game, &a).unwrap(),
                Rational::new(n as i128 + 4, 2)
            );
            let opt = poa_line_optimum(&game).unwrap();
            assert_eq!(social_welfare(&game, &opt).unwrap(), Rational::from_integer(n as i128));
        }
        assert!(gen_poa_line_equilibrium(9).is_err());
        assert!(gen_poa_line_equilibrium(6).is_err());
    }

    #[test]
    fn ktype_blocks() {
        let (game, a) = gen_poa_line_ktypes(6, 3).unwrap();
        assert_eq!(social_welfare(&game, &a).unwrap(), Rational::new(9, 2));
        let (game, a) = gen_poa_line_ktypes(8, 4).unwrap();
        assert_eq!(social_welfare(&game, &a).unwrap(), Rational::new(13, 2));
        assert!(gen_poa_line_ktypes(7, 3).is_err());
    }

    #[test]
    fn star_blue_center_is_n() {
        let game = gen_star_asymmetric(5, 2).unwrap();
        let a = star_blue_center(&game).unwrap();
        assert_eq!(social_welfare(&game, &a).unwrap(), Rational::from_integer(5));
    }
}
