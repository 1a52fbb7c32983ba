//! Move classification on spiders (trees with exactly one node of degree at
//! least 3) and the per-class bound on the potential change.

use super::DynamicsError;
use super::Move;
use crate::game::{Assignment, ClassState, GameInstance};
use crate::rational::Rational;
use crate::topology::{NodeId, Topology};

/// The center of `topology` if it is a spider, `None` for any other
/// connected graph.
pub fn is_spider(topology: &Topology) -> Result<Option<NodeId>, DynamicsError> {
    if !topology.is_connected() {
        return Err(DynamicsError::Disconnected);
    }
    if !topology.is_tree() {
        return Ok(None);
    }
    let mut hubs = topology.nodes().filter(|&v| topology.degree(v) >= 3);
    match (hubs.next(), hubs.next()) {
        (Some(c), None) => Ok(Some(c)),
        _ => Ok(None),
    }
}

/// Row of the spider move table a move belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpiderMove {
    /// Degree-2 node to degree-2 node.
    Degree2ToDegree2,
    /// Degree-2 node to leaf; `from_half` when the agent left utility 1/2.
    Degree2ToLeaf { from_half: bool },
    LeafToDegree2,
    LeafToLeaf,
    /// Non-center node to the center; `adjacent` when the origin is a
    /// neighbor of the center.
    Degree2ToCenter { adjacent: bool, from_half: bool },
    LeafToCenter { adjacent: bool },
    /// Center to a degree-2 node; `to_half` when the new utility is 1/2.
    CenterToDegree2 { to_half: bool },
    CenterToLeaf,
}

struct Context {
    center: NodeId,
    center_degree: usize,
}

fn check_preconditions(
    game: &GameInstance,
    state: &ClassState,
    m: Rational,
) -> Result<Context, DynamicsError> {
    let topology = game.topology();
    let center = is_spider(topology)?.ok_or(DynamicsError::NotASpider)?;
    let empties = state.empty_nodes().count();
    if empties != 1 {
        return Err(DynamicsError::EmptyNodeCount(empties));
    }
    if m >= Rational::new(1, 2) {
        return Err(DynamicsError::SpiderParameterTooLarge(m));
    }
    Ok(Context {
        center,
        center_degree: topology.degree(center),
    })
}

/// Places `mv` in the spider move table.
pub fn classify_spider_move(
    game: &GameInstance,
    before: &Assignment,
    mv: &Move,
    m: Rational,
) -> Result<SpiderMove, DynamicsError> {
    let state = before.class_state(game);
    let ctx = check_preconditions(game, &state, m)?;
    classify(game.topology(), &ctx, mv)
}

fn classify(topology: &Topology, ctx: &Context, mv: &Move) -> Result<SpiderMove, DynamicsError> {
    let zero = Rational::ZERO;
    let half = Rational::new(1, 2);
    let one = Rational::ONE;
    let (b, a) = (mv.utility_before, mv.utility_after);
    let unclassified = || DynamicsError::UnclassifiedMove {
        from: mv.from,
        to: mv.to,
        before: b,
        after: a,
    };
    let kind = |v: NodeId| {
        if v == ctx.center {
            0
        } else {
            topology.degree(v)
        }
    };
    let row = match (kind(mv.from), kind(mv.to)) {
        (2, 2) if (b == zero && (a == half || a == one)) || (b == half && a == one) => {
            SpiderMove::Degree2ToDegree2
        }
        (2, 1) if b == zero && a == one => SpiderMove::Degree2ToLeaf { from_half: false },
        (2, 1) if b == half && a == one => SpiderMove::Degree2ToLeaf { from_half: true },
        (1, 2) if b == zero && (a == half || a == one) => SpiderMove::LeafToDegree2,
        (1, 1) if b == zero && a == one => SpiderMove::LeafToLeaf,
        (2, 0) => {
            let adjacent = topology.are_adjacent(mv.from, ctx.center);
            if b == zero && a > zero {
                SpiderMove::Degree2ToCenter {
                    adjacent,
                    from_half: false,
                }
            } else if !adjacent && b == half && a > half {
                SpiderMove::Degree2ToCenter {
                    adjacent,
                    from_half: true,
                }
            } else {
                return Err(unclassified());
            }
        }
        (1, 0) if b == zero && a > zero => SpiderMove::LeafToCenter {
            adjacent: topology.are_adjacent(mv.from, ctx.center),
        },
        (0, 2) if b < half && a == half => SpiderMove::CenterToDegree2 { to_half: true },
        (0, 2) if b < one && a == one => SpiderMove::CenterToDegree2 { to_half: false },
        (0, 1) if b < one && a == one => SpiderMove::CenterToLeaf,
        _ => return Err(unclassified()),
    };
    Ok(row)
}

/// Upper bound on the potential change of an improving move on a spider
/// with a single empty node, read off the row the move falls in.
///
/// `n_T(c, C)` below is the number of the center's neighbors holding the
/// mover's type; it is taken after the move when the mover lands on the
/// center and before it when the mover leaves the center.
pub fn spider_move_delta_bound(
    game: &GameInstance,
    before: &Assignment,
    mv: &Move,
    m: Rational,
) -> Result<Rational, DynamicsError> {
    let state = before.class_state(game);
    let ctx = check_preconditions(game, &state, m)?;
    let topology = game.topology();
    let row = classify(topology, &ctx, mv)?;
    let t = state.type_at(mv.from).ok_or(DynamicsError::AgentNotAtSource {
        agent: mv.agent,
        from: mv.from,
    })?;
    let int = |k: i128| Rational::from_integer(k);
    let delta = int(ctx.center_degree as i128);
    let same_at_center = |s: &ClassState| {
        let n = topology
            .neighbors(ctx.center)
            .iter()
            .filter(|&&w| s.type_at(w) == Some(t))
            .count();
        int(n as i128)
    };
    let bound = match row {
        SpiderMove::Degree2ToDegree2 | SpiderMove::LeafToLeaf => int(-1),
        SpiderMove::Degree2ToLeaf { from_half: false } => m - int(2),
        SpiderMove::Degree2ToLeaf { from_half: true } => m - int(1),
        SpiderMove::LeafToDegree2 => -m,
        SpiderMove::Degree2ToCenter { adjacent, from_half } => {
            let n1 = same_at_center(&state.with_jump(mv.from, mv.to));
            let base = if adjacent || from_half { int(-1) } else { int(-2) };
            int(2) * m + base + n1 - m * delta
        }
        SpiderMove::LeafToCenter { adjacent } => {
            let n1 = same_at_center(&state.with_jump(mv.from, mv.to));
            let base = if adjacent { Rational::ZERO } else { int(-1) };
            m + base + n1 - m * delta
        }
        SpiderMove::CenterToDegree2 { to_half } => {
            let n0 = same_at_center(&state);
            let base = if to_half { int(1) } else { Rational::ZERO };
            base - int(2) * m + m * delta - n0
        }
        SpiderMove::CenterToLeaf => -m + m * delta - same_at_center(&state),
    };
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{improving_moves, jump_potential_delta};
    use std::collections::BTreeMap;

    /// Center 0 with legs 0-1-2, 0-3-4, 0-5.
    fn spider() -> Topology {
        Topology::new(6, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)]).unwrap()
    }

    #[test]
    fn recognizes_spiders() {
        assert_eq!(is_spider(&spider()).unwrap(), Some(0));
        let path = Topology::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(is_spider(&path).unwrap(), None);
        let two_hubs = Topology::new(
            8,
            [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6), (4, 7)],
        )
        .unwrap();
        assert_eq!(is_spider(&two_hubs).unwrap(), None);
        let split = Topology::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(is_spider(&split), Err(DynamicsError::Disconnected));
    }

    #[test]
    fn every_move_respects_its_bound() {
        let game = GameInstance::all_strategic(spider(), &[3, 2]).unwrap();
        let m = Rational::new(1, 4);
        // all placements with node `e` empty and 3 red / 2 blue elsewhere
        for e in 0..6 {
            let others: Vec<_> = (0..6).filter(|&v| v != e).collect();
            for mask in 0u32..32 {
                if mask.count_ones() != 3 {
                    continue;
                }
                let mut red = others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1);
                let mut blue = others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0);
                let mut placement = BTreeMap::new();
                for id in 0..3 {
                    placement.insert(id, *red.next().unwrap().1);
                }
                for id in 3..5 {
                    placement.insert(id, *blue.next().unwrap().1);
                }
                let a = Assignment::new(&game, placement).unwrap();
                let state = a.class_state(&game);
                for mv in improving_moves(&game, &a, None).unwrap() {
                    let bound = spider_move_delta_bound(&game, &a, &mv, m).unwrap();
                    let actual = jump_potential_delta(game.topology(), &state, mv.from, mv.to, m);
                    assert!(actual <= bound, "{mv:?}: {actual} > {bound}");
                    assert!(bound.is_negative() || bound.is_zero() || mv.from == 0 || mv.to == 0);
                }
            }
        }
    }

    #[test]
    fn preconditions() {
        let game = GameInstance::all_strategic(spider(), &[2, 2]).unwrap();
        let a = Assignment::new(&game, BTreeMap::from([(0, 2), (1, 4), (2, 1), (3, 5)])).unwrap();
        let mv = Move {
            agent: 0,
            from: 2,
            to: 0,
            utility_before: Rational::ONE,
            utility_after: Rational::ONE,
        };
        assert_eq!(
            spider_move_delta_bound(&game, &a, &mv, Rational::new(1, 4)),
            Err(DynamicsError::EmptyNodeCount(2))
        );
        let game = GameInstance::all_strategic(spider(), &[3, 2]).unwrap();
        let a = Assignment::new(
            &game,
            BTreeMap::from([(0, 2), (1, 4), (2, 5), (3, 1), (4, 3)]),
        )
        .unwrap();
        assert_eq!(
            spider_move_delta_bound(&game, &a, &mv, Rational::new(1, 2)),
            Err(DynamicsError::SpiderParameterTooLarge(Rational::new(1, 2)))
        );
        assert!(matches!(
            spider_move_delta_bound(&game, &a, &mv, Rational::new(1, 4)),
            Err(DynamicsError::UnclassifiedMove { .. })
        ));
    }
}
