//! Worked examples checked end to end through the public API.

use std::collections::BTreeMap;

use divjump::dynamics::{improving_moves, jump_potential_delta, potential, PotentialConfig};
use divjump::equilibria::{
    brute_force, build_gadget, construct_tree_equilibrium, find_irc, find_irc_from, is_equilibrium,
    PriceRatio, TreeError,
};
use divjump::instances::{
    gen_cycle, gen_line, gen_poa_line_equilibrium, gen_star_asymmetric, pinned_pos_fixture,
    poa_line_optimum, search_pos_topologies, star_blue_center,
};
use divjump::utility::{social_welfare, utility};
use divjump::{Agent, Assignment, GameInstance, Rational, Topology};

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn place(game: &GameInstance, pairs: &[(usize, usize)]) -> Assignment {
    let mut placement = game.stubborn_placement().clone();
    placement.extend(pairs.iter().copied());
    Assignment::new(game, placement).unwrap()
}

#[test]
fn gadget_utilities_around_x_y_z() {
    let g = build_gadget(3, &[(0, 1), (1, 2)], 2).unwrap();
    // x empty: the red agent on z sees 4 blue of 7, y would offer 5 blue of 6
    let a = place(&g.game, &[(0, 0), (1, 2), (2, g.z)]);
    assert_eq!(utility(&g.game, &a, 2).unwrap(), r(4, 7));
    let to_y = improving_moves(&g.game, &a, Some(2)).unwrap();
    let mv = to_y.iter().find(|m| m.to == g.y).unwrap();
    assert_eq!(mv.utility_after, r(5, 6));
    // with a red agent on x, y offers 5 of 7, still better than 4/7
    let b = place(&g.game, &[(0, 0), (1, g.x), (2, g.z)]);
    let mv = improving_moves(&g.game, &b, Some(2))
        .unwrap()
        .into_iter()
        .find(|m| m.to == g.y)
        .unwrap();
    assert_eq!((mv.utility_before, mv.utility_after), (r(4, 7), r(5, 7)));
}

#[test]
fn gadget_size_on_k3() {
    let g = build_gadget(3, &[(0, 1), (1, 2), (0, 2)], 2).unwrap();
    // 3 identical red agents on the 3 vertices plus x, y, z
    let report = brute_force(&g.game, 100).unwrap();
    assert_eq!(report.total_states_examined, 20);
    assert_eq!(report.equilibrium_count, 0);
    assert!(report.poa.is_none());
}

#[test]
fn three_node_path_has_price_one() {
    let game = GameInstance::all_strategic(gen_line(3).unwrap(), &[1, 1]).unwrap();
    let report = brute_force(&game, 100).unwrap();
    assert_eq!(report.poa, Some(PriceRatio::Finite(Rational::ONE)));
    assert_eq!(report.pos, Some(PriceRatio::Finite(Rational::ONE)));
    assert_eq!(report.opt_welfare, r(2, 1));
}

#[test]
fn star_optimum_and_bad_equilibrium() {
    let game = gen_star_asymmetric(5, 2).unwrap();
    let best = star_blue_center(&game).unwrap();
    assert_eq!(social_welfare(&game, &best).unwrap(), r(5, 1));
    let report = brute_force(&game, 1_000).unwrap();
    assert_eq!(report.opt_welfare, r(5, 1));
    assert_eq!(report.min_eq_welfare, Some(r(5, 4)));
}

#[test]
fn line_pattern_is_an_equilibrium_below_the_optimum() {
    for n in [8, 10, 12] {
        let (game, eq) = gen_poa_line_equilibrium(n).unwrap();
        assert!(is_equilibrium(&game, &eq).unwrap().is_equilibrium(), "n = {n}");
        let w = Rational::from(n as i128 + 4) / Rational::from(2);
        assert_eq!(social_welfare(&game, &eq).unwrap(), w);
        let opt = poa_line_optimum(&game).unwrap();
        assert_eq!(social_welfare(&game, &opt).unwrap(), Rational::from(n as i128));
    }
}

#[test]
fn pinned_fixture_matches_the_search() {
    let found = search_pos_topologies();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0], pinned_pos_fixture());
}

#[test]
fn tree_constructor_rejects_bad_inputs() {
    let cycle = GameInstance::all_strategic(gen_cycle(5).unwrap(), &[2, 2]).unwrap();
    assert_eq!(construct_tree_equilibrium(&cycle), Err(TreeError::NotATree));

    let t = gen_line(5).unwrap();
    let agents = vec![Agent::strategic(0, 1), Agent::strategic(1, 2), Agent::stubborn(2, 1)];
    let game = GameInstance::new(t, 2, agents, BTreeMap::from([(2, 4)])).unwrap();
    assert_eq!(construct_tree_equilibrium(&game), Err(TreeError::StubbornPresent));
}

#[test]
fn half_utility_jump_on_a_line_can_raise_the_potential() {
    // 1 . . 2 . 1 : the left agent has no occupied neighbor and jumps to
    // node 4, between a different-type and a same-type agent
    let game = GameInstance::all_strategic(gen_line(6).unwrap(), &[2, 1]).unwrap();
    let a = place(&game, &[(0, 0), (1, 5), (2, 3)]);
    let mv = improving_moves(&game, &a, Some(0))
        .unwrap()
        .into_iter()
        .find(|m| m.to == 4)
        .unwrap();
    assert_eq!((mv.utility_before, mv.utility_after), (Rational::ZERO, r(1, 2)));
    let state = a.class_state(&game);
    for (m, delta) in [(r(1, 4), r(1, 2)), (r(1, 2), Rational::ZERO), (r(3, 4), r(-1, 2))] {
        assert_eq!(jump_potential_delta(game.topology(), &state, 0, 4, m), delta);
        let cfg = PotentialConfig::new(m).unwrap();
        let after = place(&game, &[(0, 4), (1, 5), (2, 3)]);
        assert_eq!(potential(&game, &after, &cfg) - potential(&game, &a, &cfg), delta);
    }
}

#[test]
fn cycle_search_can_start_from_a_given_assignment() {
    // a triangle with a pendant: too small for a cycle
    let t = Topology::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    let game = GameInstance::all_strategic(t, &[1, 2]).unwrap();
    assert_eq!(find_irc(&game, 1_000).unwrap(), None);
    let start = place(&game, &[(0, 0), (1, 1), (2, 2)]);
    assert_eq!(find_irc_from(&game, &start, 1_000).unwrap(), None);
}
