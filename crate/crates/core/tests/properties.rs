//! Randomized cross-checks between independent code paths.

use proptest::prelude::*;

use divjump::dynamics::{
    apply_move, improving_moves, jump_potential_delta, potential, PotentialConfig,
};
use divjump::equilibria::{brute_force, enumerate_equilibria, is_equilibrium};
use divjump::instances::{gen_tree, random_assignment};
use divjump::utility::social_welfare;
use divjump::{Assignment, GameInstance, Rational};

fn tree_game(nodes: usize, reds: usize, blues: usize, seed: u64) -> GameInstance {
    GameInstance::all_strategic(gen_tree(nodes, seed).unwrap(), &[reds, blues]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn local_potential_delta_matches_recomputation(
        nodes in 4usize..12, seed in 0u64..1_000, m_num in 1i128..8
    ) {
        let game = tree_game(nodes, 1, nodes - 3, seed);
        let a = random_assignment(&game, seed);
        let m = Rational::new(m_num, 8);
        let cfg = PotentialConfig::new(m).unwrap();
        for mv in improving_moves(&game, &a, None).unwrap() {
            let b = apply_move(&game, &a, &mv).unwrap();
            let delta = jump_potential_delta(game.topology(), &a.class_state(&game), mv.from, mv.to, m);
            prop_assert_eq!(potential(&game, &b, &cfg) - potential(&game, &a, &cfg), delta);
        }
    }

    #[test]
    fn moves_and_equilibrium_check_agree(nodes in 3usize..10, seed in 0u64..1_000) {
        let game = tree_game(nodes, 1, nodes - 2, seed);
        let a = random_assignment(&game, seed);
        let moves = improving_moves(&game, &a, None).unwrap();
        let stable = is_equilibrium(&game, &a).unwrap();
        prop_assert_eq!(moves.is_empty(), stable.is_equilibrium());
        if let Some(w) = stable.witness() {
            prop_assert_eq!((w.agent, w.target), (moves[0].agent, moves[0].to));
        }
    }

    #[test]
    fn oracle_agrees_with_the_exact_checks(nodes in 4usize..9, seed in 0u64..1_000) {
        let game = tree_game(nodes, 1, nodes - 3, seed);
        let report = brute_force(&game, 1_000_000).unwrap();
        let eqs = enumerate_equilibria(&game, 1_000_000).unwrap();
        prop_assert_eq!(report.equilibrium_count as usize, eqs.len());
        for state in &eqs {
            let a = Assignment::from_class_state(&game, state).unwrap();
            prop_assert!(is_equilibrium(&game, &a).unwrap().is_equilibrium());
            prop_assert!(social_welfare(&game, &a).unwrap() <= report.opt_welfare);
        }
        let opt = social_welfare(&game, &report.example_optimum).unwrap();
        prop_assert_eq!(opt, report.opt_welfare);
    }
}
