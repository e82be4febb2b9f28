use pathram::game::{check_strategy_invariant, run_game, Outcome, Painter};
use pathram::{enumerate_walks, evaluate};

#[test]
fn simulation_matches_recursion_for_small_targets() {
    for l1 in 1..=11 {
        for l2 in 1..=(12 - l1) {
            for w in enumerate_walks(&[l1, l2]).unwrap() {
                let trace = evaluate(&w).unwrap();
                let painter = Painter::Walk(w.clone());
                let g = run_game(&[l1, l2], &painter, None).unwrap();
                let k: Vec<usize> = trace.k_values().iter().map(|&v| v as usize).collect();
                assert_eq!(g.tree_sizes, k, "walk {w}");
                assert_eq!(g.largest_component as i128, trace.k(), "walk {w}");
                assert!(w.entries().starts_with(&g.alpha_prime), "walk {w}");
                assert!(matches!(g.outcome, Outcome::BuilderWins { .. }));
                g.board.check_structure().unwrap();
                let x = trace.x_sequences();
                assert_eq!(check_strategy_invariant(2, &g.transcript, x).unwrap(), None, "walk {w}");

                let cap = trace.k() as usize - 1;
                let s = run_game(&[l1, l2], &painter, Some(cap)).unwrap();
                assert!(matches!(s.outcome, Outcome::PainterSurvives { .. }), "walk {w}");
                assert!(s.largest_component <= cap);
            }
        }
    }
}

#[test]
fn greedy_painter_reaches_product() {
    for l1 in 1..=8 {
        for l2 in 1..=8 {
            let g = run_game(&[l1, l2], &Painter::Greedy, None).unwrap();
            assert_eq!(g.largest_component, l1 * l2, "({l1},{l2})");
        }
    }
}
