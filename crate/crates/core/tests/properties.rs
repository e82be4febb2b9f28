use proptest::prelude::*;

use pathram::asymptotics::{at_most_log3_power, extend_recurrence, period_analysis};
use pathram::game::{check_strategy_invariant, replay, run_game, Painter};
use pathram::walks::count_walks;
use pathram::{
    choose_color, delta_of_walk, enumerate_walks, evaluate, greedy_walk, k_of_walk, kstar_branch_and_bound_with,
    kstar_exhaustive, make_walk, positions, swap_colors, GrowthRate, SearchConfig, StrategyWalk,
};

/// Straightforward recursion over every split `j1 + j2 = nu - 1`.
fn naive_k_values(walk: &StrategyWalk) -> Vec<i128> {
    let mut x: Vec<Vec<i128>> = vec![vec![0]; walk.colors()];
    let mut ks = Vec::new();
    for i in 0..=walk.len() {
        let mut k = 1;
        for xs in &x {
            let n = xs.len() - 1;
            k += (0..=n).map(|j| xs[j] + xs[n - j]).min().unwrap();
        }
        ks.push(k);
        if let Some(&c) = walk.entries().get(i) {
            x[c - 1].push(k);
        }
    }
    ks
}

/// Random walk to `targets` chosen by `bits`.
fn walk_from_bits(targets: &[usize], bits: &[u8]) -> StrategyWalk {
    let mut left: Vec<usize> = targets.iter().map(|l| l - 1).collect();
    let mut entries = Vec::new();
    let mut i = 0;
    while left.iter().any(|&n| n > 0) {
        let open: Vec<usize> = (0..left.len()).filter(|&s| left[s] > 0).collect();
        let c = open[bits.get(i).copied().unwrap_or(0) as usize % open.len()];
        left[c] -= 1;
        entries.push(c + 1);
        i += 1;
    }
    make_walk(targets.len(), entries).unwrap()
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn box_exit_index_is_unique() {
    for l1 in 1..=9 {
        for l2 in 1..=(10 - l1) {
            for w in enumerate_walks(&[l1, l2]).unwrap() {
                let pos = positions(&w);
                for a in 1..=l1 {
                    for b in 1..=l2 {
                        let lambda = [a, b];
                        if lambda == [l1, l2] {
                            continue;
                        }
                        let matches: Vec<usize> = (0..w.len())
                            .filter(|&i| {
                                let s = w.entries()[i];
                                let nu = &pos[i].coords;
                                nu[s - 1] == lambda[s - 1] && (0..2).all(|t| nu[t] <= lambda[t])
                            })
                            .collect();
                        assert_eq!(matches.len(), 1, "walk {w}, lambda {lambda:?}");
                        let (i, sigma) = choose_color(&w, &lambda).unwrap();
                        assert_eq!(i, matches[0]);
                        assert_eq!(sigma, w.entries()[i]);
                        assert!(lambda[sigma - 1] < [l1, l2][sigma - 1]);
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_counts_match_binomials() {
    for d in 0..=20u128 {
        for a in 0..=d {
            let targets = [a as usize + 1, (d - a) as usize + 1];
            let expected = binomial(d, a);
            assert_eq!(count_walks(&targets), Some(expected));
            assert_eq!(enumerate_walks(&targets).unwrap().count() as u128, expected, "{targets:?}");
        }
    }
    // Three colors: 6! / (2! 3! 1!) = 60.
    assert_eq!(enumerate_walks(&[3, 4, 2]).unwrap().count(), 60);
}

#[test]
fn recursion_is_strictly_monotone_for_short_walks() {
    for d in 0..=20usize {
        for a in 0..=d {
            for w in enumerate_walks(&[a + 1, d - a + 1]).unwrap() {
                let t = evaluate(&w).unwrap();
                assert!(t.k_values().windows(2).all(|p| p[0] < p[1]), "walk {w}");
                for s in 1..=2 {
                    assert!(t.x(s).windows(2).all(|p| p[0] < p[1]), "walk {w}");
                }
            }
        }
    }
}

#[test]
fn swapping_colors_preserves_k() {
    for d in 0..=16usize {
        for a in 0..=d {
            for w in enumerate_walks(&[a + 1, d - a + 1]).unwrap() {
                assert_eq!(k_of_walk(&swap_colors(&w).unwrap()).unwrap(), k_of_walk(&w).unwrap());
            }
        }
    }
}

#[test]
fn walk_values_respect_the_log3_ceiling() {
    for c in 1..=15usize {
        for l in 1..=(16 - c) {
            for w in enumerate_walks(&[l, c]).unwrap() {
                let k = k_of_walk(&w).unwrap();
                let r = GrowthRate::new(k, l as i128).unwrap();
                assert_eq!(at_most_log3_power(&r, c as u64), Some(true), "walk {w}, k {k}");
            }
        }
    }
}

#[test]
fn greedy_painter_runs_keep_the_invariant() {
    for l1 in 1..=7 {
        for l2 in 1..=7 {
            let g = run_game(&[l1, l2], &Painter::Greedy, None).unwrap();
            let x = evaluate(&greedy_walk(&[l1, l2]).unwrap()).unwrap();
            assert_eq!(g.tree_sizes.iter().map(|&s| s as i128).collect::<Vec<_>>(), x.k_values());
            assert_eq!(check_strategy_invariant(2, &g.transcript, x.x_sequences()).unwrap(), None);
        }
    }
}

/// Final value of continuing the recursion from state `x` along `suffix`.
fn continue_from(mut x: [Vec<i128>; 2], suffix: &[usize]) -> i128 {
    let k = |x: &[Vec<i128>; 2]| -> i128 {
        1 + x
            .iter()
            .map(|xs| {
                let n = xs.len() - 1;
                (0..=n).map(|j| xs[j] + xs[n - j]).min().unwrap()
            })
            .sum::<i128>()
    };
    for &c in suffix {
        let v = k(&x);
        x[c - 1].push(v);
    }
    k(&x)
}

fn prefix_state(walk: &StrategyWalk) -> [Vec<i128>; 2] {
    let t = evaluate(walk).unwrap();
    let mut x = [t.x(1).to_vec(), t.x(2).to_vec()];
    // The trace holds the whole walk; cut each color back to the prefix.
    let counts = [1 + walk.entries().iter().filter(|&&c| c == 1).count(), 1 + walk.entries().iter().filter(|&&c| c == 2).count()];
    x[0].truncate(counts[0]);
    x[1].truncate(counts[1]);
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn positions_end_at_targets(l1 in 1usize..30, l2 in 1usize..30, bits in prop::collection::vec(any::<u8>(), 64)) {
        let w = walk_from_bits(&[l1, l2], &bits);
        let pos = positions(&w);
        prop_assert_eq!(pos.len(), w.len() + 1);
        prop_assert_eq!(&pos[0].coords, &vec![1, 1]);
        prop_assert_eq!(&pos.last().unwrap().coords, &vec![l1, l2]);
        for p in pos.windows(2) {
            let moved: usize = p[0].coords.iter().zip(&p[1].coords).map(|(a, b)| b - a).sum();
            prop_assert_eq!(moved, 1);
        }
    }

    #[test]
    fn swap_is_an_involution(l1 in 1usize..30, l2 in 1usize..30, bits in prop::collection::vec(any::<u8>(), 64)) {
        let w = walk_from_bits(&[l1, l2], &bits);
        let s = swap_colors(&w).unwrap();
        prop_assert!(s.is_in(&[l2, l1]));
        prop_assert_eq!(swap_colors(&s).unwrap(), w);
    }

    #[test]
    fn text_round_trips(l1 in 1usize..30, l2 in 1usize..30, bits in prop::collection::vec(any::<u8>(), 64)) {
        let w = walk_from_bits(&[l1, l2], &bits);
        let back: StrategyWalk = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn recursion_matches_naive_oracle(
        targets in prop::collection::vec(1usize..25, 2..4),
        bits in prop::collection::vec(any::<u8>(), 80),
    ) {
        let w = walk_from_bits(&targets, &bits);
        let t = evaluate(&w).unwrap();
        let naive = naive_k_values(&w);
        prop_assert_eq!(t.k_values(), naive.as_slice());
        prop_assert!(t.k_values().windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn trace_entries_are_earlier_k_values(l1 in 1usize..40, l2 in 1usize..40, bits in prop::collection::vec(any::<u8>(), 80)) {
        let w = walk_from_bits(&[l1, l2], &bits);
        let t = evaluate(&w).unwrap();
        let mut seen = [1usize, 1];
        for (i, &c) in w.entries().iter().enumerate() {
            prop_assert_eq!(t.x(c)[seen[c - 1]], t.k_values()[i]);
            seen[c - 1] += 1;
        }
    }

    #[test]
    fn greedy_walk_value_is_the_product(targets in prop::collection::vec(1usize..40, 2..4)) {
        prop_assume!(targets.iter().product::<usize>() <= 1_000_000);
        let k = k_of_walk(&greedy_walk(&targets).unwrap()).unwrap();
        prop_assert_eq!(k, targets.iter().product::<usize>() as i128);
    }

    #[test]
    fn larger_games_match_the_recursion(l1 in 1usize..9, l2 in 1usize..9, bits in prop::collection::vec(any::<u8>(), 16)) {
        let w = walk_from_bits(&[l1, l2], &bits);
        let t = evaluate(&w).unwrap();
        let g = run_game(&[l1, l2], &Painter::Walk(w.clone()), None).unwrap();
        prop_assert_eq!(g.tree_sizes.iter().map(|&s| s as i128).collect::<Vec<_>>(), t.k_values());
        prop_assert_eq!(check_strategy_invariant(2, &g.transcript, t.x_sequences()).unwrap(), None);
        let mut checked = 0;
        let board = replay(2, &g.transcript, |b, _| {
            checked += 1;
            b.check_structure()
        }).unwrap();
        prop_assert_eq!(checked, g.transcript.len());
        prop_assert_eq!(board.largest_component(), g.largest_component);
    }

    #[test]
    fn lemma14_holds_on_random_instances(
        prefix in prop::collection::vec(-10_000i128..=10_000, 1..=12),
        beta in -10_000i128..=10_000,
    ) {
        let a = period_analysis(&prefix, beta).unwrap();
        let period = a.period_length;
        let inc = a.increment;
        let n = a.extension.len() - 1;
        let x = &a.extension;
        let t = prefix.len() - 1;
        for v in (t + 1)..=n {
            if v >= period {
                prop_assert!(x[v] - x[v - period] <= inc, "upper bound at {}", v);
            }
        }
        for v in a.onset..=n {
            prop_assert_eq!(x[v] - x[v - period], inc);
        }
        let mut k = 1;
        while a.p + k * period <= n {
            prop_assert!(x[a.p + k * period] - x[a.p] >= k as i128 * inc);
            k += 1;
        }
        // Equality persists well beyond the certified range.
        let longer = extend_recurrence(&prefix, beta, 2 * n + 2 * period).unwrap();
        for v in a.onset..longer.len() {
            prop_assert_eq!(longer[v] - longer[v - period], inc);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn branch_and_bound_matches_exhaustive(
        l1 in 1usize..11, l2 in 1usize..11,
        workers in 1usize..4, dominance in any::<bool>(), symmetry in any::<bool>(), cap in 1usize..20,
    ) {
        let e = kstar_exhaustive((l1, l2)).unwrap();
        let config = SearchConfig { workers, dominance, symmetry, witness_cap: cap, ..SearchConfig::default() };
        let b = kstar_branch_and_bound_with((l1, l2), &config).unwrap();
        prop_assert_eq!(b.kstar, e.kstar);
        prop_assert!(b.kstar >= (l1 * l2) as u64);
        let expected: Vec<_> = e.witnesses.iter().take(cap).cloned().collect();
        prop_assert_eq!(&b.witnesses, &expected);
        prop_assert_eq!(b.witnesses_capped, e.witnesses.len() >= cap);
        let swapped = kstar_branch_and_bound_with((l2, l1), &config).unwrap();
        prop_assert_eq!(swapped.kstar, b.kstar);
    }

    #[test]
    fn period_analysis_reproduces_walk_rates(l in 2usize..14, c in 2usize..7, bits in prop::collection::vec(any::<u8>(), 24)) {
        let mut w = walk_from_bits(&[l, c - 1], &bits);
        w.extend_run(2, 1).unwrap();
        prop_assert!(w.is_in(&[l, c]));
        let t = evaluate(&w).unwrap();
        let beta = pathram::beta_of_walk(&w).unwrap();
        let a = period_analysis(t.x(1), beta).unwrap();
        prop_assert_eq!(a.delta, delta_of_walk(&w).unwrap());
    }
}

/// Final values of prefixes whose states are pointwise dominated never
/// exceed those of the dominating prefix along any common suffix.
#[test]
fn dominated_states_give_dominated_values() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut direct = 0;
    for _ in 0..10_000 {
        let l1 = rng.gen_range(2..=10);
        let l2 = rng.gen_range(2..=10);
        let bits_a: Vec<u8> = (0..20).map(|_| rng.gen()).collect();
        let bits_b: Vec<u8> = (0..20).map(|_| rng.gen()).collect();
        let wa = walk_from_bits(&[l1, l2], &bits_a);
        let d = wa.len();
        let cut = rng.gen_range(0..=d);
        let pa = wa.prefix(cut);
        // Another prefix to the same lattice point.
        let a1 = pa.entries().iter().filter(|&&c| c == 1).count();
        let pb = walk_from_bits(&[a1 + 1, cut - a1 + 1], &bits_b);
        let (xa, xb) = (prefix_state(&pa), prefix_state(&pb));
        let dominated = |p: &[Vec<i128>; 2], q: &[Vec<i128>; 2]| {
            (0..2).all(|s| p[s].iter().zip(&q[s]).all(|(u, v)| u <= v))
        };
        // Pair each state with the pointwise minimum, which it dominates.
        let low: [Vec<i128>; 2] = [0, 1].map(|s| xa[s].iter().zip(&xb[s]).map(|(u, v)| *u.min(v)).collect());
        let suffix = &wa.entries()[cut..];
        assert!(continue_from(low.clone(), suffix) <= continue_from(xa.clone(), suffix));
        assert!(continue_from(low, suffix) <= continue_from(xb.clone(), suffix));
        if dominated(&xa, &xb) {
            direct += 1;
            assert!(continue_from(xa, suffix) <= continue_from(xb, suffix));
        }
        assert!(d <= 18);
    }
    assert!(direct > 0);
}
