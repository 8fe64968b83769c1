//! Cross-module properties: round trips, involutions, and the structural
//! theorems run as executable properties on randomized inputs.

use proptest::prelude::*;

use stick_core::{
    certify_non_stick, check_forbidden_pairs, check_table2, classify_configuration, find_hole,
    gen_random_representation, parse_graph, parse_representation, recognize,
    validate_representation, BipartiteGraph, RecognitionResult, SearchBudget,
};

fn graph_strategy(max_side: usize) -> impl Strategy<Value = BipartiteGraph> {
    (0..=max_side, 0..=max_side, any::<u32>()).prop_map(|(n, m, mask)| {
        let edges: Vec<(usize, usize)> = (0..n * m)
            .filter(|k| mask & (1 << (k % 32)) != 0 || (mask >> 16) & (1 << (k % 16)) != 0)
            .map(|k| (k / m.max(1) + 1, k % m.max(1) + 1))
            .filter(|&(i, j)| i <= n && j <= m)
            .collect();
        BipartiteGraph::new(n, m, edges).unwrap()
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in graph_strategy(5)) {
        prop_assert_eq!(g.bipartite_complement().bipartite_complement(), g);
    }

    #[test]
    fn graph_file_round_trip(g in graph_strategy(5)) {
        let parsed = parse_graph(&g.to_file_string()).unwrap();
        prop_assert_eq!(parsed.graph, g);
        prop_assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn induced_graph_always_validates(n in 0usize..4, m in 0usize..4, seed in any::<u64>()) {
        let rep = gen_random_representation(n, m, seed);
        prop_assert!(validate_representation(&rep, &rep.induced_graph()).is_ok());
    }

    #[test]
    fn rep_token_round_trip(n in 0usize..4, m in 0usize..4, seed in any::<u64>()) {
        let rep = gen_random_representation(n, m, seed);
        let parsed = parse_representation(&rep.to_token_string()).unwrap();
        prop_assert_eq!(parsed, rep);
    }

    #[test]
    fn overlap_pattern_excludes_its_mirror(n in 1usize..4, m in 1usize..4, seed in any::<u64>()) {
        // The defining pattern and its role-swapped mirror cannot hold at
        // once for the same pair.
        let rep = gen_random_representation(n, m, seed);
        for i in 1..=n {
            for j in 1..=m {
                let pos = |e| rep.position(e).unwrap();
                use stick_core::Event::*;
                let pattern = pos(ATip(i)) < pos(BOrigin(j))
                    && pos(BOrigin(j)) < pos(AOrigin(i))
                    && pos(AOrigin(i)) < pos(BTip(j));
                let mirror = pos(BOrigin(j)) < pos(ATip(i))
                    && pos(BTip(j)) < pos(AOrigin(i));
                prop_assert!(!(pattern && mirror));
                prop_assert_eq!(rep.overlaps(i, j).unwrap(), pattern);
            }
        }
    }

    #[test]
    fn reversal_maps_valid_reps_to_the_swapped_graph(
        n in 0usize..4, m in 0usize..4, seed in any::<u64>()
    ) {
        let rep = gen_random_representation(n, m, seed);
        let g = rep.induced_graph();
        let swapped = rep.reversed_side_swap();
        prop_assert!(validate_representation(&swapped, &g.side_swapped()).is_ok());
        prop_assert_eq!(swapped.reversed_side_swap(), rep);
    }

    /// The three structural theorems hold on every representation the
    /// recognizer produces.
    #[test]
    fn structural_theorems_hold_on_recognized_reps(g in graph_strategy(4)) {
        if let RecognitionResult::Stick(rep) = recognize(&g, SearchBudget::default()) {
            prop_assert!(validate_representation(&rep, &g).is_ok());
            prop_assert!(check_forbidden_pairs(&rep, &g).unwrap().passed());
            for x in 1..=g.a_count() {
                for y in (x + 1)..=g.a_count() {
                    let (v, t) = orient_by_tip(&rep, x, y);
                    let config = classify_configuration(&rep, &g, v, t).unwrap();
                    prop_assert!(matches!(
                        config.kind,
                        stick_core::ConfigKind::C1
                            | stick_core::ConfigKind::C2
                            | stick_core::ConfigKind::C2Prime
                    ));
                    prop_assert!(check_table2(&rep, &g, v, t).unwrap().passed());
                }
            }
        }
    }

    /// A certificate always means the exact recognizer says no.
    #[test]
    fn certificates_are_sound_on_small_graphs(g in graph_strategy(4)) {
        if let Some(cert) = certify_non_stick(&g, true) {
            prop_assert!(cert.verify(&g).is_ok());
            prop_assert_eq!(recognize(&g, SearchBudget::default()), RecognitionResult::NotStick);
        }
    }

    #[test]
    fn holes_survive_complement_of_complement(g in graph_strategy(4)) {
        let twice = g.bipartite_complement().bipartite_complement();
        prop_assert_eq!(find_hole(&g).is_some(), find_hole(&twice).is_some());
    }
}

fn orient_by_tip(rep: &stick_core::StickRepresentation, x: usize, y: usize) -> (usize, usize) {
    use stick_core::Event;
    let px = rep.position(Event::ATip(x)).unwrap();
    let py = rep.position(Event::ATip(y)).unwrap();
    if px < py {
        (x, y)
    } else {
        (y, x)
    }
}
