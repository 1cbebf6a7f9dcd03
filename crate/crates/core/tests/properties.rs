use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use recolor::coloring::validate_sequence;
use recolor::discharge::{audit_mad229, ChargeLedger};
use recolor::gen::{free229, random_instance, InstanceOptions, ListMode};
use recolor::io::{emit_instance, emit_sequence, parse_instance, parse_sequence};
use recolor::metrics::{mad_enumerate, mad_exact};
use recolor::oracle::{bfs_distance, build_state_space};
use recolor::solve::{solve, Theorem};
use recolor::{Graph, RecoloringSequence};

fn graph(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| any::<u64>().prop_map(move |m| graph(n, m & ((1u64 << (n * (n - 1) / 2)) - 1))))
}

fn options(k: usize, random: bool) -> InstanceOptions {
    let lists = if random { ListMode::Random { palette: k + 2 } } else { ListMode::Shared };
    InstanceOptions { list_size: k, lists, disjoint: true }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn flow_mad_matches_enumeration(g in small_graph(9)) {
        prop_assert_eq!(mad_exact(&g).unwrap().mad, mad_enumerate(&g).unwrap().mad);
    }

    #[test]
    fn instance_text_is_canonical(g in small_graph(8), seed in any::<u64>(), random in any::<bool>()) {
        let k = 2 * g.max_degree() + 2;
        let inst = random_instance(g, &options(k, random), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let text = emit_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(emit_instance(&back), text);
    }

    #[test]
    fn sparse_solutions_are_valid_and_replayable(g in small_graph(8), seed in any::<u64>(), random in any::<bool>()) {
        for theorem in [Theorem::Three, Theorem::Two] {
            if theorem.check_graph(&g).is_err() {
                continue;
            }
            let opts = options(theorem.list_size(), random);
            let inst = random_instance(g.clone(), &opts, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            let sol = solve(theorem, &inst.graph, &inst.lists, &inst.alpha, &inst.beta).unwrap();
            let mut replay = RecoloringSequence::new(inst.alpha.clone());
            replay.steps = parse_sequence(&emit_sequence(&sol.sequence)).unwrap()
                .into_iter().map(|(v, c)| recolor::Step::new(v, c)).collect();
            let rep = validate_sequence(&inst.graph, &inst.lists, &replay, &inst.beta, theorem.bound()).unwrap();
            prop_assert!(rep.max_count <= theorem.bound());
        }
    }

    #[test]
    fn truncated_sequences_miss_beta(g in small_graph(7), seed in any::<u64>()) {
        prop_assume!(Theorem::Three.check_graph(&g).is_ok() && g.n() > 0);
        let inst = random_instance(g, &options(4, false), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let mut seq = solve(Theorem::Three, &inst.graph, &inst.lists, &inst.alpha, &inst.beta).unwrap().sequence;
        // disjoint α/β: the last step always matters
        seq.steps.pop();
        prop_assert!(validate_sequence(&inst.graph, &inst.lists, &seq, &inst.beta, 14).is_err());
    }

    #[test]
    fn oracle_distance_is_symmetric_and_a_lower_bound(g in small_graph(6), seed in any::<u64>()) {
        prop_assume!(Theorem::Three.check_graph(&g).is_ok());
        let inst = random_instance(g, &options(4, true), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let space = build_state_space(&inst.graph, &inst.lists).unwrap();
        let there = bfs_distance(&space, &inst.alpha, &inst.beta).unwrap();
        let back = bfs_distance(&space, &inst.beta, &inst.alpha).unwrap();
        prop_assert_eq!(there, back);
        let sol = solve(Theorem::Three, &inst.graph, &inst.lists, &inst.alpha, &inst.beta).unwrap();
        prop_assert!(sol.sequence.len() >= there.unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ledgers_conserve_and_round_trip(n in 10usize..30, seed in any::<u64>()) {
        let g = free229(n, &mut ChaCha8Rng::seed_from_u64(seed));
        if let Ok(l) = audit_mad229(&g) {
            prop_assert!(l.is_conserved());
            prop_assert_eq!(ChargeLedger::parse(&l.to_text()).unwrap(), l);
        }
    }
}
