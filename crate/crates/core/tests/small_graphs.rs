//! Every small graph under each density bound goes through its solver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recolor::gen::{random_instance, InstanceOptions, ListMode};
use recolor::metrics::mad_exact;
use recolor::solve::{solve, Theorem};
use recolor::{Graph, Rational};

fn env(key: &str, default: usize) -> usize {
    std::env::var(key).ok().and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
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

fn attempt(theorem: Theorem, bound: Rational, g: Graph, seed: u64) -> bool {
    if g.n() > 0 && mad_exact(&g).unwrap().mad >= bound {
        return false;
    }
    let k = theorem.list_size();
    let lists = if seed.is_multiple_of(2) { ListMode::Shared } else { ListMode::Random { palette: k + 2 } };
    let opts = InstanceOptions { list_size: k, lists, disjoint: true };
    let inst = random_instance(g, &opts, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
    if let Err(e) = solve(theorem, &inst.graph, &inst.lists, &inst.alpha, &inst.beta) {
        panic!("{theorem:?} seed {seed}: {e}\n{}", recolor::io::emit_graph(&inst.graph));
    }
    true
}

fn all_graphs(theorem: Theorem, bound: Rational, max_n: usize) -> usize {
    let mut solved = 0;
    for n in 1..=max_n {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            solved += usize::from(attempt(theorem, bound, graph_from_mask(n, mask), mask));
        }
    }
    solved
}

fn random_graphs(theorem: Theorem, bound: Rational, count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < count {
        let n = rng.gen_range(7..=9);
        let pairs = n * (n - 1) / 2;
        let density = rng.gen_range(0.15..0.45);
        let mask = (0..pairs).filter(|_| rng.gen_bool(density)).fold(0u64, |m, b| m | 1 << b);
        done += usize::from(attempt(theorem, bound, graph_from_mask(n, mask), rng.gen()));
    }
}

#[test]
fn theorem_three_small_graphs() {
    assert!(all_graphs(Theorem::Three, Rational::new(22, 9), env("RECOLOR_SMALL_N", 6)) > 1000);
    random_graphs(Theorem::Three, Rational::new(22, 9), 2000 * env("RECOLOR_STRESS", 1));
}

#[test]
fn theorem_two_small_graphs() {
    assert!(all_graphs(Theorem::Two, Rational::new(17, 5), env("RECOLOR_SMALL_N", 6)) > 1000);
    random_graphs(Theorem::Two, Rational::new(17, 5), 2000 * env("RECOLOR_STRESS", 1));
}
