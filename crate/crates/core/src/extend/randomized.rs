//! Randomized replay checks: random inner walks on the subgraph, every
//! output validated against the independent sequence checker.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::coloring::validate_sequence;

fn random_lists(n: usize, size: usize, palette: u32, rng: &mut ChaCha8Rng) -> Vec<Vec<Color>> {
    (0..n)
        .map(|_| {
            let mut all: Vec<Color> = (0..palette).collect();
            all.shuffle(rng);
            all.truncate(size);
            all
        })
        .collect()
}

fn greedy(g: &Graph, lists: &ListAssignment, c: &mut Coloring, order: &[Vertex], rng: &mut ChaCha8Rng) -> bool {
    for &v in order {
        let used: Vec<Color> = g.neighbors(v).iter().filter_map(|&u| c.get(u)).collect();
        let free: Vec<Color> = lists.list(v).iter().copied().filter(|x| !used.contains(x)).collect();
        match free.choose(rng) {
            Some(&x) => c.set(v, x),
            None => return false,
        }
    }
    true
}

struct Instance {
    alpha: Coloring,
    beta: Coloring,
    inner: RecoloringSequence,
}

/// Random α, a random walk of proper recolorings of `g - added` biased
/// towards `focus`, and β extending the walk's end.
fn instance(
    g: &Graph,
    lists: &ListAssignment,
    added: &[Vertex],
    focus: &[Vertex],
    len: usize,
    cap: impl Fn(Vertex) -> u32,
    rng: &mut ChaCha8Rng,
) -> Option<Instance> {
    let h = g.without(added);
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.shuffle(rng);
    let mut alpha = Coloring::empty(g.capacity());
    if !greedy(g, lists, &mut alpha, &order, rng) {
        return None;
    }
    let mut inner = RecoloringSequence::new(alpha.restrict_to(&h));
    let mut cur = inner.start.clone();
    let old: Vec<Vertex> = h.vertices().collect();
    let mut counts = vec![0u32; g.capacity()];
    for _ in 0..len {
        let v = if !focus.is_empty() && rng.gen_bool(0.7) { *focus.choose(rng)? } else { *old.choose(rng)? };
        if counts[v] >= cap(v) {
            continue;
        }
        let used: Vec<Color> = h.neighbors(v).iter().map(|&u| cur.at(u)).collect();
        let free: Vec<Color> = lists.list(v).iter().copied().filter(|&x| x != cur.at(v) && !used.contains(&x)).collect();
        if let Some(&x) = free.choose(rng) {
            cur.set(v, x);
            counts[v] += 1;
            inner.steps.push(Step::new(v, x));
        }
    }
    let mut beta = cur;
    for _ in 0..20 {
        let mut b = beta.clone();
        if greedy(g, lists, &mut b, added, rng) {
            beta = b;
            return Some(Instance { alpha, beta, inner });
        }
    }
    None
}

fn check_restriction(seq: &RecoloringSequence, inner: &RecoloringSequence, added: &[Vertex]) {
    let set: BTreeSet<Vertex> = added.iter().copied().collect();
    let kept: Vec<Step> = seq.steps.iter().copied().filter(|s| !set.contains(&s.vertex)).collect();
    assert_eq!(kept, inner.steps);
}

fn k4_plus(extra: usize) -> Graph {
    let mut g = Graph::new(4 + extra);
    for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        g.add_edge(u, v).unwrap();
    }
    g
}

#[test]
fn key_lemma_random_stars_and_wheels() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut runs = 0;
    for round in 0..300 {
        let d = 1 + round % 4;
        let mut g = k4_plus(1);
        let v = 4;
        for u in 0..d {
            g.add_edge(v, u).unwrap();
        }
        let size = d + 2 + round % 3;
        let lists = ListAssignment::new(random_lists(5, size.max(5), 9, &mut rng));
        let Some(inst) = instance(&g, &lists, &[v], g.neighbors(v), 40, |_| 30, &mut rng) else { continue };
        let (seq, budget) = key_lemma::extend_key_lemma_budget(&g, &lists, v, &inst.inner, &inst.alpha, &inst.beta).unwrap();
        validate_sequence(&g, &lists, &seq, &inst.beta, 30.max(budget.bound)).unwrap();
        assert!(seq.count(v) <= budget.bound);
        check_restriction(&seq, &inst.inner, &[v]);
        runs += 1;
    }
    assert!(runs > 250);
}

#[test]
fn two_thread_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut runs = 0;
    for round in 0..400 {
        let mut g = k4_plus(2);
        let (v1, v4) = if round % 3 == 0 { (0, 0) } else { (0, 1) };
        for (u, v) in [(v1, 4), (4, 5), (5, v4)] {
            g.add_edge(u, v).unwrap();
        }
        let lists = ListAssignment::new(random_lists(6, 4 + (round % 2), 7, &mut rng));
        // a thread looping back to its anchor needs the anchor to move at most once
        let cap = |u: Vertex| if v1 == v4 && u == v1 { 1 } else if u == v4 { 11 } else { 14 };
        let Some(inst) = instance(&g, &lists, &[4, 5], &[v1, v4], 50, cap, &mut rng) else { continue };
        let seq = extend_two_thread(&g, &lists, [v1, 4, 5, v4], &inst.inner, &inst.alpha, &inst.beta).unwrap();
        validate_sequence(&g, &lists, &seq, &inst.beta, 14).unwrap();
        assert!(seq.count(5) <= inst.inner.count(v4) + 3);
        check_restriction(&seq, &inst.inner, &[4, 5]);
        runs += 1;
    }
    assert!(runs > 300, "{runs}");
}

#[test]
fn three_thread_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut runs = 0;
    for round in 0..400 {
        let mut g = k4_plus(3);
        let (v1, v5) = if round % 3 == 0 { (2, 2) } else { (2, 3) };
        for (u, v) in [(v1, 4), (4, 5), (5, 6), (6, v5)] {
            g.add_edge(u, v).unwrap();
        }
        let lists = ListAssignment::new(random_lists(7, 4, 6, &mut rng));
        let Some(inst) = instance(&g, &lists, &[4, 5, 6], &[v1, v5], 50, |_| 14, &mut rng) else { continue };
        let seq = extend_three_thread(&g, &lists, [v1, 4, 5, 6, v5], &inst.inner, &inst.alpha, &inst.beta).unwrap();
        validate_sequence(&g, &lists, &seq, &inst.beta, 14).unwrap();
        assert!(seq.count(5) <= 4);
        check_restriction(&seq, &inst.inner, &[4, 5, 6]);
        runs += 1;
    }
    assert!(runs > 300, "{runs}");
}

#[test]
fn threads_untouched_ends() {
    // nothing moves at the ends: only endgame moves
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let mut g = k4_plus(3);
        for (u, v) in [(0, 4), (4, 5), (5, 6), (6, 1)] {
            g.add_edge(u, v).unwrap();
        }
        let lists = ListAssignment::new(random_lists(7, 4, 6, &mut rng));
        let Some(inst) = instance(&g, &lists, &[4, 5, 6], &[2, 3], 20, |u| if u < 2 { 0 } else { 14 }, &mut rng) else {
            continue;
        };
        let seq = extend_three_thread(&g, &lists, [0, 4, 5, 6, 1], &inst.inner, &inst.alpha, &inst.beta).unwrap();
        assert!(seq.count(5) <= 2);
    }
    let mut g = k4_plus(2);
    for (u, v) in [(0, 4), (4, 5), (5, 1)] {
        g.add_edge(u, v).unwrap();
    }
    for _ in 0..100 {
        let lists = ListAssignment::new(random_lists(6, 4, 6, &mut rng));
        let Some(inst) = instance(&g, &lists, &[4, 5], &[2, 3], 20, |u| if u < 2 { 0 } else { 14 }, &mut rng) else {
            continue;
        };
        let seq = extend_two_thread(&g, &lists, [0, 4, 5, 1], &inst.inner, &inst.alpha, &inst.beta).unwrap();
        assert!(seq.count(4) <= 2 && seq.count(5) <= 2);
    }
}

#[test]
fn pendant_triple_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut runs = 0;
    for round in 0..300 {
        let mut g = k4_plus(4);
        let (v, w) = (4, [5, 6, 7]);
        let x = if round % 2 == 0 { [0, 1, 2] } else { [0, 1, 1] };
        for i in 0..3 {
            g.add_edge(v, w[i]).unwrap();
            g.add_edge(w[i], x[i]).unwrap();
        }
        let lists = ListAssignment::new(random_lists(8, 4, 6, &mut rng));
        let cap = |u: Vertex| if u == 0 { 9 } else { 14 };
        let Some(inst) = instance(&g, &lists, &[4, 5, 6, 7], &x, 60, cap, &mut rng) else { continue };
        let seq = extend_pendant_triple(&g, &lists, v, w, &inst.inner, &inst.alpha, &inst.beta).unwrap();
        validate_sequence(&g, &lists, &seq, &inst.beta, 14).unwrap();
        assert!(seq.count(v) <= 4);
        check_restriction(&seq, &inst.inner, &[4, 5, 6, 7]);
        runs += 1;
    }
    assert!(runs > 200, "{runs}");
}

#[test]
fn pendant_triple_rejects_busy_x1() {
    let mut g = k4_plus(4);
    for i in 0..3 {
        g.add_edge(4, 5 + i).unwrap();
        g.add_edge(5 + i, i).unwrap();
    }
    let lists = ListAssignment::uniform(8, 0..6);
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let inst = (0..50)
        .find_map(|_| instance(&g, &lists, &[4, 5, 6, 7], &[0], 200, |u| if u == 0 { 10 } else { 0 }, &mut rng).filter(|i| i.inner.count(0) == 10))
        .expect("walk reaching ten recolorings");
    let err = extend_pendant_triple(&g, &lists, 4, [5, 6, 7], &inst.inner, &inst.alpha, &inst.beta).unwrap_err();
    assert!(matches!(err, ExtendError::Inapplicable(_)));
}

/// Old part: an 8-cycle with chords, so every spoke has old neighbors.
fn six_base(extra: usize) -> Graph {
    let mut g = Graph::new(8 + extra);
    for i in 0..8 {
        g.add_edge(i, (i + 1) % 8).unwrap();
    }
    g.add_edge(0, 4).unwrap();
    g.add_edge(2, 6).unwrap();
    g
}

#[test]
fn deg3_two_deg3_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut runs = 0;
    for round in 0..400 {
        let mut g = six_base(3);
        let (v, w1, w2, x) = (8, 9, 10, 0);
        let mut edges = vec![(v, w1), (v, w2), (v, x)];
        match round % 3 {
            0 => edges.extend([(w1, 1), (w1, 2), (w2, 3), (w2, 5)]),
            1 => edges.extend([(w1, w2), (w1, 1), (w2, 5)]),
            _ => edges.extend([(w1, 0), (w1, 3), (w2, 3), (w2, 6)]),
        }
        for (a, b) in edges {
            g.add_edge(a, b).unwrap();
        }
        let lists = ListAssignment::new(random_lists(11, 6, 9, &mut rng));
        let focus: Vec<Vertex> = (0..8).filter(|&u| g.has_edge(u, w1) || g.has_edge(u, w2) || u == x).collect();
        let Some(inst) = instance(&g, &lists, &[v, w1, w2], &focus, 90, |_| 12, &mut rng) else { continue };
        let seq = extend_deg3_two_deg3_neighbors(&g, &lists, v, [w1, w2], x, &inst.inner, &inst.alpha, &inst.beta)
            .unwrap_or_else(|e| panic!("round {round}: {e}"));
        validate_sequence(&g, &lists, &seq, &inst.beta, 12).unwrap();
        check_restriction(&seq, &inst.inner, &[v, w1, w2]);
        runs += 1;
    }
    assert!(runs > 300, "{runs}");
}

#[test]
fn deg4_four_deg3_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let mut runs = 0;
    for round in 0..400 {
        let mut g = six_base(5);
        let (v, w) = (8, [9, 10, 11, 12]);
        let mut edges: Vec<(Vertex, Vertex)> = w.iter().map(|&wi| (v, wi)).collect();
        match round % 3 {
            0 => edges.extend([(9, 0), (9, 1), (10, 2), (10, 3), (11, 4), (11, 5), (12, 6), (12, 7)]),
            1 => edges.extend([(9, 10), (9, 1), (10, 3), (11, 12), (11, 5), (12, 7)]),
            _ => edges.extend([(9, 0), (9, 2), (10, 0), (10, 4), (11, 2), (11, 4), (12, 0), (12, 6)]),
        }
        for (a, b) in edges {
            g.add_edge(a, b).unwrap();
        }
        let lists = ListAssignment::new(random_lists(13, 6, 9, &mut rng));
        let focus: Vec<Vertex> = (0..8).collect();
        let mut added = vec![v];
        added.extend(w);
        let Some(inst) = instance(&g, &lists, &added, &focus, 90, |_| 12, &mut rng) else { continue };
        let seq = extend_deg4_four_deg3_neighbors(&g, &lists, v, w, &inst.inner, &inst.alpha, &inst.beta)
            .unwrap_or_else(|e| panic!("round {round}: {e}"));
        validate_sequence(&g, &lists, &seq, &inst.beta, 12).unwrap();
        assert!(seq.count(v) <= 10);
        check_restriction(&seq, &inst.inner, &added);
        runs += 1;
    }
    assert!(runs > 300, "{runs}");
}

#[test]
fn six_untouched_costs_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..100 {
        let mut g = six_base(3);
        for (a, b) in [(8, 9), (8, 10), (8, 0), (9, 1), (9, 2), (10, 3), (10, 5)] {
            g.add_edge(a, b).unwrap();
        }
        let lists = ListAssignment::new(random_lists(11, 6, 9, &mut rng));
        let frozen = [0, 1, 2, 3, 5];
        let Some(inst) = instance(&g, &lists, &[8, 9, 10], &[4, 6, 7], 30, |u| if frozen.contains(&u) { 0 } else { 12 }, &mut rng)
        else {
            continue;
        };
        let seq = extend_deg3_two_deg3_neighbors(&g, &lists, 8, [9, 10], 0, &inst.inner, &inst.alpha, &inst.beta).unwrap();
        for u in [8, 9, 10] {
            assert!(seq.count(u) <= 2);
        }
    }
}
