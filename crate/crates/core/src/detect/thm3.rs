//! Graphs with mad < 22/9 and 4-lists, bound 14.
//!
//! Scan order: low-degree vertices, 3-threads (bare cycles included), 3-
//! and 4-vertices saturated with threads, the 3₂,₁,₀ adjacencies, the
//! 3₁,₁,₁ weak adjacencies, and last the pendant triple, whose budget needs
//! a far vertex that moves at most 9 times.

use std::collections::BTreeMap;

use super::{key_lemma_chain, plan_caps, ConfigKind, ConfigMatch, DetectError, Stage};
use crate::graph::{find_threads, profiles_from, Graph, GraphError, ThreadEnd, ThreadSet, ThreeVertexProfile, Vertex};

const BOUND: u32 = 14;
const LISTS: usize = 4;

fn accept(g: &Graph, kind: ConfigKind, roles: &[(&str, Vec<Vertex>)], stages: Vec<Stage>) -> Option<ConfigMatch> {
    plan_caps(g, &stages, BOUND, LISTS).ok().map(|_| ConfigMatch::new(kind, roles, stages))
}

pub fn find_config_thm3(g: &Graph) -> Result<ConfigMatch, DetectError> {
    for v in g.vertices().filter(|&v| g.degree(v) <= 1) {
        if let Some(m) = accept(g, ConfigKind::T3IsolatedOr1Vertex, &[("v", vec![v])], vec![Stage::KeyLemma { v }]) {
            return Ok(m);
        }
    }
    if let Some(m) = bare_cycle(g) {
        return Ok(m);
    }
    let threads = match find_threads(g) {
        Ok(t) => t,
        Err(GraphError::NoAnchor) => return Err(violation()),
        Err(e) => return Err(e.into()),
    };
    let profiles = profiles_from(g, &threads);
    let scans: [&dyn Fn() -> Option<ConfigMatch>; 5] = [
        &|| three_thread(g, &threads),
        &|| saturated(g, &threads),
        &|| adjacency_321(g, &threads, &profiles),
        &|| weak_111(g, &threads, &profiles),
        &|| pendant_triple(g),
    ];
    scans.iter().find_map(|scan| scan()).ok_or_else(violation)
}

/// When the threads of two configuration vertices run into each other the
/// staged plan re-adds a vertex twice; the configuration is then a small
/// block of its own and is re-added vertex by vertex instead.
fn chain_fallback(g: &Graph, kind: ConfigKind, roles: &[(&str, Vec<Vertex>)], ends: &[&[ThreadEnd]], core: &[Vertex]) -> Option<ConfigMatch> {
    let mut set: Vec<Vertex> = core.to_vec();
    set.extend(ends.iter().flat_map(|es| es.iter().flat_map(|e| e.interior.iter().copied())));
    set.sort_unstable();
    set.dedup();
    if set.len() > 8 {
        return None;
    }
    key_lemma_chain(g, &set, BOUND, LISTS).map(|stages| ConfigMatch::new(kind, roles, stages))
}

fn violation() -> DetectError {
    DetectError::StructuralClaimViolation(
        "none of the forbidden thread configurations occurs; mad(G) is at least 22/9 or δ(G) < 2 was missed".into(),
    )
}

fn bare_cycle(g: &Graph) -> Option<ConfigMatch> {
    for comp in g.components() {
        if comp.len() < 3 || comp.iter().any(|&v| g.degree(v) != 2) {
            continue;
        }
        let mut c = vec![comp[0]];
        let mut prev = comp[0];
        let mut cur = g.neighbors(comp[0])[0];
        while cur != comp[0] {
            c.push(cur);
            let next = *g.neighbors(cur).iter().find(|&&u| u != prev).expect("2-vertex");
            prev = cur;
            cur = next;
        }
        let n = c.len();
        let stage = if n == 3 {
            Stage::TwoThread { path: [c[0], c[1], c[2], c[0]] }
        } else {
            Stage::ThreeThread { path: [c[0], c[1], c[2], c[3], c[4 % n]] }
        };
        if let Some(m) = accept(g, ConfigKind::T3ThreeThread, &[("cycle", c)], vec![stage]) {
            return Some(m);
        }
    }
    None
}

fn three_thread(g: &Graph, threads: &ThreadSet) -> Option<ConfigMatch> {
    for t in threads.threads.iter().filter(|t| t.k() >= 3) {
        let i = &t.interior;
        let end = if t.k() == 3 { t.endpoints.1 } else { i[3] };
        let path = [t.endpoints.0, i[0], i[1], i[2], end];
        if let Some(m) = accept(g, ConfigKind::T3ThreeThread, &[("thread", path.to_vec())], vec![Stage::ThreeThread { path }]) {
            return Some(m);
        }
    }
    None
}

/// 2-thread stage re-adding `end.interior` next to its anchor `v`.
fn two_thread_from(v: Vertex, end: &ThreadEnd) -> Stage {
    Stage::TwoThread { path: [end.far, end.interior[1], end.interior[0], v] }
}

fn three_thread_through(v: Vertex, a: &ThreadEnd, b: &ThreadEnd) -> Stage {
    Stage::ThreeThread { path: [a.far, a.interior[0], v, b.interior[0], b.far] }
}

/// Distinct threads among `ends` (a cycle thread shows up from both sides).
fn distinct<'a>(ends: impl Iterator<Item = &'a ThreadEnd>) -> Vec<&'a ThreadEnd> {
    let mut out: Vec<&ThreadEnd> = Vec::new();
    for e in ends {
        if !out.iter().any(|o| o.thread == e.thread) {
            out.push(e);
        }
    }
    out
}

/// A 3- or 4-vertex with d-1 incident 2-threads, or with two incident
/// 1-threads and d-2 incident 2-threads.
fn saturated(g: &Graph, threads: &ThreadSet) -> Option<ConfigMatch> {
    for v in g.vertices().filter(|&v| matches!(g.degree(v), 3 | 4)) {
        let d = g.degree(v);
        let ends = threads.incident(g, v);
        let twos: Vec<&ThreadEnd> = ends.iter().filter(|e| e.interior.len() == 2).collect();
        let ones: Vec<&ThreadEnd> = ends.iter().filter(|e| e.interior.len() == 1).collect();
        let flat = |es: &[&ThreadEnd]| es.iter().flat_map(|e| e.interior.clone()).collect::<Vec<_>>();
        if twos.len() >= d - 1 {
            let chosen = distinct(twos.iter().take(d - 1).copied());
            let mut stages = vec![Stage::KeyLemma { v }];
            stages.extend(chosen.iter().map(|e| two_thread_from(v, e)));
            let roles = [("v", vec![v]), ("two_threads", flat(&chosen))];
            if let Some(m) = accept(g, ConfigKind::T3HighThreadVertex, &roles, stages) {
                return Some(m);
            }
            if chosen.len() < d - 1 || chosen.iter().any(|e| e.far == v) {
                if let Some(m) = chain_fallback(g, ConfigKind::T3HighThreadVertex, &roles, &[&ends], &[v]) {
                    return Some(m);
                }
            }
        }
        if ones.len() == 2 && twos.len() == d - 2 {
            let chosen = distinct(twos.iter().copied());
            let mut stages = vec![three_thread_through(v, ones[0], ones[1])];
            stages.extend(chosen.iter().map(|e| two_thread_from(v, e)));
            let roles = [("v", vec![v]), ("two_threads", flat(&chosen)), ("one_threads", flat(&ones))];
            if let Some(m) = accept(g, ConfigKind::T3HighThreadVertex, &roles, stages) {
                return Some(m);
            }
            if ends.iter().any(|e| e.far == v) {
                if let Some(m) = chain_fallback(g, ConfigKind::T3HighThreadVertex, &roles, &[&ends], &[v]) {
                    return Some(m);
                }
            }
        }
    }
    None
}

fn by_len(ends: &[ThreadEnd], k: usize) -> Vec<&ThreadEnd> {
    ends.iter().filter(|e| e.interior.len() == k).collect()
}

/// A 3₂,₁,₀-vertex adjacent to a 3₁,₁,₀-, 3₂,₀,₀- or 3₂,₁,₀-vertex.
fn adjacency_321(g: &Graph, threads: &ThreadSet, profiles: &BTreeMap<Vertex, ThreeVertexProfile>) -> Option<ConfigMatch> {
    for (&v, p) in profiles {
        if !p.is(2, 1, 0) {
            continue;
        }
        let ends = threads.incident(g, v);
        let (two, one, zero) = (by_len(&ends, 2)[0], by_len(&ends, 1)[0], by_len(&ends, 0)[0]);
        let w = zero.far;
        let Some(pw) = profiles.get(&w) else { continue };
        let wends: Vec<ThreadEnd> = threads.incident(g, w).into_iter().filter(|e| !(e.interior.is_empty() && e.far == v)).collect();
        let mut stages = match pw.profile {
            (1, 1, 0) => {
                let ones = by_len(&wends, 1);
                vec![three_thread_through(w, ones[0], ones[1])]
            }
            (2, 1, 0) => {
                let (q, p1) = (by_len(&wends, 2)[0], by_len(&wends, 1)[0]);
                let (q1, q2) = (q.interior[0], q.interior[1]);
                vec![Stage::KeyLemma { v: q2 }, Stage::ThreeThread { path: [p1.far, p1.interior[0], w, q1, q2] }]
            }
            (2, 0, 0) => {
                let q = by_len(&wends, 2)[0];
                vec![Stage::KeyLemma { v: w }, two_thread_from(w, q)]
            }
            _ => continue,
        };
        stages.push(Stage::TwoThread { path: [one.far, one.interior[0], v, w] });
        stages.push(two_thread_from(v, two));
        let w_threads: Vec<Vertex> = wends.iter().flat_map(|e| e.interior.clone()).collect();
        let roles = [
            ("v", vec![v]),
            ("w", vec![w]),
            ("v_threads", [two.interior.clone(), one.interior.clone()].concat()),
            ("w_threads", w_threads),
        ];
        if let Some(m) = accept(g, ConfigKind::T3Adjacency321, &roles, stages) {
            return Some(m);
        }
        if wends.iter().any(|e| e.far == v) {
            let wall = threads.incident(g, w);
            if let Some(m) = chain_fallback(g, ConfigKind::T3Adjacency321, &roles, &[&ends, &wall], &[v, w]) {
                return Some(m);
            }
        }
    }
    None
}

/// A 3₁,₁,₁-vertex with a weak 3-neighbor of type 3₁,₁,₁ or 3₂,₁,₀.
fn weak_111(g: &Graph, threads: &ThreadSet, profiles: &BTreeMap<Vertex, ThreeVertexProfile>) -> Option<ConfigMatch> {
    for (&v, p) in profiles {
        if !p.is(1, 1, 1) {
            continue;
        }
        let ends = threads.incident(g, v);
        for (k, e) in ends.iter().enumerate() {
            let (x, w) = (e.interior[0], e.far);
            let Some(pw) = profiles.get(&w) else { continue };
            if w == v {
                continue;
            }
            let others: Vec<&ThreadEnd> = ends.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, o)| o).collect();
            let wends: Vec<ThreadEnd> = threads.incident(g, w).into_iter().filter(|o| o.interior != [x]).collect();
            let mut stages = vec![three_thread_through(v, others[0], others[1])];
            match pw.profile {
                (1, 1, 1) => stages.push(three_thread_through(w, &wends[0], &wends[1])),
                (2, 1, 0) => {
                    let Some(q) = by_len(&wends, 2).first().copied() else { continue };
                    if wends.len() != 2 {
                        continue;
                    }
                    stages.push(Stage::KeyLemma { v: w });
                    stages.push(two_thread_from(w, q));
                }
                _ => continue,
            }
            stages.push(Stage::KeyLemma { v: x });
            let roles = [("v", vec![v]), ("w", vec![w]), ("x", vec![x])];
            if let Some(m) = accept(g, ConfigKind::T3Weak111, &roles, stages) {
                return Some(m);
            }
            if wends.iter().chain(others.iter().copied()).any(|o| o.far == v || o.far == w) {
                let wall = threads.incident(g, w);
                if let Some(m) = chain_fallback(g, ConfigKind::T3Weak111, &roles, &[&ends, &wall], &[v, w]) {
                    return Some(m);
                }
            }
        }
    }
    None
}

fn pendant_triple(g: &Graph) -> Option<ConfigMatch> {
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        let nb = g.neighbors(v);
        if nb.iter().any(|&u| g.degree(u) != 2) {
            continue;
        }
        for r in 0..3 {
            let w = [nb[r], nb[(r + 1) % 3], nb[(r + 2) % 3]];
            let roles = [("v", vec![v]), ("w", w.to_vec())];
            if let Some(m) = accept(g, ConfigKind::T3PendantTriple, &roles, vec![Stage::PendantTriple { v, w }]) {
                return Some(m);
            }
        }
    }
    None
}
