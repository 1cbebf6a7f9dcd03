//! Reducible configurations: search, plans and an independent re-check.
//!
//! A detector returns a [`ConfigMatch`] carrying a plan, an ordered list of
//! [`Stage`]s. The solver deletes every vertex the plan adds, recurses, then
//! re-adds the stages in order, each by its extension procedure. Before a
//! plan is accepted, [`plan_caps`] replays the budget arithmetic on the
//! stage graphs; plans whose caps exceed the theorem bound (degenerate
//! coincidences of roles) are skipped and the scan moves on.

mod check;
mod thm1;
mod thm2;
mod thm3;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::extend::{key_lemma_bound, w_cap};
use crate::graph::{Graph, GraphError, Vertex};

pub use check::check_match;
pub use thm1::find_config_thm1;
pub use thm2::find_config_thm2;
pub use thm3::find_config_thm3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetectError {
    #[error("no reducible configuration found: {0}")]
    StructuralClaimViolation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigKind {
    Deg2OrLess,
    T1aFiveVertexThree3Nbrs,
    T1bPath,
    T1cFace3444,
    T1dFace5With3,
    T2iTwoMinus,
    T2iiThreeVertexTwo3Nbrs,
    T2iiiFourVertexFour3Nbrs,
    T3IsolatedOr1Vertex,
    T3ThreeThread,
    T3PendantTriple,
    T3HighThreadVertex,
    T3Adjacency321,
    T3Weak111,
    HighDegreeBaseline,
}

impl ConfigKind {
    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::Deg2OrLess => "Deg2OrLess",
            ConfigKind::T1aFiveVertexThree3Nbrs => "T1a_5vertex_three_3nbrs",
            ConfigKind::T1bPath => "T1b_path",
            ConfigKind::T1cFace3444 => "T1c_4face_3444",
            ConfigKind::T1dFace5With3 => "T1d_4face_5with3",
            ConfigKind::T2iTwoMinus => "T2i_2minus",
            ConfigKind::T2iiThreeVertexTwo3Nbrs => "T2ii_3v_two_3nbrs",
            ConfigKind::T2iiiFourVertexFour3Nbrs => "T2iii_4v_four_3nbrs",
            ConfigKind::T3IsolatedOr1Vertex => "T3_isolated_or_1vertex",
            ConfigKind::T3ThreeThread => "T3_3thread",
            ConfigKind::T3PendantTriple => "T3_pendant_triple",
            ConfigKind::T3HighThreadVertex => "T3_high_thread_vertex",
            ConfigKind::T3Adjacency321 => "T3_321_adjacency",
            ConfigKind::T3Weak111 => "T3_111_weak",
            ConfigKind::HighDegreeBaseline => "HighDegreeBaseline",
        }
    }
}

/// One re-insertion step of a plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stage {
    KeyLemma { v: Vertex },
    /// `path[1], path[2]` are added; `path[3]` is the end whose count bounds `path[2]`.
    TwoThread { path: [Vertex; 4] },
    ThreeThread { path: [Vertex; 5] },
    PendantTriple { v: Vertex, w: [Vertex; 3] },
    Deg3TwoDeg3 { v: Vertex, w: [Vertex; 2], x: Vertex },
    Deg4FourDeg3 { v: Vertex, w: [Vertex; 4] },
}

impl Stage {
    pub fn added(&self) -> Vec<Vertex> {
        match self {
            Stage::KeyLemma { v } => vec![*v],
            Stage::TwoThread { path } => vec![path[1], path[2]],
            Stage::ThreeThread { path } => path[1..4].to_vec(),
            Stage::PendantTriple { v, w } => vec![*v, w[0], w[1], w[2]],
            Stage::Deg3TwoDeg3 { v, w, .. } => vec![*v, w[0], w[1]],
            Stage::Deg4FourDeg3 { v, w } => vec![*v, w[0], w[1], w[2], w[3]],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigMatch {
    pub kind: ConfigKind,
    pub roles: BTreeMap<String, Vec<Vertex>>,
    /// Re-insertion order; the recursion deletes their union.
    pub stages: Vec<Stage>,
    /// Per-stage vertex sets in deletion order (the reverse of `stages`).
    pub deletion_set: Vec<Vec<Vertex>>,
}

impl ConfigMatch {
    pub(crate) fn new(kind: ConfigKind, roles: &[(&str, Vec<Vertex>)], stages: Vec<Stage>) -> Self {
        let deletion_set = stages.iter().rev().map(Stage::added).collect();
        let roles = roles.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        ConfigMatch { kind, roles, stages, deletion_set }
    }

    pub fn deleted(&self) -> Vec<Vertex> {
        self.stages.iter().flat_map(Stage::added).collect()
    }
}

fn require_nbrs(h: &Graph, v: Vertex, want: &[Vertex]) -> Result<(), String> {
    let mut w = want.to_vec();
    w.sort_unstable();
    w.dedup();
    if h.neighbors(v) != w.as_slice() {
        return Err(format!("vertex {v} has neighbors {:?} in its stage graph, plan needs {w:?}", h.neighbors(v)));
    }
    Ok(())
}

/// Replay the budget arithmetic of a plan. Vertices outside the plan may
/// be recolored `bound` times (once if at most one of them is left); every
/// stage's cap is computed on its own stage graph. Returns the cap of each
/// added vertex, or why the plan does not fit under `bound`.
pub fn plan_caps(g: &Graph, stages: &[Stage], bound: u32, list_size: usize) -> Result<Vec<(Vertex, u32)>, String> {
    let added: Vec<Vec<Vertex>> = stages.iter().map(Stage::added).collect();
    let all: Vec<Vertex> = added.iter().flatten().copied().collect();
    let mut seen = vec![false; g.capacity()];
    for &v in &all {
        if !g.contains(v) || seen[v] {
            return Err(format!("plan adds vertex {v} twice or it is not in the graph"));
        }
        seen[v] = true;
    }
    let rest = g.without(&all);
    let old_cap = if rest.n() <= 1 { 1 } else { bound };
    let mut cap: Vec<Option<u32>> = vec![None; g.capacity()];
    for v in rest.vertices() {
        cap[v] = Some(old_cap);
    }
    let mut out = Vec::new();
    for (j, stage) in stages.iter().enumerate() {
        let later: Vec<Vertex> = added[j + 1..].iter().flatten().copied().collect();
        let h = g.without(&later);
        let c = |u: Vertex, cap: &[Option<u32>]| cap[u].ok_or_else(|| format!("vertex {u} used before it is placed"));
        let mut set = |v: Vertex, x: u32, cap: &mut Vec<Option<u32>>| {
            cap[v] = Some(x);
            out.push((v, x));
        };
        match stage {
            Stage::KeyLemma { v } => {
                let s = list_size as i64 - h.degree(*v) as i64 - 1;
                if s <= 0 {
                    return Err(format!("vertex {v} has no slack"));
                }
                let t = h.neighbors(*v).iter().map(|&u| c(u, &cap)).sum::<Result<u32, _>>()?;
                set(*v, key_lemma_bound(t, s as u32), &mut cap);
            }
            Stage::TwoThread { path } => {
                require_nbrs(&h, path[1], &[path[0], path[2]])?;
                require_nbrs(&h, path[2], &[path[1], path[3]])?;
                let (c0, c3) = (c(path[0], &cap)?, c(path[3], &cap)?);
                if c3 > 11 || list_size < 4 {
                    return Err(format!("2-thread end {} may move {c3} times", path[3]));
                }
                if path[0] == path[3] && c0 > 1 {
                    return Err(format!("2-thread loops back to {}, which may move {c0} times", path[0]));
                }
                set(path[2], c3 + 3, &mut cap);
                set(path[1], c0.max(2), &mut cap);
            }
            Stage::ThreeThread { path } => {
                for k in 1..4 {
                    require_nbrs(&h, path[k], &[path[k - 1], path[k + 1]])?;
                }
                if list_size < 4 {
                    return Err("3-thread needs 4-lists".into());
                }
                let (c0, c4) = (c(path[0], &cap)?, c(path[4], &cap)?);
                set(path[2], 4, &mut cap);
                set(path[1], c0.max(2), &mut cap);
                set(path[3], c4.max(2), &mut cap);
            }
            Stage::PendantTriple { v, w } => {
                require_nbrs(&h, *v, w)?;
                let mut x = [0; 3];
                for i in 0..3 {
                    let o: Vec<Vertex> = h.neighbors(w[i]).iter().copied().filter(|u| u != v).collect();
                    if o.len() != 1 {
                        return Err(format!("vertex {} is not a 2-neighbor of {v}", w[i]));
                    }
                    x[i] = o[0];
                }
                let c1 = c(x[0], &cap)?;
                if c1 > 9 || list_size < 4 {
                    return Err(format!("vertex {} may move {c1} > 9 times", x[0]));
                }
                let (c2, c3) = (c(x[1], &cap)?, c(x[2], &cap)?);
                set(*v, 4, &mut cap);
                set(w[1], c2.max(2), &mut cap);
                set(w[2], c3.max(2), &mut cap);
                set(w[0], key_lemma_bound(4 + c1, list_size as u32 - 3), &mut cap);
            }
            Stage::Deg3TwoDeg3 { v, w, x } => {
                require_nbrs(&h, *v, &[w[0], w[1], *x])?;
                let cx = c(*x, &cap)?;
                let here = [*v, w[0], w[1]];
                for &wi in w {
                    let (t, parked) = spoke_budget(&h, wi, *v, &here, &cap)?;
                    set(wi, w_cap(t, parked), &mut cap);
                }
                set(*v, 6 + cx.div_ceil(2), &mut cap);
            }
            Stage::Deg4FourDeg3 { v, w } => {
                require_nbrs(&h, *v, w)?;
                let here = [*v, w[0], w[1], w[2], w[3]];
                for &wi in w {
                    let (t, parked) = spoke_budget(&h, wi, *v, &here, &cap)?;
                    set(wi, w_cap(t, parked), &mut cap);
                }
                set(*v, 10, &mut cap);
            }
        }
    }
    if let Some(&(v, x)) = out.iter().find(|&&(_, x)| x > bound) {
        return Err(format!("vertex {v} would need {x} > {bound} recolorings"));
    }
    Ok(out)
}

fn spoke_budget(h: &Graph, w: Vertex, v: Vertex, here: &[Vertex], cap: &[Option<u32>]) -> Result<(u32, bool), String> {
    if h.degree(w) != 3 {
        return Err(format!("vertex {w} is not a 3-vertex"));
    }
    let mut t = 0;
    let mut parked = false;
    for &u in h.neighbors(w) {
        if u == v {
            continue;
        }
        if here.contains(&u) {
            parked = true;
        } else {
            t += cap[u].ok_or_else(|| format!("vertex {u} used before it is placed"))?;
        }
    }
    Ok((t, parked))
}

/// Lexicographic successor, `false` after the last permutation.
pub(crate) fn next_permutation(a: &mut [Vertex]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("pivot has a successor");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// First order (lexicographic) in which adding `set` one vertex at a time
/// by the Key Lemma stays within `bound`.
pub(crate) fn key_lemma_chain(g: &Graph, set: &[Vertex], bound: u32, list_size: usize) -> Option<Vec<Stage>> {
    let mut order = set.to_vec();
    order.sort_unstable();
    loop {
        let stages: Vec<Stage> = order.iter().map(|&v| Stage::KeyLemma { v }).collect();
        if plan_caps(g, &stages, bound, list_size).is_ok() {
            return Some(stages);
        }
        if !next_permutation(&mut order) {
            return None;
        }
    }
}
