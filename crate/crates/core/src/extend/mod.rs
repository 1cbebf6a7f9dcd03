//! Extension procedures: replay a recoloring sequence of a subgraph on the
//! full graph, inserting recolorings of the added vertices just before the
//! inner steps that would clash with them.
//!
//! Every procedure is a [`Strategy`] driven by [`splice`], which owns the
//! current coloring and checks each emitted step, so a wrong choice surfaces
//! as [`ExtendError::Internal`] instead of a silently bad sequence.

mod key_lemma;
mod six;
mod thread;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::coloring::{Color, Coloring, ListAssignment, RecoloringSequence, Step};
use crate::graph::{Graph, Vertex};

pub use key_lemma::{extend_key_lemma, key_lemma_bound};
pub use six::{extend_deg3_two_deg3_neighbors, extend_deg4_four_deg3_neighbors, w_cap};
pub use thread::{extend_pendant_triple, extend_three_thread, extend_two_thread};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    /// The configuration or lists do not meet the procedure's hypotheses.
    #[error("extension not applicable: {0}")]
    Inapplicable(String),
    /// The inner sequence does not go from α to β on the subgraph.
    #[error("inner sequence breaks its contract: {0}")]
    ContractBreach(String),
    /// A forced move found no color, or an emitted step was improper.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// The budget of one Key Lemma application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionBudget {
    pub t: u32,
    pub s: u32,
    pub bound: u32,
}

/// Positions and colors of the inner steps on a fixed vertex set.
#[derive(Debug, Clone, Default)]
pub(crate) struct Stream {
    idx: Vec<usize>,
    colors: Vec<Color>,
}

impl Stream {
    pub(crate) fn new(steps: &[Step], member: impl Fn(Vertex) -> bool) -> Self {
        let mut s = Stream::default();
        for (i, st) in steps.iter().enumerate() {
            if member(st.vertex) {
                s.idx.push(i);
                s.colors.push(st.color);
            }
        }
        s
    }

    pub(crate) fn len(&self) -> usize {
        self.idx.len()
    }

    /// Entries strictly before inner step `i`.
    pub(crate) fn rank(&self, i: usize) -> usize {
        self.idx.partition_point(|&j| j < i)
    }

    /// Colors of at most `k` entries from inner step `i` on.
    pub(crate) fn upcoming(&self, i: usize, k: usize) -> &[Color] {
        let r = self.rank(i);
        &self.colors[r..(r + k).min(self.colors.len())]
    }
}

/// Mutable replay state shared by all strategies.
pub(crate) struct Splicer<'a> {
    pub g: &'a Graph,
    pub lists: &'a ListAssignment,
    pub inner: &'a [Step],
    pub beta: &'a Coloring,
    cur: Coloring,
    out: Vec<Step>,
}

impl Splicer<'_> {
    pub fn color(&self, v: Vertex) -> Color {
        self.cur.at(v)
    }

    pub fn target(&self, v: Vertex) -> Color {
        self.beta.at(v)
    }

    /// Current colors on `N(v)`.
    pub fn around(&self, v: Vertex) -> Vec<Color> {
        self.g.neighbors(v).iter().map(|&u| self.cur.at(u)).collect()
    }

    /// Smallest color of `L(v)` outside `forbidden`.
    pub fn pick(&self, v: Vertex, forbidden: &[Color]) -> Option<Color> {
        self.lists.first_free(v, forbidden)
    }

    /// `pick`, preferring `wanted` when it is allowed.
    pub fn pick_preferring(&self, v: Vertex, wanted: Color, forbidden: &[Color]) -> Option<Color> {
        if self.lists.allows(v, wanted) && !forbidden.contains(&wanted) {
            Some(wanted)
        } else {
            self.pick(v, forbidden)
        }
    }

    pub fn pick_or_fail(&self, v: Vertex, forbidden: &[Color]) -> Result<Color, ExtendError> {
        self.pick(v, forbidden)
            .ok_or_else(|| ExtendError::Internal(format!("no free color for vertex {v} avoiding {forbidden:?}")))
    }

    /// Emit a recoloring of an added vertex.
    pub fn recolor(&mut self, v: Vertex, c: Color) -> Result<(), ExtendError> {
        self.check(v, c)?;
        self.cur.set(v, c);
        self.out.push(Step { vertex: v, color: c, depth: 0 });
        Ok(())
    }

    /// Recolor `v` to the smallest color outside `forbidden` and its own.
    pub fn dodge(&mut self, v: Vertex, forbidden: &[Color]) -> Result<(), ExtendError> {
        let mut f = forbidden.to_vec();
        f.push(self.color(v));
        let c = self.pick_or_fail(v, &f)?;
        self.recolor(v, c)
    }

    /// Move `v` to β(v) unless it is already there.
    pub fn finish(&mut self, v: Vertex) -> Result<(), ExtendError> {
        let b = self.target(v);
        if self.color(v) != b {
            self.recolor(v, b)?;
        }
        Ok(())
    }

    fn check(&self, v: Vertex, c: Color) -> Result<(), ExtendError> {
        if self.cur.get(v) == Some(c) {
            return Err(ExtendError::Internal(format!("vertex {v} already has color {c}")));
        }
        if !self.lists.allows(v, c) {
            return Err(ExtendError::Internal(format!("color {c} not in the list of vertex {v}")));
        }
        if let Some(&u) = self.g.neighbors(v).iter().find(|&&u| self.cur.get(u) == Some(c)) {
            return Err(ExtendError::Internal(format!("vertex {v} would share color {c} with {u}")));
        }
        Ok(())
    }

    /// Settle `pending` added vertices at β. A vertex can move once no
    /// neighbor holds its target; a deadlock among pending vertices is
    /// broken by parking one of them on a color that blocks nobody. Returns
    /// the vertices left when `park` is off and nothing can move.
    pub fn settle(&mut self, pending: &[Vertex], park: bool) -> Result<Vec<Vertex>, ExtendError> {
        let mut pending: Vec<Vertex> = pending.to_vec();
        let mut parked = BTreeSet::new();
        loop {
            pending.retain(|&w| self.color(w) != self.target(w));
            if pending.is_empty() {
                return Ok(pending);
            }
            if let Some(&w) = pending.iter().find(|&&w| !self.around(w).contains(&self.target(w))) {
                self.recolor(w, self.target(w))?;
                continue;
            }
            if !park {
                return Ok(pending);
            }
            // park a vertex whose color is some pending neighbor's target
            let Some(&w) = pending.iter().find(|&&w| {
                !parked.contains(&w)
                    && self.g.neighbors(w).iter().any(|&u| pending.contains(&u) && self.target(u) == self.color(w))
            }) else {
                return Err(ExtendError::Internal(format!("cannot settle {pending:?}")));
            };
            let mut f = self.around(w);
            f.extend(self.g.neighbors(w).iter().filter(|u| pending.contains(u)).map(|&u| self.target(u)));
            self.dodge(w, &f)?;
            parked.insert(w);
        }
    }
}

pub(crate) trait Strategy {
    /// Called before inner step `i` is replayed.
    fn before(&mut self, sp: &mut Splicer, i: usize) -> Result<(), ExtendError>;
    /// Called once the inner sequence is exhausted; must reach β.
    fn finish(&mut self, sp: &mut Splicer) -> Result<(), ExtendError>;
}

/// Check the inner contract, replay it with the strategy's insertions and
/// verify that the result reaches β on `g` and restricts back to `inner`.
pub(crate) fn splice<S: Strategy>(
    g: &Graph,
    lists: &ListAssignment,
    added: &[Vertex],
    inner: &RecoloringSequence,
    alpha: &Coloring,
    beta: &Coloring,
    strategy: &mut S,
) -> Result<RecoloringSequence, ExtendError> {
    let added_set: BTreeSet<Vertex> = added.iter().copied().collect();
    for &v in added {
        if !g.contains(v) {
            return Err(ExtendError::Inapplicable(format!("vertex {v} is not in the graph")));
        }
    }
    let inner_end = inner.final_coloring();
    for v in g.vertices() {
        let (a, b) = match (alpha.get(v), beta.get(v)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(ExtendError::ContractBreach(format!("α or β missing at vertex {v}"))),
        };
        if added_set.contains(&v) {
            continue;
        }
        if inner.start.get(v) != Some(a) {
            return Err(ExtendError::ContractBreach(format!("inner does not start at α on vertex {v}")));
        }
        if inner_end.get(v) != Some(b) {
            return Err(ExtendError::ContractBreach(format!("inner does not end at β on vertex {v}")));
        }
    }
    if let Some(s) = inner.steps.iter().find(|s| !g.contains(s.vertex) || added_set.contains(&s.vertex)) {
        return Err(ExtendError::ContractBreach(format!("inner recolors vertex {} outside the subgraph", s.vertex)));
    }
    let start = alpha.restrict_to(g);
    let mut sp = Splicer {
        g,
        lists,
        inner: &inner.steps,
        beta,
        cur: start.clone(),
        out: Vec::with_capacity(inner.steps.len() + 4 * added.len()),
    };
    for i in 0..inner.steps.len() {
        strategy.before(&mut sp, i)?;
        let st = inner.steps[i];
        sp.check(st.vertex, st.color)
            .map_err(|e| ExtendError::Internal(format!("inner step {i} blocked: {e}")))?;
        sp.cur.set(st.vertex, st.color);
        sp.out.push(st);
    }
    strategy.finish(&mut sp)?;
    if let Some(v) = g.vertices().find(|&v| sp.cur.get(v) != beta.get(v)) {
        return Err(ExtendError::Internal(format!("endgame left vertex {v} off β")));
    }
    let restricted: Vec<Step> = sp.out.iter().copied().filter(|s| !added_set.contains(&s.vertex)).collect();
    if restricted != inner.steps {
        return Err(ExtendError::Internal("output does not restrict to the inner sequence".into()));
    }
    Ok(RecoloringSequence { start, steps: sp.out })
}

/// Fail unless each listed vertex was recolored at most its cap.
pub(crate) fn enforce_caps(seq: &RecoloringSequence, caps: &[(Vertex, u32)]) -> Result<(), ExtendError> {
    for &(v, cap) in caps {
        let c = seq.count(v);
        if c > cap {
            return Err(ExtendError::Internal(format!("vertex {v} recolored {c} times, cap {cap}")));
        }
    }
    Ok(())
}

pub(crate) fn require_lists(g: &Graph, lists: &ListAssignment, vs: &[Vertex], k: usize) -> Result<(), ExtendError> {
    for &v in vs {
        if lists.list(v).len() < k {
            return Err(ExtendError::Inapplicable(format!("vertex {v} needs a list of {k} colors")));
        }
        if !g.contains(v) {
            return Err(ExtendError::Inapplicable(format!("vertex {v} is not in the graph")));
        }
    }
    Ok(())
}

pub(crate) fn require_neighbors(g: &Graph, v: Vertex, expected: &[Vertex]) -> Result<(), ExtendError> {
    let mut want = expected.to_vec();
    want.sort_unstable();
    want.dedup();
    if g.neighbors(v) != want.as_slice() {
        return Err(ExtendError::Inapplicable(format!(
            "vertex {v} has neighbors {:?}, expected {want:?}",
            g.neighbors(v)
        )));
    }
    Ok(())
}


#[cfg(test)]
mod randomized;
