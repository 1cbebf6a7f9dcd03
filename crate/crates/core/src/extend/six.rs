//! Interleaved extensions for 6-lists: a 3-vertex with two 3-neighbors, and
//! a 4-vertex with four 3-neighbors.

use super::{enforce_caps, require_lists, require_neighbors, splice, ExtendError, Splicer, Strategy, Stream};
use crate::coloring::{Coloring, ListAssignment, RecoloringSequence};
use crate::graph::{Graph, Vertex};

/// Cap on a 3-neighbor `w` whose old neighbors are recolored `t` times in
/// total; `parked` adds the move that breaks a deadlock with an adjacent
/// added vertex.
pub fn w_cap(t: u32, parked: bool) -> u32 {
    2 + t.saturating_sub(6).div_ceil(2) + 1 + u32::from(parked)
}

/// A 3-neighbor `w` of the center: its first two moves look three colors
/// ahead on its other neighbors, later ones two, and those also avoid the
/// center.
struct Spoke {
    w: Vertex,
    stream: Stream,
    moves: u32,
}

/// How the center gets out of a spoke's way.
trait Center {
    fn v(&self) -> Vertex;
    fn clear(&self, sp: &mut Splicer, i: usize) -> Result<(), ExtendError>;
}

impl Spoke {
    fn new(g: &Graph, inner: &RecoloringSequence, v: Vertex, w: Vertex, added: &[Vertex]) -> Self {
        let stream = Stream::new(&inner.steps, |u| u != v && !added.contains(&u) && g.has_edge(u, w));
        Spoke { w, stream, moves: 0 }
    }

    fn before(&mut self, sp: &mut Splicer, i: usize, center: &dyn Center) -> Result<(), ExtendError> {
        let st = sp.inner[i];
        let v = center.v();
        if st.vertex == v || !sp.g.has_edge(st.vertex, self.w) || st.color != sp.color(self.w) {
            return Ok(());
        }
        let mut f: Vec<_> = sp.g.neighbors(self.w).iter().filter(|&&u| u != v).map(|&u| sp.color(u)).collect();
        f.push(sp.color(self.w));
        let ahead = if self.moves < 2 { 3 } else { 2 };
        f.extend_from_slice(self.stream.upcoming(i, ahead));
        let mut with_v = f.clone();
        with_v.push(sp.color(v));
        self.moves += 1;
        if let Some(c) = sp.pick(self.w, &with_v) {
            return sp.recolor(self.w, c);
        }
        if ahead == 2 {
            return Err(ExtendError::Internal(format!("no free color for vertex {}", self.w)));
        }
        let c = sp.pick_or_fail(self.w, &f)?;
        center.clear(sp, i)?;
        sp.recolor(self.w, c)
    }

    fn cap(&self, sp_graph: &Graph, added: &[Vertex], v: Vertex) -> u32 {
        let parked = sp_graph.neighbors(self.w).iter().any(|u| *u != v && added.contains(u));
        w_cap(self.stream.len() as u32, parked)
    }
}

struct ThreeCenter {
    v: Vertex,
    x: Vertex,
    xs: Stream,
}

impl Center for ThreeCenter {
    fn v(&self) -> Vertex {
        self.v
    }

    fn clear(&self, sp: &mut Splicer, i: usize) -> Result<(), ExtendError> {
        let mut f = sp.around(self.v);
        f.extend_from_slice(self.xs.upcoming(i, 1));
        sp.dodge(self.v, &f)
    }
}

struct Deg3TwoDeg3 {
    center: ThreeCenter,
    spokes: Vec<Spoke>,
}

impl Strategy for Deg3TwoDeg3 {
    fn before(&mut self, sp: &mut Splicer, i: usize) -> Result<(), ExtendError> {
        for s in &mut self.spokes {
            s.before(sp, i, &self.center)?;
        }
        let (v, x) = (self.center.v, self.center.x);
        let st = sp.inner[i];
        if st.vertex == x && st.color == sp.color(v) {
            let mut f = sp.around(v);
            f.extend_from_slice(self.center.xs.upcoming(i, 2));
            sp.dodge(v, &f)?;
        }
        Ok(())
    }

    fn finish(&mut self, sp: &mut Splicer) -> Result<(), ExtendError> {
        let v = self.center.v;
        let ws: Vec<Vertex> = self.spokes.iter().map(|s| s.w).collect();
        let targets: Vec<_> = ws.iter().map(|&w| sp.target(w)).collect();
        if targets.contains(&sp.color(v)) {
            let mut f = sp.around(v);
            f.push(sp.color(v));
            f.extend_from_slice(&targets);
            let c = sp
                .pick_preferring(v, sp.target(v), &f)
                .ok_or_else(|| ExtendError::Internal(format!("no free color for vertex {v} avoiding {f:?}")))?;
            sp.recolor(v, c)?;
        }
        sp.settle(&ws, true)?;
        sp.finish(v)
    }
}

fn six_preconditions(g: &Graph, lists: &ListAssignment, v: Vertex, ws: &[Vertex], inner: &RecoloringSequence) -> Result<(), ExtendError> {
    let mut all = vec![v];
    all.extend_from_slice(ws);
    require_lists(g, lists, &all, 6)?;
    for &w in ws {
        if g.degree(w) != 3 {
            return Err(ExtendError::Inapplicable(format!("vertex {w} has degree {}", g.degree(w))));
        }
    }
    if inner.max_count() > 12 {
        return Err(ExtendError::Inapplicable(format!("inner sequence is only {}-good", inner.max_count())));
    }
    Ok(())
}

/// A 3-vertex `v` with 3-neighbors `w1, w2` and third neighbor `x`, all
/// three added on top of a 12-good inner sequence.
#[allow(clippy::too_many_arguments)]
pub fn extend_deg3_two_deg3_neighbors(
    g: &Graph,
    lists: &ListAssignment,
    v: Vertex,
    w: [Vertex; 2],
    x: Vertex,
    inner: &RecoloringSequence,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<RecoloringSequence, ExtendError> {
    require_neighbors(g, v, &[w[0], w[1], x])?;
    six_preconditions(g, lists, v, &w, inner)?;
    if w.contains(&x) || w[0] == w[1] {
        return Err(ExtendError::Inapplicable("roles must be distinct".into()));
    }
    let added = [v, w[0], w[1]];
    let spokes: Vec<Spoke> = w.iter().map(|&wi| Spoke::new(g, inner, v, wi, &added)).collect();
    let xs = Stream::new(&inner.steps, |u| u == x);
    let mut caps: Vec<(Vertex, u32)> = spokes.iter().map(|s| (s.w, s.cap(g, &added, v))).collect();
    caps.push((v, 4 + (xs.len() as u32).div_ceil(2) + 2));
    let mut strat = Deg3TwoDeg3 { center: ThreeCenter { v, x, xs }, spokes };
    let seq = splice(g, lists, &added, inner, alpha, beta, &mut strat)?;
    enforce_caps(&seq, &caps)?;
    Ok(seq)
}

struct FourCenter {
    v: Vertex,
}

impl Center for FourCenter {
    fn v(&self) -> Vertex {
        self.v
    }

    fn clear(&self, sp: &mut Splicer, _: usize) -> Result<(), ExtendError> {
        let f = sp.around(self.v);
        sp.dodge(self.v, &f)
    }
}

struct Deg4FourDeg3 {
    center: FourCenter,
    spokes: Vec<Spoke>,
}

impl Strategy for Deg4FourDeg3 {
    fn before(&mut self, sp: &mut Splicer, i: usize) -> Result<(), ExtendError> {
        for s in &mut self.spokes {
            s.before(sp, i, &self.center)?;
        }
        Ok(())
    }

    fn finish(&mut self, sp: &mut Splicer) -> Result<(), ExtendError> {
        let v = self.center.v;
        let ws: Vec<Vertex> = self.spokes.iter().map(|s| s.w).collect();
        let first: Vec<Vertex> = ws.iter().copied().filter(|&w| sp.target(w) != sp.color(v)).collect();
        sp.settle(&first, false)?;
        let rest: Vec<Vertex> = ws.iter().copied().filter(|&w| sp.color(w) != sp.target(w)).collect();
        if rest.iter().any(|&w| sp.target(w) == sp.color(v)) {
            let mut f = sp.around(v);
            f.push(sp.color(v));
            let mut strict = f.clone();
            strict.extend(rest.iter().map(|&w| sp.target(w)));
            let c = sp
                .pick_preferring(v, sp.target(v), &strict)
                .or_else(|| sp.pick(v, &f))
                .ok_or_else(|| ExtendError::Internal(format!("no free color for vertex {v} avoiding {f:?}")))?;
            sp.recolor(v, c)?;
        }
        sp.settle(&rest, true)?;
        sp.finish(v)
    }
}

/// A 4-vertex `v` whose neighbors `w1..w4` all have degree 3.
pub fn extend_deg4_four_deg3_neighbors(
    g: &Graph,
    lists: &ListAssignment,
    v: Vertex,
    w: [Vertex; 4],
    inner: &RecoloringSequence,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<RecoloringSequence, ExtendError> {
    require_neighbors(g, v, &w)?;
    six_preconditions(g, lists, v, &w, inner)?;
    let added = [v, w[0], w[1], w[2], w[3]];
    let spokes: Vec<Spoke> = w.iter().map(|&wi| Spoke::new(g, inner, v, wi, &added)).collect();
    let mut caps: Vec<(Vertex, u32)> = spokes.iter().map(|s| (s.w, s.cap(g, &added, v))).collect();
    caps.push((v, 10));
    let mut strat = Deg4FourDeg3 { center: FourCenter { v }, spokes };
    let seq = splice(g, lists, &added, inner, alpha, beta, &mut strat)?;
    enforce_caps(&seq, &caps)?;
    Ok(seq)
}
