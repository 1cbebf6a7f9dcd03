use super::{
    enforce_caps, extend_key_lemma, key_lemma_bound, require_lists, require_neighbors, splice, ExtendError, Splicer,
    Strategy, Stream,
};
use crate::coloring::{Coloring, ListAssignment, RecoloringSequence};
use crate::graph::{Graph, Vertex};

/// The thread vertex `near` next to an old anchor. On the anchor's first
/// recoloring it moves off the anchor's next two colors; afterwards it only
/// moves when the anchor is about to take its color.
struct NearAnchor {
    anchor: Vertex,
    near: Vertex,
    mid: Vertex,
    stream: Stream,
}

impl NearAnchor {
    fn before(&self, sp: &mut Splicer, i: usize) -> Result<(), ExtendError> {
        let st = sp.inner[i];
        if st.vertex != self.anchor {
            return Ok(());
        }
        let (cur_a, cur_w) = (sp.color(self.anchor), sp.color(self.near));
        if self.stream.rank(i) == 0 {
            let next = self.stream.upcoming(i, 2);
            if !next.contains(&cur_w) {
                return Ok(());
            }
            let mut f = vec![cur_a, cur_w];
            f.extend_from_slice(next);
            let mut with_mid = f.clone();
            with_mid.push(sp.color(self.mid));
            if let Some(c) = sp.pick(self.near, &with_mid) {
                return sp.recolor(self.near, c);
            }
            // only the middle vertex's color is left: move it out of the way
            let c = sp.pick_or_fail(self.near, &f)?;
            let mut fm = sp.around(self.mid);
            if sp.g.has_edge(self.mid, self.anchor) {
                fm.push(st.color);
            }
            sp.dodge(self.mid, &fm)?;
            sp.recolor(self.near, c)
        } else if cur_w == st.color {
            let f = [cur_a, st.color, sp.color(self.mid)];
            sp.dodge(self.near, &f)
        } else {
            Ok(())
        }
    }
}

fn thread_preconditions(g: &Graph, lists: &ListAssignment, path: &[Vertex], inner: &RecoloringSequence) -> Result<(), ExtendError> {
    let interior = &path[1..path.len() - 1];
    require_lists(g, lists, interior, 4)?;
    for (k, &v) in interior.iter().enumerate() {
        require_neighbors(g, v, &[path[k], path[k + 2]])?;
    }
    for &end in [path[0], path[path.len() - 1]].iter() {
        if !g.contains(end) || interior.contains(&end) {
            return Err(ExtendError::Inapplicable(format!("bad thread end {end}")));
        }
    }
    if inner.max_count() > 14 {
        return Err(ExtendError::Inapplicable(format!("inner sequence is only {}-good", inner.max_count())));
    }
    Ok(())
}

struct TwoThread {
    v: [Vertex; 4],
    near: NearAnchor,
}

impl Strategy for TwoThread {
    fn before(&mut self, sp: &mut Splicer, i: usize) -> Result<(), ExtendError> {
        self.near.before(sp, i)?;
        let [_, _, v3, v4] = self.v;
        let st = sp.inner[i];
        if st.vertex == v4 && st.color == sp.color(v3) {
            let mut f = sp.around(v3);
            f.push(st.color);
            sp.dodge(v3, &f)?;
        }
        Ok(())
    }

    fn finish(&mut self, sp: &mut Splicer) -> Result<(), ExtendError> {
        let [_, v2, v3, _] = self.v;
        let b2 = sp.target(v2);
        if sp.color(v2) != b2 && sp.color(v3) == b2 {
            let mut f = sp.around(v3);
            f.push(sp.color(v3));
            let c = sp
                .pick_preferring(v3, sp.target(v3), &f)
                .ok_or_else(|| ExtendError::Internal(format!("no free color for vertex {v3}")))?;
            sp.recolor(v3, c)?;
        }
        sp.finish(v2)?;
        sp.finish(v3)
    }
}

/// Extend across the 2-thread `v1 v2 v3 v4` (interior `v2, v3`). With `s`
/// recolorings of `v4`, `v3` moves at most `s+3` times and `v2` at most
/// `max(t, 2)` times for `t` recolorings of `v1`. The ends may coincide when
/// that end moves at most once.
pub fn extend_two_thread(
    h: &Graph,
    lists: &ListAssignment,
    thread: [Vertex; 4],
    inner: &RecoloringSequence,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<RecoloringSequence, ExtendError> {
    thread_preconditions(h, lists, &thread, inner)?;
    let [v1, v2, v3, v4] = thread;
    let s = inner.count(v4);
    if s > 11 {
        return Err(ExtendError::Inapplicable(format!("far end {v4} recolored {s} > 11 times")));
    }
    if v1 == v4 && s > 1 {
        return Err(ExtendError::Inapplicable(format!("thread loops back to {v1}, which is recolored {s} times")));
    }
    let stream = Stream::new(&inner.steps, |u| u == v1);
    let t = stream.len() as u32;
    let mut strat = TwoThread { v: thread, near: NearAnchor { anchor: v1, near: v2, mid: v3, stream } };
    let seq = splice(h, lists, &[v2, v3], inner, alpha, beta, &mut strat)?;
    enforce_caps(&seq, &[(v3, s + 3), (v2, t.max(2))])?;
    Ok(seq)
}

struct ThreeThread {
    v: [Vertex; 5],
    left: NearAnchor,
    right: NearAnchor,
}

impl Strategy for ThreeThread {
    fn before(&mut self, sp: &mut Splicer, i: usize) -> Result<(), ExtendError> {
        self.left.before(sp, i)?;
        self.right.before(sp, i)
    }

    fn finish(&mut self, sp: &mut Splicer) -> Result<(), ExtendError> {
        let [_, v2, v3, v4, _] = self.v;
        for w in [v2, v4] {
            if sp.color(w) != sp.target(w) && sp.color(v3) != sp.target(w) {
                sp.recolor(w, sp.target(w))?;
            }
        }
        let pending: Vec<Vertex> = [v2, v4].into_iter().filter(|&w| sp.color(w) != sp.target(w)).collect();
        if !pending.is_empty() {
            // the middle holds a pending target: one move clears it
            let mut f = sp.around(v3);
            f.push(sp.color(v3));
            f.extend(pending.iter().map(|&w| sp.target(w)));
            let c = sp
                .pick_preferring(v3, sp.target(v3), &f)
                .ok_or_else(|| ExtendError::Internal(format!("no free color for vertex {v3} avoiding {f:?}")))?;
            sp.recolor(v3, c)?;
            for w in pending {
                sp.finish(w)?;
            }
        }
        sp.finish(v3)
    }
}

/// Extend across the 3-thread `v1 .. v5`; the middle vertex moves at most
/// 4 times. The ends may coincide.
pub fn extend_three_thread(
    h: &Graph,
    lists: &ListAssignment,
    thread: [Vertex; 5],
    inner: &RecoloringSequence,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<RecoloringSequence, ExtendError> {
    thread_preconditions(h, lists, &thread, inner)?;
    let [v1, v2, v3, v4, v5] = thread;
    let left = Stream::new(&inner.steps, |u| u == v1);
    let right = Stream::new(&inner.steps, |u| u == v5);
    let caps = [(v3, 4), (v2, (left.len() as u32).max(2)), (v4, (right.len() as u32).max(2))];
    let mut strat = ThreeThread {
        v: thread,
        left: NearAnchor { anchor: v1, near: v2, mid: v3, stream: left },
        right: NearAnchor { anchor: v5, near: v4, mid: v3, stream: right },
    };
    let seq = splice(h, lists, &[v2, v3, v4], inner, alpha, beta, &mut strat)?;
    enforce_caps(&seq, &caps)?;
    Ok(seq)
}

/// A 3-vertex `v` whose neighbors `w[0..3]` all have degree 2. The 3-thread
/// through `w[1] v w[2]` goes first, then `w[0]` by the Key Lemma; this
/// needs the other neighbor of `w[0]` recolored at most 9 times.
pub fn extend_pendant_triple(
    g: &Graph,
    lists: &ListAssignment,
    v: Vertex,
    w: [Vertex; 3],
    inner: &RecoloringSequence,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<RecoloringSequence, ExtendError> {
    require_neighbors(g, v, &w)?;
    let far: Vec<Vertex> = w
        .iter()
        .map(|&wi| {
            let o: Vec<Vertex> = g.neighbors(wi).iter().copied().filter(|&u| u != v).collect();
            if o.len() == 1 {
                Ok(o[0])
            } else {
                Err(ExtendError::Inapplicable(format!("vertex {wi} is not a 2-neighbor of {v}")))
            }
        })
        .collect::<Result<_, _>>()?;
    let x1 = far[0];
    let tx = inner.count(x1);
    if tx > 9 {
        return Err(ExtendError::Inapplicable(format!("vertex {x1} recolored {tx} > 9 times")));
    }
    let h = g.without(&[w[0]]);
    let mid = extend_three_thread(&h, lists, [far[1], w[1], v, w[2], far[2]], inner, alpha, beta)?;
    let seq = extend_key_lemma(g, lists, w[0], &mid, alpha, beta)?;
    let s = (lists.list(w[0]).len() - 3) as u32;
    enforce_caps(&seq, &[(v, 4), (w[0], key_lemma_bound(mid.count(v) + tx, s).min(14))])?;
    Ok(seq)
}
