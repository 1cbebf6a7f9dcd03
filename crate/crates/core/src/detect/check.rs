//! Re-verify a match from scratch: plain degree counts and thread walks,
//! with no use of the thread index or profile tables the search uses.

use super::{ConfigKind, ConfigMatch};
use crate::graph::{Graph, Vertex};

type Check = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn role<'a>(m: &'a ConfigMatch, name: &str, len: Option<usize>) -> Result<&'a [Vertex], String> {
    let r = m.roles.get(name).ok_or_else(|| format!("missing role {name}"))?;
    if let Some(l) = len {
        ensure(r.len() == l, || format!("role {name} has {} vertices, expected {l}", r.len()))?;
    }
    Ok(r)
}

fn one(m: &ConfigMatch, name: &str) -> Result<Vertex, String> {
    Ok(role(m, name, Some(1))?[0])
}

fn is_path(g: &Graph, p: &[Vertex]) -> bool {
    p.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

fn distinct(p: &[Vertex]) -> bool {
    (0..p.len()).all(|i| !p[i + 1..].contains(&p[i]))
}

/// Lengths of the runs of 2-vertices leaving `v`, one per incidence.
fn walk_lengths(g: &Graph, v: Vertex) -> Vec<usize> {
    g.neighbors(v)
        .iter()
        .map(|&first| {
            let (mut prev, mut cur, mut k) = (v, first, 0);
            while g.degree(cur) == 2 && cur != v {
                k += 1;
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
            k
        })
        .collect()
}

fn profile(g: &Graph, v: Vertex) -> Option<(usize, usize, usize)> {
    if g.degree(v) != 3 {
        return None;
    }
    let mut l = walk_lengths(g, v);
    l.sort_unstable_by(|a, b| b.cmp(a));
    Some((l[0], l[1], l[2]))
}

/// Is the closed walk `f` a face under the rotation system of `g`?
fn is_face(g: &Graph, f: &[Vertex]) -> bool {
    let Some(rot) = g.rotation() else { return false };
    let n = f.len();
    (0..n).all(|i| {
        let (u, v, w) = (f[i], f[(i + 1) % n], f[(i + 2) % n]);
        let r = &rot[v];
        r.iter().position(|&x| x == u).is_some_and(|p| r[(p + 1) % r.len()] == w)
    })
}

/// Check that the roles of `m` really form the named configuration in `g`.
pub fn check_match(g: &Graph, m: &ConfigMatch) -> Check {
    let all: Vec<Vertex> = m.roles.values().flatten().copied().collect();
    ensure(all.iter().all(|&v| g.contains(v)), || "role vertex outside the graph".into())?;
    match m.kind {
        ConfigKind::Deg2OrLess | ConfigKind::T2iTwoMinus => {
            let v = one(m, "v")?;
            ensure(g.degree(v) <= 2, || format!("vertex {v} has degree {}", g.degree(v)))
        }
        ConfigKind::T3IsolatedOr1Vertex => {
            let v = one(m, "v")?;
            ensure(g.degree(v) <= 1, || format!("vertex {v} has degree {}", g.degree(v)))
        }
        ConfigKind::T1aFiveVertexThree3Nbrs => {
            let v = one(m, "v")?;
            let w = role(m, "w", Some(3))?;
            ensure(g.degree(v) == 5, || format!("vertex {v} is not a 5-vertex"))?;
            ensure(distinct(w) && w.iter().all(|&u| g.has_edge(u, v) && g.degree(u) == 3), || "w are not 3-neighbors".into())
        }
        ConfigKind::T1bPath => {
            let p = role(m, "path", None)?;
            ensure((2..=5).contains(&p.len()) && distinct(p) && is_path(g, p), || format!("{p:?} is not a short path"))?;
            let inner_ok = p[1..p.len() - 1].iter().all(|&u| g.degree(u) == 4);
            ensure(g.degree(p[0]) == 3 && g.degree(p[p.len() - 1]) == 3 && inner_ok, || "path degrees are not 3,4..4,3".into())
        }
        ConfigKind::T1cFace3444 | ConfigKind::T1dFace5With3 => {
            let f = role(m, "face", Some(4))?;
            ensure(distinct(f) && is_face(g, f), || format!("{f:?} is not a 4-face"))?;
            let mut d: Vec<usize> = f.iter().map(|&u| g.degree(u)).collect();
            ensure(d[0] == 3, || "face must start at its 3-vertex".into())?;
            d.sort_unstable();
            if m.kind == ConfigKind::T1cFace3444 {
                return ensure(d == [3, 4, 4, 4], || format!("face degrees {d:?}"));
            }
            ensure(d == [3, 4, 4, 5], || format!("face degrees {d:?}"))?;
            let w = one(m, "w")?;
            let five = *f.iter().find(|&&u| g.degree(u) == 5).expect("sorted degrees contain 5");
            ensure(!f.contains(&w) && g.degree(w) == 3 && g.has_edge(w, five), || format!("{w} is not an outside 3-neighbor"))
        }
        ConfigKind::T2iiThreeVertexTwo3Nbrs => {
            let (v, x) = (one(m, "v")?, one(m, "x")?);
            let w = role(m, "w", Some(2))?;
            ensure(g.degree(v) == 3 && distinct(&[v, w[0], w[1], x]), || "bad center".into())?;
            ensure([w[0], w[1], x].iter().all(|&u| g.has_edge(u, v)), || "roles are not the neighbors of v".into())?;
            ensure(g.degree(w[0]) == 3 && g.degree(w[1]) == 3, || "w are not 3-vertices".into())
        }
        ConfigKind::T2iiiFourVertexFour3Nbrs => {
            let v = one(m, "v")?;
            let w = role(m, "w", Some(4))?;
            ensure(g.degree(v) == 4 && distinct(w), || "bad center".into())?;
            ensure(w.iter().all(|&u| g.has_edge(u, v) && g.degree(u) == 3), || "w are not 3-neighbors".into())
        }
        ConfigKind::T3ThreeThread => {
            if let Some(c) = m.roles.get("cycle") {
                let closed = c.len() >= 3 && distinct(c) && is_path(g, c) && g.has_edge(c[0], c[c.len() - 1]);
                return ensure(closed && c.iter().all(|&u| g.degree(u) == 2), || format!("{c:?} is not a bare cycle"));
            }
            let p = role(m, "thread", Some(5))?;
            ensure(is_path(g, p) && distinct(&p[1..4]), || format!("{p:?} is not a path"))?;
            ensure(p[1..4].iter().all(|&u| g.degree(u) == 2), || "interior vertices must have degree 2".into())
        }
        ConfigKind::T3PendantTriple => {
            let v = one(m, "v")?;
            let w = role(m, "w", Some(3))?;
            ensure(g.degree(v) == 3 && w.iter().all(|&u| g.has_edge(u, v) && g.degree(u) == 2), || "not a pendant triple".into())
        }
        ConfigKind::T3HighThreadVertex => {
            let v = one(m, "v")?;
            let d = g.degree(v);
            ensure(d == 3 || d == 4, || format!("vertex {v} has degree {d}"))?;
            let l = walk_lengths(g, v);
            let twos = l.iter().filter(|&&k| k == 2).count();
            let ones = l.iter().filter(|&&k| k == 1).count();
            ensure(twos + 1 >= d || (ones == 2 && twos + 2 == d), || format!("thread lengths {l:?} at {v}"))?;
            let t = role(m, "two_threads", None)?;
            ensure(t.chunks(2).all(|p| p.len() == 2 && g.degree(p[0]) == 2 && g.degree(p[1]) == 2 && g.has_edge(p[0], p[1])), || {
                "two_threads are not 2-threads".into()
            })
        }
        ConfigKind::T3Adjacency321 => {
            let (v, w) = (one(m, "v")?, one(m, "w")?);
            ensure(g.has_edge(v, w), || "v and w are not adjacent".into())?;
            ensure(profile(g, v) == Some((2, 1, 0)), || format!("vertex {v} has profile {:?}", profile(g, v)))?;
            let pw = profile(g, w);
            ensure(matches!(pw, Some((1, 1, 0) | (2, 0, 0) | (2, 1, 0))), || format!("vertex {w} has profile {pw:?}"))
        }
        ConfigKind::T3Weak111 => {
            let (v, w, x) = (one(m, "v")?, one(m, "w")?, one(m, "x")?);
            ensure(g.degree(x) == 2 && g.has_edge(x, v) && g.has_edge(x, w) && v != w, || "x is not a common 2-neighbor".into())?;
            ensure(profile(g, v) == Some((1, 1, 1)), || format!("vertex {v} has profile {:?}", profile(g, v)))?;
            let pw = profile(g, w);
            ensure(matches!(pw, Some((1, 1, 1) | (2, 1, 0))), || format!("vertex {w} has profile {pw:?}"))
        }
        ConfigKind::HighDegreeBaseline => Ok(()),
    }
}
