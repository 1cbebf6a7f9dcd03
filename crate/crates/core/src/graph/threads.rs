use std::collections::{BTreeMap, HashMap};

use super::{Graph, GraphError, Vertex};

/// A maximal path whose interior vertices all have degree 2, between two
/// 3+-vertices. Both endpoints coincide for a cycle hanging off a single
/// 3+-vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thread {
    pub endpoints: (Vertex, Vertex),
    pub interior: Vec<Vertex>,
}

impl Thread {
    pub fn k(&self) -> usize {
        self.interior.len()
    }

    pub fn is_cycle(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }
}

/// A thread seen from one of its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreadEnd {
    pub thread: usize,
    /// Interior in order away from the anchor.
    pub interior: Vec<Vertex>,
    pub far: Vertex,
}

#[derive(Debug, Clone, Default)]
pub struct ThreadSet {
    pub threads: Vec<Thread>,
    /// Paths of 2-vertices from a 3+-vertex that end at a 1-vertex.
    pub dangling: Vec<Vec<Vertex>>,
    /// Components with no 3+-vertex (paths and cycles).
    pub anchorless: Vec<Vec<Vertex>>,
    by_dart: HashMap<(Vertex, Vertex), usize>,
}

impl ThreadSet {
    /// The thread leaving anchor `v` through neighbor `u`, oriented from `v`.
    pub fn from_dart(&self, v: Vertex, u: Vertex) -> Option<ThreadEnd> {
        let id = *self.by_dart.get(&(v, u))?;
        let t = &self.threads[id];
        let forward = t.endpoints.0 == v && t.interior.first().is_none_or(|&x| x == u);
        let forward = forward && (t.k() > 0 || t.endpoints.1 == u);
        if forward {
            Some(ThreadEnd { thread: id, interior: t.interior.clone(), far: t.endpoints.1 })
        } else {
            let mut interior = t.interior.clone();
            interior.reverse();
            Some(ThreadEnd { thread: id, interior, far: t.endpoints.0 })
        }
    }

    /// For an anchor, its incident threads in neighbor order. A cycle thread
    /// appears twice, once from each side.
    pub fn incident(&self, g: &Graph, v: Vertex) -> Vec<ThreadEnd> {
        g.neighbors(v).iter().filter_map(|&u| self.from_dart(v, u)).collect()
    }
}

/// Find every maximal thread. 0-threads (edges between 3+-vertices) are
/// included so every anchor incidence belongs to exactly one thread.
pub fn find_threads(g: &Graph) -> Result<ThreadSet, GraphError> {
    let anchors: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
    if anchors.is_empty() {
        return Err(GraphError::NoAnchor);
    }
    let mut set = ThreadSet::default();
    let mut covered = vec![false; g.capacity()];
    for &a in &anchors {
        covered[a] = true;
        for &first in g.neighbors(a) {
            if set.by_dart.contains_key(&(a, first)) {
                continue;
            }
            let mut interior = Vec::new();
            let (mut prev, mut cur) = (a, first);
            while g.degree(cur) == 2 {
                interior.push(cur);
                let next = g.neighbors(cur).iter().copied().find(|&x| x != prev).unwrap_or(prev);
                // a 2-vertex with both neighbors equal cannot happen in a simple graph
                prev = cur;
                cur = next;
            }
            for &x in &interior {
                covered[x] = true;
            }
            if g.degree(cur) < 2 {
                covered[cur] = true;
                let mut path = interior;
                path.push(cur);
                set.by_dart.insert((a, first), usize::MAX);
                set.dangling.push(path);
                continue;
            }
            let id = set.threads.len();
            set.by_dart.insert((a, first), id);
            set.by_dart.insert((cur, prev), id);
            set.threads.push(Thread { endpoints: (a, cur), interior });
        }
    }
    set.by_dart.retain(|_, id| *id != usize::MAX);
    for comp in g.components() {
        if comp.iter().all(|&v| !covered[v]) {
            set.anchorless.push(comp);
        }
    }
    Ok(set)
}

/// Sorted triple of maximal-thread lengths at a degree-3 vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThreeVertexProfile {
    pub vertex: Vertex,
    pub profile: (usize, usize, usize),
}

impl ThreeVertexProfile {
    pub fn is(&self, a: usize, b: usize, c: usize) -> bool {
        self.profile == (a, b, c)
    }

    pub fn nearby(&self) -> usize {
        self.profile.0 + self.profile.1 + self.profile.2
    }
}

pub fn classify_three_vertices(g: &Graph) -> Result<BTreeMap<Vertex, ThreeVertexProfile>, GraphError> {
    let threads = find_threads(g)?;
    Ok(profiles_from(g, &threads))
}

pub(crate) fn profiles_from(g: &Graph, threads: &ThreadSet) -> BTreeMap<Vertex, ThreeVertexProfile> {
    let mut out = BTreeMap::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        let mut ks: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&u| threads.from_dart(v, u).map_or_else(|| dangling_len(g, v, u), |t| t.interior.len()))
            .collect();
        ks.sort_unstable_by(|a, b| b.cmp(a));
        out.insert(v, ThreeVertexProfile { vertex: v, profile: (ks[0], ks[1], ks[2]) });
    }
    out
}

fn dangling_len(g: &Graph, v: Vertex, u: Vertex) -> usize {
    let (mut prev, mut cur, mut k) = (v, u, 0);
    while g.degree(cur) == 2 {
        k += 1;
        let next = g.neighbors(cur).iter().copied().find(|&x| x != prev).unwrap_or(prev);
        prev = cur;
        cur = next;
    }
    k
}
