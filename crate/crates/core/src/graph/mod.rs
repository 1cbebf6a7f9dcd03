//! Simple undirected graphs with an optional rotation system.
//!
//! Vertices are dense ids `0..capacity`. Deleting vertices keeps ids stable:
//! a removed vertex is marked dead and disappears from every adjacency and
//! rotation list, so colorings and sequences can keep using global ids while
//! the recursive solvers work on ever smaller induced subgraphs.

mod faces;
mod threads;

pub use faces::{trace_faces, trace_faces_any_genus, Face, FaceSet};
pub use threads::{classify_three_vertices, find_threads, ThreadEnd, ThreeVertexProfile, Thread, ThreadSet};
pub(crate) use threads::profiles_from;

use std::collections::BTreeSet;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range (n = {n})")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("rotation at vertex {0} is not a permutation of its neighbors")]
    BadRotation(Vertex),
    #[error("graph has no rotation system")]
    MissingRotation,
    #[error("invalid embedding: {0}")]
    EmbeddingInvalid(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertex of degree at least 3 (bare cycle or path)")]
    NoAnchor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    alive: Vec<bool>,
    live: usize,
    rotation: Option<Vec<Vec<Vertex>>>,
}

impl Graph {
    /// Empty graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], alive: vec![true; n], live: n, rotation: None }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.capacity();
        for x in [u, v] {
            if x >= n || !self.alive[x] {
                return Err(GraphError::OutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        insert_sorted(&mut self.adj[u], v);
        insert_sorted(&mut self.adj[v], u);
        // a new edge invalidates any embedding
        self.rotation = None;
        Ok(())
    }

    /// Attach a rotation system: `rot[v]` lists the neighbors of `v` in
    /// clockwise order.
    pub fn set_rotation(&mut self, rot: Vec<Vec<Vertex>>) -> Result<(), GraphError> {
        if rot.len() != self.capacity() {
            return Err(GraphError::BadRotation(rot.len().min(self.capacity())));
        }
        for (v, order) in rot.iter().enumerate() {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != self.adj[v] {
                return Err(GraphError::BadRotation(v));
            }
        }
        self.rotation = Some(rot);
        Ok(())
    }

    pub fn with_rotation(mut self, rot: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        self.set_rotation(rot)?;
        Ok(self)
    }

    pub fn clear_rotation(&mut self) {
        self.rotation = None;
    }

    pub fn rotation(&self) -> Option<&[Vec<Vertex>]> {
        self.rotation.as_deref()
    }

    pub fn has_rotation(&self) -> bool {
        self.rotation.is_some()
    }

    /// Total id space, including deleted vertices.
    pub fn capacity(&self) -> usize {
        self.adj.len()
    }

    /// Number of live vertices.
    pub fn n(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.capacity()).filter(move |&v| self.alive[v])
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Induced subgraph on the live vertices minus `removed`; rotations are
    /// inherited by dropping the removed neighbors from each cyclic order.
    pub fn without(&self, removed: &[Vertex]) -> Graph {
        let mut g = self.clone();
        g.remove_vertices(removed);
        g
    }

    pub fn remove_vertices(&mut self, removed: &[Vertex]) {
        let mut gone = vec![false; self.capacity()];
        for &v in removed {
            if self.contains(v) {
                gone[v] = true;
            }
        }
        for v in 0..self.capacity() {
            if gone[v] {
                self.alive[v] = false;
                self.live -= 1;
                self.adj[v].clear();
            } else {
                self.adj[v].retain(|&u| !gone[u]);
            }
        }
        if let Some(rot) = self.rotation.as_mut() {
            for (v, order) in rot.iter_mut().enumerate() {
                if gone[v] {
                    order.clear();
                } else {
                    order.retain(|&u| !gone[u]);
                }
            }
        }
    }

    /// Induced subgraph keeping only the given vertices.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut keep_mask = vec![false; self.capacity()];
        for &v in keep {
            keep_mask[v] = true;
        }
        let removed: Vec<Vertex> = self.vertices().filter(|&v| !keep_mask[v]).collect();
        self.without(&removed)
    }

    /// Connected components (live vertices only), each sorted ascending.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.capacity()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| {
            let (a, b) = (&self.adj[u], &self.adj[v]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return false,
                }
            }
            true
        })
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: &BTreeSet<Vertex>) -> usize {
        set.iter().map(|&u| self.adj[u].iter().filter(|v| set.contains(v)).count()).sum::<usize>() / 2
    }

    /// Rotation successor of `u` around `v`.
    pub(crate) fn rotation_next(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let order = &self.rotation.as_ref()?[v];
        let pos = order.iter().position(|&x| x == u)?;
        Some(order[(pos + 1) % order.len()])
    }
}

fn insert_sorted(list: &mut Vec<Vertex>, v: Vertex) {
    let pos = list.partition_point(|&x| x < v);
    list.insert(pos, v);
}

/// A handful of named graphs used by tests, generators and the CLI.
pub mod named {
    use super::{Graph, Vertex};

    pub fn path(n: usize) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are simple")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::from_edges(n, &edges).expect("cycle edges are simple");
        let rot = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
        g.with_rotation(rot).expect("cycle rotation")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph edges are simple")
    }

    /// K4 drawn as a triangle 0-1-2 around the center 3.
    pub fn k4_planar() -> Graph {
        let g = complete(4);
        let rot = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
        g.with_rotation(rot).expect("K4 rotation")
    }

    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star edges are simple")
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("Petersen edges are simple")
    }

    /// Dodecahedron: outer 5-cycle, two middle rings of five, inner 5-cycle.
    pub fn dodecahedron() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, 5 + 2 * i));
            edges.push((5 + 2 * i, 5 + 2 * i + 1));
            edges.push((5 + 2 * i + 1, 5 + (2 * i + 2) % 10));
            edges.push((5 + 2 * i + 1, 15 + i));
            edges.push((15 + i, 15 + (i + 1) % 5));
        }
        Graph::from_edges(20, &edges).expect("dodecahedron edges are simple")
    }

    /// Every edge of `base` replaced by a path with `t` new interior vertices.
    pub fn subdivided(base: &Graph, t: usize) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = base.edges().collect();
        let n = base.capacity() + edges.len() * t;
        let mut g = Graph::new(n);
        let mut next = base.capacity();
        for (u, v) in edges {
            let mut prev = u;
            for _ in 0..t {
                g.add_edge(prev, next).expect("fresh vertex");
                prev = next;
                next += 1;
            }
            g.add_edge(prev, v).expect("fresh edge");
        }
        g
    }
}
