//! Exact sparsity measures: maximum average degree, girth, and the planar
//! girth bound on mad.

pub mod flow;

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{trace_faces, Graph, GraphError, Vertex};
use crate::Rational;
use flow::{FlowNetwork, INF};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("measure undefined on the empty graph")]
    EmptyGraph,
    #[error("exhaustive enumeration limited to {limit} vertices, graph has {n}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Embedding(#[from] GraphError),
    #[error("mad {mad} is not below {bound} for girth {girth}: the embedding cannot be planar")]
    MadLemmaViolated { mad: Rational, bound: Rational, girth: usize },
}

/// mad(G) with a subgraph achieving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub mad: Rational,
    pub witness: BTreeSet<Vertex>,
}

fn density(g: &Graph, set: &BTreeSet<Vertex>) -> Rational {
    Rational::new(2 * g.edges_within(set) as i64, set.len() as i64)
}

/// Exact mad by parametric max-flow.
///
/// For a trial ratio `p/q` the closure network (source -> edge node with
/// capacity `q`, edge node -> endpoints unbounded, vertex -> sink with
/// capacity `p`) finds the vertex set maximizing `q|E(H)| - p|V(H)|`. If
/// that is positive, its density strictly beats the trial, which becomes
/// the next trial; the first non-positive round certifies optimality.
pub fn mad_exact(g: &Graph) -> Result<DensityReport, MetricsError> {
    if g.is_empty() {
        return Err(MetricsError::EmptyGraph);
    }
    let verts: Vec<Vertex> = g.vertices().collect();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    if edges.is_empty() {
        return Ok(DensityReport { mad: Rational::from_integer(0), witness: BTreeSet::from([verts[0]]) });
    }
    let mut index = vec![usize::MAX; g.capacity()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let mut witness: BTreeSet<Vertex> = verts.iter().copied().collect();
    // ratio |E(H)| / |V(H)|
    let mut ratio = Rational::new(edges.len() as i64, verts.len() as i64);
    loop {
        let (p, q) = (*ratio.numer(), *ratio.denom());
        let (src, sink) = (0, 1);
        let edge_base = 2;
        let vert_base = edge_base + edges.len();
        let mut net = FlowNetwork::new(vert_base + verts.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            net.add_arc(src, edge_base + i, q);
            net.add_arc(edge_base + i, vert_base + index[u], INF);
            net.add_arc(edge_base + i, vert_base + index[v], INF);
        }
        for i in 0..verts.len() {
            net.add_arc(vert_base + i, sink, p);
        }
        let cut = net.max_flow(src, sink);
        let best = q * edges.len() as i64 - cut;
        if best <= 0 {
            break;
        }
        let side = net.source_side(src);
        let found: BTreeSet<Vertex> = verts.iter().enumerate().filter(|(i, _)| side[vert_base + i]).map(|(_, &v)| v).collect();
        let next = Rational::new(g.edges_within(&found) as i64, found.len() as i64);
        debug_assert!(next > ratio);
        ratio = next;
        witness = found;
    }
    Ok(DensityReport { mad: ratio * 2, witness })
}

/// Brute-force mad over every non-empty vertex subset; the independent
/// oracle for [`mad_exact`].
pub fn mad_enumerate(g: &Graph) -> Result<DensityReport, MetricsError> {
    const LIMIT: usize = 20;
    if g.is_empty() {
        return Err(MetricsError::EmptyGraph);
    }
    let verts: Vec<Vertex> = g.vertices().collect();
    if verts.len() > LIMIT {
        return Err(MetricsError::TooLarge { n: verts.len(), limit: LIMIT });
    }
    let n = verts.len();
    let masks: Vec<u32> = verts
        .iter()
        .map(|&v| verts.iter().enumerate().filter(|(_, &u)| g.has_edge(u, v)).fold(0, |m, (j, _)| m | (1 << j)))
        .collect();
    let mut best = (0u32, 1u32, 1u32);
    for set in 1u32..(1u32 << n) {
        let size = set.count_ones();
        let twice_edges: u32 = (0..n).filter(|&i| set & (1 << i) != 0).map(|i| (masks[i] & set).count_ones()).sum();
        // compare 2e/size against the best fraction
        if (twice_edges as u64) * (best.1 as u64) > (best.0 as u64) * (size as u64) {
            best = (twice_edges, size, set);
        }
    }
    let witness = (0..n).filter(|&i| best.2 & (1 << i) != 0).map(|i| verts[i]).collect();
    Ok(DensityReport { mad: Rational::new(best.0 as i64, best.1 as i64), witness })
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; g.capacity()];
    let mut parent = vec![usize::MAX; g.capacity()];
    for root in g.vertices() {
        let mut touched = vec![root];
        dist[root] = 0;
        let mut q = VecDeque::from([root]);
        'bfs: while let Some(u) = q.pop_front() {
            if let Some(b) = best {
                if 2 * dist[u] + 1 >= b {
                    break;
                }
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    q.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                    if len == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        for v in touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        if best == Some(3) {
            break;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MadLemmaReport {
    pub mad: Rational,
    /// `2g/(g-2)`, or 2 for forests (the limit as the girth grows).
    pub bound: Rational,
    pub girth: Option<usize>,
}

/// For an embedded graph, check `mad(G) < 2g/(g-2)` exactly.
pub fn check_mad_lemma(g: &Graph) -> Result<MadLemmaReport, MetricsError> {
    if !g.has_rotation() {
        return Err(GraphError::MissingRotation.into());
    }
    for comp in g.components() {
        trace_faces(&g.induced(&comp))?;
    }
    let mad = mad_exact(g)?.mad;
    let gi = girth(g);
    let bound = match gi {
        Some(k) => Rational::new(2 * k as i64, k as i64 - 2),
        None => Rational::from_integer(2),
    };
    if mad >= bound {
        return Err(MetricsError::MadLemmaViolated { mad, bound, girth: gi.unwrap_or(0) });
    }
    Ok(MadLemmaReport { mad, bound, girth: gi })
}

/// Density `2|E(H)|/|V(H)|` of the reported witness, to re-check a report.
pub fn witness_density(g: &Graph, rep: &DensityReport) -> Rational {
    density(g, &rep.witness)
}
