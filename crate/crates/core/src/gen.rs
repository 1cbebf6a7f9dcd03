//! Deterministic instance generators for the three solvers and the baseline.
//!
//! A model is written as a short spec string, e.g. `grid:3x3`, `hex:4x6`,
//! `subdivided:k4:4`, `random-sparse:120:17/5` or `threaded:40:3:22/9`.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::{Color, Coloring, ListAssignment};
use crate::discharge::{mad175_config, mad229_config};
use crate::graph::{named, Graph, Vertex};
use crate::io::Instance;
use crate::metrics::mad_exact;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("bad model spec '{0}': {1}")]
    BadSpec(String, String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    K4,
    Cube,
    Petersen,
    Dodecahedron,
    Complete(usize),
}

impl Base {
    pub fn graph(self) -> Graph {
        match self {
            Base::K4 => named::complete(4),
            Base::Cube => cube(),
            Base::Petersen => named::petersen(),
            Base::Dodecahedron => named::dodecahedron(),
            Base::Complete(n) => named::complete(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Path(usize),
    Cycle(usize),
    Grid { rows: usize, cols: usize },
    /// Honeycomb drawn as a brick wall.
    HexPatch { rows: usize, cols: usize },
    /// A grid keeping each edge with probability `keep_percent / 100`.
    GridSubgraph { rows: usize, cols: usize, keep_percent: u32 },
    Cube,
    Named(Base),
    Subdivided { base: Base, t: usize },
    /// Random edges added while mad stays below `mad`.
    RandomSparse { n: usize, mad: Rational },
    /// A random graph of degrees 3 and 4 with every edge subdivided 0..=`max_t`
    /// times, then subdivided further until mad drops below `mad`.
    Threaded { n: usize, max_t: usize, mad: Rational },
    /// `rows × cols` grid on the torus; the top row meets the bottom row
    /// shifted by `shift` columns.
    Torus { rows: usize, cols: usize, shift: usize },
    /// Random minimum-degree-3 graph free of the 17/5 configurations.
    Free175(usize),
    /// Random subdivision free of the 22/9 configurations.
    Free229(usize),
}

fn bad(spec: &str, why: impl Into<String>) -> GenError {
    GenError::BadSpec(spec.to_string(), why.into())
}

fn parse_num<T: FromStr>(spec: &str, s: &str) -> Result<T, GenError> {
    s.parse().map_err(|_| bad(spec, format!("'{s}' is not a number")))
}

fn parse_dims(spec: &str, s: &str) -> Result<(usize, usize), GenError> {
    let (r, c) = s.split_once('x').ok_or_else(|| bad(spec, "expected RxC"))?;
    Ok((parse_num(spec, r)?, parse_num(spec, c)?))
}

fn parse_ratio(spec: &str, s: &str) -> Result<Rational, GenError> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let q: i64 = parse_num(spec, q)?;
    if q <= 0 {
        return Err(bad(spec, "denominator must be positive"));
    }
    Ok(Rational::new(parse_num(spec, p)?, q))
}

fn parse_base(spec: &str, s: &str) -> Result<Base, GenError> {
    Ok(match s {
        "k4" => Base::K4,
        "cube" => Base::Cube,
        "petersen" => Base::Petersen,
        "dodecahedron" => Base::Dodecahedron,
        _ => match s.strip_prefix('k') {
            Some(n) => Base::Complete(parse_num(spec, n)?),
            None => return Err(bad(spec, format!("unknown base '{s}'"))),
        },
    })
}

impl FromStr for Model {
    type Err = GenError;

    fn from_str(spec: &str) -> Result<Self, GenError> {
        let parts: Vec<&str> = spec.split(':').collect();
        let arity = |k: usize| if parts.len() == k + 1 { Ok(()) } else { Err(bad(spec, format!("expected {k} parameters"))) };
        Ok(match parts[0] {
            "path" => {
                arity(1)?;
                Model::Path(parse_num(spec, parts[1])?)
            }
            "cycle" => {
                arity(1)?;
                Model::Cycle(parse_num(spec, parts[1])?)
            }
            "grid" => {
                arity(1)?;
                let (rows, cols) = parse_dims(spec, parts[1])?;
                Model::Grid { rows, cols }
            }
            "hex" | "hex-patch" => {
                arity(1)?;
                let (rows, cols) = parse_dims(spec, parts[1])?;
                Model::HexPatch { rows, cols }
            }
            "grid-subgraph" => {
                arity(2)?;
                let (rows, cols) = parse_dims(spec, parts[1])?;
                Model::GridSubgraph { rows, cols, keep_percent: parse_num(spec, parts[2])? }
            }
            "cube" => {
                arity(0)?;
                Model::Cube
            }
            "petersen" | "dodecahedron" => {
                arity(0)?;
                Model::Named(parse_base(spec, parts[0])?)
            }
            "subdivided" => {
                arity(2)?;
                Model::Subdivided { base: parse_base(spec, parts[1])?, t: parse_num(spec, parts[2])? }
            }
            "random-sparse" => {
                arity(2)?;
                Model::RandomSparse { n: parse_num(spec, parts[1])?, mad: parse_ratio(spec, parts[2])? }
            }
            "threaded" => {
                arity(3)?;
                Model::Threaded { n: parse_num(spec, parts[1])?, max_t: parse_num(spec, parts[2])?, mad: parse_ratio(spec, parts[3])? }
            }
            "torus" => {
                arity(2)?;
                let (rows, cols) = parse_dims(spec, parts[1])?;
                Model::Torus { rows, cols, shift: parse_num(spec, parts[2])? }
            }
            "free175" => {
                arity(1)?;
                Model::Free175(parse_num(spec, parts[1])?)
            }
            "free229" => {
                arity(1)?;
                Model::Free229(parse_num(spec, parts[1])?)
            }
            other => return Err(bad(spec, format!("unknown model '{other}'"))),
        })
    }
}

/// Q3 drawn as two concentric squares.
pub fn cube() -> Graph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for b in [1, 2, 4] {
            if v & b == 0 {
                edges.push((v, v | b));
            }
        }
    }
    let g = Graph::from_edges(8, &edges).expect("cube edges are simple");
    let rot = vec![vec![1, 4, 2], vec![3, 5, 0], vec![0, 6, 3], vec![2, 7, 1], vec![0, 5, 6], vec![1, 7, 4], vec![2, 4, 7], vec![3, 6, 5]];
    g.with_rotation(rot).expect("cube rotation")
}

/// A subgraph of the `rows × cols` grid with the grid's embedding: vertex
/// `(i, j)` is `i * cols + j`, neighbors in clockwise order right, down,
/// left, up.
pub fn grid_subgraph(rows: usize, cols: usize, mut keep: impl FnMut(Vertex, Vertex) -> bool) -> Graph {
    let id = |i: usize, j: usize| i * cols + j;
    let mut g = Graph::new(rows * cols);
    let mut rot = vec![Vec::new(); rows * cols];
    let mut kept = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols && keep(id(i, j), id(i, j + 1)) {
                kept.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows && keep(id(i, j), id(i + 1, j)) {
                kept.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    for &(u, v) in &kept {
        g.add_edge(u, v).expect("grid edges are simple");
    }
    for i in 0..rows {
        for j in 0..cols {
            let v = id(i, j);
            let around = [
                (j + 1 < cols).then(|| id(i, j + 1)),
                (i + 1 < rows).then(|| id(i + 1, j)),
                (j > 0).then(|| id(i, j - 1)),
                (i > 0).then(|| id(i - 1, j)),
            ];
            rot[v] = around.into_iter().flatten().filter(|&u| g.has_edge(u, v)).collect();
        }
    }
    g.with_rotation(rot).expect("grid rotation permutes neighbors")
}

/// Grid on the torus with rotation right, down, left, up at every vertex.
pub fn torus_grid(rows: usize, cols: usize, shift: usize) -> Graph {
    let id = |i: usize, j: usize| (i % rows) * cols + (j % cols);
    let down = |i: usize, j: usize| if i + 1 == rows { id(0, j + shift) } else { id(i + 1, j) };
    let up = |i: usize, j: usize| if i == 0 { id(rows - 1, j + cols - shift % cols) } else { id(i - 1, j) };
    let mut g = Graph::new(rows * cols);
    let mut rot = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            g.add_edge(id(i, j), id(i, j + 1)).expect("torus needs at least 3 columns");
            g.add_edge(id(i, j), down(i, j)).expect("torus needs at least 3 rows");
            rot.push(vec![id(i, j + 1), down(i, j), id(i, j + cols - 1), up(i, j)]);
        }
    }
    g.with_rotation(rot).expect("torus rotation permutes neighbors")
}

/// Degrees around 4 with scattered 3-, 5- and 6-vertices: start from a
/// random graph of degrees 4 to 6, then delete random edges as long as no
/// 17/5 configuration appears.
pub fn free175(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let target: Vec<usize> = (0..n).map(|_| [4, 4, 4, 4, 5, 6][rng.gen_range(0..6)]).collect();
    let mut g = Graph::new(n);
    for _ in 0..40 * n {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !g.has_edge(u, v) && g.degree(u) < target[u] && g.degree(v) < target[v] {
            g.add_edge(u, v).expect("checked");
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    edges.shuffle(rng);
    let mut keep = edges.clone();
    for e in edges {
        let trial: Vec<(Vertex, Vertex)> = keep.iter().copied().filter(|&f| f != e).collect();
        let h = Graph::from_edges(n, &trial).expect("subset of simple edges");
        if mad175_config(&h).is_none() {
            keep = trial;
        }
    }
    Graph::from_edges(n, &keep).expect("subset of simple edges")
}

/// A [`free175`] graph whose edges are subdivided one at a time, in random
/// order up to twice each, as long as no 22/9 configuration appears.
pub fn free229(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let base = free175(n, rng);
    let mut edges: Vec<(Vertex, Vertex)> = base.edges().collect();
    let mut t = vec![0usize; edges.len()];
    let build = |t: &[usize], edges: &[(Vertex, Vertex)]| {
        let k: std::collections::HashMap<_, _> = edges.iter().copied().zip(t.iter().copied()).collect();
        subdivide_each(&base, |u, v| k[&(u, v)])
    };
    edges.sort_unstable();
    let mut order: Vec<usize> = (0..edges.len()).flat_map(|i| [i, i]).collect();
    order.shuffle(rng);
    for i in order {
        t[i] += 1;
        if mad229_config(&build(&t, &edges)).is_some() {
            t[i] -= 1;
        }
    }
    build(&t, &edges)
}

fn path_with_rotation(n: usize) -> Graph {
    let g = named::path(n);
    let rot = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    g.with_rotation(rot).expect("paths embed trivially")
}

fn random_base(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n);
    let target = 3 * n / 2;
    let mut misses = 0;
    while g.edge_count() < target && misses < 50 * n {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || g.has_edge(u, v) || g.degree(u) >= 4 || g.degree(v) >= 4 {
            misses += 1;
            continue;
        }
        g.add_edge(u, v).expect("checked");
    }
    g
}

/// Replace edges by paths; `t(u, v)` gives the number of new vertices.
fn subdivide_each(g: &Graph, mut t: impl FnMut(Vertex, Vertex) -> usize) -> Graph {
    let plan: Vec<(Vertex, Vertex, usize)> = g.edges().map(|(u, v)| (u, v, t(u, v))).collect();
    let n = g.capacity() + plan.iter().map(|p| p.2).sum::<usize>();
    let mut h = Graph::new(n);
    let mut next = g.capacity();
    for (u, v, k) in plan {
        let mut prev = u;
        for _ in 0..k {
            h.add_edge(prev, next).expect("fresh vertex");
            prev = next;
            next += 1;
        }
        h.add_edge(prev, v).expect("fresh edge");
    }
    h
}

pub fn generate_graph(model: &Model, rng: &mut ChaCha8Rng) -> Result<Graph, GenError> {
    Ok(match *model {
        Model::Path(n) => path_with_rotation(n),
        Model::Cycle(n) if n < 3 => return Err(GenError::Infeasible("a cycle needs at least 3 vertices".into())),
        Model::Cycle(n) => named::cycle(n),
        Model::Grid { rows, cols } => grid_subgraph(rows, cols, |_, _| true),
        Model::HexPatch { rows, cols } => grid_subgraph(rows, cols, |u, v| u + cols != v || (u / cols + u % cols) % 2 == 0),
        Model::GridSubgraph { rows, cols, keep_percent } => {
            if keep_percent > 100 {
                return Err(GenError::Infeasible("keep percentage above 100".into()));
            }
            grid_subgraph(rows, cols, |_, _| rng.gen_range(0..100) < keep_percent)
        }
        Model::Cube => cube(),
        Model::Named(b) => b.graph(),
        Model::Subdivided { base, t } => named::subdivided(&base.graph(), t),
        Model::RandomSparse { n, mad } => {
            if mad <= Rational::from_integer(0) && n > 0 {
                return Err(GenError::Infeasible(format!("no graph on {n} vertices has mad below {mad}")));
            }
            let mut g = Graph::new(n);
            let mut order: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            order.shuffle(rng);
            let max_edges = (mad * Rational::from_integer(n as i64) / 2).ceil().to_integer().max(0) as usize;
            for (u, v) in order.into_iter().take(8 * n) {
                if g.edge_count() >= max_edges {
                    break;
                }
                let mut h = g.clone();
                h.add_edge(u, v).expect("fresh pair");
                if mad_exact(&h).is_ok_and(|r| r.mad < mad) {
                    g = h;
                }
            }
            g
        }
        Model::Torus { rows, cols, .. } if rows < 3 || cols < 3 => {
            return Err(GenError::Infeasible("a torus grid needs at least 3 rows and columns".into()))
        }
        Model::Torus { rows, cols, shift } => torus_grid(rows, cols, shift),
        Model::Free175(n) => free175(n, rng),
        Model::Free229(n) => free229(n, rng),
        Model::Threaded { n, max_t, mad } => {
            if mad <= Rational::from_integer(2) {
                return Err(GenError::Infeasible(format!("subdivisions with cycles keep mad at least 2; {mad} is unreachable")));
            }
            let base = random_base(n, rng);
            let mut g = subdivide_each(&base, |_, _| rng.gen_range(0..=max_t));
            loop {
                let rep = mad_exact(&g).map_err(|e| GenError::Infeasible(e.to_string()))?;
                if rep.mad < mad {
                    break g;
                }
                let inside: Vec<(Vertex, Vertex)> = g.edges().filter(|(u, v)| rep.witness.contains(u) && rep.witness.contains(v)).collect();
                let pick = *inside.choose(rng).expect("a dense witness has edges");
                g = subdivide_each(&g, |u, v| usize::from((u, v) == pick));
            }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListMode {
    /// Every list is `0..size`.
    Shared,
    /// Each list is a random `size`-subset of `0..palette`.
    Random { palette: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceOptions {
    pub list_size: usize,
    pub lists: ListMode,
    /// Require `alpha(v) != beta(v)` at every vertex.
    pub disjoint: bool,
}

pub fn random_lists(g: &Graph, size: usize, mode: ListMode, rng: &mut ChaCha8Rng) -> Result<ListAssignment, GenError> {
    let n = g.capacity();
    Ok(match mode {
        ListMode::Shared => ListAssignment::uniform(n, 0..size as Color),
        ListMode::Random { palette } => {
            if palette < size {
                return Err(GenError::Infeasible(format!("palette {palette} smaller than list size {size}")));
            }
            let all: Vec<Color> = (0..palette as Color).collect();
            ListAssignment::new((0..n).map(|_| all.choose_multiple(rng, size).copied().collect()).collect())
        }
    })
}

/// Smallest-last order: each vertex has at most `degeneracy` neighbors
/// before it.
fn degeneracy_order(g: &Graph) -> Vec<Vertex> {
    let mut deg: Vec<usize> = (0..g.capacity()).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; g.capacity()];
    let mut order = Vec::with_capacity(g.n());
    for _ in 0..g.n() {
        let v = g.vertices().filter(|&v| !gone[v]).min_by_key(|&v| deg[v]).expect("vertices remain");
        gone[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            deg[u] -= 1;
        }
    }
    order.reverse();
    order
}

/// A random proper L-coloring, greedy along a smallest-last order, avoiding
/// `avoid(v)` at every vertex when given. `None` if some vertex runs out.
pub fn random_coloring(g: &Graph, lists: &ListAssignment, avoid: Option<&Coloring>, rng: &mut ChaCha8Rng) -> Option<Coloring> {
    let mut c = Coloring::empty(g.capacity());
    for v in degeneracy_order(g) {
        let free: Vec<Color> = lists
            .list(v)
            .iter()
            .copied()
            .filter(|&col| g.neighbors(v).iter().all(|&u| c.get(u) != Some(col)) && avoid.is_none_or(|a| a.get(v) != Some(col)))
            .collect();
        c.set(v, *free.choose(rng)?);
    }
    Some(c)
}

pub fn random_instance(g: Graph, opts: &InstanceOptions, rng: &mut ChaCha8Rng) -> Result<Instance, GenError> {
    let lists = random_lists(&g, opts.list_size, opts.lists, rng)?;
    let fail = || GenError::Infeasible(format!("greedy coloring ran out of colors with lists of size {}", opts.list_size));
    let alpha = random_coloring(&g, &lists, None, rng).ok_or_else(fail)?;
    let beta = random_coloring(&g, &lists, opts.disjoint.then_some(&alpha), rng).ok_or_else(fail)?;
    Ok(Instance { graph: g, lists, alpha, beta })
}

/// Graph and instance from one seed.
pub fn generate(model: &Model, opts: &InstanceOptions, seed: u64) -> Result<Instance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = generate_graph(model, &mut rng)?;
    random_instance(g, opts, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::graph::trace_faces;
    use crate::io::{emit_instance, parse_instance};
    use crate::metrics::{girth, mad_enumerate};

    fn opts(k: usize) -> InstanceOptions {
        InstanceOptions { list_size: k, lists: ListMode::Random { palette: k + 3 }, disjoint: true }
    }

    #[test]
    fn spec_strings() {
        assert_eq!("grid:3x4".parse::<Model>().unwrap(), Model::Grid { rows: 3, cols: 4 });
        assert_eq!("subdivided:k4:4".parse::<Model>().unwrap(), Model::Subdivided { base: Base::K4, t: 4 });
        assert_eq!(
            "threaded:10:2:22/9".parse::<Model>().unwrap(),
            Model::Threaded { n: 10, max_t: 2, mad: Rational::new(22, 9) }
        );
        assert!("grid:3".parse::<Model>().is_err());
        assert!("blob:1".parse::<Model>().is_err());
    }

    #[test]
    fn grid_is_bipartite_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = generate_graph(&Model::Grid { rows: 3, cols: 3 }, &mut rng).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(trace_faces(&g).unwrap().len(), 5);
        assert_eq!(girth(&g), Some(4));
    }

    #[test]
    fn hex_patch_faces_are_hexagons() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = generate_graph(&Model::HexPatch { rows: 4, cols: 5 }, &mut rng).unwrap();
        assert!(g.max_degree() <= 3);
        assert_eq!(girth(&g), Some(6));
        let faces = trace_faces(&g).unwrap();
        assert!(faces.faces.iter().filter(|f| f.len() == 6).count() >= 4);
    }

    #[test]
    fn subdivided_k4_is_sparse_enough() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g = generate_graph(&"subdivided:k4:4".parse().unwrap(), &mut rng).unwrap();
        assert_eq!(g.n(), 28);
        assert!(mad_exact(&g).unwrap().mad < Rational::new(22, 9));
    }

    #[test]
    fn random_models_meet_their_bound() {
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = generate_graph(&"random-sparse:14:17/5".parse().unwrap(), &mut rng).unwrap();
            assert!(mad_enumerate(&g).unwrap().mad < Rational::new(17, 5));
            let g = generate_graph(&"threaded:6:2:22/9".parse().unwrap(), &mut rng).unwrap();
            assert!(mad_exact(&g).unwrap().mad < Rational::new(22, 9));
        }
        assert!(matches!("threaded:6:2:2".parse::<Model>().map(|m| generate(&m, &opts(4), 0)), Ok(Err(GenError::Infeasible(_)))));
    }

    #[test]
    fn deterministic_and_parseable() {
        let m: Model = "grid-subgraph:5x5:70".parse().unwrap();
        let a = emit_instance(&generate(&m, &opts(7), 42).unwrap());
        let b = emit_instance(&generate(&m, &opts(7), 42).unwrap());
        assert_eq!(a, b);
        let inst = parse_instance(&a).unwrap();
        assert!(inst.graph.vertices().all(|v| inst.alpha.at(v) != inst.beta.at(v)));
        assert!(is_proper(&inst.graph, &inst.lists, &inst.beta).unwrap());
    }

    #[test]
    fn cycle_with_shared_lists() {
        let o = InstanceOptions { list_size: 4, lists: ListMode::Shared, disjoint: false };
        let inst = generate(&Model::Cycle(5), &o, 3).unwrap();
        assert!(inst.graph.vertices().all(|v| inst.lists.list(v) == [0, 1, 2, 3]));
    }
}
