//! List assignments, colorings and recoloring sequences.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Color = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("vertex {0} has no color")]
    Missing(Vertex),
    #[error("vertex {0} has no list")]
    MissingList(Vertex),
}

/// Per-vertex color lists, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<Color>>) -> Self {
        let lists = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        ListAssignment { lists }
    }

    /// The same list at every vertex.
    pub fn uniform(n: usize, colors: impl IntoIterator<Item = Color>) -> Self {
        let list: Vec<Color> = colors.into_iter().collect();
        ListAssignment::new(vec![list; n])
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        self.lists.get(v).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn allows(&self, v: Vertex, c: Color) -> bool {
        self.list(v).binary_search(&c).is_ok()
    }

    /// True iff every live vertex of `g` has a list of exactly `k` colors.
    pub fn is_k_assignment(&self, g: &Graph, k: usize) -> bool {
        g.vertices().all(|v| self.list(v).len() == k)
    }

    pub fn min_size(&self, g: &Graph) -> usize {
        g.vertices().map(|v| self.list(v).len()).min().unwrap_or(0)
    }

    /// Smallest color of `L(v)` outside `forbidden`.
    pub fn first_free(&self, v: Vertex, forbidden: &[Color]) -> Option<Color> {
        self.list(v).iter().copied().find(|c| !forbidden.contains(c))
    }
}

/// A (possibly partial) coloring indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
}

impl Coloring {
    pub fn empty(capacity: usize) -> Self {
        Coloring { colors: vec![None; capacity] }
    }

    pub fn from_vec(colors: Vec<Color>) -> Self {
        Coloring { colors: colors.into_iter().map(Some).collect() }
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors.get(v).copied().flatten()
    }

    /// Color of `v`; panics if uncolored.
    pub fn at(&self, v: Vertex) -> Color {
        self.get(v).unwrap_or_else(|| panic!("vertex {v} is uncolored"))
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        if v >= self.colors.len() {
            self.colors.resize(v + 1, None);
        }
        self.colors[v] = Some(c);
    }

    pub fn unset(&mut self, v: Vertex) {
        if let Some(slot) = self.colors.get_mut(v) {
            *slot = None;
        }
    }

    pub fn capacity(&self) -> usize {
        self.colors.len()
    }

    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.colors.iter().enumerate().filter(|(_, c)| c.is_some()).map(|(v, _)| v)
    }

    pub fn len(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Keep only the vertices in `set`.
    pub fn restrict(&self, set: &BTreeSet<Vertex>) -> Coloring {
        let colors = self
            .colors
            .iter()
            .enumerate()
            .map(|(v, c)| if set.contains(&v) { *c } else { None })
            .collect();
        Coloring { colors }
    }

    /// Keep only the live vertices of `g`.
    pub fn restrict_to(&self, g: &Graph) -> Coloring {
        let colors = (0..self.colors.len().max(g.capacity()))
            .map(|v| if g.contains(v) { self.get(v) } else { None })
            .collect();
        Coloring { colors }
    }

    /// Agreement on the live vertices of `g`.
    pub fn agrees_on(&self, other: &Coloring, g: &Graph) -> bool {
        g.vertices().all(|v| self.get(v) == other.get(v))
    }
}

/// Checks list membership and edge-distinctness on the live vertices of `g`.
pub fn is_proper(g: &Graph, lists: &ListAssignment, c: &Coloring) -> Result<bool, ColoringError> {
    Ok(first_conflict(g, lists, c)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conflict {
    NotInList(Vertex, Color),
    Edge(Vertex, Vertex),
}

pub fn first_conflict(g: &Graph, lists: &ListAssignment, c: &Coloring) -> Result<Option<Conflict>, ColoringError> {
    for v in g.vertices() {
        let col = c.get(v).ok_or(ColoringError::Missing(v))?;
        if !lists.allows(v, col) {
            return Ok(Some(Conflict::NotInList(v, col)));
        }
    }
    for (u, v) in g.edges() {
        if c.get(u) == c.get(v) {
            return Ok(Some(Conflict::Edge(u, v)));
        }
    }
    Ok(None)
}

/// One recoloring step; `depth` records which recursion level emitted it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub vertex: Vertex,
    pub color: Color,
    pub depth: u32,
}

impl Step {
    pub fn new(vertex: Vertex, color: Color) -> Self {
        Step { vertex, color, depth: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RecoloringSequence {
    pub start: Coloring,
    pub steps: Vec<Step>,
}

impl RecoloringSequence {
    pub fn new(start: Coloring) -> Self {
        RecoloringSequence { start, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Times each vertex is recolored, indexed by vertex id.
    pub fn counts(&self) -> Vec<u32> {
        let cap = self.steps.iter().map(|s| s.vertex + 1).max().unwrap_or(0).max(self.start.capacity());
        let mut counts = vec![0; cap];
        for s in &self.steps {
            counts[s.vertex] += 1;
        }
        counts
    }

    pub fn count(&self, v: Vertex) -> u32 {
        self.steps.iter().filter(|s| s.vertex == v).count() as u32
    }

    pub fn max_count(&self) -> u32 {
        self.counts().into_iter().max().unwrap_or(0)
    }

    /// Coloring after replaying every step (no validity checks).
    pub fn final_coloring(&self) -> Coloring {
        let mut c = self.start.clone();
        for s in &self.steps {
            c.set(s.vertex, s.color);
        }
        c
    }

    /// The steps touching `set`, as (vertex, color) pairs.
    pub fn restricted_steps(&self, set: &BTreeSet<Vertex>) -> Vec<(Vertex, Color)> {
        self.steps.iter().filter(|s| set.contains(&s.vertex)).map(|s| (s.vertex, s.color)).collect()
    }

    /// Append another sequence that starts where this one ends.
    pub fn append(&mut self, other: &RecoloringSequence) {
        self.steps.extend_from_slice(&other.steps);
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("start coloring: {0}")]
    Start(#[from] ColoringError),
    #[error("start coloring is not a proper L-coloring ({0:?})")]
    StartImproper(Conflict),
    #[error("step {index}: vertex {vertex} is not in the graph")]
    UnknownVertex { index: usize, vertex: Vertex },
    #[error("step {index}: vertex {vertex} already has color {color}")]
    NoOp { index: usize, vertex: Vertex, color: Color },
    #[error("step {index}: color {color} is not in the list of vertex {vertex}")]
    NotInList { index: usize, vertex: Vertex, color: Color },
    #[error("step {index}: vertex {vertex} and neighbor {neighbor} both get color {color}")]
    EdgeConflict { index: usize, vertex: Vertex, neighbor: Vertex, color: Color },
    #[error("step {index}: vertex {vertex} recolored more than {bound} times")]
    CountExceeded { index: usize, vertex: Vertex, bound: u32 },
    #[error("final coloring differs from the target at vertex {vertex}")]
    WrongTarget { index: usize, vertex: Vertex },
}

impl SequenceError {
    /// Index of the first offending step; the step count for a wrong target.
    pub fn index(&self) -> Option<usize> {
        match self {
            SequenceError::Start(_) | SequenceError::StartImproper(_) => None,
            SequenceError::UnknownVertex { index, .. }
            | SequenceError::NoOp { index, .. }
            | SequenceError::NotInList { index, .. }
            | SequenceError::EdgeConflict { index, .. }
            | SequenceError::CountExceeded { index, .. }
            | SequenceError::WrongTarget { index, .. } => Some(*index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub steps: usize,
    pub max_count: u32,
    pub argmax: Option<Vertex>,
}

/// Replay `seq` on `g` and check that every intermediate coloring is a
/// proper L-coloring, the result is `target`, and nobody is recolored more
/// than `bound` times.
pub fn validate_sequence(
    g: &Graph,
    lists: &ListAssignment,
    seq: &RecoloringSequence,
    target: &Coloring,
    bound: u32,
) -> Result<ValidationReport, SequenceError> {
    let start = seq.start.restrict_to(g);
    if let Some(c) = first_conflict(g, lists, &start)? {
        return Err(SequenceError::StartImproper(c));
    }
    let mut cur = start;
    let mut counts = vec![0u32; g.capacity()];
    for (index, s) in seq.steps.iter().enumerate() {
        let (vertex, color) = (s.vertex, s.color);
        if !g.contains(vertex) {
            return Err(SequenceError::UnknownVertex { index, vertex });
        }
        if cur.get(vertex) == Some(color) {
            return Err(SequenceError::NoOp { index, vertex, color });
        }
        if !lists.allows(vertex, color) {
            return Err(SequenceError::NotInList { index, vertex, color });
        }
        if let Some(&neighbor) = g.neighbors(vertex).iter().find(|&&u| cur.get(u) == Some(color)) {
            return Err(SequenceError::EdgeConflict { index, vertex, neighbor, color });
        }
        counts[vertex] += 1;
        if counts[vertex] > bound {
            return Err(SequenceError::CountExceeded { index, vertex, bound });
        }
        cur.set(vertex, color);
    }
    if let Some(vertex) = g.vertices().find(|&v| cur.get(v) != target.get(v)) {
        return Err(SequenceError::WrongTarget { index: seq.steps.len(), vertex });
    }
    let (argmax, max_count) = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map_or((None, 0), |(v, &c)| (Some(v), c));
    Ok(ValidationReport { steps: seq.steps.len(), max_count, argmax })
}

/// Coloring restricted to `set`.
pub fn restrict(c: &Coloring, set: &BTreeSet<Vertex>) -> Coloring {
    c.restrict(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn proper_colorings() {
        let c4 = named::cycle(4);
        let l = ListAssignment::uniform(4, [1, 2]);
        assert!(is_proper(&c4, &l, &Coloring::from_vec(vec![1, 2, 1, 2])).unwrap());

        let edge = named::path(2);
        let l1 = ListAssignment::uniform(2, [1]);
        assert!(!is_proper(&edge, &l1, &Coloring::from_vec(vec![1, 1])).unwrap());

        let k4 = named::complete(4);
        let l4 = ListAssignment::uniform(4, [1, 2, 3, 4]);
        assert!(is_proper(&k4, &l4, &Coloring::from_vec(vec![1, 2, 3, 4])).unwrap());
    }

    #[test]
    fn partial_coloring_is_an_error() {
        let g = named::path(2);
        let mut c = Coloring::empty(2);
        c.set(0, 1);
        assert_eq!(is_proper(&g, &ListAssignment::uniform(2, [1, 2]), &c), Err(ColoringError::Missing(1)));
    }

    #[test]
    fn empty_sequence_validates_against_its_start() {
        let g = named::path(3);
        let l = ListAssignment::uniform(3, [1, 2]);
        let a = Coloring::from_vec(vec![1, 2, 1]);
        let rep = validate_sequence(&g, &l, &RecoloringSequence::new(a.clone()), &a, 0).unwrap();
        assert_eq!(rep, ValidationReport { steps: 0, max_count: 0, argmax: None });
    }

    #[test]
    fn swap_on_an_edge_takes_three_steps() {
        let g = named::path(2);
        let l = ListAssignment::uniform(2, [1, 2, 3]);
        let mut seq = RecoloringSequence::new(Coloring::from_vec(vec![1, 2]));
        seq.steps = vec![Step::new(0, 3), Step::new(1, 1), Step::new(0, 2)];
        let rep = validate_sequence(&g, &l, &seq, &Coloring::from_vec(vec![2, 1]), 2).unwrap();
        assert_eq!(rep.steps, 3);
        assert_eq!((rep.max_count, rep.argmax), (2, Some(0)));
    }

    #[test]
    fn reports_first_bad_step() {
        let g = named::path(2);
        let l = ListAssignment::uniform(2, [1, 2, 3]);
        let mut seq = RecoloringSequence::new(Coloring::from_vec(vec![1, 2]));
        seq.steps = vec![Step::new(0, 3), Step::new(1, 3)];
        let err = validate_sequence(&g, &l, &seq, &Coloring::from_vec(vec![3, 3]), 5).unwrap_err();
        assert_eq!(err.index(), Some(1));
        assert!(matches!(err, SequenceError::EdgeConflict { neighbor: 0, .. }));

        seq.steps = vec![Step::new(0, 1)];
        assert!(matches!(
            validate_sequence(&g, &l, &seq, &Coloring::from_vec(vec![1, 2]), 5),
            Err(SequenceError::NoOp { index: 0, .. })
        ));
        seq.steps = vec![Step::new(0, 3), Step::new(0, 1)];
        assert!(matches!(
            validate_sequence(&g, &l, &seq, &Coloring::from_vec(vec![1, 2]), 1),
            Err(SequenceError::CountExceeded { index: 1, .. })
        ));
        assert!(matches!(
            validate_sequence(&g, &l, &seq, &Coloring::from_vec(vec![3, 2]), 5),
            Err(SequenceError::WrongTarget { index: 2, vertex: 0 })
        ));
    }

    #[test]
    fn restriction() {
        let a = Coloring::from_vec(vec![1, 2, 3, 1, 2]);
        let all: BTreeSet<Vertex> = (0..5).collect();
        assert_eq!(restrict(&a, &all), a);
        assert!(restrict(&a, &BTreeSet::new()).is_empty());
        let ends: BTreeSet<Vertex> = [0, 4].into();
        let r = restrict(&a, &ends);
        assert_eq!((r.len(), r.get(0), r.get(4), r.get(2)), (2, Some(1), Some(2), None));
    }
}
