//! Recursive solvers: detect a configuration, delete it, solve the rest,
//! re-add it stage by stage. Every stage checks its vertices against the
//! caps of its plan and the whole sequence is validated before returning.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coloring::{first_conflict, validate_sequence, Coloring, ListAssignment, RecoloringSequence, SequenceError, Step};
use crate::detect::{check_match, find_config_thm1, find_config_thm2, find_config_thm3, plan_caps, ConfigKind, ConfigMatch, DetectError, Stage};
use crate::extend::{
    extend_deg3_two_deg3_neighbors, extend_deg4_four_deg3_neighbors, extend_key_lemma, extend_pendant_triple,
    extend_three_thread, extend_two_thread, ExtendError,
};
use crate::graph::{trace_faces, Graph, GraphError, Vertex};
use crate::metrics::{mad_exact, DensityReport, MetricsError};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("mad {} is not below {bound} (witness on {} vertices)", .report.mad, .report.witness.len())]
    MadTooLarge { report: DensityReport, bound: Rational },
    #[error(transparent)]
    Detect(#[from] DetectError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("vertex {vertex} recolored {count} times, above its stage cap {cap}")]
    StageCap { vertex: Vertex, count: u32, cap: u32 },
    #[error("configuration failed its re-check: {0}")]
    BadMatch(String),
    #[error("final sequence rejected: {0}")]
    Validation(#[from] SequenceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    One,
    Two,
    Three,
}

impl Theorem {
    pub fn bound(self) -> u32 {
        match self {
            Theorem::One => 30,
            Theorem::Two => 12,
            Theorem::Three => 14,
        }
    }

    pub fn list_size(self) -> usize {
        match self {
            Theorem::One => 7,
            Theorem::Two => 6,
            Theorem::Three => 4,
        }
    }

    /// The graph-side hypotheses: an embedded triangle-free plane graph, or
    /// mad below 17/5 or 22/9.
    pub fn check_graph(self, g: &Graph) -> Result<(), SolveError> {
        match self {
            Theorem::One => {
                if !g.has_rotation() {
                    return Err(GraphError::MissingRotation.into());
                }
                for comp in g.components() {
                    trace_faces(&g.induced(&comp))?;
                }
                if !g.is_triangle_free() {
                    return Err(SolveError::Hypothesis("graph has a triangle".into()));
                }
                Ok(())
            }
            Theorem::Two => check_mad(g, Rational::new(17, 5)),
            Theorem::Three => check_mad(g, Rational::new(22, 9)),
        }
    }

    pub fn detect(self, g: &Graph) -> Result<ConfigMatch, DetectError> {
        match self {
            Theorem::One => find_config_thm1(g),
            Theorem::Two => find_config_thm2(g),
            Theorem::Three => find_config_thm3(g),
        }
    }
}

/// A validated sequence with how often each configuration was used.
#[derive(Debug, Clone)]
pub struct Solution {
    pub sequence: RecoloringSequence,
    pub max_count: u32,
    pub configs: BTreeMap<ConfigKind, usize>,
}

struct Solver<'a> {
    theorem: Theorem,
    lists: &'a ListAssignment,
    alpha: &'a Coloring,
    beta: &'a Coloring,
    list_size: usize,
    configs: BTreeMap<ConfigKind, usize>,
}

impl Solver<'_> {
    fn run(&mut self, g: &Graph, depth: u32) -> Result<RecoloringSequence, SolveError> {
        let mut seq = RecoloringSequence::new(self.alpha.restrict_to(g));
        let comps = g.components();
        if comps.len() > 1 {
            for comp in comps {
                let part = self.run(&g.induced(&comp), depth + 1)?;
                seq.append(&part);
            }
            return Ok(seq);
        }
        match g.n() {
            0 => return Ok(seq),
            1 => {
                let v = g.vertices().next().expect("one vertex");
                if self.alpha.get(v) != self.beta.get(v) {
                    seq.steps.push(Step { vertex: v, color: self.beta.at(v), depth });
                }
                return Ok(seq);
            }
            _ => {}
        }
        let m = self.theorem.detect(g)?;
        check_match(g, &m).map_err(SolveError::BadMatch)?;
        let caps = plan_caps(g, &m.stages, self.theorem.bound(), self.list_size).map_err(SolveError::BadMatch)?;
        *self.configs.entry(m.kind).or_default() += 1;
        let deleted = m.deleted();
        let mut seq = self.run(&g.without(&deleted), depth + 1)?;
        for (j, stage) in m.stages.iter().enumerate() {
            let later: Vec<Vertex> = m.stages[j + 1..].iter().flat_map(Stage::added).collect();
            let h = g.without(&later);
            seq = self.stage(&h, stage, &seq)?;
        }
        for (vertex, cap) in caps {
            let count = seq.count(vertex);
            if count > cap {
                return Err(SolveError::StageCap { vertex, count, cap });
            }
        }
        for s in seq.steps.iter_mut().filter(|s| deleted.contains(&s.vertex)) {
            s.depth = depth;
        }
        Ok(seq)
    }

    fn stage(&self, h: &Graph, stage: &Stage, inner: &RecoloringSequence) -> Result<RecoloringSequence, ExtendError> {
        let (l, a, b) = (self.lists, self.alpha, self.beta);
        match *stage {
            Stage::KeyLemma { v } => extend_key_lemma(h, l, v, inner, a, b),
            Stage::TwoThread { path } => extend_two_thread(h, l, path, inner, a, b),
            Stage::ThreeThread { path } => extend_three_thread(h, l, path, inner, a, b),
            Stage::PendantTriple { v, w } => extend_pendant_triple(h, l, v, w, inner, a, b),
            Stage::Deg3TwoDeg3 { v, w, x } => extend_deg3_two_deg3_neighbors(h, l, v, w, x, inner, a, b),
            Stage::Deg4FourDeg3 { v, w } => extend_deg4_four_deg3_neighbors(h, l, v, w, inner, a, b),
        }
    }
}

fn check_colorings(g: &Graph, lists: &ListAssignment, alpha: &Coloring, beta: &Coloring) -> Result<(), SolveError> {
    for (name, c) in [("α", alpha), ("β", beta)] {
        match first_conflict(g, lists, c) {
            Ok(None) => {}
            Ok(Some(conflict)) => return Err(SolveError::Hypothesis(format!("{name} is not a proper L-coloring: {conflict:?}"))),
            Err(e) => return Err(SolveError::Hypothesis(format!("{name}: {e}"))),
        }
    }
    Ok(())
}

fn check_lists(g: &Graph, lists: &ListAssignment, k: usize) -> Result<usize, SolveError> {
    let min = lists.min_size(g);
    if !g.is_empty() && min < k {
        return Err(SolveError::Hypothesis(format!("lists need at least {k} colors, smallest has {min}")));
    }
    Ok(min.max(k))
}

fn check_mad(g: &Graph, bound: Rational) -> Result<(), SolveError> {
    if g.is_empty() {
        return Ok(());
    }
    let report = mad_exact(g)?;
    if report.mad >= bound {
        return Err(SolveError::MadTooLarge { report, bound });
    }
    Ok(())
}

/// Hypotheses of a theorem, then the recursion, then final validation.
pub fn solve(
    theorem: Theorem,
    g: &Graph,
    lists: &ListAssignment,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<Solution, SolveError> {
    check_colorings(g, lists, alpha, beta)?;
    let list_size = check_lists(g, lists, theorem.list_size())?;
    theorem.check_graph(g)?;
    let mut solver = Solver { theorem, lists, alpha, beta, list_size, configs: BTreeMap::new() };
    let sequence = solver.run(g, 0)?;
    let report = validate_sequence(g, lists, &sequence, beta, theorem.bound())?;
    Ok(Solution { sequence, max_count: report.max_count, configs: solver.configs })
}

/// 30-good sequence for a triangle-free plane graph with 7-lists.
pub fn solve_thm1(g: &Graph, lists: &ListAssignment, alpha: &Coloring, beta: &Coloring) -> Result<RecoloringSequence, SolveError> {
    solve(Theorem::One, g, lists, alpha, beta).map(|s| s.sequence)
}

/// 12-good sequence for mad < 17/5 with 6-lists.
pub fn solve_thm2(g: &Graph, lists: &ListAssignment, alpha: &Coloring, beta: &Coloring) -> Result<RecoloringSequence, SolveError> {
    solve(Theorem::Two, g, lists, alpha, beta).map(|s| s.sequence)
}

/// 14-good sequence for mad < 22/9 with 4-lists.
pub fn solve_thm3(g: &Graph, lists: &ListAssignment, alpha: &Coloring, beta: &Coloring) -> Result<RecoloringSequence, SolveError> {
    solve(Theorem::Three, g, lists, alpha, beta).map(|s| s.sequence)
}

/// Two passes for lists of size at least `2Δ+1`: first move every vertex
/// whose color is some neighbor's target off all current and target colors
/// around it, then set every vertex to its target.
pub fn solve_high_degree(
    g: &Graph,
    lists: &ListAssignment,
    alpha: &Coloring,
    beta: &Coloring,
) -> Result<RecoloringSequence, SolveError> {
    check_colorings(g, lists, alpha, beta)?;
    check_lists(g, lists, 2 * g.max_degree() + 1)?;
    let mut seq = RecoloringSequence::new(alpha.restrict_to(g));
    let mut cur = seq.start.clone();
    for v in g.vertices() {
        let targets: Vec<_> = g.neighbors(v).iter().map(|&u| beta.at(u)).collect();
        if !targets.contains(&cur.at(v)) {
            continue;
        }
        let mut f: Vec<_> = g.neighbors(v).iter().map(|&u| cur.at(u)).collect();
        f.extend(targets);
        f.push(cur.at(v));
        let pick = if lists.allows(v, beta.at(v)) && !f.contains(&beta.at(v)) { Some(beta.at(v)) } else { lists.first_free(v, &f) };
        let c = pick.ok_or_else(|| SolveError::Extend(ExtendError::Internal(format!("no free color at {v}"))))?;
        cur.set(v, c);
        seq.steps.push(Step::new(v, c));
    }
    for v in g.vertices() {
        if cur.at(v) != beta.at(v) {
            cur.set(v, beta.at(v));
            seq.steps.push(Step::new(v, beta.at(v)));
        }
    }
    validate_sequence(g, lists, &seq, beta, 2)?;
    Ok(seq)
}
