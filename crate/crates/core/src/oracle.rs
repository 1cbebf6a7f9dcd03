//! Brute-force ground truth on tiny instances: the full recoloring graph,
//! shortest distances, and exhaustive checks of extension budgets.

use std::collections::{BTreeMap, HashSet, VecDeque};

use thiserror::Error;

use crate::coloring::{first_conflict, validate_sequence, Color, Coloring, ListAssignment, RecoloringSequence, Step};
use crate::extend::ExtendError;
use crate::graph::{named, Graph, Vertex};

pub const DEFAULT_STATE_CAP: u64 = 2_000_000;
/// Above this many states adjacency is generated on the fly.
const STORED_ADJACENCY: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("state space has up to {estimate} states, above the cap {cap}")]
    TooLarge { estimate: u128, cap: u64 },
    #[error("{0} is not a proper L-coloring of the graph")]
    NotAState(&'static str),
    #[error("budget search limited to {0}")]
    SearchTooLarge(String),
}

/// The cap from `RECOLOR_STATE_CAP`, else [`DEFAULT_STATE_CAP`].
pub fn state_cap() -> u64 {
    std::env::var("RECOLOR_STATE_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_STATE_CAP)
}

/// All proper L-colorings, each encoded as a mixed-radix integer over the
/// per-vertex list indices; two states are adjacent when they differ at
/// exactly one vertex.
#[derive(Debug, Clone)]
pub struct StateSpace {
    verts: Vec<Vertex>,
    pos: Vec<usize>,
    nbrs: Vec<Vec<usize>>,
    lists: Vec<Vec<Color>>,
    radix: Vec<u64>,
    codes: Vec<u64>,
    adjacency: Option<Vec<Vec<u32>>>,
}

impl StateSpace {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    fn digits(&self, code: u64) -> Vec<usize> {
        self.radix.iter().zip(&self.lists).map(|(&r, l)| ((code / r) % l.len() as u64) as usize).collect()
    }

    pub fn coloring(&self, state: usize) -> Coloring {
        let mut c = Coloring::empty(self.pos.len());
        for (p, d) in self.digits(self.codes[state]).into_iter().enumerate() {
            c.set(self.verts[p], self.lists[p][d]);
        }
        c
    }

    pub fn index_of(&self, c: &Coloring) -> Option<usize> {
        let mut code = 0;
        for (p, &v) in self.verts.iter().enumerate() {
            let d = self.lists[p].binary_search(&c.get(v)?).ok()?;
            code += d as u64 * self.radix[p];
        }
        self.codes.binary_search(&code).ok()
    }

    fn generate(&self, state: usize) -> Vec<usize> {
        let code = self.codes[state];
        let d = self.digits(code);
        let mut out = Vec::new();
        for p in 0..self.verts.len() {
            for (j, &col) in self.lists[p].iter().enumerate() {
                if j == d[p] || self.nbrs[p].iter().any(|&q| self.lists[q][d[q]] == col) {
                    continue;
                }
                let next = code - d[p] as u64 * self.radix[p] + j as u64 * self.radix[p];
                out.push(self.codes.binary_search(&next).expect("proper neighbor states are enumerated"));
            }
        }
        out
    }

    pub fn neighbors(&self, state: usize) -> Vec<usize> {
        match &self.adjacency {
            Some(adj) => adj[state].iter().map(|&s| s as usize).collect(),
            None => self.generate(state),
        }
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|s| self.neighbors(s).len()).sum::<usize>() / 2
    }
}

pub fn build_state_space(g: &Graph, lists: &ListAssignment) -> Result<StateSpace, OracleError> {
    build_state_space_with_cap(g, lists, state_cap())
}

pub fn build_state_space_with_cap(g: &Graph, lists: &ListAssignment, cap: u64) -> Result<StateSpace, OracleError> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let estimate = verts.iter().map(|&v| lists.list(v).len() as u128).product::<u128>();
    if estimate > cap as u128 {
        return Err(OracleError::TooLarge { estimate, cap });
    }
    let mut pos = vec![usize::MAX; g.capacity()];
    for (p, &v) in verts.iter().enumerate() {
        pos[v] = p;
    }
    let nbrs: Vec<Vec<usize>> = verts.iter().map(|&v| g.neighbors(v).iter().map(|&u| pos[u]).collect()).collect();
    let vlists: Vec<Vec<Color>> = verts.iter().map(|&v| lists.list(v).to_vec()).collect();
    let mut radix = vec![1u64; verts.len()];
    for p in (0..verts.len().saturating_sub(1)).rev() {
        radix[p] = radix[p + 1] * vlists[p + 1].len() as u64;
    }
    // backtracking in digit order emits codes in increasing order
    let mut codes = Vec::new();
    let mut digit = vec![0usize; verts.len()];
    fn rec(p: usize, digit: &mut [usize], nbrs: &[Vec<usize>], lists: &[Vec<Color>], radix: &[u64], code: u64, out: &mut Vec<u64>) {
        if p == digit.len() {
            out.push(code);
            return;
        }
        for (j, &col) in lists[p].iter().enumerate() {
            if nbrs[p].iter().any(|&q| q < p && lists[q][digit[q]] == col) {
                continue;
            }
            digit[p] = j;
            rec(p + 1, digit, nbrs, lists, radix, code + j as u64 * radix[p], out);
        }
    }
    rec(0, &mut digit, &nbrs, &vlists, &radix, 0, &mut codes);
    let mut space = StateSpace { verts, pos, nbrs, lists: vlists, radix, codes, adjacency: None };
    if space.len() <= STORED_ADJACENCY {
        let adj = (0..space.len()).map(|s| space.generate(s).into_iter().map(|x| x as u32).collect()).collect();
        space.adjacency = Some(adj);
    }
    Ok(space)
}

fn bfs(space: &StateSpace, from: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; space.len()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(s) = queue.pop_front() {
        let d = dist[s].expect("queued states have distances");
        for t in space.neighbors(s) {
            if dist[t].is_none() {
                dist[t] = Some(d + 1);
                queue.push_back(t);
            }
        }
    }
    dist
}

/// Shortest number of recoloring steps from `alpha` to `beta`, `None` when
/// unreachable.
pub fn bfs_distance(space: &StateSpace, alpha: &Coloring, beta: &Coloring) -> Result<Option<usize>, OracleError> {
    let a = space.index_of(alpha).ok_or(OracleError::NotAState("alpha"))?;
    let b = space.index_of(beta).ok_or(OracleError::NotAState("beta"))?;
    Ok(bfs(space, a)[b])
}

/// Diameter of the recoloring graph, `None` when it is disconnected.
pub fn diameter(space: &StateSpace) -> Option<usize> {
    let mut best = 0;
    for s in 0..space.len() {
        for d in bfs(space, s) {
            best = best.max(d?);
        }
    }
    Some(best)
}

/// Number of connected components of the recoloring graph.
pub fn component_count(space: &StateSpace) -> usize {
    let mut seen = vec![false; space.len()];
    let mut count = 0;
    for s in 0..space.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in space.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// Is there a sequence from `alpha` to `beta` recoloring every vertex at
/// most `k` times? Searches (coloring, residual counts); tiny inputs only.
pub fn budget_search(g: &Graph, lists: &ListAssignment, alpha: &Coloring, beta: &Coloring, k: u32) -> Result<bool, OracleError> {
    let verts: Vec<Vertex> = g.vertices().collect();
    if verts.len() > 5 || k > 3 || verts.iter().any(|&v| lists.list(v).len() > 4) {
        return Err(OracleError::SearchTooLarge("n ≤ 5, lists ≤ 4, k ≤ 3".into()));
    }
    for (name, c) in [("alpha", alpha), ("beta", beta)] {
        if !matches!(first_conflict(g, lists, c), Ok(None)) {
            return Err(OracleError::NotAState(name));
        }
    }
    let start: Vec<Color> = verts.iter().map(|&v| alpha.at(v)).collect();
    let goal: Vec<Color> = verts.iter().map(|&v| beta.at(v)).collect();
    let mut seen: HashSet<(Vec<Color>, Vec<u32>)> = HashSet::new();
    let mut stack = vec![(start, vec![0u32; verts.len()])];
    while let Some((cur, used)) = stack.pop() {
        if cur == goal {
            return Ok(true);
        }
        if !seen.insert((cur.clone(), used.clone())) {
            continue;
        }
        for (p, &v) in verts.iter().enumerate() {
            if used[p] == k {
                continue;
            }
            for &c in lists.list(v) {
                let clash = g.neighbors(v).iter().any(|&u| cur[verts.iter().position(|&w| w == u).expect("live")] == c);
                if c == cur[p] || clash {
                    continue;
                }
                let mut next = cur.clone();
                next[p] = c;
                let mut u2 = used.clone();
                u2[p] += 1;
                stack.push((next, u2));
            }
        }
    }
    Ok(false)
}

/// A gadget for [`exhaustive_extension_check`]: `added` vertices are
/// re-inserted by the extender, all lists are `0..list_size`.
/// `symmetries` are automorphisms (as maps `v -> σ(v)`) fixing `added`;
/// only one input per orbit is run.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub graph: Graph,
    pub added: Vec<Vertex>,
    pub list_size: usize,
    pub max_len: usize,
    pub symmetries: Vec<Vec<Vertex>>,
}

impl Gadget {
    pub fn new(graph: Graph, added: Vec<Vertex>, list_size: usize, max_len: usize) -> Self {
        Gadget { graph, added, list_size, max_len, symmetries: Vec::new() }
    }

    /// `K_{1,d}` with the center `0` added back and every leaf permutation
    /// as a symmetry.
    pub fn star(d: usize, list_size: usize, max_len: usize) -> Self {
        let mut perms = Vec::new();
        permutations(&mut (1..=d).collect(), 0, &mut perms);
        let symmetries = perms.into_iter().map(|p| std::iter::once(0).chain(p).collect()).collect();
        Gadget { graph: named::star(d), added: vec![0], list_size, max_len, symmetries }
    }
}

fn permutations(items: &mut Vec<Vertex>, k: usize, out: &mut Vec<Vec<Vertex>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// One failing case, enough to replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub alpha: Coloring,
    pub beta: Coloring,
    pub inner: Vec<(Vertex, Color)>,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExhaustiveReport {
    pub runs: u64,
    /// Largest count seen per added vertex.
    pub worst: BTreeMap<Vertex, u32>,
    /// Largest amount by which a count fell below its claimed cap, minimum over runs.
    pub min_slack: Option<i64>,
    pub counterexample: Option<Certificate>,
}

type Extender<'a> = dyn Fn(&Graph, &ListAssignment, &RecoloringSequence, &Coloring, &Coloring) -> Result<RecoloringSequence, ExtendError> + 'a;
type Claim<'a> = dyn Fn(&RecoloringSequence) -> Vec<(Vertex, u32)> + 'a;

/// Run `extend` on every α, every inner sequence on the old vertices of at
/// most `max_len` steps and every final β, and check the output against
/// the validator and the caps `claim` promises for that inner sequence.
/// Colors are enumerated up to renaming (first use in increasing order),
/// which is exact because all lists are equal.
pub fn exhaustive_extension_check(gadget: &Gadget, extend: &Extender, claim: &Claim) -> ExhaustiveReport {
    let g = &gadget.graph;
    let n = g.capacity();
    let lists = ListAssignment::uniform(n, 0..gadget.list_size as Color);
    let old: Vec<Vertex> = g.vertices().filter(|v| !gadget.added.contains(v)).collect();
    let inner_graph = g.without(&gadget.added);
    let order: Vec<Vertex> = g.vertices().collect();
    let symmetries = gadget
        .symmetries
        .iter()
        .filter(|s| s.iter().enumerate().any(|(v, &w)| v != w))
        .map(|s| {
            let mut inv = vec![0; s.len()];
            for (v, &w) in s.iter().enumerate() {
                inv[w] = v;
            }
            (s.clone(), inv)
        })
        .collect();
    let mut ctx = Ctx { gadget, lists, old, inner_graph, order: order.clone(), symmetries, extend, claim, report: ExhaustiveReport::default() };
    let mut alpha = Coloring::empty(n);
    ctx.alphas(&order, 0, &mut alpha, 0);
    ctx.report
}

struct Ctx<'a, 'b> {
    gadget: &'a Gadget,
    lists: ListAssignment,
    old: Vec<Vertex>,
    inner_graph: Graph,
    order: Vec<Vertex>,
    symmetries: Vec<(Vec<Vertex>, Vec<Vertex>)>,
    extend: &'a Extender<'b>,
    claim: &'a Claim<'b>,
    report: ExhaustiveReport,
}

impl Ctx<'_, '_> {
    fn fresh(&self, used: usize) -> usize {
        (used + 1).min(self.gadget.list_size)
    }

    fn stop(&self) -> bool {
        self.report.counterexample.is_some()
    }

    /// Whether α followed by `steps` is the smallest encoding in its orbit
    /// under the symmetries and color renaming. Enumerated inputs are
    /// already in first-use color order, so each image is renamed the same
    /// way and compared item by item; a prefix that is not minimal has no
    /// minimal extension.
    fn canonical(&self, alpha: &Coloring, steps: &[Step]) -> bool {
        use std::cmp::Ordering;
        let k = self.gadget.list_size;
        'sym: for (sigma, inv) in &self.symmetries {
            let mut rename = vec![Color::MAX; k];
            let mut next = 0;
            let mut name = |c: Color| {
                let slot = &mut rename[c as usize];
                if *slot == Color::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            };
            for &p in &self.order {
                match name(alpha.at(inv[p])).cmp(&alpha.at(p)) {
                    Ordering::Less => return false,
                    Ordering::Greater => continue 'sym,
                    Ordering::Equal => {}
                }
            }
            for st in steps {
                match (sigma[st.vertex], name(st.color)).cmp(&(st.vertex, st.color)) {
                    Ordering::Less => return false,
                    Ordering::Greater => continue 'sym,
                    Ordering::Equal => {}
                }
            }
        }
        true
    }

    fn alphas(&mut self, order: &[Vertex], i: usize, alpha: &mut Coloring, used: usize) {
        if self.stop() {
            return;
        }
        if i == order.len() {
            if !self.canonical(alpha, &[]) {
                return;
            }
            let mut seq = RecoloringSequence::new(alpha.restrict_to(&self.inner_graph));
            let mut cur = alpha.clone();
            self.inner(&mut seq, &mut cur, alpha, used);
            return;
        }
        let v = order[i];
        for c in 0..self.fresh(used) as Color {
            if self.gadget.graph.neighbors(v).iter().any(|&u| alpha.get(u) == Some(c)) {
                continue;
            }
            alpha.set(v, c);
            self.alphas(order, i + 1, alpha, used.max(c as usize + 1));
        }
        alpha.unset(v);
    }

    fn inner(&mut self, seq: &mut RecoloringSequence, cur: &mut Coloring, alpha: &Coloring, used: usize) {
        if self.stop() {
            return;
        }
        let mut beta = cur.clone();
        let added = self.gadget.added.clone();
        self.betas(&added, 0, &mut beta, seq, alpha, used);
        if seq.steps.len() == self.gadget.max_len {
            return;
        }
        for u in self.old.clone() {
            let before = cur.at(u);
            for c in 0..self.fresh(used) as Color {
                if c == before || self.inner_graph.neighbors(u).iter().any(|&w| cur.get(w) == Some(c)) {
                    continue;
                }
                cur.set(u, c);
                seq.steps.push(Step::new(u, c));
                if self.canonical(alpha, &seq.steps) {
                    self.inner(seq, cur, alpha, used.max(c as usize + 1));
                }
                seq.steps.pop();
            }
            cur.set(u, before);
        }
    }

    fn betas(&mut self, added: &[Vertex], i: usize, beta: &mut Coloring, seq: &RecoloringSequence, alpha: &Coloring, used: usize) {
        if self.stop() {
            return;
        }
        if i == added.len() {
            self.run(seq, alpha, beta);
            return;
        }
        let v = added[i];
        for c in 0..self.fresh(used) as Color {
            if self.gadget.graph.neighbors(v).iter().any(|&u| (!added[i..].contains(&u)) && beta.get(u) == Some(c)) {
                continue;
            }
            beta.set(v, c);
            self.betas(added, i + 1, beta, seq, alpha, used.max(c as usize + 1));
        }
    }

    fn run(&mut self, seq: &RecoloringSequence, alpha: &Coloring, beta: &Coloring) {
        self.report.runs += 1;
        let g = &self.gadget.graph;
        let fail = |reason: String| Certificate {
            alpha: alpha.clone(),
            beta: beta.clone(),
            inner: seq.steps.iter().map(|s| (s.vertex, s.color)).collect(),
            reason,
        };
        let out = match (self.extend)(g, &self.lists, seq, alpha, beta) {
            Ok(out) => out,
            Err(e) => {
                self.report.counterexample = Some(fail(e.to_string()));
                return;
            }
        };
        if let Err(e) = validate_sequence(g, &self.lists, &out, beta, u32::MAX) {
            self.report.counterexample = Some(fail(e.to_string()));
            return;
        }
        for (v, cap) in (self.claim)(seq) {
            let count = out.count(v);
            let w = self.report.worst.entry(v).or_default();
            *w = (*w).max(count);
            let slack = cap as i64 - count as i64;
            self.report.min_slack = Some(self.report.min_slack.map_or(slack, |m| m.min(slack)));
            if slack < 0 {
                self.report.counterexample = Some(fail(format!("vertex {v} recolored {count} times, claimed cap {cap}")));
                return;
            }
        }
    }
}
