//! Line-oriented instance and sequence files.
//!
//! ```text
//! graph 3
//! edge 0 1
//! rot 0: 1          # optional, all vertices or none
//! list 0: 1 2 3
//! alpha 0 1
//! beta 0 2
//! ```
//!
//! Sequences are `steps <m>` followed by `m` lines `recolor <v> <c>`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::{first_conflict, Color, Coloring, Conflict, ListAssignment, RecoloringSequence};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub alpha: Coloring,
    pub beta: Coloring,
}

/// Everything a file may contain; instance parts are optional here.
#[derive(Debug, Clone, Default)]
struct Document {
    n: Option<(usize, usize)>,
    edges: Vec<(usize, Vertex, Vertex)>,
    rot: Vec<Option<(usize, Vec<Vertex>)>>,
    lists: Vec<Option<(usize, Vec<Color>)>>,
    alpha: Vec<Option<(usize, Color)>>,
    beta: Vec<Option<(usize, Color)>>,
}

fn num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, ParseError> {
    match tok {
        None => err(line, format!("missing {what}")),
        Some(t) => t.parse().or_else(|_| err(line, format!("bad {what} '{t}'"))),
    }
}

fn vertex(line: usize, tok: Option<&str>, n: usize) -> Result<Vertex, ParseError> {
    let v: Vertex = num(line, tok, "vertex")?;
    if v >= n {
        return err(line, format!("vertex {v} out of range (n = {n})"));
    }
    Ok(v)
}

fn set_once<T>(slot: &mut Option<(usize, T)>, line: usize, val: T, what: &str, v: Vertex) -> Result<(), ParseError> {
    if let Some((first, _)) = slot {
        return err(line, format!("second {what} for vertex {v} (first on line {first})"));
    }
    *slot = Some((line, val));
    Ok(())
}

fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut doc = Document::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        if head == "graph" {
            if let Some((first, _)) = doc.n {
                return err(line, format!("second graph line (first on line {first})"));
            }
            let mut toks = rest.split_whitespace();
            let n: usize = num(line, toks.next(), "vertex count")?;
            if toks.next().is_some() {
                return err(line, "trailing tokens");
            }
            doc.n = Some((line, n));
            doc.rot = vec![None; n];
            doc.lists = vec![None; n];
            doc.alpha = vec![None; n];
            doc.beta = vec![None; n];
            continue;
        }
        let Some((_, n)) = doc.n else { return err(line, "expected 'graph <n>' first") };
        match head {
            "edge" => {
                let mut toks = rest.split_whitespace();
                let u = vertex(line, toks.next(), n)?;
                let v = vertex(line, toks.next(), n)?;
                if toks.next().is_some() {
                    return err(line, "trailing tokens");
                }
                doc.edges.push((line, u, v));
            }
            "rot" | "list" => {
                let Some((v, items)) = rest.split_once(':') else { return err(line, format!("expected '{head} <v>: ...'")) };
                let v = vertex(line, Some(v.trim()), n)?;
                if head == "rot" {
                    let items = items.split_whitespace().map(|t| vertex(line, Some(t), n)).collect::<Result<_, _>>()?;
                    set_once(&mut doc.rot[v], line, items, "rot", v)?;
                } else {
                    let items: Vec<Color> = items.split_whitespace().map(|t| num(line, Some(t), "color")).collect::<Result<_, _>>()?;
                    if items.is_empty() {
                        return err(line, format!("empty list at vertex {v}"));
                    }
                    set_once(&mut doc.lists[v], line, items, "list", v)?;
                }
            }
            "alpha" | "beta" => {
                let mut toks = rest.split_whitespace();
                let v = vertex(line, toks.next(), n)?;
                let c: Color = num(line, toks.next(), "color")?;
                if toks.next().is_some() {
                    return err(line, "trailing tokens");
                }
                let slot = if head == "alpha" { &mut doc.alpha[v] } else { &mut doc.beta[v] };
                set_once(slot, line, c, head, v)?;
            }
            other => return err(line, format!("unknown directive '{other}'")),
        }
    }
    if doc.n.is_none() {
        return err(0, "missing 'graph <n>' line");
    }
    Ok(doc)
}

fn build_graph(doc: &Document) -> Result<Graph, ParseError> {
    let (gline, n) = doc.n.expect("checked by parse_document");
    let mut g = Graph::new(n);
    for &(line, u, v) in &doc.edges {
        if let Err(e) = g.add_edge(u, v) {
            return err(line, e.to_string());
        }
    }
    let given = doc.rot.iter().filter(|r| r.is_some()).count();
    if given > 0 {
        if let Some(v) = doc.rot.iter().position(Option::is_none) {
            return err(gline, format!("rotation missing at vertex {v}; give all rot lines or none"));
        }
        let rot: Vec<Vec<Vertex>> = doc.rot.iter().map(|r| r.as_ref().expect("all present").1.clone()).collect();
        if let Err(e) = g.set_rotation(rot) {
            let line = match e {
                crate::graph::GraphError::BadRotation(v) => doc.rot[v].as_ref().map_or(gline, |r| r.0),
                _ => gline,
            };
            return err(line, e.to_string());
        }
    }
    Ok(g)
}

/// Parse only the graph part (with its rotation); list and coloring lines are
/// syntax-checked but otherwise ignored.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    build_graph(&parse_document(text)?)
}

fn coloring(slots: &[Option<(usize, Color)>], what: &str, gline: usize) -> Result<Coloring, ParseError> {
    let mut out = Vec::with_capacity(slots.len());
    for (v, s) in slots.iter().enumerate() {
        match s {
            Some((_, c)) => out.push(*c),
            None => return err(gline, format!("{what} missing at vertex {v}")),
        }
    }
    Ok(Coloring::from_vec(out))
}

fn check_proper(g: &Graph, lists: &ListAssignment, c: &Coloring, slots: &[Option<(usize, Color)>], what: &str) -> Result<(), ParseError> {
    match first_conflict(g, lists, c) {
        Ok(None) => Ok(()),
        Ok(Some(Conflict::NotInList(v, col))) => err(slots[v].as_ref().map_or(0, |s| s.0), format!("{what} {v} {col} is not in the list of {v}")),
        Ok(Some(Conflict::Edge(u, v))) => {
            let line = slots[u].as_ref().map_or(0, |s| s.0).max(slots[v].as_ref().map_or(0, |s| s.0));
            err(line, format!("{what} is improper on edge {u}-{v}"))
        }
        Err(e) => err(0, e.to_string()),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let doc = parse_document(text)?;
    let graph = build_graph(&doc)?;
    let gline = doc.n.expect("present").0;
    let mut lists = Vec::with_capacity(doc.lists.len());
    for (v, l) in doc.lists.iter().enumerate() {
        match l {
            Some((_, l)) => lists.push(l.clone()),
            None => return err(gline, format!("list missing at vertex {v}")),
        }
    }
    let lists = ListAssignment::new(lists);
    let alpha = coloring(&doc.alpha, "alpha", gline)?;
    let beta = coloring(&doc.beta, "beta", gline)?;
    check_proper(&graph, &lists, &alpha, &doc.alpha, "alpha")?;
    check_proper(&graph, &lists, &beta, &doc.beta, "beta")?;
    Ok(Instance { graph, lists, alpha, beta })
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// Canonical text for a graph: sorted edges, then rotation lines if any.
pub fn emit_graph(g: &Graph) -> String {
    let mut s = format!("graph {}\n", g.capacity());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "edge {u} {v}");
    }
    if let Some(rot) = g.rotation() {
        for (v, r) in rot.iter().enumerate() {
            let _ = writeln!(s, "rot {v}: {}", join(r));
        }
    }
    s
}

pub fn emit_instance(inst: &Instance) -> String {
    let mut s = emit_graph(&inst.graph);
    let n = inst.graph.capacity();
    for v in 0..n {
        let _ = writeln!(s, "list {v}: {}", join(inst.lists.list(v)));
    }
    for v in 0..n {
        let _ = writeln!(s, "alpha {v} {}", inst.alpha.at(v));
    }
    for v in 0..n {
        let _ = writeln!(s, "beta {v} {}", inst.beta.at(v));
    }
    s
}

pub fn emit_sequence(seq: &RecoloringSequence) -> String {
    let mut s = format!("steps {}\n", seq.steps.len());
    for st in &seq.steps {
        let _ = writeln!(s, "recolor {} {}", st.vertex, st.color);
    }
    s
}

/// The `(vertex, color)` steps of a sequence file.
pub fn parse_sequence(text: &str) -> Result<Vec<(Vertex, Color)>, ParseError> {
    let mut declared = None;
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        match toks.next() {
            Some("steps") if declared.is_none() => declared = Some(num::<usize>(line, toks.next(), "step count")?),
            Some("recolor") if declared.is_some() => {
                let v = num(line, toks.next(), "vertex")?;
                let c = num(line, toks.next(), "color")?;
                steps.push((v, c));
            }
            Some(_) if declared.is_none() => return err(line, "expected 'steps <m>' first"),
            Some(other) => return err(line, format!("unexpected '{other}'")),
            None => unreachable!("blank lines skipped"),
        }
        if toks.next().is_some() {
            return err(line, "trailing tokens");
        }
    }
    match declared {
        None => err(0, "missing 'steps <m>' line"),
        Some(m) if m != steps.len() => err(0, format!("header declares {m} steps but {} follow", steps.len())),
        Some(_) => Ok(steps),
    }
}
