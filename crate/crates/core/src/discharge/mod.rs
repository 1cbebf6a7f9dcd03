//! Exact-rational discharging audits of the three structural lemmas.
//!
//! Each audit takes a graph without the lemma's configurations, applies the
//! rules in their fixed order and records every transfer in a
//! [`ChargeLedger`]. On such graphs the final charges must meet the bound;
//! on graphs that still contain a configuration the audit refuses and names
//! it.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::detect::{find_config_thm1, DetectError};
use crate::graph::{find_threads, profiles_from, trace_faces_any_genus, FaceSet, Graph, GraphError, ThreadSet, Vertex};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(Vertex),
    Face(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Face(i) => write!(f, "face {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    pub amount: Rational,
    pub rule: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChargeLedger {
    pub initial: BTreeMap<Element, Rational>,
    pub transfers: Vec<Transfer>,
    pub final_charge: BTreeMap<Element, Rational>,
}

impl ChargeLedger {
    fn new(initial: BTreeMap<Element, Rational>) -> Self {
        ChargeLedger { final_charge: initial.clone(), initial, transfers: Vec::new() }
    }

    fn send(&mut self, from: Element, to: Element, amount: Rational, rule: &str) {
        if amount == Rational::from_integer(0) {
            return;
        }
        *self.final_charge.get_mut(&from).expect("known element") -= amount;
        *self.final_charge.get_mut(&to).expect("known element") += amount;
        self.transfers.push(Transfer { from, to, amount, rule: rule.to_string() });
    }

    pub fn total_initial(&self) -> Rational {
        self.initial.values().sum()
    }

    pub fn total_final(&self) -> Rational {
        self.final_charge.values().sum()
    }

    /// Final = initial + inflow - outflow at every element, and the totals agree.
    pub fn is_conserved(&self) -> bool {
        let mut expect = self.initial.clone();
        for t in &self.transfers {
            *expect.entry(t.from).or_default() -= t.amount;
            *expect.entry(t.to).or_default() += t.amount;
        }
        expect == self.final_charge && self.total_initial() == self.total_final()
    }

    /// Smallest final charge among vertices (`faces = false`) or faces.
    pub fn min_final(&self, faces: bool) -> Option<(Element, Rational)> {
        self.final_charge
            .iter()
            .filter(|(e, _)| matches!(e, Element::Face(_)) == faces)
            .min_by_key(|(_, c)| **c)
            .map(|(e, c)| (*e, *c))
    }

    /// Elements whose final charge is below `bound(element)`.
    pub fn violations(&self, bound: impl Fn(Element) -> Rational) -> Vec<(Element, Rational)> {
        self.final_charge.iter().filter(|(e, c)| **c < bound(**e)).map(|(e, c)| (*e, *c)).collect()
    }

    /// `element <kind> <id> <initial> <final>` per element, then
    /// `transfer <kind> <id> <kind> <id> <amount> <rule>` per transfer.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (e, init) in &self.initial {
            let _ = writeln!(s, "element {e} {init} {}", self.final_charge[e]);
        }
        for t in &self.transfers {
            let _ = writeln!(s, "transfer {} {} {} {}", t.from, t.to, t.amount, t.rule);
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        fn element(kind: &str, id: &str) -> Result<Element, String> {
            let id: usize = id.parse().map_err(|_| format!("bad id '{id}'"))?;
            match kind {
                "vertex" => Ok(Element::Vertex(id)),
                "face" => Ok(Element::Face(id)),
                _ => Err(format!("bad element kind '{kind}'")),
            }
        }
        fn rational(s: &str) -> Result<Rational, String> {
            s.parse().map_err(|_| format!("bad rational '{s}'"))
        }
        let mut out = ChargeLedger::default();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let t: Vec<&str> = line.split_whitespace().collect();
            let at = |e: String| format!("line {}: {e}", i + 1);
            match t.as_slice() {
                ["element", kind, id, init, fin] => {
                    let e = element(kind, id).map_err(at)?;
                    out.initial.insert(e, rational(init).map_err(at)?);
                    out.final_charge.insert(e, rational(fin).map_err(at)?);
                }
                ["transfer", k1, i1, k2, i2, amount, rule] => out.transfers.push(Transfer {
                    from: element(k1, i1).map_err(at)?,
                    to: element(k2, i2).map_err(at)?,
                    amount: rational(amount).map_err(at)?,
                    rule: rule.to_string(),
                }),
                _ => return Err(at(format!("cannot parse '{line}'"))),
            }
        }
        Ok(out)
    }
}

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// Initial charges `2d(v) - 6` and `len(f) - 6` on a connected embedded
/// graph; their total is `-6` times the Euler characteristic, `-12` in the
/// plane.
pub fn girth4_initial(g: &Graph) -> Result<(ChargeLedger, FaceSet), AuditError> {
    let faces = trace_faces_any_genus(g)?;
    let mut init = BTreeMap::new();
    for v in g.vertices() {
        init.insert(Element::Vertex(v), Rational::from_integer(2 * g.degree(v) as i64 - 6));
    }
    for (i, f) in faces.faces.iter().enumerate() {
        init.insert(Element::Face(i), Rational::from_integer(f.len() as i64 - 6));
    }
    Ok((ChargeLedger::new(init), faces))
}

/// Euler characteristic of the surface the rotation system describes.
pub fn euler_characteristic(g: &Graph, faces: &FaceSet) -> i64 {
    g.n() as i64 - g.edge_count() as i64 + faces.len() as i64
}

/// Vertex-face discharging for triangle-free embedded graphs with
/// minimum degree 3 and none of the four configurations:
/// (R1) 4-vertices give 1/2 per face incidence, (R2) 6⁺-vertices give 1,
/// (R3) faces still short of 0 take the rest equally from their 5-vertex
/// incidences. Any orientable surface is accepted so that configuration-free
/// inputs exist; the total is then `-6χ`.
pub fn audit_girth4(g: &Graph) -> Result<ChargeLedger, AuditError> {
    if !g.has_rotation() {
        return Err(GraphError::MissingRotation.into());
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    if !g.is_triangle_free() {
        return Err(AuditError::Precondition("graph has a triangle".into()));
    }
    match find_config_thm1(g) {
        Ok(m) => return Err(AuditError::Precondition(format!("contains {} at {:?}", m.kind.name(), m.roles))),
        Err(DetectError::StructuralClaimViolation(_)) => {}
        Err(DetectError::Graph(e)) => return Err(e.into()),
    }
    let (mut ledger, faces) = girth4_initial(g)?;
    for (i, f) in faces.faces.iter().enumerate() {
        for v in f.vertex_incidences() {
            match g.degree(v) {
                4 => ledger.send(Element::Vertex(v), Element::Face(i), r(1, 2), "R1"),
                d if d >= 6 => ledger.send(Element::Vertex(v), Element::Face(i), r(1, 1), "R2"),
                _ => {}
            }
        }
    }
    for (i, f) in faces.faces.iter().enumerate() {
        let need = -ledger.final_charge[&Element::Face(i)];
        if need <= Rational::from_integer(0) {
            continue;
        }
        let fives: Vec<Vertex> = f.vertex_incidences().into_iter().filter(|&v| g.degree(v) == 5).collect();
        if fives.is_empty() {
            return Err(AuditError::Precondition(format!("face {i} still needs {need} but has no incident 5-vertex")));
        }
        let share = need / Rational::from_integer(fives.len() as i64);
        for v in fives {
            ledger.send(Element::Vertex(v), Element::Face(i), share, "R3");
        }
    }
    Ok(ledger)
}

fn vertex_charges(g: &Graph) -> ChargeLedger {
    ChargeLedger::new(g.vertices().map(|v| (Element::Vertex(v), Rational::from_integer(g.degree(v) as i64))).collect())
}

/// The configurations of the 17/5 argument that `g` contains, if any.
pub fn mad175_config(g: &Graph) -> Option<String> {
    for v in g.vertices() {
        let d = g.degree(v);
        let threes = g.neighbors(v).iter().filter(|&&u| g.degree(u) == 3).count();
        if d <= 2 {
            return Some(format!("{d}-vertex {v}"));
        }
        if d == 3 && threes >= 2 {
            return Some(format!("3-vertex {v} with {threes} 3-neighbors"));
        }
        if d == 4 && threes == 4 {
            return Some(format!("4-vertex {v} with four 3-neighbors"));
        }
    }
    None
}

/// Charge `d(v)`; each 3-vertex takes 1/5 from each 4⁺-neighbor. Every
/// final charge should be at least 17/5.
pub fn audit_mad175(g: &Graph) -> Result<ChargeLedger, AuditError> {
    if let Some(c) = mad175_config(g) {
        return Err(AuditError::Precondition(format!("contains a {c}")));
    }
    let mut ledger = vertex_charges(g);
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        for &u in g.neighbors(v).iter().filter(|&&u| g.degree(u) >= 4) {
            ledger.send(Element::Vertex(u), Element::Vertex(v), r(1, 5), "R1");
        }
    }
    Ok(ledger)
}

/// The configurations of the 22/9 argument that `g` contains, if any:
/// 1⁻-vertices, bare cycles, 3-threads, 3-vertices with 4 nearby 2-vertices,
/// 4-vertices with 6, and the two forbidden 3-vertex adjacencies.
pub fn mad229_config(g: &Graph) -> Option<String> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) <= 1) {
        return Some(format!("{}-vertex {v}", g.degree(v)));
    }
    if let Some(c) = g.components().into_iter().find(|c| c.iter().all(|&v| g.degree(v) == 2)) {
        return Some(format!("bare cycle through {}", c[0]));
    }
    let threads = find_threads(g).ok()?;
    if let Some(t) = threads.threads.iter().find(|t| t.k() >= 3) {
        return Some(format!("{}-thread from {}", t.k(), t.endpoints.0));
    }
    for v in g.vertices() {
        let nearby = nearby(g, &threads, v);
        if (g.degree(v) == 3 && nearby >= 4) || (g.degree(v) == 4 && nearby >= 6) {
            return Some(format!("{}-vertex {v} with {nearby} nearby 2-vertices", g.degree(v)));
        }
    }
    let profiles = profiles_from(g, &threads);
    let is = |v: Vertex, p: (usize, usize, usize)| profiles.get(&v).is_some_and(|x| x.profile == p);
    for (&v, p) in &profiles {
        if p.is(2, 1, 0) {
            for &w in g.neighbors(v) {
                if is(w, (1, 1, 0)) || is(w, (2, 0, 0)) || is(w, (2, 1, 0)) {
                    return Some(format!("3₂,₁,₀-vertex {v} adjacent to {w}"));
                }
            }
        }
        if p.is(1, 1, 1) {
            for w in weak_via_one_thread(g, &threads, v) {
                if w != v && (is(w, (1, 1, 1)) || is(w, (2, 1, 0))) {
                    return Some(format!("3₁,₁,₁-vertex {v} weakly adjacent to {w}"));
                }
            }
        }
    }
    None
}

/// Distinct interior vertices of the threads ending at `v`.
fn nearby(g: &Graph, threads: &ThreadSet, v: Vertex) -> usize {
    let mut all: Vec<Vertex> = threads.incident(g, v).into_iter().flat_map(|e| e.interior).collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Far ends of the 1-threads at `v`, one entry per thread end.
fn weak_via_one_thread(g: &Graph, threads: &ThreadSet, v: Vertex) -> Vec<Vertex> {
    threads.incident(g, v).into_iter().filter(|e| e.interior.len() == 1).map(|e| e.far).collect()
}

/// Charge `d(v)`; (R1) each 3⁺-vertex sends 2/9 to each nearby 2-vertex,
/// (R2) 4⁺-, 3₀,₀,₀- and 3₁,₀,₀-vertices send 1/9 to each 3-neighbor and
/// 1/18 to each weak 3-neighbor across a 1-thread, (R3) 3₁,₁,₀-vertices send
/// 1/18 to each weak 3-neighbor across a 1-thread. Payments are per thread
/// end. Every final charge should be at least 22/9.
pub fn audit_mad229(g: &Graph) -> Result<ChargeLedger, AuditError> {
    if let Some(c) = mad229_config(g) {
        return Err(AuditError::Precondition(format!("contains a {c}")));
    }
    let threads = find_threads(g)?;
    let profiles = profiles_from(g, &threads);
    let mut ledger = vertex_charges(g);
    let is = |v: Vertex, p: (usize, usize, usize)| profiles.get(&v).is_some_and(|x| x.profile == p);
    for v in g.vertices().filter(|&v| g.degree(v) >= 3) {
        for e in threads.incident(g, v) {
            for x in e.interior {
                ledger.send(Element::Vertex(v), Element::Vertex(x), r(2, 9), "R1");
            }
        }
    }
    for v in g.vertices() {
        let r2 = g.degree(v) >= 4 || is(v, (0, 0, 0)) || is(v, (1, 0, 0));
        let r3 = is(v, (1, 1, 0));
        if r2 {
            for &u in g.neighbors(v).iter().filter(|&&u| g.degree(u) == 3) {
                ledger.send(Element::Vertex(v), Element::Vertex(u), r(1, 9), "R2");
            }
        }
        if r2 || r3 {
            for w in weak_via_one_thread(g, &threads, v).into_iter().filter(|&w| w != v && g.degree(w) == 3) {
                ledger.send(Element::Vertex(v), Element::Vertex(w), r(1, 18), if r2 { "R2" } else { "R3" });
            }
        }
    }
    Ok(ledger)
}
