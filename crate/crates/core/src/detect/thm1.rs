//! Triangle-free planar graphs with 7-lists, bound 30.

use super::{key_lemma_chain, ConfigKind, ConfigMatch, DetectError};
use crate::graph::{trace_faces_any_genus, Graph, Vertex};

const BOUND: u32 = 30;
const LISTS: usize = 7;

/// A 2⁻-vertex, else one of the four face/path configurations. `g` must
/// carry a rotation system that is planar on every component.
pub fn find_config_thm1(g: &Graph) -> Result<ConfigMatch, DetectError> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) <= 2) {
        return Ok(chain(g, ConfigKind::Deg2OrLess, &[("v", vec![v])], &[v]).expect("a 2-vertex fits the bound"));
    }
    if let Some(m) = five_vertex(g) {
        return Ok(m);
    }
    if let Some(m) = short_path(g) {
        return Ok(m);
    }
    let mut faces = Vec::new();
    for comp in g.components() {
        faces.extend(trace_faces_any_genus(&g.induced(&comp))?.faces);
    }
    for face in &faces {
        let cyc: Vec<Vertex> = face.vertex_incidences();
        if cyc.len() != 4 || (0..4).any(|i| cyc[(i + 1)..].contains(&cyc[i])) {
            continue;
        }
        let degs: Vec<usize> = cyc.iter().map(|&v| g.degree(v)).collect();
        let mut sorted = degs.clone();
        sorted.sort_unstable();
        let start = degs.iter().position(|&d| d == 3);
        if sorted == [3, 4, 4, 4] {
            let s = start.expect("one 3-vertex");
            let rot: Vec<Vertex> = (0..4).map(|i| cyc[(s + i) % 4]).collect();
            if let Some(m) = chain(g, ConfigKind::T1cFace3444, &[("face", rot.clone())], &rot) {
                return Ok(m);
            }
        }
        if sorted == [3, 4, 4, 5] {
            let s = start.expect("one 3-vertex");
            let rot: Vec<Vertex> = (0..4).map(|i| cyc[(s + i) % 4]).collect();
            let five = *rot.iter().find(|&&v| g.degree(v) == 5).expect("one 5-vertex");
            for &w in g.neighbors(five) {
                if g.degree(w) != 3 || rot.contains(&w) {
                    continue;
                }
                let mut set = rot.clone();
                set.push(w);
                if let Some(m) = chain(g, ConfigKind::T1dFace5With3, &[("face", rot.clone()), ("w", vec![w])], &set) {
                    return Ok(m);
                }
            }
        }
    }
    Err(DetectError::StructuralClaimViolation(
        "no 2⁻-vertex, 5-vertex with three 3-neighbors, short 3-4-path or special 4-face; \
         the graph is not triangle-free planar"
            .into(),
    ))
}

fn chain(g: &Graph, kind: ConfigKind, roles: &[(&str, Vec<Vertex>)], set: &[Vertex]) -> Option<ConfigMatch> {
    key_lemma_chain(g, set, BOUND, LISTS).map(|stages| ConfigMatch::new(kind, roles, stages))
}

fn five_vertex(g: &Graph) -> Option<ConfigMatch> {
    for v in g.vertices().filter(|&v| g.degree(v) == 5) {
        let threes: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&u| g.degree(u) == 3).take(3).collect();
        if threes.len() == 3 {
            let mut set = vec![v];
            set.extend(&threes);
            if let Some(m) = chain(g, ConfigKind::T1aFiveVertexThree3Nbrs, &[("v", vec![v]), ("w", threes)], &set) {
                return Some(m);
            }
        }
    }
    None
}

/// A path of 1 to 4 edges between 3-vertices through 4-vertices.
fn short_path(g: &Graph) -> Option<ConfigMatch> {
    fn dfs(g: &Graph, path: &mut Vec<Vertex>, out: &mut Option<ConfigMatch>) {
        let last = *path.last().expect("path is non-empty");
        for &u in g.neighbors(last) {
            if out.is_some() {
                return;
            }
            if path.contains(&u) {
                continue;
            }
            match g.degree(u) {
                3 => {
                    path.push(u);
                    *out = chain(g, ConfigKind::T1bPath, &[("path", path.clone())], path);
                    path.pop();
                }
                4 if path.len() < 4 => {
                    path.push(u);
                    dfs(g, path, out);
                    path.pop();
                }
                _ => {}
            }
        }
    }
    let mut out = None;
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        dfs(g, &mut vec![v], &mut out);
        if out.is_some() {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{check_match, plan_caps, Stage};
    use crate::graph::{named, trace_faces};

    fn cube() -> Graph {
        let mut edges = Vec::new();
        for v in 0..8usize {
            for b in [1, 2, 4] {
                if v & b == 0 {
                    edges.push((v, v | b));
                }
            }
        }
        let g = Graph::from_edges(8, &edges).unwrap();
        // outer square 0,1,3,2 and inner square 4,5,7,6, drawn concentric
        let rot = vec![vec![1, 4, 2], vec![3, 5, 0], vec![0, 6, 3], vec![2, 7, 1], vec![0, 5, 6], vec![1, 7, 4], vec![2, 4, 7], vec![3, 6, 5]];
        g.with_rotation(rot).unwrap()
    }

    #[test]
    fn cube_gives_an_edge_between_three_vertices() {
        let g = cube();
        assert_eq!(trace_faces(&g).unwrap().len(), 6);
        let m = find_config_thm1(&g).unwrap();
        assert_eq!(m.kind, ConfigKind::T1bPath);
        assert_eq!(m.roles["path"].len(), 2);
        check_match(&g, &m).unwrap();
        let caps = plan_caps(&g, &m.stages, 30, 7).unwrap();
        assert_eq!(caps.iter().map(|c| c.1).collect::<Vec<_>>(), vec![16, 27]);
    }

    #[test]
    fn low_degree_first() {
        let g = named::path(4);
        let m = find_config_thm1(&g).unwrap();
        assert_eq!(m.kind, ConfigKind::Deg2OrLess);
        assert_eq!(m.stages, vec![Stage::KeyLemma { v: 0 }]);
    }
}
