//! Graphs with mad < 17/5 and 6-lists, bound 12.

use super::{plan_caps, ConfigKind, ConfigMatch, DetectError, Stage};
use crate::graph::{Graph, Vertex};

const BOUND: u32 = 12;
const LISTS: usize = 6;

fn accept(g: &Graph, kind: ConfigKind, roles: &[(&str, Vec<Vertex>)], stages: Vec<Stage>) -> Option<ConfigMatch> {
    plan_caps(g, &stages, BOUND, LISTS).ok().map(|_| ConfigMatch::new(kind, roles, stages))
}

/// (i) a 2⁻-vertex, (ii) a 3-vertex with two 3-neighbors, (iii) a 4-vertex
/// whose neighbors all have degree 3, in that order of preference.
pub fn find_config_thm2(g: &Graph) -> Result<ConfigMatch, DetectError> {
    for v in g.vertices().filter(|&v| g.degree(v) <= 2) {
        if let Some(m) = accept(g, ConfigKind::T2iTwoMinus, &[("v", vec![v])], vec![Stage::KeyLemma { v }]) {
            return Ok(m);
        }
    }
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        let nb = g.neighbors(v);
        for i in 0..3 {
            for j in i + 1..3 {
                let (w1, w2) = (nb[i], nb[j]);
                if g.degree(w1) != 3 || g.degree(w2) != 3 {
                    continue;
                }
                let x = nb[3 - i - j];
                let stage = Stage::Deg3TwoDeg3 { v, w: [w1, w2], x };
                let roles = [("v", vec![v]), ("w", vec![w1, w2]), ("x", vec![x])];
                if let Some(m) = accept(g, ConfigKind::T2iiThreeVertexTwo3Nbrs, &roles, vec![stage]) {
                    return Ok(m);
                }
            }
        }
    }
    for v in g.vertices().filter(|&v| g.degree(v) == 4) {
        let nb = g.neighbors(v);
        if nb.iter().all(|&u| g.degree(u) == 3) {
            let w = [nb[0], nb[1], nb[2], nb[3]];
            let roles = [("v", vec![v]), ("w", w.to_vec())];
            if let Some(m) = accept(g, ConfigKind::T2iiiFourVertexFour3Nbrs, &roles, vec![Stage::Deg4FourDeg3 { v, w }]) {
                return Ok(m);
            }
        }
    }
    Err(DetectError::StructuralClaimViolation(
        "no 2⁻-vertex, 3-vertex with two 3-neighbors or 4-vertex with four 3-neighbors; mad(G) is at least 17/5".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::check_match;
    use crate::graph::named;

    #[test]
    fn cubic_graphs_give_case_two() {
        for g in [named::dodecahedron(), named::petersen()] {
            let m = find_config_thm2(&g).unwrap();
            assert_eq!(m.kind, ConfigKind::T2iiThreeVertexTwo3Nbrs);
            check_match(&g, &m).unwrap();
        }
    }

    #[test]
    fn trees_give_case_one() {
        let m = find_config_thm2(&named::star(5)).unwrap();
        assert_eq!(m.kind, ConfigKind::T2iTwoMinus);
        assert_eq!(m.roles["v"], vec![1]);
    }

    #[test]
    fn dense_graph_has_no_config() {
        assert!(matches!(find_config_thm2(&named::complete(5)), Err(DetectError::StructuralClaimViolation(_))));
    }
}
