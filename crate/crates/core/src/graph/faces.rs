use std::collections::HashMap;

use super::{Graph, GraphError, Vertex};

/// One face of an embedded graph, as the closed walk found by face tracing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Directed edges in walk order; the head of each is the tail of the next.
    pub boundary: Vec<(Vertex, Vertex)>,
}

impl Face {
    /// Number of edge incidences, i.e. the face length.
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Vertices met along the walk, with repetition at cut-vertices.
    pub fn vertex_incidences(&self) -> Vec<Vertex> {
        self.boundary.iter().map(|&(u, _)| u).collect()
    }

    pub fn incidence_count(&self, v: Vertex) -> usize {
        self.boundary.iter().filter(|&&(u, _)| u == v).count()
    }
}

#[derive(Debug, Clone)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    dart_face: HashMap<(Vertex, Vertex), usize>,
}

impl FaceSet {
    pub fn face_of(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.dart_face.get(&(u, v)).copied()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn total_length(&self) -> usize {
        self.faces.iter().map(Face::len).sum()
    }
}

/// Trace the faces of a connected graph from its rotation system and check
/// Euler's formula `n - m + f = 2`.
///
/// The walk leaving along `u -> v` continues along `v -> w` where `w` follows
/// `u` in the rotation at `v`.
pub fn trace_faces(g: &Graph) -> Result<FaceSet, GraphError> {
    let faces = trace_faces_any_genus(g)?;
    let euler = g.n() as i64 - g.edge_count() as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(GraphError::EmbeddingInvalid(format!(
            "Euler characteristic {euler} (n={}, m={}, f={})",
            g.n(),
            g.edge_count(),
            faces.len()
        )));
    }
    Ok(faces)
}

/// Face tracing with no planarity check: the rotation system may describe
/// an embedding in any orientable surface.
pub fn trace_faces_any_genus(g: &Graph) -> Result<FaceSet, GraphError> {
    if !g.has_rotation() {
        return Err(GraphError::MissingRotation);
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let mut faces = Vec::new();
    let mut dart_face = HashMap::new();
    if g.edge_count() == 0 {
        if g.n() == 1 {
            faces.push(Face { boundary: Vec::new() });
        }
        return Ok(FaceSet { faces, dart_face });
    }
    for (a, b) in g.edges() {
        for start in [(a, b), (b, a)] {
            if dart_face.contains_key(&start) {
                continue;
            }
            let id = faces.len();
            let mut boundary = Vec::new();
            let mut dart = start;
            loop {
                if dart_face.insert(dart, id).is_some() {
                    return Err(GraphError::EmbeddingInvalid(format!(
                        "dart {}->{} traced twice",
                        dart.0, dart.1
                    )));
                }
                boundary.push(dart);
                let (u, v) = dart;
                let w = g.rotation_next(v, u).ok_or(GraphError::MissingRotation)?;
                dart = (v, w);
                if dart == start {
                    break;
                }
            }
            faces.push(Face { boundary });
        }
    }
    Ok(FaceSet { faces, dart_face })
}
