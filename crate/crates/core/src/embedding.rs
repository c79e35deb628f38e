//! Orientable embeddings as rotation systems, and face tracing.
//!
//! Face-tracing convention: the successor of dart `u -> v` inside its face is
//! `v -> w`, where `w` follows `u` in the rotation at `v`. The opposite
//! convention traces the mirror embedding, so face counts agree but the walks
//! are traversed in the other direction.

use std::fmt;

use crate::error::EmbeddingError;
use crate::graph::{Dart, Graph, Vertex};

/// A graph together with a cyclic order of neighbors at every vertex.
///
/// Rotations are stored in canonical phase (starting at the smallest neighbor),
/// so two embeddings are equal exactly when their rotation systems are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    graph: Graph,
    rotations: Vec<Vec<Vertex>>,
}

fn canonicalize(rotation: &mut [Vertex]) {
    if let Some((start, _)) = rotation.iter().enumerate().min_by_key(|(_, v)| **v) {
        rotation.rotate_left(start);
    }
}

impl Embedding {
    /// Builds an embedding from one cyclic neighbor sequence per vertex, in
    /// canonical vertex order. Any phase is accepted.
    pub fn new(graph: Graph, mut rotations: Vec<Vec<Vertex>>) -> Result<Embedding, EmbeddingError> {
        if !graph.is_connected() {
            return Err(crate::error::GraphError::Disconnected.into());
        }
        if rotations.len() != graph.vertex_count() {
            return Err(EmbeddingError::VertexCount {
                expected: graph.vertex_count(),
                found: rotations.len(),
            });
        }
        for (slot, rotation) in rotations.iter_mut().enumerate() {
            let vertex = graph.vertex_at(slot);
            let neighbors = graph.neighbors(vertex);
            let mut seen = vec![false; neighbors.len()];
            for &w in rotation.iter() {
                match neighbors.binary_search(&w) {
                    Ok(i) if seen[i] => {
                        return Err(EmbeddingError::RepeatedNeighbor { vertex, neighbor: w })
                    }
                    Ok(i) => seen[i] = true,
                    Err(_) => return Err(EmbeddingError::NotNeighbor { vertex, neighbor: w }),
                }
            }
            if rotation.len() != neighbors.len() {
                return Err(EmbeddingError::RotationLength {
                    vertex,
                    expected: neighbors.len(),
                    found: rotation.len(),
                });
            }
            canonicalize(rotation);
        }
        Ok(Embedding { graph, rotations })
    }

    /// Skips validation; callers guarantee each rotation is a permutation of
    /// the vertex's neighbors.
    pub(crate) fn from_valid_parts(graph: Graph, mut rotations: Vec<Vec<Vertex>>) -> Embedding {
        for rotation in &mut rotations {
            canonicalize(rotation);
        }
        debug_assert!(Embedding::new(graph.clone(), rotations.clone()).is_ok());
        Embedding { graph, rotations }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Canonical-phase rotation at `v`.
    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotations[self.graph.slot(v)]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotations
    }

    /// The neighbor following `u` in the rotation at `v`.
    pub fn successor(&self, v: Vertex, u: Vertex) -> Vertex {
        let rotation = self.rotation(v);
        let i = rotation.iter().position(|&w| w == u).expect("u adjacent to v");
        rotation[(i + 1) % rotation.len()]
    }

    /// Reverses every rotation (orientation reversal).
    pub fn mirror(&self) -> Embedding {
        let rotations = self
            .rotations
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        Embedding::from_valid_parts(self.graph.clone(), rotations)
    }

    /// Number of faces, without materializing the walks.
    pub fn face_count(&self) -> usize {
        count_faces(&self.graph, &self.rotations)
    }

    pub fn genus(&self) -> u64 {
        genus_from_counts(self.graph.vertex_count(), self.graph.edge_count(), self.face_count())
    }

    pub fn is_one_face(&self) -> bool {
        self.face_count() == 1
    }

    /// At most two faces, which witnesses upper embeddability.
    pub fn is_upper_embeddable_witness(&self) -> bool {
        self.face_count() <= 2
    }

    /// Partitions the darts into facial walks.
    pub fn trace_faces(&self) -> FaceCensus {
        let offsets = offsets(&self.rotations);
        let succ = face_permutation(&self.graph, &self.rotations);
        let dart_of = |index: usize| {
            let slot = offsets.partition_point(|&o| o <= index) - 1;
            let tail = self.graph.vertex_at(slot);
            Dart::new(tail, self.rotations[slot][index - offsets[slot]])
        };
        let mut face_of = vec![usize::MAX; succ.len()];
        let mut walks = Vec::new();
        for start in 0..succ.len() {
            if face_of[start] != usize::MAX {
                continue;
            }
            let face = walks.len();
            let mut walk = Vec::new();
            let mut d = start;
            while face_of[d] == usize::MAX {
                face_of[d] = face;
                walk.push(dart_of(d));
                d = succ[d] as usize;
            }
            walks.push(walk);
        }
        // The corner after position i at vertex v is entered by the dart whose
        // face successor is (v, i + 1); it belongs to that dart's face.
        let mut corner_faces: Vec<Vec<usize>> =
            self.rotations.iter().map(|r| vec![0; r.len()]).collect();
        for (d, &s) in succ.iter().enumerate() {
            let s = s as usize;
            let slot = offsets.partition_point(|&o| o <= s) - 1;
            let deg = offsets[slot + 1] - offsets[slot];
            let position = (s - offsets[slot] + deg - 1) % deg;
            corner_faces[slot][position] = face_of[d];
        }
        let face_count = walks.len();
        FaceCensus {
            genus: genus_from_counts(self.graph.vertex_count(), self.graph.edge_count(), face_count),
            face_count,
            walks,
            corner_faces,
        }
    }
}

fn offsets(rotations: &[Vec<Vertex>]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(rotations.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for r in rotations {
        acc += r.len();
        offsets.push(acc);
    }
    offsets
}

/// Face-successor permutation over darts numbered `offset[slot] + position`.
fn face_permutation(graph: &Graph, rotations: &[Vec<Vertex>]) -> Vec<u32> {
    let offsets = offsets(rotations);
    let mut succ = vec![0u32; offsets[offsets.len() - 1]];
    for (slot, rotation) in rotations.iter().enumerate() {
        let u = graph.vertex_at(slot);
        for (i, &v) in rotation.iter().enumerate() {
            let at_v = &rotations[graph.slot(v)];
            let back = at_v.iter().position(|&w| w == u).expect("symmetric rotations");
            let next = (back + 1) % at_v.len();
            succ[offsets[slot] + i] = (offsets[graph.slot(v)] + next) as u32;
        }
    }
    succ
}

/// Face count of a rotation system given as raw per-slot neighbor cycles.
/// The rotations must form a valid system for `graph`; phase is irrelevant.
pub(crate) fn count_faces(graph: &Graph, rotations: &[Vec<Vertex>]) -> usize {
    let succ = face_permutation(graph, rotations);
    let mut seen = vec![false; succ.len()];
    let mut faces = 0;
    for start in 0..succ.len() {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = succ[d] as usize;
        }
    }
    faces
}

fn genus_from_counts(vertices: usize, edges: usize, faces: usize) -> u64 {
    // n - m + r = 2 - 2g
    let twice = 2 + edges as i64 - vertices as i64 - faces as i64;
    debug_assert!(twice >= 0 && twice % 2 == 0, "Euler identity violated");
    (twice / 2) as u64
}

/// Facial walks of an embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCensus {
    pub walks: Vec<Vec<Dart>>,
    pub face_count: usize,
    pub genus: u64,
    /// `corner_faces[slot][i]` is the face containing the corner between
    /// rotation positions `i` and `i + 1` at the vertex in `slot`.
    pub corner_faces: Vec<Vec<usize>>,
}

impl FaceCensus {
    pub fn total_length(&self) -> usize {
        self.walks.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for FaceCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "faces {}", self.face_count)?;
        writeln!(f, "genus {}", self.genus)?;
        for (i, walk) in self.walks.iter().enumerate() {
            write!(f, "face {} (length {}):", i + 1, walk.len())?;
            for d in walk {
                write!(f, " {}", d.tail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
