//! Splicing v-type-edges (2-paths `y x y'`) and pendant edges into corners.
//!
//! A batch of pieces is resolved against the embedding it extends. Every
//! vertex already present that receives new darts gets them as one contiguous
//! block spliced into a single chosen corner. Vertices created by the batch get
//! a fresh rotation. Wherever more than one order is possible (a block of two or
//! more darts, or a new vertex of degree three or more) the order is a
//! *completion variant*; variants are numbered in mixed radix, first vertex
//! most significant, and all of them are enumerated rather than assumed.

use std::collections::BTreeSet;
use std::fmt;

use crate::embedding::{count_faces, Embedding};
use crate::error::ConstructError;
use crate::graph::{Graph, Vertex};

/// The gap between `rotation[position]` and its cyclic successor at `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner {
    pub vertex: Vertex,
    pub position: usize,
}

/// Corners of `v` in rotation order; there are exactly `deg(v)` of them.
pub fn corners_at(e: &Embedding, v: Vertex) -> Result<Vec<Corner>, ConstructError> {
    if !e.graph().contains(v) {
        return Err(ConstructError::Absent { vertex: v });
    }
    Ok((0..e.graph().degree(v)).map(|position| Corner { vertex: v, position }).collect())
}

/// The 2-path `a - midpoint - b` with an x midpoint and y endpoints.
///
/// Flags say whether each vertex is created by the insertion (`true`) or
/// already present in the embedding being extended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VTypeEdge {
    pub midpoint: Vertex,
    pub endpoints: [Vertex; 2],
    pub midpoint_new: bool,
    pub endpoint_new: [bool; 2],
}

impl VTypeEdge {
    pub fn new(midpoint: Vertex, a: Vertex, b: Vertex) -> Result<VTypeEdge, ConstructError> {
        if !midpoint.is_x() || !a.is_y() || !b.is_y() || a == b {
            return Err(ConstructError::MalformedVType);
        }
        Ok(VTypeEdge { midpoint, endpoints: [a, b], midpoint_new: false, endpoint_new: [false; 2] })
    }

    /// `y_{2i} x_j y_{2i+1}`.
    pub fn standard(j: u32, i: u32) -> VTypeEdge {
        VTypeEdge::new(Vertex::X(j), Vertex::Y(2 * i), Vertex::Y(2 * i + 1)).expect("well-formed")
    }

    pub fn with_new_midpoint(mut self) -> Self {
        self.midpoint_new = true;
        self
    }

    pub fn with_new_endpoints(mut self) -> Self {
        self.endpoint_new = [true; 2];
        self
    }
}

impl fmt::Display for VTypeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.endpoints[0], self.midpoint, self.endpoints[1])
    }
}

/// A single edge `x y`, used when a new x-vertex first hangs off `y_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PendantEdge {
    pub x: Vertex,
    pub y: Vertex,
    pub x_new: bool,
    pub y_new: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Piece {
    VType(VTypeEdge),
    Pendant(PendantEdge),
}

impl Piece {
    /// (vertex, flagged new) in mention order.
    fn mentions(&self) -> Vec<(Vertex, bool)> {
        match *self {
            Piece::VType(v) => vec![
                (v.midpoint, v.midpoint_new),
                (v.endpoints[0], v.endpoint_new[0]),
                (v.endpoints[1], v.endpoint_new[1]),
            ],
            Piece::Pendant(p) => vec![(p.x, p.x_new), (p.y, p.y_new)],
        }
    }

    fn edges(&self) -> Vec<(Vertex, Vertex)> {
        match *self {
            Piece::VType(v) => vec![(v.midpoint, v.endpoints[0]), (v.midpoint, v.endpoints[1])],
            Piece::Pendant(p) => vec![(p.x, p.y)],
        }
    }
}

/// The pieces added in one step of the construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InsertionBatch {
    pub pieces: Vec<Piece>,
}

impl InsertionBatch {
    pub fn new(pieces: Vec<Piece>) -> Self {
        InsertionBatch { pieces }
    }

    pub fn single(vt: VTypeEdge) -> Self {
        InsertionBatch { pieces: vec![Piece::VType(vt)] }
    }

    /// Vertices flagged as already present, in the order their corners are chosen.
    pub fn attachment_order(&self) -> Vec<Vertex> {
        let mut order = Vec::new();
        for (vertex, is_new) in self.pieces.iter().flat_map(Piece::mentions) {
            if !is_new && !order.contains(&vertex) {
                order.push(vertex);
            }
        }
        order
    }
}

impl fmt::Display for InsertionBatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, piece) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match piece {
                Piece::VType(v) => write!(f, "[{v}]")?,
                Piece::Pendant(p) => write!(f, "{}{}", p.y, p.x)?,
            }
        }
        Ok(())
    }
}

/// Corners chosen at the pre-existing attachment vertices, in the batch's
/// attachment order, plus a completion variant index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InsertionChoice {
    pub corners: Vec<Corner>,
    pub variant: usize,
}

/// A batch resolved against a specific embedding.
#[derive(Debug, Clone)]
pub struct ResolvedBatch {
    graph: Graph,
    /// Pre-existing vertices receiving darts, with their block of new neighbors.
    attach: Vec<(Vertex, Vec<Vertex>)>,
    /// Vertices created by the batch, with all their neighbors.
    fresh: Vec<(Vertex, Vec<Vertex>)>,
    /// Mixed-radix digits of the variant index, most significant first.
    radices: Vec<usize>,
    corner_counts: Vec<usize>,
}

fn factorial(k: usize) -> usize {
    (2..=k).product()
}

/// The `index`-th permutation of `items` in lexicographic order of positions.
fn nth_permutation<T: Copy>(items: &[T], mut index: usize) -> Vec<T> {
    let mut pool: Vec<T> = items.to_vec();
    let mut out = Vec::with_capacity(items.len());
    for remaining in (1..=items.len()).rev() {
        let block = factorial(remaining - 1);
        out.push(pool.remove(index / block));
        index %= block;
    }
    out
}

impl ResolvedBatch {
    pub fn resolve(e: &Embedding, batch: &InsertionBatch) -> Result<ResolvedBatch, ConstructError> {
        let old = e.graph();
        let mut new_x = BTreeSet::new();
        let mut new_y = BTreeSet::new();
        for piece in &batch.pieces {
            if let Piece::VType(v) = piece {
                if !v.midpoint.is_x() || !v.endpoints.iter().all(|w| w.is_y()) || v.endpoints[0] == v.endpoints[1] {
                    return Err(ConstructError::MalformedVType);
                }
            }
            if let Piece::Pendant(p) = piece {
                if !p.x.is_x() || !p.y.is_y() {
                    return Err(ConstructError::MalformedVType);
                }
            }
            for (vertex, flagged_new) in piece.mentions() {
                match (flagged_new, old.contains(vertex)) {
                    (true, true) => return Err(ConstructError::AlreadyPresent { vertex }),
                    (false, false) => return Err(ConstructError::Absent { vertex }),
                    (true, false) => {
                        if vertex.is_x() {
                            new_x.insert(vertex.index());
                        } else {
                            new_y.insert(vertex.index());
                        }
                    }
                    (false, true) => {}
                }
            }
        }
        let contiguous = |set: &BTreeSet<u32>, base: u32, side: fn(u32) -> Vertex| {
            for (offset, &i) in set.iter().enumerate() {
                if i != base + 1 + offset as u32 {
                    return Err(ConstructError::NonContiguous { vertex: side(i) });
                }
            }
            Ok(base + set.len() as u32)
        };
        let p = contiguous(&new_x, old.part_x_size(), Vertex::X)?;
        let q = contiguous(&new_y, old.part_y_size(), Vertex::Y)?;

        let mut seen_edges = BTreeSet::new();
        let mut new_edges = Vec::new();
        let mut attach: Vec<(Vertex, Vec<Vertex>)> = Vec::new();
        let mut fresh: Vec<(Vertex, Vec<Vertex>)> = Vec::new();
        let mut order: Vec<Vertex> = Vec::new();
        for piece in &batch.pieces {
            for (vertex, _) in piece.mentions() {
                if !order.contains(&vertex) {
                    order.push(vertex);
                }
            }
            for (x, y) in piece.edges() {
                if old.has_edge(x, y) || !seen_edges.insert((x, y)) {
                    return Err(ConstructError::DuplicateEdge(x, y));
                }
                new_edges.push((x.index(), y.index()));
            }
        }
        for &vertex in &order {
            let mut block = Vec::new();
            for piece in &batch.pieces {
                for (a, b) in piece.edges() {
                    if a == vertex {
                        block.push(b);
                    } else if b == vertex {
                        block.push(a);
                    }
                }
            }
            if old.contains(vertex) {
                attach.push((vertex, block));
            } else {
                fresh.push((vertex, block));
            }
        }
        let radices = attach
            .iter()
            .filter(|(_, block)| block.len() >= 2)
            .map(|(_, block)| factorial(block.len()))
            .chain(fresh.iter().filter(|(_, n)| n.len() >= 3).map(|(_, n)| factorial(n.len() - 1)))
            .collect();
        let corner_counts = attach.iter().map(|(v, _)| old.degree(*v)).collect();
        let graph = old.extended(p, q, new_edges)?;
        Ok(ResolvedBatch { graph, attach, fresh, radices, corner_counts })
    }

    pub fn variant_count(&self) -> usize {
        self.radices.iter().product()
    }

    /// Attachment vertices needing a corner, in order.
    pub fn attachment_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.attach.iter().map(|(v, _)| *v)
    }

    pub fn corner_counts(&self) -> &[usize] {
        &self.corner_counts
    }

    /// Number of (corner tuple, variant) combinations.
    pub fn combination_count(&self) -> usize {
        self.corner_counts.iter().product::<usize>() * self.variant_count()
    }

    fn check(&self, choice: &InsertionChoice) -> Result<(), ConstructError> {
        if choice.corners.len() != self.attach.len() {
            return Err(ConstructError::CornerCount { expected: self.attach.len(), found: choice.corners.len() });
        }
        for (corner, ((vertex, _), &degree)) in choice.corners.iter().zip(self.attach.iter().zip(&self.corner_counts)) {
            if corner.vertex != *vertex {
                return Err(ConstructError::CornerVertex { expected: *vertex, found: corner.vertex });
            }
            if corner.position >= degree {
                return Err(ConstructError::StaleCorner { vertex: *vertex, position: corner.position, degree });
            }
        }
        if choice.variant >= self.variant_count() {
            return Err(ConstructError::VariantOutOfRange { variant: choice.variant, count: self.variant_count() });
        }
        Ok(())
    }

    /// Rotations of `G + batch` in slot order of the extended graph.
    fn rotations(&self, e: &Embedding, positions: &[usize], variant: usize) -> Vec<Vec<Vertex>> {
        let mut digits = vec![0; self.radices.len()];
        let mut rest = variant;
        for (digit, &radix) in digits.iter_mut().zip(&self.radices).rev() {
            *digit = rest % radix;
            rest /= radix;
        }
        let mut digits = digits.into_iter();
        let mut rotations: Vec<Vec<Vertex>> = vec![Vec::new(); self.graph.vertex_count()];
        for v in e.graph().vertices() {
            rotations[self.graph.slot(v)] = e.rotation(v).to_vec();
        }
        for ((vertex, block), &position) in self.attach.iter().zip(positions) {
            let ordered = if block.len() >= 2 {
                nth_permutation(block, digits.next().expect("digit per block"))
            } else {
                block.clone()
            };
            let rotation = &mut rotations[self.graph.slot(*vertex)];
            let at = position + 1;
            rotation.splice(at..at, ordered);
        }
        for (vertex, neighbors) in &self.fresh {
            let rotation = if neighbors.len() >= 3 {
                let tail = nth_permutation(&neighbors[1..], digits.next().expect("digit per vertex"));
                std::iter::once(neighbors[0]).chain(tail).collect()
            } else {
                neighbors.clone()
            };
            rotations[self.graph.slot(*vertex)] = rotation;
        }
        rotations
    }

    pub fn apply(&self, e: &Embedding, choice: &InsertionChoice) -> Result<Embedding, ConstructError> {
        self.check(choice)?;
        let positions: Vec<usize> = choice.corners.iter().map(|c| c.position).collect();
        Ok(Embedding::from_valid_parts(self.graph.clone(), self.rotations(e, &positions, choice.variant)))
    }

    /// Every (corner tuple, variant) combination, in lexicographic order of
    /// corner positions and then variant, whose result has exactly one face.
    pub fn one_face_completions(&self, e: &Embedding) -> Vec<(InsertionChoice, Embedding)> {
        let mut out = Vec::new();
        let mut positions = vec![0usize; self.attach.len()];
        loop {
            for variant in 0..self.variant_count() {
                let rotations = self.rotations(e, &positions, variant);
                if count_faces(&self.graph, &rotations) == 1 {
                    let corners = self
                        .attach
                        .iter()
                        .zip(&positions)
                        .map(|((vertex, _), &position)| Corner { vertex: *vertex, position })
                        .collect();
                    out.push((
                        InsertionChoice { corners, variant },
                        Embedding::from_valid_parts(self.graph.clone(), rotations),
                    ));
                }
            }
            // odometer over corner positions, last attachment vertex fastest
            let mut advanced = false;
            for slot in (0..positions.len()).rev() {
                positions[slot] += 1;
                if positions[slot] < self.corner_counts[slot] {
                    advanced = true;
                    break;
                }
                positions[slot] = 0;
            }
            if !advanced {
                return out;
            }
        }
    }
}

/// Splices a batch into `e`. Any face count may result.
pub fn insert_batch(e: &Embedding, batch: &InsertionBatch, choice: &InsertionChoice) -> Result<Embedding, ConstructError> {
    ResolvedBatch::resolve(e, batch)?.apply(e, choice)
}

/// Splices one v-type-edge into `e`.
pub fn insert_vtype(e: &Embedding, vt: VTypeEdge, choice: &InsertionChoice) -> Result<Embedding, ConstructError> {
    insert_batch(e, &InsertionBatch::single(vt), choice)
}

/// All insertion choices for `batch` that leave a single face.
pub fn valid_completions(e: &Embedding, batch: &InsertionBatch) -> Result<Vec<InsertionChoice>, ConstructError> {
    Ok(ResolvedBatch::resolve(e, batch)?
        .one_face_completions(e)
        .into_iter()
        .map(|(choice, _)| choice)
        .collect())
}
