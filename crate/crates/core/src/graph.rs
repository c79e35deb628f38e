//! Labeled simple bipartite graphs with parts `X = {x_1..x_p}` and `Y = {y_1..y_q}`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::GraphError;

/// A vertex of a bipartite graph, carrying its side and 1-based index.
///
/// Ordering puts every x-vertex before every y-vertex, then sorts by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    X(u32),
    Y(u32),
}

impl Vertex {
    pub fn index(self) -> u32 {
        match self {
            Vertex::X(i) | Vertex::Y(i) => i,
        }
    }

    pub fn is_x(self) -> bool {
        matches!(self, Vertex::X(_))
    }

    pub fn is_y(self) -> bool {
        matches!(self, Vertex::Y(_))
    }

    /// Parses `x3` / `y12`.
    pub fn parse(token: &str) -> Option<Vertex> {
        let (side, digits) = token.split_at_checked(1)?;
        let index: u32 = digits.parse().ok()?;
        if index == 0 {
            return None;
        }
        match side {
            "x" => Some(Vertex::X(index)),
            "y" => Some(Vertex::Y(index)),
            _ => None,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::X(i) => write!(f, "x{i}"),
            Vertex::Y(i) => write!(f, "y{i}"),
        }
    }
}

/// A directed edge-end. Every undirected edge yields two darts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub tail: Vertex,
    pub head: Vertex,
}

impl Dart {
    pub fn new(tail: Vertex, head: Vertex) -> Self {
        Dart { tail, head }
    }

    pub fn reverse(self) -> Dart {
        Dart { tail: self.head, head: self.tail }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

/// Simple bipartite graph. Edges are stored as `(x index, y index)` pairs, so
/// every edge joins the two sides and loops are unrepresentable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    part_x: u32,
    part_y: u32,
    edges: BTreeSet<(u32, u32)>,
    /// Sorted neighbor lists, indexed by [`Graph::slot`].
    adjacency: Vec<Vec<Vertex>>,
}

impl Graph {
    /// `K_{p,q}` with vertices `x_1..x_p`, `y_1..y_q`.
    pub fn complete_bipartite(p: u32, q: u32) -> Result<Graph, GraphError> {
        if p == 0 || q == 0 {
            return Err(GraphError::EmptyPart { p, q });
        }
        let edges = (1..=p).flat_map(|i| (1..=q).map(move |j| (i, j)));
        Graph::from_edges(p, q, edges)
    }

    /// Builds a bipartite graph from `(x index, y index)` pairs.
    pub fn from_edges<I>(p: u32, q: u32, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if p == 0 || q == 0 {
            return Err(GraphError::EmptyPart { p, q });
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == 0 || i > p {
                return Err(GraphError::UnknownVertex(Vertex::X(i)));
            }
            if j == 0 || j > q {
                return Err(GraphError::UnknownVertex(Vertex::Y(j)));
            }
            if !set.insert((i, j)) {
                return Err(GraphError::ParallelEdge(Vertex::X(i), Vertex::Y(j)));
            }
        }
        let mut adjacency = vec![Vec::new(); (p + q) as usize];
        for &(i, j) in &set {
            adjacency[(i - 1) as usize].push(Vertex::Y(j));
            adjacency[(p + j - 1) as usize].push(Vertex::X(i));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { part_x: p, part_y: q, edges: set, adjacency })
    }

    pub fn part_x_size(&self) -> u32 {
        self.part_x
    }

    pub fn part_y_size(&self) -> u32 {
        self.part_y
    }

    pub fn vertex_count(&self) -> usize {
        (self.part_x + self.part_y) as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edges.len()
    }

    /// Edges as `(x index, y index)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    /// All vertices in canonical order `x_1..x_p, y_1..y_q`.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        let (p, q) = (self.part_x, self.part_y);
        (1..=p).map(Vertex::X).chain((1..=q).map(Vertex::Y))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match v {
            Vertex::X(i) => i >= 1 && i <= self.part_x,
            Vertex::Y(j) => j >= 1 && j <= self.part_y,
        }
    }

    /// Dense index of `v` in canonical vertex order. Panics if `v` is not in the graph.
    pub fn slot(&self, v: Vertex) -> usize {
        debug_assert!(self.contains(v), "{v} not in graph");
        match v {
            Vertex::X(i) => (i - 1) as usize,
            Vertex::Y(j) => (self.part_x + j - 1) as usize,
        }
    }

    pub fn vertex_at(&self, slot: usize) -> Vertex {
        let slot = slot as u32;
        if slot < self.part_x {
            Vertex::X(slot + 1)
        } else {
            Vertex::Y(slot - self.part_x + 1)
        }
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        match (a, b) {
            (Vertex::X(i), Vertex::Y(j)) | (Vertex::Y(j), Vertex::X(i)) => {
                self.edges.contains(&(i, j))
            }
            _ => false,
        }
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[self.slot(v)]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(s) = stack.pop() {
            for &w in &self.adjacency[s] {
                let t = self.slot(w);
                if !seen[t] {
                    seen[t] = true;
                    reached += 1;
                    stack.push(t);
                }
            }
        }
        reached == n
    }

    /// Cycle rank `m - n + 1`.
    pub fn betti(&self) -> Result<u64, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        // connected ⇒ m ≥ n - 1
        Ok((self.edge_count() + 1 - self.vertex_count()) as u64)
    }

    /// `⌊β/2⌋`, the largest genus any orientable embedding can reach.
    pub fn max_genus_upper_bound(&self) -> Result<u64, GraphError> {
        Ok(self.betti()? / 2)
    }

    /// Returns a copy with extra vertices and edges. New vertices must extend
    /// the index ranges (`p' ≥ p`, `q' ≥ q`).
    pub fn extended<I>(&self, p: u32, q: u32, new_edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        Graph::from_edges(p.max(self.part_x), q.max(self.part_y), self.edges().chain(new_edges))
    }
}
