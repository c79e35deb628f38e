//! Exhaustive enumeration of rotation systems and face-count censuses.
//!
//! Systems are enumerated in lexicographic order of their canonical rotations,
//! with `x_1` the most significant vertex. Fixing the rotation at `x_1` splits
//! the enumeration into contiguous partitions, which is how parallel censuses
//! are distributed: each worker owns whole partitions and emits a partial
//! census; partials merge by adding counts.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::bounds::{factorial_u64, magnitude};
use crate::embedding::Embedding;
use crate::error::OracleError;
use crate::graph::{Graph, Vertex};

/// Default cap on the number of rotation systems a census will visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// `∏_v (deg(v) - 1)!`.
pub fn rotation_count(g: &Graph) -> BigUint {
    g.degrees()
        .into_iter()
        .map(|d| factorial_u64(d.saturating_sub(1) as u64))
        .product()
}

fn check_budget(g: &Graph, budget: u64) -> Result<u64, OracleError> {
    let count = rotation_count(g);
    match count.to_u64() {
        Some(c) if c <= budget => Ok(c),
        _ => Err(OracleError::BudgetExceeded { count, budget }),
    }
}

/// Canonical rotations of one vertex as index permutations into its sorted
/// neighbor list, in lexicographic order. Index 0 always comes first.
fn local_rotations(degree: usize) -> Vec<Vec<usize>> {
    if degree <= 1 {
        return vec![(0..degree).collect()];
    }
    (1..degree)
        .permutations(degree - 1)
        .map(|rest| std::iter::once(0).chain(rest).collect())
        .collect()
}

/// All canonical rotations of each vertex, in lexicographic order.
#[derive(Debug, Clone)]
struct RotationSpace {
    graph: Graph,
    per_vertex: Vec<Vec<Vec<usize>>>,
}

impl RotationSpace {
    fn new(g: &Graph) -> RotationSpace {
        let per_vertex = g.degrees().into_iter().map(local_rotations).collect();
        RotationSpace { graph: g.clone(), per_vertex }
    }

    fn partitions(&self) -> usize {
        self.per_vertex[0].len()
    }

    fn embedding(&self, digits: &[usize]) -> Embedding {
        let rotations = digits
            .iter()
            .enumerate()
            .map(|(slot, &digit)| {
                let neighbors = self.graph.neighbors(self.graph.vertex_at(slot));
                self.per_vertex[slot][digit].iter().map(|&i| neighbors[i]).collect()
            })
            .collect();
        Embedding::from_valid_parts(self.graph.clone(), rotations)
    }
}

/// Number of partitions the enumeration splits into (rotations of `x_1`).
pub fn partition_count(g: &Graph) -> usize {
    local_rotations(g.degree(Vertex::X(1))).len()
}

/// Iterator over every rotation system of a graph, or of one partition.
#[derive(Debug, Clone)]
pub struct EmbeddingStream {
    space: RotationSpace,
    digits: Vec<usize>,
    /// Slots at or after this index vary; earlier slots are fixed.
    first_free: usize,
    done: bool,
}

impl Iterator for EmbeddingStream {
    type Item = Embedding;

    fn next(&mut self) -> Option<Embedding> {
        if self.done {
            return None;
        }
        let out = self.space.embedding(&self.digits);
        self.done = true;
        for slot in (self.first_free..self.digits.len()).rev() {
            self.digits[slot] += 1;
            if self.digits[slot] < self.space.per_vertex[slot].len() {
                self.done = false;
                break;
            }
            self.digits[slot] = 0;
        }
        Some(out)
    }
}

/// Streams every rotation system exactly once, lexicographically.
pub fn enumerate_embeddings(g: &Graph, budget: u64) -> Result<EmbeddingStream, OracleError> {
    check_budget(g, budget)?;
    if !g.is_connected() {
        return Err(crate::error::GraphError::Disconnected.into());
    }
    let space = RotationSpace::new(g);
    let digits = vec![0; g.vertex_count()];
    Ok(EmbeddingStream { space, digits, first_free: 0, done: false })
}

/// Streams the systems whose rotation at `x_1` is its `part`-th canonical rotation.
pub fn enumerate_partition(g: &Graph, budget: u64, part: usize) -> Result<EmbeddingStream, OracleError> {
    let mut stream = enumerate_embeddings(g, budget)?;
    stream.digits[0] = part;
    stream.first_free = 1;
    stream.done = part >= stream.space.partitions();
    Ok(stream)
}

/// Exhaustive face census of a graph.
#[derive(Debug, Clone)]
pub struct CensusReport {
    pub part_x: u32,
    pub part_y: u32,
    pub vertices: usize,
    pub edges: usize,
    pub total_systems: BigUint,
    pub by_face_count: BTreeMap<usize, BigUint>,
    pub one_face: BigUint,
    /// Systems attaining the smallest face count seen.
    pub max_genus_count: BigUint,
    pub max_genus: u64,
    pub elapsed: Duration,
}

/// Equality ignores `elapsed`.
impl PartialEq for CensusReport {
    fn eq(&self, other: &Self) -> bool {
        self.part_x == other.part_x
            && self.part_y == other.part_y
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.by_face_count == other.by_face_count
            && self.total_systems == other.total_systems
            && self.one_face == other.one_face
            && self.max_genus_count == other.max_genus_count
            && self.max_genus == other.max_genus
    }
}

impl Eq for CensusReport {}

impl CensusReport {
    fn from_counts(g: &Graph, by_face_count: BTreeMap<usize, BigUint>, elapsed: Duration) -> Self {
        let total_systems = by_face_count.values().sum();
        let one_face = by_face_count.get(&1).cloned().unwrap_or_default();
        let (min_faces, max_genus_count) = by_face_count
            .iter()
            .next()
            .map(|(&f, c)| (f, c.clone()))
            .unwrap_or((0, BigUint::zero()));
        let twice = 2 + g.edge_count() as i64 - g.vertex_count() as i64 - min_faces as i64;
        CensusReport {
            part_x: g.part_x_size(),
            part_y: g.part_y_size(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            total_systems,
            by_face_count,
            one_face,
            max_genus_count,
            max_genus: (twice.max(0) / 2) as u64,
            elapsed,
        }
    }

    /// Combines censuses of disjoint partitions of the same graph.
    pub fn merge(mut self, other: CensusReport) -> CensusReport {
        debug_assert_eq!((self.part_x, self.part_y, self.edges), (other.part_x, other.part_y, other.edges));
        for (faces, count) in other.by_face_count {
            *self.by_face_count.entry(faces).or_default() += count;
        }
        self.total_systems += other.total_systems;
        self.one_face = self.by_face_count.get(&1).cloned().unwrap_or_default();
        let (min_faces, count) = self.by_face_count.iter().next().expect("non-empty census");
        self.max_genus_count = count.clone();
        let twice = 2 + self.edges as i64 - self.vertices as i64 - *min_faces as i64;
        self.max_genus = (twice / 2) as u64;
        self.elapsed += other.elapsed;
        self
    }

    /// Aligned table. Timing is left out so the output is reproducible.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let betti = self.edges as i64 - self.vertices as i64 + 1;
        let _ = writeln!(
            out,
            "graph K({},{}): {} vertices, {} edges, betti {}",
            self.part_x, self.part_y, self.vertices, self.edges, betti
        );
        let width = self.total_systems.to_string().len().max(5);
        let _ = writeln!(out, "{:>5}  {:>5}  {:>width$}", "faces", "genus", "count");
        for (faces, count) in &self.by_face_count {
            let genus = (2 + self.edges as i64 - self.vertices as i64 - *faces as i64) / 2;
            let _ = writeln!(out, "{faces:>5}  {genus:>5}  {:>width$}", count.to_string());
        }
        let _ = writeln!(out, "total systems   {}{}", self.total_systems, magnitude(&self.total_systems));
        let _ = writeln!(out, "one-face        {}", self.one_face);
        let _ = writeln!(out, "maximum genus   {} (attained by {})", self.max_genus, self.max_genus_count);
        out
    }

    /// `faces=<k> count=<decimal>` lines.
    pub fn to_records(&self) -> String {
        self.by_face_count
            .iter()
            .map(|(f, c)| format!("faces={f} count={c}\n"))
            .collect()
    }
}

/// Reads `faces=<k> count=<decimal>` lines back into a map.
pub fn parse_census_records(text: &str) -> Option<BTreeMap<usize, BigUint>> {
    let mut out = BTreeMap::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (faces, count) = line.split_once(' ')?;
        let faces = faces.strip_prefix("faces=")?.parse().ok()?;
        let count = count.trim().strip_prefix("count=")?.parse().ok()?;
        out.insert(faces, count);
    }
    Some(out)
}

/// Face-count kernel over one partition. Darts are numbered
/// `offset[slot] + index into the sorted neighbor list`.
struct Kernel {
    offsets: Vec<usize>,
    reverse: Vec<u32>,
    rot_next: Vec<u32>,
    stamp: Vec<u32>,
    generation: u32,
}

impl Kernel {
    fn new(g: &Graph) -> Kernel {
        let mut offsets = vec![0];
        for d in g.degrees() {
            offsets.push(offsets.last().unwrap() + d);
        }
        let darts = *offsets.last().unwrap();
        let mut reverse = vec![0u32; darts];
        for v in g.vertices() {
            let s = g.slot(v);
            for (i, &w) in g.neighbors(v).iter().enumerate() {
                let t = g.slot(w);
                let back = g.neighbors(w).binary_search(&v).expect("symmetric adjacency");
                reverse[offsets[s] + i] = (offsets[t] + back) as u32;
            }
        }
        Kernel { offsets, reverse, rot_next: vec![0; darts], stamp: vec![0; darts], generation: 0 }
    }

    fn set_rotation(&mut self, slot: usize, rotation: &[usize]) {
        let base = self.offsets[slot];
        let deg = rotation.len();
        for t in 0..deg {
            self.rot_next[base + rotation[t]] = (base + rotation[(t + 1) % deg]) as u32;
        }
    }

    fn face_count(&mut self) -> usize {
        self.generation += 1;
        let generation = self.generation;
        let mut faces = 0;
        for start in 0..self.rot_next.len() {
            if self.stamp[start] == generation {
                continue;
            }
            faces += 1;
            let mut d = start;
            while self.stamp[d] != generation {
                self.stamp[d] = generation;
                d = self.rot_next[self.reverse[d] as usize] as usize;
            }
        }
        faces
    }
}

fn census_partition(space: &RotationSpace, part: usize) -> BTreeMap<usize, u64> {
    let mut kernel = Kernel::new(&space.graph);
    let n = space.per_vertex.len();
    let mut digits = vec![0usize; n];
    digits[0] = part;
    for (slot, &d) in digits.iter().enumerate() {
        kernel.set_rotation(slot, &space.per_vertex[slot][d]);
    }
    // Only vertices with more than one rotation take part in the odometer.
    let free: Vec<usize> = (1..n).filter(|&s| space.per_vertex[s].len() > 1).collect();
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    'outer: loop {
        *counts.entry(kernel.face_count()).or_default() += 1;
        for &slot in free.iter().rev() {
            digits[slot] += 1;
            if digits[slot] == space.per_vertex[slot].len() {
                digits[slot] = 0;
                kernel.set_rotation(slot, &space.per_vertex[slot][0]);
            } else {
                kernel.set_rotation(slot, &space.per_vertex[slot][digits[slot]]);
                continue 'outer;
            }
        }
        break;
    }
    counts
}

fn to_big(counts: BTreeMap<usize, u64>) -> BTreeMap<usize, BigUint> {
    counts.into_iter().map(|(f, c)| (f, BigUint::from(c))).collect()
}

/// Census of a single partition (rotation of `x_1` fixed).
pub fn face_census_partition(g: &Graph, budget: u64, part: usize) -> Result<CensusReport, OracleError> {
    check_budget(g, budget)?;
    if !g.is_connected() {
        return Err(crate::error::GraphError::Disconnected.into());
    }
    let start = Instant::now();
    let space = RotationSpace::new(g);
    let counts = if part < space.partitions() { census_partition(&space, part) } else { BTreeMap::new() };
    Ok(CensusReport::from_counts(g, to_big(counts), start.elapsed()))
}

/// Full census on the current rayon pool.
pub fn face_census(g: &Graph, budget: u64) -> Result<CensusReport, OracleError> {
    check_budget(g, budget)?;
    if !g.is_connected() {
        return Err(crate::error::GraphError::Disconnected.into());
    }
    let start = Instant::now();
    let space = RotationSpace::new(g);
    let merged = (0..space.partitions())
        .into_par_iter()
        .map(|part| census_partition(&space, part))
        .reduce(BTreeMap::new, |mut a, b| {
            for (f, c) in b {
                *a.entry(f).or_default() += c;
            }
            a
        });
    Ok(CensusReport::from_counts(g, to_big(merged), start.elapsed()))
}

/// Full census on a dedicated pool with `jobs` workers.
pub fn face_census_with_jobs(g: &Graph, budget: u64, jobs: usize) -> Result<CensusReport, OracleError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| face_census(g, budget))
}

/// Number of systems attaining the maximum genus.
pub fn count_max_genus(g: &Graph, budget: u64) -> Result<BigUint, OracleError> {
    Ok(face_census(g, budget)?.max_genus_count)
}

/// Every one-face system, in enumeration order.
pub fn one_face_embeddings(g: &Graph, budget: u64) -> Result<Vec<Embedding>, OracleError> {
    Ok(enumerate_embeddings(g, budget)?.filter(Embedding::is_one_face).collect())
}

/// A uniformly random rotation system.
pub fn random_embedding<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Embedding {
    let rotations = g
        .vertices()
        .map(|v| {
            let neighbors = g.neighbors(v);
            let mut rest: Vec<Vertex> = neighbors[1..].to_vec();
            rand::seq::SliceRandom::shuffle(rest.as_mut_slice(), rng);
            std::iter::once(neighbors[0]).chain(rest).collect()
        })
        .collect();
    Embedding::from_valid_parts(g.clone(), rotations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use std::collections::HashSet;

    fn k(p: u32, q: u32) -> Graph {
        Graph::complete_bipartite(p, q).unwrap()
    }

    #[test]
    fn rotation_counts() {
        assert_eq!(rotation_count(&k(2, 3)), BigUint::from(4u32));
        assert_eq!(rotation_count(&k(3, 3)), BigUint::from(64u32));
        assert_eq!(rotation_count(&k(3, 5)), BigUint::from(442_368u32));
        assert_eq!(rotation_count(&k(1, 1)), BigUint::one());
    }

    #[test]
    fn stream_lengths_and_uniqueness() {
        for (p, q, len) in [(2, 3, 4usize), (3, 3, 64), (2, 5, 576)] {
            let all: Vec<Embedding> = enumerate_embeddings(&k(p, q), DEFAULT_BUDGET).unwrap().collect();
            assert_eq!(all.len(), len);
            let unique: HashSet<&Embedding> = all.iter().collect();
            assert_eq!(unique.len(), len);
        }
    }

    #[test]
    fn stream_is_lexicographic() {
        let all: Vec<Vec<Vec<Vertex>>> = enumerate_embeddings(&k(3, 3), DEFAULT_BUDGET)
            .unwrap()
            .map(|e| e.rotations().to_vec())
            .collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn partitions_concatenate_to_full_stream() {
        let g = k(3, 3);
        let full: Vec<Embedding> = enumerate_embeddings(&g, DEFAULT_BUDGET).unwrap().collect();
        let parts: Vec<Embedding> = (0..partition_count(&g))
            .flat_map(|p| enumerate_partition(&g, DEFAULT_BUDGET, p).unwrap())
            .collect();
        assert_eq!(full, parts);
    }

    #[test]
    fn k23_census() {
        let report = face_census(&k(2, 3), DEFAULT_BUDGET).unwrap();
        let expected: BTreeMap<usize, BigUint> =
            [(1, BigUint::from(2u32)), (3, BigUint::from(2u32))].into_iter().collect();
        assert_eq!(report.by_face_count, expected);
        assert_eq!(report.one_face, BigUint::from(2u32));
        assert_eq!(report.max_genus, 1);
        assert_eq!(count_max_genus(&k(2, 3), DEFAULT_BUDGET).unwrap(), BigUint::from(2u32));
        assert_eq!(count_max_genus(&k(1, 1), DEFAULT_BUDGET).unwrap(), BigUint::one());
    }

    #[test]
    fn kernel_agrees_with_reference_tracer() {
        for g in [k(2, 3), k(3, 3), k(2, 4)] {
            let mut reference: BTreeMap<usize, BigUint> = BTreeMap::new();
            for e in enumerate_embeddings(&g, DEFAULT_BUDGET).unwrap() {
                *reference.entry(e.trace_faces().face_count).or_default() += 1u32;
            }
            assert_eq!(face_census(&g, DEFAULT_BUDGET).unwrap().by_face_count, reference);
        }
    }

    #[test]
    fn partition_merge_is_sound() {
        let g = k(3, 3);
        let full = face_census(&g, DEFAULT_BUDGET).unwrap();
        let merged = (0..partition_count(&g))
            .map(|p| face_census_partition(&g, DEFAULT_BUDGET, p).unwrap())
            .reduce(CensusReport::merge)
            .unwrap();
        assert_eq!(full, merged);
        assert_eq!(face_census_with_jobs(&g, DEFAULT_BUDGET, 3).unwrap(), full);
    }

    #[test]
    fn budget_refusal_names_count() {
        let err = face_census(&k(5, 5), DEFAULT_BUDGET).unwrap_err();
        let count = BigUint::from(24u32).pow(10);
        assert_eq!(err, OracleError::BudgetExceeded { count: count.clone(), budget: DEFAULT_BUDGET });
        assert!(err.to_string().contains(&count.to_string()));
        assert!(enumerate_embeddings(&k(3, 3), 63).is_err());
    }

    #[test]
    fn records_round_trip() {
        let report = face_census(&k(3, 3), DEFAULT_BUDGET).unwrap();
        assert_eq!(parse_census_records(&report.to_records()).unwrap(), report.by_face_count);
        assert!(report.to_table().contains("total systems   64"));
    }
}
