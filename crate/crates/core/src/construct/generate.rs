//! Materializing one-face embeddings of `K_{n,n}` and their provenance.

use std::collections::HashMap;
use std::fmt;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::insertion::{Corner, InsertionChoice, ResolvedBatch};
use super::stages::{base_embeddings_k23, k11, predicted_prefix_count, run_stage, stage_plan, Stage};
use crate::embedding::Embedding;
use crate::error::ConstructError;

/// Default cap on exhaustively materialized embeddings.
pub const DEFAULT_MATERIALIZE_BUDGET: u64 = 1_000_000;

/// The choices that produced an embedding: which `K_{2,3}` base, then one
/// insertion choice per stage of the plan for `(n, x_count)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChoiceSequence {
    pub n: u32,
    pub x_count: u32,
    pub base: usize,
    pub steps: Vec<InsertionChoice>,
}

impl ChoiceSequence {
    fn plan(&self) -> Result<Vec<Stage>, ConstructError> {
        if self.n == 1 {
            return Ok(Vec::new());
        }
        stage_plan(self.n, self.x_count)
    }

    /// Rebuilds the embedding, checking every step stays one-face.
    pub fn replay(&self) -> Result<Embedding, ConstructError> {
        if self.n == 1 {
            if self.x_count != 1 || self.base != 0 || !self.steps.is_empty() {
                return Err(ConstructError::BadSequence { n: 1, reason: "K_{1,1} has no choices".into() });
            }
            return Ok(k11());
        }
        let plan = self.plan()?;
        if plan.len() != self.steps.len() {
            return Err(ConstructError::BadSequence {
                n: self.n,
                reason: format!("expected {} steps, found {}", plan.len(), self.steps.len()),
            });
        }
        let mut current = base_embeddings_k23()
            .into_iter()
            .nth(self.base)
            .ok_or_else(|| ConstructError::BadSequence { n: self.n, reason: format!("no base {}", self.base) })?;
        for (stage, choice) in plan.iter().zip(&self.steps) {
            current = ResolvedBatch::resolve(&current, &stage.batch())?.apply(&current, choice)?;
            if !current.is_one_face() {
                return Err(ConstructError::NotOneFace { stage: stage.label() });
            }
        }
        Ok(current)
    }

    /// Parses the single-line form written by `Display`.
    pub fn parse(line: &str) -> Result<ChoiceSequence, ConstructError> {
        let bad = |reason: String| ConstructError::BadSequence { n: 0, reason };
        let mut tokens = line.split_whitespace();
        let mut field = |key: &str| -> Result<u64, ConstructError> {
            let token = tokens.next().ok_or_else(|| bad(format!("missing {key}")))?;
            token
                .strip_prefix(key)
                .and_then(|v| v.strip_prefix('='))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(format!("expected {key}=<number>, found `{token}`")))
        };
        let n = field("n")? as u32;
        let x_count = field("x")? as u32;
        let base = field("base")? as usize;
        let mut seq = ChoiceSequence { n, x_count, base, steps: Vec::new() };
        let plan = seq.plan()?;
        let rest: Vec<&str> = tokens.collect();
        if rest.len() != plan.len() {
            return Err(ConstructError::BadSequence {
                n,
                reason: format!("expected {} steps, found {}", plan.len(), rest.len()),
            });
        }
        // Corner vertices are implied by the batch, which depends only on the stage.
        for (token, stage) in rest.iter().zip(&plan) {
            let vertices = stage.batch().attachment_order();
            let fail = || ConstructError::BadSequence { n, reason: format!("bad step `{token}`") };
            let (label, body) = token.split_once('=').ok_or_else(fail)?;
            if label != stage.label() {
                return Err(ConstructError::BadSequence {
                    n,
                    reason: format!("expected stage {}, found {label}", stage.label()),
                });
            }
            let (corners, variant) = body.split_once('/').ok_or_else(fail)?;
            let positions: Vec<usize> = corners
                .split(',')
                .map(|p| p.parse().map_err(|_| fail()))
                .collect::<Result<_, _>>()?;
            if positions.len() != vertices.len() {
                return Err(fail());
            }
            let corners = vertices
                .iter()
                .zip(positions)
                .map(|(&vertex, position)| Corner { vertex, position })
                .collect();
            seq.steps.push(InsertionChoice { corners, variant: variant.parse().map_err(|_| fail())? });
        }
        Ok(seq)
    }
}

/// `n=5 x=5 base=1 pair.k2=0,2/1 x3.sub0=1,0,1/0 ...`
impl fmt::Display for ChoiceSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} x={} base={}", self.n, self.x_count, self.base)?;
        let plan = self.plan().map_err(|_| fmt::Error)?;
        for (stage, choice) in plan.iter().zip(&self.steps) {
            let corners: Vec<String> = choice.corners.iter().map(|c| c.position.to_string()).collect();
            write!(f, " {}={}/{}", stage.label(), corners.join(","), choice.variant)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerateMode {
    /// Every path through the stage tree, refused above `budget` outputs.
    Exhaustive { budget: u64 },
    /// `count` independent draws, each choosing uniformly among the one-face
    /// completions at every stage. Draw `t` uses stream `t` of a ChaCha8
    /// generator seeded with `seed`, so output is independent of worker count.
    Sampled { seed: u64, count: usize },
}

pub type Generated = (ChoiceSequence, Embedding);

/// One-face embeddings of `K_{n,n}`.
pub fn generate_all(n: u32, mode: GenerateMode) -> Result<Vec<Generated>, ConstructError> {
    generate_prefix(n, n, mode)
}

/// One-face embeddings of `G[x_1..x_{x_count}][y_1..y_n]`.
pub fn generate_prefix(n: u32, x_count: u32, mode: GenerateMode) -> Result<Vec<Generated>, ConstructError> {
    if n.is_multiple_of(2) {
        return Err(ConstructError::EvenN(n));
    }
    if n == 1 {
        let seq = ChoiceSequence { n: 1, x_count: 1, base: 0, steps: Vec::new() };
        let copies = match mode {
            GenerateMode::Exhaustive { .. } => 1,
            GenerateMode::Sampled { count, .. } => count,
        };
        return Ok(vec![(seq, k11()); copies]);
    }
    let plan = stage_plan(n, x_count)?;
    match mode {
        GenerateMode::Exhaustive { budget } => {
            let predicted = predicted_prefix_count(n, x_count)?;
            if predicted.to_u64().is_none_or(|c| c > budget) {
                return Err(ConstructError::BudgetExceeded { count: predicted, budget });
            }
            exhaustive(n, x_count, &plan)
        }
        GenerateMode::Sampled { seed, count } => (0..count)
            .into_par_iter()
            .map(|draw| sample_one(n, x_count, &plan, seed, draw as u64))
            .collect(),
    }
}

fn exhaustive(n: u32, x_count: u32, plan: &[Stage]) -> Result<Vec<Generated>, ConstructError> {
    let mut frontier: Vec<Generated> = base_embeddings_k23()
        .into_iter()
        .enumerate()
        .map(|(base, e)| (ChoiceSequence { n, x_count, base, steps: Vec::new() }, e))
        .collect();
    for stage in plan {
        let expanded: Vec<Vec<Generated>> = frontier
            .par_iter()
            .map(|(seq, e)| {
                Ok(run_stage(e, stage)?
                    .into_iter()
                    .map(|(choice, out)| {
                        let mut next = seq.clone();
                        next.steps.push(choice);
                        (next, out)
                    })
                    .collect())
            })
            .collect::<Result<_, ConstructError>>()?;
        frontier = expanded.into_iter().flatten().collect();
    }
    Ok(frontier)
}

fn sample_one(n: u32, x_count: u32, plan: &[Stage], seed: u64, draw: u64) -> Result<Generated, ConstructError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(draw);
    let bases = base_embeddings_k23();
    let base = rng.gen_range(0..bases.len());
    let mut seq = ChoiceSequence { n, x_count, base, steps: Vec::with_capacity(plan.len()) };
    let mut current = bases.into_iter().nth(base).expect("in range");
    for stage in plan {
        let mut survivors = run_stage(&current, stage)?;
        let pick = rng.gen_range(0..survivors.len());
        let (choice, out) = survivors.swap_remove(pick);
        seq.steps.push(choice);
        current = out;
    }
    Ok((seq, current))
}

/// Two stream entries with the same embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub first_index: usize,
    pub second_index: usize,
    pub first: ChoiceSequence,
    pub second: ChoiceSequence,
}

impl Collision {
    /// The entries repeat one sequence, rather than two sequences meeting.
    pub fn same_sequence(&self) -> bool {
        self.first == self.second
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctReport {
    pub total: usize,
    pub unique_embeddings: usize,
    pub distinct_sequences: usize,
    pub collisions: Vec<Collision>,
    /// Unique embeddings whose mirror image is also in the set.
    pub mirror_paired: usize,
}

impl DistinctReport {
    /// No two different sequences gave the same embedding.
    pub fn is_injective(&self) -> bool {
        self.collisions.iter().all(Collision::same_sequence)
    }

    pub fn summary(&self) -> String {
        format!("{} unique / {}", self.unique_embeddings, self.total)
    }
}

impl fmt::Display for DistinctReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        writeln!(f, "distinct choice sequences {}", self.distinct_sequences)?;
        writeln!(f, "mirror-paired embeddings {}", self.mirror_paired)?;
        for c in &self.collisions {
            let kind = if c.same_sequence() { "repeated entry" } else { "collision" };
            writeln!(f, "{kind}: #{} and #{}", c.first_index, c.second_index)?;
            writeln!(f, "  {}", c.first)?;
            writeln!(f, "  {}", c.second)?;
        }
        Ok(())
    }
}

/// Checks that distinct sequences map to distinct embeddings. Embeddings are
/// compared by their canonical rotation systems.
pub fn verify_distinct(items: &[Generated]) -> DistinctReport {
    let mut first_seen: HashMap<&Embedding, usize> = HashMap::with_capacity(items.len());
    let mut sequences: HashMap<&ChoiceSequence, ()> = HashMap::with_capacity(items.len());
    let mut collisions = Vec::new();
    for (index, (seq, e)) in items.iter().enumerate() {
        sequences.insert(seq, ());
        if let Some(&earlier) = first_seen.get(e) {
            collisions.push(Collision {
                first_index: earlier,
                second_index: index,
                first: items[earlier].0.clone(),
                second: seq.clone(),
            });
        } else {
            first_seen.insert(e, index);
        }
    }
    let mirror_paired = first_seen.keys().filter(|e| first_seen.contains_key(&e.mirror())).count();
    DistinctReport {
        total: items.len(),
        unique_embeddings: first_seen.len(),
        distinct_sequences: sequences.len(),
        collisions,
        mirror_paired,
    }
}
