//! The staged build-up of one-face embeddings of `K_{n,n}`, `n = 2s + 1`.
//!
//! 1. Start from a one-face embedding of `K_{2,3}`.
//! 2. For `k = 2..=s`, add `𝒱_{1,k}` and `𝒱_{2,k}` together (both new
//!    y-endpoints), reaching `K_{2,2k+1}`; lower bound `2(2k-1)²` per input.
//! 3. For `k = 3..=n`, attach `x_k`: first `y_1 x_k` plus `𝒱_{k,1}` (lower
//!    bound `(k-1)³`), then `𝒱_{k,i}` for `i = 2..=s` (lower bound
//!    `(2i-1)(k-1)²` each).
//!
//! Every step is run as an exhaustive filter over insertion choices; the
//! bounds are checked, never assumed, and exact counts are kept.

use num_bigint::BigUint;
use num_traits::One;

use super::insertion::{InsertionBatch, InsertionChoice, PendantEdge, Piece, ResolvedBatch, VTypeEdge};
use crate::bounds::double_factorial;
use crate::embedding::Embedding;
use crate::error::{ClaimFailure, ConstructError};
use crate::format::serialize;
use crate::graph::{Graph, Vertex};
use crate::oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StageKind {
    /// `𝒱_{1,k} ∪ 𝒱_{2,k}` on `K_{2,2k-1}`.
    Pair { k: u32 },
    /// `y_1 x_k ∪ 𝒱_{k,1}`, creating `x_k`.
    Pendant { k: u32 },
    /// `𝒱_{k,i}` with every vertex already present.
    Single { k: u32, i: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stage {
    pub kind: StageKind,
    /// Lower bound on one-face completions per input embedding.
    pub factor: u64,
}

impl Stage {
    pub fn pair(k: u32) -> Stage {
        let f = u64::from(2 * k - 1);
        Stage { kind: StageKind::Pair { k }, factor: 2 * f * f }
    }

    pub fn pendant(k: u32) -> Stage {
        let f = u64::from(k - 1);
        Stage { kind: StageKind::Pendant { k }, factor: f * f * f }
    }

    pub fn single(k: u32, i: u32) -> Stage {
        let f = u64::from(k - 1);
        Stage { kind: StageKind::Single { k, i }, factor: u64::from(2 * i - 1) * f * f }
    }

    /// `pair.k2`, `x3.sub0`, `x3.sub2`.
    pub fn label(&self) -> String {
        match self.kind {
            StageKind::Pair { k } => format!("pair.k{k}"),
            StageKind::Pendant { k } => format!("x{k}.sub0"),
            StageKind::Single { k, i } => format!("x{k}.sub{i}"),
        }
    }

    /// Which x-vertex the stage belongs to (2 for the pair stages).
    pub fn x_vertex(&self) -> u32 {
        match self.kind {
            StageKind::Pair { .. } => 2,
            StageKind::Pendant { k } | StageKind::Single { k, .. } => k,
        }
    }

    pub fn batch(&self) -> InsertionBatch {
        match self.kind {
            StageKind::Pair { k } => InsertionBatch::new(vec![
                Piece::VType(VTypeEdge::standard(1, k).with_new_endpoints()),
                Piece::VType(VTypeEdge::standard(2, k).with_new_endpoints()),
            ]),
            StageKind::Pendant { k } => InsertionBatch::new(vec![
                Piece::Pendant(PendantEdge { x: Vertex::X(k), y: Vertex::Y(1), x_new: true, y_new: false }),
                Piece::VType(VTypeEdge::standard(k, 1).with_new_midpoint()),
            ]),
            StageKind::Single { k, i } => InsertionBatch::single(VTypeEdge::standard(k, i)),
        }
    }
}

pub(crate) fn half(n: u32) -> Result<u32, ConstructError> {
    if n.is_multiple_of(2) {
        return Err(ConstructError::EvenN(n));
    }
    Ok((n - 1) / 2)
}

/// Stages after the `K_{2,3}` base, up to and including the attachment of
/// `x_{x_count}`. For `x_count = 2` this is the pair stages only.
pub fn stage_plan(n: u32, x_count: u32) -> Result<Vec<Stage>, ConstructError> {
    let s = half(n)?;
    if n < 3 || x_count < 2 || x_count > n {
        return Err(ConstructError::BadSequence {
            n,
            reason: format!("x count {x_count} outside 2..={n}"),
        });
    }
    let mut plan: Vec<Stage> = (2..=s).map(Stage::pair).collect();
    for k in 3..=x_count {
        plan.push(Stage::pendant(k));
        plan.extend((2..=s).map(|i| Stage::single(k, i)));
    }
    Ok(plan)
}

/// The one-face rotation systems of `K_{2,3}`, found by filtering all four.
pub fn base_embeddings_k23() -> Vec<Embedding> {
    let g = Graph::complete_bipartite(2, 3).expect("K_{2,3}");
    oracle::one_face_embeddings(&g, oracle::DEFAULT_BUDGET).expect("4 systems")
}

/// The single embedding of `K_{1,1}`.
pub fn k11() -> Embedding {
    let g = Graph::complete_bipartite(1, 1).expect("K_{1,1}");
    Embedding::new(g, vec![vec![Vertex::Y(1)], vec![Vertex::X(1)]]).expect("valid")
}

/// Runs one stage on `e`, failing if fewer than `stage.factor` one-face
/// completions exist.
pub fn run_stage(e: &Embedding, stage: &Stage) -> Result<Vec<(InsertionChoice, Embedding)>, ConstructError> {
    let resolved = ResolvedBatch::resolve(e, &stage.batch())?;
    let survivors = resolved.one_face_completions(e);
    if (survivors.len() as u64) < stage.factor {
        return Err(Box::new(ClaimFailure {
            stage: stage.label(),
            required: stage.factor,
            observed: survivors.len() as u64,
            input: serialize(e),
        })
        .into());
    }
    Ok(survivors)
}

/// Observed completion count of one stage on one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageOutcome {
    pub label: String,
    pub required: u64,
    pub observed: u64,
    pub outputs: Vec<(InsertionChoice, Embedding)>,
}

/// `𝒱_{1,k} ∪ 𝒱_{2,k}` on a one-face `K_{2,2k-1}` embedding.
pub fn pair_stage(e: &Embedding, k: u32) -> Result<StageOutcome, ConstructError> {
    let g = e.graph();
    if k < 2 || g.part_x_size() != 2 || g.part_y_size() != 2 * k - 1 || !e.is_one_face() {
        return Err(ConstructError::BadSequence {
            n: 2 * k - 1,
            reason: format!("pair stage k = {k} needs a one-face K_{{2,{}}} embedding", 2 * k - 1),
        });
    }
    let stage = Stage::pair(k);
    let outputs = run_stage(e, &stage)?;
    Ok(StageOutcome { label: stage.label(), required: stage.factor, observed: outputs.len() as u64, outputs })
}

/// Per-substep statistics across every intermediate embedding visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstepRecord {
    pub label: String,
    pub required: u64,
    pub inputs: u64,
    pub min_observed: u64,
    pub max_observed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachOutcome {
    pub k: u32,
    pub substeps: Vec<SubstepRecord>,
    /// `(k-1) · (2s-1)!! · (k-1)^(2s)`.
    pub required_product: BigUint,
    /// Product of the per-substep minimum observed counts.
    pub observed_product: BigUint,
    pub outputs: Vec<(Vec<InsertionChoice>, Embedding)>,
}

/// Lower bound on ways to attach `x_k` fully, per input embedding.
pub fn attach_factor(k: u32, n: u32) -> BigUint {
    let s = (n - 1) / 2;
    let km1 = BigUint::from(k - 1);
    &km1 * double_factorial(2 * i64::from(s) - 1).expect("s ≥ 0") * km1.pow(2 * s)
}

/// Attaches `x_k` to a one-face embedding over `{x_1..x_{k-1}} ∪ {y_1..y_n}`,
/// running every substep on every intermediate embedding.
pub fn attach_x_stage(e: &Embedding, k: u32, n: u32) -> Result<AttachOutcome, ConstructError> {
    let s = half(n)?;
    let g = e.graph();
    if k < 3 || k > n || g.part_x_size() != k - 1 || g.part_y_size() != n || !e.is_one_face() {
        return Err(ConstructError::BadSequence {
            n,
            reason: format!("attaching x{k} needs a one-face embedding with x1..x{} and y1..y{n}", k - 1),
        });
    }
    let stages: Vec<Stage> = std::iter::once(Stage::pendant(k)).chain((2..=s).map(|i| Stage::single(k, i))).collect();
    let mut frontier: Vec<(Vec<InsertionChoice>, Embedding)> = vec![(Vec::new(), e.clone())];
    let mut substeps = Vec::new();
    for stage in &stages {
        let mut next = Vec::new();
        let mut record = SubstepRecord {
            label: stage.label(),
            required: stage.factor,
            inputs: 0,
            min_observed: u64::MAX,
            max_observed: 0,
        };
        for (choices, current) in &frontier {
            let survivors = run_stage(current, stage)?;
            let count = survivors.len() as u64;
            record.inputs += 1;
            record.min_observed = record.min_observed.min(count);
            record.max_observed = record.max_observed.max(count);
            for (choice, out) in survivors {
                let mut trail = choices.clone();
                trail.push(choice);
                next.push((trail, out));
            }
        }
        substeps.push(record);
        frontier = next;
    }
    let observed_product = substeps.iter().map(|r| BigUint::from(r.min_observed)).product::<BigUint>();
    let required_product = attach_factor(k, n);
    if observed_product < required_product {
        return Err(Box::new(ClaimFailure {
            stage: format!("x{k}"),
            required: u64::try_from(&required_product).unwrap_or(u64::MAX),
            observed: u64::try_from(&observed_product).unwrap_or(u64::MAX),
            input: serialize(e),
        })
        .into());
    }
    Ok(AttachOutcome { k, substeps, required_product, observed_product, outputs: frontier })
}

/// Product of the stage lower bounds through `x_count`, including the two
/// base embeddings. For `x_count = n` this is the full count.
pub fn predicted_prefix_count(n: u32, x_count: u32) -> Result<BigUint, ConstructError> {
    if n == 1 {
        return Ok(BigUint::one());
    }
    let plan = stage_plan(n, x_count)?;
    Ok(plan.iter().map(|st| BigUint::from(st.factor)).product::<BigUint>() * 2u32)
}

/// `2^s((2s-1)!!)² · ∏_{k=3}^{n} (k-1)(2s-1)!!(k-1)^{2s}`.
pub fn predicted_count(n: u32) -> Result<BigUint, ConstructError> {
    let s = half(n)?;
    let dfact = double_factorial(2 * i64::from(s) - 1).expect("s ≥ 0");
    let pairs = (BigUint::one() << s) * dfact.pow(2);
    Ok((3..=n).map(|k| attach_factor(k, n)).fold(pairs, |acc, f| acc * f))
}
