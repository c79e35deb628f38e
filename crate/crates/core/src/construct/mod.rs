//! Building one-face embeddings of `K_{n,n}` by inserting v-type-edges into
//! corners of one-face embeddings, stage by stage.

mod generate;
mod insertion;
mod stages;
mod verify;

pub use generate::{
    generate_all, generate_prefix, verify_distinct, ChoiceSequence, Collision, DistinctReport, GenerateMode,
    Generated, DEFAULT_MATERIALIZE_BUDGET,
};
pub use insertion::{
    corners_at, insert_batch, insert_vtype, valid_completions, Corner, InsertionBatch, InsertionChoice,
    PendantEdge, Piece, ResolvedBatch, VTypeEdge,
};
pub use stages::{
    attach_factor, attach_x_stage, base_embeddings_k23, pair_stage, k11, predicted_count,
    predicted_prefix_count, run_stage, stage_plan, AttachOutcome, Stage, StageKind, StageOutcome, SubstepRecord,
};
pub use verify::{verify_claims, ClaimsReport, ProductRow, StageRow, VerifyOptions};
