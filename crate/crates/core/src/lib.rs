//! Maximum-genus embeddings of complete bipartite graphs.
//!
//! * [`graph`] and [`embedding`]: bipartite graphs, rotation systems, face tracing.
//! * [`oracle`]: exhaustive enumeration of rotation systems and face censuses.
//! * [`construct`]: one-face embeddings of `K_{n,n}` built by v-type-edge insertion.
//! * [`bounds`]: exact lower bounds on the number of maximum-genus embeddings.

pub mod bounds;
pub mod construct;
pub mod embedding;
pub mod error;
pub mod format;
pub mod graph;
pub mod oracle;

pub use bounds::{compare_table, f1, f2, stahl_bound, BoundReport};
pub use construct::{generate_all, verify_claims, verify_distinct, ChoiceSequence, GenerateMode};
pub use embedding::{Embedding, FaceCensus};
pub use error::{BoundsError, ClaimFailure, ConstructError, EmbeddingError, GraphError, OracleError, ParseError};
pub use format::{parse, parse_many, serialize};
pub use graph::{Dart, Graph, Vertex};
pub use num_bigint::BigUint;
pub use oracle::{face_census, CensusReport};
