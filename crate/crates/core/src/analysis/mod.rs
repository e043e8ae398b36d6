//! Analyses over a valid model: trace closure, traceability matrices, gap
//! analysis, roadmap and status roll-up. All results are plain data with
//! deterministic ordering and a JSON form via `serde`.

mod closure;
mod gap;
mod matrix;
mod roadmap;
mod rollup;

pub use closure::{trace_closure, witness_chain, TraceClosure};
pub use gap::{gap_analysis, GapEntry, GapReason, GapReport, Strictness};
pub use matrix::{matrix, matrix_from_closure, TraceabilityMatrix};
pub use roadmap::{roadmap, CoveringRequirement, RoadmapEntry};
pub use rollup::{status_rollup, GroupRollup, StatusCounts, StatusRollup};
