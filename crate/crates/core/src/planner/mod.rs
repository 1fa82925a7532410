//! Global-control assembly planning in a bounded planar workspace.

mod model;
mod moves;
mod search;

pub use model::{
    Configuration, Model, PlacedCube, RelativeKey, Settled, Step, StopReason, Workspace,
};
pub use moves::{format_moves, parse_moves, Compass, Move, MoveKind, MoveSequence};
pub use search::{bfs_reachable, replay, Dedup, PlanEntry, PlanOptions, PlanResult};
