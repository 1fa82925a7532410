//! Pruned search for every shape reachable from one start.
//!
//! Nodes are stop configurations of settle runs, so the direction only
//! changes where the relative configuration changed. Clockwise rotations
//! are only issued at the root. A node whose configuration was already
//! expanded is dropped; see [`Dedup`] for what "already" means. Nodes are
//! expanded cheapest first by (translation steps, rotations, formatted
//! sequence), so the first time a shape is assembled its sequence is the
//! recorded one.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use serde::Serialize;

use crate::budget::{Budget, Meter, Tally};
use crate::enumeration::{shape_to_json, ColoredShape};
use crate::error::{Error, Result};
use crate::planner::model::{Configuration, Model, RelativeKey};
use crate::planner::moves::{Compass, MoveKind, MoveSequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanEntry {
    pub shape: ColoredShape,
    pub moves: MoveSequence,
    pub translation_steps: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PlanResult {
    /// Keyed by [`ColoredShape::id`].
    pub entries: BTreeMap<String, PlanEntry>,
    pub expanded: u64,
}

impl PlanResult {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, shape: &ColoredShape) -> Option<&PlanEntry> {
        self.entries.get(&shape.id())
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out {
            cells: serde_json::Value,
            moves: String,
            translation_steps: u32,
        }
        let map: BTreeMap<&str, Out> = self
            .entries
            .iter()
            .map(|(id, e)| {
                (
                    id.as_str(),
                    Out {
                        cells: shape_to_json(&e.shape),
                        moves: e.moves.to_string(),
                        translation_steps: e.translation_steps,
                    },
                )
            })
            .collect();
        serde_json::to_string_pretty(&map).expect("plan serializes")
    }
}

/// Identity used to terminate search branches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Dedup {
    /// Exact workspace configuration (cells, frame, rotation allowance).
    /// Keeps recorded step counts minimal.
    #[default]
    Absolute,
    /// Configuration up to translation in the north-up frame. Expands fewer
    /// nodes; reachable sets agree in practice but step counts can be longer.
    Relative,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlanOptions {
    pub budget: Budget,
    pub dedup: Dedup,
}

#[derive(PartialEq, Eq, Hash)]
enum SeenKey {
    Absolute(Configuration),
    Relative(RelativeKey),
}

fn seen_key(model: &Model<'_>, config: &Configuration, dedup: Dedup) -> SeenKey {
    match dedup {
        Dedup::Absolute => SeenKey::Absolute(config.clone()),
        Dedup::Relative => SeenKey::Relative(model.relative_key(config)),
    }
}

type Cost = (u32, u32, String);

struct Frontier {
    nodes: Vec<Option<(Configuration, MoveSequence)>>,
    heap: BinaryHeap<Reverse<(Cost, usize)>>,
}

impl Frontier {
    fn push(&mut self, config: Configuration, moves: MoveSequence) {
        let cost = (moves.translation_steps(), moves.rotations(), moves.to_string());
        self.heap.push(Reverse((cost, self.nodes.len())));
        self.nodes.push(Some((config, moves)));
    }

    fn pop(&mut self) -> Option<(Configuration, MoveSequence)> {
        let Reverse((_, id)) = self.heap.pop()?;
        self.nodes[id].take()
    }
}

pub fn bfs_reachable(
    model: &Model<'_>,
    initial: &Configuration,
    opts: &PlanOptions,
) -> Result<PlanResult> {
    let meter = Meter::new(opts.budget);
    let mut tally = Tally::new(&meter);
    let mut frontier = Frontier { nodes: Vec::new(), heap: BinaryHeap::new() };
    let mut seen = HashSet::new();
    let mut result = PlanResult::default();

    frontier.push(initial.clone(), MoveSequence::new());
    if !initial.has_translated() && initial.component_count() == initial.cubes().len() {
        for turns in 1..=3u8 {
            if let Ok(rotated) = model.rotate(initial, turns) {
                frontier.push(rotated, MoveSequence::new().with(MoveKind::Rotate, turns.into()));
            }
        }
    }

    while let Some((config, moves)) = frontier.pop() {
        if !seen.insert(seen_key(model, &config, opts.dedup)) {
            continue;
        }
        tally.tick()?;
        result.expanded += 1;
        if let Some(shape) = model.assembled_shape(&config) {
            result.entries.entry(shape.id()).or_insert_with(|| PlanEntry {
                translation_steps: moves.translation_steps(),
                shape,
                moves: moves.clone(),
            });
            continue;
        }
        for dir in Compass::ALL {
            let settled = model.settle(&config, dir);
            if settled.steps == 0 || seen.contains(&seen_key(model, &settled.config, opts.dedup)) {
                continue;
            }
            frontier.push(settled.config, moves.with(MoveKind::Go(dir), settled.steps));
        }
    }
    tally.flush()?;
    Ok(result)
}

/// Executes `moves` unit by unit from `initial`.
pub fn replay(model: &Model<'_>, initial: &Configuration, moves: &MoveSequence) -> Result<Configuration> {
    let mut config = initial.clone();
    for m in moves.moves() {
        match m.kind {
            MoveKind::Rotate => {
                let turns = (m.count % 4) as u8;
                if turns > 0 {
                    config = model.rotate(&config, turns)?;
                }
            }
            MoveKind::Go(dir) => {
                for _ in 0..m.count {
                    config = model
                        .step(&config, dir)
                        .ok_or_else(|| {
                            Error::InvalidInput(format!("move {} is fully blocked", m))
                        })?
                        .config;
                }
            }
        }
    }
    Ok(config)
}
