//! Repeated planning from random scrambled starts.
//!
//! Every (trial, restart) pair owns an independent ChaCha8 stream whose seed
//! is `splitmix64(splitmix64(splitmix64(master) ^ trial) ^ restart)`, so
//! trials can run on any number of workers and still give identical
//! statistics.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::enumeration::{default_workers, enumerate_colored, ColoredShape, EnumOptions, Supply};
use crate::error::{Error, Result};
use crate::lattice::Dim;
use crate::magnet::Catalog;
use crate::planner::{bfs_reachable, Configuration, Model, PlanOptions, Workspace};

#[derive(Clone, Debug)]
pub struct TrialConfig {
    pub supply: Supply,
    pub workspace: Workspace,
    pub trials: u32,
    pub restarts_per_trial: u32,
    pub master_seed: u64,
    /// Limit for each planner run.
    pub budget: Budget,
    pub workers: usize,
}

impl TrialConfig {
    pub fn new(supply: Supply, workspace: Workspace, trials: u32, restarts_per_trial: u32, master_seed: u64) -> Self {
        TrialConfig {
            supply,
            workspace,
            trials,
            restarts_per_trial,
            master_seed,
            budget: Budget::default(),
            workers: default_workers(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.restarts_per_trial == 0 {
            return Err(Error::InvalidInput("trials and restarts must both be at least 1".into()));
        }
        if self.supply.total() == 0 {
            return Err(Error::InvalidInput("supply is empty".into()));
        }
        Ok(())
    }
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn start_seed(master: u64, trial: u32, restart: u32) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ u64::from(trial)) ^ u64::from(restart))
}

pub fn start_rng(master: u64, trial: u32, restart: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(start_seed(master, trial, restart))
}

const WHOLE_DRAWS: u32 = 10_000;

/// Uniformly random cells for the supply with no two cubes face-adjacent.
///
/// Whole placements are drawn and rejected first. Crowded workspaces where
/// that rarely succeeds fall back to cell-by-cell sampling with restarts.
pub fn random_initial<R: Rng + ?Sized>(
    model: &Model<'_>,
    supply: &Supply,
    rng: &mut R,
) -> Result<Configuration> {
    let ws = model.workspace();
    let colors: Vec<&str> = supply
        .entries()
        .iter()
        .flat_map(|(name, c)| std::iter::repeat_n(name.as_str(), *c as usize))
        .collect();
    let n = colors.len();
    if n == 0 {
        return Err(Error::InvalidInput("supply is empty".into()));
    }
    for name in &colors {
        model.color_index(name)?;
    }
    // A grid's largest independent set is one checkerboard color class.
    if n > ws.cells().div_ceil(2) {
        return Err(Error::Infeasible(format!(
            "{n} pairwise non-adjacent cubes do not fit in {}x{}",
            ws.width, ws.height
        )));
    }
    let all: Vec<(i32, i32)> =
        (0..ws.height as i32).flat_map(|y| (0..ws.width as i32).map(move |x| (x, y))).collect();
    let apart = |cells: &[(i32, i32)], (x, y): (i32, i32)| {
        cells.iter().all(|&(a, b)| (a - x).abs() + (b - y).abs() > 1)
    };

    let mut cells = Vec::with_capacity(n);
    for _ in 0..WHOLE_DRAWS {
        cells.clear();
        for p in all.choose_multiple(rng, n) {
            if !apart(&cells, *p) {
                break;
            }
            cells.push(*p);
        }
        if cells.len() == n {
            return place(model, &cells, &colors);
        }
    }
    for _ in 0..WHOLE_DRAWS {
        cells.clear();
        while cells.len() < n {
            let open: Vec<(i32, i32)> = all.iter().copied().filter(|&p| apart(&cells, p)).collect();
            let Some(p) = open.choose(rng) else { break };
            cells.push(*p);
        }
        if cells.len() == n {
            return place(model, &cells, &colors);
        }
    }
    Err(Error::Infeasible(format!(
        "no separated placement of {n} cubes found in {}x{}",
        ws.width, ws.height
    )))
}

fn place(model: &Model<'_>, cells: &[(i32, i32)], colors: &[&str]) -> Result<Configuration> {
    let cubes: Vec<(i32, i32, &str)> =
        cells.iter().zip(colors).map(|(&(x, y), &c)| (x, y, c)).collect();
    model.configuration(&cubes)
}

/// Outcome of one trial: what each restart reached and the running union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u32,
    /// Shapes reachable from each start.
    pub reached: Vec<u32>,
    /// Distinct shapes reachable from the first `r + 1` starts.
    pub cumulative: Vec<u32>,
}

/// Per-shape raw counts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeRecord {
    /// Starts from which the shape was reachable.
    pub reachable_starts: u64,
    /// For each trial that reached the shape, the fewest translation steps
    /// over its restarts, in trial order.
    pub trial_min_steps: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub min: u32,
    pub median: f64,
    pub mean: f64,
    pub max: u32,
}

impl Summary {
    pub fn of(values: &[u32]) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_unstable();
        let mid = v.len() / 2;
        let median = if v.len() % 2 == 1 {
            f64::from(v[mid])
        } else {
            (f64::from(v[mid - 1]) + f64::from(v[mid])) / 2.0
        };
        let mean = v.iter().map(|&x| f64::from(x)).sum::<f64>() / v.len() as f64;
        Some(Summary { min: v[0], median, mean, max: v[v.len() - 1] })
    }
}

/// Everything measured by [`run_trials`]. Only raw integers are stored;
/// rates and summaries are derived on demand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateStats {
    pub trials: u32,
    pub restarts_per_trial: u32,
    /// Size of the enumerated valid set for the supply.
    pub total_shapes: u32,
    /// Trials abandoned because a planner run hit its budget.
    pub censored: Vec<u32>,
    /// Completed trials in trial order.
    pub records: Vec<TrialRecord>,
    /// Keyed by shape id; every enumerated shape has an entry.
    pub shapes: BTreeMap<String, ShapeRecord>,
}

impl AggregateStats {
    pub fn completed(&self) -> usize {
        self.records.len()
    }

    /// Starts planned across completed trials.
    pub fn sampled_starts(&self) -> u64 {
        self.records.iter().map(|r| r.reached.len() as u64).sum()
    }

    pub fn frequency(&self, id: &str) -> f64 {
        let starts = self.sampled_starts();
        match self.shapes.get(id) {
            Some(s) if starts > 0 => s.reachable_starts as f64 / starts as f64,
            _ => 0.0,
        }
    }

    pub fn steps(&self, id: &str) -> Option<Summary> {
        self.shapes.get(id).and_then(|s| Summary::of(&s.trial_min_steps))
    }

    pub fn first_start_counts(&self) -> Vec<u32> {
        self.records.iter().filter_map(|r| r.reached.first().copied()).collect()
    }

    pub fn first_start_median(&self) -> Option<f64> {
        Summary::of(&self.first_start_counts()).map(|s| s.median)
    }

    /// Reachable-count histogram over every start.
    pub fn start_count_histogram(&self) -> BTreeMap<u32, u64> {
        let mut hist = BTreeMap::new();
        for c in self.records.iter().flat_map(|r| &r.reached) {
            *hist.entry(*c).or_insert(0) += 1;
        }
        hist
    }

    /// Mean distinct shapes after each restart.
    pub fn mean_cumulative(&self) -> Vec<f64> {
        let k = self.restarts_per_trial as usize;
        if self.records.is_empty() {
            return vec![];
        }
        (0..k)
            .map(|r| {
                let sum: u64 = self.records.iter().map(|t| u64::from(t.cumulative[r])).sum();
                sum as f64 / self.records.len() as f64
            })
            .collect()
    }

    /// Fraction of completed trials whose restarts together reach every shape.
    pub fn full_coverage_fraction(&self) -> f64 {
        if self.records.is_empty() {
            return 0.0;
        }
        let full = self
            .records
            .iter()
            .filter(|r| r.cumulative.last() == Some(&self.total_shapes))
            .count();
        full as f64 / self.records.len() as f64
    }
}

struct TrialRun {
    record: TrialRecord,
    /// Per reached shape: fewest translation steps over the restarts.
    best: BTreeMap<String, (u32, u32)>,
}

fn run_trial(model: &Model<'_>, cfg: &TrialConfig, trial: u32) -> Result<TrialRun> {
    let opts = PlanOptions { budget: cfg.budget, ..Default::default() };
    let mut seen = HashSet::new();
    let mut record = TrialRecord { trial, reached: vec![], cumulative: vec![] };
    let mut best: BTreeMap<String, (u32, u32)> = BTreeMap::new();
    for restart in 0..cfg.restarts_per_trial {
        let mut rng = start_rng(cfg.master_seed, trial, restart);
        let start = random_initial(model, &cfg.supply, &mut rng)?;
        let plan = bfs_reachable(model, &start, &opts)?;
        record.reached.push(plan.len() as u32);
        for (id, entry) in &plan.entries {
            seen.insert(id.clone());
            let slot = best.entry(id.clone()).or_insert((u32::MAX, 0));
            slot.0 = slot.0.min(entry.translation_steps);
            slot.1 += 1;
        }
        record.cumulative.push(seen.len() as u32);
    }
    Ok(TrialRun { record, best })
}

/// Plans from `trials × restarts_per_trial` seeded random starts.
///
/// A trial whose planner run exceeds the budget is listed as censored and
/// contributes nothing else.
pub fn run_trials(cfg: &TrialConfig, catalog: &Catalog) -> Result<AggregateStats> {
    cfg.validate()?;
    let n = cfg.supply.total() as usize;
    let valid: Vec<ColoredShape> =
        enumerate_colored(&cfg.supply, catalog, n, Dim::Two, &EnumOptions::serial())?;
    let model = Model::new(catalog, cfg.workspace);
    // Fail fast on infeasible supplies rather than once per trial.
    random_initial(&model, &cfg.supply, &mut start_rng(cfg.master_seed, 0, 0))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
    let runs: Vec<Result<TrialRun>> =
        pool.install(|| (0..cfg.trials).into_par_iter().map(|t| run_trial(&model, cfg, t)).collect());

    let mut stats = AggregateStats {
        trials: cfg.trials,
        restarts_per_trial: cfg.restarts_per_trial,
        total_shapes: valid.len() as u32,
        shapes: valid.iter().map(|s| (s.id(), ShapeRecord::default())).collect(),
        ..Default::default()
    };
    for (trial, run) in (0..cfg.trials).zip(runs) {
        let run = match run {
            Ok(run) => run,
            Err(e) if e.is_budget() => {
                stats.censored.push(trial);
                continue;
            }
            Err(e) => return Err(e),
        };
        for (id, (steps, starts)) in run.best {
            let shape = stats.shapes.get_mut(&id).ok_or_else(|| {
                Error::Integrity(format!("planner assembled {id}, which is not a valid shape"))
            })?;
            shape.reachable_starts += u64::from(starts);
            shape.trial_min_steps.push(steps);
        }
        stats.records.push(run.record);
    }
    Ok(stats)
}

/// Writes `stats` as `csv` (one row per shape) or `json` (raw counts plus
/// derived summaries).
pub fn export_stats(stats: &AggregateStats, format: &str) -> Result<String> {
    match format {
        "csv" => Ok(stats_csv(stats)),
        "json" => Ok(stats_json(stats)),
        other => Err(Error::InvalidInput(format!("unknown format {other:?}; expected csv or json"))),
    }
}

fn stats_csv(stats: &AggregateStats) -> String {
    let mut out = String::from("id,frequency,steps_min,steps_median,steps_mean,steps_max\n");
    for id in stats.shapes.keys() {
        let freq = stats.frequency(id);
        match stats.steps(id) {
            Some(s) => out.push_str(&format!(
                "\"{id}\",{freq:.6},{},{:.6},{:.6},{}\n",
                s.min, s.median, s.mean, s.max
            )),
            None => out.push_str(&format!("\"{id}\",{freq:.6},,,,\n")),
        }
    }
    out
}

fn stats_json(stats: &AggregateStats) -> String {
    #[derive(Serialize)]
    struct ShapeSummary {
        frequency: f64,
        steps: Option<Summary>,
    }
    #[derive(Serialize)]
    struct Derived {
        completed_trials: usize,
        sampled_starts: u64,
        first_start_median: Option<f64>,
        full_coverage_fraction: f64,
        mean_cumulative: Vec<f64>,
        start_count_histogram: BTreeMap<u32, u64>,
        shapes: BTreeMap<String, ShapeSummary>,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        raw: &'a AggregateStats,
        summary: Derived,
    }
    let summary = Derived {
        completed_trials: stats.completed(),
        sampled_starts: stats.sampled_starts(),
        first_start_median: stats.first_start_median(),
        full_coverage_fraction: stats.full_coverage_fraction(),
        mean_cumulative: stats.mean_cumulative(),
        start_count_histogram: stats.start_count_histogram(),
        shapes: stats
            .shapes
            .keys()
            .map(|id| (id.clone(), ShapeSummary { frequency: stats.frequency(id), steps: stats.steps(id) }))
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&Out { raw: stats, summary }).expect("stats serialize");
    text.push('\n');
    text
}

/// Reads the JSON written by [`export_stats`]; derived fields are ignored.
pub fn stats_from_json(text: &str) -> Result<AggregateStats> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("stats JSON: {e}")))
}

/// Tetromino families, named as in the usual I/L/T/S/O convention.
/// Mirror images share a family (J is L, Z is S).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeFamily {
    I,
    L,
    T,
    S,
    O,
}

/// Family of a planar shape; straight lines of any length are `I`, other
/// families are defined for four cells only.
pub fn shape_family(shape: &ColoredShape) -> Option<ShapeFamily> {
    if !shape.is_planar() || shape.is_empty() {
        return None;
    }
    let mut cells: Vec<(i32, i32)> = shape.cells().iter().map(|c| (c.cell.x, c.cell.y)).collect();
    let x0 = cells.iter().map(|c| c.0).min()?;
    let y0 = cells.iter().map(|c| c.1).min()?;
    for c in &mut cells {
        *c = (c.0 - x0, c.1 - y0);
    }
    let w = cells.iter().map(|c| c.0).max()? + 1;
    let h = cells.iter().map(|c| c.1).max()? + 1;
    if w == 1 || h == 1 {
        return Some(ShapeFamily::I);
    }
    if cells.len() != 4 {
        return None;
    }
    if w == 2 && h == 2 {
        return Some(ShapeFamily::O);
    }
    let degree = |&(x, y): &(i32, i32)| {
        cells.iter().filter(|&&(a, b)| (a - x).abs() + (b - y).abs() == 1).count()
    };
    if cells.iter().any(|c| degree(c) == 3) {
        return Some(ShapeFamily::T);
    }
    // L keeps three cells on one line along the long side; S splits 2 + 2.
    let long_line = if w > h {
        (0..h).map(|y| cells.iter().filter(|c| c.1 == y).count()).max()
    } else {
        (0..w).map(|x| cells.iter().filter(|c| c.0 == x).count()).max()
    };
    match long_line {
        Some(3) => Some(ShapeFamily::L),
        _ => Some(ShapeFamily::S),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{canonicalize, ShapeCell};
    use crate::lattice::Cell;

    fn tetromino(cells: [(i32, i32); 4]) -> ColoredShape {
        canonicalize(cells.map(|(x, y)| ShapeCell::new(Cell::planar(x, y), "magenta"))).unwrap()
    }

    #[test]
    fn families() {
        assert_eq!(shape_family(&tetromino([(0, 0), (0, 1), (0, 2), (0, 3)])), Some(ShapeFamily::I));
        assert_eq!(shape_family(&tetromino([(0, 0), (1, 0), (2, 0), (3, 0)])), Some(ShapeFamily::I));
        assert_eq!(shape_family(&tetromino([(0, 0), (1, 0), (0, 1), (1, 1)])), Some(ShapeFamily::O));
        assert_eq!(shape_family(&tetromino([(0, 0), (0, 1), (0, 2), (1, 0)])), Some(ShapeFamily::L));
        assert_eq!(shape_family(&tetromino([(1, 0), (1, 1), (1, 2), (0, 2)])), Some(ShapeFamily::L));
        assert_eq!(shape_family(&tetromino([(0, 0), (1, 0), (2, 0), (1, 1)])), Some(ShapeFamily::T));
        assert_eq!(shape_family(&tetromino([(0, 0), (0, 1), (1, 1), (1, 2)])), Some(ShapeFamily::S));
        assert_eq!(shape_family(&tetromino([(0, 1), (1, 1), (1, 0), (2, 0)])), Some(ShapeFamily::S));
    }

    #[test]
    fn seeds_differ_by_trial_and_restart() {
        let a = start_seed(42, 0, 0);
        assert_ne!(a, start_seed(42, 1, 0));
        assert_ne!(a, start_seed(42, 0, 1));
        assert_ne!(start_seed(42, 1, 0), start_seed(42, 0, 1));
        assert_eq!(a, start_seed(42, 0, 0));
    }

    #[test]
    fn initial_placements_are_separated() {
        let cat = Catalog::default_catalog();
        let model = Model::new(&cat, Workspace::default());
        let supply = Supply::parse("cyan=1,magenta=3").unwrap();
        for t in 0..200 {
            let c = random_initial(&model, &supply, &mut start_rng(7, t, 0)).unwrap();
            assert_eq!(c.component_count(), 4);
            let cubes = c.cubes();
            for i in 0..4 {
                for j in (i + 1)..4 {
                    assert!((cubes[i].x - cubes[j].x).abs() + (cubes[i].y - cubes[j].y).abs() > 1);
                }
            }
        }
    }

    #[test]
    fn crowded_and_infeasible_workspaces() {
        let cat = Catalog::default_catalog();
        let model = Model::new(&cat, Workspace::new(3, 3).unwrap());
        let five = Supply::parse("magenta=5").unwrap();
        let c = random_initial(&model, &five, &mut start_rng(1, 0, 0)).unwrap();
        assert_eq!(c.component_count(), 5);
        let six = Supply::parse("magenta=6").unwrap();
        assert!(matches!(random_initial(&model, &six, &mut start_rng(1, 0, 0)), Err(Error::Infeasible(_))));
    }

    #[test]
    fn single_cube_trials() {
        let cat = Catalog::default_catalog();
        let mut cfg =
            TrialConfig::new(Supply::parse("magenta=1").unwrap(), Workspace::default(), 5, 3, 9);
        cfg.workers = 1;
        let stats = run_trials(&cfg, &cat).unwrap();
        assert_eq!(stats.total_shapes, 1);
        assert!(stats.records.iter().all(|r| r.reached == vec![1; 3]));
        let s = stats.steps("0,0:magenta").unwrap();
        assert_eq!((s.min, s.max), (0, 0));
        assert_eq!(stats.frequency("0,0:magenta"), 1.0);
    }

    #[test]
    fn empty_stats_export() {
        let stats = AggregateStats::default();
        assert_eq!(
            export_stats(&stats, "csv").unwrap(),
            "id,frequency,steps_min,steps_median,steps_mean,steps_max\n"
        );
        assert!(export_stats(&stats, "xml").is_err());
    }

    #[test]
    fn budget_censors_trials() {
        let cat = Catalog::default_catalog();
        let mut cfg =
            TrialConfig::new(Supply::parse("cyan=1,magenta=3").unwrap(), Workspace::default(), 3, 2, 5);
        cfg.budget = Budget::nodes(3);
        let stats = run_trials(&cfg, &cat).unwrap();
        assert_eq!(stats.censored, vec![0, 1, 2]);
        assert!(stats.records.is_empty());
    }
}
