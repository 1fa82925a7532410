//! Redelmeier's recursion over a padded lattice.
//!
//! The origin is the `(z, y, x)`-minimal cell of every generated shape;
//! only cells lexicographically at or after it are ever admitted to the
//! untried list, and each call only extends past the last chosen list
//! index. That makes every fixed polyomino (polycube) appear exactly once.
//! Colors are assigned while recursing, and a finished shape is kept only
//! if its bonded contacts join every cube.

use rayon::prelude::*;

use crate::budget::{Meter, Tally};
use crate::error::Result;
use crate::lattice::{Cell, Dim, Dir};
use crate::magnet::{contact, Arrangement, Interaction};

const EMPTY: u8 = u8::MAX;

/// Flat index space covering every cell reachable within `n` steps.
#[derive(Clone, Debug)]
pub(crate) struct Lattice {
    dim: Dim,
    radius: i32,
    side: i32,
    offsets: Vec<(Dir, isize)>,
    size: usize,
}

impl Lattice {
    pub(crate) fn new(dim: Dim, n: usize) -> Self {
        let radius = n as i32 + 1;
        let side = 2 * radius + 1;
        let layers = match dim {
            Dim::Two => 1,
            Dim::Three => side,
        };
        let offsets = dim
            .dirs()
            .iter()
            .map(|&d| {
                let (dx, dy, dz) = d.offset();
                (d, dx as isize + dy as isize * side as isize + dz as isize * (side * side) as isize)
            })
            .collect();
        Lattice { dim, radius, side, offsets, size: (side * side * layers) as usize }
    }

    fn index(&self, c: Cell) -> usize {
        let z = match self.dim {
            Dim::Two => 0,
            Dim::Three => c.z + self.radius,
        };
        ((c.x + self.radius) + (c.y + self.radius) * self.side + z * self.side * self.side) as usize
    }

    pub(crate) fn cell(&self, idx: usize) -> Cell {
        let idx = idx as i32;
        let plane = self.side * self.side;
        let z = match self.dim {
            Dim::Two => 0,
            Dim::Three => idx / plane - self.radius,
        };
        let rem = idx % plane;
        Cell::new(rem % self.side - self.radius, rem / self.side - self.radius, z)
    }

    /// True for cells that may join a shape whose minimal cell is the origin.
    fn admitted(&self, c: Cell) -> bool {
        match self.dim {
            Dim::Two => c.y > 0 || (c.y == 0 && c.x >= 0),
            Dim::Three => c.z > 0 || (c.z == 0 && c.y > 0) || (c.z == 0 && c.y == 0 && c.x >= 0),
        }
    }

    fn on_border(&self, c: Cell) -> bool {
        let edge = |v: i32| v.abs() >= self.radius;
        edge(c.x) || edge(c.y) || (self.dim == Dim::Three && edge(c.z))
    }
}

/// Color constraints for a colored enumeration.
#[derive(Clone, Debug)]
pub(crate) struct Palette {
    supply: Vec<u32>,
    /// `table[a][b][d]`: contact of `a` with `b` placed in direction `d`.
    table: Vec<Vec<[Interaction; 6]>>,
}

impl Palette {
    pub(crate) fn new(arrangements: &[Arrangement], supply: Vec<u32>) -> Self {
        let table = arrangements
            .iter()
            .map(|a| {
                arrangements
                    .iter()
                    .map(|b| Dir::ALL.map(|d| contact(a, b, d)))
                    .collect()
            })
            .collect();
        Palette { supply, table }
    }

    fn colors(&self) -> usize {
        self.supply.len()
    }
}

/// Receives each finished shape as `(grid index, color)` pairs in choice order.
pub(crate) trait Sink: Send {
    fn leaf(&mut self, lattice: &Lattice, cells: &[(u32, u8)]);
    fn merge(&mut self, other: Self);
}

#[derive(Default)]
pub(crate) struct Counter {
    pub total: u128,
}

impl Sink for Counter {
    fn leaf(&mut self, _: &Lattice, _: &[(u32, u8)]) {
        self.total += 1;
    }
    fn merge(&mut self, other: Self) {
        self.total += other.total;
    }
}

#[derive(Default)]
pub(crate) struct Collector {
    pub shapes: Vec<Vec<(Cell, u8)>>,
}

impl Sink for Collector {
    fn leaf(&mut self, lattice: &Lattice, cells: &[(u32, u8)]) {
        let mut shape: Vec<(Cell, u8)> =
            cells.iter().map(|&(i, c)| (lattice.cell(i as usize), c)).collect();
        shape.sort_by_key(|a| a.0);
        self.shapes.push(shape);
    }
    fn merge(&mut self, other: Self) {
        self.shapes.extend(other.shapes);
    }
}

/// Per-size counts of uncolored shapes, `by_size[k]` for size `k`.
pub(crate) struct SizeCounter {
    pub by_size: Vec<u128>,
}

impl SizeCounter {
    fn new(n: usize) -> Self {
        SizeCounter { by_size: vec![0; n + 1] }
    }
}

#[derive(Clone)]
struct Walker<'a> {
    lattice: &'a Lattice,
    palette: Option<&'a Palette>,
    target: usize,
    list: Vec<u32>,
    marked: Vec<bool>,
    color_at: Vec<u8>,
    chosen: Vec<(u32, u8)>,
    remaining: Vec<u32>,
    /// Scratch for the bonded-component search at leaves.
    seen: Vec<u32>,
    epoch: u32,
    stack: Vec<u32>,
}

/// A subtree root: walker state plus the list index chosen last.
struct Task<'a> {
    walker: Walker<'a>,
    last: usize,
}

impl<'a> Walker<'a> {
    fn new(lattice: &'a Lattice, palette: Option<&'a Palette>, target: usize) -> Self {
        let mut marked = vec![false; lattice.size];
        for (idx, m) in marked.iter_mut().enumerate() {
            let c = lattice.cell(idx);
            *m = !lattice.admitted(c) || lattice.on_border(c);
        }
        let origin = lattice.index(Cell::ORIGIN) as u32;
        marked[origin as usize] = true;
        Walker {
            lattice,
            palette,
            target,
            list: vec![origin],
            marked,
            color_at: vec![EMPTY; lattice.size],
            chosen: Vec::with_capacity(target),
            remaining: palette.map(|p| p.supply.clone()).unwrap_or_default(),
            seen: vec![0; lattice.size],
            epoch: 0,
            stack: Vec::with_capacity(target),
        }
    }

    fn fits(&self, cell: u32, color: u8) -> bool {
        let Some(palette) = self.palette else { return true };
        if self.remaining[color as usize] == 0 {
            return false;
        }
        let row = &palette.table[color as usize];
        self.lattice.offsets.iter().all(|&(d, off)| {
            let other = self.color_at[(cell as isize + off) as usize];
            other == EMPTY || row[other as usize][d as usize] != Interaction::Repel
        })
    }

    fn bonded_whole(&mut self) -> bool {
        let Some(palette) = self.palette else { return true };
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.seen.fill(0);
            self.epoch = 1;
        }
        let start = self.chosen[0].0;
        self.seen[start as usize] = self.epoch;
        self.stack.clear();
        self.stack.push(start);
        let mut reached = 1;
        while let Some(cell) = self.stack.pop() {
            let color = self.color_at[cell as usize] as usize;
            for &(d, off) in &self.lattice.offsets {
                let nb = (cell as isize + off) as usize;
                let other = self.color_at[nb];
                if other != EMPTY
                    && self.seen[nb] != self.epoch
                    && palette.table[color][other as usize][d as usize] == Interaction::Bond
                {
                    self.seen[nb] = self.epoch;
                    reached += 1;
                    self.stack.push(nb as u32);
                }
            }
        }
        reached == self.chosen.len()
    }

    fn colors(&self) -> u8 {
        self.palette.map_or(1, |p| p.colors() as u8)
    }

    fn place(&mut self, cell: u32, color: u8) {
        self.chosen.push((cell, color));
        if self.palette.is_some() {
            self.color_at[cell as usize] = color;
            self.remaining[color as usize] -= 1;
        }
    }

    fn unplace(&mut self) {
        let (cell, color) = self.chosen.pop().expect("placed cell");
        if self.palette.is_some() {
            self.color_at[cell as usize] = EMPTY;
            self.remaining[color as usize] += 1;
        }
    }

    fn extend(&mut self, cell: u32) -> usize {
        let old = self.list.len();
        for &(_, off) in &self.lattice.offsets {
            let nb = (cell as isize + off) as usize;
            if !self.marked[nb] {
                self.marked[nb] = true;
                self.list.push(nb as u32);
            }
        }
        old
    }

    fn shrink(&mut self, old: usize) {
        for idx in self.list.drain(old..) {
            self.marked[idx as usize] = false;
        }
    }

    /// Visits every extension of the current partial shape. `first` is the
    /// lowest list index still eligible. When `split_at` is reached, states
    /// are handed to `tasks` instead of being explored.
    fn walk<S: Sink>(
        &mut self,
        first: usize,
        sink: &mut S,
        sizes: Option<&mut Vec<u128>>,
        tally: &mut Tally<'_>,
        split: Option<(usize, &mut Vec<Task<'a>>)>,
    ) -> Result<()> {
        let mut sizes = sizes;
        let mut split = split;
        let k = self.chosen.len();
        let end = self.list.len();
        for j in first..end {
            let cell = self.list[j];
            let grows = k + 1 < self.target;
            let old = if grows { self.extend(cell) } else { self.list.len() };
            for color in 0..self.colors() {
                if !self.fits(cell, color) {
                    continue;
                }
                tally.tick()?;
                self.place(cell, color);
                if let Some(sizes) = sizes.as_deref_mut() {
                    sizes[k + 1] += 1;
                }
                if !grows {
                    if self.bonded_whole() {
                        sink.leaf(self.lattice, &self.chosen);
                    }
                } else if matches!(&split, Some((d, _)) if *d == k + 1) {
                    if let Some((_, tasks)) = split.as_mut() {
                        tasks.push(Task { walker: self.clone(), last: j });
                    }
                } else {
                    let next_split = split.as_mut().map(|(d, t)| (*d, &mut **t));
                    self.walk(j + 1, sink, sizes.as_deref_mut(), tally, next_split)?;
                }
                self.unplace();
            }
            if grows {
                self.shrink(old);
            }
        }
        Ok(())
    }
}

/// Configuration of a single enumeration run.
pub(crate) struct Run<'a> {
    pub lattice: &'a Lattice,
    pub palette: Option<&'a Palette>,
    pub target: usize,
    pub meter: &'a Meter,
    pub workers: usize,
}

impl Run<'_> {
    fn split_depth(&self) -> Option<usize> {
        if self.workers <= 1 {
            return None;
        }
        let preferred = match self.lattice.dim {
            Dim::Two => 6,
            Dim::Three => 4,
        };
        let depth = preferred.min(self.target.saturating_sub(2));
        (depth >= 1).then_some(depth)
    }

    /// Runs the recursion, returning the merged sink and, in uncolored
    /// mode, the per-size counts for every size up to the target.
    pub(crate) fn execute<S: Sink + Default>(&self) -> Result<(S, Vec<u128>)> {
        let mut sink = S::default();
        let mut sizes = SizeCounter::new(self.target);
        let track_sizes = self.palette.is_none();
        let mut root = Walker::new(self.lattice, self.palette, self.target);
        let mut tally = Tally::new(self.meter);
        let Some(depth) = self.split_depth() else {
            root.walk(0, &mut sink, track_sizes.then_some(&mut sizes.by_size), &mut tally, None)?;
            tally.flush()?;
            return Ok((sink, sizes.by_size));
        };

        let mut tasks = Vec::new();
        root.walk(
            0,
            &mut sink,
            track_sizes.then_some(&mut sizes.by_size),
            &mut tally,
            Some((depth, &mut tasks)),
        )?;
        tally.flush()?;
        drop(tally);

        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| crate::error::Error::InvalidInput(format!("worker pool: {e}")))?;
        let meter = self.meter;
        let results: Vec<Result<(S, Vec<u128>)>> = pool.install(|| {
            tasks
                .into_par_iter()
                .map(|mut task| {
                    let mut local = S::default();
                    let mut local_sizes = vec![0u128; task.walker.target + 1];
                    let mut tally = Tally::new(meter);
                    let start = task.last + 1;
                    task.walker.walk(
                        start,
                        &mut local,
                        track_sizes.then_some(&mut local_sizes),
                        &mut tally,
                        None,
                    )?;
                    tally.flush()?;
                    Ok((local, local_sizes))
                })
                .collect()
        });
        // Merge in task order so collected output does not depend on scheduling.
        for result in results {
            let (local, local_sizes) = result?;
            sink.merge(local);
            for (total, part) in sizes.by_size.iter_mut().zip(local_sizes) {
                *total += part;
            }
        }
        Ok((sink, sizes.by_size))
    }
}
