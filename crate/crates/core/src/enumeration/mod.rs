//! Fixed and colored polyomino / polycube enumeration.

mod redelmeier;
mod shape;

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::lattice::{Cell, Dim};
use crate::magnet::Catalog;
use redelmeier::{Collector, Counter, Lattice, Palette, Run};

pub use shape::{
    bond_graph, canonicalize, is_magnetically_connected, shape_to_json, shapes_from_json,
    shapes_to_json, ColoredShape, ShapeCell,
};

/// Limits and parallelism for a counting call.
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub budget: Budget,
    pub workers: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { budget: Budget::default(), workers: default_workers() }
    }
}

impl EnumOptions {
    pub fn serial() -> Self {
        EnumOptions { budget: Budget::default(), workers: 1 }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Multiset of available cube types.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Supply {
    counts: Vec<(String, u32)>,
}

impl Supply {
    pub fn new<S: Into<String>>(counts: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let mut merged: Vec<(String, u32)> = Vec::new();
        for (name, count) in counts {
            let name = name.into();
            match merged.iter_mut().find(|(n, _)| *n == name) {
                Some(entry) => entry.1 += count,
                None => merged.push((name, count)),
            }
        }
        let supply = Supply { counts: merged };
        if supply.total() == 0 {
            return Err(Error::InvalidInput("supply must contain at least one cube".into()));
        }
        Ok(supply)
    }

    /// Parses `cyan=1,magenta=3`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut counts = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, count) = part.split_once('=').ok_or_else(|| {
                Error::InvalidInput(format!("supply entry {part:?} is not name=count"))
            })?;
            let count: u32 = count.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("supply entry {part:?} has a bad count"))
            })?;
            counts.push((name.trim().to_owned(), count));
        }
        Supply::new(counts)
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().map(|(_, c)| c).sum()
    }

    pub fn count(&self, name: &str) -> u32 {
        self.counts.iter().find(|(n, _)| n == name).map_or(0, |(_, c)| *c)
    }

    pub fn entries(&self) -> &[(String, u32)] {
        &self.counts
    }

    /// True when `self` fits inside `other` componentwise.
    pub fn is_subset_of(&self, other: &Supply) -> bool {
        self.counts.iter().all(|(n, c)| other.count(n) >= *c)
    }

    /// 3D when any supplied type carries top/under magnets, else 2D.
    pub fn natural_dim(&self, catalog: &Catalog) -> Result<Dim> {
        for (name, count) in &self.counts {
            if *count > 0 && !catalog.lookup(name)?.planar {
                return Ok(Dim::Three);
            }
        }
        Ok(Dim::Two)
    }

    /// Supplied types in catalog order, paired with their counts.
    fn resolve<'c>(&self, catalog: &'c Catalog) -> Result<Vec<(&'c str, u32)>> {
        for (name, _) in &self.counts {
            catalog.lookup(name)?;
        }
        Ok(catalog
            .entries()
            .iter()
            .filter_map(|t| {
                let c = self.count(&t.name);
                (c > 0).then_some((t.name.as_str(), c))
            })
            .collect())
    }
}

impl fmt::Display for Supply {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|(n, c)| format!("{n}={c}")).collect();
        f.write_str(&parts.join(","))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("shape size must be at least 1".into()));
    }
    Ok(())
}

/// Fixed shape counts `A_1..=A_n` (index 0 of the result is size 1).
pub fn count_fixed(dim: Dim, n: usize, opts: &EnumOptions) -> Result<Vec<u128>> {
    check_size(n)?;
    let lattice = Lattice::new(dim, n);
    let meter = Meter::new(opts.budget);
    let run = Run { lattice: &lattice, palette: None, target: n, meter: &meter, workers: opts.workers };
    let (_, sizes) = run.execute::<Counter>()?;
    Ok(sizes[1..].to_vec())
}

pub fn count_fixed_polyominoes(n: usize, opts: &EnumOptions) -> Result<u128> {
    Ok(*count_fixed(Dim::Two, n, opts)?.last().expect("n >= 1"))
}

pub fn count_fixed_polycubes(n: usize, opts: &EnumOptions) -> Result<u128> {
    Ok(*count_fixed(Dim::Three, n, opts)?.last().expect("n >= 1"))
}

struct ColoredSetup<'c> {
    names: Vec<&'c str>,
    palette: Palette,
    lattice: Lattice,
}

fn colored_setup<'c>(
    supply: &Supply,
    catalog: &'c Catalog,
    n: usize,
    dim: Dim,
) -> Result<ColoredSetup<'c>> {
    check_size(n)?;
    let resolved = supply.resolve(catalog)?;
    if n as u64 > u64::from(supply.total()) {
        return Err(Error::InvalidInput(format!(
            "shape size {n} exceeds supply total {}",
            supply.total()
        )));
    }
    let names: Vec<&str> = resolved.iter().map(|(name, _)| *name).collect();
    let arrangements = names
        .iter()
        .map(|name| catalog.arrangement(name))
        .collect::<Result<Vec<_>>>()?;
    let counts = resolved.iter().map(|(_, c)| *c).collect();
    Ok(ColoredSetup { names, palette: Palette::new(&arrangements, counts), lattice: Lattice::new(dim, n) })
}

/// Every canonical colored shape of exactly `n` cubes buildable from
/// `supply`: no repelling contacts, one bonded component. Sorted.
pub fn enumerate_colored(
    supply: &Supply,
    catalog: &Catalog,
    n: usize,
    dim: Dim,
    opts: &EnumOptions,
) -> Result<Vec<ColoredShape>> {
    let setup = colored_setup(supply, catalog, n, dim)?;
    let meter = Meter::new(opts.budget);
    let run = Run {
        lattice: &setup.lattice,
        palette: Some(&setup.palette),
        target: n,
        meter: &meter,
        workers: opts.workers,
    };
    let (collector, _) = run.execute::<Collector>()?;
    let mut shapes: Vec<ColoredShape> = collector
        .shapes
        .into_iter()
        .map(|cells| {
            ColoredShape::from_canonical(
                cells
                    .into_iter()
                    .map(|(cell, color)| ShapeCell::new(cell, setup.names[color as usize]))
                    .collect(),
            )
        })
        .collect();
    shapes.sort();
    Ok(shapes)
}

/// Same filter as [`enumerate_colored`], counting without materializing.
pub fn count_colored(
    supply: &Supply,
    catalog: &Catalog,
    n: usize,
    dim: Dim,
    opts: &EnumOptions,
) -> Result<u128> {
    let setup = colored_setup(supply, catalog, n, dim)?;
    let meter = Meter::new(opts.budget);
    let run = Run {
        lattice: &setup.lattice,
        palette: Some(&setup.palette),
        target: n,
        meter: &meter,
        workers: opts.workers,
    };
    Ok(run.execute::<Counter>()?.0.total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: usize,
    /// Fixed shape count `A_n`.
    pub fixed: u128,
    /// `colored[i]`: shapes with `i` cubes of type b and `n - i` of type a.
    pub colored: Vec<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub type_a: String,
    pub type_b: String,
    pub dim: u8,
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn row(&self, n: usize) -> Option<&CountRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// `n,i,C` rows followed by `n,A` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,i,C\n");
        for row in &self.rows {
            for (i, c) in row.colored.iter().enumerate() {
                writeln!(out, "{},{},{}", row.n, i, c).unwrap();
            }
        }
        out.push_str("n,A\n");
        for row in &self.rows {
            writeln!(out, "{},{}", row.n, row.fixed).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        // u128 values are emitted as decimal strings to stay exact in JSON readers.
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "n": r.n,
                    "A": r.fixed.to_string(),
                    "C": r.colored.iter().map(u128::to_string).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "type_a": self.type_a,
            "type_b": self.type_b,
            "dim": self.dim,
            "rows": rows,
        }))
        .expect("table serializes")
    }
}

/// `C_{n,i}` for `n <= n_max`, `i` cubes of `type_b` and `n - i` of `type_a`.
pub fn colored_count_table(
    n_max: usize,
    type_a: &str,
    type_b: &str,
    catalog: &Catalog,
    dim: Dim,
    opts: &EnumOptions,
) -> Result<CountTable> {
    check_size(n_max)?;
    catalog.lookup(type_a)?;
    catalog.lookup(type_b)?;
    if type_a == type_b {
        return Err(Error::InvalidInput("table needs two distinct types".into()));
    }
    let fixed = count_fixed(dim, n_max, opts)?;
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut colored = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut parts = Vec::new();
            if n > i {
                parts.push((type_a, (n - i) as u32));
            }
            if i > 0 {
                parts.push((type_b, i as u32));
            }
            let supply = Supply::new(parts)?;
            colored.push(count_colored(&supply, catalog, n, dim, opts)?);
        }
        rows.push(CountRow { n, fixed: fixed[n - 1], colored });
    }
    Ok(CountTable { type_a: type_a.to_owned(), type_b: type_b.to_owned(), dim: dim.number(), rows })
}

/// Cells of a shape as bare lattice points.
pub fn shape_cells(shape: &ColoredShape) -> Vec<Cell> {
    shape.cells().iter().map(|c| c.cell).collect()
}
