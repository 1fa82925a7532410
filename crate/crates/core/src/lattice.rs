//! Integer lattice cells and face directions.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Lattice dimensionality of an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn from_number(d: u8) -> Option<Dim> {
        match d {
            2 => Some(Dim::Two),
            3 => Some(Dim::Three),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    pub fn dirs(self) -> &'static [Dir] {
        match self {
            Dim::Two => &Dir::PLANAR,
            Dim::Three => &Dir::ALL,
        }
    }
}

/// Cell on the cubic lattice; `z = 0` for planar shapes.
///
/// Ordering is `(z, y, x)`, the canonical cell order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { x: 0, y: 0, z: 0 };

    pub const fn new(x: i32, y: i32, z: i32) -> Self {
        Cell { x, y, z }
    }

    pub const fn planar(x: i32, y: i32) -> Self {
        Cell { x, y, z: 0 }
    }

    pub fn step(self, dir: Dir) -> Cell {
        let (dx, dy, dz) = dir.offset();
        Cell { x: self.x + dx, y: self.y + dy, z: self.z + dz }
    }

    pub fn translate(self, dx: i32, dy: i32, dz: i32) -> Cell {
        Cell { x: self.x + dx, y: self.y + dy, z: self.z + dz }
    }

    pub fn is_adjacent(self, other: Cell) -> bool {
        (self.x - other.x).abs() + (self.y - other.y).abs() + (self.z - other.z).abs() == 1
    }

    /// Direction from `self` to an adjacent `other`.
    pub fn dir_to(self, other: Cell) -> Option<Dir> {
        Dir::ALL.iter().copied().find(|&d| self.step(d) == other)
    }

    fn key(self) -> (i32, i32, i32) {
        (self.z, self.y, self.x)
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// Unit direction along a lattice axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    PosX,
    NegX,
    PosY,
    NegY,
    PosZ,
    NegZ,
}

impl Dir {
    pub const ALL: [Dir; 6] = [Dir::PosX, Dir::NegX, Dir::PosY, Dir::NegY, Dir::PosZ, Dir::NegZ];
    pub const PLANAR: [Dir; 4] = [Dir::PosX, Dir::NegX, Dir::PosY, Dir::NegY];

    pub fn offset(self) -> (i32, i32, i32) {
        match self {
            Dir::PosX => (1, 0, 0),
            Dir::NegX => (-1, 0, 0),
            Dir::PosY => (0, 1, 0),
            Dir::NegY => (0, -1, 0),
            Dir::PosZ => (0, 0, 1),
            Dir::NegZ => (0, 0, -1),
        }
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::PosX => Dir::NegX,
            Dir::NegX => Dir::PosX,
            Dir::PosY => Dir::NegY,
            Dir::NegY => Dir::PosY,
            Dir::PosZ => Dir::NegZ,
            Dir::NegZ => Dir::PosZ,
        }
    }
}
