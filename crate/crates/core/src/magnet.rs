//! Magnet arrangements on cube faces.
//!
//! A cube's net moment runs from its left face (south) to its right face
//! (north). Front/back and top/under pairs always carry the same polarity,
//! so an [`Arrangement`] stores each pair once.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Dir;

/// Outward pole of a cube face. `None` means the face carries no magnet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    /// Ordered first so canonical arrangement order is `S < 0 < N`.
    #[serde(rename = "S")]
    South,
    #[serde(rename = "0")]
    None,
    #[serde(rename = "N")]
    North,
}

impl Polarity {
    pub const ALL: [Polarity; 3] = [Polarity::South, Polarity::None, Polarity::North];

    pub fn opposite(self) -> Polarity {
        match self {
            Polarity::South => Polarity::North,
            Polarity::North => Polarity::South,
            Polarity::None => Polarity::None,
        }
    }

    pub fn is_magnet(self) -> bool {
        self != Polarity::None
    }

    pub fn token(self) -> &'static str {
        match self {
            Polarity::South => "S",
            Polarity::None => "0",
            Polarity::North => "N",
        }
    }

    pub fn from_token(token: &str) -> Option<Polarity> {
        match token {
            "S" => Some(Polarity::South),
            "0" => Some(Polarity::None),
            "N" => Some(Polarity::North),
            _ => None,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Polarity assignment `{L, F/B, T/U, R}`.
///
/// Field order matches the canonical sort key, so the derived `Ord` is the
/// lexicographic order used by [`enumerate_arrangements`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrangement {
    pub left: Polarity,
    pub front_back: Polarity,
    pub top_under: Polarity,
    pub right: Polarity,
}

impl Arrangement {
    pub const fn new(
        left: Polarity,
        front_back: Polarity,
        top_under: Polarity,
        right: Polarity,
    ) -> Self {
        Arrangement { left, front_back, top_under, right }
    }

    /// Parses the `{L,FB,TU,R}` shorthand, e.g. `"S,N,0,N"` or `"{S,N,0,N}"`.
    pub fn parse(text: &str) -> Result<Arrangement> {
        let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}');
        let tokens: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if tokens.len() != 4 {
            return Err(Error::InvalidArrangement(format!(
                "expected four polarities, got {text:?}"
            )));
        }
        let mut poles = [Polarity::None; 4];
        for (slot, token) in poles.iter_mut().zip(&tokens) {
            *slot = Polarity::from_token(token).ok_or_else(|| {
                Error::InvalidArrangement(format!("bad polarity token {token:?} in {text:?}"))
            })?;
        }
        Ok(Arrangement::new(poles[0], poles[1], poles[2], poles[3]))
    }

    /// Outward polarity of the face pointing along `dir`, with the moment
    /// along `+y`: left faces `-y`, right faces `+y`, front/back face `±x`
    /// and top/under face `±z`.
    pub fn face(&self, dir: Dir) -> Polarity {
        match dir {
            Dir::NegY => self.left,
            Dir::PosY => self.right,
            Dir::PosX | Dir::NegX => self.front_back,
            Dir::PosZ | Dir::NegZ => self.top_under,
        }
    }

    pub fn is_planar(&self) -> bool {
        self.top_under == Polarity::None
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{},{}}}", self.left, self.front_back, self.top_under, self.right)
    }
}

/// Number of physical magnets; paired faces count twice.
pub fn magnet_count(arr: &Arrangement) -> u32 {
    let single = |p: Polarity| u32::from(p.is_magnet());
    single(arr.left) + 2 * single(arr.front_back) + 2 * single(arr.top_under) + single(arr.right)
}

pub fn validate_arrangement(arr: &Arrangement) -> bool {
    let left_ok = matches!(arr.left, Polarity::South | Polarity::None);
    let right_ok = matches!(arr.right, Polarity::None | Polarity::North);
    let has_moment = arr.left.is_magnet() || arr.right.is_magnet();
    left_ok && right_ok && has_moment
}

/// The raw `2·3·3·2` product of allowed per-face choices, before removing
/// arrangements without a net moment.
pub fn arrangement_universe() -> Vec<Arrangement> {
    let mut out = Vec::with_capacity(36);
    for left in [Polarity::South, Polarity::None] {
        for front_back in Polarity::ALL {
            for top_under in Polarity::ALL {
                for right in [Polarity::None, Polarity::North] {
                    out.push(Arrangement::new(left, front_back, top_under, right));
                }
            }
        }
    }
    out
}

/// Every valid arrangement with at least `min_magnets` magnets, in
/// lexicographic `(L, F/B, T/U, R)` order with `S < 0 < N`.
pub fn enumerate_arrangements(planar: bool, min_magnets: u32) -> Vec<Arrangement> {
    let mut out: Vec<Arrangement> = arrangement_universe()
        .into_iter()
        .filter(validate_arrangement)
        .filter(|a| !planar || a.is_planar())
        .filter(|a| magnet_count(a) >= min_magnets)
        .collect();
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Interaction {
    Bond,
    Neutral,
    Repel,
}

/// Classifies two touching faces by their outward poles.
pub fn face_interaction(outward_a: Polarity, outward_b: Polarity) -> Interaction {
    match (outward_a, outward_b) {
        (Polarity::None, _) | (_, Polarity::None) => Interaction::Neutral,
        (a, b) if a == b => Interaction::Repel,
        _ => Interaction::Bond,
    }
}

/// Interaction between cube `a` and cube `b` when `b` sits next to `a`
/// in direction `dir` (both with moments along `+y`).
pub fn contact(a: &Arrangement, b: &Arrangement, dir: Dir) -> Interaction {
    face_interaction(a.face(dir), b.face(dir.opposite()))
}

/// A named ("colored") arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeType {
    pub name: String,
    pub arrangement: Arrangement,
    /// Planar types carry no top/under magnets.
    pub planar: bool,
}

impl CubeType {
    pub fn new(name: impl Into<String>, arrangement: Arrangement, planar: bool) -> Result<Self> {
        let cube = CubeType { name: name.into(), arrangement, planar };
        cube.check()?;
        Ok(cube)
    }

    fn check(&self) -> Result<()> {
        if !validate_arrangement(&self.arrangement) {
            return Err(Error::InvalidCatalog(format!(
                "type {:?}: arrangement {} violates the magnet rules",
                self.name, self.arrangement
            )));
        }
        if self.planar && !self.arrangement.is_planar() {
            return Err(Error::InvalidCatalog(format!(
                "type {:?}: planar type must have T/U = 0, got {}",
                self.name, self.arrangement
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    types: Vec<CatalogEntry>,
}

#[derive(Serialize, Deserialize)]
struct CatalogEntry {
    name: String,
    planar: bool,
    #[serde(rename = "L")]
    left: String,
    #[serde(rename = "FB")]
    front_back: String,
    #[serde(rename = "TU")]
    top_under: String,
    #[serde(rename = "R")]
    right: String,
}

const DEFAULT_CATALOG_JSON: &str = include_str!("../catalog/default.json");

/// Ordered list of cube types with unique names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CubeType>,
}

impl Catalog {
    pub fn new(entries: Vec<CubeType>) -> Result<Self> {
        for (i, entry) in entries.iter().enumerate() {
            entry.check()?;
            if entries[..i].iter().any(|e| e.name == entry.name) {
                return Err(Error::InvalidCatalog(format!(
                    "duplicate type name {:?}",
                    entry.name
                )));
            }
        }
        Ok(Catalog { entries })
    }

    /// The shipped ten-color catalog (four planar, six 3D types).
    pub fn default_catalog() -> Catalog {
        Catalog::from_json(DEFAULT_CATALOG_JSON).expect("bundled catalog is valid")
    }

    pub fn default_json() -> &'static str {
        DEFAULT_CATALOG_JSON
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        let file: CatalogFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidCatalog(format!("malformed catalog: {e}")))?;
        let mut entries = Vec::with_capacity(file.types.len());
        for entry in file.types {
            let pole = |token: &str, field: &str| {
                Polarity::from_token(token).ok_or_else(|| {
                    Error::InvalidCatalog(format!(
                        "type {:?}: field {field} has bad polarity token {token:?}",
                        entry.name
                    ))
                })
            };
            let arrangement = Arrangement::new(
                pole(&entry.left, "L")?,
                pole(&entry.front_back, "FB")?,
                pole(&entry.top_under, "TU")?,
                pole(&entry.right, "R")?,
            );
            entries.push(CubeType { name: entry.name, arrangement, planar: entry.planar });
        }
        Catalog::new(entries)
    }

    pub fn to_json(&self) -> String {
        let file = CatalogFile {
            types: self
                .entries
                .iter()
                .map(|t| CatalogEntry {
                    name: t.name.clone(),
                    planar: t.planar,
                    left: t.arrangement.left.token().to_owned(),
                    front_back: t.arrangement.front_back.token().to_owned(),
                    top_under: t.arrangement.top_under.token().to_owned(),
                    right: t.arrangement.right.token().to_owned(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("catalog serializes")
    }

    pub fn entries(&self) -> &[CubeType] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CubeType> {
        self.entries.iter().find(|t| t.name == name)
    }

    pub fn lookup(&self, name: &str) -> Result<&CubeType> {
        self.get(name).ok_or_else(|| Error::UnknownColor(name.to_owned()))
    }

    pub fn arrangement(&self, name: &str) -> Result<Arrangement> {
        self.lookup(name).map(|t| t.arrangement)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Applied flux density in tesla.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldVector {
    pub bx: f64,
    pub by: f64,
    pub bz: f64,
}

impl FieldVector {
    pub fn norm(&self) -> f64 {
        (self.bx * self.bx + self.by * self.by + self.bz * self.bz).sqrt()
    }
}

/// Field components for amplitude `amplitude` (T), pitch `alpha` and yaw
/// `theta` (radians).
pub fn field_vector(amplitude: f64, alpha: f64, theta: f64) -> FieldVector {
    let (sin_a, cos_a) = alpha.sin_cos();
    let (sin_t, cos_t) = theta.sin_cos();
    FieldVector {
        bx: amplitude * cos_a * cos_t,
        by: amplitude * cos_a * sin_t,
        bz: amplitude * sin_a,
    }
}
