use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Cell, Dir};
use crate::magnet::{contact, Catalog, Interaction};

/// One cube of a shape: a lattice cell and the name of its cube type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShapeCell {
    #[serde(flatten)]
    pub cell: Cell,
    pub color: String,
}

impl ShapeCell {
    pub fn new(cell: Cell, color: impl Into<String>) -> Self {
        ShapeCell { cell, color: color.into() }
    }
}

/// A face-connected set of colored cells in canonical form: the
/// `(z, y, x)`-minimal cell sits at the origin and cells are sorted.
///
/// All moments point along `+y`; orientation is implied by the type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredShape {
    cells: Vec<ShapeCell>,
}

impl ColoredShape {
    pub fn cells(&self) -> &[ShapeCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_planar(&self) -> bool {
        self.cells.iter().all(|c| c.cell.z == 0)
    }

    /// Colors counted by name.
    pub fn color_counts(&self) -> HashMap<&str, u32> {
        let mut counts = HashMap::new();
        for c in &self.cells {
            *counts.entry(c.color.as_str()).or_insert(0) += 1;
        }
        counts
    }

    /// Compact textual id, e.g. `0,0:cyan;0,1:magenta` (with `z` only in 3D).
    pub fn id(&self) -> String {
        let planar = self.is_planar();
        self.cells
            .iter()
            .map(|c| {
                if planar {
                    format!("{},{}:{}", c.cell.x, c.cell.y, c.color)
                } else {
                    format!("{},{},{}:{}", c.cell.x, c.cell.y, c.cell.z, c.color)
                }
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Builds a shape from cells already in canonical form.
    pub(crate) fn from_canonical(cells: Vec<ShapeCell>) -> Self {
        debug_assert!(cells.windows(2).all(|w| w[0].cell < w[1].cell));
        debug_assert_eq!(cells.first().map(|c| c.cell), Some(Cell::ORIGIN));
        ColoredShape { cells }
    }
}

/// Translates a nonempty face-connected cell set so its `(z, y, x)`-minimal
/// cell is the origin, and sorts it.
pub fn canonicalize(cells: impl IntoIterator<Item = ShapeCell>) -> Result<ColoredShape> {
    let mut cells: Vec<ShapeCell> = cells.into_iter().collect();
    if cells.is_empty() {
        return Err(Error::InvalidInput("empty cell set".into()));
    }
    cells.sort_by_key(|a| a.cell);
    if cells.windows(2).any(|w| w[0].cell == w[1].cell) {
        return Err(Error::InvalidInput(format!(
            "duplicate cell {}",
            cells.windows(2).find(|w| w[0].cell == w[1].cell).unwrap()[0].cell
        )));
    }
    if !is_face_connected(cells.iter().map(|c| c.cell)) {
        return Err(Error::Disconnected);
    }
    let min = cells[0].cell;
    for c in &mut cells {
        c.cell = c.cell.translate(-min.x, -min.y, -min.z);
    }
    Ok(ColoredShape { cells })
}

pub(crate) fn is_face_connected(cells: impl IntoIterator<Item = Cell>) -> bool {
    let set: HashSet<Cell> = cells.into_iter().collect();
    let Some(&start) = set.iter().next() else {
        return true;
    };
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for d in Dir::ALL {
            let nb = c.step(d);
            if set.contains(&nb) && seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    seen.len() == set.len()
}

/// Bonded adjacencies as index pairs `(i, j)` with `i < j`, sorted.
///
/// Fails on any repelling contact, which a valid shape cannot contain.
pub fn bond_graph(shape: &ColoredShape, catalog: &Catalog) -> Result<Vec<(usize, usize)>> {
    let index: HashMap<Cell, usize> =
        shape.cells.iter().enumerate().map(|(i, c)| (c.cell, i)).collect();
    let mut arrangements = Vec::with_capacity(shape.len());
    for c in &shape.cells {
        arrangements.push(catalog.arrangement(&c.color)?);
    }
    let mut edges = Vec::new();
    for (i, c) in shape.cells.iter().enumerate() {
        // Positive directions only, so each adjacency is visited once.
        for d in [Dir::PosX, Dir::PosY, Dir::PosZ] {
            let Some(&j) = index.get(&c.cell.step(d)) else { continue };
            match contact(&arrangements[i], &arrangements[j], d) {
                Interaction::Bond => edges.push((i.min(j), i.max(j))),
                Interaction::Neutral => {}
                Interaction::Repel => {
                    return Err(Error::Integrity(format!(
                        "repelling contact between {} ({}) and {} ({})",
                        c.cell, c.color, shape.cells[j].cell, shape.cells[j].color
                    )))
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(edges)
}

/// Breadth-first search from the first cell over bonded faces; true when
/// every cube is reached.
pub fn is_magnetically_connected(shape: &ColoredShape, catalog: &Catalog) -> Result<bool> {
    let n = shape.len();
    if n <= 1 {
        return Ok(true);
    }
    let index: HashMap<Cell, usize> =
        shape.cells.iter().enumerate().map(|(i, c)| (c.cell, i)).collect();
    let mut arrangements = Vec::with_capacity(n);
    for c in &shape.cells {
        arrangements.push(catalog.arrangement(&c.color)?);
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut reached = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for d in Dir::ALL {
            let Some(&j) = index.get(&shape.cells[i].cell.step(d)) else { continue };
            if !seen[j] && contact(&arrangements[i], &arrangements[j], d) == Interaction::Bond {
                seen[j] = true;
                reached += 1;
                queue.push_back(j);
            }
        }
    }
    Ok(reached == n)
}

/// JSON form: a list of `{"x","y","z","color"}` objects in canonical order.
pub fn shape_to_json(shape: &ColoredShape) -> serde_json::Value {
    serde_json::to_value(&shape.cells).expect("cells serialize")
}

pub fn shapes_to_json(shapes: &[ColoredShape]) -> String {
    let list: Vec<&[ShapeCell]> = shapes.iter().map(|s| s.cells()).collect();
    serde_json::to_string(&list).expect("shapes serialize")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ShapeFile {
    Many(Vec<Vec<RawCell>>),
    One(Vec<RawCell>),
}

#[derive(Deserialize)]
struct RawCell {
    x: i32,
    y: i32,
    #[serde(default)]
    z: i32,
    color: String,
}

/// Reads either a single shape or a list of shapes; each is canonicalized.
pub fn shapes_from_json(text: &str) -> Result<Vec<ColoredShape>> {
    let file: ShapeFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("malformed shape file: {e}")))?;
    let raw = match file {
        ShapeFile::Many(list) => list,
        ShapeFile::One(cells) => vec![cells],
    };
    if raw.is_empty() || raw.iter().any(Vec::is_empty) {
        return Err(Error::InvalidInput("shape file contains no cells".into()));
    }
    raw.into_iter()
        .map(|cells| {
            canonicalize(cells.into_iter().map(|c| ShapeCell::new(Cell::new(c.x, c.y, c.z), c.color)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(x: i32, y: i32, color: &str) -> ShapeCell {
        ShapeCell::new(Cell::planar(x, y), color)
    }

    #[test]
    fn canonicalize_translates() {
        let s = canonicalize([sc(5, 5, "magenta")]).unwrap();
        assert_eq!(s.cells(), &[sc(0, 0, "magenta")]);
        let s = canonicalize([sc(2, 4, "magenta"), sc(2, 3, "cyan")]).unwrap();
        assert_eq!(s.cells(), &[sc(0, 0, "cyan"), sc(0, 1, "magenta")]);
        let again = canonicalize(s.cells().to_vec()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn canonicalize_rejects_bad_sets() {
        assert!(matches!(canonicalize([sc(0, 0, "a"), sc(2, 0, "a")]), Err(Error::Disconnected)));
        assert!(canonicalize(Vec::new()).is_err());
        assert!(canonicalize([sc(0, 0, "a"), sc(0, 0, "b")]).is_err());
    }

    #[test]
    fn origin_is_leftmost_of_bottom_row() {
        let s = canonicalize([sc(1, 0, "a"), sc(0, 1, "a"), sc(1, 1, "a")]).unwrap();
        let cells: Vec<Cell> = s.cells().iter().map(|c| c.cell).collect();
        assert_eq!(cells, vec![Cell::planar(0, 0), Cell::planar(-1, 1), Cell::planar(0, 1)]);
    }

    #[test]
    fn connectivity_examples() {
        let cat = Catalog::default_catalog();
        let single = canonicalize([sc(0, 0, "magenta")]).unwrap();
        assert!(is_magnetically_connected(&single, &cat).unwrap());
        assert!(bond_graph(&single, &cat).unwrap().is_empty());

        let series = canonicalize([sc(0, 0, "magenta"), sc(0, 1, "magenta")]).unwrap();
        assert!(is_magnetically_connected(&series, &cat).unwrap());
        assert_eq!(bond_graph(&series, &cat).unwrap(), vec![(0, 1)]);

        // Side by side: brown has no front/back magnets, so the contact is neutral.
        let side = canonicalize([sc(0, 0, "magenta"), sc(1, 0, "brown")]).unwrap();
        assert!(!is_magnetically_connected(&side, &cat).unwrap());
        assert!(bond_graph(&side, &cat).unwrap().is_empty());

        let square = canonicalize([
            sc(0, 0, "cyan"),
            sc(1, 0, "magenta"),
            sc(0, 1, "magenta"),
            sc(1, 1, "cyan"),
        ])
        .unwrap();
        assert_eq!(bond_graph(&square, &cat).unwrap().len(), 4);
    }

    #[test]
    fn repel_is_an_integrity_error() {
        let cat = Catalog::default_catalog();
        let bad = canonicalize([sc(0, 0, "magenta"), sc(1, 0, "magenta")]).unwrap();
        assert!(matches!(bond_graph(&bad, &cat), Err(Error::Integrity(_))));
    }

    #[test]
    fn unknown_color_is_reported() {
        let cat = Catalog::default_catalog();
        let s = canonicalize([sc(0, 0, "octarine"), sc(0, 1, "cyan")]).unwrap();
        assert!(matches!(is_magnetically_connected(&s, &cat), Err(Error::UnknownColor(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = canonicalize([sc(3, 3, "cyan"), sc(3, 4, "magenta")]).unwrap();
        let text = shapes_to_json(std::slice::from_ref(&s));
        assert_eq!(
            text,
            r#"[[{"x":0,"y":0,"z":0,"color":"cyan"},{"x":0,"y":1,"z":0,"color":"magenta"}]]"#
        );
        assert_eq!(shapes_from_json(&text).unwrap(), vec![s.clone()]);
        let single = r#"[{"x":4,"y":1,"color":"cyan"},{"x":4,"y":2,"color":"magenta"}]"#;
        assert_eq!(shapes_from_json(single).unwrap(), vec![s]);
        assert!(shapes_from_json("[]").is_err());
        assert!(shapes_from_json("").is_err());
    }
}
