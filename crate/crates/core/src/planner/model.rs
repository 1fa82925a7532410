//! Global-control motion: every component moves one cell per step in the
//! commanded direction unless blocked by a wall, a blocked component, or a
//! repelling contact it would create.
//!
//! Cells are stored in workspace coordinates. Commands and faces are
//! expressed in the magnet frame (north up); `frame_rotation` clockwise
//! quarter-turns map that frame onto the workspace.

use serde::{Deserialize, Serialize};

use crate::enumeration::{canonicalize, ColoredShape, ShapeCell};
use crate::error::{Error, Result};
use crate::lattice::{Cell, Dir};
use crate::magnet::{contact, Arrangement, Catalog, Interaction};
use crate::planner::moves::Compass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Workspace {
    pub width: u32,
    pub height: u32,
}

impl Default for Workspace {
    fn default() -> Self {
        Workspace { width: 11, height: 11 }
    }
}

impl Workspace {
    pub fn new(width: u32, height: u32) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!("workspace {width}x{height} is empty")));
        }
        Ok(Workspace { width, height })
    }

    /// Parses `11x11`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("workspace {text:?} is not WIDTHxHEIGHT"));
        let (w, h) = text.trim().split_once(['x', 'X']).ok_or_else(bad)?;
        Workspace::new(w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?)
    }

    pub fn contains(&self, x: i32, y: i32) -> bool {
        x >= 0 && y >= 0 && (x as u32) < self.width && (y as u32) < self.height
    }

    pub fn cells(&self) -> usize {
        (self.width * self.height) as usize
    }

    fn index(&self, x: i32, y: i32) -> usize {
        (y as u32 * self.width + x as u32) as usize
    }
}

/// A cube in workspace coordinates; `color` indexes the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlacedCube {
    pub x: i32,
    pub y: i32,
    pub color: u16,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    cubes: Vec<PlacedCube>,
    /// Component label per cube: the smallest cube index in its component.
    component: Vec<u16>,
    frame_rotation: u8,
    translated: bool,
}

impl Configuration {
    pub fn cubes(&self) -> &[PlacedCube] {
        &self.cubes
    }

    pub fn frame_rotation(&self) -> u8 {
        self.frame_rotation
    }

    pub fn has_translated(&self) -> bool {
        self.translated
    }

    pub fn component_labels(&self) -> &[u16] {
        &self.component
    }

    pub fn component_count(&self) -> usize {
        self.component.iter().enumerate().filter(|&(i, &c)| c as usize == i).count()
    }

    pub fn is_assembled(&self) -> bool {
        self.component.iter().all(|&c| c == 0)
    }

    /// Cube members of each component, ordered by label.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, &c) in self.component.iter().enumerate() {
            if c as usize == i {
                groups.push(vec![i]);
            } else {
                let g = groups.iter_mut().find(|g| g[0] == c as usize).expect("label is a member");
                g.push(i);
            }
        }
        groups
    }
}

/// Configuration up to translation, seen in the north-up frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelativeKey(Vec<(i32, i32, u16)>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// Some but not all components were blocked, changing the relative configuration.
    Intermediate,
    /// Every component is blocked.
    Terminal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settled {
    pub config: Configuration,
    pub stop: StopReason,
    pub steps: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub config: Configuration,
    /// Every component advanced, so the relative configuration is unchanged.
    pub rigid: bool,
}

fn world_to_frame(dir: Compass, frame_rotation: u8) -> Compass {
    dir.rotated_cw((4 - frame_rotation % 4) % 4)
}

fn lattice_dir(c: Compass) -> Dir {
    match c {
        Compass::North => Dir::PosY,
        Compass::East => Dir::PosX,
        Compass::South => Dir::NegY,
        Compass::West => Dir::NegX,
    }
}

/// Workspace vector expressed in the north-up frame (`turns` CCW quarter-turns).
fn unrotate(x: i32, y: i32, frame_rotation: u8) -> (i32, i32) {
    let (mut x, mut y) = (x, y);
    for _ in 0..frame_rotation % 4 {
        (x, y) = (-y, x);
    }
    (x, y)
}

const FREE: u16 = u16::MAX;

/// Physics for one catalog and workspace.
#[derive(Clone, Debug)]
pub struct Model<'c> {
    catalog: &'c Catalog,
    workspace: Workspace,
    arrangements: Vec<Arrangement>,
}

impl<'c> Model<'c> {
    pub fn new(catalog: &'c Catalog, workspace: Workspace) -> Self {
        let arrangements = catalog.entries().iter().map(|t| t.arrangement).collect();
        Model { catalog, workspace, arrangements }
    }

    pub fn workspace(&self) -> Workspace {
        self.workspace
    }

    pub fn catalog(&self) -> &'c Catalog {
        self.catalog
    }

    pub fn color_index(&self, name: &str) -> Result<u16> {
        self.catalog
            .entries()
            .iter()
            .position(|t| t.name == name)
            .map(|i| i as u16)
            .ok_or_else(|| Error::UnknownColor(name.to_owned()))
    }

    pub fn color_name(&self, color: u16) -> &'c str {
        &self.catalog.entries()[color as usize].name
    }

    /// North-up, untranslated configuration with bonds resolved.
    pub fn configuration<S: AsRef<str>>(&self, cubes: &[(i32, i32, S)]) -> Result<Configuration> {
        if cubes.is_empty() {
            return Err(Error::InvalidInput("configuration has no cubes".into()));
        }
        if cubes.len() >= FREE as usize {
            return Err(Error::InvalidInput("too many cubes".into()));
        }
        let mut placed = Vec::with_capacity(cubes.len());
        for (x, y, name) in cubes {
            if !self.workspace.contains(*x, *y) {
                return Err(Error::InvalidInput(format!(
                    "cube at ({x},{y}) lies outside the {}x{} workspace",
                    self.workspace.width, self.workspace.height
                )));
            }
            if placed.iter().any(|c: &PlacedCube| c.x == *x && c.y == *y) {
                return Err(Error::InvalidInput(format!("two cubes share cell ({x},{y})")));
            }
            placed.push(PlacedCube { x: *x, y: *y, color: self.color_index(name.as_ref())? });
        }
        let singletons = (0..placed.len() as u16).collect();
        self.resolve_bonds(Configuration {
            cubes: placed,
            component: singletons,
            frame_rotation: 0,
            translated: false,
        })
    }

    /// Reads a start file: a JSON list of `{"x","y","color"}` objects.
    pub fn configuration_from_json(&self, text: &str) -> Result<Configuration> {
        #[derive(Deserialize)]
        struct Start {
            x: i32,
            y: i32,
            color: String,
        }
        let cubes: Vec<Start> = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("malformed start file: {e}")))?;
        let cubes: Vec<(i32, i32, String)> = cubes.into_iter().map(|c| (c.x, c.y, c.color)).collect();
        self.configuration(&cubes)
    }

    /// Contact between cube `a` and cube `b` lying one cell away in
    /// workspace direction `dir`.
    fn contact(&self, a: u16, b: u16, dir: Compass, frame_rotation: u8) -> Interaction {
        let local = lattice_dir(world_to_frame(dir, frame_rotation));
        contact(&self.arrangements[a as usize], &self.arrangements[b as usize], local)
    }

    fn occupancy(&self, config: &Configuration) -> Vec<u16> {
        let mut occ = vec![FREE; self.workspace.cells()];
        for (i, c) in config.cubes.iter().enumerate() {
            occ[self.workspace.index(c.x, c.y)] = i as u16;
        }
        occ
    }

    /// Merges components across bonded contacts until nothing changes.
    pub fn resolve_bonds(&self, mut config: Configuration) -> Result<Configuration> {
        let n = config.cubes.len();
        let mut parent: Vec<usize> = config.component.iter().map(|&c| c as usize).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let occ = self.occupancy(&config);
        for i in 0..n {
            let c = config.cubes[i];
            for dir in [Compass::North, Compass::East] {
                let (dx, dy) = dir.offset();
                let (nx, ny) = (c.x + dx, c.y + dy);
                if !self.workspace.contains(nx, ny) {
                    continue;
                }
                let j = occ[self.workspace.index(nx, ny)];
                if j == FREE {
                    continue;
                }
                let j = j as usize;
                match self.contact(c.color, config.cubes[j].color, dir, config.frame_rotation) {
                    Interaction::Bond => {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        if ri != rj {
                            parent[ri.max(rj)] = ri.min(rj);
                        }
                    }
                    Interaction::Neutral => {}
                    Interaction::Repel => {
                        return Err(Error::Integrity(format!(
                            "repelling contact between cubes at ({},{}) and ({nx},{ny})",
                            c.x, c.y
                        )))
                    }
                }
            }
        }
        for i in 0..n {
            config.component[i] = find(&mut parent, i) as u16;
        }
        // Roots are minimal members, since unions always keep the smaller root.
        Ok(config)
    }

    /// One unit step of every unblocked component, or `None` when nothing moves.
    pub fn step(&self, config: &Configuration, command: Compass) -> Option<Step> {
        let n = config.cubes.len();
        let world = command.rotated_cw(config.frame_rotation);
        let (dx, dy) = world.offset();
        let occ = self.occupancy(config);
        let mut blocked = vec![false; n];
        loop {
            let mut changed = false;
            for i in 0..n {
                let label = config.component[i] as usize;
                if blocked[label] {
                    continue;
                }
                let c = config.cubes[i];
                let (tx, ty) = (c.x + dx, c.y + dy);
                let stuck = if !self.workspace.contains(tx, ty) {
                    true
                } else {
                    let at = occ[self.workspace.index(tx, ty)];
                    (at != FREE && blocked[config.component[at as usize] as usize])
                        || Compass::ALL.iter().any(|&d| {
                            let (ox, oy) = d.offset();
                            let (nx, ny) = (tx + ox, ty + oy);
                            if !self.workspace.contains(nx, ny) {
                                return false;
                            }
                            let j = occ[self.workspace.index(nx, ny)];
                            j != FREE
                                && config.component[j as usize] as usize != label
                                && blocked[config.component[j as usize] as usize]
                                && self.contact(
                                    c.color,
                                    config.cubes[j as usize].color,
                                    d,
                                    config.frame_rotation,
                                ) == Interaction::Repel
                        })
                };
                if stuck {
                    blocked[label] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut next = config.clone();
        let mut moved = 0;
        for (i, cube) in next.cubes.iter_mut().enumerate() {
            if !blocked[config.component[i] as usize] {
                cube.x += dx;
                cube.y += dy;
                moved += 1;
            }
        }
        if moved == 0 {
            return None;
        }
        next.translated = true;
        let rigid = moved == n;
        if !rigid {
            next = self
                .resolve_bonds(next)
                .expect("motion never creates a repelling contact");
        }
        Some(Step { config: next, rigid })
    }

    /// Steps in one direction until the relative configuration changes or
    /// everything is blocked.
    pub fn settle(&self, config: &Configuration, command: Compass) -> Settled {
        let mut current = config.clone();
        let mut steps = 0;
        loop {
            match self.step(&current, command) {
                None => return Settled { config: current, stop: StopReason::Terminal, steps },
                Some(step) => {
                    steps += 1;
                    current = step.config;
                    if !step.rigid {
                        return Settled { config: current, stop: StopReason::Intermediate, steps };
                    }
                }
            }
        }
    }

    /// Turns the field clockwise; cubes pivot in place. Only allowed before
    /// any translation and while every component is a single cube.
    pub fn rotate(&self, config: &Configuration, quarter_turns_cw: u8) -> Result<Configuration> {
        if !(1..=3).contains(&quarter_turns_cw) {
            return Err(Error::RotationRejected(format!(
                "quarter turns must be 1..=3, got {quarter_turns_cw}"
            )));
        }
        if config.translated {
            return Err(Error::RotationRejected("a translation has already been made".into()));
        }
        if config.component_count() != config.cubes.len() {
            return Err(Error::RotationRejected("a component holds more than one cube".into()));
        }
        let mut next = config.clone();
        next.frame_rotation = (config.frame_rotation + quarter_turns_cw) % 4;
        self.resolve_bonds(next).map_err(|e| {
            Error::RotationRejected(format!("rotation would create a repelling contact ({e})"))
        })
    }

    /// Cells rotated into the north-up frame and translated to the origin.
    pub fn relative_key(&self, config: &Configuration) -> RelativeKey {
        let mut cells: Vec<(i32, i32, u16)> = config
            .cubes
            .iter()
            .map(|c| {
                let (x, y) = unrotate(c.x, c.y, config.frame_rotation);
                (y, x, c.color)
            })
            .collect();
        let min_y = cells.iter().map(|c| c.0).min().unwrap_or(0);
        let min_x = cells.iter().map(|c| c.1).min().unwrap_or(0);
        for c in &mut cells {
            c.0 -= min_y;
            c.1 -= min_x;
        }
        cells.sort_unstable();
        RelativeKey(cells)
    }

    /// The canonical shape when every cube belongs to one component.
    pub fn assembled_shape(&self, config: &Configuration) -> Option<ColoredShape> {
        if !config.is_assembled() {
            return None;
        }
        let cells = config.cubes.iter().map(|c| {
            let (x, y) = unrotate(c.x, c.y, config.frame_rotation);
            ShapeCell::new(Cell::planar(x, y), self.color_name(c.color))
        });
        Some(canonicalize(cells).expect("a bonded component is face-connected"))
    }

    /// Per-color cube counts, indexed by catalog position.
    pub fn color_census(&self, config: &Configuration) -> Vec<u32> {
        let mut counts = vec![0; self.catalog.len()];
        for c in &config.cubes {
            counts[c.color as usize] += 1;
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(catalog: &Catalog, w: u32, h: u32) -> Model<'_> {
        Model::new(catalog, Workspace::new(w, h).unwrap())
    }

    #[test]
    fn workspace_parsing() {
        assert_eq!(Workspace::parse("11x11").unwrap(), Workspace::default());
        assert_eq!(Workspace::parse("5X7").unwrap(), Workspace { width: 5, height: 7 });
        assert!(Workspace::parse("0x3").is_err());
        assert!(Workspace::parse("11").is_err());
    }

    #[test]
    fn single_cube_slides_to_wall() {
        let cat = Catalog::default_catalog();
        let m = model(&cat, 11, 11);
        let c = m.configuration(&[(5, 5, "magenta")]).unwrap();
        let s = m.settle(&c, Compass::West);
        assert_eq!(s.stop, StopReason::Terminal);
        assert_eq!(s.steps, 5);
        assert_eq!((s.config.cubes()[0].x, s.config.cubes()[0].y), (0, 5));
        assert!(s.config.has_translated());
        let again = m.settle(&s.config, Compass::West);
        assert_eq!(again.steps, 0);
    }

    #[test]
    fn column_stacks_in_series() {
        let cat = Catalog::default_catalog();
        let m = model(&cat, 11, 11);
        let c = m.configuration(&[(3, 8, "magenta"), (3, 4, "magenta")]).unwrap();
        let s = m.settle(&c, Compass::South);
        // Lower cube reaches the wall after 4 steps; upper keeps going.
        assert_eq!(s.stop, StopReason::Intermediate);
        let mut cfg = s.config;
        loop {
            let s = m.settle(&cfg, Compass::South);
            cfg = s.config;
            if s.stop == StopReason::Terminal {
                break;
            }
        }
        let cells: Vec<(i32, i32)> = cfg.cubes().iter().map(|c| (c.x, c.y)).collect();
        assert_eq!(cells, vec![(3, 1), (3, 0)]);
        assert!(cfg.is_assembled());
    }

    #[test]
    fn equal_distances_stop_together() {
        let cat = Catalog::default_catalog();
        let m = model(&cat, 11, 11);
        let c = m.configuration(&[(2, 3, "magenta"), (2, 7, "cyan")]).unwrap();
        let s = m.settle(&c, Compass::East);
        assert_eq!(s.stop, StopReason::Terminal);
        assert_eq!(s.steps, 8);
        assert_eq!(m.relative_key(&s.config), m.relative_key(&c));
    }

    #[test]
    fn repulsion_leaves_a_gap() {
        let cat = Catalog::default_catalog();
        let m = model(&cat, 6, 6);
        // Two magenta side by side would put north faces together.
        let c = m.configuration(&[(0, 2, "magenta"), (4, 2, "magenta")]).unwrap();
        let s = m.settle(&c, Compass::West);
        assert_eq!(s.stop, StopReason::Intermediate);
        let s = m.settle(&s.config, Compass::West);
        let s = m.settle(&s.config, Compass::West);
        let s2 = m.settle(&s.config, Compass::West);
        assert_eq!(s2.steps, 0);
        let xs: Vec<i32> = s2.config.cubes().iter().map(|c| c.x).collect();
        assert_eq!(xs, vec![0, 2]);
        assert_eq!(s2.config.component_count(), 2);
    }

    #[test]
    fn side_bond_between_cyan_and_magenta() {
        let cat = Catalog::default_catalog();
        let m = model(&cat, 6, 6);
        let c = m.configuration(&[(0, 2, "cyan"), (1, 2, "magenta")]).unwrap();
        assert_eq!(c.component_count(), 1);
        let c = m.configuration(&[(0, 2, "cyan"), (3, 2, "magenta")]).unwrap();
        assert_eq!(c.component_count(), 2);
    }

    #[test]
    fn l_shape_bonds_transitively() {
        let cat = Catalog::default_catalog();
        let m = model(&cat, 6, 6);
        let c = m
            .configuration(&[(0, 0, "magenta"), (0, 1, "cyan"), (1, 1, "magenta")])
            .unwrap();
        assert!(c.is_assembled());
    }

    #[test]
    fn rotation_rules() {
        let cat = Catalog::default_catalog();
        let m = model(&cat, 11, 11);
        let c = m
            .configuration(&[(1, 1, "cyan"), (4, 4, "magenta"), (7, 2, "magenta"), (9, 9, "magenta")])
            .unwrap();
        let r2 = m.rotate(&c, 2).unwrap();
        assert_eq!(r2.frame_rotation(), 2);
        assert_eq!(r2.cubes(), c.cubes());

        // After one clockwise turn "n" points along the workspace's east.
        let single = m.configuration(&[(5, 5, "cyan")]).unwrap();
        let r1 = m.rotate(&single, 1).unwrap();
        let moved = m.step(&r1, Compass::North).unwrap();
        assert_eq!((moved.config.cubes()[0].x, moved.config.cubes()[0].y), (6, 5));

        let after = m.settle(&c, Compass::West).config;
        assert!(matches!(m.rotate(&after, 1), Err(Error::RotationRejected(_))));
        assert!(m.rotate(&c, 0).is_err());

        let pair = m.configuration(&[(0, 0, "magenta"), (0, 1, "magenta")]).unwrap();
        assert!(matches!(m.rotate(&pair, 1), Err(Error::RotationRejected(_))));
    }

    #[test]
    fn relative_keys() {
        let cat = Catalog::default_catalog();
        let m = model(&cat, 11, 11);
        let a = m.configuration(&[(1, 1, "cyan"), (2, 4, "magenta"), (5, 2, "magenta")]).unwrap();
        let b = m.configuration(&[(4, 3, "cyan"), (5, 6, "magenta"), (8, 4, "magenta")]).unwrap();
        assert_eq!(m.relative_key(&a), m.relative_key(&b));
        let mirror =
            m.configuration(&[(5, 1, "cyan"), (4, 4, "magenta"), (1, 2, "magenta")]).unwrap();
        assert_ne!(m.relative_key(&a), m.relative_key(&mirror));

        let mut spun = m.rotate(&a, 3).unwrap();
        spun = m.rotate(&spun, 1).unwrap();
        assert_eq!(spun.frame_rotation(), 0);
        assert_eq!(m.relative_key(&spun), m.relative_key(&a));
    }

    #[test]
    fn rejects_bad_configurations() {
        let cat = Catalog::default_catalog();
        let m = model(&cat, 5, 5);
        assert!(m.configuration(&[(5, 0, "cyan")]).is_err());
        assert!(m.configuration(&[(1, 1, "cyan"), (1, 1, "magenta")]).is_err());
        assert!(m.configuration(&[(1, 1, "octarine")]).is_err());
        assert!(matches!(
            m.configuration(&[(1, 1, "magenta"), (2, 1, "magenta")]),
            Err(Error::Integrity(_))
        ));
        assert!(m.configuration::<&str>(&[]).is_err());
    }
}
