#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use magcube::enumeration::{canonicalize, ColoredShape, ShapeCell};
use magcube::planner::{Compass, Configuration, Model};
use magcube::{Catalog, Cell, Polarity};

pub type Point = (i32, i32, i32);

fn normalize(cells: &BTreeSet<Point>) -> BTreeSet<Point> {
    let mx = cells.iter().map(|c| c.0).min().unwrap();
    let my = cells.iter().map(|c| c.1).min().unwrap();
    let mz = cells.iter().map(|c| c.2).min().unwrap();
    cells.iter().map(|&(x, y, z)| (x - mx, y - my, z - mz)).collect()
}

fn neighbours((x, y, z): Point, three_d: bool) -> Vec<Point> {
    let mut v = vec![(x + 1, y, z), (x - 1, y, z), (x, y + 1, z), (x, y - 1, z)];
    if three_d {
        v.push((x, y, z + 1));
        v.push((x, y, z - 1));
    }
    v
}

/// Fixed animals of every size up to `n`, grown one cell at a time and
/// deduplicated by translation.
pub fn fixed_animals(three_d: bool, n: usize) -> Vec<Vec<BTreeSet<Point>>> {
    let mut levels: Vec<Vec<BTreeSet<Point>>> = vec![vec![BTreeSet::from([(0, 0, 0)])]];
    while levels.len() < n {
        let mut next = HashSet::new();
        for shape in levels.last().unwrap() {
            for &c in shape {
                for nb in neighbours(c, three_d) {
                    if !shape.contains(&nb) {
                        let mut grown = shape.clone();
                        grown.insert(nb);
                        next.insert(normalize(&grown));
                    }
                }
            }
        }
        let mut next: Vec<_> = next.into_iter().collect();
        next.sort();
        levels.push(next);
    }
    levels
}

/// Outward pole of the face of a cube pointing along `d`, read straight off
/// the catalog entry: L looks down -y, R up +y, F/B along x, T/U along z.
fn face(catalog: &Catalog, color: &str, d: Point) -> Polarity {
    let a = catalog.get(color).unwrap().arrangement;
    match d {
        (0, -1, 0) => a.left,
        (0, 1, 0) => a.right,
        (_, 0, 0) => a.front_back,
        _ => a.top_under,
    }
}

#[derive(PartialEq, Eq)]
enum Touch {
    Attract,
    Repel,
    Nothing,
}

fn touch(catalog: &Catalog, a: &str, b: &str, d: Point) -> Touch {
    let pa = face(catalog, a, d);
    let pb = face(catalog, b, (-d.0, -d.1, -d.2));
    if pa == Polarity::None || pb == Polarity::None {
        Touch::Nothing
    } else if pa == pb {
        Touch::Repel
    } else {
        Touch::Attract
    }
}

/// True when the coloring has no repelling contact and one attracting component.
pub fn valid_coloring(catalog: &Catalog, cells: &[Point], colors: &[&str]) -> bool {
    let index: BTreeMap<Point, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut adj = vec![vec![]; cells.len()];
    for (i, &(x, y, z)) in cells.iter().enumerate() {
        for d in [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)] {
            if let Some(&j) = index.get(&(x + d.0, y + d.1, z + d.2)) {
                match touch(catalog, colors[i], colors[j], d) {
                    Touch::Repel => return false,
                    Touch::Attract => adj[i].push(j),
                    Touch::Nothing => {}
                }
            }
        }
    }
    let mut seen = vec![false; cells.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Distinct orderings of a multiset.
pub fn multiset_orderings<'a>(items: &[&'a str]) -> Vec<Vec<&'a str>> {
    let mut sorted = items.to_vec();
    sorted.sort();
    let mut out = vec![];
    fn rec<'a>(pool: &mut Vec<&'a str>, cur: &mut Vec<&'a str>, out: &mut Vec<Vec<&'a str>>) {
        if pool.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut last: Option<&str> = None;
        for i in 0..pool.len() {
            if last == Some(pool[i]) {
                continue;
            }
            last = Some(pool[i]);
            let item = pool.remove(i);
            cur.push(item);
            rec(pool, cur, out);
            cur.pop();
            pool.insert(i, item);
        }
    }
    rec(&mut sorted, &mut vec![], &mut out);
    out
}

/// Every valid colored shape using exactly the given cubes, by coloring
/// each fixed animal in every way.
pub fn colored_oracle(catalog: &Catalog, cubes: &[&str], three_d: bool) -> BTreeSet<ColoredShape> {
    let n = cubes.len();
    let animals = fixed_animals(three_d, n);
    let orderings = multiset_orderings(cubes);
    let mut out = BTreeSet::new();
    for shape in &animals[n - 1] {
        let cells: Vec<Point> = shape.iter().copied().collect();
        for colors in &orderings {
            if valid_coloring(catalog, &cells, colors) {
                let s = canonicalize(
                    cells.iter().zip(colors).map(|(&(x, y, z), c)| ShapeCell::new(Cell::new(x, y, z), *c)),
                )
                .unwrap();
                out.insert(s);
            }
        }
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Fewest unit translations to every shape reachable from `initial`, over
/// the whole action space: any clockwise rotation while untranslated
/// (free) and any unit step (cost 1). No pruning.
pub fn unit_step_oracle(model: &Model<'_>, initial: &Configuration) -> BTreeMap<String, u32> {
    let mut dist: std::collections::HashMap<Configuration, u32> = std::collections::HashMap::new();
    let mut deque = VecDeque::from([(initial.clone(), 0u32)]);
    let mut best = BTreeMap::new();
    while let Some((config, d)) = deque.pop_front() {
        if dist.get(&config).is_some_and(|&seen| seen <= d) {
            continue;
        }
        dist.insert(config.clone(), d);
        if let Some(shape) = model.assembled_shape(&config) {
            let slot = best.entry(shape.id()).or_insert(u32::MAX);
            *slot = (*slot).min(d);
        }
        for turns in 1..=3 {
            if let Ok(next) = model.rotate(&config, turns) {
                deque.push_front((next, d));
            }
        }
        for dir in Compass::ALL {
            if let Some(step) = model.step(&config, dir) {
                deque.push_back((step.config, d + 1));
            }
        }
    }
    best
}
