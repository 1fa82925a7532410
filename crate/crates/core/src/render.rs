//! SVG drawings of colored shapes.
//!
//! Each cell is a unit square filled with its type's name as a CSS color and
//! carries a white arrow pointing from its south to its north pole (`+y`,
//! drawn upward). Bonded faces are joined by a line between cell centres.
//! Shapes are laid out left to right; 3D shapes draw each `z` layer as its
//! own panel.

use std::fmt::Write;

use crate::enumeration::{bond_graph, ColoredShape};
use crate::error::{Error, Result};
use crate::magnet::Catalog;

const UNIT: i32 = 40;
const GAP: i32 = 20;

struct Panel<'a> {
    shape: &'a ColoredShape,
    z: i32,
    x0: i32,
    y0: i32,
}

pub fn render_svg(shapes: &[ColoredShape], catalog: &Catalog) -> Result<String> {
    if shapes.is_empty() || shapes.iter().any(ColoredShape::is_empty) {
        return Err(Error::InvalidInput("nothing to render".into()));
    }
    let mut panels = Vec::new();
    let mut cursor = GAP;
    let mut height = 0;
    for shape in shapes {
        let cells = shape.cells();
        let min_x = cells.iter().map(|c| c.cell.x).min().unwrap_or(0);
        let max_x = cells.iter().map(|c| c.cell.x).max().unwrap_or(0);
        let min_y = cells.iter().map(|c| c.cell.y).min().unwrap_or(0);
        let max_y = cells.iter().map(|c| c.cell.y).max().unwrap_or(0);
        let min_z = cells.iter().map(|c| c.cell.z).min().unwrap_or(0);
        let max_z = cells.iter().map(|c| c.cell.z).max().unwrap_or(0);
        height = height.max(max_y - min_y + 1);
        for z in min_z..=max_z {
            let width = max_x - min_x + 1;
            panels.push(Panel { shape, z, x0: cursor - min_x * UNIT, y0: max_y });
            cursor += width * UNIT + GAP;
        }
    }
    let total_w = cursor;
    let total_h = height * UNIT + 2 * GAP;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{total_h}" viewBox="0 0 {total_w} {total_h}">"#
    )
    .unwrap();
    for panel in &panels {
        let edges = bond_graph(panel.shape, catalog)?;
        let cells = panel.shape.cells();
        let centre = |i: usize| {
            let c = &cells[i].cell;
            (panel.x0 + c.x * UNIT + UNIT / 2, GAP + (panel.y0 - c.y) * UNIT + UNIT / 2)
        };
        writeln!(out, r#"<g class="shape" data-z="{}">"#, panel.z).unwrap();
        for (i, sc) in cells.iter().enumerate().filter(|(_, c)| c.cell.z == panel.z) {
            let (cx, cy) = centre(i);
            writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{UNIT}" height="{UNIT}" fill="{}" stroke="black"/>"#,
                cx - UNIT / 2,
                cy - UNIT / 2,
                sc.color
            )
            .unwrap();
            writeln!(
                out,
                r#"<path class="arrow" d="M {cx} {} L {cx} {} M {} {} L {cx} {} L {} {}" stroke="white" stroke-width="3" fill="none"/>"#,
                cy + 12,
                cy - 12,
                cx - 6,
                cy - 6,
                cy - 12,
                cx + 6,
                cy - 6
            )
            .unwrap();
        }
        for (i, j) in edges {
            if cells[i].cell.z != panel.z || cells[j].cell.z != panel.z {
                continue;
            }
            let (x1, y1) = centre(i);
            let (x2, y2) = centre(j);
            writeln!(
                out,
                r#"<line class="bond" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="gray" stroke-width="2"/>"#
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
