//! ASCII and SVG pictures of a staircase: the region above a boundary path,
//! the path itself, and a set of marked generators.

use std::fmt::Write as _;

use staircase_core::{BoundaryPath, LatticePoint, Rect};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    /// Lattice rectangle to draw; [`default_viewport`] when `None`.
    pub viewport: Option<Rect>,
    /// Largest number of lattice cells accepted.
    pub cell_cap: u64,
    /// ANSI colors in ASCII output.
    pub color: bool,
    /// SVG pixels per lattice unit.
    pub unit: u32,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            viewport: None,
            cell_cap: 1 << 20,
            color: false,
            unit: 24,
        }
    }
}

/// Bounding box of the path vertices and generators, one unit wider and
/// taller so the rays and the region beyond the last corner show.
pub fn default_viewport(path: &BoundaryPath, gens: &[LatticePoint]) -> Result<Rect> {
    let pts = path.vertices().iter().chain(gens);
    let x_min = pts.clone().map(|p| p.x).min().expect("path has a vertex");
    let x_max = pts.clone().map(|p| p.x).max().expect("path has a vertex");
    let y_min = pts.clone().map(|p| p.y).min().expect("path has a vertex");
    let y_max = pts.map(|p| p.y).max().expect("path has a vertex");
    let grow = |v: i64| {
        v.checked_add(1)
            .ok_or(staircase_core::Error::OverflowDetected)
    };
    Ok(Rect::new(x_min, grow(x_max)?, y_min, grow(y_max)?)?)
}

pub fn render(
    path: &BoundaryPath,
    gens: &[LatticePoint],
    format: RenderFormat,
    options: &RenderOptions,
) -> Result<String> {
    let rect = match options.viewport {
        Some(r) => r,
        None => default_viewport(path, gens)?,
    };
    let cells = rect.cells().unwrap_or(u64::MAX);
    if cells > options.cell_cap {
        return Err(Error::ViewportTooLarge {
            cells,
            cap: options.cell_cap,
        });
    }
    Ok(match format {
        RenderFormat::Ascii => ascii(path, gens, rect, options.color),
        RenderFormat::Svg => svg(path, gens, rect, options.unit),
    })
}

fn ascii(path: &BoundaryPath, gens: &[LatticePoint], rect: Rect, color: bool) -> String {
    let mut out = String::new();
    for y in (rect.y_min..=rect.y_max).rev() {
        for x in rect.x_min..=rect.x_max {
            let p = LatticePoint::new(x, y);
            let cell = if gens.contains(&p) {
                if color {
                    "\x1b[34m*\x1b[0m"
                } else {
                    "*"
                }
            } else if path.contains(p) {
                if color {
                    "\x1b[90m#\x1b[0m"
                } else {
                    "#"
                }
            } else {
                "."
            };
            out.push_str(cell);
        }
        out.push('\n');
    }
    out
}

type Pt = (f64, f64);

/// Sutherland–Hodgman against the four sides of `rect`.
fn clip(polygon: Vec<Pt>, rect: Rect) -> Vec<Pt> {
    let (x0, x1) = (rect.x_min as f64, rect.x_max as f64);
    let (y0, y1) = (rect.y_min as f64, rect.y_max as f64);
    // (axis, bound, keep when coordinate >= bound)
    let planes = [(0, x0, true), (0, x1, false), (1, y0, true), (1, y1, false)];
    let mut poly = polygon;
    for (axis, bound, above) in planes {
        let coord = |p: Pt| if axis == 0 { p.0 } else { p.1 };
        let inside = |p: Pt| {
            if above {
                coord(p) >= bound
            } else {
                coord(p) <= bound
            }
        };
        let cross = |a: Pt, b: Pt| {
            let t = (bound - coord(a)) / (coord(b) - coord(a));
            (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
        };
        let mut next = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let cur = poly[i];
            let prev = poly[(i + poly.len() - 1) % poly.len()];
            match (inside(prev), inside(cur)) {
                (true, true) => next.push(cur),
                (true, false) => next.push(cross(prev, cur)),
                (false, true) => {
                    next.push(cross(prev, cur));
                    next.push(cur);
                }
                (false, false) => {}
            }
        }
        poly = next;
        if poly.is_empty() {
            break;
        }
    }
    poly
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn svg(path: &BoundaryPath, gens: &[LatticePoint], rect: Rect, unit: u32) -> String {
    let unit = unit as f64;
    let margin = 12.0;
    let width = rect.width().saturating_sub(1) as f64 * unit + 2.0 * margin;
    let height = rect.height().saturating_sub(1) as f64 * unit + 2.0 * margin;
    // larger y is drawn higher up
    let px = |p: Pt| {
        (
            (p.0 - rect.x_min as f64) * unit + margin,
            (rect.y_max as f64 - p.1) * unit + margin,
        )
    };
    let points = |ps: &[Pt]| {
        ps.iter()
            .map(|&p| {
                let (x, y) = px(p);
                format!("{},{}", num(x), num(y))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let f = |p: LatticePoint| (p.x as f64, p.y as f64);

    let (start, end) = (path.start(), path.end());
    let top = rect.y_max.max(start.y) as f64;
    let right = rect.x_max.max(end.x) as f64;
    let mut boundary = vec![(start.x as f64, top)];
    boundary.extend(path.vertices().iter().map(|&v| f(v)));
    boundary.push((right, end.y as f64));
    boundary.dedup();
    let mut region = boundary.clone();
    region.push((right, top));
    let mut region = clip(region, rect);
    region.dedup();

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    );
    let _ = writeln!(out, r##"  <g stroke="#d0d0d0" stroke-width="1">"##);
    for x in rect.x_min..=rect.x_max {
        let (a, b) = (
            px((x as f64, rect.y_min as f64)),
            px((x as f64, rect.y_max as f64)),
        );
        let _ = writeln!(
            out,
            r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1)
        );
    }
    for y in rect.y_min..=rect.y_max {
        let (a, b) = (
            px((rect.x_min as f64, y as f64)),
            px((rect.x_max as f64, y as f64)),
        );
        let _ = writeln!(
            out,
            r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1)
        );
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(
        out,
        r##"  <polygon points="{}" fill="#b8b8b8" stroke="none"/>"##,
        points(&region)
    );
    let _ = writeln!(
        out,
        r#"  <polyline points="{}" fill="none" stroke="red" stroke-width="3"/>"#,
        points(&boundary)
    );
    for &g in gens.iter().filter(|g| rect.contains(**g)) {
        let (cx, cy) = px(f(g));
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{}" r="4" fill="blue"/>"#,
            num(cx),
            num(cy)
        );
    }
    out.push_str("</svg>\n");
    out
}
