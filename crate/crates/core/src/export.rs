//! DOT and SVG renderings. Output is deterministic; nothing reads it back.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write;

use crate::automaton::AutomatonSpec;
use crate::cayley::CayleyBall;
use crate::graph::{Genset, ToyGraph};
use crate::tiles::{PatchTiling, Polarity, TileSet, TileType};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn write_edges(out: &mut String, graph: &ToyGraph, genset: &Genset) {
    for e in graph.edges() {
        let _ = writeln!(out, "  v{} -> v{} [label={}];", e.tail, e.head, quote(genset.name(e.label)));
    }
}

/// Ball with one `rank=same` group per distance from the identity.
pub fn ball_dot(ball: &CayleyBall, spec: &AutomatonSpec) -> String {
    let mut out = String::from("digraph ball {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n");
    let mut levels: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..ball.vertex_count() {
        levels.entry(ball.distance(v)).or_default().push(v);
    }
    for (d, vs) in &levels {
        let _ = writeln!(out, "  {{ rank=same; // distance {d}");
        for &v in vs {
            let word = spec.format_word(&ball.words()[v]);
            let label = if word.is_empty() { "e".to_string() } else { word };
            let shape = if ball.is_sphere(v) { ", style=dashed" } else { "" };
            let _ = writeln!(out, "    v{v} [label={}{shape}];", quote(&label));
        }
        out.push_str("  }\n");
    }
    write_edges(&mut out, ball.graph(), ball.genset());
    out.push_str("}\n");
    out
}

/// Patch adjacency; nodes are labelled with their tile type index.
pub fn patch_dot(patch: &PatchTiling) -> String {
    let mut out = String::from("digraph patch {\n  node [shape=box, fontsize=10];\n");
    for (v, a) in patch.assignment().iter().enumerate() {
        let label = match a {
            Some(t) => format!("{v}: T{t}"),
            None => format!("{v}: -"),
        };
        let style = if patch.interior()[v] { "" } else { ", style=dashed" };
        let _ = writeln!(out, "  v{v} [label={}{style}];", quote(&label));
    }
    write_edges(&mut out, patch.graph(), patch.tiles().genset());
    out.push_str("}\n");
    out
}

const GLYPH: f64 = 120.0;
const MARGIN: f64 = 30.0;
const COLUMNS: usize = 8;

/// Corner points of a glyph outline: a square for up to four generators,
/// a regular polygon otherwise.
fn outline(sides: usize) -> Vec<(f64, f64)> {
    let half = GLYPH / 2.0;
    if sides <= 4 {
        return vec![(-half, -half), (half, -half), (half, half), (-half, half)];
    }
    (0..sides)
        .map(|i| {
            let a = -PI / 2.0 - PI / sides as f64 + 2.0 * PI * i as f64 / sides as f64;
            (half * a.cos(), half * a.sin())
        })
        .collect()
}

fn glyph_path(tile: &TileType) -> String {
    let corners = outline(tile.faces().len());
    let n = corners.len();
    let mut d = format!("M {:.2} {:.2}", corners[0].0, corners[0].1);
    for side in 0..n {
        let (x0, y0) = corners[side];
        let (x1, y1) = corners[(side + 1) % n];
        if let Some(face) = tile.faces().get(side).filter(|f| !f.is_flat()) {
            let (dx, dy) = (x1 - x0, y1 - y0);
            let len = (dx * dx + dy * dy).sqrt();
            // Outward normal for a clockwise outline in SVG coordinates.
            let (nx, ny) = (dy / len, -dx / len);
            let k = face.count() as f64;
            let width = (len * 0.6 / k).min(len / 6.0);
            let height = match face.polarity() {
                Polarity::Bump => width * 0.8,
                Polarity::Dent => -width * 0.8,
            };
            let start = 0.5 - width * k / (2.0 * len);
            for i in 0..face.count() {
                let t0 = start + width * i as f64 / len;
                let t1 = t0 + width / len;
                let tm = (t0 + t1) / 2.0;
                let _ = write!(
                    d,
                    " L {:.2} {:.2} L {:.2} {:.2} L {:.2} {:.2}",
                    x0 + dx * t0,
                    y0 + dy * t0,
                    x0 + dx * tm + nx * height,
                    y0 + dy * tm + ny * height,
                    x0 + dx * t1,
                    y0 + dy * t1
                );
            }
        }
        let _ = write!(d, " L {x1:.2} {y1:.2}");
    }
    d.push_str(" Z");
    d
}

/// One glyph per tile type with generator-labelled sides.
pub fn tiles_svg(tiles: &TileSet) -> String {
    let cell = GLYPH + 2.0 * MARGIN;
    let cols = COLUMNS.min(tiles.len().max(1));
    let rows = tiles.len().div_ceil(COLUMNS).max(1);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" font-family="monospace" font-size="11">"#,
        cell * cols as f64,
        cell * rows as f64
    );
    for (i, tile) in tiles.types().iter().enumerate() {
        let cx = cell * (i % COLUMNS) as f64 + cell / 2.0;
        let cy = cell * (i / COLUMNS) as f64 + cell / 2.0;
        let _ = writeln!(out, r#"  <g transform="translate({cx:.2} {cy:.2})">"#);
        let _ = writeln!(
            out,
            r##"    <path d="{}" fill="#f4f1e8" stroke="#222" stroke-width="1.5"/>"##,
            glyph_path(tile)
        );
        let corners = outline(tile.faces().len());
        for (side, face) in tile.faces().iter().enumerate().take(corners.len()) {
            let (x0, y0) = corners[side];
            let (x1, y1) = corners[(side + 1) % corners.len()];
            let (mx, my) = ((x0 + x1) * 0.35, (y0 + y1) * 0.35);
            let _ = writeln!(
                out,
                r#"    <text x="{mx:.2}" y="{my:.2}" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
                tiles.genset().name(face.generator())
            );
        }
        let _ = writeln!(out, r#"    <text x="0" y="4" text-anchor="middle" font-weight="bold">T{i}</text>"#);
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}
