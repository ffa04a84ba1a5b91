//! Text and SVG drawings of pattern classes.
//!
//! Drawn from the mover's side with the mover as Black: the move goes on
//! the cross in the middle, `X` are Black (own) stones, `O` White
//! (opponent) stones and `#` lies off the board.

use std::fmt::Write;

use gonet_core::pattern::PatternCell;
use gonet_core::{CanonicalPatternId, PatternCatalog, RawPattern};

fn glyph(cell: PatternCell) -> char {
    match cell {
        PatternCell::Empty => '.',
        PatternCell::Own => 'X',
        PatternCell::Opponent => 'O',
        PatternCell::OffBoard => '#',
    }
}

/// Three lines of three characters, top row first.
pub fn ascii(pattern: &RawPattern) -> String {
    let mut out = String::with_capacity(12);
    for dy in -1..=1 {
        for dx in -1..=1 {
            out.push(if dx == 0 && dy == 0 { '+' } else { glyph(pattern.cell(dx, dy)) });
        }
        out.push('\n');
    }
    out
}

/// Numbered ASCII drawings, laid out side by side in rows of `per_row`.
pub fn ascii_table(catalog: &PatternCatalog, ids: &[CanonicalPatternId], per_row: usize) -> String {
    let per_row = per_row.max(1);
    let mut out = String::new();
    for (row_index, row) in ids.chunks(per_row).enumerate() {
        let drawings: Vec<Vec<String>> = row
            .iter()
            .map(|&id| ascii(catalog.representative(id)).lines().map(str::to_owned).collect())
            .collect();
        for (i, id) in row.iter().enumerate() {
            let label = format!("{}:{}", row_index * per_row + i + 1, id.0);
            let _ = write!(out, "{label:<10}");
        }
        out.push('\n');
        for line in 0..3 {
            for d in &drawings {
                let _ = write!(out, "{:<10}", d[line]);
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

const CELL: f64 = 18.0;
const GAP: f64 = 24.0;

fn svg_pattern(out: &mut String, pattern: &RawPattern, ox: f64, oy: f64) {
    for dy in -1..=1i32 {
        for dx in -1..=1i32 {
            let x = ox + (dx + 1) as f64 * CELL;
            let y = oy + (dy + 1) as f64 * CELL;
            let (cx, cy, r) = (x + CELL / 2.0, y + CELL / 2.0, CELL * 0.42);
            let _ = write!(
                out,
                r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="#dcb35c" stroke="#555" stroke-width="0.5"/>"##
            );
            if dx == 0 && dy == 0 {
                let a = CELL * 0.3;
                let _ = write!(
                    out,
                    r##"<path d="M{} {} L{} {} M{} {} L{} {}" stroke="#c00" stroke-width="2"/>"##,
                    cx - a,
                    cy - a,
                    cx + a,
                    cy + a,
                    cx - a,
                    cy + a,
                    cx + a,
                    cy - a
                );
                continue;
            }
            match pattern.cell(dx, dy) {
                PatternCell::Empty => {}
                PatternCell::Own => {
                    let _ = write!(out, r##"<circle cx="{cx}" cy="{cy}" r="{r}" fill="#000"/>"##);
                }
                PatternCell::Opponent => {
                    let _ = write!(
                        out,
                        r##"<circle cx="{cx}" cy="{cy}" r="{r}" fill="#fff" stroke="#000"/>"##
                    );
                }
                PatternCell::OffBoard => {
                    let _ = write!(
                        out,
                        r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="#888"/>"##
                    );
                }
            }
        }
    }
}

/// A static SVG grid of the given classes, labelled `rank: id`.
pub fn svg_table(catalog: &PatternCatalog, ids: &[CanonicalPatternId], per_row: usize) -> String {
    let per_row = per_row.max(1);
    let block = 3.0 * CELL + GAP;
    let rows = ids.len().div_ceil(per_row);
    let width = per_row as f64 * block + GAP;
    let height = rows as f64 * (block + 12.0) + GAP;
    let mut out = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="10">"#
    );
    for (i, &id) in ids.iter().enumerate() {
        let ox = GAP + (i % per_row) as f64 * block;
        let oy = GAP + (i / per_row) as f64 * (block + 12.0);
        let _ = write!(out, r#"<text x="{ox}" y="{}">{}: {}</text>"#, oy - 4.0, i + 1, id.0);
        svg_pattern(&mut out, catalog.representative(id), ox, oy);
    }
    out.push_str("</svg>\n");
    out
}
