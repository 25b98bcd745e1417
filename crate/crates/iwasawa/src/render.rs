//! Deterministic SVG emission for cylinder-cell figures: the fundamental
//! domain outline, the unit circle, one filled path per rank-1 cylinder
//! cell with a stable digit-hash color map, and a legend.

use crate::experiments::{config_hash, CellGrid, PixelLabel};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Canvas size in user units.
const CANVAS: f64 = 900.0;
const MARGIN: f64 = 40.0;
const LEGEND_WIDTH: f64 = 230.0;

/// Stable cell color: FNV hash of the digit label mapped into HSL, then
/// converted to an sRGB hex triple with integer rounding. Identical across
/// runs and platforms.
pub fn cell_color(label: &str) -> String {
    let h = u64::from_str_radix(&config_hash(label), 16).unwrap_or(0);
    let hue = (h % 360) as f64;
    let sat = 0.45 + ((h >> 9) % 30) as f64 / 100.0;
    let light = 0.42 + ((h >> 17) % 26) as f64 / 100.0;
    let (r, g, b) = hsl_to_rgb(hue, sat, light);
    format!("#{r:02x}{g:02x}{b:02x}")
}

fn hsl_to_rgb(h: f64, s: f64, l: f64) -> (u8, u8, u8) {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r1, g1, b1) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let conv = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    (conv(r1), conv(g1), conv(b1))
}

/// Marching squares on a binary indicator grid: closed polylines separating
/// ones from zeros, in grid coordinates (pixel centers at integer + 0.5).
pub fn marching_squares(width: usize, height: usize, is_set: impl Fn(usize, usize) -> bool) -> Vec<Vec<(f64, f64)>> {
    // sample at corners of an extended grid so shapes touching the border close
    let at = |x: i64, y: i64| -> bool {
        if x < 0 || y < 0 || x >= width as i64 || y >= height as i64 {
            false
        } else {
            is_set(x as usize, y as usize)
        }
    };
    // segments keyed by start point (scaled by 2 to stay integral)
    let mut segments: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
    let mut add = |a: (i64, i64), b: (i64, i64)| {
        segments.insert(a, b);
    };
    for y in -1..height as i64 {
        for x in -1..width as i64 {
            let tl = at(x, y) as u8;
            let tr = at(x + 1, y) as u8;
            let bl = at(x, y + 1) as u8;
            let br = at(x + 1, y + 1) as u8;
            let case = tl << 3 | tr << 2 | br << 1 | bl;
            // edge midpoints of the 2×2 corner block, doubled coordinates
            let top = (2 * x + 2, 2 * y + 1);
            let right = (2 * x + 3, 2 * y + 2);
            let bottom = (2 * x + 2, 2 * y + 3);
            let left = (2 * x + 1, 2 * y + 2);
            // oriented so the set region stays on the left of each segment
            match case {
                0b0000 | 0b1111 => {}
                0b1000 => add(left, top),
                0b0100 => add(top, right),
                0b0010 => add(right, bottom),
                0b0001 => add(bottom, left),
                0b1100 => add(left, right),
                0b0110 => add(top, bottom),
                0b0011 => add(right, left),
                0b1001 => add(bottom, top),
                0b1110 => add(left, bottom),
                0b1101 => add(bottom, right),
                0b1011 => add(right, top),
                0b0111 => add(top, left),
                // saddles: resolve consistently
                0b1010 => {
                    add(left, top);
                    add(right, bottom);
                }
                0b0101 => {
                    add(top, right);
                    add(bottom, left);
                }
                _ => unreachable!(),
            }
        }
    }
    // chain segments into closed loops (deterministic: BTreeMap order)
    let mut loops = Vec::new();
    while let Some((&start, &_next)) = segments.iter().next() {
        let mut path = vec![start];
        let mut cur = start;
        while let Some(nxt) = segments.remove(&cur) {
            path.push(nxt);
            cur = nxt;
            if cur == start {
                break;
            }
        }
        loops.push(
            path.into_iter()
                .map(|(x, y)| (x as f64 / 2.0, y as f64 / 2.0))
                .collect(),
        );
    }
    loops
}

/// Render a cylinder-cell grid as a deterministic standalone SVG document.
pub fn render_svg(grid: &CellGrid) -> String {
    let res = grid.resolution;
    let plot = CANVAS - 2.0 * MARGIN;
    let sx = |gx: f64| MARGIN + gx / res as f64 * plot;
    // flip the y axis so increasing coordinate points up
    let sy = |gy: f64| MARGIN + (1.0 - gy / res as f64) * plot;
    // world coordinate → grid coordinate scale for the unit circle
    let gx_of = |wx: f64| (wx - grid.x_range.0) / (grid.x_range.1 - grid.x_range.0) * res as f64;
    let gy_of = |wy: f64| (wy - grid.y_range.0) / (grid.y_range.1 - grid.y_range.0) * res as f64;

    let mut cells: BTreeMap<String, usize> = BTreeMap::new();
    for l in &grid.labels {
        if let PixelLabel::Cell(name) = l {
            *cells.entry(name.clone()).or_insert(0) += 1;
        }
    }

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {CANVAS:.0}\">",
        CANVAS + LEGEND_WIDTH,
        CANVAS,
        CANVAS + LEGEND_WIDTH
    );
    let _ = writeln!(
        svg,
        "<desc>experiment={} preset={} seed={} version={} config={}</desc>",
        grid.meta.experiment, grid.meta.preset, grid.meta.seed, grid.meta.version, grid.meta.config_hash
    );
    let _ = writeln!(svg, "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>");

    // one filled path per cell, marching squares over its indicator
    let _ = writeln!(svg, "<g stroke=\"none\">");
    for (label, _count) in &cells {
        let loops = marching_squares(res, res, |x, y| {
            matches!(grid.label_at(x, y), PixelLabel::Cell(l) if l == label)
        });
        if loops.is_empty() {
            continue;
        }
        let mut d = String::new();
        for lp in &loops {
            for (i, (gx, gy)) in lp.iter().enumerate() {
                let cmd = if i == 0 { 'M' } else { 'L' };
                let _ = write!(d, "{cmd}{:.2} {:.2}", sx(*gx), sy(*gy));
            }
            d.push('Z');
        }
        let _ = writeln!(
            svg,
            "<path fill=\"{}\" fill-rule=\"evenodd\" d=\"{}\"/>",
            cell_color(label),
            d
        );
    }
    let _ = writeln!(svg, "</g>");

    // outline of K: boundary between inside and outside pixels
    let outline = marching_squares(res, res, |x, y| {
        !matches!(grid.label_at(x, y), PixelLabel::Outside)
    });
    let mut d = String::new();
    for lp in &outline {
        for (i, (gx, gy)) in lp.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{:.2} {:.2}", sx(*gx), sy(*gy));
        }
        d.push('Z');
    }
    let _ = writeln!(
        svg,
        "<path fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\" d=\"{d}\"/>"
    );

    // the unit circle (fixed by the inversion)
    let cx = sx(gx_of(0.0));
    let cy = sy(gy_of(0.0));
    let r = (gx_of(1.0) - gx_of(0.0)) / res as f64 * plot;
    let _ = writeln!(
        svg,
        "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{r:.2}\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>"
    );

    // legend: the largest cells by pixel count
    let mut by_size: Vec<(&String, &usize)> = cells.iter().collect();
    by_size.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    let _ = writeln!(svg, "<g font-family=\"monospace\" font-size=\"14\">");
    let _ = writeln!(
        svg,
        "<text x=\"{:.0}\" y=\"{:.0}\" fill=\"#000000\">cells: {} (unlabeled {:.3}%)</text>",
        CANVAS,
        MARGIN,
        cells.len(),
        100.0 * grid.unlabeled_fraction()
    );
    for (row, (label, count)) in by_size.iter().take(18).enumerate() {
        let y = MARGIN + 24.0 + row as f64 * 22.0;
        let _ = writeln!(
            svg,
            "<rect x=\"{:.0}\" y=\"{:.0}\" width=\"14\" height=\"14\" fill=\"{}\"/>",
            CANVAS,
            y - 12.0,
            cell_color(label)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.0}\" y=\"{:.0}\" fill=\"#000000\">{} ({})</text>",
            CANVAS + 20.0,
            y,
            xml_escape(label),
            count
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::cylinder_cells;
    use crate::lattice::PresetId;

    #[test]
    fn svg_is_byte_deterministic() {
        let g = cylinder_cells(PresetId::Hurwitz, 48, None, 7).unwrap();
        let a = render_svg(&g);
        let b = render_svg(&g);
        assert_eq!(a, b);
        let g2 = cylinder_cells(PresetId::Hurwitz, 48, None, 7).unwrap();
        assert_eq!(a, render_svg(&g2), "independent recomputation matches");
        assert!(a.starts_with("<svg"));
        assert!(a.contains("preset=hurwitz"));
        assert!(a.contains("<circle"));
    }

    #[test]
    fn empty_cells_render_outline_only() {
        // a grid with no inside pixels still renders the frame and circle
        let g = cylinder_cells(PresetId::Hurwitz, 4, None, 0).unwrap();
        let svg = render_svg(&g);
        assert!(svg.contains("</svg>"));
    }

    #[test]
    fn marching_squares_square_block() {
        // single 2×2 block inside a 4×4 grid yields one closed loop
        let loops = marching_squares(4, 4, |x, y| (1..3).contains(&x) && (1..3).contains(&y));
        assert_eq!(loops.len(), 1);
        let lp = &loops[0];
        assert_eq!(lp.first(), lp.last());
        assert!(lp.len() >= 8);
    }

    #[test]
    fn stable_colors() {
        assert_eq!(cell_color("(1,0)"), cell_color("(1,0)"));
        assert_ne!(cell_color("(1,0)"), cell_color("(0,1)"));
    }
}
