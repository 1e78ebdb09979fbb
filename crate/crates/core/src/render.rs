//! Text and SVG figures of paths, peak points, and reflection lines.

use std::fmt::Write as _;

use crate::bijection::{BijectionTrace, Point};
use crate::error::{Error, Result};
use crate::path::{LatticePath, Step};

/// Longest path [`render_ascii`] accepts.
pub const MAX_ASCII_LEN: usize = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Annotations {
    pub show_axes: bool,
    pub show_peaks: bool,
    pub show_lines: bool,
    pub label_points: bool,
}

impl Default for Annotations {
    fn default() -> Self {
        Annotations {
            show_axes: false,
            show_peaks: true,
            show_lines: true,
            label_points: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub path: LatticePath,
    /// Trace whose points refer to `path`. Trace annotations are skipped
    /// without one.
    pub trace: Option<BijectionTrace>,
    /// SVG pixels per lattice unit, at least 1.
    pub cell_size: u32,
    pub annotations: Annotations,
}

impl RenderSpec {
    pub fn new(path: LatticePath) -> Self {
        RenderSpec {
            path,
            trace: None,
            cell_size: 20,
            annotations: Annotations::default(),
        }
    }

    pub fn with_trace(mut self, trace: BijectionTrace) -> Self {
        self.trace = Some(trace);
        self
    }

    pub fn cell_size(mut self, cell_size: u32) -> Self {
        self.cell_size = cell_size;
        self
    }
}

/// One column per step, `/` for up and `\` for down; row `r` holds the
/// glyphs of steps between heights `r` and `r + 1`. Peaks are marked `B`,
/// segment ends `G`, reflection lines drawn with `-` through empty cells.
pub fn render_ascii(spec: &RenderSpec) -> Result<String> {
    let path = &spec.path;
    if path.len() > MAX_ASCII_LEN {
        return Err(Error::Range(format!(
            "ascii rendering supports at most {MAX_ASCII_LEN} steps, got {}",
            path.len()
        )));
    }
    if path.is_empty() {
        return Ok(String::new());
    }
    let h = path.heights();
    let cols = path.len();
    let lo = *h.iter().min().unwrap();
    let hi = *h.iter().max().unwrap();
    let (mut row_lo, mut row_hi) = (lo, hi - 1);
    if let Some(trace) = &spec.trace {
        // marks and lines may sit one row above the highest glyph
        let levels = trace
            .b_points
            .iter()
            .chain(&trace.g_points)
            .filter(|pt| on_path(&h, pt))
            .map(|pt| pt.height)
            .chain(trace.reflection_lines.iter().copied());
        for y in levels {
            row_lo = row_lo.min(y);
            row_hi = row_hi.max(y);
        }
    }
    let rows = (row_hi - row_lo + 1) as usize;
    let mut grid = vec![vec![' '; cols]; rows];
    let cell = |row: i64| (row - row_lo) as usize;

    for (j, s) in path.steps().enumerate() {
        match s {
            Step::Up => grid[cell(h[j])][j] = '/',
            Step::Down => grid[cell(h[j] - 1)][j] = '\\',
        }
    }

    let ann = spec.annotations;
    if let Some(trace) = &spec.trace {
        if ann.show_lines {
            for &level in &trace.reflection_lines {
                if (row_lo..=row_hi).contains(&level) {
                    for c in grid[cell(level)].iter_mut().filter(|c| **c == ' ') {
                        *c = '-';
                    }
                }
            }
        }
        if ann.show_peaks {
            for pt in &trace.b_points {
                place_mark(&mut grid, path, pt, 'B', row_lo, row_hi);
            }
        }
        if ann.label_points {
            for pt in &trace.g_points {
                place_mark(&mut grid, path, pt, 'G', row_lo, row_hi);
            }
        }
    }
    if ann.show_axes && (row_lo..=row_hi).contains(&0) {
        for c in grid[cell(0)].iter_mut().filter(|c| **c == ' ') {
            *c = '.';
        }
    }

    let mut out = String::new();
    for row in grid.iter().rev() {
        let line: String = row.iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}

/// Forward traces locate their G points on the image path; those are only
/// drawn when the rendered path passes through them.
fn on_path(h: &[i64], pt: &Point) -> bool {
    h.get(pt.index) == Some(&pt.height)
}

/// Puts `mark` next to point `pt` in the first cell not holding a step glyph:
/// the column after the point, then the column before it.
fn place_mark(
    grid: &mut [Vec<char>],
    path: &LatticePath,
    pt: &Point,
    mark: char,
    row_lo: i64,
    row_hi: i64,
) {
    if !on_path(&path.heights(), pt) || !(row_lo..=row_hi).contains(&pt.height) {
        return;
    }
    let row = (pt.height - row_lo) as usize;
    let cols = path.len();
    let candidates = [pt.index, pt.index.wrapping_sub(1)];
    for col in candidates.into_iter().filter(|&c| c < cols) {
        if !matches!(grid[row][col], '/' | '\\') {
            grid[row][col] = mark;
            return;
        }
    }
}

/// Standalone SVG 1.1 document. Vertex `j` of the path sits at
/// `(j·cell, (top − h_j)·cell)` with `top = max(0, max_j h_j)`; the view box
/// adds a one-cell margin on every side.
pub fn render_svg(spec: &RenderSpec) -> String {
    let path = &spec.path;
    let cs = spec.cell_size.max(1) as i64;
    let h = path.heights();
    let top = h.iter().copied().max().unwrap_or(0).max(0);
    let bottom = h.iter().copied().min().unwrap_or(0).min(0);
    let x = |j: usize| j as i64 * cs;
    let y = |height: i64| (top - height) * cs;

    let width = path.len() as i64 * cs;
    let height = (top - bottom) * cs;
    let margin = cs;
    let (vw, vh) = (width + 2 * margin, height + 2 * margin);
    let font = (cs / 2).max(8);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{vw}\" height=\"{vh}\" viewBox=\"{} {} {vw} {vh}\">",
        -margin, -margin
    );

    let ann = spec.annotations;
    if ann.show_axes {
        let _ = writeln!(
            s,
            "  <line class=\"axis\" x1=\"0\" y1=\"{0}\" x2=\"{width}\" y2=\"{0}\" stroke=\"#999999\" stroke-width=\"1\"/>",
            y(0)
        );
    }

    if let Some(trace) = &spec.trace {
        if ann.show_lines {
            for &level in &trace.reflection_lines {
                let _ = writeln!(
                    s,
                    "  <line class=\"reflection\" x1=\"0\" y1=\"{0}\" x2=\"{width}\" y2=\"{0}\" stroke=\"#1f77b4\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>",
                    y(level)
                );
            }
        }
    }

    let points: Vec<String> = h
        .iter()
        .enumerate()
        .map(|(j, &hj)| format!("{},{}", x(j), y(hj)))
        .collect();
    let _ = writeln!(
        s,
        "  <polyline class=\"path\" points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>",
        points.join(" ")
    );

    if let Some(trace) = &spec.trace {
        // reflected stretches, one per B/G pair
        for (b, g) in trace.b_points.iter().zip(&trace.g_points) {
            if b.index < g.index && g.index <= path.len() {
                let pts: Vec<String> = (b.index..=g.index)
                    .map(|j| format!("{},{}", x(j), y(h[j])))
                    .collect();
                let _ = writeln!(
                    s,
                    "  <polyline class=\"segment\" points=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" stroke-opacity=\"0.6\"/>",
                    pts.join(" ")
                );
            }
        }
        let r = (cs / 5).max(2);
        let marks = [
            (ann.show_peaks, "B", &trace.b_points),
            (ann.label_points, "G", &trace.g_points),
        ];
        for (enabled, name, pts) in marks {
            if !enabled {
                continue;
            }
            for (i, pt) in pts.iter().enumerate() {
                if !on_path(&h, pt) {
                    continue;
                }
                let (cx, cy) = (x(pt.index), y(pt.height));
                let _ = writeln!(s, "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\"/>");
                if ann.label_points {
                    let _ = writeln!(
                        s,
                        "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"{font}\">{name}{}</text>",
                        cx + r,
                        cy - r,
                        i + 1
                    );
                }
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::{phi, phi_inverse};

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn ascii_smallest_paths() {
        assert_eq!(render_ascii(&RenderSpec::new(p("UD"))).unwrap(), "/\\\n");
        assert_eq!(render_ascii(&RenderSpec::new(p("UU"))).unwrap(), " /\n/\n");
        assert_eq!(render_ascii(&RenderSpec::new(p(""))).unwrap(), "");
    }

    #[test]
    fn ascii_dips_below_baseline() {
        assert_eq!(render_ascii(&RenderSpec::new(p("UDDU"))).unwrap(), "/\\\n  \\/\n");
    }

    #[test]
    fn ascii_marks_forward_peaks() {
        let q = p("UDUUDD");
        let (_, trace) = phi(&q).unwrap();
        let spec = RenderSpec::new(q).with_trace(trace);
        let out = render_ascii(&spec).unwrap();
        let b_cols: Vec<usize> = out
            .lines()
            .flat_map(|l| l.char_indices().filter(|(_, c)| *c == 'B').map(|(i, _)| i))
            .collect();
        let mut sorted = b_cols.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 4], "{out}");
        assert!(out.contains('-'));
    }

    #[test]
    fn ascii_rejects_long_paths() {
        let long = LatticePath::repeat(Step::Up, 121);
        assert!(matches!(render_ascii(&RenderSpec::new(long)), Err(Error::Range(_))));
    }

    #[test]
    fn svg_coordinates() {
        let svg = render_svg(&RenderSpec::new(p("UD")).cell_size(10));
        assert!(svg.contains("points=\"0,10 10,0 20,10\""), "{svg}");
        let empty = render_svg(&RenderSpec::new(p("")));
        // a single vertex: the start point
        assert!(empty.contains("points=\"0,0\""), "{empty}");
        assert!(empty.ends_with("</svg>\n"));
    }

    #[test]
    fn svg_inverse_trace_line() {
        let q = p("UUDUUU");
        let (_, trace) = phi_inverse(&q).unwrap();
        let svg = render_svg(&RenderSpec::new(q).with_trace(trace).cell_size(10));
        // level 2 with top = 4 sits at pixel row 20
        assert!(svg.contains("class=\"reflection\" x1=\"0\" y1=\"20\" x2=\"60\" y2=\"20\""), "{svg}");
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains(">B1</text>"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let q = p("UDUUDDUDDU");
        let (_, trace) = phi(&q).unwrap();
        let spec = RenderSpec::new(q).with_trace(trace);
        assert_eq!(render_svg(&spec), render_svg(&spec.clone()));
        assert_eq!(render_ascii(&spec).unwrap(), render_ascii(&spec.clone()).unwrap());
    }
}
