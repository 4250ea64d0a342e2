//! Statistics and figure data computed from result records.
//!
//! A cell is one (graph label, page count, combo) group. [`summarize`] gives
//! per-cell statistics, [`tile_diagram`] picks the best-mean combo per
//! (graph, pages) and renders a CSV table plus a self-contained SVG, and
//! [`relative_lines`] divides each combo's mean by a baseline combo's mean.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::ResultRecord;
use crate::seeds::hash_name;

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub graph: String,
    pub k: usize,
    pub combo: String,
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub min: u64,
    pub max: u64,
    pub stddev: f64,
}

fn cells(records: &[ResultRecord]) -> BTreeMap<(String, usize, String), Vec<u64>> {
    let mut map: BTreeMap<(String, usize, String), Vec<u64>> = BTreeMap::new();
    for r in records {
        map.entry((r.graph_base().to_string(), r.k, r.combo_label()))
            .or_default()
            .push(r.crossings);
    }
    map
}

/// Per-cell statistics, in deterministic (graph, k, combo) order. Cells with
/// no records are absent rather than zero-filled.
pub fn summarize(records: &[ResultRecord]) -> Vec<Summary> {
    cells(records)
        .into_iter()
        .map(|((graph, k, combo), mut xs)| {
            xs.sort_unstable();
            let count = xs.len();
            let mean = xs.iter().sum::<u64>() as f64 / count as f64;
            let median = if count % 2 == 1 {
                xs[count / 2] as f64
            } else {
                (xs[count / 2 - 1] + xs[count / 2]) as f64 / 2.0
            };
            let var = if count > 1 {
                xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (count - 1) as f64
            } else {
                0.0
            };
            Summary {
                graph,
                k,
                combo,
                count,
                mean,
                median,
                min: xs[0],
                max: xs[count - 1],
                stddev: var.sqrt(),
            }
        })
        .collect()
}

pub fn summary_csv(summaries: &[Summary]) -> String {
    let mut s = String::from("graph,k,combo,count,mean,median,min,max,stddev\n");
    for c in summaries {
        let _ = writeln!(
            s,
            "{},{},{},{},{:.4},{:.4},{},{},{:.4}",
            c.graph, c.k, c.combo, c.count, c.mean, c.median, c.min, c.max, c.stddev
        );
    }
    s
}

/// Winner of one (graph, pages) tile.
#[derive(Debug, Clone, PartialEq)]
pub struct TileCell {
    pub graph: String,
    pub k: usize,
    pub combo: String,
    pub mean: f64,
    /// Another combo reached exactly the same mean; the lexicographically
    /// first name is reported.
    pub tied: bool,
}

#[derive(Debug, Clone)]
pub struct TileDiagram {
    pub cells: Vec<TileCell>,
    pub csv: String,
    pub svg: String,
}

/// Best-mean combo per (graph, pages) cell, as data and as a figure.
pub fn tile_diagram(records: &[ResultRecord]) -> TileDiagram {
    let mut best: BTreeMap<(String, usize), TileCell> = BTreeMap::new();
    for s in summarize(records) {
        let key = (s.graph.clone(), s.k);
        match best.get_mut(&key) {
            None => {
                best.insert(
                    key,
                    TileCell {
                        graph: s.graph,
                        k: s.k,
                        combo: s.combo,
                        mean: s.mean,
                        tied: false,
                    },
                );
            }
            Some(cell) => {
                if s.mean < cell.mean {
                    cell.combo = s.combo;
                    cell.mean = s.mean;
                    cell.tied = false;
                } else if s.mean == cell.mean {
                    cell.tied = true;
                    // summarize emits combos in lexicographic order, so the
                    // incumbent already carries the first name.
                }
            }
        }
    }
    let cells: Vec<TileCell> = best.into_values().collect();

    let mut csv = String::from("graph,k,best_combo,mean,tied\n");
    for c in &cells {
        let _ = writeln!(
            csv,
            "{},{},{},{:.4},{}",
            c.graph, c.k, c.combo, c.mean, c.tied
        );
    }

    TileDiagram {
        svg: render_tile_svg(&cells),
        cells,
        csv,
    }
}

fn combo_color(combo: &str) -> String {
    // Stable pastel per combo name.
    let h = hash_name(combo) % 360;
    hsl_to_hex(h as f64, 0.62, 0.72)
}

fn hsl_to_hex(h: f64, s: f64, l: f64) -> String {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let to_byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", to_byte(r), to_byte(g), to_byte(b))
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn render_tile_svg(cells: &[TileCell]) -> String {
    let graphs: BTreeSet<&str> = cells.iter().map(|c| c.graph.as_str()).collect();
    let ks: BTreeSet<usize> = cells.iter().map(|c| c.k).collect();
    let graphs: Vec<&str> = graphs.into_iter().collect();
    let ks: Vec<usize> = ks.into_iter().collect();

    const CELL_W: usize = 150;
    const CELL_H: usize = 26;
    const LEFT: usize = 190;
    const TOP: usize = 30;
    let width = LEFT + ks.len() * CELL_W + 10;
    let height = TOP + graphs.len() * CELL_H + 10;

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         font-family=\"monospace\" font-size=\"11\">\n"
    );
    for (col, k) in ks.iter().enumerate() {
        let x = LEFT + col * CELL_W + CELL_W / 2;
        let _ = writeln!(
            svg,
            "  <text x=\"{x}\" y=\"20\" text-anchor=\"middle\">k={k}</text>"
        );
    }
    for (row, graph) in graphs.iter().enumerate() {
        let y = TOP + row * CELL_H + CELL_H / 2 + 4;
        let _ = writeln!(
            svg,
            "  <text x=\"{}\" y=\"{y}\" text-anchor=\"end\">{}</text>",
            LEFT - 6,
            xml_escape(graph)
        );
    }
    for cell in cells {
        let row = graphs
            .iter()
            .position(|g| *g == cell.graph)
            .expect("row exists");
        let col = ks.iter().position(|k| *k == cell.k).expect("column exists");
        let x = LEFT + col * CELL_W;
        let y = TOP + row * CELL_H;
        let color = combo_color(&cell.combo);
        let _ = writeln!(
            svg,
            "  <rect x=\"{x}\" y=\"{y}\" width=\"{}\" height=\"{}\" fill=\"{color}\" \
             stroke=\"#444\"/>",
            CELL_W - 2,
            CELL_H - 2
        );
        let label = if cell.tied {
            format!("{}*", cell.combo)
        } else {
            cell.combo.clone()
        };
        let _ = writeln!(
            svg,
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            x + (CELL_W - 2) / 2,
            y + CELL_H / 2 + 3,
            xml_escape(&label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// One point of a relative-performance series: `mean(combo)` divided by
/// `mean(baseline)` on the same (graph, pages) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativePoint {
    pub graph: String,
    pub combo: String,
    pub k: usize,
    pub ratio: f64,
}

/// Per-cell means relative to `baseline`. Cells where the baseline is absent
/// or has mean zero are omitted and reported in the warning list.
pub fn relative_lines(
    records: &[ResultRecord],
    baseline: &str,
) -> (Vec<RelativePoint>, Vec<String>) {
    let summaries = summarize(records);
    let mut base: BTreeMap<(String, usize), f64> = BTreeMap::new();
    for s in &summaries {
        if s.combo == baseline {
            base.insert((s.graph.clone(), s.k), s.mean);
        }
    }
    let mut points = Vec::new();
    let mut warnings = Vec::new();
    for s in summaries {
        match base.get(&(s.graph.clone(), s.k)) {
            Some(&b) if b > 0.0 => points.push(RelativePoint {
                graph: s.graph,
                combo: s.combo,
                k: s.k,
                ratio: s.mean / b,
            }),
            Some(_) => warnings.push(format!(
                "baseline {baseline} has mean 0 on {} at k={}; cell omitted",
                s.graph, s.k
            )),
            None => warnings.push(format!(
                "baseline {baseline} missing on {} at k={}; cell omitted",
                s.graph, s.k
            )),
        }
    }
    (points, warnings)
}

pub fn relative_csv(points: &[RelativePoint]) -> String {
    let mut s = String::from("graph,combo,k,ratio\n");
    for p in points {
        let _ = writeln!(s, "{},{},{},{:.4}", p.graph, p.combo, p.k, p.ratio);
    }
    s
}
