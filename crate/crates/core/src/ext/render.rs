//! Text and SVG renderings of Ext charts in Adams grading: stem `t - s`
//! horizontal, filtration `s` vertical, `h₀` products as vertical segments.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::ext::chart::{Cell, ChartClass, ExtChart};
use crate::ext::resolution::ExtError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartFormat {
    Ascii,
    Svg,
    /// One `s t dim` line per nonzero cell.
    Table,
}

impl FromStr for ChartFormat {
    type Err = ExtError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" | "text" => Ok(Self::Ascii),
            "svg" => Ok(Self::Svg),
            "table" => Ok(Self::Table),
            other => Err(ExtError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn render_chart(chart: &ExtChart, format: ChartFormat) -> String {
    match format {
        ChartFormat::Ascii => render_ascii(chart),
        ChartFormat::Svg => render_svg(chart),
        ChartFormat::Table => render_table(chart),
    }
}

pub fn render_table(chart: &ExtChart) -> String {
    let mut out = String::new();
    for (s, t, n) in chart.nonzero_cells() {
        writeln!(out, "{s} {t} {n}").unwrap();
    }
    out
}

fn has_h0_at(chart: &ExtChart, s: u32, stem: i32) -> bool {
    chart
        .h0_products()
        .any(|(src, _)| src.s == s && src.stem() == stem)
}

pub fn render_ascii(chart: &ExtChart) -> String {
    let stems: Vec<i32> = (chart.min_stem()..=chart.max_stem()).collect();
    let mut out = String::new();
    writeln!(
        out,
        "Ext^(s,t), s <= {}, t <= {}; columns t-s, '|' = h0, blank = outside window",
        chart.max_s(),
        chart.max_t()
    )
    .unwrap();
    for s in (0..=chart.max_s()).rev() {
        write!(out, "{s:>3} |").unwrap();
        for &stem in &stems {
            let cell = match chart.cell(s, stem + s as i32) {
                Cell::Outside => "   ".to_string(),
                Cell::Dim(0) => "  .".to_string(),
                Cell::Dim(n) => format!("{n:>3}"),
            };
            out.push_str(&cell);
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        if s > 0 {
            let mut line = String::from("    |");
            for &stem in &stems {
                line.push_str(if has_h0_at(chart, s - 1, stem) {
                    "  |"
                } else {
                    "   "
                });
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    writeln!(out, "    +{}", "-".repeat(3 * stems.len())).unwrap();
    write!(out, "     ").unwrap();
    for &stem in &stems {
        write!(out, "{stem:>3}").unwrap();
    }
    out.push('\n');
    out
}

const CELL: f64 = 40.0;
const MARGIN: f64 = 40.0;
const DOT_SPACING: f64 = 8.0;

struct SvgGeometry {
    min_stem: i32,
    max_s: u32,
}

impl SvgGeometry {
    fn centre(&self, s: u32, stem: i32) -> (f64, f64) {
        let x = MARGIN + f64::from(stem - self.min_stem) * CELL + CELL / 2.0;
        let y = MARGIN + f64::from(self.max_s - s) * CELL + CELL / 2.0;
        (x, y)
    }

    fn dot(&self, chart: &ExtChart, c: &ChartClass) -> (f64, f64) {
        let (x, y) = self.centre(c.s, c.stem());
        let n = chart.dim(c.s, c.t) as f64;
        (x + (c.index as f64 - (n - 1.0) / 2.0) * DOT_SPACING, y)
    }
}

pub fn render_svg(chart: &ExtChart) -> String {
    let geo = SvgGeometry {
        min_stem: chart.min_stem(),
        max_s: chart.max_s(),
    };
    let columns = (chart.max_stem() - chart.min_stem() + 1).max(1);
    let width = 2.0 * MARGIN + f64::from(columns) * CELL;
    let height = 2.0 * MARGIN + f64::from(chart.max_s() + 1) * CELL;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    writeln!(out, r##"<g stroke="#dddddd" stroke-width="1">"##).unwrap();
    for i in 0..=columns {
        let x = MARGIN + f64::from(i) * CELL;
        writeln!(
            out,
            r#"<line x1="{x:.1}" y1="{MARGIN:.1}" x2="{x:.1}" y2="{:.1}"/>"#,
            height - MARGIN
        )
        .unwrap();
    }
    for j in 0..=chart.max_s() + 1 {
        let y = MARGIN + f64::from(j) * CELL;
        writeln!(
            out,
            r#"<line x1="{MARGIN:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}"/>"#,
            width - MARGIN
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();

    writeln!(
        out,
        r#"<g font-family="monospace" font-size="12" text-anchor="middle">"#
    )
    .unwrap();
    for stem in chart.min_stem()..=chart.max_stem() {
        let (x, _) = geo.centre(0, stem);
        writeln!(
            out,
            r#"<text x="{x:.1}" y="{:.1}">{stem}</text>"#,
            height - MARGIN + 16.0
        )
        .unwrap();
    }
    for s in 0..=chart.max_s() {
        let (_, y) = geo.centre(s, chart.min_stem());
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}">{s}</text>"#,
            MARGIN - 14.0,
            y + 4.0
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}">t-s</text>"#,
        width / 2.0,
        height - 6.0
    )
    .unwrap();
    writeln!(out, r#"<text x="12" y="{:.1}">s</text>"#, height / 2.0).unwrap();
    writeln!(out, "</g>").unwrap();

    writeln!(out, r#"<g stroke="black" stroke-width="1.5">"#).unwrap();
    for (src, dst) in chart.h0_products() {
        let (x1, y1) = geo.dot(chart, src);
        let (x2, y2) = geo.dot(chart, dst);
        writeln!(
            out,
            r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();

    writeln!(out, r#"<g fill="black">"#).unwrap();
    for (s, t, n) in chart.nonzero_cells() {
        for index in 0..n {
            let (x, y) = geo.dot(chart, &ChartClass { s, t, index });
            writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="3"/>"#).unwrap();
        }
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}
