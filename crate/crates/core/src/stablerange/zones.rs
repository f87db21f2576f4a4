//! Support of the first page of the Vassiliev spectral sequence.
//!
//! Column `s = -j` for `1 ≤ j ≤ N+1` can be nonzero only for
//! `j·e ≤ t ≤ 2j·rk`; the last column `s = -N-2` vanishes below
//! `t = (N+1)e`; columns further left are empty.

use std::fmt::Write as _;
use std::str::FromStr;

use super::range::{big_n, RangeInput};
use super::RangeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZoneParams {
    pub big_n: i64,
    pub e: i64,
    /// Upper cutoff `t ≤ 2|s|·rk`; `None` leaves the columns unbounded above.
    pub rk: Option<i64>,
}

impl ZoneParams {
    pub fn new(big_n: i64, e: i64, rk: Option<i64>) -> Result<Self, RangeError> {
        if big_n < 0 {
            return Err(RangeError::InvalidArgument {
                name: "N",
                value: big_n,
            });
        }
        if e < 2 {
            return Err(RangeError::Inadmissible { e });
        }
        if let Some(rk) = rk.filter(|&rk| rk < 1) {
            return Err(RangeError::InvalidArgument {
                name: "rk",
                value: rk,
            });
        }
        Ok(Self { big_n, e, rk })
    }

    pub fn from_input(inp: &RangeInput) -> Result<Self, RangeError> {
        Self::new(big_n(inp.amp, inp.r), inp.excess(), Some(inp.rk))
    }

    /// The leftmost column that can be nonzero.
    pub fn last_column(&self) -> i64 {
        -self.big_n - 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zone {
    Allowed,
    Forbidden,
    LastColumnVanishing,
    /// Last column at or above the vanishing threshold: not determined.
    Outside,
}

impl Zone {
    fn glyph(self) -> char {
        match self {
            Zone::Allowed => '#',
            Zone::Forbidden => '.',
            Zone::LastColumnVanishing => '_',
            Zone::Outside => '?',
        }
    }

    fn fill(self) -> &'static str {
        match self {
            Zone::Allowed => "#b5e655",
            Zone::Forbidden => "#ffffff",
            Zone::LastColumnVanishing => "#dce9f7",
            Zone::Outside => "#e8f5cc",
        }
    }
}

pub fn e1_support(s: i64, t: i64, params: &ZoneParams) -> Result<Zone, RangeError> {
    if s >= 0 || t < 0 {
        return Err(RangeError::OutOfQuadrant { s, t });
    }
    let last = params.last_column();
    let zone = if s < last {
        Zone::Forbidden
    } else if s == last {
        if t < (params.big_n + 1) * params.e {
            Zone::LastColumnVanishing
        } else {
            Zone::Outside
        }
    } else {
        let j = -s;
        let above = t >= j * params.e;
        let below = params.rk.is_none_or(|rk| t <= 2 * j * rk);
        if above && below {
            Zone::Allowed
        } else {
            Zone::Forbidden
        }
    };
    Ok(zone)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZoneFormat {
    Ascii,
    Svg,
}

impl FromStr for ZoneFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" | "text" => Ok(Self::Ascii),
            "svg" => Ok(Self::Svg),
            other => Err(format!("unknown format {other:?} (expected ascii or svg)")),
        }
    }
}

const FIGURE_NOTE: &str =
    "note: the support here is t >= |s|e; a schematic colouring by t > 2|s|-2 is one degree wider when e = 2";

pub fn render_e1_zones(params: &ZoneParams, t_max: u32, format: ZoneFormat) -> String {
    let columns: Vec<i64> = (params.last_column() - 1..=-1).collect();
    let zone = |s: i64, t: u32| e1_support(s, i64::from(t), params).expect("second quadrant");
    match format {
        ZoneFormat::Ascii => {
            let mut out = String::new();
            writeln!(
                out,
                "E1 support, N = {}, e = {}{}",
                params.big_n,
                params.e,
                params
                    .rk
                    .map(|rk| format!(", rk = {rk}"))
                    .unwrap_or_default()
            )
            .unwrap();
            for t in (0..=t_max).rev() {
                write!(out, "{t:>4} |").unwrap();
                for &s in &columns {
                    write!(out, "  {}", zone(s, t).glyph()).unwrap();
                }
                out.push('\n');
            }
            writeln!(out, "     +{}", "-".repeat(3 * columns.len())).unwrap();
            write!(out, "      ").unwrap();
            for &s in &columns {
                write!(out, "{s:>3}").unwrap();
            }
            out.push('\n');
            writeln!(
                out,
                "# possibly nonzero, . zero, _ last column below (N+1)e, ? last column undetermined"
            )
            .unwrap();
            writeln!(out, "{FIGURE_NOTE}").unwrap();
            out
        }
        ZoneFormat::Svg => {
            const CELL: i64 = 24;
            const MARGIN: i64 = 40;
            let width = 2 * MARGIN + CELL * columns.len() as i64;
            let height = 2 * MARGIN + CELL * (i64::from(t_max) + 1);
            let mut out = String::new();
            writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
            writeln!(
                out,
                r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
            )
            .unwrap();
            writeln!(out, "<!-- {FIGURE_NOTE} -->").unwrap();
            writeln!(out, r##"<g stroke="#999999" stroke-width="0.5">"##).unwrap();
            for (i, &s) in columns.iter().enumerate() {
                for t in 0..=t_max {
                    let x = MARGIN + CELL * i as i64;
                    let y = MARGIN + CELL * (i64::from(t_max) - i64::from(t));
                    writeln!(
                        out,
                        r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}"/>"#,
                        zone(s, t).fill()
                    )
                    .unwrap();
                }
            }
            writeln!(out, "</g>").unwrap();
            writeln!(
                out,
                r#"<g font-family="monospace" font-size="11" text-anchor="middle">"#
            )
            .unwrap();
            for (i, s) in columns.iter().enumerate() {
                let x = MARGIN + CELL * i as i64 + CELL / 2;
                writeln!(
                    out,
                    r#"<text x="{x}" y="{}">{s}</text>"#,
                    height - MARGIN + 14
                )
                .unwrap();
            }
            for t in 0..=t_max {
                let y = MARGIN + CELL * (i64::from(t_max) - i64::from(t)) + CELL / 2 + 4;
                writeln!(out, r#"<text x="{}" y="{y}">{t}</text>"#, MARGIN - 12).unwrap();
            }
            writeln!(out, "</g>").unwrap();
            writeln!(out, "</svg>").unwrap();
            out
        }
    }
}
