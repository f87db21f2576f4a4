//! Ext over the Steenrod algebra: resolutions, charts and renderings.

mod chart;
mod render;
mod resolution;

pub use chart::{
    ext_chart, possible_differentials, Cell, ChartClass, ExtChart, PossibleDifferential,
};
pub use render::{render_ascii, render_chart, render_svg, render_table, ChartFormat};
pub use resolution::{resolve, Boundary, ExtError, Resolution, ResolutionStage};
