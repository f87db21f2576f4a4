//! Stability-range arithmetic for spaces of non-singular sections.

mod range;
mod series;
mod zones;

use thiserror::Error;

pub use range::{
    big_n, jet_amp_power, p_torsion_stable, stability_bound, stable_range_for, RangeInput,
    RangeReport,
};
pub use series::{projective_space_betti, stable_series, GeneratorRecord, Parity, PoincareSeries};
pub use zones::{e1_support, render_e1_zones, Zone, ZoneFormat, ZoneParams};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RangeError {
    #[error("excess codimension e = {e} is below 2; the condition is not admissible")]
    Inadmissible { e: i64 },
    #[error("({s}, {t}) is outside the second quadrant (need s <= -1, t >= 0)")]
    OutOfQuadrant { s: i64, t: i64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid {name}: {value}")]
    InvalidArgument { name: &'static str, value: i64 },
}
