//! The parity computation for degree-two homology of non-singular sections
//! of `O(d)` on `CP²`: Stiefel–Whitney class, Thom module, Ext chart, and a
//! reading of stem 3.

use std::fmt;

use crate::charclasses::{sw_virtual, TotalClass, VIRTUAL_JET_RANK};
use crate::cohomology::{Coefficients, TruncatedRing};
use crate::ext::{ext_chart, possible_differentials, resolve, ExtChart, PossibleDifferential};
use crate::module::SteenrodModule;
use crate::steenrod::SteenrodAlgebra;
use crate::thom::build_thom_module;
use crate::Error;

pub const WINDOW_S: u32 = 8;
pub const WINDOW_T: i32 = 14;
pub const STEM: i32 = 3;
pub const MIN_DEGREE: i64 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Z2,
    Zero,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Z2 => "Z/2",
            Verdict::Zero => "0",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ParityReport {
    pub d: i64,
    pub w: TotalClass,
    pub module: SteenrodModule,
    pub chart: ExtChart,
    /// `(s, dim)` along the stem, `s ≤ WINDOW_S`.
    pub stem_dims: Vec<(u32, usize)>,
    pub stem_total: usize,
    /// Differentials into or out of the stem that survive the screen.
    pub differentials: Vec<PossibleDifferential>,
    pub verdict: Verdict,
}

pub fn parity_h2(algebra: &SteenrodAlgebra, d: i64) -> Result<ParityReport, Error> {
    if d < MIN_DEGREE {
        return Err(Error::Hypothesis(format!(
            "degree d = {d} must be at least {MIN_DEGREE}"
        )));
    }
    let ring = TruncatedRing::projective_space(2, Coefficients::F2);
    let w = sw_virtual(2, d)?;
    let module = build_thom_module(&ring, &w, VIRTUAL_JET_RANK as i32)?;
    // One extra stage so that h0 is known on every row of the window.
    let res = resolve(algebra, &module, WINDOW_S + 1, WINDOW_T)?;
    let chart = ext_chart(&res);
    let stem_dims: Vec<_> = chart
        .stem_dims(STEM)?
        .into_iter()
        .filter(|&(s, _)| s <= WINDOW_S)
        .collect();
    let stem_total = stem_dims.iter().map(|&(_, n)| n).sum();
    let differentials: Vec<_> = possible_differentials(&chart, WINDOW_S)
        .into_iter()
        .filter(|p| p.source_stem() == STEM || p.target_stem() == STEM)
        .collect();
    let verdict = match stem_total {
        0 => Verdict::Zero,
        1 if differentials.is_empty() => Verdict::Z2,
        _ => Verdict::Inconclusive,
    };
    Ok(ParityReport {
        d,
        w,
        module,
        chart,
        stem_dims,
        stem_total,
        differentials,
        verdict,
    })
}
