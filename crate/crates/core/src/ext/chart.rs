//! Ext charts (Adams E2 pages) read off a minimal resolution.

use std::collections::{BTreeMap, BTreeSet};

use crate::ext::resolution::{ExtError, Resolution};
use crate::f2::F2Matrix;
use crate::steenrod::AdmissibleMonomial;

/// A class in the chart: `index`-th generator of internal degree `t` at
/// stage `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChartClass {
    pub s: u32,
    pub t: i32,
    pub index: usize,
}

impl ChartClass {
    pub fn stem(&self) -> i32 {
        self.t - self.s as i32
    }
}

/// What the chart knows about one `(s, t)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Dim(usize),
    /// Not determined by the computed window.
    Outside,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtChart {
    max_s: u32,
    min_t: i32,
    max_t: i32,
    dims: BTreeMap<(u32, i32), usize>,
    h0: BTreeSet<(ChartClass, ChartClass)>,
}

/// Reads dimensions and `h₀` multiplications off a minimal resolution.
///
/// `h₀ · g*` is the sum of the duals of generators `g'` whose boundary
/// contains `Sq¹ g`.
pub fn ext_chart(res: &Resolution<'_>) -> ExtChart {
    let mut dims = BTreeMap::new();
    let mut local = Vec::new();
    for stage in res.stages() {
        let mut counter: BTreeMap<i32, usize> = BTreeMap::new();
        let mut idx = Vec::with_capacity(stage.generators.len());
        for &t in &stage.generators {
            let slot = counter.entry(t).or_default();
            idx.push(*slot);
            *slot += 1;
        }
        for (t, n) in counter {
            dims.insert((stage.s, t), n);
        }
        local.push(idx);
    }

    let sq1 = AdmissibleMonomial::new(vec![1]).expect("Sq1 is admissible");
    let mut h0 = BTreeSet::new();
    for stage in res.stages().iter().skip(1) {
        let lower = &res.stages()[stage.s as usize - 1];
        for (i, &t) in stage.generators.iter().enumerate() {
            let row = stage.boundary_row(i).expect("free stage");
            for (&j, coeff) in row {
                if lower.generators[j] == t - 1 && coeff.contains(&sq1) {
                    let source = ChartClass {
                        s: lower.s,
                        t: t - 1,
                        index: local[lower.s as usize][j],
                    };
                    let target = ChartClass {
                        s: stage.s,
                        t,
                        index: local[stage.s as usize][i],
                    };
                    h0.insert((source, target));
                }
            }
        }
    }

    ExtChart {
        max_s: res.max_s(),
        min_t: res.min_t(),
        max_t: res.max_t(),
        dims,
        h0,
    }
}

impl ExtChart {
    pub fn max_s(&self) -> u32 {
        self.max_s
    }

    pub fn min_t(&self) -> i32 {
        self.min_t
    }

    pub fn max_t(&self) -> i32 {
        self.max_t
    }

    pub fn cell(&self, s: u32, t: i32) -> Cell {
        if s > self.max_s || t > self.max_t {
            Cell::Outside
        } else {
            Cell::Dim(self.dim(s, t))
        }
    }

    /// Dimension of `Ext^{s,t}`; zero outside the window as well, so check
    /// [`ExtChart::cell`] when that distinction matters.
    pub fn dim(&self, s: u32, t: i32) -> usize {
        self.dims.get(&(s, t)).copied().unwrap_or(0)
    }

    /// Nonzero cells as `(s, t, dim)`, sorted.
    pub fn nonzero_cells(&self) -> impl Iterator<Item = (u32, i32, usize)> + '_ {
        self.dims.iter().map(|(&(s, t), &n)| (s, t, n))
    }

    pub fn h0_products(&self) -> impl Iterator<Item = &(ChartClass, ChartClass)> {
        self.h0.iter()
    }

    /// Matrix of `h₀ : Ext^{s,t} → Ext^{s+1,t+1}`, or `None` when the target
    /// cell lies outside the window.
    pub fn h0_matrix(&self, s: u32, t: i32) -> Option<F2Matrix> {
        if self.cell(s + 1, t + 1) == Cell::Outside {
            return None;
        }
        let mut m = F2Matrix::zeros(self.dim(s, t), self.dim(s + 1, t + 1));
        let lo = ChartClass { s, t, index: 0 };
        for (src, dst) in self.h0.range((lo, lo)..) {
            if src.s != s || src.t != t {
                break;
            }
            m.set(src.index, dst.index, true);
        }
        Some(m)
    }

    /// `dim Ext^{s, s+stem}` for every `s` whose cell lies in the window.
    pub fn stem_dims(&self, stem: i32) -> Result<Vec<(u32, usize)>, ExtError> {
        let dims: Vec<_> = (0..=self.max_s)
            .filter(|&s| stem + s as i32 <= self.max_t)
            .map(|s| (s, self.dim(s, stem + s as i32)))
            .collect();
        if dims.is_empty() || stem < self.min_t - self.max_s as i32 {
            return Err(ExtError::StemOutsideWindow { stem });
        }
        Ok(dims)
    }

    pub fn stem_total(&self, stem: i32, max_s: u32) -> Result<usize, ExtError> {
        Ok(self
            .stem_dims(stem)?
            .into_iter()
            .filter(|&(s, _)| s <= max_s)
            .map(|(_, n)| n)
            .sum())
    }

    /// Largest stem with a cell in the window.
    pub fn max_stem(&self) -> i32 {
        self.max_t
    }

    /// Smallest stem that can carry a class.
    pub fn min_stem(&self) -> i32 {
        self.min_t
    }
}

/// An Adams differential `d_r : E^{s,t} → E^{s+r,t+r-1}` that degree
/// bookkeeping and `h₀`-linearity on the E2 page do not exclude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PossibleDifferential {
    pub r: u32,
    pub source: (u32, i32),
    pub target: (u32, i32),
}

impl PossibleDifferential {
    pub fn source_stem(&self) -> i32 {
        self.source.1 - self.source.0 as i32
    }

    pub fn target_stem(&self) -> i32 {
        self.target.1 - self.target.0 as i32
    }
}

fn is_injective(m: &F2Matrix) -> bool {
    m.rank() == m.rows()
}

/// Lists the differentials with source and target in `s ≤ window_s` whose
/// cells are both nonzero, dropping those excluded by `h₀`-linearity: if
/// `h₀` kills the whole source group and acts injectively on the target
/// group, any `d_r` between them vanishes. `h₀` data needs row `s + 1`, so a
/// chart computed one stage past `window_s` gives the sharpest report.
///
/// The `h₀` argument uses E2-page multiplications; it is a sparseness
/// screen, not a computation of higher pages.
pub fn possible_differentials(chart: &ExtChart, window_s: u32) -> Vec<PossibleDifferential> {
    let window_s = window_s.min(chart.max_s);
    let mut out = Vec::new();
    for (s, t, _) in chart.nonzero_cells() {
        if s > window_s {
            continue;
        }
        for r in 2..=window_s.saturating_sub(s) {
            let target = (s + r, t + r as i32 - 1);
            if target.1 > chart.max_t || chart.dim(target.0, target.1) == 0 {
                continue;
            }
            let source_killed = chart.h0_matrix(s, t).is_some_and(|m| m.is_zero());
            let target_injective = chart
                .h0_matrix(target.0, target.1)
                .is_some_and(|m| is_injective(&m));
            if source_killed && target_injective {
                continue;
            }
            out.push(PossibleDifferential {
                r,
                source: (s, t),
                target,
            });
        }
    }
    out
}
