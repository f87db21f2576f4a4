//! Minimal free resolutions over the Steenrod algebra, computed degreewise.
//!
//! Stage `s` is a free module `F_s` on generators of known internal degree.
//! For each `t`, the kernel of `d_{s-1}` in degree `t` is compared with the
//! image of the stage-`s` generators of lower degree; kernel vectors outside
//! that image become new generators in degree `t`. Kernel vectors are taken in
//! the order returned by [`F2Matrix::kernel_basis`], over a free-module basis
//! ordered by generator and then by the monomial order, so the result is
//! deterministic.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::f2::{EchelonBasis, F2Matrix, F2Vector};
use crate::module::SteenrodModule;
use crate::steenrod::{AdmissibleMonomial, SteenrodAlgebra, SteenrodElement, SteenrodError};

#[derive(Debug, Error)]
pub enum ExtError {
    #[error("window up to internal degree {max_t} needs algebra degree {needed}, cap is {cap}")]
    WindowTooLarge { max_t: i32, needed: i64, cap: u32 },
    #[error("stem {stem} is outside the computed window")]
    StemOutsideWindow { stem: i32 },
    #[error("unknown chart format {0:?} (expected ascii, svg or table)")]
    UnknownFormat(String),
    #[error(transparent)]
    Steenrod(#[from] SteenrodError),
}

/// Where a stage's generators are sent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Boundary {
    /// Stage 0: each generator's image in the module, in its own degree.
    ToModule(Vec<F2Vector>),
    /// Stage `s ≥ 1`: row `i` maps stage-`(s-1)` generator indices to the
    /// Steenrod coefficient of `d(g_i)` on that generator.
    ToFree(Vec<BTreeMap<usize, SteenrodElement>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionStage {
    pub s: u32,
    /// Internal degree of each generator, non-decreasing.
    pub generators: Vec<i32>,
    pub boundary: Boundary,
}

impl ResolutionStage {
    pub fn generators_in_degree(&self, t: i32) -> impl Iterator<Item = usize> + '_ {
        self.generators
            .iter()
            .enumerate()
            .filter(move |(_, &d)| d == t)
            .map(|(i, _)| i)
    }

    /// `d(g_i)` as a row of Steenrod elements (stage `s ≥ 1` only).
    pub fn boundary_row(&self, i: usize) -> Option<&BTreeMap<usize, SteenrodElement>> {
        match &self.boundary {
            Boundary::ToFree(rows) => rows.get(i),
            Boundary::ToModule(_) => None,
        }
    }
}

/// Basis of a free module in one internal degree: `(generator, monomial)`
/// pairs, grouped by generator.
struct FreeDegree {
    entries: Vec<(usize, AdmissibleMonomial)>,
    offsets: BTreeMap<usize, usize>,
}

#[derive(Debug)]
pub struct Resolution<'a> {
    algebra: &'a SteenrodAlgebra,
    module: SteenrodModule,
    stages: Vec<ResolutionStage>,
    max_s: u32,
    max_t: i32,
}

/// Resolves `module` through homological degree `max_s` and internal degree
/// `max_t`. For a truncated module the internal window stops at the module's
/// top degree.
pub fn resolve<'a>(
    algebra: &'a SteenrodAlgebra,
    module: &SteenrodModule,
    max_s: u32,
    max_t: i32,
) -> Result<Resolution<'a>, ExtError> {
    let max_t = if module.is_truncated() {
        max_t.min(module.max_degree())
    } else {
        max_t
    };
    let needed = i64::from(max_t) - i64::from(module.min_degree());
    if needed > i64::from(algebra.degree_cap()) {
        return Err(ExtError::WindowTooLarge {
            max_t,
            needed,
            cap: algebra.degree_cap(),
        });
    }
    let mut res = Resolution {
        algebra,
        module: module.clone(),
        stages: Vec::new(),
        max_s,
        max_t,
    };
    for s in 0..=max_s {
        res.extend_stage(s)?;
    }
    Ok(res)
}

impl<'a> Resolution<'a> {
    pub fn algebra(&self) -> &'a SteenrodAlgebra {
        self.algebra
    }

    pub fn module(&self) -> &SteenrodModule {
        &self.module
    }

    pub fn stages(&self) -> &[ResolutionStage] {
        &self.stages
    }

    pub fn max_s(&self) -> u32 {
        self.max_s
    }

    /// Largest internal degree computed (and valid).
    pub fn max_t(&self) -> i32 {
        self.max_t
    }

    pub fn min_t(&self) -> i32 {
        self.module.min_degree()
    }

    fn free_degree(&self, s: u32, t: i32) -> Result<FreeDegree, ExtError> {
        let stage = &self.stages[s as usize];
        let mut entries = Vec::new();
        let mut offsets = BTreeMap::new();
        for (g, &deg) in stage.generators.iter().enumerate() {
            if deg > t {
                break;
            }
            offsets.insert(g, entries.len());
            let basis = self.algebra.basis((t - deg) as u32)?;
            entries.extend(basis.monomials.iter().map(|m| (g, m.clone())));
        }
        Ok(FreeDegree { entries, offsets })
    }

    /// Dimension of `F_s` in internal degree `t`.
    pub fn free_dim(&self, s: u32, t: i32) -> Result<usize, ExtError> {
        Ok(self.free_degree(s, t)?.entries.len())
    }

    /// Dimension of the target of `d_s` in degree `t`.
    fn target_dim(&self, s: u32, t: i32) -> Result<usize, ExtError> {
        if s == 0 {
            Ok(self.module.dim(t))
        } else {
            self.free_dim(s - 1, t)
        }
    }

    /// `θ · d(g)` as a vector in the target of `d_s` in degree `t`.
    fn apply_boundary(
        &self,
        s: u32,
        g: usize,
        theta: &AdmissibleMonomial,
        t: i32,
        target: Option<&FreeDegree>,
    ) -> Result<F2Vector, ExtError> {
        let stage = &self.stages[s as usize];
        match &stage.boundary {
            Boundary::ToModule(images) => {
                Ok(self
                    .module
                    .act_monomial(theta, stage.generators[g], &images[g]))
            }
            Boundary::ToFree(rows) => {
                let target = target.expect("free target layout");
                let lower = &self.stages[s as usize - 1];
                let mut v = F2Vector::zeros(target.entries.len());
                for (&j, coeff) in &rows[g] {
                    let offset = target.offsets[&j];
                    let basis = self.algebra.basis((t - lower.generators[j]) as u32)?;
                    for m in coeff.terms() {
                        for p in self.algebra.multiply_monomials(theta, m)?.iter() {
                            v.toggle(offset + basis.index_of(p).expect("product in basis"));
                        }
                    }
                }
                Ok(v)
            }
        }
    }

    /// Images under `d_s` of the degree-`t` basis of `F_s`, restricted to
    /// generators of degree `< limit` (all generators when `limit` is `None`).
    fn boundary_images(
        &self,
        s: u32,
        t: i32,
        limit: Option<i32>,
    ) -> Result<Vec<F2Vector>, ExtError> {
        let source = self.free_degree(s, t)?;
        let target = if s > 0 {
            Some(self.free_degree(s - 1, t)?)
        } else {
            None
        };
        let stage = &self.stages[s as usize];
        source
            .entries
            .iter()
            .filter(|(g, _)| limit.is_none_or(|l| stage.generators[*g] < l))
            .map(|(g, theta)| self.apply_boundary(s, *g, theta, t, target.as_ref()))
            .collect()
    }

    /// Matrix of `d_s` in degree `t`, column convention.
    pub fn boundary_matrix(&self, s: u32, t: i32) -> Result<F2Matrix, ExtError> {
        let images = self.boundary_images(s, t, None)?;
        let rows = F2Matrix::from_row_vectors(&images, self.target_dim(s, t)?)
            .expect("images have the target dimension");
        Ok(rows.transpose())
    }

    fn extend_stage(&mut self, s: u32) -> Result<(), ExtError> {
        let initial = if s == 0 {
            Boundary::ToModule(Vec::new())
        } else {
            Boundary::ToFree(Vec::new())
        };
        self.stages.push(ResolutionStage {
            s,
            generators: Vec::new(),
            boundary: initial,
        });

        for t in self.module.min_degree()..=self.max_t {
            // Vectors that must be hit in degree t.
            let (dim, targets): (usize, Vec<F2Vector>) = if s == 0 {
                let dim = self.module.dim(t);
                (dim, (0..dim).map(|i| F2Vector::unit(dim, i)).collect())
            } else {
                let d = self.boundary_matrix(s - 1, t)?;
                (d.cols(), d.kernel_basis())
            };
            if targets.is_empty() {
                continue;
            }
            let mut image = EchelonBasis::new(dim);
            for v in self.boundary_images(s, t, Some(t))? {
                image.insert(&v);
            }
            let mut fresh = Vec::new();
            for v in targets {
                if image.insert(&v) {
                    fresh.push(v);
                }
            }
            if fresh.is_empty() {
                continue;
            }
            let layout = if s > 0 {
                Some(self.free_degree(s - 1, t)?)
            } else {
                None
            };
            let stage = self.stages.last_mut().expect("stage pushed above");
            for v in fresh {
                stage.generators.push(t);
                match (&mut stage.boundary, layout.as_ref()) {
                    (Boundary::ToModule(images), _) => images.push(v),
                    (Boundary::ToFree(rows), Some(layout)) => {
                        rows.push(vector_to_row(&v, layout));
                    }
                    (Boundary::ToFree(_), None) => unreachable!("free stages have a layout"),
                }
            }
        }
        Ok(())
    }

    /// Violations of exactness, as `(s, t)` pairs where `im d_{s+1} ≠ ker d_s`
    /// (with `s = -1` standing for surjectivity onto the module). Only stages
    /// with a computed successor are checked.
    pub fn exactness_failures(&self) -> Result<Vec<(i64, i32)>, ExtError> {
        let mut failures = Vec::new();
        for t in self.module.min_degree()..=self.max_t {
            if self.boundary_matrix(0, t)?.rank() != self.module.dim(t) {
                failures.push((-1, t));
            }
            for s in 0..self.max_s {
                let d = self.boundary_matrix(s, t)?;
                let kernel_dim = d.cols() - d.rank();
                let image_rank = self.boundary_matrix(s + 1, t)?.rank();
                let composite_zero = d
                    .mul(&self.boundary_matrix(s + 1, t)?)
                    .is_ok_and(|m| m.is_zero());
                if kernel_dim != image_rank || !composite_zero {
                    failures.push((i64::from(s), t));
                }
            }
        }
        Ok(failures)
    }

    /// Whether every boundary coefficient lies in the augmentation ideal.
    pub fn is_minimal(&self) -> bool {
        self.stages.iter().all(|stage| match &stage.boundary {
            Boundary::ToModule(_) => true,
            Boundary::ToFree(rows) => rows
                .iter()
                .flat_map(|r| r.values())
                .all(|e| !e.contains(&AdmissibleMonomial::unit())),
        })
    }

    /// Number of stage-`s` generators in internal degree `t`.
    pub fn generator_count(&self, s: u32, t: i32) -> usize {
        self.stages
            .get(s as usize)
            .map_or(0, |st| st.generators_in_degree(t).count())
    }
}

fn vector_to_row(v: &F2Vector, layout: &FreeDegree) -> BTreeMap<usize, SteenrodElement> {
    let mut row: BTreeMap<usize, SteenrodElement> = BTreeMap::new();
    for i in v.ones() {
        let (g, m) = &layout.entries[i];
        row.entry(*g)
            .or_insert_with(|| SteenrodElement::zero(m.degree()))
            .toggle(m.clone());
    }
    row.retain(|_, e| !e.is_zero());
    row
}
