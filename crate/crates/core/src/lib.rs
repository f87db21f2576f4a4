//! Mod 2 Steenrod algebra computations, characteristic classes of jet
//! bundles, Thom modules, Ext charts and stability-range arithmetic for
//! spaces of non-singular holomorphic sections.

pub mod charclasses;
pub mod cohomology;
pub mod ext;
pub mod f2;
pub mod module;
pub mod repro;
pub mod stablerange;
pub mod steenrod;
pub mod thom;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    F2(#[from] f2::F2Error),
    #[error(transparent)]
    Steenrod(#[from] steenrod::SteenrodError),
    #[error(transparent)]
    Cohomology(#[from] cohomology::CohomologyError),
    #[error(transparent)]
    CharClass(#[from] charclasses::CharClassError),
    #[error(transparent)]
    Module(#[from] module::ModuleError),
    #[error(transparent)]
    Thom(#[from] thom::ThomError),
    #[error(transparent)]
    Ext(#[from] ext::ExtError),
    #[error(transparent)]
    Range(#[from] stablerange::RangeError),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
}
