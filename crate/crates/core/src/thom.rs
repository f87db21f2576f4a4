//! Mod 2 cohomology of Thom spectra over truncated polynomial rings.
//!
//! Classes are `yU` for `y` a monomial of the base and `U` the Thom class,
//! and squares act through `Sq^k(yU) = Σ_{i+j=k} Sq^i(y) w_j U`.

use thiserror::Error;

use crate::charclasses::TotalClass;
use crate::cohomology::{sq, Coefficients, CohomologyError, TruncatedRing};
use crate::f2::F2Matrix;
use crate::module::{ModuleError, SteenrodModule};

#[derive(Debug, Error)]
pub enum ThomError {
    #[error("Stiefel-Whitney class lives in {found}, expected {expected}")]
    WrongRing {
        expected: TruncatedRing,
        found: TruncatedRing,
    },
    #[error("Thom modules are built over F2 coefficients, ring is {0}")]
    NotModTwo(TruncatedRing),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

fn label(power: u32) -> String {
    match power {
        0 => "U".to_string(),
        1 => "xU".to_string(),
        p => format!("x^{p}U"),
    }
}

/// `H*(X^V; F2)` as a module over the Steenrod algebra, for `X` with
/// cohomology `ring` and `V` with total Stiefel–Whitney class `w` and Thom
/// class in degree `thom_degree`.
pub fn build_thom_module(
    ring: &TruncatedRing,
    w: &TotalClass,
    thom_degree: i32,
) -> Result<SteenrodModule, ThomError> {
    if ring.coefficients() != Coefficients::F2 {
        return Err(ThomError::NotModTwo(*ring));
    }
    if w.ring() != *ring {
        return Err(ThomError::WrongRing {
            expected: *ring,
            found: w.ring(),
        });
    }
    let g = ring.generator_degree();
    let top = ring.top_degree();
    let mut basis = vec![Vec::new(); top as usize + 1];
    for p in 0..=ring.truncation() {
        basis[(p * g) as usize].push(label(p));
    }
    let mut module = SteenrodModule::new(thom_degree, basis, false)?;

    for p in 0..=ring.truncation() {
        let y = ring.x_power(p);
        let source = p * g;
        for k in 1..=(top - source) {
            let mut image = ring.zero();
            for i in 0..=k {
                let term = sq(i, &y)?.cup(&w.piece_in_degree(k - i))?;
                image = image.add(&term)?;
            }
            let target = source + k;
            if !target.is_multiple_of(g) {
                debug_assert!(image.is_zero());
                continue;
            }
            let bit = image.coeff(target / g);
            let mut matrix = F2Matrix::zeros(1, 1);
            matrix.set(0, 0, bit.rem_euclid(2) == 1);
            module.set_action(k, thom_degree + source as i32, matrix)?;
        }
    }
    Ok(module)
}

/// The Thom module of `J¹O(d) - T CP^n`, with Thom class in degree 2.
pub fn jet_thom_module(n: u32, d: i64) -> Result<SteenrodModule, crate::Error> {
    let ring = TruncatedRing::projective_space(n, Coefficients::F2);
    let w = crate::charclasses::sw_virtual(n, d)?;
    Ok(build_thom_module(
        &ring,
        &w,
        crate::charclasses::VIRTUAL_JET_RANK as i32,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charclasses::sw_virtual;
    use crate::f2::F2Vector;
    use crate::module::verify_module;
    use crate::steenrod::SteenrodAlgebra;

    fn cp2() -> TruncatedRing {
        TruncatedRing::projective_space(2, Coefficients::F2)
    }

    fn sq_bit(m: &SteenrodModule, k: u32, t: i32) -> bool {
        m.act(k, t, &F2Vector::unit(1, 0)).get(0)
    }

    #[test]
    fn even_twist_on_cp2() {
        let m = build_thom_module(&cp2(), &sw_virtual(2, 6).unwrap(), 2).unwrap();
        assert_eq!(m.labels(2), ["U"]);
        assert_eq!(m.labels(4), ["xU"]);
        assert_eq!(m.labels(6), ["x^2U"]);
        assert!(sq_bit(&m, 2, 4));
        assert!(!sq_bit(&m, 2, 2));
        assert!(!sq_bit(&m, 4, 2));
        assert_eq!(m.total_dimension(), 3);
    }

    #[test]
    fn odd_twist_on_cp2() {
        let m = build_thom_module(&cp2(), &sw_virtual(2, 7).unwrap(), 2).unwrap();
        assert!(sq_bit(&m, 2, 2));
        assert!(!sq_bit(&m, 2, 4));
        assert!(!sq_bit(&m, 4, 2));
    }

    #[test]
    fn both_parities_verify() {
        let a = SteenrodAlgebra::default();
        for d in [6, 7] {
            let m = jet_thom_module(2, d).unwrap();
            assert!(verify_module(&m, &a).unwrap().is_consistent());
        }
    }

    #[test]
    fn ring_checks() {
        let w = sw_virtual(2, 6).unwrap();
        let other = TruncatedRing::projective_space(3, Coefficients::F2);
        assert!(matches!(
            build_thom_module(&other, &w, 2),
            Err(ThomError::WrongRing { .. })
        ));
        let z = TruncatedRing::projective_space(2, Coefficients::Integer);
        assert!(matches!(
            build_thom_module(&z, &w, 2),
            Err(ThomError::NotModTwo(_))
        ));
    }
}
