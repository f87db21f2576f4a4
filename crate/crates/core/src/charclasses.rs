//! Total Chern and Stiefel–Whitney classes of first jet bundles on projective
//! spaces.
//!
//! On `CP^n`, `J¹O(d) ≅ O(d-1)^{⊕(n+1)}` and `c(TCP^n) = (1+h)^{n+1}`, so
//!
//! ```text
//! c(J¹O(d))          = (1 + (d-1)h)^{n+1}
//! w(J¹O(d) - TCP^n)  = (1 + (d-1)x)^{n+1} · (1 + x)^{-(n+1)}   (mod 2)
//! ```

use std::fmt;

use thiserror::Error;

use crate::cohomology::{Coefficients, CohomologyError, RingElement, TruncatedRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharClassError {
    #[error("total class {0} does not have a unit constant term")]
    NotInvertible(String),
    #[error("{name} must be at least {min}, got {value}")]
    OutOfRange {
        name: &'static str,
        min: i64,
        value: i64,
    },
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// A total characteristic class `1 + c₁ + c₂ + ⋯` (or `w₀ + w₁ + ⋯`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TotalClass {
    class: RingElement,
}

impl TotalClass {
    pub fn new(class: RingElement) -> Result<Self, CharClassError> {
        if class.coeff(0).abs() != 1 {
            return Err(CharClassError::NotInvertible(class.to_string()));
        }
        Ok(Self { class })
    }

    pub fn trivial(ring: TruncatedRing) -> Self {
        Self { class: ring.one() }
    }

    pub fn ring(&self) -> TruncatedRing {
        self.class.ring()
    }

    pub fn as_element(&self) -> &RingElement {
        &self.class
    }

    pub fn is_trivial(&self) -> bool {
        self.class == self.ring().one()
    }

    /// The component in cohomological degree `j`; zero in degrees that are
    /// not multiples of the generator degree.
    pub fn piece_in_degree(&self, j: u32) -> RingElement {
        let g = self.ring().generator_degree();
        if j.is_multiple_of(g) {
            self.class.piece(j / g)
        } else {
            self.ring().zero()
        }
    }

    pub fn product(&self, other: &TotalClass) -> Result<TotalClass, CharClassError> {
        Ok(Self {
            class: self.class.cup(&other.class)?,
        })
    }

    pub fn reduce_mod_two(&self) -> TotalClass {
        Self {
            class: self.class.reduce_mod_two(),
        }
    }
}

impl fmt::Display for TotalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.class.fmt(f)
    }
}

impl fmt::Debug for TotalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TotalClass({:?})", self.class)
    }
}

/// Inverse in the truncated power-series ring.
pub fn invert_total(c: &TotalClass) -> Result<TotalClass, CharClassError> {
    let ring = c.ring();
    let c0 = c.class.coeff(0);
    if c0.abs() != 1 {
        return Err(CharClassError::NotInvertible(c.to_string()));
    }
    // c0 = ±1 is its own inverse.
    let m = ring.truncation();
    let mut inv = vec![0i64; ring.rank()];
    inv[0] = c0;
    for k in 1..=m as usize {
        let s: i64 = (1..=k).map(|i| c.class.coeff(i as u32) * inv[k - i]).sum();
        inv[k] = -c0 * s;
    }
    Ok(TotalClass {
        class: ring.element(&inv)?,
    })
}

fn check_at_least(name: &'static str, value: i64, min: i64) -> Result<(), CharClassError> {
    if value < min {
        Err(CharClassError::OutOfRange { name, min, value })
    } else {
        Ok(())
    }
}

/// `(1 + a·h)^e` in `Z[h]/(h^{n+1})`.
fn linear_power(n: u32, a: i64, e: u32) -> RingElement {
    let ring = TruncatedRing::projective_space(n, Coefficients::Integer);
    ring.element(&[1, a]).expect("n ≥ 1").pow(e)
}

/// Total Chern class of `J¹O_{CP^n}(d)`.
pub fn chern_jet1_line(n: u32, d: i64) -> Result<TotalClass, CharClassError> {
    check_at_least("n", i64::from(n), 1)?;
    check_at_least("d", d, 1)?;
    TotalClass::new(linear_power(n, d - 1, n + 1))
}

/// Total Chern class of `T CP^n`.
pub fn chern_tangent_projective(n: u32) -> Result<TotalClass, CharClassError> {
    check_at_least("n", i64::from(n), 1)?;
    TotalClass::new(linear_power(n, 1, n + 1))
}

/// Total Stiefel–Whitney class of the virtual bundle `J¹O(d) - T CP^n`.
pub fn sw_virtual(n: u32, d: i64) -> Result<TotalClass, CharClassError> {
    let jet = chern_jet1_line(n, d)?.reduce_mod_two();
    let tangent = chern_tangent_projective(n)?.reduce_mod_two();
    jet.product(&invert_total(&tangent)?)
}

/// Real rank of `J¹L^d - TX` for `X` of complex dimension `n`:
/// `2(n+1) - 2n`, independent of `n`.
pub const VIRTUAL_JET_RANK: u32 = 2;

/// Summary for `X = CP¹`: `c₁(J¹O(d)) = 2(d-1)h`, whose mod 2 reduction
/// (the class of the sphere bundle) always vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveLineReport {
    pub d: i64,
    pub c1: i64,
    pub w2_vanishes: bool,
}

impl fmt::Display for ProjectiveLineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "c1(J1 O(d)) = {}h on CP^1 (d = {})", self.c1, self.d)?;
        if self.w2_vanishes {
            write!(f, "w2 = 0: sphere bundle trivial, sections ~ map(S^2, S^3)")
        } else {
            write!(f, "w2 != 0: sphere bundle non-trivial")
        }
    }
}

pub fn projective_line_report(d: i64) -> Result<ProjectiveLineReport, CharClassError> {
    let c = chern_jet1_line(1, d)?;
    let c1 = c.as_element().coeff(1);
    Ok(ProjectiveLineReport {
        d,
        c1,
        w2_vanishes: c.reduce_mod_two().piece_in_degree(2).is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(n: u32) -> TruncatedRing {
        TruncatedRing::projective_space(n, Coefficients::F2)
    }

    #[test]
    fn chern_classes_of_jet_bundles() {
        for d in 1..10 {
            let c = chern_jet1_line(1, d).unwrap();
            assert_eq!(c.as_element().coeff(1), 2 * (d - 1));
        }
        assert!(chern_jet1_line(1, 1).unwrap().is_trivial());
        assert_eq!(
            chern_jet1_line(2, 3).unwrap().as_element().coeffs(),
            &[1, 6, 12]
        );
        assert!(chern_jet1_line(0, 3).is_err());
        assert!(chern_jet1_line(2, 0).is_err());
    }

    #[test]
    fn stiefel_whitney_on_cp2() {
        for d in 1..=12 {
            let w = sw_virtual(2, d).unwrap();
            if d % 2 == 0 {
                assert!(w.is_trivial(), "d = {d}: {w}");
            } else {
                assert_eq!(w.as_element(), &f2(2).element(&[1, 1]).unwrap(), "d = {d}");
            }
        }
    }

    #[test]
    fn stiefel_whitney_on_cp1_is_trivial() {
        for d in 1..=12 {
            assert!(sw_virtual(1, d).unwrap().piece_in_degree(2).is_zero());
        }
    }

    #[test]
    fn inverses() {
        let r = f2(2);
        let one = TotalClass::trivial(r);
        assert_eq!(invert_total(&one).unwrap(), one);
        let c = TotalClass::new(r.element(&[1, 1]).unwrap()).unwrap();
        assert_eq!(
            invert_total(&c).unwrap().as_element(),
            &r.element(&[1, 1, 1]).unwrap()
        );
        assert!(TotalClass::new(r.element(&[0, 1]).unwrap()).is_err());

        let z = TruncatedRing::projective_space(4, Coefficients::Integer);
        let c = TotalClass::new(z.element(&[1, 3, -2, 7, 5]).unwrap()).unwrap();
        let prod = c.product(&invert_total(&c).unwrap()).unwrap();
        assert!(prod.is_trivial());
    }

    #[test]
    fn projective_line() {
        let r = projective_line_report(5).unwrap();
        assert_eq!(r.c1, 8);
        assert!(r.w2_vanishes);
        assert!(r.to_string().contains("map(S^2, S^3)"));
    }
}
