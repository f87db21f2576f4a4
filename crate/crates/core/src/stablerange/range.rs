use std::fmt;

use num_rational::Ratio;

use super::RangeError;

/// Jet ampleness of `E^{⊗d}` when `E` is `base_amp`-jet ample.
pub fn jet_amp_power(base_amp: u64, d: u64) -> u64 {
    base_amp * d
}

/// Largest `N` with `(N+1)(r+1) - 1 ≤ amp`, or `-1` when there is none.
pub fn big_n(amp: i64, r: i64) -> i64 {
    assert!(r >= 0, "jet order must be non-negative");
    if amp < r {
        return -1;
    }
    (amp + 1).div_euclid(r + 1) - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeInput {
    /// Complex dimension of the base.
    pub n: i64,
    /// Jet order.
    pub r: i64,
    pub amp: i64,
    /// Complex rank of the jet bundle.
    pub rk: i64,
    /// Real codimension of the singular condition inside the jet bundle.
    pub codim_real: i64,
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl RangeInput {
    /// Vanishing of the `r`-jet of a section of a line bundle with
    /// ampleness `amp` on an `n`-dimensional base.
    pub fn zero_section(n: i64, r: i64, amp: i64) -> Result<Self, RangeError> {
        if n < 1 {
            return Err(RangeError::InvalidArgument {
                name: "n",
                value: n,
            });
        }
        if r < 0 {
            return Err(RangeError::InvalidArgument {
                name: "r",
                value: r,
            });
        }
        let rk = binomial(n + r, r);
        Ok(Self {
            n,
            r,
            amp,
            rk,
            codim_real: 2 * rk,
        })
    }

    pub fn excess(&self) -> i64 {
        self.codim_real - 2 * self.n
    }

    fn is_line_bundle_jet(&self) -> bool {
        self.r == 1 && self.rk == self.n + 1 && self.codim_real == 2 * (self.n + 1)
    }
}

/// Largest integer degree `k ≥ 0` with `k < bound`.
fn top_degree_below(bound: Ratio<i64>) -> Option<i64> {
    let top = bound.ceil().to_integer() - 1;
    (top >= 0).then_some(top)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeReport {
    pub big_n: i64,
    pub e: i64,
    /// Homology is stable in degrees `* < bound_main`.
    pub bound_main: i64,
    /// `(amp - r)/(r + 1)`.
    pub bound_intro: Ratio<i64>,
    /// `(d - 1)/2` for first jets of line bundles.
    pub bound_line_bundle: Option<Ratio<i64>>,
    /// Set when another bound admits a degree the main bound does not.
    pub discrepancy: bool,
}

impl RangeReport {
    /// Largest degree in the main range, `None` when the range is empty.
    pub fn top_degree(&self) -> Option<i64> {
        top_degree_below(Ratio::from_integer(self.bound_main))
    }
}

impl fmt::Display for RangeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N = {}, e = {}", self.big_n, self.e)?;
        match self.top_degree() {
            Some(k) => writeln!(f, "iso in degrees * ≤ {k}")?,
            None => writeln!(f, "empty range (bound {})", self.bound_main)?,
        }
        writeln!(f, "intro bound: * < {}", self.bound_intro)?;
        if let Some(b) = self.bound_line_bundle {
            writeln!(f, "line-bundle bound: * < {b}")?;
        }
        if self.discrepancy {
            writeln!(
                f,
                "discrepancy: the bounds above admit more degrees than * < {}",
                self.bound_main
            )?;
        }
        Ok(())
    }
}

pub fn stability_bound(inp: &RangeInput) -> Result<RangeReport, RangeError> {
    if inp.r < 0 {
        return Err(RangeError::InvalidArgument {
            name: "r",
            value: inp.r,
        });
    }
    let e = inp.excess();
    if e < 2 {
        return Err(RangeError::Inadmissible { e });
    }
    let n_big = big_n(inp.amp, inp.r);
    let bound_main = n_big * (e - 1) + e - 2;
    let bound_intro = Ratio::new(inp.amp - inp.r, inp.r + 1);
    let bound_line_bundle = inp.is_line_bundle_jet().then(|| Ratio::new(inp.amp - 1, 2));
    let main_top = top_degree_below(Ratio::from_integer(bound_main));
    let exceeds = |b: Ratio<i64>| top_degree_below(b) > main_top;
    let discrepancy = exceeds(bound_intro) || bound_line_bundle.is_some_and(exceeds);
    Ok(RangeReport {
        big_n: n_big,
        e,
        bound_main,
        bound_intro,
        bound_line_bundle,
        discrepancy,
    })
}

/// Largest degree strictly below `(d - 1)/2`, `None` when no degree is.
pub fn stable_range_for(d: i64) -> Option<i64> {
    top_degree_below(Ratio::new(d - 1, 2))
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|k| k * k <= p)
            .all(|k| !p.is_multiple_of(k))
}

/// Whether the `p`-local sphere bundle trick applies in complex dimension `n`.
pub fn p_torsion_stable(p: u64, n: u64) -> Result<bool, RangeError> {
    if !is_prime(p) {
        return Err(RangeError::NotPrime(p));
    }
    if n < 1 {
        return Err(RangeError::InvalidArgument {
            name: "n",
            value: n as i64,
        });
    }
    Ok(p >= n + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn amp_and_n() {
        assert_eq!(jet_amp_power(1, 9), 9);
        assert_eq!(jet_amp_power(4, 1), 4);
        assert_eq!(jet_amp_power(2, 3), 6);
        assert_eq!(big_n(0, 0), 0);
        assert_eq!(big_n(5, 1), 2);
        assert_eq!(big_n(0, 1), -1);
        for d in 0..40 {
            assert_eq!(big_n(d, 1), (d - 1).div_euclid(2));
        }
    }

    #[test]
    fn line_bundle_examples() {
        let r7 = stability_bound(&RangeInput::zero_section(2, 1, 7).unwrap()).unwrap();
        assert_eq!((r7.big_n, r7.e, r7.bound_main), (3, 2, 3));
        assert_eq!(r7.top_degree(), Some(2));
        assert!(!r7.discrepancy);

        let r6 = stability_bound(&RangeInput::zero_section(2, 1, 6).unwrap()).unwrap();
        assert_eq!((r6.big_n, r6.bound_main), (2, 2));
        assert_eq!(r6.bound_line_bundle, Some(Ratio::new(5, 2)));
        assert!(r6.discrepancy);

        let r1 = stability_bound(&RangeInput::zero_section(2, 1, 1).unwrap()).unwrap();
        assert_eq!(r1.top_degree(), None);
    }

    #[test]
    fn excess_three_with_n_zero() {
        let inp = RangeInput {
            n: 1,
            r: 1,
            amp: 1,
            rk: 2,
            codim_real: 5,
        };
        let rep = stability_bound(&inp).unwrap();
        assert_eq!((rep.big_n, rep.e, rep.bound_main), (0, 3, 1));
    }

    #[test]
    fn inadmissible() {
        let inp = RangeInput {
            n: 2,
            r: 1,
            amp: 7,
            rk: 3,
            codim_real: 2,
        };
        assert_eq!(
            stability_bound(&inp),
            Err(RangeError::Inadmissible { e: -2 })
        );
    }

    #[test]
    fn corollary_range() {
        assert_eq!(stable_range_for(7), Some(2));
        assert_eq!(stable_range_for(1), None);
        assert_eq!(stable_range_for(2), Some(0));
        assert_eq!(stable_range_for(100), Some(49));
    }

    #[test]
    fn torsion_criterion() {
        assert_eq!(p_torsion_stable(5, 2), Ok(true));
        assert_eq!(p_torsion_stable(2, 2), Ok(false));
        assert_eq!(p_torsion_stable(3, 1), Ok(true));
        assert_eq!(p_torsion_stable(9, 1), Err(RangeError::NotPrime(9)));
        assert_eq!(p_torsion_stable(1, 1), Err(RangeError::NotPrime(1)));
    }

    proptest! {
        #[test]
        fn big_n_monotone(amp in 0i64..500, r in 0i64..10) {
            prop_assert!(big_n(amp, r) <= big_n(amp + 1, r));
            prop_assert!(big_n(amp, r + 1) <= big_n(amp, r));
        }

        #[test]
        fn big_n_is_largest(amp in 0i64..500, r in 0i64..10) {
            let n = big_n(amp, r);
            prop_assert!((n + 2) * (r + 1) - 1 > amp);
            if n >= 0 {
                prop_assert!((n + 1) * (r + 1) - 1 <= amp);
            }
        }

        #[test]
        fn first_jet_bound(n in 1i64..8, d in 1i64..300) {
            let rep = stability_bound(&RangeInput::zero_section(n, 1, d).unwrap()).unwrap();
            prop_assert_eq!(rep.bound_main, (d - 1).div_euclid(2));
            prop_assert_eq!(rep.discrepancy, d % 2 == 0 && d >= 2);
        }

        #[test]
        fn main_within_intro_when_e_is_two(r in 0i64..5, amp in 0i64..300) {
            let inp = RangeInput { n: 1, r, amp, rk: 2, codim_real: 4 };
            let rep = stability_bound(&inp).unwrap();
            prop_assert!(Ratio::from_integer(rep.bound_main) <= rep.bound_intro);
        }
    }
}
