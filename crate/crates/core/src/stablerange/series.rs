//! Graded dimensions of free graded-commutative algebras.

use std::fmt;

use super::RangeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Odd degree: `x² = 0`.
    Exterior,
    /// Even degree.
    Polynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorRecord {
    pub degree: u32,
    pub count: u64,
    pub parity: Parity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    pub coefficients: Vec<u128>,
    pub generators: Vec<GeneratorRecord>,
}

impl PoincareSeries {
    /// Total dimension when every generator is exterior.
    pub fn finite_total(&self) -> Option<u128> {
        self.generators
            .iter()
            .all(|g| g.parity == Parity::Exterior)
            .then(|| 1u128 << self.generators.iter().map(|g| g.count).sum::<u64>())
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (deg, c) in self.coefficients.iter().enumerate() {
            writeln!(f, "{deg}: {c}")?;
        }
        Ok(())
    }
}

/// Betti numbers of `CP^n`.
pub fn projective_space_betti(n: usize) -> Vec<u64> {
    (0..=2 * n).map(|i| u64::from(i % 2 == 0)).collect()
}

/// Dimensions through `max_deg` of the free graded-commutative algebra on
/// `betti[i]` generators in degree `i + 1`.
pub fn stable_series(betti: &[u64], max_deg: usize) -> Result<PoincareSeries, RangeError> {
    match betti.first() {
        Some(&b0) if b0 >= 1 => {}
        other => {
            return Err(RangeError::InvalidArgument {
                name: "b0",
                value: other.map_or(0, |&b| b as i64),
            })
        }
    }
    let generators: Vec<GeneratorRecord> = betti
        .iter()
        .enumerate()
        .filter(|(_, &b)| b > 0)
        .map(|(i, &count)| {
            let degree = i as u32 + 1;
            let parity = if degree % 2 == 1 {
                Parity::Exterior
            } else {
                Parity::Polynomial
            };
            GeneratorRecord {
                degree,
                count,
                parity,
            }
        })
        .collect();

    let mut c = vec![0u128; max_deg + 1];
    c[0] = 1;
    for g in &generators {
        let k = g.degree as usize;
        for _ in 0..g.count {
            match g.parity {
                // multiply by 1 + q^k
                Parity::Exterior => {
                    for i in (k..=max_deg).rev() {
                        c[i] += c[i - k];
                    }
                }
                // multiply by 1/(1 - q^k)
                Parity::Polynomial => {
                    for i in k..=max_deg {
                        c[i] += c[i - k];
                    }
                }
            }
        }
    }
    Ok(PoincareSeries {
        coefficients: c,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cp2() {
        let s = stable_series(&projective_space_betti(2), 9).unwrap();
        assert_eq!(s.coefficients, [1, 1, 0, 1, 1, 1, 1, 0, 1, 1]);
        assert_eq!(
            s.generators.iter().map(|g| g.degree).collect::<Vec<_>>(),
            [1, 3, 5]
        );
        assert_eq!(s.finite_total(), Some(8));
    }

    #[test]
    fn elliptic_curve() {
        let s = stable_series(&[1, 2, 1], 6).unwrap();
        assert_eq!(
            s.generators,
            [
                GeneratorRecord {
                    degree: 1,
                    count: 1,
                    parity: Parity::Exterior
                },
                GeneratorRecord {
                    degree: 2,
                    count: 2,
                    parity: Parity::Polynomial
                },
                GeneratorRecord {
                    degree: 3,
                    count: 1,
                    parity: Parity::Exterior
                },
            ]
        );
        // (1+q)(1+q^3)/(1-q^2)^2
        assert_eq!(s.coefficients, [1, 1, 2, 3, 4, 5, 6]);
        assert_eq!(s.finite_total(), None);
    }

    #[test]
    fn needs_a_unit() {
        assert!(stable_series(&[0, 1], 3).is_err());
        assert!(stable_series(&[], 3).is_err());
    }

    proptest! {
        #[test]
        fn all_odd_generators_give_a_finite_product(n in 0usize..7) {
            let betti = projective_space_betti(n);
            let top = (0..=n).map(|i| 2 * i + 1).sum::<usize>();
            let s = stable_series(&betti, top + 3).unwrap();
            prop_assert_eq!(s.coefficients.iter().sum::<u128>(), 1u128 << (n + 1));
            prop_assert_eq!(s.coefficients[top], 1);
            prop_assert_eq!(s.coefficients[top + 1], 0);
            for i in 0..=top {
                prop_assert_eq!(s.coefficients[i], s.coefficients[top - i]);
            }
        }
    }
}
