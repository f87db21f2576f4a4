//! Truncated polynomial rings `R[x]/(x^{m+1})` with a single even-degree
//! generator, e.g. `H*(CP^m)`, and the Steenrod squares on their mod 2
//! reductions.
//!
//! With one generator `x` of even degree `g`, every square `Sq^j x` with
//! `0 < j < g` lands in a degree with no classes, so `Sq(x) = x + x²` and the
//! Cartan formula gives `Sq^{g·i}(x^k) = C(k, i) x^{k+i}`; every other square
//! of a monomial is zero.

use std::fmt;

use thiserror::Error;

use crate::steenrod::binomial_is_odd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("generator degree must be even and positive, got {0}")]
    BadGeneratorDegree(u32),
    #[error("elements live in different rings ({0} vs {1})")]
    RingMismatch(TruncatedRing, TruncatedRing),
    #[error("element {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("Steenrod squares need F2 coefficients, ring is {0}")]
    NotModTwo(TruncatedRing),
    #[error("coefficient vector has length {found}, ring needs {expected}")]
    WrongLength { expected: usize, found: usize },
}

/// Coefficients of a [`TruncatedRing`].
///
/// `Integer` coefficients carry Chern classes; their image in Q is the
/// rational ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    F2,
    Integer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncatedRing {
    generator_degree: u32,
    truncation: u32,
    coefficients: Coefficients,
}

impl fmt::Display for TruncatedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (field, var) = match self.coefficients {
            Coefficients::F2 => ("F2", 'x'),
            Coefficients::Integer => ("Z", 'h'),
        };
        write!(
            f,
            "{field}[{var}]/({var}^{}), |{var}| = {}",
            self.truncation + 1,
            self.generator_degree
        )
    }
}

impl TruncatedRing {
    pub fn new(
        generator_degree: u32,
        truncation: u32,
        coefficients: Coefficients,
    ) -> Result<Self, CohomologyError> {
        if generator_degree == 0 || !generator_degree.is_multiple_of(2) {
            return Err(CohomologyError::BadGeneratorDegree(generator_degree));
        }
        Ok(Self {
            generator_degree,
            truncation,
            coefficients,
        })
    }

    /// `H*(CP^n)` with the given coefficients.
    pub fn projective_space(n: u32, coefficients: Coefficients) -> Self {
        Self {
            generator_degree: 2,
            truncation: n,
            coefficients,
        }
    }

    pub fn generator_degree(&self) -> u32 {
        self.generator_degree
    }

    /// The `m` in `x^{m+1} = 0`.
    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    /// Rank of the ring as a coefficient module.
    pub fn rank(&self) -> usize {
        self.truncation as usize + 1
    }

    pub fn top_degree(&self) -> u32 {
        self.generator_degree * self.truncation
    }

    pub fn with_coefficients(&self, coefficients: Coefficients) -> Self {
        Self {
            coefficients,
            ..*self
        }
    }

    fn normalize(&self, c: i64) -> i64 {
        match self.coefficients {
            Coefficients::F2 => c.rem_euclid(2),
            Coefficients::Integer => c,
        }
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            ring: *self,
            coeffs: vec![0; self.rank()],
        }
    }

    pub fn one(&self) -> RingElement {
        self.x_power(0)
    }

    /// `x^k`, which is zero for `k > m`.
    pub fn x_power(&self, k: u32) -> RingElement {
        let mut e = self.zero();
        if k <= self.truncation {
            e.coeffs[k as usize] = 1;
        }
        e
    }

    /// Builds `Σ c_k x^k`; entries past the truncation must be absent.
    pub fn element(&self, coeffs: &[i64]) -> Result<RingElement, CohomologyError> {
        if coeffs.len() > self.rank() {
            return Err(CohomologyError::WrongLength {
                expected: self.rank(),
                found: coeffs.len(),
            });
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = self.normalize(c);
        }
        Ok(e)
    }
}

/// An element `Σ c_k x^k` of a [`TruncatedRing`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: TruncatedRing,
    coeffs: Vec<i64>,
}

impl RingElement {
    pub fn ring(&self) -> TruncatedRing {
        self.ring
    }

    /// Coefficient of `x^k` (zero beyond the truncation).
    pub fn coeff(&self, k: u32) -> i64 {
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The graded piece of degree `k · |x|`.
    pub fn piece(&self, k: u32) -> RingElement {
        let mut e = self.ring.zero();
        if k <= self.ring.truncation {
            e.coeffs[k as usize] = self.coeffs[k as usize];
        }
        e
    }

    /// `Ok(None)` for zero, `Ok(Some(d))` for a nonzero homogeneous element.
    pub fn degree(&self) -> Result<Option<u32>, CohomologyError> {
        let mut nonzero = self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0);
        match (nonzero.next(), nonzero.next()) {
            (None, _) => Ok(None),
            (Some((k, _)), None) => Ok(Some(k as u32 * self.ring.generator_degree)),
            _ => Err(CohomologyError::NotHomogeneous(self.to_string())),
        }
    }

    fn check_ring(&self, other: &RingElement) -> Result<(), CohomologyError> {
        if self.ring != other.ring {
            Err(CohomologyError::RingMismatch(self.ring, other.ring))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement, CohomologyError> {
        self.check_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.normalize(a + b))
            .collect();
        Ok(RingElement {
            ring: self.ring,
            coeffs,
        })
    }

    pub fn scale(&self, c: i64) -> RingElement {
        RingElement {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .map(|a| self.ring.normalize(a * c))
                .collect(),
        }
    }

    /// Cup product, truncated at `x^{m+1}`.
    pub fn cup(&self, other: &RingElement) -> Result<RingElement, CohomologyError> {
        self.check_ring(other)?;
        let mut out = self.ring.zero();
        let m = self.ring.rank();
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coeffs.iter().enumerate().take(m - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        for c in &mut out.coeffs {
            *c = self.ring.normalize(*c);
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.cup(self).expect("same ring");
        }
        acc
    }

    /// Reduction of the coefficients mod 2.
    pub fn reduce_mod_two(&self) -> RingElement {
        let ring = self.ring.with_coefficients(Coefficients::F2);
        RingElement {
            ring,
            coeffs: self.coeffs.iter().map(|c| c.rem_euclid(2)).collect(),
        }
    }

    fn require_mod_two(&self) -> Result<(), CohomologyError> {
        if self.ring.coefficients != Coefficients::F2 {
            Err(CohomologyError::NotModTwo(self.ring))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.ring.coefficients {
            Coefficients::F2 => "x",
            Coefficients::Integer => "h",
        };
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if abs != 1 {
                        write!(f, "{abs}")?;
                    }
                    f.write_str(var)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ring)
    }
}

/// `Sq^k(a)` for a homogeneous mod 2 class `a`.
pub fn sq(k: u32, a: &RingElement) -> Result<RingElement, CohomologyError> {
    a.require_mod_two()?;
    let ring = a.ring;
    let Some(degree) = a.degree()? else {
        return Ok(ring.zero());
    };
    let g = ring.generator_degree;
    if !k.is_multiple_of(g) {
        return Ok(ring.zero());
    }
    let power = degree / g;
    let i = k / g;
    if binomial_is_odd(i64::from(power), i64::from(i)) {
        Ok(ring.x_power(power + i))
    } else {
        Ok(ring.zero())
    }
}

/// Graded pieces of the total square: entry `k` is `Sq^k(a)` for
/// `0 ≤ k ≤ deg a`.
pub fn total_sq(a: &RingElement) -> Result<Vec<RingElement>, CohomologyError> {
    a.require_mod_two()?;
    let top = a.degree()?.unwrap_or(0);
    (0..=top).map(|k| sq(k, a)).collect()
}

/// Applies `Sq^{w₁} ⋯ Sq^{w_k}` (rightmost first) to a homogeneous class.
pub fn apply_word(word: &[u32], a: &RingElement) -> Result<RingElement, CohomologyError> {
    word.iter().rev().try_fold(a.clone(), |acc, &i| sq(i, &acc))
}

/// `Sq^k` on an arbitrary (possibly inhomogeneous) mod 2 element, applied
/// piece by piece.
pub fn sq_inhomogeneous(k: u32, a: &RingElement) -> Result<RingElement, CohomologyError> {
    a.require_mod_two()?;
    (0..=a.ring.truncation).try_fold(a.ring.zero(), |acc, j| acc.add(&sq(k, &a.piece(j))?))
}
