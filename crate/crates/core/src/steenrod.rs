//! The mod 2 Steenrod algebra in the admissible (Serre–Cartan) basis.
//!
//! Products are computed by concatenating words of squares and straightening
//! them with the Adem relations
//!
//! ```text
//! Sq^a Sq^b = Σ_{j=0}^{⌊a/2⌋} C(b-1-j, a-2j) Sq^{a+b-j} Sq^j      (a < 2b)
//! ```
//!
//! Straightened words are memoized in the [`SteenrodAlgebra`] instance; the
//! cache is behind a lock, so an algebra may be shared across threads.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use thiserror::Error;

pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenrodError {
    #[error("degree {degree} exceeds the algebra's degree cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("cannot parse Steenrod operation {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("sequence {0:?} is not admissible")]
    NotAdmissible(Vec<u32>),
    #[error("cannot add elements of degrees {0} and {1}")]
    DegreeMismatch(u32, u32),
}

/// `C(n, k) mod 2`, zero outside `0 ≤ k ≤ n` (Lucas).
#[inline]
pub fn binomial_is_odd(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n && (k & !n) == 0
}

/// `Sq^{i₁} ⋯ Sq^{i_k}` with `i_j ≥ 2 i_{j+1}`; the empty sequence is the unit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleMonomial(Vec<u32>);

impl AdmissibleMonomial {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn new(exponents: Vec<u32>) -> Result<Self, SteenrodError> {
        if is_admissible(&exponents) {
            Ok(Self(exponents))
        } else {
            Err(SteenrodError::NotAdmissible(exponents))
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// The exponent sequence of `Sq^I · Sq^J` before straightening.
    pub fn concat(&self, other: &AdmissibleMonomial) -> Vec<u32> {
        let mut w = Vec::with_capacity(self.0.len() + other.0.len());
        w.extend_from_slice(&self.0);
        w.extend_from_slice(&other.0);
        w
    }
}

/// Entries must be positive and satisfy `i_j ≥ 2 i_{j+1}`.
pub fn is_admissible(word: &[u32]) -> bool {
    word.iter().all(|&i| i > 0) && word.windows(2).all(|w| w[0] >= 2 * w[1])
}

// Shorter sequences first; within a length, larger leading exponents first
// (Sq^6 Sq^1 before Sq^5 Sq^2).
impl Ord for AdmissibleMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for AdmissibleMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "Sq{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a whitespace-separated word such as `"Sq3 sq1"`. `Sq0` factors are
/// dropped; `"1"` is the empty word.
pub fn parse_word(input: &str) -> Result<Vec<u32>, SteenrodError> {
    let err = |reason: &str| SteenrodError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = input.trim();
    if trimmed == "1" {
        return Ok(Vec::new());
    }
    if trimmed.is_empty() {
        return Err(err("empty input"));
    }
    let mut word = Vec::new();
    for token in trimmed.split_whitespace() {
        let lower = token.to_ascii_lowercase();
        let digits = lower
            .strip_prefix("sq")
            .ok_or_else(|| err("expected tokens of the form Sq<n>"))?;
        let digits = digits.strip_prefix('^').unwrap_or(digits);
        let i: u32 = digits.parse().map_err(|_| err("bad exponent"))?;
        if i > 0 {
            word.push(i);
        }
    }
    Ok(word)
}

impl FromStr for AdmissibleMonomial {
    type Err = SteenrodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AdmissibleMonomial::new(parse_word(s)?)
    }
}

/// A homogeneous element: an F2-linear combination of admissible monomials
/// of a single degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SteenrodElement {
    degree: u32,
    terms: BTreeSet<AdmissibleMonomial>,
}

impl SteenrodElement {
    pub fn zero(degree: u32) -> Self {
        Self {
            degree,
            terms: BTreeSet::new(),
        }
    }

    pub fn unit() -> Self {
        Self::from(AdmissibleMonomial::unit())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = &AdmissibleMonomial> {
        self.terms.iter()
    }

    /// Number of admissible monomials in the sum.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &AdmissibleMonomial) -> bool {
        self.terms.contains(m)
    }

    /// Adds one monomial (F2 coefficients: adding twice cancels).
    pub fn toggle(&mut self, m: AdmissibleMonomial) {
        debug_assert_eq!(m.degree(), self.degree);
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &SteenrodElement) -> Result<SteenrodElement, SteenrodError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(SteenrodError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(Self {
            degree: self.degree,
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
        })
    }
}

impl From<AdmissibleMonomial> for SteenrodElement {
    fn from(m: AdmissibleMonomial) -> Self {
        Self {
            degree: m.degree(),
            terms: BTreeSet::from([m]),
        }
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {self}", self.degree)
    }
}

type Reduced = Arc<BTreeSet<AdmissibleMonomial>>;

/// The algebra up to a fixed degree cap, with its memo tables.
pub struct SteenrodAlgebra {
    cap: u32,
    straightened: RwLock<HashMap<Vec<u32>, Reduced>>,
    bases: RwLock<HashMap<u32, Arc<Basis>>>,
}

/// The admissible basis in one degree and the reverse index.
#[derive(Debug)]
pub struct Basis {
    pub monomials: Vec<AdmissibleMonomial>,
    index: HashMap<AdmissibleMonomial, usize>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &AdmissibleMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

impl Default for SteenrodAlgebra {
    fn default() -> Self {
        Self::new(DEFAULT_DEGREE_CAP)
    }
}

impl fmt::Debug for SteenrodAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SteenrodAlgebra")
            .field("cap", &self.cap)
            .finish()
    }
}

impl SteenrodAlgebra {
    pub fn new(cap: u32) -> Self {
        Self {
            cap,
            straightened: RwLock::new(HashMap::new()),
            bases: RwLock::new(HashMap::new()),
        }
    }

    pub fn degree_cap(&self) -> u32 {
        self.cap
    }

    fn check_degree(&self, degree: u32) -> Result<(), SteenrodError> {
        if degree > self.cap {
            Err(SteenrodError::DegreeCap {
                degree,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Expands `Sq^{w₁} ⋯ Sq^{w_k}` in the admissible basis.
    pub fn adem_reduce(&self, word: &[u32]) -> Result<SteenrodElement, SteenrodError> {
        let word: Vec<u32> = word.iter().copied().filter(|&i| i > 0).collect();
        let degree = word.iter().sum();
        self.check_degree(degree)?;
        let terms = self.straighten(word);
        Ok(SteenrodElement {
            degree,
            terms: (*terms).clone(),
        })
    }

    fn straighten(&self, word: Vec<u32>) -> Reduced {
        let Some(pos) = word.windows(2).position(|w| w[0] < 2 * w[1]) else {
            return Arc::new(BTreeSet::from([AdmissibleMonomial(word)]));
        };
        if let Some(hit) = self.straightened.read().unwrap().get(&word) {
            return Arc::clone(hit);
        }

        let (a, b) = (word[pos], word[pos + 1]);
        let mut out = BTreeSet::new();
        for j in 0..=a / 2 {
            if !binomial_is_odd(i64::from(b) - 1 - i64::from(j), i64::from(a - 2 * j)) {
                continue;
            }
            let mut next = Vec::with_capacity(word.len());
            next.extend_from_slice(&word[..pos]);
            next.push(a + b - j);
            if j > 0 {
                next.push(j);
            }
            next.extend_from_slice(&word[pos + 2..]);
            for m in self.straighten(next).iter() {
                if !out.remove(m) {
                    out.insert(m.clone());
                }
            }
        }

        let out = Arc::new(out);
        self.straightened
            .write()
            .unwrap()
            .insert(word, Arc::clone(&out));
        out
    }

    /// Product of two monomials, straightened.
    pub fn multiply_monomials(
        &self,
        a: &AdmissibleMonomial,
        b: &AdmissibleMonomial,
    ) -> Result<Arc<BTreeSet<AdmissibleMonomial>>, SteenrodError> {
        self.check_degree(a.degree() + b.degree())?;
        if a.is_unit() {
            return Ok(Arc::new(BTreeSet::from([b.clone()])));
        }
        if b.is_unit() {
            return Ok(Arc::new(BTreeSet::from([a.clone()])));
        }
        Ok(self.straighten(a.concat(b)))
    }

    pub fn multiply(
        &self,
        a: &SteenrodElement,
        b: &SteenrodElement,
    ) -> Result<SteenrodElement, SteenrodError> {
        let degree = a.degree + b.degree;
        self.check_degree(degree)?;
        let mut out = SteenrodElement::zero(degree);
        for x in &a.terms {
            for y in &b.terms {
                for m in self.multiply_monomials(x, y)?.iter() {
                    out.toggle(m.clone());
                }
            }
        }
        Ok(out)
    }

    /// All admissible monomials of degree `n`, in the fixed monomial order.
    pub fn basis(&self, n: u32) -> Result<Arc<Basis>, SteenrodError> {
        self.check_degree(n)?;
        if let Some(b) = self.bases.read().unwrap().get(&n) {
            return Ok(Arc::clone(b));
        }
        let mut monomials = Vec::new();
        let mut prefix = Vec::new();
        enumerate_admissible(n, n, &mut prefix, &mut monomials);
        monomials.sort();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let basis = Arc::new(Basis { monomials, index });
        self.bases.write().unwrap().insert(n, Arc::clone(&basis));
        Ok(basis)
    }

    pub fn dimension(&self, n: u32) -> Result<usize, SteenrodError> {
        Ok(self.basis(n)?.len())
    }

    /// Parses `"Sq2 Sq2 + Sq4"` style input and straightens it.
    pub fn parse_element(&self, input: &str) -> Result<SteenrodElement, SteenrodError> {
        let trimmed = input.trim();
        if trimmed == "0" {
            return Ok(SteenrodElement::zero(0));
        }
        let mut acc: Option<SteenrodElement> = None;
        for part in trimmed.split('+') {
            let term = self.adem_reduce(&parse_word(part)?)?;
            acc = Some(match acc {
                None => term,
                Some(prev) => prev.add(&term)?,
            });
        }
        acc.ok_or_else(|| SteenrodError::Parse {
            input: input.to_string(),
            reason: "empty input".into(),
        })
    }
}

/// Pushes every admissible sequence of total `remaining` whose next entry is
/// at most `max_next`.
fn enumerate_admissible(
    remaining: u32,
    max_next: u32,
    prefix: &mut Vec<u32>,
    out: &mut Vec<AdmissibleMonomial>,
) {
    if remaining == 0 {
        out.push(AdmissibleMonomial(prefix.clone()));
        return;
    }
    for i in (1..=remaining.min(max_next)).rev() {
        prefix.push(i);
        enumerate_admissible(remaining - i, i / 2, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> AdmissibleMonomial {
        AdmissibleMonomial::new(e.to_vec()).unwrap()
    }

    #[test]
    fn adem_small_words() {
        let a = SteenrodAlgebra::default();
        assert!(a.adem_reduce(&[1, 1]).unwrap().is_zero());
        assert_eq!(
            a.adem_reduce(&[2, 2]).unwrap(),
            SteenrodElement::from(mono(&[3, 1]))
        );
        assert_eq!(
            a.adem_reduce(&[3]).unwrap(),
            SteenrodElement::from(mono(&[3]))
        );
        assert_eq!(
            a.adem_reduce(&[1, 2]).unwrap(),
            SteenrodElement::from(mono(&[3]))
        );
    }

    #[test]
    fn adem_two_four() {
        // Sq^2 Sq^4 = Sq^6 + Sq^5 Sq^1
        let a = SteenrodAlgebra::default();
        let got = a.adem_reduce(&[2, 4]).unwrap();
        let mut want = SteenrodElement::zero(6);
        want.toggle(mono(&[6]));
        want.toggle(mono(&[5, 1]));
        assert_eq!(got, want);
    }

    #[test]
    fn unit_is_neutral() {
        let a = SteenrodAlgebra::default();
        let b = a.adem_reduce(&[4, 2, 1]).unwrap();
        assert_eq!(a.multiply(&SteenrodElement::unit(), &b).unwrap(), b);
        assert_eq!(a.multiply(&b, &SteenrodElement::unit()).unwrap(), b);
    }

    #[test]
    fn small_bases() {
        let a = SteenrodAlgebra::default();
        assert_eq!(
            a.basis(0).unwrap().monomials,
            vec![AdmissibleMonomial::unit()]
        );
        assert_eq!(
            a.basis(3).unwrap().monomials,
            vec![mono(&[3]), mono(&[2, 1])]
        );
        assert_eq!(
            a.basis(7).unwrap().monomials,
            vec![mono(&[7]), mono(&[6, 1]), mono(&[5, 2]), mono(&[4, 2, 1])]
        );
    }

    #[test]
    fn degree_cap_enforced() {
        let a = SteenrodAlgebra::new(8);
        assert!(a.adem_reduce(&[8]).is_ok());
        assert_eq!(
            a.adem_reduce(&[8, 1]),
            Err(SteenrodError::DegreeCap { degree: 9, cap: 8 })
        );
        assert!(a.basis(9).is_err());
        let x = a.adem_reduce(&[4]).unwrap();
        let y = a.adem_reduce(&[5]).unwrap();
        assert!(a.multiply(&x, &y).is_err());
    }

    #[test]
    fn text_round_trip() {
        let m: AdmissibleMonomial = "sq4 SQ2 Sq1".parse().unwrap();
        assert_eq!(m, mono(&[4, 2, 1]));
        assert_eq!(m.to_string(), "Sq4 Sq2 Sq1");
        assert_eq!(
            "1".parse::<AdmissibleMonomial>().unwrap(),
            AdmissibleMonomial::unit()
        );
        assert!("Sq2 Sq2".parse::<AdmissibleMonomial>().is_err());
        assert!("Xq2".parse::<AdmissibleMonomial>().is_err());

        let a = SteenrodAlgebra::default();
        let e = a.parse_element("Sq2 Sq2 + Sq4").unwrap();
        assert_eq!(e.to_string(), "Sq4 + Sq3 Sq1");
        assert_eq!(a.parse_element(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn binomial_parity() {
        assert!(binomial_is_odd(3, 1));
        assert!(!binomial_is_odd(2, 1));
        assert!(!binomial_is_odd(0, 1));
        assert!(!binomial_is_odd(-1, 0));
        assert!(binomial_is_odd(7, 5));
    }
}
