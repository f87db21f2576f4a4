//! Finite graded F2-modules over the Steenrod algebra.
//!
//! A module is stored degreewise-dense: a label list per degree and, for every
//! `k ≥ 1` and source degree `t` where both `M_t` and `M_{t+k}` are nonzero,
//! the matrix of `Sq^k : M_t → M_{t+k}`. Matrices use the row convention:
//! row `i` is the image of the `i`-th basis element of `M_t`.
//!
//! The interchange format is a JSON document
//!
//! ```json
//! {
//!   "degree_range": [2, 6],
//!   "truncated": false,
//!   "basis": [["U"], [], ["xU"], [], ["x^2U"]],
//!   "actions": [{ "k": 2, "from_degree": 4, "matrix": [[1]] }]
//! }
//! ```
//!
//! where `basis[i]` lists the labels in degree `degree_range[0] + i` and only
//! nonzero action matrices are written.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2::{F2Error, F2Matrix, F2Vector};
use crate::steenrod::{AdmissibleMonomial, SteenrodAlgebra, SteenrodError};

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("degree {0} is outside the module's degree range")]
    DegreeOutOfRange(i32),
    #[error("Sq^0 is the identity and cannot be assigned")]
    ZeroSquare,
    #[error("Sq^{k} from degree {from_degree}: expected a {rows}x{cols} matrix, got {found_rows}x{found_cols}")]
    Shape {
        k: u32,
        from_degree: i32,
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("Sq^{k} from degree {from_degree} is given twice")]
    DuplicateAction { k: u32, from_degree: i32 },
    #[error("degree range [{0}, {1}] is empty or inverted")]
    BadRange(i32, i32),
    #[error("basis lists {found} degrees, range covers {expected}")]
    BasisLength { expected: usize, found: usize },
    #[error("malformed module document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    F2(#[from] F2Error),
    #[error(transparent)]
    Steenrod(#[from] SteenrodError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteenrodModule {
    min_degree: i32,
    max_degree: i32,
    truncated: bool,
    basis: Vec<Vec<String>>,
    actions: BTreeMap<(u32, i32), F2Matrix>,
}

impl SteenrodModule {
    /// A module with the given basis and all squares zero.
    ///
    /// `truncated` marks modules whose actions into degrees above
    /// `max_degree` are unknown rather than zero.
    pub fn new(
        min_degree: i32,
        basis: Vec<Vec<String>>,
        truncated: bool,
    ) -> Result<Self, ModuleError> {
        if basis.is_empty() {
            return Err(ModuleError::BasisLength {
                expected: 1,
                found: 0,
            });
        }
        let max_degree = min_degree + basis.len() as i32 - 1;
        let mut actions = BTreeMap::new();
        for (i, src) in basis.iter().enumerate() {
            for (j, dst) in basis.iter().enumerate().skip(i + 1) {
                if !src.is_empty() && !dst.is_empty() {
                    let k = (j - i) as u32;
                    actions.insert(
                        (k, min_degree + i as i32),
                        F2Matrix::zeros(src.len(), dst.len()),
                    );
                }
            }
        }
        Ok(Self {
            min_degree,
            max_degree,
            truncated,
            basis,
            actions,
        })
    }

    /// The zero module.
    pub fn zero() -> Self {
        Self::new(0, vec![Vec::new()], false).expect("non-empty basis list")
    }

    /// `F2` concentrated in `degree`.
    pub fn trivial(degree: i32) -> Self {
        Self::new(degree, vec![vec!["1".to_string()]], false).expect("non-empty basis list")
    }

    /// The free module on one generator in degree 0, cut off above `top`.
    pub fn free_truncated(algebra: &SteenrodAlgebra, top: u32) -> Result<Self, ModuleError> {
        let bases = (0..=top)
            .map(|n| algebra.basis(n))
            .collect::<Result<Vec<_>, _>>()?;
        let labels = bases
            .iter()
            .map(|b| b.monomials.iter().map(ToString::to_string).collect())
            .collect();
        let mut m = Self::new(0, labels, true)?;
        for (n, src) in bases.iter().enumerate() {
            for k in 1..=(top - n as u32) {
                let target = &bases[n + k as usize];
                let mut mat = F2Matrix::zeros(src.len(), target.len());
                for (row, mono) in src.monomials.iter().enumerate() {
                    let sq = AdmissibleMonomial::new(vec![k])?;
                    for p in algebra.multiply_monomials(&sq, mono)?.iter() {
                        let col = target.index_of(p).expect("product lies in the basis");
                        mat.set(row, col, true);
                    }
                }
                m.set_action(k, n as i32, mat)?;
            }
        }
        Ok(m)
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.max_degree
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn dim(&self, t: i32) -> usize {
        self.labels(t).len()
    }

    pub fn labels(&self, t: i32) -> &[String] {
        if t < self.min_degree || t > self.max_degree {
            return &[];
        }
        &self.basis[(t - self.min_degree) as usize]
    }

    pub fn total_dimension(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// Whether the action into degree `t` is genuinely known.
    pub fn is_known_through(&self, t: i32) -> bool {
        !self.truncated || t <= self.max_degree
    }

    pub fn action(&self, k: u32, from_degree: i32) -> Option<&F2Matrix> {
        self.actions.get(&(k, from_degree))
    }

    pub fn actions(&self) -> impl Iterator<Item = (u32, i32, &F2Matrix)> {
        self.actions.iter().map(|(&(k, t), m)| (k, t, m))
    }

    pub fn set_action(
        &mut self,
        k: u32,
        from_degree: i32,
        matrix: F2Matrix,
    ) -> Result<(), ModuleError> {
        if k == 0 {
            return Err(ModuleError::ZeroSquare);
        }
        let rows = self.dim(from_degree);
        let cols = self.dim(from_degree + k as i32);
        if from_degree < self.min_degree || from_degree + k as i32 > self.max_degree {
            return Err(ModuleError::DegreeOutOfRange(from_degree + k as i32));
        }
        if matrix.rows() != rows || matrix.cols() != cols {
            return Err(ModuleError::Shape {
                k,
                from_degree,
                rows,
                cols,
                found_rows: matrix.rows(),
                found_cols: matrix.cols(),
            });
        }
        if rows > 0 && cols > 0 {
            self.actions.insert((k, from_degree), matrix);
        }
        Ok(())
    }

    /// Matrix of `Sq^{w₁} ⋯ Sq^{w_k}` from degree `t` (rightmost square
    /// applied first).
    pub fn word_matrix(&self, word: &[u32], t: i32) -> F2Matrix {
        let mut acc = F2Matrix::identity(self.dim(t));
        let mut degree = t;
        for &k in word.iter().rev() {
            if k == 0 {
                continue;
            }
            let next = degree + k as i32;
            acc = match self.action(k, degree) {
                Some(m) => acc.mul(m).expect("action shapes agree"),
                None => F2Matrix::zeros(acc.rows(), self.dim(next)),
            };
            degree = next;
        }
        acc
    }

    /// `Sq^k v` for `v ∈ M_t`.
    pub fn act(&self, k: u32, t: i32, v: &F2Vector) -> F2Vector {
        if k == 0 {
            return v.clone();
        }
        match self.action(k, t) {
            Some(m) => m.vec_mul(v).expect("vector lies in M_t"),
            None => F2Vector::zeros(self.dim(t + k as i32)),
        }
    }

    /// `θ v` for an admissible monomial `θ` and `v ∈ M_t`.
    pub fn act_monomial(&self, m: &AdmissibleMonomial, t: i32, v: &F2Vector) -> F2Vector {
        let mut out = v.clone();
        let mut degree = t;
        for &k in m.exponents().iter().rev() {
            out = self.act(k, degree, &out);
            degree += k as i32;
        }
        out
    }

    pub fn to_document(&self) -> ModuleDocument {
        ModuleDocument {
            degree_range: [self.min_degree, self.max_degree],
            truncated: self.truncated,
            basis: self.basis.clone(),
            actions: self
                .actions
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(&(k, from_degree), m)| ActionRecord {
                    k,
                    from_degree,
                    matrix: m.to_rows(),
                })
                .collect(),
        }
    }

    pub fn from_document(doc: &ModuleDocument) -> Result<Self, ModuleError> {
        let [lo, hi] = doc.degree_range;
        if hi < lo {
            return Err(ModuleError::BadRange(lo, hi));
        }
        let expected = (hi - lo + 1) as usize;
        if doc.basis.len() != expected {
            return Err(ModuleError::BasisLength {
                expected,
                found: doc.basis.len(),
            });
        }
        let mut m = Self::new(lo, doc.basis.clone(), doc.truncated)?;
        let mut seen = std::collections::BTreeSet::new();
        for a in &doc.actions {
            if !seen.insert((a.k, a.from_degree)) {
                return Err(ModuleError::DuplicateAction {
                    k: a.k,
                    from_degree: a.from_degree,
                });
            }
            let cols = m.dim(a.from_degree + a.k as i32);
            let matrix = F2Matrix::from_rows_with_cols(&a.matrix, cols)?;
            m.set_action(a.k, a.from_degree, matrix)?;
        }
        Ok(m)
    }

    /// Renders the interchange document.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, ModuleError> {
        let doc: ModuleDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDocument {
    pub degree_range: [i32; 2],
    #[serde(default)]
    pub truncated: bool,
    pub basis: Vec<Vec<String>>,
    #[serde(default)]
    pub actions: Vec<ActionRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionRecord {
    pub k: u32,
    pub from_degree: i32,
    pub matrix: Vec<Vec<u8>>,
}

/// One failed Adem relation: `Sq^a Sq^b` disagrees with its admissible
/// expansion on `M_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdemViolation {
    pub a: u32,
    pub b: u32,
    pub degree: i32,
    pub expansion: String,
}

impl fmt::Display for AdemViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Sq{} Sq{} = {} fails on degree {}",
            self.a, self.b, self.expansion, self.degree
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleReport {
    pub violations: Vec<AdemViolation>,
}

impl ModuleReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ModuleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "all Adem relations hold");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every Adem relation `Sq^a Sq^b` (`a < 2b`) on every degree where
/// both sides stay inside the known part of the module.
pub fn verify_module(
    module: &SteenrodModule,
    algebra: &SteenrodAlgebra,
) -> Result<ModuleReport, ModuleError> {
    let mut report = ModuleReport::default();
    let span = (module.max_degree - module.min_degree).max(0) as u32;
    for total in 2..=span {
        for b in 1..total {
            let a = total - b;
            if a >= 2 * b {
                continue;
            }
            let expansion = algebra.adem_reduce(&[a, b])?;
            for t in module.min_degree..=module.max_degree - total as i32 {
                if module.dim(t) == 0 || module.dim(t + total as i32) == 0 {
                    continue;
                }
                let lhs = module.word_matrix(&[a, b], t);
                let mut rhs = F2Matrix::zeros(lhs.rows(), lhs.cols());
                for term in expansion.terms() {
                    rhs = rhs.add(&module.word_matrix(term.exponents(), t))?;
                }
                if lhs != rhs {
                    report.violations.push(AdemViolation {
                        a,
                        b,
                        degree: t,
                        expansion: expansion.to_string(),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_trivial_modules_are_consistent() {
        let a = SteenrodAlgebra::default();
        assert!(verify_module(&SteenrodModule::zero(), &a)
            .unwrap()
            .is_consistent());
        assert!(verify_module(&SteenrodModule::trivial(0), &a)
            .unwrap()
            .is_consistent());
    }

    #[test]
    fn free_truncated_module_is_consistent() {
        let a = SteenrodAlgebra::default();
        let m = SteenrodModule::free_truncated(&a, 10).unwrap();
        assert_eq!(m.dim(7), 4);
        assert!(verify_module(&m, &a).unwrap().is_consistent());
    }

    #[test]
    fn broken_sq1_detected() {
        // Sq^1 Sq^1 ≠ 0 on a three-cell chain.
        let a = SteenrodAlgebra::default();
        let labels = vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]];
        let mut m = SteenrodModule::new(0, labels, false).unwrap();
        m.set_action(1, 0, F2Matrix::identity(1)).unwrap();
        m.set_action(1, 1, F2Matrix::identity(1)).unwrap();
        let report = verify_module(&m, &a).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert_eq!((report.violations[0].a, report.violations[0].b), (1, 1));
        assert!(report.to_string().contains("Sq1 Sq1 = 0"));
    }

    #[test]
    fn set_action_validates_shape() {
        let labels = vec![vec!["a".into()], vec![], vec!["c".into(), "d".into()]];
        let mut m = SteenrodModule::new(0, labels, false).unwrap();
        assert!(matches!(
            m.set_action(2, 0, F2Matrix::zeros(1, 1)),
            Err(ModuleError::Shape { .. })
        ));
        assert!(matches!(
            m.set_action(0, 0, F2Matrix::zeros(1, 1)),
            Err(ModuleError::ZeroSquare)
        ));
        assert!(m.set_action(3, 0, F2Matrix::zeros(1, 0)).is_err());
        m.set_action(2, 0, F2Matrix::from_rows(&[vec![1, 1]]).unwrap())
            .unwrap();
        assert_eq!(m.act(2, 0, &F2Vector::unit(1, 0)).to_bits(), vec![1, 1]);
    }

    #[test]
    fn document_round_trip_and_errors() {
        let a = SteenrodAlgebra::default();
        let m = SteenrodModule::free_truncated(&a, 6).unwrap();
        let text = m.render();
        assert_eq!(SteenrodModule::parse(&text).unwrap(), m);
        assert_eq!(SteenrodModule::parse(&text).unwrap().render(), text);

        assert!(matches!(
            SteenrodModule::parse("{"),
            Err(ModuleError::Parse(_))
        ));
        let bad_len = r#"{"degree_range":[0,2],"basis":[["a"]],"actions":[]}"#;
        assert!(matches!(
            SteenrodModule::parse(bad_len),
            Err(ModuleError::BasisLength { .. })
        ));
        let dup = r#"{"degree_range":[0,1],"basis":[["a"],["b"]],
            "actions":[{"k":1,"from_degree":0,"matrix":[[1]]},{"k":1,"from_degree":0,"matrix":[[1]]}]}"#;
        assert!(matches!(
            SteenrodModule::parse(dup),
            Err(ModuleError::DuplicateAction { .. })
        ));
        let bad_entry = r#"{"degree_range":[0,1],"basis":[["a"],["b"]],
            "actions":[{"k":1,"from_degree":0,"matrix":[[2]]}]}"#;
        assert!(SteenrodModule::parse(bad_entry).is_err());
    }
}
