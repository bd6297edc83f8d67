//! Lattices given by rational Gram matrices.
//!
//! A lattice is stored as the Gram matrix `G[i][j] = <a_i, a_j>` of a basis,
//! never as coordinates. Bases whose coordinates involve square roots still
//! have rational Gram matrices, so everything downstream stays exact.

mod catalog;
pub mod surd;

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact::{ArithError, Rational, RationalMatrix};
use crate::shells::{self, ShellError};
use surd::Surd;

pub use catalog::{catalog, catalog_names, data_dir, resolve, DATA_DIR_ENV};

/// Largest supported dimension.
pub const MAX_DIM: usize = 24;

#[derive(Debug, thiserror::Error)]
pub enum LatticeError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("dimension {0} outside 1..={MAX_DIM}")]
    Dimension(usize),
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite (leading minor {index} is {value})")]
    NotPositiveDefinite { index: usize, value: Rational },
    #[error("inner product of basis vectors {0} and {1} is not rational")]
    IrrationalInnerProduct(usize, usize),
    #[error("basis vectors have inconsistent lengths")]
    RaggedBasis,
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(Rational),
    #[error("unknown lattice {0:?}")]
    UnknownName(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid lattice file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Surd(#[from] surd::SurdParseError),
    #[error("{name}: stored Gram matrix does not match its coordinate basis")]
    BasisMismatch { name: String },
    #[error("{name}: declared dim {declared} but Gram matrix is {actual}x{actual}")]
    DimMismatch { name: String, declared: usize, actual: usize },
}

/// A positive definite lattice `Λ` described by its Gram matrix.
#[derive(Clone, Debug)]
pub struct GramLattice {
    gram: RationalMatrix,
    name: Option<String>,
    scale_note: String,
    expected_min_norm2: Option<Rational>,
    description: String,
    // L * gram is integral; cached for the enumeration kernels.
    int_scale: BigInt,
    int_gram: Vec<Vec<BigInt>>,
}

impl GramLattice {
    /// Validates symmetry and positive definiteness (all leading principal
    /// minors positive).
    pub fn new(gram: RationalMatrix) -> Result<Self, LatticeError> {
        if !gram.is_square() {
            return Err(ArithError::Shape(format!(
                "Gram matrix must be square, got {}x{}",
                gram.rows(),
                gram.cols()
            ))
            .into());
        }
        let n = gram.rows();
        if !(1..=MAX_DIM).contains(&n) {
            return Err(LatticeError::Dimension(n));
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        for (i, m) in gram.leading_minors()?.into_iter().enumerate() {
            if !m.is_positive() {
                return Err(LatticeError::NotPositiveDefinite { index: i + 1, value: m });
            }
        }
        let (int_scale, int_gram) = gram.to_integer_scaled();
        Ok(GramLattice {
            gram,
            name: None,
            scale_note: String::new(),
            expected_min_norm2: None,
            description: String::new(),
            int_scale,
            int_gram,
        })
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LatticeError> {
        Self::new(RationalMatrix::from_integers(rows)?)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn with_expected_min_norm2(mut self, m: Rational) -> Self {
        self.expected_min_norm2 = Some(m);
        self
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn scale_note(&self) -> &str {
        &self.scale_note
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn expected_min_norm2(&self) -> Option<&Rational> {
        self.expected_min_norm2.as_ref()
    }

    /// `(L, L * G)` with `L` the least common denominator of the Gram entries.
    pub fn integer_gram(&self) -> (&BigInt, &[Vec<BigInt>]) {
        (&self.int_scale, &self.int_gram)
    }

    pub fn det(&self) -> Rational {
        self.gram.det().expect("Gram matrix is square")
    }

    /// `x^T G y` for basis coordinate vectors.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut acc = BigInt::from(0);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.int_gram[i];
            let mut s = BigInt::from(0);
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    s += &row[j] * yj;
                }
            }
            acc += s * xi;
        }
        Rational::new(acc, self.int_scale.clone()).expect("scale is positive")
    }

    pub fn norm2(&self, x: &[i64]) -> Rational {
        self.inner(x, x)
    }

    /// The lattice `sqrt(c2) * Λ`: every Gram entry is multiplied by `c2`.
    pub fn scale(&self, c2: &Rational) -> Result<GramLattice, LatticeError> {
        if !c2.is_positive() {
            return Err(LatticeError::NonPositiveScale(c2.clone()));
        }
        let mut out = GramLattice::new(self.gram.scaled(c2))?;
        out.name = self.name.as_ref().map(|n| format!("{n}:{c2}"));
        out.scale_note = if self.scale_note.is_empty() {
            format!("scaled by sqrt({c2})")
        } else {
            format!("{}; scaled by sqrt({c2})", self.scale_note)
        };
        out.expected_min_norm2 = self.expected_min_norm2.as_ref().map(|m| m * c2);
        out.description = self.description.clone();
        Ok(out)
    }

    /// Image of the lattice under the change of basis `z -> U z`, i.e. the
    /// Gram matrix `U^T G U`. `U` must be unimodular for the result to describe
    /// the same lattice.
    pub fn transformed(&self, u: &RationalMatrix) -> Result<GramLattice, LatticeError> {
        let g = u.transpose().mul(&self.gram)?.mul(u)?;
        let mut out = GramLattice::new(g)?;
        out.name = self.name.clone();
        out.expected_min_norm2 = self.expected_min_norm2.clone();
        Ok(out)
    }

    pub fn to_file(&self) -> LatticeFile {
        LatticeFile {
            name: self.name.clone().unwrap_or_default(),
            dim: self.dim(),
            gram: self.gram.to_rows(),
            expected_min_norm2: self.expected_min_norm2.clone(),
            description: self.description.clone(),
            basis: None,
        }
    }

    pub fn from_file(file: LatticeFile) -> Result<GramLattice, LatticeError> {
        let gram = RationalMatrix::from_rows(file.gram)?;
        if gram.rows() != file.dim {
            return Err(LatticeError::DimMismatch {
                name: file.name,
                declared: file.dim,
                actual: gram.rows(),
            });
        }
        let mut lattice = GramLattice::new(gram)?;
        if let Some(basis) = &file.basis {
            let from_basis = gram_from_basis(basis)?;
            if from_basis.gram != lattice.gram {
                return Err(LatticeError::BasisMismatch { name: file.name });
            }
        }
        lattice.name = Some(file.name);
        lattice.expected_min_norm2 = file.expected_min_norm2;
        lattice.description = file.description;
        Ok(lattice)
    }

    pub fn from_json(text: &str) -> Result<GramLattice, LatticeError> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<GramLattice, LatticeError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| LatticeError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }
}

/// On-disk lattice description.
///
/// `basis`, when present, lists the basis vectors as coordinate strings (see
/// [`Surd`]); loading then checks that it reproduces `gram` exactly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    pub name: String,
    pub dim: usize,
    pub gram: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_min_norm2: Option<Rational>,
    #[serde(default)]
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
}

/// Gram matrix of a basis given by coordinate strings such as
/// `"-2/3*sqrt(6)"`. Every pairwise inner product must come out rational.
pub fn gram_from_basis<S: AsRef<str>>(vectors: &[Vec<S>]) -> Result<GramLattice, LatticeError> {
    let parsed: Vec<Vec<Surd>> = vectors
        .iter()
        .map(|v| v.iter().map(|c| c.as_ref().parse()).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let width = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|v| v.len() != width) {
        return Err(LatticeError::RaggedBasis);
    }
    let n = parsed.len();
    let mut rows = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let ip = surd::inner_product(&parsed[i], &parsed[j])
                .ok_or(LatticeError::IrrationalInnerProduct(i, j))?;
            rows[i][j] = ip.clone();
            rows[j][i] = ip;
        }
    }
    GramLattice::new(RationalMatrix::from_rows(rows)?)
}

/// Outcome of the unit-ball packing test `min ||v||^2 >= 4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PackingVerdict {
    Packing { min_norm2: Rational },
    NotPacking { witness: Vec<i64>, norm2: Rational },
}

impl PackingVerdict {
    pub fn is_packing(&self) -> bool {
        matches!(self, PackingVerdict::Packing { .. })
    }
}

/// Unit balls centred at the points of `Λ` are non-overlapping exactly when
/// every nonzero vector has squared length at least 4.
pub fn is_packing_lattice(lattice: &GramLattice) -> Result<PackingVerdict, ShellError> {
    let four = Rational::from(4);
    let below = shells::ShellQuery::new(Rational::zero(), four.clone())?.collect();
    let set = shells::enumerate_shell(lattice, &below)?;
    let shortest = set
        .vectors()
        .unwrap_or(&[])
        .iter()
        .filter(|v| v.norm2 < four)
        .min_by(|a, b| a.norm2.cmp(&b.norm2));
    match shortest {
        Some(v) => Ok(PackingVerdict::NotPacking { witness: v.coords.clone(), norm2: v.norm2.clone() }),
        None => Ok(PackingVerdict::Packing { min_norm2: shells::min_norm2(lattice)? }),
    }
}

/// Numerical convenience: the Gram entries as `f64`.
pub fn gram_f64(lattice: &GramLattice) -> Vec<Vec<f64>> {
    lattice
        .gram
        .to_rows()
        .into_iter()
        .map(|r| r.iter().map(Rational::to_f64).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn gram_rows(l: &GramLattice) -> Vec<Vec<String>> {
        l.gram().to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    #[test]
    fn hexagonal_basis() {
        let l = gram_from_basis(&[vec!["sqrt(3)", "1"], vec!["sqrt(3)", "-1"]]).unwrap();
        assert_eq!(gram_rows(&l), [["4", "2"], ["2", "4"]]);
    }

    #[test]
    fn three_dimensional_basis() {
        let l = gram_from_basis(&[vec!["2", "0", "0"], vec!["0", "2", "0"], vec!["1", "0", "sqrt(3)"]])
            .unwrap();
        assert_eq!(gram_rows(&l), [["4", "0", "2"], ["0", "4", "0"], ["2", "0", "4"]]);
    }

    #[test]
    fn four_dimensional_basis() {
        let l = gram_from_basis(&[
            vec!["2", "0", "0", "0"],
            vec!["0", "2", "0", "0"],
            vec!["1", "0", "sqrt(3)", "0"],
            vec!["0", "1", "2/3*sqrt(3)", "sqrt(5)/sqrt(3)"],
        ])
        .unwrap();
        assert_eq!(
            gram_rows(&l),
            [["4", "0", "2", "0"], ["0", "4", "0", "2"], ["2", "0", "4", "2"], ["0", "2", "2", "4"]]
        );
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            gram_from_basis(&[vec!["1", "0"], vec!["1", "0"]]),
            Err(LatticeError::NotPositiveDefinite { index: 2, .. })
        ));
        assert!(matches!(
            gram_from_basis(&[vec!["1", "0"], vec!["sqrt(2)", "1"]]),
            Err(LatticeError::IrrationalInnerProduct(0, 1))
        ));
        assert!(matches!(
            GramLattice::from_integers(&[[1, 2], [3, 4]]),
            Err(LatticeError::NotSymmetric)
        ));
        assert!(matches!(
            GramLattice::from_integers(&[[1, 2], [2, 1]]),
            Err(LatticeError::NotPositiveDefinite { index: 2, .. })
        ));
        assert!(matches!(
            GramLattice::new(RationalMatrix::identity(25)),
            Err(LatticeError::Dimension(25))
        ));
    }

    #[test]
    fn scaling() {
        let e8 = catalog("E8").unwrap();
        let s = e8.scale(&q("2")).unwrap();
        assert_eq!(s.det(), e8.det() * Rational::from(256));
        assert_eq!(shells::min_norm2(&s).unwrap(), q("4"));
        let a4 = catalog("A4*").unwrap();
        assert_eq!(shells::min_norm2(&a4.scale(&q("5")).unwrap()).unwrap(), q("4"));
        assert_eq!(e8.scale(&Rational::one()).unwrap().gram(), e8.gram());
        assert!(matches!(e8.scale(&q("0")), Err(LatticeError::NonPositiveScale(_))));
        assert!(matches!(e8.scale(&q("-1")), Err(LatticeError::NonPositiveScale(_))));
        assert_eq!(s.scale_note(), "scaled by sqrt(2)");
    }

    #[test]
    fn packing_verdicts() {
        let two_z3 = catalog("Z3:4").unwrap();
        assert_eq!(is_packing_lattice(&two_z3).unwrap(), PackingVerdict::Packing { min_norm2: q("4") });
        let d4 = catalog("D4:2").unwrap();
        assert_eq!(is_packing_lattice(&d4).unwrap(), PackingVerdict::Packing { min_norm2: q("4") });
        match is_packing_lattice(&catalog("Z2").unwrap()).unwrap() {
            PackingVerdict::NotPacking { witness, norm2 } => {
                assert_eq!(norm2, q("1"));
                assert_eq!(witness.iter().map(|x| x.abs()).sum::<i64>(), 1);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let l = catalog("thm2_opt14").unwrap();
        let text = serde_json::to_string(&l.to_file()).unwrap();
        let back = GramLattice::from_json(&text).unwrap();
        assert_eq!(back.gram(), l.gram());
        assert_eq!(back.expected_min_norm2(), Some(&q("4")));
    }

    #[test]
    fn json_with_inconsistent_basis_is_rejected() {
        let text = r#"{"name":"bad","dim":2,"gram":[["4","0"],["0","4"]],
            "basis":[["sqrt(3)","1"],["sqrt(3)","-1"]]}"#;
        assert!(matches!(GramLattice::from_json(text), Err(LatticeError::BasisMismatch { .. })));
        let text = r#"{"name":"bad","dim":3,"gram":[["4","0"],["0","4"]]}"#;
        assert!(matches!(GramLattice::from_json(text), Err(LatticeError::DimMismatch { .. })));
    }
}
