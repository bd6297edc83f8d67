//! Structure of shell sets: classes modulo `2Λ`, class profiles, the
//! orthogonality of equivalent pairs, collinear points, midpoint triples and
//! the integer systems that bound class profiles.

mod lines;
mod profile_system;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exact::{bareiss_det, Rational};
use crate::lattice::GramLattice;
use crate::shells::{ShellError, ShellSet, ShellVector};

pub use lines::{
    find_collinear_quadruples, lemma62_check, midpoint_triples, CollinearLine, DoubleCountReport,
    MidpointTriple, MidpointTripleSet,
};
pub use profile_system::{solve_profile_system, ProfileSystem, ProfileSystemResult};

#[derive(Debug, thiserror::Error)]
pub enum StructureError {
    #[error("shell set was enumerated in count mode; collected vectors are required")]
    NotCollected,
    #[error("vector {coords:?} lies in 2Λ but hi2 = {hi2} < 16: the lattice is not a packing lattice")]
    PackingViolated { coords: Vec<i64>, hi2: Rational },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error("profile system search stopped: {0}")]
    SearchTooLarge(String),
    #[error(transparent)]
    Shell(#[from] ShellError),
}

/// One vector from each antipodal pair: the one whose last nonzero coordinate
/// is positive.
pub fn pair_representatives(vectors: &[ShellVector]) -> Vec<&ShellVector> {
    vectors.iter().filter(|v| is_representative(&v.coords)).collect()
}

fn is_representative(z: &[i64]) -> bool {
    z.iter().rev().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

fn collected(set: &ShellSet) -> Result<Vec<&ShellVector>, StructureError> {
    let vs = set.vectors().ok_or(StructureError::NotCollected)?;
    Ok(if set.pairs_only { vs.iter().collect() } else { pair_representatives(vs) })
}

/// Coordinates modulo 2 packed into a bit mask (bit `i` is `z_i mod 2`).
pub fn residue(z: &[i64]) -> u32 {
    z.iter().enumerate().fold(0, |acc, (i, &x)| acc | ((x.rem_euclid(2) as u32) << i))
}

/// Number `m_i` of classes containing exactly `i` antipodal pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassProfile {
    pub m: BTreeMap<usize, u64>,
}

impl ClassProfile {
    pub fn get(&self, i: usize) -> u64 {
        self.m.get(&i).copied().unwrap_or(0)
    }

    /// `sum_i i * m_i`, the number of antipodal pairs.
    pub fn pairs(&self) -> u64 {
        self.m.iter().map(|(&i, &c)| i as u64 * c).sum()
    }

    pub fn classes(&self) -> u64 {
        self.m.values().sum()
    }

    pub fn max_class(&self) -> usize {
        self.m.keys().next_back().copied().unwrap_or(0)
    }
}

/// Shell vectors grouped by residue class modulo `2Λ`; only pair
/// representatives are stored, each class being closed under negation.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub dim: usize,
    pub classes: BTreeMap<u32, Vec<ShellVector>>,
}

impl ClassPartition {
    pub fn class_sizes(&self) -> BTreeMap<u32, usize> {
        self.classes.iter().map(|(&r, v)| (r, v.len())).collect()
    }
}

/// Splits the shell into classes modulo `2Λ` and tallies the profile.
pub fn partition_mod2(set: &ShellSet) -> Result<(ClassPartition, ClassProfile), StructureError> {
    let reps = collected(set)?;
    let mut classes: BTreeMap<u32, Vec<ShellVector>> = BTreeMap::new();
    for v in reps {
        let r = residue(&v.coords);
        if r == 0 && set.hi2 < Rational::from(16) {
            return Err(StructureError::PackingViolated { coords: v.coords.clone(), hi2: set.hi2.clone() });
        }
        classes.entry(r).or_default().push(v.clone());
    }
    let mut profile = ClassProfile::default();
    for members in classes.values() {
        *profile.m.entry(members.len()).or_insert(0) += 1;
    }
    if 2 * profile.pairs() != set.total {
        return Err(StructureError::Integrity(format!(
            "profile accounts for {} pairs but the shell has {} vectors",
            profile.pairs(),
            set.total
        )));
    }
    Ok((ClassPartition { dim: set.dim, classes }, profile))
}

/// Two equivalent, non-antipodal shell vectors that are not an orthogonal
/// pair of norm 8.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceViolation {
    pub v1: Vec<i64>,
    pub v2: Vec<i64>,
    pub norm2_v1: Rational,
    pub norm2_v2: Rational,
    pub inner: Rational,
}

/// Checks that any two equivalent vectors `v1 != ±v2` of the shell both have
/// norm 8 and are orthogonal. Requires `hi2 <= 8`.
pub fn check_remark21(
    lattice: &GramLattice,
    partition: &ClassPartition,
    hi2: &Rational,
) -> Result<Vec<EquivalenceViolation>, StructureError> {
    if *hi2 > Rational::from(8) {
        return Err(StructureError::Precondition(format!("hi2 = {hi2} exceeds 8")));
    }
    let eight = Rational::from(8);
    let mut out = Vec::new();
    for members in partition.classes.values() {
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                let inner = lattice.inner(&a.coords, &b.coords);
                if a.norm2 != eight || b.norm2 != eight || !inner.is_zero() {
                    out.push(EquivalenceViolation {
                        v1: a.coords.clone(),
                        v2: b.coords.clone(),
                        norm2_v1: a.norm2.clone(),
                        norm2_v2: b.norm2.clone(),
                        inner,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Distribution of `|det(v1, v2, v3)| / det(Λ)` over linearly independent
/// triples of shell vectors with norm below `bound2`, counted over pair
/// representatives. For a three-dimensional lattice this is the index of the
/// sublattice spanned by the triple.
pub fn determinant_ratios(
    set: &ShellSet,
    bound2: &Rational,
) -> Result<BTreeMap<u64, u64>, StructureError> {
    if set.dim != 3 {
        return Err(StructureError::Precondition(format!(
            "determinant ratios are defined for dimension 3, got {}",
            set.dim
        )));
    }
    let reps: Vec<&ShellVector> = collected(set)?.into_iter().filter(|v| v.norm2 < *bound2).collect();
    let mut out = BTreeMap::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            for k in j + 1..reps.len() {
                let m = [&reps[i].coords, &reps[j].coords, &reps[k].coords]
                    .iter()
                    .map(|r| r.iter().map(|&x| x.into()).collect())
                    .collect();
                let d = bareiss_det(m);
                if d.sign() != num_bigint::Sign::NoSign {
                    let d: u64 = d.magnitude().try_into().expect("small determinant");
                    *out.entry(d).or_insert(0) += 1;
                }
            }
        }
    }
    Ok(out)
}
