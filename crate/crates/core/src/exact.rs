//! Exact rational arithmetic and the small amount of dense linear algebra the
//! rest of the crate needs.
//!
//! Every squared length, inner product and determinant on the lattice side is
//! a [`Rational`]. Floating point only appears in [`crate::polytope`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ArithError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, ArithError> {
        Rational::one().checked_div(self)
    }

    pub fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles huge numerators/denominators without overflow.
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ArithError::Parse(s.to_string());
        match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rational::new(p, q)
            }
            None => Ok(Rational::from_integer(t.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        // Accept plain JSON integers as well as "p/q" strings.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Str(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(i) => Ok(Rational::from_integer(i)),
        }
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ArithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != c) {
            return Err(ArithError::Shape(format!(
                "row {i} has {} entries, expected {c}",
                row.len()
            )));
        }
        Ok(RationalMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, ArithError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, ArithError> {
        if self.cols != rhs.rows {
            return Err(ArithError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let s: Rational = (0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum();
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Returns `(L, M)` with `M = L * self` integral and `L` the smallest such
    /// positive integer.
    pub fn to_integer_scaled(&self) -> (BigInt, Vec<Vec<BigInt>>) {
        let l = self.denominator_lcm();
        let rows = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect();
        (l, rows)
    }

    fn require_square(&self) -> Result<(), ArithError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(ArithError::Shape(format!("expected square matrix, got {}x{}", self.rows, self.cols)))
        }
    }

    /// Exact determinant. Integer matrices go through Bareiss fraction-free
    /// elimination, anything else through rational Gaussian elimination.
    pub fn det(&self) -> Result<Rational, ArithError> {
        self.require_square()?;
        if self.is_integral() {
            let rows = (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| x.numer().clone()).collect())
                .collect();
            return Ok(Rational::from_integer(bareiss_det(rows)));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            det *= &a[k][k];
            let pivot = a[k][k].clone();
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].checked_div(&pivot)?;
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= &t;
                }
            }
        }
        Ok(det)
    }

    /// Leading principal minors `D_1, ..., D_n`.
    pub fn leading_minors(&self) -> Result<Vec<Rational>, ArithError> {
        self.require_square()?;
        let (l, m) = self.to_integer_scaled();
        let ldl = FractionFreeLdl::compute(&m);
        let minors = match ldl {
            Some(ldl) => ldl.minors[1..].to_vec(),
            None => {
                // A zero pivot appeared; fall back to one determinant per size.
                return (1..=self.rows)
                    .map(|k| {
                        let sub = RationalMatrix::from_rows(
                            (0..k).map(|i| self.row(i)[..k].to_vec()).collect(),
                        )?;
                        sub.det()
                    })
                    .collect();
            }
        };
        let lr = Rational::from_integer(l);
        let mut scale = Rational::one();
        Ok(minors
            .into_iter()
            .map(|d| {
                scale *= &lr;
                Rational::from_integer(d).checked_div(&scale).expect("scale is nonzero")
            })
            .collect())
    }

    pub fn inverse(&self) -> Result<RationalMatrix, ArithError> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(ArithError::Singular)?;
            a.swap(p, k);
            inv.swap(p, k);
            let r = a[k][k].recip()?;
            for j in 0..n {
                a[k][j] *= &r;
                inv[k][j] *= &r;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= &t;
                    let t = &f * &inv[k][j];
                    inv[i][j] -= &t;
                }
            }
        }
        RationalMatrix::from_rows(inv)
    }
}

/// Determinant of an integer matrix by Bareiss elimination with row pivoting.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(p, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                // Sylvester's identity guarantees exact division.
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Fraction-free symmetric elimination of an integer matrix without pivoting.
///
/// `minors[k]` is the leading `k x k` minor (`minors[0] = 1`) and
/// `pivot_rows[k][j - k]` is the Bareiss entry `M^(k)_{k j}` for `j >= k`.
/// For a symmetric positive definite `G` this gives
/// `z^T G z = sum_k S_k^2 / (D_k D_{k+1})` with the integer linear forms
/// `S_k = sum_{j >= k} M^(k)_{k j} z_j`.
#[derive(Clone, Debug)]
pub struct FractionFreeLdl {
    pub minors: Vec<BigInt>,
    pub pivot_rows: Vec<Vec<BigInt>>,
}

impl FractionFreeLdl {
    /// Returns `None` when a leading minor vanishes.
    pub fn compute(m: &[Vec<BigInt>]) -> Option<Self> {
        let n = m.len();
        let mut a: Vec<Vec<BigInt>> = m.to_vec();
        let mut minors = vec![BigInt::one()];
        let mut pivot_rows = Vec::with_capacity(n);
        for k in 0..n {
            if a[k][k].is_zero() {
                return None;
            }
            pivot_rows.push(a[k][k..].to_vec());
            minors.push(a[k][k].clone());
            let prev = &minors[k];
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / prev;
                }
            }
        }
        Some(FractionFreeLdl { minors, pivot_rows })
    }
}

/// Solves a 3x3 rational system; `None` when the matrix is singular.
pub fn solve3(a: &[[Rational; 3]; 3], b: &[Rational; 3]) -> Option<[Rational; 3]> {
    let m = RationalMatrix::from_rows(a.iter().map(|r| r.to_vec()).collect()).ok()?;
    let det = m.det().ok()?;
    if det.is_zero() {
        return None;
    }
    let mut out: [Rational; 3] = Default::default();
    for (c, slot) in out.iter_mut().enumerate() {
        let mut mc = m.clone();
        for (r, br) in b.iter().enumerate() {
            mc.set(r, c, br.clone());
        }
        *slot = mc.det().ok()?.checked_div(&det).ok()?;
    }
    Some(out)
}

/// Floating-point 3x3 solve by Gaussian elimination with partial pivoting.
///
/// The system is reported singular when the pivot product is below `1e-12`
/// relative to the product of the row norms.
pub fn solve3_f64(a: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let scale: f64 = a.iter().map(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt()).product();
    if scale == 0.0 {
        return None;
    }
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    let mut det = 1.0;
    for k in 0..3 {
        let p = (k..3)
            .max_by(|&i, &j| m[i][k].abs().partial_cmp(&m[j][k].abs()).unwrap_or(Ordering::Equal))
            .unwrap_or(k);
        m.swap(p, k);
        det *= m[k][k];
        if m[k][k] == 0.0 {
            return None;
        }
        for i in k + 1..3 {
            let f = m[i][k] / m[k][k];
            for j in k..4 {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    if det.abs() < 1e-12 * scale {
        return None;
    }
    let mut x = [0.0f64; 3];
    for i in (0..3).rev() {
        let s: f64 = (i + 1..3).map(|j| m[i][j] * x[j]).sum();
        x[i] = (m[i][3] - s) / m[i][i];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn fraction_arithmetic() {
        assert_eq!(q("1/3") + q("1/6"), q("1/2"));
        assert_eq!(q("16/3").cmp(&q("11/2")), Ordering::Less);
        assert_eq!(q("36/5") * q("5/6"), q("6"));
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("-8/4").to_string(), "-2");
        assert_eq!(q("3/-6").to_string(), "-1/2");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q("1").checked_div(&Rational::zero()), Err(ArithError::DivisionByZero));
        assert_eq!(Rational::new(1, 0), Err(ArithError::DivisionByZero));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_uses_canonical_strings() {
        let v = vec![q("4"), q("-4/3")];
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["4","-4/3"]"#);
        let back: Vec<Rational> = serde_json::from_str(r#"["8/2", 7]"#).unwrap();
        assert_eq!(back, vec![q("4"), q("7")]);
    }

    #[test]
    fn determinants() {
        let m = RationalMatrix::from_integers(&[[1, 0, -1], [0, 1, 0], [1, 1, 2]]).unwrap();
        assert_eq!(m.det().unwrap(), q("3"));
        let m = RationalMatrix::from_integers(&[[1, 0, 0], [1, 2, -1], [1, 1, 2]]).unwrap();
        assert_eq!(m.det().unwrap(), q("5"));
        for n in [1, 4, 24] {
            assert_eq!(RationalMatrix::identity(n).det().unwrap(), Rational::one());
        }
        let m = RationalMatrix::from_rows(vec![vec![q("1/2"), q("1/3")], vec![q("1/4"), q("1/5")]])
            .unwrap();
        assert_eq!(m.det().unwrap(), q("1/10") - q("1/12"));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = RationalMatrix::from_integers(&[[1, 2, 3], [4, 5, 6]]).unwrap();
        assert!(matches!(m.det(), Err(ArithError::Shape(_))));
        assert!(RationalMatrix::from_integers(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn det_with_zero_leading_pivot() {
        let m = RationalMatrix::from_integers(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(m.det().unwrap(), q("-1"));
        let m = RationalMatrix::from_integers(&[[0, 0, 1], [0, 1, 0], [1, 0, 0]]).unwrap();
        assert_eq!(m.det().unwrap(), q("-1"));
    }

    #[test]
    fn leading_minors_and_inverse() {
        let g = RationalMatrix::from_rows(vec![
            vec![q("4"), q("-4/3"), q("4/3")],
            vec![q("-4/3"), q("4"), q("4/3")],
            vec![q("4/3"), q("4/3"), q("4")],
        ])
        .unwrap();
        let minors = g.leading_minors().unwrap();
        assert_eq!(minors[0], q("4"));
        assert_eq!(minors[1], q("16") - q("16/9"));
        assert_eq!(minors[2], g.det().unwrap());
        let inv = g.inverse().unwrap();
        assert_eq!(g.mul(&inv).unwrap(), RationalMatrix::identity(3));
        let s = RationalMatrix::from_integers(&[[1, 2], [2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(ArithError::Singular));
    }

    #[test]
    fn solve3_cases() {
        let id = [
            [q("1"), q("0"), q("0")],
            [q("0"), q("1"), q("0")],
            [q("0"), q("0"), q("1")],
        ];
        assert_eq!(solve3(&id, &[q("1"), q("2"), q("3")]), Some([q("1"), q("2"), q("3")]));
        let two = [
            [q("2"), q("0"), q("0")],
            [q("0"), q("2"), q("0")],
            [q("0"), q("0"), q("2")],
        ];
        assert_eq!(solve3(&two, &[q("2"), q("0"), q("0")]), Some([q("1"), q("0"), q("0")]));
        let sing = [
            [q("1"), q("2"), q("3")],
            [q("1"), q("2"), q("3")],
            [q("0"), q("0"), q("1")],
        ];
        assert_eq!(solve3(&sing, &[q("1"), q("1"), q("1")]), None);

        assert_eq!(
            solve3_f64(&[[1., 0., 0.], [0., 1., 0.], [0., 0., 1.]], &[1., 2., 3.]),
            Some([1., 2., 3.])
        );
        assert_eq!(
            solve3_f64(&[[2., 0., 0.], [0., 2., 0.], [0., 0., 2.]], &[2., 0., 0.]),
            Some([1., 0., 0.])
        );
        assert_eq!(solve3_f64(&[[1., 2., 3.], [1., 2., 3.], [0., 0., 1.]], &[1., 1., 1.]), None);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..200).prop_map(|(p, q)| Rational::new(p, q).unwrap())
    }

    fn int_matrix3() -> impl Strategy<Value = RationalMatrix> {
        proptest::collection::vec(-9i64..10, 9).prop_map(|v| {
            RationalMatrix::from_integers(&[&v[0..3], &v[3..6], &v[6..9]]).unwrap()
        })
    }

    proptest! {
        #[test]
        fn add_then_sub_is_identity(a in small_rational(), b in small_rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn canonical_form(a in small_rational(), b in small_rational()) {
            let c = &a * &b;
            prop_assert!(c.denom().is_positive());
            prop_assert!(c.numer().gcd(c.denom()).is_one());
        }

        #[test]
        fn cmp_matches_cross_multiplication(a in small_rational(), b in small_rational()) {
            let lhs = a.numer() * b.denom();
            let rhs = b.numer() * a.denom();
            prop_assert_eq!(a.cmp(&b), lhs.cmp(&rhs));
        }

        #[test]
        fn det_is_multiplicative(a in int_matrix3(), b in int_matrix3()) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }

        #[test]
        fn bareiss_agrees_with_rational_elimination(a in int_matrix3()) {
            let half = Rational::new(1, 2).unwrap();
            // Scaling by 1/2 forces the rational path; det scales by 1/8.
            let scaled = a.scaled(&half).det().unwrap();
            prop_assert_eq!(scaled * Rational::from(8), a.det().unwrap());
        }
    }
}
