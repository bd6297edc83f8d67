//! Coordinates of the form `c * sqrt(r)` with rational `c` and square-free `r`.
//!
//! Lattice bases with irrational coordinates still have rational Gram
//! matrices; parsing each coordinate as a single surd lets the inner products
//! be computed exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse surd {input:?}: {reason}")]
pub struct SurdParseError {
    pub input: String,
    pub reason: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Surd {
    coeff: Rational,
    radicand: u64,
}

fn split_square(n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, rest)
}

impl Surd {
    pub fn rational(c: Rational) -> Self {
        Surd { coeff: c, radicand: 1 }
    }

    /// `sqrt(n)`, with the square part pulled out of the radical.
    pub fn sqrt(n: u64) -> Self {
        if n == 0 {
            return Surd::rational(Rational::zero());
        }
        let (s, r) = split_square(n);
        Surd { coeff: Rational::from(s as i64), radicand: r }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        let g = self.radicand.gcd(&other.radicand);
        let coeff = &self.coeff * &other.coeff * Rational::from(g as i64);
        let radicand = (self.radicand / g) * (other.radicand / g);
        if coeff.is_zero() {
            return Surd::rational(coeff);
        }
        Surd { coeff, radicand }
    }

    pub fn div(&self, other: &Surd) -> Option<Surd> {
        if other.coeff.is_zero() {
            return None;
        }
        // 1 / (c sqrt r) = sqrt(r) / (c r)
        let inv_coeff = (&other.coeff * Rational::from(other.radicand as i64)).recip().ok()?;
        Some(self.mul(&Surd { coeff: inv_coeff, radicand: other.radicand }))
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64() * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 || self.coeff.is_zero() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

impl FromStr for Surd {
    type Err = SurdParseError;

    /// Accepts products and quotients of integers and `sqrt(n)` terms with an
    /// optional leading sign, e.g. `-2/3*sqrt(6)` or `sqrt(5)/sqrt(3)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| SurdParseError { input: s.to_string(), reason: reason.to_string() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (negative, body) = match compact.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, compact.strip_prefix('+').unwrap_or(&compact)),
        };
        if body.is_empty() {
            return Err(err("empty expression"));
        }
        let mut value = Surd::rational(Rational::one());
        let mut op = '*';
        let mut rest = body;
        loop {
            let end = rest.find(['*', '/']).unwrap_or(rest.len());
            let token = &rest[..end];
            let factor = if let Some(inner) =
                token.strip_prefix("sqrt(").and_then(|t| t.strip_suffix(')'))
            {
                let n: u64 = inner.parse().map_err(|_| err("bad radicand"))?;
                Surd::sqrt(n)
            } else {
                let n: i64 = token.parse().map_err(|_| err("bad factor"))?;
                Surd::rational(Rational::from(n))
            };
            value = match op {
                '*' => value.mul(&factor),
                _ => value.div(&factor).ok_or_else(|| err("division by zero"))?,
            };
            if end == rest.len() {
                break;
            }
            op = rest.as_bytes()[end] as char;
            rest = &rest[end + 1..];
        }
        if negative {
            value.coeff = -value.coeff;
        }
        Ok(value)
    }
}

/// Exact inner product of two surd vectors. `None` when the result is
/// irrational.
pub fn inner_product(a: &[Surd], b: &[Surd]) -> Option<Rational> {
    let mut parts: BTreeMap<u64, Rational> = BTreeMap::new();
    for (x, y) in a.iter().zip(b) {
        let p = x.mul(y);
        *parts.entry(p.radicand).or_insert_with(Rational::zero) += &p.coeff;
    }
    let mut rational = Rational::zero();
    for (r, c) in parts {
        if r == 1 {
            rational = c;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(rational)
}
