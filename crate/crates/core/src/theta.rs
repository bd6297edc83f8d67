//! Theta series coefficients of `E8` and the Leech lattice from their closed
//! forms, used as an enumeration-independent count oracle.
//!
//! * `E8` (minimum norm 2): `N(2k) = 240 sigma_3(k)`.
//! * Leech (minimum norm 4): `N(2k) = 65520/691 (sigma_11(k) - tau(k))`, with
//!   `tau` the coefficients of `Delta = q prod (1 - q^m)^24`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

/// Largest `n` for which [`ramanujan_tau`] is available.
pub const TAU_MAX: u64 = 64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ThetaError {
    #[error("argument {0} out of range ({1})")]
    OutOfRange(u64, &'static str),
    #[error("unknown theta lattice {0:?} (expected E8 or Leech)")]
    UnknownLattice(String),
    #[error("integrity: 691 does not divide 65520 (sigma_11({k}) - tau({k}))")]
    NotIntegral { k: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThetaLattice {
    E8,
    Leech,
}

impl fmt::Display for ThetaLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThetaLattice::E8 => "E8",
            ThetaLattice::Leech => "Leech",
        })
    }
}

impl FromStr for ThetaLattice {
    type Err = ThetaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E8" | "e8" => Ok(ThetaLattice::E8),
            "Leech" | "leech" => Ok(ThetaLattice::Leech),
            _ => Err(ThetaError::UnknownLattice(s.to_string())),
        }
    }
}

/// `sigma_k(n) = sum_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> Result<BigInt, ThetaError> {
    if n == 0 {
        return Err(ThetaError::OutOfRange(n, "n >= 1"));
    }
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            total += Pow::pow(BigInt::from(d), k);
            let e = n / d;
            if e != d {
                total += Pow::pow(BigInt::from(e), k);
            }
        }
        d += 1;
    }
    Ok(total)
}

/// Coefficients `tau(1..=n_max)` of `q prod_{m>=1} (1 - q^m)^24`, by exact
/// power-series multiplication. Index 0 of the result is `tau(0) = 0`.
pub fn tau_table(n_max: u64) -> Vec<BigInt> {
    let len = n_max as usize; // series prod (1 - q^m)^24 truncated to degree n_max - 1
    let mut series = vec![BigInt::zero(); len.max(1)];
    series[0] = BigInt::one();
    for m in 1..len {
        for _ in 0..24 {
            // multiply by (1 - q^m), in place from the top
            for j in (m..len).rev() {
                let t = series[j - m].clone();
                series[j] -= t;
            }
        }
    }
    let mut out = vec![BigInt::zero(); len + 1];
    for (j, c) in series.into_iter().enumerate().take(len) {
        out[j + 1] = c;
    }
    out
}

/// Ramanujan's `tau(n)` for `1 <= n <= 64`.
pub fn ramanujan_tau(n: u64) -> Result<BigInt, ThetaError> {
    if !(1..=TAU_MAX).contains(&n) {
        return Err(ThetaError::OutOfRange(n, "1 <= n <= 64"));
    }
    Ok(tau_table(n).swap_remove(n as usize))
}

/// Number of vectors of norm `2k`.
pub fn theta_coefficient(lattice: ThetaLattice, k: u64) -> Result<BigInt, ThetaError> {
    if k == 0 {
        return Ok(BigInt::one());
    }
    match lattice {
        ThetaLattice::E8 => Ok(sigma(3, k)? * 240),
        ThetaLattice::Leech => {
            let tau = ramanujan_tau(k)?;
            leech_from_parts(k, sigma(11, k)?, tau)
        }
    }
}

fn leech_from_parts(k: u64, sigma11: BigInt, tau: BigInt) -> Result<BigInt, ThetaError> {
    let num: BigInt = (sigma11 - tau) * BigInt::from(65520);
    let (q, r) = num.div_rem(&BigInt::from(691));
    if !r.is_zero() {
        return Err(ThetaError::NotIntegral { k });
    }
    Ok(q)
}

/// Leech coefficients for `k = 0..=k_max`, sharing one `tau` expansion.
pub fn leech_coefficients(k_max: u64) -> Result<Vec<BigInt>, ThetaError> {
    if k_max > TAU_MAX {
        return Err(ThetaError::OutOfRange(k_max, "k <= 64"));
    }
    let taus = tau_table(k_max);
    let mut out = vec![BigInt::one()];
    for k in 1..=k_max {
        out.push(leech_from_parts(k, sigma(11, k)?, taus[k as usize].clone())?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn sigmas() {
        assert_eq!(sigma(3, 1).unwrap(), big(1));
        assert_eq!(sigma(3, 2).unwrap(), big(9));
        assert_eq!(sigma(11, 2).unwrap(), big(2049));
        assert_eq!(sigma(3, 12).unwrap(), big(1 + 8 + 27 + 64 + 216 + 1728));
        assert!(sigma(3, 0).is_err());
    }

    #[test]
    fn tau_values() {
        let t: Vec<BigInt> = (1..=6).map(|n| ramanujan_tau(n).unwrap()).collect();
        assert_eq!(t, [1, -24, 252, -1472, 4830, -6048].map(big));
        assert!(ramanujan_tau(0).is_err());
        assert!(ramanujan_tau(65).is_err());
    }

    #[test]
    fn tau_is_multiplicative() {
        let t = tau_table(64);
        for (a, b) in [(2u64, 3u64), (3, 5), (4, 7), (5, 12), (7, 9)] {
            assert_eq!(t[(a * b) as usize], &t[a as usize] * &t[b as usize], "tau({a}*{b})");
        }
        // tau(p^2) = tau(p)^2 - p^11 for primes p
        for p in [2i64, 3, 5, 7] {
            let pp = (p * p) as usize;
            assert_eq!(t[pp], &t[p as usize] * &t[p as usize] - Pow::pow(big(p), 11u32));
        }
    }

    #[test]
    fn coefficients() {
        let e8: Vec<BigInt> = (0..=3).map(|k| theta_coefficient(ThetaLattice::E8, k).unwrap()).collect();
        assert_eq!(e8, [1, 240, 2160, 6720].map(big));
        let leech = leech_coefficients(4).unwrap();
        assert_eq!(leech, [1, 0, 196560, 16773120, 398034000].map(big));
    }

    #[test]
    fn leech_integrality_up_to_64() {
        let c = leech_coefficients(64).unwrap();
        assert!(c.iter().all(|x| *x >= BigInt::zero()));
    }

    #[test]
    fn non_integral_combination_is_detected() {
        assert_eq!(leech_from_parts(2, big(2049), big(0)), Err(ThetaError::NotIntegral { k: 2 }));
    }

    #[test]
    fn names() {
        assert_eq!("Leech".parse::<ThetaLattice>().unwrap(), ThetaLattice::Leech);
        assert!("D4".parse::<ThetaLattice>().is_err());
    }
}
