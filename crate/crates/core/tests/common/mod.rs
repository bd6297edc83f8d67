#![allow(dead_code)]

use std::collections::BTreeMap;

use kissing::exact::{Rational, RationalMatrix};
use kissing::lattice::{catalog, GramLattice};
use kissing::shells::{enumerate_shell, ShellQuery, ShellSet};
use num_bigint::BigInt;
use rand::Rng;

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn count(name: &str, lo2: &str, hi2: &str) -> ShellSet {
    let l = catalog(name).unwrap();
    enumerate_shell(&l, &ShellQuery::new(q(lo2), q(hi2)).unwrap()).unwrap()
}

pub fn collect(lattice: &GramLattice, lo2: &str, hi2: &str) -> ShellSet {
    enumerate_shell(lattice, &ShellQuery::new(q(lo2), q(hi2)).unwrap().collect()).unwrap()
}

/// Largest integer `b >= 0` with `b^2 <= x`.
fn isqrt_floor(x: &Rational) -> i64 {
    let mut b = 0i64;
    while Rational::from((b + 1) * (b + 1)) <= *x {
        b += 1;
    }
    b
}

/// Coordinate bounds `|z_i| <= sqrt(hi2 * (G^-1)_ii)` of the ellipsoid `z^T G z <= hi2`.
pub fn box_bounds(lattice: &GramLattice, hi2: &Rational) -> Vec<i64> {
    let inv = lattice.gram().inverse().unwrap();
    (0..lattice.dim()).map(|i| isqrt_floor(&(inv.get(i, i).clone() * hi2.clone()))).collect()
}

/// Naive oracle: every integer point of the bounding box, norms computed exactly.
pub fn box_scan(lattice: &GramLattice, lo2: &Rational, hi2: &Rational) -> BTreeMap<Vec<i64>, Rational> {
    let b = box_bounds(lattice, hi2);
    let n = b.len();
    let mut z: Vec<i64> = b.iter().map(|x| -x).collect();
    let mut out = BTreeMap::new();
    loop {
        if z.iter().any(|&x| x != 0) {
            let r = lattice.norm2(&z);
            if r >= *lo2 && r <= *hi2 {
                out.insert(z.clone(), r);
            }
        }
        let mut i = 0;
        while i < n && z[i] == b[i] {
            z[i] = -b[i];
            i += 1;
        }
        if i == n {
            return out;
        }
        z[i] += 1;
    }
}

pub fn box_size(lattice: &GramLattice, hi2: &Rational) -> u64 {
    box_bounds(lattice, hi2).iter().map(|&b| 2 * b as u64 + 1).product()
}

/// A random unimodular integer matrix built from signed permutations and a
/// few elementary column operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> RationalMatrix {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if i != j {
                    let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                    for row in u.iter_mut() {
                        row[j] += c * row[i];
                    }
                }
            }
            1 => {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                for row in u.iter_mut() {
                    row.swap(i, j);
                }
            }
            _ => {
                let i = rng.gen_range(0..n);
                for row in u.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    let m = RationalMatrix::from_integers(&u).unwrap();
    assert_eq!(m.det().unwrap().abs(), Rational::one());
    m
}

/// Catalog lattices with minimum norm at least 4, used by the structural suites.
pub const PACKING_NAMES: &[&str] = &[
    "thm1_hex",
    "thm1_square",
    "D3:2",
    "thm2_opt14",
    "thm2_opt20",
    "rem42_a",
    "rem42_b",
    "Z3:4",
    "A4*:5",
    "D4:2",
    "thm3_opt50",
    "rem71",
    "Z4:4",
    "D5:2",
    "A5*:24/5",
    "A5:2",
    "E6:2",
];

pub fn big(x: u64) -> BigInt {
    BigInt::from(x)
}
