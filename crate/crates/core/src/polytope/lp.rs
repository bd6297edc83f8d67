//! The `L_p` unit balls `B_p^3 = {x : |x_1|^p + |x_2|^p + |x_3|^p <= 1}`.

use serde::Serialize;

use super::{kissing_threshold, PolytopeError, SandwichCertificate, Verdict};

/// Sandwich data for `B_p^3`, decided from the closed-form interval.
#[derive(Clone, Debug, PartialEq)]
pub struct LpVerdict {
    pub p: f64,
    /// Open interval `(ln 3 / ln 2, ln 3 / (ln 3 - ln 2))` of exponents with
    /// a positive verdict.
    pub interval: (f64, f64),
    pub certificate: SandwichCertificate,
}

/// `B_p^3` lies between the balls of radii `min(1, 3^(1/2-1/p))` and
/// `max(1, 3^(1/2-1/p))` (the extremes are the coordinate axes and the main
/// diagonals), so the ratio is `3^|1/2 - 1/p|`. The verdict is positive
/// exactly on the open interval where that ratio is below `2 / sqrt(3)`.
pub fn lp_ball_verdict(p: f64) -> Result<LpVerdict, PolytopeError> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(PolytopeError::Domain(format!("p must be a finite number > 1, got {p}")));
    }
    let (ln2, ln3) = (2f64.ln(), 3f64.ln());
    let interval = (ln3 / ln2, ln3 / (ln3 - ln2));
    let diag = 3f64.powf(0.5 - 1.0 / p);
    let (r_in, r_out) = if p >= 2.0 { (1.0, diag) } else { (diag, 1.0) };
    let verdict = if interval.0 < p && p < interval.1 { Verdict::Kissing12 } else { Verdict::Inconclusive };
    Ok(LpVerdict {
        p,
        interval,
        certificate: SandwichCertificate {
            body: format!("B_{p}^3"),
            r_in,
            r_out,
            ratio: r_out / r_in,
            threshold: kissing_threshold(),
            margin: 0.0,
            verdict,
            symmetric: true,
            witness_vertex: None,
            witness_facet: None,
        },
    })
}

/// Lattice points on the sphere of radius 2 of the `L_p` norm at
/// `p = log2(3)`, for the lattice generated by `(2,0,0)`, `(0,2,0)`,
/// `(1,1,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCountReport {
    pub boundary_count: usize,
    pub boundary_vectors: Vec<[i64; 3]>,
    /// No nonzero lattice vector has `L_p` norm below 2.
    pub packing: bool,
    /// Coefficient box `|a|, |b|, |c| <= scan_radius` that was searched.
    pub scan_radius: i64,
}

/// `|x|^p` at `p = log2(3)` compared against `2^p = 3`: integers 0, 1, 2 give
/// exactly 0, 1, 3 and anything larger exceeds 3, so `sum |x_i|^p` against 3
/// is decided with integer weights.
fn weight(x: i64) -> Option<u32> {
    match x.abs() {
        0 => Some(0),
        1 => Some(1),
        2 => Some(3),
        _ => None,
    }
}

pub fn remark51_count() -> BoundaryCountReport {
    // x = a (2,0,0) + b (0,2,0) + c (1,1,1); a vector with every |x_i| <= 2
    // has |c| <= 2 and |2a + c| <= 2, so |a|, |b| <= 2 and the box of
    // radius 3 covers every candidate.
    let r = 3;
    let mut boundary = Vec::new();
    let mut packing = true;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let x = [2 * a + c, 2 * b + c, c];
                if x == [0, 0, 0] {
                    continue;
                }
                let Some(w) = x.iter().map(|&t| weight(t)).sum::<Option<u32>>() else { continue };
                match w.cmp(&3) {
                    std::cmp::Ordering::Less => packing = false,
                    std::cmp::Ordering::Equal => boundary.push(x),
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
    }
    boundary.sort();
    BoundaryCountReport { boundary_count: boundary.len(), boundary_vectors: boundary, packing, scan_radius: r }
}
