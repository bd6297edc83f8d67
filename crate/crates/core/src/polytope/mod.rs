//! Three-dimensional convex polytopes and in/circumradius sandwich
//! certificates.
//!
//! This is the one floating-point part of the crate. Tolerances are absolute,
//! scaled by the size of the body: `1e-9` for vertex deduplication, facet
//! incidence and feasibility.

mod bodies;
mod lp;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::exact::solve3_f64;

pub use bodies::{body, body_names, PolytopeFile};
pub use lp::{lp_ball_verdict, remark51_count, LpVerdict, BoundaryCountReport};

pub const TOL: f64 = 1e-9;
/// Default safety margin below the threshold for a positive verdict.
pub const DEFAULT_MARGIN: f64 = 1e-9;

/// `2 sqrt(3) / 3`: a centrally symmetric body sandwiched as
/// `r B^3 ⊂ C ⊂ int(t r B^3)` with `t` below this value has lattice kissing
/// number 12.
pub fn kissing_threshold() -> f64 {
    2.0 * 3f64.sqrt() / 3.0
}

#[derive(Debug, thiserror::Error)]
pub enum PolytopeError {
    #[error("origin is not an interior point (offset {0} <= 0)")]
    OriginNotInterior(f64),
    #[error("body is unbounded")]
    Unbounded,
    #[error("body is empty or lower dimensional ({0})")]
    Degenerate(String),
    #[error("body is not centrally symmetric")]
    Asymmetric,
    #[error("{0}")]
    Domain(String),
    #[error("invalid polytope data: {0}")]
    Parse(String),
    #[error("unknown body {0:?}")]
    UnknownBody(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid polytope file: {0}")]
    Json(#[from] serde_json::Error),
}

/// `normal . x <= offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfspace {
    pub normal: [f64; 3],
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: [f64; 3], offset: f64) -> Self {
        Halfspace { normal, offset }
    }

    /// Same halfspace with a unit normal.
    pub fn normalized(&self) -> Halfspace {
        let n = norm(&self.normal);
        // `+ 0.0` turns -0.0 into 0.0 for a stable sort order.
        Halfspace { normal: self.normal.map(|x| x / n + 0.0), offset: self.offset / n }
    }

    pub fn scaled(&self, c: f64) -> Halfspace {
        Halfspace { normal: self.normal, offset: self.offset * c }
    }

    fn eval(&self, x: &[f64; 3]) -> f64 {
        dot(&self.normal, x) - self.offset
    }

    fn same_plane(&self, other: &Halfspace, tol: f64) -> bool {
        (0..3).all(|i| (self.normal[i] - other.normal[i]).abs() <= tol) && (self.offset - other.offset).abs() <= tol
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: &[f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

fn sub(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn close(a: &[f64; 3], b: &[f64; 3], tol: f64) -> bool {
    (0..3).all(|i| (a[i] - b[i]).abs() <= tol)
}

/// A bounded convex body with the origin in its interior, in both
/// representations. `facets` are the non-redundant halfspaces with unit
/// normals; every vertex lies on at least three of them.
#[derive(Clone, Debug)]
pub struct Polytope3 {
    pub name: String,
    pub facets: Vec<Halfspace>,
    pub vertices: Vec<[f64; 3]>,
    pub symmetric: bool,
}

impl Polytope3 {
    /// Intersection of halfspaces.
    pub fn from_hrep(name: impl Into<String>, halfspaces: &[Halfspace]) -> Result<Self, PolytopeError> {
        let mut hs: Vec<Halfspace> = Vec::new();
        for h in halfspaces {
            if norm(&h.normal) == 0.0 {
                return Err(PolytopeError::Parse("halfspace with zero normal".into()));
            }
            let h = h.normalized();
            if h.offset <= 0.0 {
                return Err(PolytopeError::OriginNotInterior(h.offset));
            }
            hs.push(h);
        }
        let scale = hs.iter().map(|h| h.offset).fold(1.0, f64::max);
        let tol = TOL * scale;
        let mut unique: Vec<Halfspace> = Vec::with_capacity(hs.len());
        for h in hs {
            if !unique.iter().any(|g| g.same_plane(&h, tol)) {
                unique.push(h);
            }
        }
        let hs = unique;

        let mut vertices: Vec<[f64; 3]> = Vec::new();
        for i in 0..hs.len() {
            for j in i + 1..hs.len() {
                for k in j + 1..hs.len() {
                    let a = [hs[i].normal, hs[j].normal, hs[k].normal];
                    let b = [hs[i].offset, hs[j].offset, hs[k].offset];
                    let Some(x) = solve3_f64(&a, &b) else { continue };
                    if hs.iter().all(|h| h.eval(&x) <= tol) && !vertices.iter().any(|v| close(v, &x, tol)) {
                        vertices.push(x);
                    }
                }
            }
        }
        let facets = incident_facets(&hs, &vertices, tol);
        if vertices.len() < 4 || facets.len() < 4 {
            return Err(PolytopeError::Degenerate(format!(
                "{} vertices, {} facets",
                vertices.len(),
                facets.len()
            )));
        }
        // Bounded iff the hull of the vertices has no facet other than the given ones.
        let hull = hull_facets(&vertices, tol)?;
        if hull.iter().any(|h| !facets.iter().any(|f| f.same_plane(h, tol * 10.0))) {
            return Err(PolytopeError::Unbounded);
        }
        Ok(Self::finish(name.into(), facets, vertices, tol))
    }

    /// Convex hull of points.
    pub fn from_vrep(name: impl Into<String>, points: &[[f64; 3]]) -> Result<Self, PolytopeError> {
        let scale = points.iter().map(norm).fold(1.0, f64::max);
        let tol = TOL * scale;
        let mut pts: Vec<[f64; 3]> = Vec::new();
        for p in points {
            if !pts.iter().any(|q| close(p, q, tol)) {
                pts.push(*p);
            }
        }
        let facets = hull_facets(&pts, tol)?;
        if let Some(f) = facets.iter().find(|f| f.offset <= tol) {
            return Err(PolytopeError::OriginNotInterior(f.offset));
        }
        let vertices: Vec<[f64; 3]> = pts
            .into_iter()
            .filter(|v| facets.iter().filter(|f| f.eval(v).abs() <= tol).count() >= 3)
            .collect();
        Ok(Self::finish(name.into(), facets, vertices, tol))
    }

    fn finish(name: String, mut facets: Vec<Halfspace>, mut vertices: Vec<[f64; 3]>, tol: f64) -> Self {
        facets.sort_by(cmp_halfspace);
        vertices.sort_by(cmp_point);
        let symmetric = facets.iter().all(|f| {
            let neg = Halfspace { normal: f.normal.map(|x| -x), offset: f.offset };
            facets.iter().any(|g| g.same_plane(&neg, tol * 10.0))
        }) && vertices.iter().all(|v| vertices.iter().any(|w| close(&v.map(|x| -x), w, tol * 10.0)));
        Polytope3 { name, facets, vertices, symmetric }
    }

    /// `c P` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Polytope3 {
        Polytope3 {
            name: format!("{}*{c}", self.name),
            facets: self.facets.iter().map(|f| f.scaled(c)).collect(),
            vertices: self.vertices.iter().map(|v| v.map(|x| x * c)).collect(),
            symmetric: self.symmetric,
        }
    }

    /// Inradius and circumradius about the origin, with the attaining facet
    /// and vertex.
    pub fn radii(&self) -> Radii {
        let (fi, r_in) = self
            .facets
            .iter()
            .enumerate()
            .map(|(i, f)| (i, f.offset))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("at least four facets");
        let (vi, r_out) = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (i, norm(v)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("at least four vertices");
        Radii { r_in, r_out, facet: self.facets[fi], vertex: self.vertices[vi] }
    }
}

fn cmp_halfspace(a: &Halfspace, b: &Halfspace) -> Ordering {
    cmp_point(&a.normal, &b.normal).then(a.offset.total_cmp(&b.offset))
}

fn cmp_point(a: &[f64; 3], b: &[f64; 3]) -> Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])).then(a[2].total_cmp(&b[2]))
}

/// Halfspaces whose plane carries at least three vertices.
fn incident_facets(hs: &[Halfspace], vertices: &[[f64; 3]], tol: f64) -> Vec<Halfspace> {
    hs.iter()
        .filter(|h| vertices.iter().filter(|v| h.eval(v).abs() <= tol).count() >= 3)
        .copied()
        .collect()
}

/// Supporting planes through triples of points that leave every point on
/// one side, with unit normals pointing away from the points.
fn hull_facets(pts: &[[f64; 3]], tol: f64) -> Result<Vec<Halfspace>, PolytopeError> {
    let mut out: Vec<Halfspace> = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let n = cross(&sub(&pts[j], &pts[i]), &sub(&pts[k], &pts[i]));
                let len = norm(&n);
                if len <= tol {
                    continue;
                }
                let n = n.map(|x| x / len + 0.0);
                let b = dot(&n, &pts[i]);
                let above = pts.iter().any(|p| dot(&n, p) - b > tol);
                let below = pts.iter().any(|p| dot(&n, p) - b < -tol);
                let h = match (above, below) {
                    (false, true) => Halfspace { normal: n, offset: b },
                    (true, false) => Halfspace { normal: n.map(|x| -x + 0.0), offset: -b },
                    (false, false) => return Err(PolytopeError::Degenerate("all points are coplanar".into())),
                    (true, true) => continue,
                };
                if !out.iter().any(|g| g.same_plane(&h, tol * 10.0)) {
                    out.push(h);
                }
            }
        }
    }
    if out.len() < 4 {
        return Err(PolytopeError::Degenerate(format!("{} hull facets", out.len())));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Radii {
    pub r_in: f64,
    pub r_out: f64,
    /// A facet at distance `r_in`.
    pub facet: Halfspace,
    /// A vertex at distance `r_out`.
    pub vertex: [f64; 3],
}

impl Radii {
    pub fn ratio(&self) -> f64 {
        self.r_out / self.r_in
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Kissing12,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichCertificate {
    pub body: String,
    pub r_in: f64,
    pub r_out: f64,
    pub ratio: f64,
    pub threshold: f64,
    pub margin: f64,
    pub verdict: Verdict,
    pub symmetric: bool,
    pub witness_vertex: Option<[f64; 3]>,
    pub witness_facet: Option<Halfspace>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerdictOptions {
    pub margin: f64,
    /// Accept bodies that are not centrally symmetric.
    ///
    /// A sandwich `r B ⊂ K ⊂ R B` carries over to the symmetral
    /// `(K - K) / 2`, whose lattice kissing number equals that of `K`, so the
    /// same ratio test applies; the certificate records `symmetric: false`.
    pub allow_asymmetric: bool,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions { margin: DEFAULT_MARGIN, allow_asymmetric: false }
    }
}

/// Ratio test against [`kissing_threshold`].
pub fn theorem51_verdict(p: &Polytope3, opts: VerdictOptions) -> Result<SandwichCertificate, PolytopeError> {
    if !p.symmetric && !opts.allow_asymmetric {
        return Err(PolytopeError::Asymmetric);
    }
    let r = p.radii();
    let threshold = kissing_threshold();
    let ratio = r.ratio();
    Ok(SandwichCertificate {
        body: p.name.clone(),
        r_in: r.r_in,
        r_out: r.r_out,
        ratio,
        threshold,
        margin: opts.margin,
        verdict: if ratio < threshold - opts.margin { Verdict::Kissing12 } else { Verdict::Inconclusive },
        symmetric: p.symmetric,
        witness_vertex: Some(r.vertex),
        witness_facet: Some(r.facet),
    })
}

/// Decimal rendering with 17 significant digits.
pub fn decimal17(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if (-6..=16).contains(&e) {
        let decimals = (16 - e).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.16e}")
    }
}
