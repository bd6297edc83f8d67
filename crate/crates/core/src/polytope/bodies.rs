//! Polytope data files.
//!
//! A file holds exactly one of
//!
//! * `hrep`: rows `[nx, ny, nz, b]` meaning `n . x <= b`;
//! * `vrep`: rows `[x, y, z]`;
//! * `abs_hrep`: rows `[c1, c2, c3]` meaning `|c1 x| + |c2 y| + |c3 z| <= 1`,
//!   each coefficient written `[a, b]` for `a + b tau` with `tau` the golden
//!   ratio and `a`, `b` rational;
//! * `intersect`: a list of `{"body": name, "scale": [a, b]}`, the
//!   intersection of the named `hrep`/`abs_hrep` bodies scaled by `a + b tau`.
//!
//! Decimal entries are strings (or JSON numbers) parsed as `f64`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Halfspace, Polytope3, PolytopeError};
use crate::exact::Rational;
use crate::lattice::data_dir;

const SHIPPED: &[(&str, &str)] = &[
    ("P_d", include_str!("../../data/polytopes/P_d.json")),
    ("P_i", include_str!("../../data/polytopes/P_i.json")),
    ("P_rtc", include_str!("../../data/polytopes/P_rtc.json")),
    ("P_tri", include_str!("../../data/polytopes/P_tri.json")),
    ("P_rid", include_str!("../../data/polytopes/P_rid.json")),
    ("P_trid", include_str!("../../data/polytopes/P_trid.json")),
    ("P_sd", include_str!("../../data/polytopes/P_sd.json")),
    ("cube", include_str!("../../data/polytopes/cube.json")),
];

pub fn body_names() -> Vec<&'static str> {
    SHIPPED.iter().map(|(n, _)| *n).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Component {
    pub body: String,
    pub scale: [Rational; 2],
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hrep: Option<Vec<[Value; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vrep: Option<Vec<[Value; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_hrep: Option<Vec<[[Rational; 2]; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersect: Option<Vec<Component>>,
}

fn golden(c: &[Rational; 2]) -> f64 {
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    c[0].to_f64() + c[1].to_f64() * tau
}

fn decimal(v: &Value) -> Result<f64, PolytopeError> {
    let x = match v {
        Value::String(s) => s.trim().parse::<f64>().map_err(|_| PolytopeError::Parse(format!("bad number {s:?}")))?,
        Value::Number(n) => n.as_f64().ok_or_else(|| PolytopeError::Parse(format!("bad number {n}")))?,
        other => return Err(PolytopeError::Parse(format!("expected a number, got {other}"))),
    };
    if !x.is_finite() {
        return Err(PolytopeError::Parse(format!("non-finite number {v}")));
    }
    Ok(x)
}

impl PolytopeFile {
    pub fn from_json(text: &str) -> Result<Self, PolytopeError> {
        let f: PolytopeFile = serde_json::from_str(text)?;
        let kinds = [f.hrep.is_some(), f.vrep.is_some(), f.abs_hrep.is_some(), f.intersect.is_some()];
        if kinds.iter().filter(|&&k| k).count() != 1 {
            return Err(PolytopeError::Parse(format!(
                "{}: exactly one of hrep, vrep, abs_hrep, intersect is required",
                f.name
            )));
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self, PolytopeError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| PolytopeError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    /// Halfspaces of an H-described body (`hrep`, `abs_hrep` or `intersect`).
    pub fn halfspaces(&self) -> Result<Vec<Halfspace>, PolytopeError> {
        if let Some(rows) = &self.hrep {
            return rows
                .iter()
                .map(|r| Ok(Halfspace::new([decimal(&r[0])?, decimal(&r[1])?, decimal(&r[2])?], decimal(&r[3])?)))
                .collect();
        }
        if let Some(rows) = &self.abs_hrep {
            let mut out = Vec::new();
            for r in rows {
                let c = r.each_ref().map(golden);
                for signs in 0..8 {
                    let s = |i: usize| if signs >> i & 1 == 1 { -1.0 } else { 1.0 };
                    out.push(Halfspace::new([s(0) * c[0], s(1) * c[1], s(2) * c[2]], 1.0));
                }
            }
            return Ok(out);
        }
        if let Some(parts) = &self.intersect {
            let mut out = Vec::new();
            for part in parts {
                let factor = golden(&part.scale);
                if factor <= 0.0 {
                    return Err(PolytopeError::Parse(format!("non-positive scale for {}", part.body)));
                }
                out.extend(load_file(&part.body)?.halfspaces()?.into_iter().map(|h| h.scaled(factor)));
            }
            return Ok(out);
        }
        Err(PolytopeError::Parse(format!("{} is given by vertices", self.name)))
    }

    pub fn build(&self) -> Result<Polytope3, PolytopeError> {
        if let Some(rows) = &self.vrep {
            let pts = rows
                .iter()
                .map(|r| Ok([decimal(&r[0])?, decimal(&r[1])?, decimal(&r[2])?]))
                .collect::<Result<Vec<_>, PolytopeError>>()?;
            return Polytope3::from_vrep(&self.name, &pts);
        }
        Polytope3::from_hrep(&self.name, &self.halfspaces()?)
    }
}

fn load_file(name: &str) -> Result<PolytopeFile, PolytopeError> {
    if let Some(dir) = data_dir() {
        let path = dir.join("polytopes").join(format!("{name}.json"));
        if path.is_file() {
            return PolytopeFile::load(&path);
        }
    }
    let (_, text) = SHIPPED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| PolytopeError::UnknownBody(name.to_string()))?;
    PolytopeFile::from_json(text)
}

/// A shipped body by name, or a polytope file by path.
pub fn body(name_or_path: &str) -> Result<Polytope3, PolytopeError> {
    let path = Path::new(name_or_path);
    if name_or_path.ends_with(".json") || std::path::Path::new(name_or_path).is_file() {
        return PolytopeFile::load(path)?.build();
    }
    load_file(name_or_path)?.build()
}
