//! Named lattices.
//!
//! Root lattices and their duals are generated from their Cartan-type Gram
//! matrices; everything else is read from JSON data files compiled into the
//! crate. Setting `KISSING_DATA_DIR` makes `<dir>/lattices/<name>.json` take
//! precedence over the compiled-in copy.

use std::path::PathBuf;

use crate::exact::{Rational, RationalMatrix};

use super::{GramLattice, LatticeError, MAX_DIM};

pub const DATA_DIR_ENV: &str = "KISSING_DATA_DIR";

const SHIPPED: &[(&str, &str)] = &[
    ("Leech", include_str!("../../data/lattices/leech.json")),
    ("thm1_hex", include_str!("../../data/lattices/thm1_hex.json")),
    ("thm1_square", include_str!("../../data/lattices/thm1_square.json")),
    ("thm2_opt14", include_str!("../../data/lattices/thm2_opt14.json")),
    ("thm2_opt20", include_str!("../../data/lattices/thm2_opt20.json")),
    ("rem42_a", include_str!("../../data/lattices/rem42_a.json")),
    ("rem42_b", include_str!("../../data/lattices/rem42_b.json")),
    ("thm3_opt50", include_str!("../../data/lattices/thm3_opt50.json")),
    ("rem71", include_str!("../../data/lattices/rem71.json")),
    ("rem51", include_str!("../../data/lattices/rem51.json")),
];

/// Override directory from the environment, if set.
pub fn data_dir() -> Option<PathBuf> {
    std::env::var_os(DATA_DIR_ENV).map(PathBuf::from)
}

/// Names accepted by [`catalog`], with parametric families shown by example.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> =
        ["Z{n}", "A{n}", "A{n}*", "D{n}", "E6", "E7", "E8"].iter().map(|s| s.to_string()).collect();
    names.extend(SHIPPED.iter().map(|(n, _)| n.to_string()));
    names
}

/// Looks up a lattice by name.
///
/// Accepted forms: a shipped name (`Leech`, `thm2_opt14`, ...), a family
/// member (`Z3`, `A4`, `A4*`, `D5`, `E8`), or either followed by `:c2` to
/// scale by `sqrt(c2)` (`D4:2`, `A5*:24/5`).
pub fn catalog(name: &str) -> Result<GramLattice, LatticeError> {
    if let Some((base, c2)) = name.rsplit_once(':') {
        let c2: Rational = c2.parse()?;
        return catalog(base)?.scale(&c2);
    }
    if let Some(lattice) = load_override(name)? {
        return Ok(lattice);
    }
    if let Some((_, text)) = SHIPPED.iter().find(|(n, _)| *n == name) {
        return GramLattice::from_json(text);
    }
    family(name).ok_or_else(|| LatticeError::UnknownName(name.to_string()))?
}

/// A catalog name, or a lattice file when the argument ends in `.json` or
/// names an existing file.
pub fn resolve(name_or_path: &str) -> Result<GramLattice, LatticeError> {
    if name_or_path.ends_with(".json") || std::path::Path::new(name_or_path).is_file() {
        return GramLattice::load(std::path::Path::new(name_or_path));
    }
    catalog(name_or_path)
}

fn load_override(name: &str) -> Result<Option<GramLattice>, LatticeError> {
    let Some(dir) = data_dir() else { return Ok(None) };
    let path = dir.join("lattices").join(format!("{name}.json"));
    if !path.is_file() {
        return Ok(None);
    }
    GramLattice::load(&path).map(Some)
}

fn family(name: &str) -> Option<Result<GramLattice, LatticeError>> {
    let (head, dual) = match name.strip_suffix('*') {
        Some(h) => (h, true),
        None => (name, false),
    };
    let mut chars = head.chars();
    let letter = chars.next()?;
    let n: usize = chars.as_str().parse().ok()?;
    if n == 0 || n > MAX_DIM {
        return None;
    }
    let (rows, min_norm2, desc): (Vec<Vec<Rational>>, Rational, String) = match (letter, dual) {
        ('Z', false) => (int_rows(identity(n)), Rational::one(), format!("The integer lattice Z^{n}.")),
        ('A', false) => (
            int_rows(cartan_chain(n)),
            Rational::from(2),
            format!("Root lattice A{n} (vectors of Z^{} with coordinate sum 0).", n + 1),
        ),
        ('A', true) => (
            dual_a(n),
            Rational::new(n as i64, n as i64 + 1).expect("nonzero"),
            format!("Dual lattice A{n}*, minimum norm {n}/{}.", n + 1),
        ),
        ('D', false) if n >= 3 => (
            int_rows(cartan_d(n)),
            Rational::from(2),
            format!("Root lattice D{n} (vectors of Z^{n} with even coordinate sum)."),
        ),
        ('E', false) if (6..=8).contains(&n) => {
            (int_rows(cartan_e(n)), Rational::from(2), format!("Root lattice E{n}."))
        }
        _ => return None,
    };
    Some(RationalMatrix::from_rows(rows).map_err(LatticeError::from).and_then(|g| {
        Ok(GramLattice::new(g)?
            .with_name(name)
            .with_expected_min_norm2(min_norm2)
            .with_description(desc))
    }))
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn int_rows(m: Vec<Vec<i64>>) -> Vec<Vec<Rational>> {
    m.into_iter().map(|r| r.into_iter().map(Rational::from).collect()).collect()
}

fn cartan_chain(n: usize) -> Vec<Vec<i64>> {
    let mut m = identity(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
        if i > 0 {
            row[i - 1] = -1;
        }
        if i + 1 < n {
            row[i + 1] = -1;
        }
    }
    m
}

fn link(m: &mut [Vec<i64>], i: usize, j: usize) {
    m[i][j] = -1;
    m[j][i] = -1;
}

// Chain on nodes 0..n-2, last node attached to n-3.
fn cartan_d(n: usize) -> Vec<Vec<i64>> {
    let mut m = cartan_chain(n - 1);
    for row in m.iter_mut() {
        row.push(0);
    }
    m.push(vec![0; n]);
    m[n - 1][n - 1] = 2;
    link(&mut m, n - 1, n - 3);
    m
}

// Chain on nodes 0..n-2, last node attached to 2.
fn cartan_e(n: usize) -> Vec<Vec<i64>> {
    let mut m = cartan_chain(n - 1);
    for row in m.iter_mut() {
        row.push(0);
    }
    m.push(vec![0; n]);
    m[n - 1][n - 1] = 2;
    link(&mut m, n - 1, 2);
    m
}

// Gram matrix of the fundamental weights of A_n: min(i,j)(n+1-max(i,j))/(n+1).
fn dual_a(n: usize) -> Vec<Vec<Rational>> {
    let d = n as i64 + 1;
    (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| Rational::new(i.min(j) * (d - i.max(j)), d).expect("nonzero"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        let det = |name: &str| catalog(name).unwrap().det().to_string();
        assert_eq!(det("Z5"), "1");
        assert_eq!(det("A4"), "5");
        assert_eq!(det("A4*"), "1/5");
        assert_eq!(det("D4"), "4");
        assert_eq!(det("D5"), "4");
        assert_eq!(det("E6"), "3");
        assert_eq!(det("E7"), "2");
        assert_eq!(det("E8"), "1");
        assert_eq!(det("Leech"), "1");
        assert_eq!(det("D4:2"), "64");
    }

    #[test]
    fn shipped_entries_parse() {
        for (name, _) in SHIPPED {
            let l = catalog(name).unwrap();
            assert_eq!(l.name(), Some(*name));
            assert!(l.expected_min_norm2().is_some());
        }
    }

    #[test]
    fn thm2_opt14_gram() {
        let l = catalog("thm2_opt14").unwrap();
        let rows: Vec<Vec<String>> =
            l.gram().to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        assert_eq!(rows, [["4", "-4/3", "4/3"], ["-4/3", "4", "4/3"], ["4/3", "4/3", "4"]]);
    }

    #[test]
    fn unknown_names() {
        for bad in ["E9", "D2", "Q3", "Z0", "Z25", "nope", "E8:abc"] {
            assert!(catalog(bad).is_err(), "{bad}");
        }
        assert!(matches!(catalog("nope"), Err(LatticeError::UnknownName(_))));
    }
}
