use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_integer::Integer;
use serde::Serialize;

use super::{ClassProfile, StructureError};
use crate::shells::ShellSet;

/// A line of the lattice meeting the shell in at least four points.
///
/// The line is `{base + t * direction : t in Z}` with `direction` primitive
/// and its first nonzero entry positive, and `base` the lattice point whose
/// parameter along the first nonzero direction entry is reduced into
/// `[0, |d|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollinearLine {
    pub direction: Vec<i64>,
    pub base: Vec<i64>,
    /// Shell points on the line, ordered by parameter.
    pub points: Vec<Vec<i64>>,
    /// Maximal arithmetic progressions of length at least 4, as point lists.
    pub progressions: Vec<Vec<Vec<i64>>>,
}

fn primitive_direction(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut d: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let g = d.iter().fold(0i64, |g, &x| g.gcd(&x));
    for x in d.iter_mut() {
        *x /= g;
    }
    if d.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in d.iter_mut() {
            *x = -*x;
        }
    }
    d
}

// Returns (base, t) with a = base + t * d.
fn canonical_point(a: &[i64], d: &[i64]) -> (Vec<i64>, i64) {
    let i = d.iter().position(|&x| x != 0).expect("distinct points");
    let t = Integer::div_floor(&a[i], &d[i]);
    let base = a.iter().zip(d).map(|(x, y)| x - t * y).collect();
    (base, t)
}

/// All lines carrying at least four shell points.
pub fn find_collinear_quadruples(set: &ShellSet) -> Result<Vec<CollinearLine>, StructureError> {
    let vs = set.vectors().ok_or(StructureError::NotCollected)?;
    if set.pairs_only {
        return Err(StructureError::Precondition("collinearity needs both vectors of each pair".into()));
    }
    let mut lines: BTreeMap<(Vec<i64>, Vec<i64>), BTreeSet<i64>> = BTreeMap::new();
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            let d = primitive_direction(&a.coords, &b.coords);
            let (base, ta) = canonical_point(&a.coords, &d);
            let (_, tb) = canonical_point(&b.coords, &d);
            let entry = lines.entry((d, base)).or_default();
            entry.insert(ta);
            entry.insert(tb);
        }
    }
    let point = |base: &[i64], d: &[i64], t: i64| -> Vec<i64> {
        base.iter().zip(d).map(|(b, x)| b + t * x).collect()
    };
    let mut out = Vec::new();
    for ((d, base), ts) in lines {
        if ts.len() < 4 {
            continue;
        }
        let progressions = maximal_progressions(&ts)
            .into_iter()
            .map(|p| p.into_iter().map(|t| point(&base, &d, t)).collect())
            .collect();
        let points = ts.iter().map(|&t| point(&base, &d, t)).collect();
        out.push(CollinearLine { direction: d, base, points, progressions });
    }
    Ok(out)
}

fn maximal_progressions(ts: &BTreeSet<i64>) -> Vec<Vec<i64>> {
    let sorted: Vec<i64> = ts.iter().copied().collect();
    let mut out = Vec::new();
    for (i, &a) in sorted.iter().enumerate() {
        for &b in &sorted[i + 1..] {
            let step = b - a;
            if ts.contains(&(a - step)) {
                continue;
            }
            let mut run = vec![a];
            let mut next = a + step;
            while ts.contains(&next) {
                run.push(next);
                next += step;
            }
            if run.len() >= 4 {
                out.push(run);
            }
        }
    }
    out
}

/// `{v1, v2, v3}` with `v2 = (v1 + v3) / 2`; stored with `v1 < v3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MidpointTriple {
    pub v1: Vec<i64>,
    pub v2: Vec<i64>,
    pub v3: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MidpointTripleSet {
    pub triples: Vec<MidpointTriple>,
}

impl MidpointTripleSet {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }
}

/// Every unordered triple of shell points in which one is the midpoint of the
/// other two.
pub fn midpoint_triples(set: &ShellSet) -> Result<MidpointTripleSet, StructureError> {
    let vs = set.vectors().ok_or(StructureError::NotCollected)?;
    if set.pairs_only {
        return Err(StructureError::Precondition("midpoint triples need both vectors of each pair".into()));
    }
    let members: HashSet<&[i64]> = vs.iter().map(|v| v.coords.as_slice()).collect();
    let mut triples = Vec::new();
    let mut v3 = vec![0i64; set.dim];
    for mid in vs {
        for end in vs {
            for (k, slot) in v3.iter_mut().enumerate() {
                *slot = 2 * mid.coords[k] - end.coords[k];
            }
            if end.coords < v3 && members.contains(v3.as_slice()) {
                triples.push(MidpointTriple {
                    v1: end.coords.clone(),
                    v2: mid.coords.clone(),
                    v3: v3.clone(),
                });
            }
        }
    }
    Ok(MidpointTripleSet { triples })
}

/// Double-counting check for midpoint triples against the class profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCountReport {
    /// Number of midpoint triples.
    pub card_c: u64,
    /// `sum_i 2 i (i - 1) m_i`.
    pub identity_sum: u64,
    pub identity_holds: bool,
    /// `kappa_prev * m_1`.
    pub bound: u64,
    pub inequality_holds: bool,
    pub tight: bool,
}

/// Verifies `card C = sum 2 i (i-1) m_i` and `sum 2 i (i-1) m_i <= kappa_prev * m_1`.
/// A failed identity means the enumeration or partition is wrong and is
/// reported as an error.
pub fn lemma62_check(
    profile: &ClassProfile,
    triples: &MidpointTripleSet,
    kappa_prev: u64,
) -> Result<DoubleCountReport, StructureError> {
    let identity_sum: u64 = profile.m.iter().map(|(&i, &m)| 2 * (i as u64) * (i as u64).saturating_sub(1) * m).sum();
    let card_c = triples.len() as u64;
    if card_c != identity_sum {
        return Err(StructureError::Integrity(format!(
            "{card_c} midpoint triples but the class profile predicts {identity_sum}"
        )));
    }
    let bound = kappa_prev * profile.get(1);
    Ok(DoubleCountReport {
        card_c,
        identity_sum,
        identity_holds: true,
        bound,
        inequality_holds: identity_sum <= bound,
        tight: identity_sum == bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use crate::lattice::catalog;
    use crate::shells::{enumerate_shell, ShellQuery};
    use crate::structure::partition_mod2;

    fn shell(name: &str, hi2: i64) -> ShellSet {
        let l = catalog(name).unwrap();
        let q = ShellQuery::new(Rational::from(4), Rational::from(hi2)).unwrap().collect();
        enumerate_shell(&l, &q).unwrap()
    }

    #[test]
    fn hexagonal_line_of_four() {
        let lines = find_collinear_quadruples(&shell("thm1_hex", 12)).unwrap();
        let expected = vec![vec![2, -1], vec![1, 0], vec![0, 1], vec![-1, 2]];
        let hit = lines.iter().find(|l| {
            let mut p = l.points.clone();
            p.sort();
            let mut e = expected.clone();
            e.sort();
            p == e
        });
        let hit = hit.expect("line through (2,-1), (1,0), (0,1), (-1,2)");
        assert_eq!(hit.progressions.len(), 1);
        // One line at distance sqrt(3) on each side of the three vector directions.
        assert_eq!(lines.len(), 6);
    }

    #[test]
    fn no_lines_below_twelve() {
        assert!(find_collinear_quadruples(&shell("thm1_square", 8)).unwrap().is_empty());
        assert!(find_collinear_quadruples(&shell("thm1_hex", 11)).unwrap().is_empty());
    }

    #[test]
    fn square_triples() {
        let t = midpoint_triples(&shell("thm1_square", 8)).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.triples.contains(&MidpointTriple { v1: vec![1, -1], v2: vec![1, 0], v3: vec![1, 1] }));
        assert!(midpoint_triples(&shell("thm1_hex", 4)).unwrap().is_empty());
    }

    #[test]
    fn e8_double_counting() {
        let s = shell("E8:2", 8);
        let (_, profile) = partition_mod2(&s).unwrap();
        let t = midpoint_triples(&s).unwrap();
        let r = lemma62_check(&profile, &t, 126).unwrap();
        assert_eq!((r.card_c, r.bound, r.tight), (15120, 15120, true));
    }

    #[test]
    fn d4_double_counting_is_strict() {
        let s = shell("D4:2", 8);
        let (_, profile) = partition_mod2(&s).unwrap();
        let r = lemma62_check(&profile, &midpoint_triples(&s).unwrap(), 12).unwrap();
        assert!(r.identity_holds && r.inequality_holds && !r.tight);
    }

    #[test]
    fn empty_profile() {
        let r = lemma62_check(&ClassProfile::default(), &MidpointTripleSet::default(), 12).unwrap();
        assert_eq!((r.card_c, r.bound, r.inequality_holds), (0, 0, true));
    }

    #[test]
    fn identity_failure_is_an_error() {
        let mut p = ClassProfile::default();
        p.m.insert(2, 1);
        assert!(matches!(
            lemma62_check(&p, &MidpointTripleSet::default(), 12),
            Err(StructureError::Integrity(_))
        ));
    }
}
