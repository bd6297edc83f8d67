use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use super::{verify_all, Status, VerificationReport, VerifyError, VerifyOptions};
use crate::exact::Rational;
use crate::lattice::catalog;
use crate::shells::{enumerate_shell, min_norm2, ShellQuery};
use crate::theta::{theta_coefficient, ThetaLattice};

/// JSON schema for [`Report`].
pub const REPORT_SCHEMA: &str = include_str!("../../data/report.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(format!("unknown format {s:?} (expected json or markdown)")),
        }
    }
}

/// Lattice kissing number of the unit ball, stated against the minimal-vector
/// count of a catalog lattice.
#[derive(Clone, Debug, Serialize)]
pub struct KissingRow {
    pub n: usize,
    pub stated: u64,
    pub lattice: Option<String>,
    pub computed: Option<u64>,
    pub matches: Option<bool>,
}

/// One dimension of the `alpha` table: the regime below `2 sqrt(2) - 2`
/// (`hi2 < 8`) and the value at `2 sqrt(2) - 2` (`hi2 = 8`).
#[derive(Clone, Debug, Serialize)]
pub struct AlphaRow {
    pub n: usize,
    pub below_stated: String,
    /// `2 (2^n - 1)`.
    pub below_bound: u64,
    /// Lattice and squared radius at which the bound is reached, if shipped.
    pub below_witness: Option<Witness>,
    pub at_stated: String,
    pub at_lattice: String,
    pub at_computed: Option<u64>,
    /// `enumeration` or `theta`.
    pub at_method: String,
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub lattice: String,
    pub hi2: Rational,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub claims: Vec<VerificationReport>,
    pub kissing_table: Vec<KissingRow>,
    pub alpha_table: Vec<AlphaRow>,
    pub long: bool,
    pub pass: bool,
}

const KISSING: &[(usize, u64, Option<&str>)] = &[
    (2, 6, Some("A2")),
    (3, 12, Some("D3")),
    (4, 24, Some("D4")),
    (5, 40, Some("D5")),
    (6, 72, Some("E6")),
    (7, 126, Some("E7")),
    (8, 240, Some("E8")),
    (9, 272, None),
    (24, 196560, Some("Leech")),
];

// (n, stated below, witness (lattice, hi2), stated at, lattice at hi2 = 8, expected at)
type AlphaSpec = (usize, &'static str, Option<(&'static str, &'static str)>, &'static str, &'static str, u64);

const ALPHA: &[AlphaSpec] = &[
    (2, "≤6 (attained)", Some(("thm1_hex", "4")), "=8", "thm1_square", 8),
    (3, "≤14 (attained)", Some(("thm2_opt14", "16/3")), "=20", "thm2_opt20", 20),
    (4, "≤30 (attained)", Some(("A4*:5", "6")), "=50", "thm3_opt50", 50),
    (5, "≤62 (attained)", Some(("A5*:24/5", "36/5")), "≥130", "D5:2", 130),
    (6, "≤126 (attained)", None, "≥342", "E6:2", 342),
    (7, "≤254", None, "≥882", "E7:2", 882),
    (8, "≤510", None, "=2400", "E8:2", 2400),
    (24, "≤33554430", None, "≥415003680", "Leech", 415003680),
];

fn count(lattice: &str, lo2: &Rational, hi2: &Rational) -> Option<u64> {
    let l = catalog(lattice).ok()?;
    enumerate_shell(&l, &ShellQuery::new(lo2.clone(), hi2.clone()).ok()?).ok().map(|s| s.total)
}

fn kissing_table() -> Vec<KissingRow> {
    KISSING
        .iter()
        .map(|&(n, stated, lattice)| {
            let computed = lattice.and_then(|name| {
                let l = catalog(name).ok()?;
                let m = min_norm2(&l).ok()?;
                count(name, &m, &m)
            });
            KissingRow {
                n,
                stated,
                lattice: lattice.map(str::to_string),
                computed,
                matches: computed.map(|c| c == stated),
            }
        })
        .collect()
}

fn alpha_table(long: bool) -> Vec<AlphaRow> {
    let four = Rational::from(4);
    let eight = Rational::from(8);
    ALPHA
        .iter()
        .map(|&(n, below_stated, witness, at_stated, at_lattice, expected)| {
            let below_witness = witness.and_then(|(name, hi2)| {
                let hi2: Rational = hi2.parse().ok()?;
                let c = count(name, &four, &hi2)?;
                Some(Witness { lattice: name.to_string(), hi2, count: c })
            });
            let (at_computed, method) = if at_lattice == "Leech" && !long {
                let sum = (2..=4).map(|k| theta_coefficient(ThetaLattice::Leech, k)).sum::<Result<num_bigint::BigInt, _>>();
                (sum.ok().and_then(|s| u64::try_from(s).ok()), "theta")
            } else if at_lattice == "Leech" {
                let l = catalog("Leech").ok();
                let q = ShellQuery::new(four.clone(), eight.clone()).map(|q| q.node_budget(None)).ok();
                let total = l.zip(q).and_then(|(l, q)| enumerate_shell(&l, &q).ok()).map(|s| s.total);
                (total, "enumeration")
            } else {
                (count(at_lattice, &four, &eight), "enumeration")
            };
            AlphaRow {
                n,
                below_stated: below_stated.to_string(),
                below_bound: 2 * ((1u64 << n) - 1),
                below_witness,
                at_stated: at_stated.to_string(),
                at_lattice: at_lattice.to_string(),
                at_computed,
                at_method: method.to_string(),
                matches: at_computed.map(|c| c == expected),
            }
        })
        .collect()
}

/// Runs every claim and reproduces both summary tables.
pub fn report(opts: VerifyOptions) -> Result<Report, VerifyError> {
    let claims = verify_all(opts)?;
    let kissing_table = kissing_table();
    let alpha_table = alpha_table(opts.long);
    let pass = claims.iter().all(|c| c.pass)
        && kissing_table.iter().all(|r| r.matches != Some(false))
        && alpha_table.iter().all(|r| r.matches != Some(false));
    Ok(Report { claims, kissing_table, alpha_table, long: opts.long, pass })
}

impl Report {
    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v: Value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Verification report\n");
        let _ = writeln!(s, "Overall: {}\n", if self.pass { "PASS" } else { "FAIL" });
        let _ = writeln!(s, "## Lattice kissing numbers of the unit ball\n");
        let _ = writeln!(s, "| n | stated | lattice | computed |");
        let _ = writeln!(s, "|---|---|---|---|");
        for r in &self.kissing_table {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} |",
                r.n,
                r.stated,
                r.lattice.as_deref().unwrap_or("none"),
                r.computed.map_or("not in catalog".to_string(), |c| c.to_string())
            );
        }
        let _ = writeln!(s, "\n## Lattice kissing numbers of the annulus X(alpha)\n");
        let _ = writeln!(
            s,
            "| n | alpha < 2√2−2 | alpha = 2√2−2 | computed bound (attained by) | computed at 2√2−2 (lattice, method) |"
        );
        let _ = writeln!(s, "|---|---|---|---|---|");
        for r in &self.alpha_table {
            let witness = match &r.below_witness {
                Some(w) => format!("{} ({} at hi2 = {}: {})", r.below_bound, w.lattice, w.hi2, w.count),
                None => r.below_bound.to_string(),
            };
            let at = match r.at_computed {
                Some(c) => format!("{c} ({}, {})", r.at_lattice, r.at_method),
                None => format!("not computed ({})", r.at_lattice),
            };
            let _ = writeln!(s, "| {} | {} | {} | {} | {} |", r.n, r.below_stated, r.at_stated, witness, at);
        }
        let _ = writeln!(s, "\n## Claims\n");
        for c in &self.claims {
            let _ = writeln!(s, "### {}: {} ({})\n", c.claim, c.title, if c.pass { "pass" } else { "FAIL" });
            let _ = writeln!(s, "| check | expected | computed | status |");
            let _ = writeln!(s, "|---|---|---|---|");
            for k in &c.checks {
                let status = match k.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skipped",
                };
                let computed = match &k.detail {
                    Some(d) if k.computed.is_null() => d.clone(),
                    _ => k.computed.to_string(),
                };
                let _ = writeln!(
                    s,
                    "| {} | `{}` | `{}` | {} |",
                    k.description.replace('|', "\\|"),
                    k.expected.to_string().replace('|', "\\|"),
                    computed.replace('|', "\\|"),
                    status
                );
            }
            let _ = writeln!(s);
        }
        s
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Markdown => self.to_markdown(),
        }
    }
}
