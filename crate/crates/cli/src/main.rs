use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kissing::exact::Rational;
use kissing::lattice::{self, catalog_names, GramLattice, DATA_DIR_ENV};
use kissing::polytope::{self, body_names, decimal17, lp_ball_verdict, remark51_count, VerdictOptions};
use kissing::shells::{enumerate_shell, ShellQuery, ShellSet, DEFAULT_NODE_BUDGET};
use kissing::structure::{
    check_remark21, find_collinear_quadruples, lemma62_check, midpoint_triples, partition_mod2, solve_profile_system,
    ProfileSystem,
};
use kissing::theta::{leech_coefficients, theta_coefficient, ThetaLattice};
use kissing::verify::{self, ReportFormat, VerifyOptions, CLAIM_IDS};

#[derive(Parser)]
#[command(name = "kissing", version, about = "Exact lattice kissing-number computations")]
struct Cli {
    /// Directory overriding the shipped data (lattices/, polytopes/, claims.json).
    #[arg(long, global = true, value_name = "DIR")]
    data_dir: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate lattice vectors with lo2 <= |v|^2 <= hi2.
    Shell(ShellArgs),
    /// Partition the shell into classes modulo 2L.
    Classes(ShellArgs),
    /// Midpoint triples and collinear quadruples of the shell.
    Triples {
        #[command(flatten)]
        shell: ShellArgs,
        /// Kissing number of the previous dimension, for the double-counting bound.
        #[arg(long)]
        kappa_prev: Option<u64>,
    },
    /// Solve the integer system on class profiles.
    ProfileSystem {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kappa_prev: u64,
        /// Number of classes available; defaults to 2^n - 1.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        target: u64,
        /// Class sizes forced to zero, comma separated.
        #[arg(long, value_delimiter = ',')]
        fixed_zero: Vec<usize>,
    },
    /// Theta series coefficients of E8 or the Leech lattice.
    Theta {
        #[arg(long)]
        lattice: ThetaLattice,
        /// Coefficient of q^(2k), the number of vectors of norm 2k.
        #[arg(long, conflicts_with = "k_max")]
        k: Option<u64>,
        /// All coefficients for k = 0..=k_max.
        #[arg(long)]
        k_max: Option<u64>,
    },
    /// Inradius, circumradius and the twelve-neighbour verdict of a 3-polytope.
    Polytope(PolytopeArgs),
    /// Named lattices and polytopes.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the checks of one registered claim, or all of them.
    Verify {
        /// Claim id or `all`.
        claim: String,
        #[arg(long)]
        long: bool,
        /// Include wall-clock times (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Every claim together with the two summary tables.
    Report {
        #[arg(long, default_value = "json")]
        format: ReportFormat,
        #[arg(long)]
        long: bool,
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

#[derive(Args)]
struct ShellArgs {
    /// Catalog name (`E8`, `D4:2`, `thm2_opt14`, ...) or path to a lattice JSON file.
    #[arg(long)]
    lattice: String,
    #[arg(long, default_value = "4")]
    lo2: Rational,
    #[arg(long)]
    hi2: Rational,
    /// Report counts only (default for `shell`).
    #[arg(long, conflicts_with = "collect")]
    count: bool,
    /// List the vectors.
    #[arg(long)]
    collect: bool,
    /// Keep one vector per antipodal pair.
    #[arg(long)]
    pairs: bool,
    /// Lift the node budget.
    #[arg(long)]
    long: bool,
    /// Node budget (default 10^10).
    #[arg(long, conflicts_with = "long")]
    budget: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct PolytopeArgs {
    /// Polytope JSON file.
    #[arg(long, conflicts_with_all = ["body", "lp"])]
    file: Option<String>,
    /// Shipped body name (`P_tri`, `P_rid`, `P_trid`, `P_sd`, `cube`, ...).
    #[arg(long, conflicts_with = "lp")]
    body: Option<String>,
    /// The L_p unit ball with this exponent.
    #[arg(long)]
    lp: Option<f64>,
    /// Lattice points on the L_p sphere of radius 2 at p = log2(3).
    #[arg(long, conflicts_with_all = ["file", "body", "lp"])]
    lp_boundary: bool,
    /// Include the sandwich verdict.
    #[arg(long)]
    verdict: bool,
    /// Accept bodies that are not centrally symmetric.
    #[arg(long)]
    allow_asymmetric: bool,
    #[arg(long, default_value_t = polytope::DEFAULT_MARGIN)]
    margin: f64,
}

type CmdResult = Result<(Value, bool), Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(dir) = &cli.data_dir {
        std::env::set_var(DATA_DIR_ENV, dir);
    }
    let result = match cli.command {
        Command::Report { format, long, timings, threads } => run_report(format, long, timings, threads),
        command => run(command).map(|(v, ok)| {
            emit(&(serde_json::to_string_pretty(&v).expect("JSON value") + "\n"));
            ok
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run_report(
    format: ReportFormat,
    long: bool,
    timings: bool,
    threads: Option<usize>,
) -> Result<bool, Box<dyn std::error::Error>> {
    let r = verify::report(VerifyOptions { long, timings, threads })?;
    let mut text = r.render(format);
    if format == ReportFormat::Json {
        text.push('\n');
    }
    emit(&text);
    Ok(r.pass)
}

/// Writes to stdout; a closed pipe (`kissing ... | head`) is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn shell_set(a: &ShellArgs, collect: bool) -> Result<(GramLattice, ShellSet), Box<dyn std::error::Error>> {
    let l = lattice::resolve(&a.lattice)?;
    let budget = if a.long { None } else { Some(a.budget.unwrap_or(DEFAULT_NODE_BUDGET)) };
    let mut q = ShellQuery::new(a.lo2.clone(), a.hi2.clone())?.node_budget(budget).threads(a.threads);
    if collect {
        q = q.collect().pairs_only(a.pairs);
    }
    let set = enumerate_shell(&l, &q)?;
    Ok((l, set))
}

fn histogram(set: &ShellSet) -> Value {
    Value::Object(set.histogram.iter().map(|(r, c)| (r.to_string(), json!(c))).collect())
}

fn vectors_json(vs: &[kissing::shells::ShellVector]) -> Value {
    Value::Array(vs.iter().map(|v| json!({ "coords": v.coords, "norm2": v.norm2.to_string() })).collect())
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Shell(a) => {
            let (l, set) = shell_set(&a, a.collect)?;
            let mut out = json!({
                "lattice": a.lattice,
                "dim": l.dim(),
                "lo2": set.lo2.to_string(),
                "hi2": set.hi2.to_string(),
                "total": set.total,
                "histogram": histogram(&set),
            });
            if let Some(vs) = set.vectors() {
                out["vectors"] = vectors_json(vs);
            }
            Ok((out, true))
        }
        Command::Classes(a) => {
            let (l, set) = shell_set(&ShellArgs { pairs: false, ..a }, true)?;
            let (partition, profile) = partition_mod2(&set)?;
            let violations = if set.hi2 <= Rational::from(8) {
                Some(check_remark21(&l, &partition, &set.hi2)?.len())
            } else {
                None
            };
            let classes: Vec<Value> = partition
                .classes
                .iter()
                .map(|(r, vs)| {
                    let residue: Vec<u32> = (0..l.dim()).map(|i| r >> i & 1).collect();
                    json!({ "residue": residue, "pairs": vs.len(), "vectors": vectors_json(vs) })
                })
                .collect();
            let m: serde_json::Map<String, Value> = profile.m.iter().map(|(i, c)| (i.to_string(), json!(c))).collect();
            Ok((
                json!({
                    "total": set.total,
                    "profile": m,
                    "max_class": profile.max_class(),
                    "classes": classes,
                    "equivalence_violations": violations,
                }),
                true,
            ))
        }
        Command::Triples { shell, kappa_prev } => {
            let (_, set) = shell_set(&ShellArgs { pairs: false, ..shell }, true)?;
            let triples = midpoint_triples(&set)?;
            let lines = find_collinear_quadruples(&set)?;
            let mut out = json!({
                "total": set.total,
                "midpoint_triples": triples.len(),
                "collinear_lines": lines,
            });
            if let Some(k) = kappa_prev {
                let (_, profile) = partition_mod2(&set)?;
                out["double_count"] = serde_json::to_value(lemma62_check(&profile, &triples, k)?)?;
            }
            Ok((out, true))
        }
        Command::ProfileSystem { n, kappa_prev, budget, target, fixed_zero } => {
            let mut sys = ProfileSystem::for_dimension(n, kappa_prev, target).with_fixed_zero(fixed_zero);
            if let Some(b) = budget {
                sys = sys.with_budget(b);
            }
            let r = solve_profile_system(&sys)?;
            let solutions: Vec<Value> = r
                .solutions
                .iter()
                .map(|p| Value::Object(p.m.iter().map(|(i, c)| (i.to_string(), json!(c))).collect()))
                .collect();
            Ok((json!({ "system": r.system, "solutions": solutions, "count": r.solutions.len() }), true))
        }
        Command::Theta { lattice, k, k_max } => {
            let out = match (k, k_max) {
                (Some(k), _) => json!({ "lattice": lattice, "k": k, "norm2": 2 * k,
                    "count": theta_coefficient(lattice, k)?.to_string() }),
                (None, Some(m)) => {
                    let coeffs: Vec<String> = match lattice {
                        ThetaLattice::Leech => leech_coefficients(m)?.iter().map(|c| c.to_string()).collect(),
                        ThetaLattice::E8 => {
                            (0..=m).map(|k| theta_coefficient(lattice, k).map(|c| c.to_string())).collect::<Result<_, _>>()?
                        }
                    };
                    json!({ "lattice": lattice, "k_max": m, "coefficients": coeffs })
                }
                (None, None) => return Err("pass --k or --k-max".into()),
            };
            Ok((out, true))
        }
        Command::Polytope(a) => polytope_cmd(a),
        Command::Catalog { action: CatalogAction::List } => {
            Ok((json!({ "lattices": catalog_names(), "polytopes": body_names(), "claims": CLAIM_IDS }), true))
        }
        Command::Verify { claim, long, timings, threads } => {
            let opts = VerifyOptions { long, timings, threads };
            let reports = if claim == "all" { verify::verify_all(opts)? } else { vec![verify::verify(&claim, opts)?] };
            let pass = reports.iter().all(|r| r.pass);
            Ok((json!({ "claims": reports, "pass": pass }), pass))
        }
        Command::Report { .. } => unreachable!("handled in main"),
    }
}

fn polytope_cmd(a: PolytopeArgs) -> CmdResult {
    if a.lp_boundary {
        let r = remark51_count();
        return Ok((serde_json::to_value(&r)?, true));
    }
    if let Some(p) = a.lp {
        let v = lp_ball_verdict(p)?;
        let c = &v.certificate;
        return Ok((
            json!({
                "body": c.body,
                "p": decimal17(v.p),
                "interval": [decimal17(v.interval.0), decimal17(v.interval.1)],
                "r_in": decimal17(c.r_in),
                "r_out": decimal17(c.r_out),
                "ratio": decimal17(c.ratio),
                "threshold": decimal17(c.threshold),
                "verdict": c.verdict,
            }),
            true,
        ));
    }
    let name = a.file.or(a.body).ok_or("pass --file, --body, --lp or --lp-boundary")?;
    let p = polytope::body(&name)?;
    let r = p.radii();
    let mut out = json!({
        "body": p.name,
        "vertices": p.vertices.len(),
        "facets": p.facets.len(),
        "symmetric": p.symmetric,
        "r_in": decimal17(r.r_in),
        "r_out": decimal17(r.r_out),
        "ratio": decimal17(r.ratio()),
    });
    if a.verdict {
        let opts = VerdictOptions { margin: a.margin, allow_asymmetric: a.allow_asymmetric };
        let c = polytope::theorem51_verdict(&p, opts)?;
        out["threshold"] = json!(decimal17(c.threshold));
        out["margin"] = json!(decimal17(c.margin));
        out["verdict"] = json!(c.verdict);
        out["witness_vertex"] = json!(r.vertex.map(decimal17));
        out["witness_facet"] = json!({
            "normal": r.facet.normal.map(decimal17),
            "offset": decimal17(r.facet.offset),
        });
    }
    Ok((out, true))
}
