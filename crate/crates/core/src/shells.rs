//! Exact enumeration of lattice vectors in a norm shell `lo2 <= |v|^2 <= hi2`.
//!
//! The Gram matrix is scaled to an integer matrix `G` and decomposed by
//! fraction-free elimination into
//!
//! ```text
//! z^T G z = sum_k S_k^2 / (D_k D_{k+1}),   S_k = D_{k+1} z_k + T_k(z_{k+1}, ...)
//! ```
//!
//! where `D_k` are the leading minors. Coordinates are fixed from the last one
//! down; the partial sums `U_k = D_k * sum_{i>=k} S_i^2 / (D_i D_{i+1})` stay
//! integral, so every pruning bound is an integer square root and no rounding
//! ever happens. Only one vector of each antipodal pair is visited (the last
//! nonzero coordinate is positive); counts are doubled at the end.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{FractionFreeLdl, Rational};
use crate::lattice::GramLattice;

/// Default cap on visited search-tree nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000_000;

#[derive(Debug, thiserror::Error)]
pub enum ShellError {
    #[error("invalid shell query: {0}")]
    InvalidQuery(String),
    #[error(
        "refusing enumeration: about {estimate:.3e} search nodes expected, budget is {budget} \
         (raise the budget or pass --long)"
    )]
    TooLarge { estimate: f64, budget: u64 },
    #[error("node budget of {budget} exhausted after visiting {visited} nodes")]
    BudgetExceeded { budget: u64, visited: u64 },
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShellMode {
    Count,
    Collect,
}

#[derive(Clone, Debug)]
pub struct ShellQuery {
    pub lo2: Rational,
    pub hi2: Rational,
    pub mode: ShellMode,
    /// Keep one vector per antipodal pair in collect mode.
    pub pairs_only: bool,
    /// `None` means unlimited.
    pub node_budget: Option<u64>,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl ShellQuery {
    /// Count-mode query on the closed interval `[lo2, hi2]`.
    pub fn new(lo2: Rational, hi2: Rational) -> Result<Self, ShellError> {
        if lo2.is_negative() {
            return Err(ShellError::InvalidQuery(format!("lo2 = {lo2} is negative")));
        }
        if hi2 < lo2 {
            return Err(ShellError::InvalidQuery(format!("hi2 = {hi2} is below lo2 = {lo2}")));
        }
        Ok(ShellQuery {
            lo2,
            hi2,
            mode: ShellMode::Count,
            pairs_only: false,
            node_budget: Some(DEFAULT_NODE_BUDGET),
            threads: None,
        })
    }

    pub fn collect(mut self) -> Self {
        self.mode = ShellMode::Collect;
        self
    }

    pub fn pairs_only(mut self, yes: bool) -> Self {
        self.pairs_only = yes;
        self
    }

    pub fn node_budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellVector {
    pub coords: Vec<i64>,
    pub norm2: Rational,
}

impl ShellVector {
    pub fn negated(&self) -> ShellVector {
        ShellVector { coords: self.coords.iter().map(|x| -x).collect(), norm2: self.norm2.clone() }
    }
}

/// Result of an enumeration. Counts always include both `v` and `-v`.
#[derive(Clone, Debug)]
pub struct ShellSet {
    pub lo2: Rational,
    pub hi2: Rational,
    pub dim: usize,
    pub histogram: BTreeMap<Rational, u64>,
    pub total: u64,
    pub nodes: u64,
    pub pairs_only: bool,
    vectors: Option<Vec<ShellVector>>,
}

impl ShellSet {
    /// Collected vectors, sorted by norm and then coordinates; `None` in count mode.
    pub fn vectors(&self) -> Option<&[ShellVector]> {
        self.vectors.as_deref()
    }

    pub fn into_vectors(self) -> Option<Vec<ShellVector>> {
        self.vectors
    }

    /// Count of vectors with exactly this norm.
    pub fn count_at(&self, norm2: &Rational) -> u64 {
        self.histogram.get(norm2).copied().unwrap_or(0)
    }
}

/// Enumerates every nonzero `z` with `lo2 <= z^T G z <= hi2`.
pub fn enumerate_shell(lattice: &GramLattice, q: &ShellQuery) -> Result<ShellSet, ShellError> {
    if q.hi2 < q.lo2 || q.lo2.is_negative() {
        return Err(ShellError::InvalidQuery(format!("bad interval [{}, {}]", q.lo2, q.hi2)));
    }
    let (scale, gram) = lattice.integer_gram();
    let ldl = FractionFreeLdl::compute(gram).expect("lattice Gram matrices are positive definite");
    let hi = (q.hi2.as_big_rational() * scale).floor().to_integer();
    let lo = (q.lo2.as_big_rational() * scale).ceil().to_integer();

    if let Some(budget) = q.node_budget {
        let estimate = estimate_nodes(&ldl, &hi);
        if estimate > budget as f64 {
            return Err(ShellError::TooLarge { estimate, budget });
        }
    }

    let run = || -> Result<RawResult, ShellError> {
        let collect = q.mode == ShellMode::Collect;
        match Plan::<i128>::new(&ldl, &hi, &lo) {
            Some(plan) => match plan.run(collect, q.node_budget) {
                Err(Stop::Overflow) => {}
                other => return other.map_err(|s| s.into_error(q.node_budget)),
            },
            None => {}
        }
        let plan = Plan::<BigInt>::new(&ldl, &hi, &lo).expect("BigInt never overflows");
        plan.run(collect, q.node_budget).map_err(|s| s.into_error(q.node_budget))
    };
    let raw = match q.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| ShellError::ThreadPool(e.to_string()))?
            .install(run)?,
        None => run()?,
    };

    let to_norm = |u: &BigInt| Rational::new(u.clone(), scale.clone()).expect("scale is positive");
    let mut histogram = BTreeMap::new();
    let mut total = 0u64;
    for (u, c) in &raw.histogram {
        histogram.insert(to_norm(u), 2 * c);
        total += 2 * c;
    }
    let vectors = raw.vectors.map(|reps| {
        let mut out = Vec::with_capacity(if q.pairs_only { reps.len() } else { 2 * reps.len() });
        for (coords, u) in reps {
            let v = ShellVector { coords, norm2: to_norm(&u) };
            if !q.pairs_only {
                out.push(v.negated());
            }
            out.push(v);
        }
        out.sort_by(|a, b| a.norm2.cmp(&b.norm2).then_with(|| a.coords.cmp(&b.coords)));
        out
    });
    Ok(ShellSet {
        lo2: q.lo2.clone(),
        hi2: q.hi2.clone(),
        dim: lattice.dim(),
        histogram,
        total,
        nodes: raw.nodes,
        pairs_only: q.pairs_only,
        vectors,
    })
}

/// Exact minimum nonzero norm.
pub fn min_norm2(lattice: &GramLattice) -> Result<Rational, ShellError> {
    let g = lattice.gram();
    let bound = (0..lattice.dim()).map(|i| g.get(i, i).clone()).min().expect("dim >= 1");
    let set = enumerate_shell(lattice, &ShellQuery::new(Rational::zero(), bound)?.node_budget(None))?;
    Ok(set.histogram.keys().next().cloned().expect("basis vectors lie within the bound"))
}

/// Count certificate for `X = {v : 4 <= |v|^2 <= hi2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub dim: usize,
    pub hi2: Rational,
    pub is_packing: bool,
    pub min_norm2: Rational,
    pub count: u64,
    pub histogram: BTreeMap<Rational, u64>,
    /// `2 (2^n - 1)`, stated only when `hi2 < 8`.
    pub class_bound: Option<u64>,
    pub bound_respected: Option<bool>,
}

pub fn kappa_star_alpha_certificate(
    lattice: &GramLattice,
    hi2: &Rational,
) -> Result<Certificate, ShellError> {
    let four = Rational::from(4);
    let set = enumerate_shell(lattice, &ShellQuery::new(four.clone(), hi2.clone())?)?;
    let min = min_norm2(lattice)?;
    let n = lattice.dim() as u32;
    let bound = (*hi2 < Rational::from(8)).then(|| 2 * ((1u64 << n) - 1));
    Ok(Certificate {
        dim: lattice.dim(),
        hi2: hi2.clone(),
        is_packing: min >= four,
        min_norm2: min,
        count: set.total,
        histogram: set.histogram,
        class_bound: bound,
        bound_respected: bound.map(|b| set.total <= b),
    })
}

/// Heuristic search-tree size: for each depth `m`, the expected number of
/// points of the projected lattice on the top `m` coordinates inside the
/// radius, i.e. `V_m r^m / sqrt(det)`.
fn estimate_nodes(ldl: &FractionFreeLdl, hi: &BigInt) -> f64 {
    let n = ldl.minors.len() - 1;
    let r2 = hi.to_f64().unwrap_or(f64::INFINITY).max(0.0);
    let ln_dn = ln_big(&ldl.minors[n]);
    let mut vol = vec![1.0f64, 2.0];
    for m in 2..=n {
        vol.push(vol[m - 2] * 2.0 * std::f64::consts::PI / m as f64);
    }
    let mut total = 0.0;
    for m in 1..=n {
        let ln_det = ln_dn - ln_big(&ldl.minors[n - m]);
        let ln_pts = vol[m].ln() + 0.5 * m as f64 * r2.ln() - 0.5 * ln_det;
        total += ln_pts.exp() / 2.0 + 1.0;
    }
    total
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap_or(f64::MAX).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
}

trait Num: Clone + Ord + Send + Sync + Sized {
    fn lift(x: &BigInt) -> Option<Self>;
    fn small(x: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn mul_i64(&self, z: i64) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn div_floor(&self, d: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn isqrt(&self) -> Self;
    fn is_neg(&self) -> bool;
    fn to_i64(&self) -> Option<i64>;
    fn to_big(&self) -> BigInt;
}

impl Num for i128 {
    fn lift(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn small(x: i64) -> Self {
        x as i128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn mul_i64(&self, z: i64) -> Option<Self> {
        self.checked_mul(z as i128)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_floor(&self, d: &Self) -> Self {
        self.div_euclid(*d)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn isqrt(&self) -> Self {
        i128::isqrt(*self)
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Num for BigInt {
    fn lift(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn small(x: i64) -> Self {
        BigInt::from(x)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn mul_i64(&self, z: i64) -> Option<Self> {
        Some(self * z)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_floor(&self, d: &Self) -> Self {
        Integer::div_floor(self, d)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn isqrt(&self) -> Self {
        self.sqrt()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

enum Stop {
    Overflow,
    Budget(u64),
}

impl Stop {
    fn into_error(self, budget: Option<u64>) -> ShellError {
        match self {
            Stop::Budget(visited) => ShellError::BudgetExceeded { budget: budget.unwrap_or(u64::MAX), visited },
            Stop::Overflow => unreachable!("overflow only occurs on the fixed-width path"),
        }
    }
}

struct RawResult {
    histogram: BTreeMap<BigInt, u64>,
    vectors: Option<Vec<(Vec<i64>, BigInt)>>,
    nodes: u64,
}

/// Precomputed integer data of the decomposition for one query.
struct Plan<N> {
    n: usize,
    d: Vec<N>,
    // m[k][j - k] = M^(k)_{k j}
    m: Vec<Vec<N>>,
    // H * D_{k+1}
    hd: Vec<N>,
    lo: N,
}

/// A partially fixed coordinate vector: `z[k..]` set, `u = U_k`.
#[derive(Clone)]
struct Prefix<N> {
    level: usize,
    z: Vec<i64>,
    u: N,
    all_zero: bool,
}

struct Worker<'a, N> {
    plan: &'a Plan<N>,
    z: Vec<i64>,
    histogram: BTreeMap<N, u64>,
    vectors: Option<Vec<(Vec<i64>, N)>>,
    nodes: u64,
    pending: u64,
    shared: &'a Shared,
}

struct Shared {
    nodes: AtomicU64,
    budget: Option<u64>,
    stopped: AtomicBool,
}

const FLUSH_EVERY: u64 = 1 << 14;

impl<N: Num> Plan<N> {
    fn new(ldl: &FractionFreeLdl, hi: &BigInt, lo: &BigInt) -> Option<Self> {
        let n = ldl.minors.len() - 1;
        let d = ldl.minors.iter().map(N::lift).collect::<Option<Vec<_>>>()?;
        let m = ldl
            .pivot_rows
            .iter()
            .map(|r| r.iter().map(N::lift).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let h = N::lift(hi)?;
        let hd = (0..n).map(|k| h.mul(&d[k + 1])).collect::<Option<Vec<_>>>()?;
        let lo = N::lift(&lo.max(&BigInt::one()).clone())?;
        Some(Plan { n, d, m, hd, lo })
    }

    /// Admissible range of `z_k` given `z[k+1..]` and `U_{k+1}`, plus `T_k`.
    fn range(&self, k: usize, z: &[i64], u_next: &N, all_zero: bool) -> Result<Option<(i64, i64, N)>, Stop> {
        let row = &self.m[k];
        let mut t = N::small(0);
        for j in k + 1..self.n {
            if z[j] != 0 {
                t = t.add(&row[j - k].mul_i64(z[j]).ok_or(Stop::Overflow)?).ok_or(Stop::Overflow)?;
            }
        }
        let slack = self.hd[k].sub(u_next).ok_or(Stop::Overflow)?;
        if slack.is_neg() {
            return Ok(None);
        }
        let w = self.d[k].mul(&slack).ok_or(Stop::Overflow)?;
        let s = w.isqrt();
        let dk1 = &self.d[k + 1];
        let hi = s.sub(&t).ok_or(Stop::Overflow)?.div_floor(dk1);
        let lo = s.add(&t).ok_or(Stop::Overflow)?.div_floor(dk1);
        let hi = hi.to_i64().ok_or(Stop::Overflow)?;
        let mut lo = lo.to_i64().ok_or(Stop::Overflow)?.checked_neg().ok_or(Stop::Overflow)?;
        if all_zero {
            lo = lo.max(0);
        }
        Ok((lo <= hi).then_some((lo, hi, t)))
    }

    /// `U_k` for a chosen `z_k`.
    fn next_u(&self, k: usize, zk: i64, t: &N, u_next: &N) -> Result<N, Stop> {
        let s = self.d[k + 1].mul_i64(zk).ok_or(Stop::Overflow)?.add(t).ok_or(Stop::Overflow)?;
        let s2 = s.mul(&s).ok_or(Stop::Overflow)?;
        let num = s2.add(&self.d[k].mul(u_next).ok_or(Stop::Overflow)?).ok_or(Stop::Overflow)?;
        Ok(num.div_exact(&self.d[k + 1]))
    }

    fn children(&self, p: &Prefix<N>) -> Result<Vec<Prefix<N>>, Stop> {
        let k = p.level - 1;
        let mut out = Vec::new();
        if let Some((lo, hi, t)) = self.range(k, &p.z, &p.u, p.all_zero)? {
            for zk in lo..=hi {
                let mut z = p.z.clone();
                z[k] = zk;
                let u = self.next_u(k, zk, &t, &p.u)?;
                out.push(Prefix { level: k, z, u, all_zero: p.all_zero && zk == 0 });
            }
        }
        Ok(out)
    }

    fn run(&self, collect: bool, budget: Option<u64>) -> Result<RawResult, Stop> {
        let shared = Shared { nodes: AtomicU64::new(0), budget, stopped: AtomicBool::new(false) };
        // Split the top of the tree into enough independent subtrees to keep
        // workers busy; leaves of the split become tasks in enumeration order.
        let target = 8 * rayon::current_num_threads().max(1);
        let mut tasks =
            vec![Prefix { level: self.n, z: vec![0; self.n], u: N::small(0), all_zero: true }];
        let mut split_nodes = 0u64;
        while tasks.len() < target && tasks.iter().all(|p| p.level >= 2) {
            let mut next = Vec::new();
            for p in &tasks {
                let c = self.children(p)?;
                split_nodes += c.len() as u64;
                next.extend(c);
            }
            if next.is_empty() {
                tasks = next;
                break;
            }
            tasks = next;
        }
        shared.nodes.fetch_add(split_nodes, Ordering::Relaxed);

        let parts: Vec<Result<Worker<'_, N>, Stop>> = tasks
            .par_iter()
            .map(|p| {
                let mut w = Worker {
                    plan: self,
                    z: p.z.clone(),
                    histogram: BTreeMap::new(),
                    vectors: collect.then(Vec::new),
                    nodes: 0,
                    pending: 0,
                    shared: &shared,
                };
                if p.level == 0 {
                    w.leaf(&p.u, p.all_zero);
                } else {
                    w.search(p.level - 1, &p.u, p.all_zero)?;
                }
                w.flush()?;
                Ok(w)
            })
            .collect();

        let mut histogram: BTreeMap<BigInt, u64> = BTreeMap::new();
        let mut vectors = collect.then(Vec::new);
        let mut nodes = split_nodes;
        let mut budget_stop = None;
        for part in parts {
            match part {
                Ok(w) => {
                    nodes += w.nodes;
                    for (u, c) in w.histogram {
                        *histogram.entry(u.to_big()).or_insert(0) += c;
                    }
                    if let (Some(all), Some(mine)) = (vectors.as_mut(), w.vectors) {
                        all.extend(mine.into_iter().map(|(z, u)| (z, u.to_big())));
                    }
                }
                Err(Stop::Overflow) => return Err(Stop::Overflow),
                Err(Stop::Budget(v)) => budget_stop = Some(v),
            }
        }
        if let Some(v) = budget_stop {
            return Err(Stop::Budget(v));
        }
        Ok(RawResult { histogram, vectors, nodes })
    }
}

impl<N: Num> Worker<'_, N> {
    fn search(&mut self, k: usize, u_next: &N, all_zero: bool) -> Result<(), Stop> {
        let plan = self.plan;
        let Some((lo, hi, t)) = plan.range(k, &self.z, u_next, all_zero)? else {
            return Ok(());
        };
        for zk in lo..=hi {
            self.tick()?;
            self.z[k] = zk;
            let u = plan.next_u(k, zk, &t, u_next)?;
            let zero = all_zero && zk == 0;
            if k == 0 {
                self.leaf(&u, zero);
            } else {
                self.search(k - 1, &u, zero)?;
            }
        }
        self.z[k] = 0;
        Ok(())
    }

    fn leaf(&mut self, u: &N, all_zero: bool) {
        if all_zero || *u < self.plan.lo {
            return;
        }
        *self.histogram.entry(u.clone()).or_insert(0) += 1;
        if let Some(v) = self.vectors.as_mut() {
            v.push((self.z.clone(), u.clone()));
        }
    }

    fn tick(&mut self) -> Result<(), Stop> {
        self.nodes += 1;
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<(), Stop> {
        let total = self.shared.nodes.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if self.shared.stopped.load(Ordering::Relaxed) {
            return Err(Stop::Budget(total));
        }
        if let Some(b) = self.shared.budget {
            if total > b {
                self.shared.stopped.store(true, Ordering::Relaxed);
                return Err(Stop::Budget(total));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::catalog;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn count(name: &str, lo2: &str, hi2: &str) -> u64 {
        let l = catalog(name).unwrap();
        enumerate_shell(&l, &ShellQuery::new(q(lo2), q(hi2)).unwrap()).unwrap().total
    }

    #[test]
    fn small_counts() {
        assert_eq!(count("thm1_hex", "4", "12"), 12);
        assert_eq!(count("thm1_hex", "4", "4"), 6);
        assert_eq!(count("thm1_square", "4", "4"), 4);
        assert_eq!(count("thm1_square", "4", "8"), 8);
        assert_eq!(count("Z3", "0", "1"), 6);
        assert_eq!(count("Z3", "2", "2"), 12);
        assert_eq!(count("thm2_opt14", "4", "16/3"), 14);
    }

    #[test]
    fn e8_histogram() {
        let l = catalog("E8:2").unwrap();
        let set = enumerate_shell(&l, &ShellQuery::new(q("4"), q("8")).unwrap()).unwrap();
        assert_eq!(set.total, 2400);
        assert_eq!(set.count_at(&q("4")), 240);
        assert_eq!(set.count_at(&q("8")), 2160);
    }

    #[test]
    fn collect_mode_matches_count() {
        let l = catalog("D4:2").unwrap();
        let base = ShellQuery::new(q("4"), q("8")).unwrap();
        let set = enumerate_shell(&l, &base.clone().collect()).unwrap();
        let vs = set.vectors().unwrap();
        assert_eq!(vs.len() as u64, set.total);
        assert_eq!(set.total, 48);
        for v in vs {
            assert_eq!(l.norm2(&v.coords), v.norm2);
            assert!(vs.contains(&v.negated()));
        }
        let pairs = enumerate_shell(&l, &base.collect().pairs_only(true)).unwrap();
        assert_eq!(pairs.vectors().unwrap().len(), 24);
        assert_eq!(pairs.total, 48);
    }

    #[test]
    fn min_norms() {
        assert_eq!(min_norm2(&catalog("E8").unwrap()).unwrap(), q("2"));
        assert_eq!(min_norm2(&catalog("A5*").unwrap()).unwrap(), q("5/6"));
        assert_eq!(min_norm2(&catalog("Z3:4").unwrap()).unwrap(), q("4"));
    }

    #[test]
    fn boundaries_are_inclusive() {
        assert_eq!(count("thm1_hex", "12", "12"), 6);
        assert_eq!(count("thm1_hex", "4", "47/4"), 6);
        assert_eq!(count("thm1_hex", "13/3", "12"), 6);
    }

    #[test]
    fn invalid_queries() {
        assert!(ShellQuery::new(q("2"), q("1")).is_err());
        assert!(ShellQuery::new(q("-1"), q("1")).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let l = catalog("E8:2").unwrap();
        let tight = ShellQuery::new(q("4"), q("8")).unwrap().node_budget(Some(10));
        assert!(matches!(
            enumerate_shell(&l, &tight),
            Err(ShellError::TooLarge { .. }) | Err(ShellError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let l = catalog("E7:2").unwrap();
        let base = ShellQuery::new(q("4"), q("8")).unwrap().collect();
        let one = enumerate_shell(&l, &base.clone().threads(Some(1))).unwrap();
        let three = enumerate_shell(&l, &base.threads(Some(3))).unwrap();
        assert_eq!(one.total, 882);
        assert_eq!(one.histogram, three.histogram);
        assert_eq!(one.vectors(), three.vectors());
    }

    #[test]
    fn certificates() {
        let c = kappa_star_alpha_certificate(&catalog("thm1_square").unwrap(), &q("8")).unwrap();
        assert_eq!((c.count, c.is_packing, c.class_bound), (8, true, None));
        let c = kappa_star_alpha_certificate(&catalog("A4*:5").unwrap(), &q("6")).unwrap();
        assert_eq!((c.count, c.class_bound, c.bound_respected), (30, Some(30), Some(true)));
        let c = kappa_star_alpha_certificate(&catalog("A5*:24/5").unwrap(), &q("36/5")).unwrap();
        assert_eq!((c.count, c.class_bound, c.bound_respected), (62, Some(62), Some(true)));
    }
}
