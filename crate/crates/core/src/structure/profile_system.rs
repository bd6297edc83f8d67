use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{ClassProfile, StructureError};

/// Integer system on a class profile `(m_1, ..., m_k)`:
///
/// ```text
/// 2 * sum_i i m_i              >= target
/// sum_i m_i                    <= class_budget
/// sum_{i>=2} 2 i (i-1) m_i     <= kappa_prev * m_1
/// m_i = 0 for i in fixed_zero
/// ```
///
/// with `i` ranging over `1..=max_pairs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileSystem {
    pub max_pairs: usize,
    pub kappa_prev: u64,
    pub class_budget: u64,
    pub target: u64,
    pub fixed_zero: BTreeSet<usize>,
    /// Refuse once this many solutions have been found.
    pub max_solutions: usize,
    /// Refuse after visiting this many search nodes.
    pub max_nodes: u64,
}

impl ProfileSystem {
    /// The system for dimension `n`: classes hold at most `n` pairs and there
    /// are `2^n - 1` nonzero classes.
    pub fn for_dimension(n: usize, kappa_prev: u64, target: u64) -> Self {
        ProfileSystem {
            max_pairs: n,
            kappa_prev,
            class_budget: (1u64 << n) - 1,
            target,
            fixed_zero: BTreeSet::new(),
            max_solutions: 100_000,
            max_nodes: 50_000_000,
        }
    }

    pub fn with_budget(mut self, class_budget: u64) -> Self {
        self.class_budget = class_budget;
        self
    }

    pub fn with_fixed_zero(mut self, indices: impl IntoIterator<Item = usize>) -> Self {
        self.fixed_zero.extend(indices);
        self
    }

    fn coefficient(i: usize) -> u64 {
        2 * i as u64 * (i as u64 - 1)
    }

    /// Whether a profile satisfies every constraint.
    pub fn admits(&self, p: &ClassProfile) -> bool {
        if p.m.keys().any(|&i| i == 0 || i > self.max_pairs || (self.fixed_zero.contains(&i) && p.get(i) > 0)) {
            return false;
        }
        let cost: u64 = p.m.iter().map(|(&i, &m)| Self::coefficient(i) * m).sum();
        2 * p.pairs() >= self.target && p.classes() <= self.class_budget && cost <= self.kappa_prev * p.get(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileSystemResult {
    pub system: ProfileSystem,
    pub solutions: Vec<ClassProfile>,
    pub nodes: u64,
}

struct Search<'a> {
    sys: &'a ProfileSystem,
    // Free variables m_i, i >= 2, in decreasing order of i.
    order: Vec<usize>,
    need: u64,
    m: Vec<u64>,
    solutions: Vec<ClassProfile>,
    nodes: u64,
}

/// All nonnegative integer solutions, by depth-first search over
/// `m_k, ..., m_2` with `m_1` solved as an interval at the leaves. A subtree
/// is cut when the linear relaxation of the remaining system is infeasible.
pub fn solve_profile_system(sys: &ProfileSystem) -> Result<ProfileSystemResult, StructureError> {
    if sys.max_pairs == 0 || sys.max_pairs > 24 {
        return Err(StructureError::Precondition(format!("max_pairs = {} outside 1..=24", sys.max_pairs)));
    }
    let order: Vec<usize> = (2..=sys.max_pairs).rev().filter(|i| !sys.fixed_zero.contains(i)).collect();
    let mut s = Search {
        sys,
        order,
        need: sys.target.div_ceil(2),
        m: vec![0; sys.max_pairs + 1],
        solutions: Vec::new(),
        nodes: 0,
    };
    s.descend(0, 0, 0, 0)?;
    Ok(ProfileSystemResult { system: sys.clone(), solutions: s.solutions, nodes: s.nodes })
}

impl Search<'_> {
    /// `pairs`, `classes`, `cost` are the contributions of the fixed variables.
    fn descend(&mut self, depth: usize, pairs: u64, classes: u64, cost: u64) -> Result<(), StructureError> {
        self.nodes += 1;
        if self.nodes > self.sys.max_nodes {
            return Err(StructureError::SearchTooLarge(format!("more than {} nodes", self.sys.max_nodes)));
        }
        if !self.relaxation_feasible(depth, pairs, classes, cost) {
            return Ok(());
        }
        if depth == self.order.len() {
            return self.leaf(pairs, classes, cost);
        }
        let i = self.order[depth];
        let c = ProfileSystem::coefficient(i);
        let budget_left = self.sys.class_budget - classes;
        for v in 0..=budget_left {
            self.m[i] = v;
            self.descend(depth + 1, pairs + i as u64 * v, classes + v, cost + c * v)?;
        }
        self.m[i] = 0;
        Ok(())
    }

    fn leaf(&mut self, pairs: u64, classes: u64, cost: u64) -> Result<(), StructureError> {
        if self.sys.fixed_zero.contains(&1) {
            if pairs >= self.need && cost == 0 {
                self.record(0)?;
            }
            return Ok(());
        }
        let k = self.sys.kappa_prev;
        let lo = self.need.saturating_sub(pairs).max(if k == 0 {
            0
        } else {
            cost.div_ceil(k)
        });
        if k == 0 && cost > 0 {
            return Ok(());
        }
        let hi = self.sys.class_budget - classes;
        for m1 in lo..=hi {
            self.record(m1)?;
        }
        Ok(())
    }

    fn record(&mut self, m1: u64) -> Result<(), StructureError> {
        if self.solutions.len() >= self.sys.max_solutions {
            return Err(StructureError::SearchTooLarge(format!(
                "more than {} solutions",
                self.sys.max_solutions
            )));
        }
        let mut profile = ClassProfile { m: BTreeMap::new() };
        if m1 > 0 {
            profile.m.insert(1, m1);
        }
        for &i in &self.order {
            if self.m[i] > 0 {
                profile.m.insert(i, self.m[i]);
            }
        }
        self.solutions.push(profile);
        Ok(())
    }

    /// Feasibility of the continuous relaxation in the free variables.
    ///
    /// Maximising the pair count `y + sum i x_i` subject to
    /// `y + sum x_i <= B` and `kappa y - sum c_i x_i >= C` attains its optimum
    /// at a vertex with at most two nonzero coordinates: either `y = B`, or
    /// `y` and one `x_i` with both constraints tight. The relaxation is
    /// feasible iff that optimum reaches the required pair count.
    fn relaxation_feasible(&self, depth: usize, pairs: u64, classes: u64, cost: u64) -> bool {
        let need = self.need.saturating_sub(pairs) as i128;
        let b = (self.sys.class_budget - classes) as i128;
        let c = cost as i128;
        if self.sys.fixed_zero.contains(&1) {
            // y = 0: only a zero cost is reachable, and then only x_i = 0 for
            // the remaining i >= 2 keep it zero.
            return c == 0 && need == 0;
        }
        let k = self.sys.kappa_prev as i128;
        if k * b < c {
            return false;
        }
        if b >= need {
            return true;
        }
        self.order[depth..].iter().any(|&i| {
            let ci = ProfileSystem::coefficient(i) as i128;
            let i = i as i128;
            // (ci B + C + i (k B - C)) / (ci + k) >= need
            ci * b + c + i * (k * b - c) >= need * (ci + k)
        })
    }
}
