//! Finite-level enumerations of geometric facts about `j(U)` inside
//! `J_m`: translates meet `U` in few points, most classes are a unique sum
//! of `pi` points, `U` generates quickly, and automorphisms have few fixed
//! points.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genus0::{automorphisms_fixing_data, fixed_points, Genus0Spec, JmClass, Mobius, RayClassGroup};
use crate::group::AbelianGroup;
use crate::lfun::{CurveLevel, Genus0Level};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabRow {
    pub a: Vec<u32>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabReport {
    pub level: u32,
    /// `#U(F_{q^r})`, the count for the excluded identity.
    pub identity_count: usize,
    pub rows: Vec<StabRow>,
    pub max: usize,
}

/// For every `a != 1`, `#{u in U : j(u) a in j(U)}`.
pub fn stab_counts(spec: &Genus0Spec, r: u32, budget: u64) -> Result<StabReport> {
    let g = RayClassGroup::new(spec, r)?.with_budget(budget);
    let work = g.order().saturating_mul(g.points().len() as u64);
    if work > budget.saturating_mul(16) {
        return Err(Error::BudgetExceeded { needed: work, budget: budget * 16 });
    }
    let pts: Vec<JmClass> = g.points_of_u().into_iter().map(|(_, c)| c).collect();
    let set: HashSet<&JmClass> = pts.iter().collect();
    let id = g.identity_class();
    let rows: Vec<StabRow> = g
        .elements()?
        .into_par_iter()
        .filter(|a| *a != id)
        .map(|a| {
            let count = pts.iter().filter(|u| set.contains(&g.mul(u, &a))).count();
            StabRow { a: a.codes(), count }
        })
        .collect();
    let max = rows.iter().map(|r| r.count).max().unwrap_or(0);
    Ok(StabReport { level: r, identity_count: pts.len(), rows, max })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniqueSums {
    pub level: u32,
    /// Classes hit by exactly one effective divisor of degree `pi`.
    pub unique: u64,
    pub order: u64,
    /// Effective divisors of degree `pi` on `U`.
    pub divisors: u64,
}

impl UniqueSums {
    pub fn fraction(&self) -> f64 {
        self.unique as f64 / self.order as f64
    }

    /// `self <= other` as exact fractions.
    pub fn le(&self, other: &UniqueSums) -> bool {
        (self.unique as u128) * (other.order as u128) <= (other.unique as u128) * (self.order as u128)
    }
}

/// Divisors of degree `pi` on `U` are a monic polynomial of degree
/// `<= pi` coprime to `m` plus the rest at infinity.
pub fn unique_sum_fraction(spec: &Genus0Spec, r: u32, budget: u64) -> Result<UniqueSums> {
    let lv = Genus0Level::new(spec, r, budget)?;
    let pi = spec.pi();
    let hist = lv.divisor_histogram(pi)?;
    let fiber = &hist[pi];
    Ok(UniqueSums {
        level: r,
        unique: fiber.iter().filter(|&&n| n == 1).count() as u64,
        order: lv.order(),
        divisors: fiber.iter().sum(),
    })
}

/// Least `t` with every class a product of `t` elements of
/// `j(U) u j(U)^{-1}`, by breadth-first search from the identity.
pub fn generation_cover(spec: &Genus0Spec, r: u32, budget: u64) -> Result<usize> {
    let lv = Genus0Level::new(spec, r, budget)?;
    let s = &lv.structure;
    let mut steps: Vec<usize> = Vec::new();
    for (_, c) in lv.group.points_of_u() {
        let i = lv.index_of(&c);
        steps.push(i);
        steps.push(s.inv_index(i));
    }
    steps.sort_unstable();
    steps.dedup();
    let n = s.order as usize;
    let mut dist = vec![usize::MAX; n];
    let start = lv.index_of(&lv.group.identity_class());
    dist[start] = 0;
    let mut frontier = vec![start];
    let mut t = 0;
    let mut seen = 1;
    while !frontier.is_empty() && seen < n {
        t += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for &st in &steps {
                let y = s.mul_index(x, st);
                if dist[y] == usize::MAX {
                    dist[y] = t;
                    seen += 1;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    if seen < n {
        return Err(Error::HypothesisViolated(format!(
            "points generate only {seen} of {n} classes at level {r}"
        )));
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointRow {
    pub alpha: [[u32; 2]; 2],
    pub fixed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub level: u32,
    pub identity_fixed: usize,
    pub rows: Vec<FixedPointRow>,
}

impl FixedPointReport {
    pub fn max(&self) -> usize {
        self.rows.iter().map(|r| r.fixed).max().unwrap_or(0)
    }
}

pub fn fixed_point_counts(spec: &Genus0Spec, r: u32) -> Result<FixedPointReport> {
    let g = RayClassGroup::new(spec, r)?;
    let rows = automorphisms_fixing_data(spec)
        .into_iter()
        .filter(|a| *a != Mobius::identity())
        .map(|a| FixedPointRow { alpha: a.matrix(), fixed: fixed_points(&g, &a) })
        .collect();
    Ok(FixedPointReport { level: r, identity_fixed: g.points().len(), rows })
}
