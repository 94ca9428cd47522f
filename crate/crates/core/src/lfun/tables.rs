//! Per-level data shared by all characters: the group with its basis,
//! Frobenius classes of closed points, and class histograms of effective
//! divisors.

use rayon::prelude::*;

use crate::algebra::field::Fe;
use crate::error::{Error, Result};
use crate::genus0::{Genus0Spec, JmClass, RayClassGroup};
use crate::group::GroupStructure;

/// What the L-function code needs from a curve with modulus at one level.
pub trait CurveLevel: Sync {
    fn level(&self) -> u32;
    /// `q^r`.
    fn level_size(&self) -> u64;
    fn factors(&self) -> &[u64];
    fn exponent(&self) -> u64;
    fn order(&self) -> u64;
    /// Coordinates of the element with dense index `idx`.
    fn coords(&self, idx: usize) -> Vec<u64>;
    /// Dense class indices of the closed points of `U`, grouped by degree
    /// `1..=max_deg`.
    fn closed_point_classes(&self, max_deg: usize) -> Result<Vec<Vec<usize>>>;
    /// For `d = 0..=max_deg`, the number of effective divisors of degree `d`
    /// on `U` in each class.
    fn divisor_histogram(&self, max_deg: usize) -> Result<Vec<Vec<u64>>>;
    /// Upper bound on the number of effective divisors of degree `d`.
    fn divisor_count_bound(&self, d: usize) -> u64;
}

/// `2 * sum_{d <= B} bound(d)`: a carrier prime above this lifts every
/// divisor count uniquely from `F_P` to `Z`.
pub fn carrier_bound<C: CurveLevel + ?Sized>(c: &C, max_deg: usize) -> u64 {
    2 * (0..=max_deg).map(|d| c.divisor_count_bound(d)).sum::<u64>()
}

pub struct Genus0Level {
    pub group: RayClassGroup,
    pub structure: GroupStructure<JmClass>,
}

impl Genus0Level {
    pub fn new(spec: &Genus0Spec, r: u32, budget: u64) -> Result<Genus0Level> {
        let group = RayClassGroup::new(spec, r)?.with_budget(budget);
        let structure = group.structure()?;
        Ok(Genus0Level { group, structure })
    }

    pub fn index_of(&self, c: &JmClass) -> usize {
        self.structure.index_of(c).expect("every class is in the table")
    }

    /// Class index of `f mod m` for monic `f` of degree `j` given by its
    /// lower coefficients; `None` when `f` meets the modulus.
    fn monic_class(&self, lower: &[Fe]) -> Option<usize> {
        let g = &self.group;
        let f = g.field();
        let n = g.degree();
        let m = g.modulus().coeffs();
        let mut v: Vec<Fe> = lower.to_vec();
        v.push(Fe::ONE);
        for i in (n..v.len()).rev() {
            let c = v[i];
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                v[i - n + j] = f.sub(v[i - n + j], f.mul(c, m[j]));
            }
        }
        v.resize(n, Fe::ZERO);
        let p = crate::algebra::poly::Poly::new(v);
        g.normalize(&p).ok().map(|c| self.index_of(&c))
    }
}

impl CurveLevel for Genus0Level {
    fn level(&self) -> u32 {
        self.group.level()
    }

    fn level_size(&self) -> u64 {
        self.group.field().size() as u64
    }

    fn factors(&self) -> &[u64] {
        &self.structure.factors
    }

    fn exponent(&self) -> u64 {
        self.structure.exponent
    }

    fn order(&self) -> u64 {
        self.structure.order
    }

    fn coords(&self, idx: usize) -> Vec<u64> {
        self.structure.coords_of_index(idx)
    }

    /// Degree one starts with infinity, whose class is the identity.
    fn closed_point_classes(&self, max_deg: usize) -> Result<Vec<Vec<usize>>> {
        let id = self.index_of(&self.group.identity_class());
        let cps = self.group.closed_points(max_deg)?;
        Ok(cps
            .into_iter()
            .enumerate()
            .map(|(i, polys)| {
                let mut v: Vec<usize> = if i == 0 { vec![id] } else { Vec::new() };
                v.extend(polys.par_iter().map(|p| {
                    self.index_of(&self.group.class_of_poly(p).expect("coprime closed point"))
                }).collect::<Vec<_>>());
                v
            })
            .collect())
    }

    /// Monic polynomials coprime to `m` carry the affine part; the rest of
    /// the degree sits at infinity, which adds nothing to the class.
    fn divisor_histogram(&self, max_deg: usize) -> Result<Vec<Vec<u64>>> {
        let big_q = self.level_size();
        let total = big_q.checked_pow(max_deg as u32).unwrap_or(u64::MAX);
        if total > self.group.budget().saturating_mul(16) {
            return Err(Error::BudgetExceeded { needed: total, budget: self.group.budget() * 16 });
        }
        let order = self.order() as usize;
        let mut affine: Vec<Vec<u64>> = Vec::with_capacity(max_deg + 1);
        for j in 0..=max_deg {
            let count = big_q.pow(j as u32);
            let hist = (0..count)
                .into_par_iter()
                .fold(
                    || vec![0u64; order],
                    |mut h, mut idx| {
                        let mut lower = Vec::with_capacity(j);
                        for _ in 0..j {
                            lower.push(Fe((idx % big_q) as u32));
                            idx /= big_q;
                        }
                        if let Some(c) = self.monic_class(&lower) {
                            h[c] += 1;
                        }
                        h
                    },
                )
                .reduce(
                    || vec![0u64; order],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                );
            affine.push(hist);
        }
        let mut out = Vec::with_capacity(max_deg + 1);
        let mut running = vec![0u64; order];
        for a in affine {
            running.iter_mut().zip(&a).for_each(|(x, y)| *x += y);
            out.push(running.clone());
        }
        Ok(out)
    }

    /// Effective divisors of degree `d` on `P^1`: `(Q^{d+1} - 1)/(Q - 1)`,
    /// bounded by `(d + 1) Q^d`.
    fn divisor_count_bound(&self, d: usize) -> u64 {
        (d as u64 + 1) * self.level_size().pow(d as u32)
    }
}
