//! Divisor counts per class recovered from L-series by character
//! inversion, and the points of `U` read off from them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reconstruction::bundle::LBundle;

/// `counts[e][d]` = number of effective divisors of degree `d` on `U` whose
/// class has dense index `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub level: u32,
    pub factors: Vec<u64>,
    pub counts: Vec<Vec<u64>>,
}

impl CountTable {
    pub fn bound(&self) -> usize {
        self.counts.first().map_or(0, |c| c.len().saturating_sub(1))
    }

    /// Column `d` summed over all classes.
    pub fn total(&self, d: usize) -> u64 {
        self.counts.iter().map(|c| c[d]).sum()
    }
}

/// `N_d(E) = |G|^{-1} sum_chi chi(E)^{-1} a_d(chi)` in `F_P`, lifted to `Z`.
pub fn invert_counts(bundle: &LBundle, r: u32, bound: usize) -> Result<CountTable> {
    let lvl = bundle.level(r)?;
    let chars = lvl.characters()?;
    if bundle.series_bound < bound || lvl.series.iter().any(|s| s.coeffs.len() <= bound) {
        return Err(Error::IncompleteBundle(format!(
            "series stop at T^{}, counts requested to degree {bound}",
            bundle.series_bound
        )));
    }
    let car = lvl.carrier;
    let n = car.order;
    let zeta = car.zeta_powers();
    let order = lvl.order as usize;
    let inv_order = car.inv(car.reduce(order as i64))?;
    let factors = lvl.factors.clone();
    let coords_of = |mut idx: usize| {
        let mut c = vec![0u64; factors.len()];
        for i in (0..factors.len()).rev() {
            c[i] = idx as u64 % factors[i];
            idx /= factors[i] as usize;
        }
        c
    };
    let counts = (0..order)
        .into_par_iter()
        .map(|e| {
            let c = coords_of(e);
            let mut acc = vec![0u64; bound + 1];
            for (chi, s) in chars.iter().zip(&lvl.series) {
                let k = chi.exponent_at(&c);
                let w = zeta[((n - k) % n) as usize];
                for (d, a) in acc.iter_mut().enumerate() {
                    *a = car.add(*a, car.mul(w, s.coeffs[d]));
                }
            }
            acc.into_iter()
                .map(|v| {
                    let v = car.mul(v, inv_order);
                    if v >= car.prime / 2 {
                        Err(Error::CarrierTooSmall { prime: car.prime, value: v })
                    } else {
                        Ok(v)
                    }
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable { level: r, factors: lvl.factors.clone(), counts })
}

/// Dense indices of the classes hit by exactly one effective divisor of
/// degree one, i.e. by a rational point.
pub fn detect_points(counts: &CountTable) -> Result<Vec<usize>> {
    if counts.bound() < 1 {
        return Err(Error::InvalidInput("count table has no degree-one column".into()));
    }
    let mut out = Vec::new();
    for (e, c) in counts.counts.iter().enumerate() {
        match c[1] {
            0 => {}
            1 => out.push(e),
            n => {
                return Err(Error::InjectivityViolation { class: format!("#{e}"), count: n });
            }
        }
    }
    if out.is_empty() {
        log::warn!("NoPoints: no class at level {} has a degree-one divisor", counts.level);
    }
    Ok(out)
}
