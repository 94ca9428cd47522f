use std::collections::HashMap;

use crate::algebra::field::Fe;
use crate::elliptic::curve::EcPoint;
use crate::elliptic::rayclass::{EcRayClassGroup, RayClass};
use crate::elliptic::spec::EllipticSpec;
use crate::error::{Error, Result};
use crate::group::{decompose, GroupStructure};
use crate::lfun::CurveLevel;

pub struct EllipticLevel {
    pub group: EcRayClassGroup,
    pub structure: GroupStructure<RayClass>,
}

impl EllipticLevel {
    pub fn new(spec: &EllipticSpec, r: u32, budget: u64) -> Result<EllipticLevel> {
        let group = EcRayClassGroup::new(spec, r)?.with_budget(budget);
        let structure = decompose(&group, budget)?;
        Ok(EllipticLevel { group, structure })
    }

    pub fn index_of(&self, c: &RayClass) -> usize {
        self.structure.index_of(c).expect("every class is in the table")
    }

    /// Closed points of `U` of degree exactly `d` over the level field, as
    /// classes `sum_i [Frob^i P] - d [O]`.
    pub fn closed_points_of_degree(&self, d: u32) -> Result<Vec<RayClass>> {
        if d == 1 {
            return Ok(self.group.points_of_u().into_iter().map(|(_, c)| c).collect());
        }
        let big_q = (self.group.field().size() as u64).checked_pow(d).unwrap_or(u64::MAX);
        let budget = self.group.budget().saturating_mul(16);
        if big_q > budget {
            return Err(Error::BudgetExceeded { needed: big_q, budget });
        }
        let (big, emb) = self.group.extend(d)?;
        let down: HashMap<Fe, Fe> = emb.iter().enumerate().map(|(i, &e)| (e, Fe(i as u32))).collect();
        let step = self.group.field().degree();
        let bf = big.field();
        let frob = |p: &EcPoint| match *p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(bf.frobenius_pow(x, step), bf.frobenius_pow(y, step)),
        };
        let mut out = Vec::new();
        for p in big.curve_points() {
            let mut orbit = vec![*p];
            let mut cur = frob(p);
            while cur != *p {
                orbit.push(cur);
                cur = frob(&cur);
            }
            if orbit.len() != d as usize || orbit.iter().min() != Some(p) {
                continue;
            }
            let class = orbit.iter().try_fold(big.identity_class(), |acc, q| {
                Ok::<_, Error>(big.mul(&acc, &big.abel_jacobi(q)?))
            })?;
            let get = |c: &Fe| {
                down.get(c).copied().ok_or_else(|| {
                    Error::NumericalFailure("class of a closed point is not rational".into())
                })
            };
            let point = match class.point {
                EcPoint::Infinity => EcPoint::Infinity,
                EcPoint::Affine(x, y) => EcPoint::Affine(get(&x)?, get(&y)?),
            };
            let torus = class.torus.iter().map(get).collect::<Result<Vec<_>>>()?;
            out.push(self.group.class(point, torus)?);
        }
        Ok(out)
    }
}

impl CurveLevel for EllipticLevel {
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

    fn closed_point_classes(&self, max_deg: usize) -> Result<Vec<Vec<usize>>> {
        (1..=max_deg as u32)
            .map(|d| Ok(self.closed_points_of_degree(d)?.iter().map(|c| self.index_of(c)).collect()))
            .collect()
    }

    /// Expands `prod_y (1 - [y] T^{deg y})^{-1}` in the group ring.
    fn divisor_histogram(&self, max_deg: usize) -> Result<Vec<Vec<u64>>> {
        let n = self.order() as usize;
        let s = &self.structure;
        let mut h = vec![vec![0u64; n]; max_deg + 1];
        h[0][self.index_of(&self.group.identity_class())] = 1;
        for (i, classes) in self.closed_point_classes(max_deg)?.into_iter().enumerate() {
            let d = i + 1;
            for c in classes {
                for j in d..=max_deg {
                    let (lo, hi) = h.split_at_mut(j);
                    for (e, &cnt) in lo[j - d].iter().enumerate() {
                        if cnt != 0 {
                            hi[0][s.mul_index(e, c)] += cnt;
                        }
                    }
                }
            }
        }
        Ok(h)
    }

    /// `#E(F_Q) (Q^d - 1)/(Q - 1)` effective divisors of degree `d >= 1` on
    /// `E`, with the Hasse bound for `#E(F_Q)`.
    fn divisor_count_bound(&self, d: usize) -> u64 {
        if d == 0 {
            return 1;
        }
        let q = self.level_size();
        let hasse = q + 2 * ((q as f64).sqrt().ceil() as u64) + 1;
        hasse * d as u64 * q.pow(d as u32 - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldCtx;
    use crate::elliptic::curve::WeierstrassCurve;
    use crate::genus0::DEFAULT_BUDGET;
    use crate::lfun::{compute_level, polynomial_part};

    fn reference() -> EllipticSpec {
        let f = FieldCtx::prime(5).unwrap();
        let e = WeierstrassCurve::new(f, Fe(1), Fe(0)).unwrap();
        EllipticSpec::new(e, vec![EcPoint::Affine(Fe(0), Fe(0)), EcPoint::Affine(Fe(2), Fe(0))]).unwrap()
    }

    #[test]
    fn closed_point_counts() {
        let lv = EllipticLevel::new(&reference(), 1, DEFAULT_BUDGET).unwrap();
        // #E(F_5) = 4, #E(F_25) = 32, #E(F_125) = 148
        assert_eq!(lv.closed_points_of_degree(1).unwrap().len(), 2);
        assert_eq!(lv.closed_points_of_degree(2).unwrap().len(), (32 - 4) / 2);
        assert_eq!(lv.closed_points_of_degree(3).unwrap().len(), (148 - 4) / 3);
    }

    #[test]
    fn euler_matches_divisor_sum() {
        let lv = EllipticLevel::new(&reference(), 1, DEFAULT_BUDGET).unwrap();
        let all = compute_level(&lv, 4).unwrap();
        assert!(all.agree());
        // divisors of degree d >= s + 1 spread evenly: 5^{d-2} per class
        let hist = lv.divisor_histogram(4).unwrap();
        assert!(hist[3].iter().all(|&c| c == 5));
        assert!(hist[4].iter().all(|&c| c == 25));
        for (chi, l) in all.characters.iter().zip(&all.divisor_sum).skip(1) {
            let part = polynomial_part(l, chi.is_trivial(), 4).unwrap();
            assert!(part.degree() <= 3);
        }
    }
}
