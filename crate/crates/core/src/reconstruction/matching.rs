//! Comparison of two bundles along a group correspondence:
//! `L(T, chi) = L(T, chi o psi^{-1})` at every level.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lfun::{character_group, lfun_divisor_sum, Character, CurveLevel};
use crate::reconstruction::bundle::{psi_index_table, BundleLevel, BundleView, LBundle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelMatch {
    pub level: u32,
    pub orders: (u64, u64),
    pub characters: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchReport {
    pub matched: bool,
    pub levels: Vec<LevelMatch>,
    pub reason: Option<String>,
}

/// Series of a level over a requested carrier, recomputed from the curve
/// when the recorded carrier differs.
fn series_over(
    bl: &BundleLevel,
    lv: &crate::lfun::Genus0Level,
    carrier: &crate::algebra::carrier::FourierCarrier,
    bound: usize,
) -> Result<Vec<Vec<u64>>> {
    if bl.carrier == *carrier {
        return Ok(bl.series.iter().map(|s| s.coeffs[..=bound].to_vec()).collect());
    }
    if carrier.order != lv.exponent() {
        return Err(Error::CarrierMismatch(format!(
            "level {}: roots of unity of order {} and {}",
            bl.level,
            carrier.order,
            lv.exponent()
        )));
    }
    let bound_ok = crate::lfun::carrier_bound(lv, bound);
    if carrier.prime <= bound_ok {
        return Err(Error::CarrierMismatch(format!(
            "level {}: F_{} cannot hold the counts (bound {bound_ok})",
            bl.level, carrier.prime
        )));
    }
    log::info!("level {}: recomputing series over F_{}", bl.level, carrier.prime);
    let hist = lv.divisor_histogram(bound)?;
    character_group(bl.level, &bl.factors, carrier)
        .iter()
        .map(|chi| Ok(lfun_divisor_sum(chi, lv, &hist, bound)?.coeffs))
        .collect()
}

/// Compares bundle `b` with the bundle `a` of the source curve of its
/// correspondence, at every level both contain.
pub fn check_lfun_matching(a: &LBundle, b: &LBundle, budget: u64) -> Result<MatchReport> {
    let levels = a.max_level().min(b.max_level());
    let mut report = MatchReport { matched: true, levels: Vec::new(), reason: None };
    for r in 1..=levels {
        let (oa, ob) = (a.level(r)?.order, b.level(r)?.order);
        if oa != ob {
            report.matched = false;
            report.reason = Some(format!("group orders differ at level {r}: {oa} vs {ob}; no psi exists"));
            report.levels.push(LevelMatch { level: r, orders: (oa, ob), characters: 0, mismatches: 0 });
            return Ok(report);
        }
    }
    let corr = b
        .correspondence
        .as_ref()
        .ok_or_else(|| Error::IncompleteBundle("bundle has no correspondence".into()))?;
    if crate::curve_spec::parse_spec(&corr.source)? != crate::curve_spec::parse_spec(&a.spec)? {
        return Err(Error::IncompleteBundle(
            "correspondence starts at a different curve than the first bundle".into(),
        ));
    }
    let va = BundleView::open(a, levels, budget)?;
    let vb = BundleView::open(b, levels, budget)?;
    let bound = a.series_bound.min(b.series_bound);
    for r in 1..=levels {
        let (la, lb) = (&va.levels[r as usize - 1], &vb.levels[r as usize - 1]);
        let (ba, bb) = (a.level(r)?, b.level(r)?);
        ba.characters()?;
        let chars_b = bb.characters()?;
        let psi = psi_index_table(corr, r, la, lb)?;
        let mut psi_inv = vec![0usize; psi.len()];
        for (i, &j) in psi.iter().enumerate() {
            psi_inv[j] = i;
        }
        let carrier = bb.carrier;
        let sa = series_over(ba, la, &carrier, bound)?;
        let sb: Vec<Vec<u64>> = bb.series.iter().map(|s| s.coeffs[..=bound].to_vec()).collect();
        let n = carrier.order;
        // coordinates on A of psi^{-1}(g_j) for the basis g_j of B
        let pulled: Vec<Vec<u64>> = lb
            .structure
            .generators
            .iter()
            .map(|g| la.coords(psi_inv[lb.index_of(g)]))
            .collect();
        let chars_a = character_group(r, la.factors(), &carrier);
        let mut mismatches = 0;
        for (chi, coeffs) in chars_a.iter().zip(&sa) {
            let exps = lb
                .factors()
                .iter()
                .zip(&pulled)
                .map(|(&nj, c)| {
                    let k = chi.exponent_at(c);
                    let step = n / nj;
                    if k % step != 0 {
                        Err(Error::NotAnIsomorphism(format!(
                            "level {r}: pulled-back character has the wrong order"
                        )))
                    } else {
                        Ok(k / step)
                    }
                })
                .collect::<Result<Vec<u64>>>()?;
            let chi_b = Character { level: r, exponents: exps, factors: lb.factors().to_vec(), carrier };
            let idx = chars_b.iter().position(|c| *c == chi_b).expect("exponents in range");
            if *coeffs != sb[idx] {
                mismatches += 1;
            }
        }
        report.levels.push(LevelMatch {
            level: r,
            orders: (la.order(), lb.order()),
            characters: chars_a.len(),
            mismatches,
        });
        if mismatches > 0 && report.matched {
            report.matched = false;
            report.reason = Some(format!("{mismatches} character(s) disagree at level {r}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldCtx;
    use crate::algebra::text::parse_poly;
    use crate::algebra::field::Fe;
    use crate::genus0::{Genus0Spec, Mobius, DEFAULT_BUDGET};
    use crate::reconstruction::bundle::{build_bundle, class_from_codes, Twist};

    fn spec(q: u32, m: &str) -> Genus0Spec {
        let f = FieldCtx::of_order(q).unwrap();
        Genus0Spec::new(f.clone(), parse_poly(m, &f).unwrap()).unwrap()
    }

    #[test]
    fn self_and_shifted() {
        let a = spec(3, "x^3");
        let ba = build_bundle(&a, 2, 4, DEFAULT_BUDGET, Some((&a, &Twist::identity()))).unwrap();
        let rep = check_lfun_matching(&ba, &ba, DEFAULT_BUDGET).unwrap();
        assert!(rep.matched, "{rep:?}");
        assert_eq!(rep.levels.len(), 2);

        let tw = Twist::shift(a.field(), 1);
        let b = tw.apply_to_spec(&a).unwrap();
        assert_eq!(b, spec(3, "x^3 + 2"));
        let bb = build_bundle(&b, 2, 4, DEFAULT_BUDGET, Some((&a, &tw))).unwrap();
        let rep = check_lfun_matching(&ba, &bb, DEFAULT_BUDGET).unwrap();
        assert!(rep.matched, "{rep:?}");
    }

    #[test]
    fn wrong_correspondence_fails() {
        let a = spec(3, "x^3 + 2*x + 1");
        let ba = build_bundle(&a, 2, 4, DEFAULT_BUDGET, Some((&a, &Twist::identity()))).unwrap();
        let tw = Twist { alpha: Mobius::affine(Fe(2), Fe(0)), l: 0 };
        let b = tw.apply_to_spec(&a).unwrap();
        let mut bb = build_bundle(&b, 2, 4, DEFAULT_BUDGET, Some((&a, &tw))).unwrap();
        assert!(check_lfun_matching(&ba, &bb, DEFAULT_BUDGET).unwrap().matched);
        // compose psi with inversion: still an isomorphism, wrong L-data
        let view = BundleView::open(&bb, 2, DEFAULT_BUDGET).unwrap();
        for lvl in &mut bb.correspondence.as_mut().unwrap().levels {
            let g = &view.levels[lvl.level as usize - 1].group;
            for (_, img) in lvl.pairs.iter_mut() {
                *img = g.inv(&class_from_codes(img)).codes();
            }
        }
        let rep = check_lfun_matching(&ba, &bb, DEFAULT_BUDGET).unwrap();
        assert!(!rep.matched);
    }

    #[test]
    fn different_orders_stop_at_the_precondition() {
        let a = spec(3, "x^3");
        let c = spec(3, "x^3 + x");
        let ba = build_bundle(&a, 1, 3, DEFAULT_BUDGET, None).unwrap();
        let bc = build_bundle(&c, 1, 3, DEFAULT_BUDGET, Some((&c, &Twist::identity()))).unwrap();
        let rep = check_lfun_matching(&ba, &bc, DEFAULT_BUDGET).unwrap();
        assert!(!rep.matched);
        assert_eq!(rep.levels[0].orders, (9, 8));
        assert!(rep.reason.unwrap().contains("9 vs 8"));
    }

    #[test]
    fn carriers_are_reconciled() {
        let a = spec(3, "x^3");
        let ba = build_bundle(&a, 1, 3, DEFAULT_BUDGET, Some((&a, &Twist::identity()))).unwrap();
        let bb = build_bundle(&a, 1, 5, DEFAULT_BUDGET, Some((&a, &Twist::identity()))).unwrap();
        assert_ne!(ba.levels[0].carrier, bb.levels[0].carrier);
        assert!(check_lfun_matching(&ba, &bb, DEFAULT_BUDGET).unwrap().matched);
    }
}
