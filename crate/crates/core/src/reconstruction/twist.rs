//! Search for a change of variable and Frobenius power explaining a
//! group correspondence between two curves.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::arith::lcm;
use crate::algebra::field::Fe;
use crate::curve_spec::parse_spec;
use crate::error::{Error, Result};
use crate::genus0::{order_formula, Genus0Spec, JmClass, Mobius, Point, RayClassGroup};
use crate::group::AbelianGroup;
use crate::lfun::Genus0Level;
use crate::reconstruction::bundle::{psi_class_map, LBundle, Twist};
use crate::reconstruction::counts::{detect_points, invert_counts};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistWitness {
    /// Matrix over `F_q`, entries as field codes, normalized.
    pub alpha: [[u32; 2]; 2],
    /// Number of `p`-th power Frobenius steps.
    pub l: u32,
    pub verified_levels: u32,
    pub status: String,
}

impl TwistWitness {
    pub fn twist(&self) -> Twist {
        let [[a, b], [c, d]] = self.alpha;
        Twist { alpha: Mobius { a, b, c, d }, l: self.l }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome")]
pub enum TwistOutcome {
    Found { designated: TwistWitness, all: Vec<TwistWitness> },
    NotFound { reason: String },
}

struct LevelData {
    ga: RayClassGroup,
    gb: RayClassGroup,
    psi: HashMap<JmClass, JmClass>,
    points_a: Vec<Point>,
    /// Detected points of `B`, as geometric points.
    points_b: Vec<Point>,
}

fn not_found(reason: String) -> Result<TwistOutcome> {
    log::info!("no twist: {reason}");
    Ok(TwistOutcome::NotFound { reason })
}

/// Frobenius exponents tried: `l < k lcm(1..=R)` for `q = p^k`, which
/// covers every distinct pattern of Frobenius powers on the levels `<= R`.
pub fn frobenius_range(spec: &Genus0Spec, levels: u32) -> u32 {
    let l = (1..=levels as u64).fold(1, lcm);
    spec.field().degree() * l as u32
}

pub fn search_twist(a: &Genus0Spec, bundle: &LBundle, levels: u32, budget: u64) -> Result<TwistOutcome> {
    if levels == 0 {
        return Err(Error::InvalidInput("need at least one level".into()));
    }
    let b = bundle.genus0_spec()?;
    for r in 1..=levels {
        let ob = bundle.level(r)?.order as u128;
        let oa = order_formula(a, r);
        if oa != ob {
            return not_found(format!("group orders differ at level {r}: {oa} vs {ob}"));
        }
    }
    if a.field() != b.field() {
        return not_found("curves are defined over different fields".into());
    }
    let corr = bundle
        .correspondence
        .as_ref()
        .ok_or_else(|| Error::IncompleteBundle("bundle has no correspondence".into()))?;
    if parse_spec(&corr.source)?.as_genus0()? != a {
        return Err(Error::IncompleteBundle(format!(
            "correspondence starts at a curve other than {}",
            a.describe()
        )));
    }

    let mut data = Vec::new();
    for r in 1..=levels {
        let ga = RayClassGroup::new(a, r)?.with_budget(budget);
        let lb = Genus0Level::new(&b, r, budget)?;
        let detected = detect_points(&invert_counts(bundle, r, 1)?)?;
        let by_class: HashMap<JmClass, Point> =
            lb.group.points_of_u().into_iter().map(|(p, c)| (c, p)).collect();
        let mut points_b = Vec::new();
        for e in detected {
            let c = lb.structure.element(e);
            match by_class.get(c) {
                Some(p) => points_b.push(*p),
                None => return not_found(format!("level {r}: detected class {c} is not a point")),
            }
        }
        let points_a = ga.points();
        if points_a.len() != points_b.len() {
            return not_found(format!(
                "level {r}: {} points on A, {} detected on B",
                points_a.len(),
                points_b.len()
            ));
        }
        data.push(LevelData { ga, gb: lb.group, psi: psi_class_map(corr, r)?, points_a, points_b });
    }

    let Some(base) = data.iter().position(|d| d.points_a.len() >= 3) else {
        return not_found(format!("fewer than three points at every level <= {levels}"));
    };
    let bd = &data[base];
    let f = bd.ga.field();
    let k = a.field().degree();
    let anchor: [Point; 3] = [bd.points_a[0], bd.points_a[1], bd.points_a[2]];
    let nb = bd.points_b.len();
    let mut triples = Vec::new();
    for l in 0..frobenius_range(a, levels) {
        for i in 0..nb {
            for j in 0..nb {
                for m in 0..nb {
                    if i != j && j != m && i != m {
                        triples.push((l, [bd.points_b[i], bd.points_b[j], bd.points_b[m]]));
                    }
                }
            }
        }
    }
    log::debug!("{} twist candidates at level {}", triples.len(), base + 1);

    // level-field codes back to F_q codes
    let descend: HashMap<Fe, Fe> =
        bd.ga.embedding().iter().enumerate().map(|(i, &e)| (e, Fe(i as u32))).collect();
    let candidates: BTreeSet<(u32, Mobius)> = triples
        .par_iter()
        .filter_map(|&(l, to)| {
            let from = anchor.map(|p| match p {
                Point::Infinity => Point::Infinity,
                Point::Affine(x) => Point::Affine(f.frobenius_pow(x, l)),
            });
            let alpha = Mobius::from_three_points(from, to, f).ok()?.normalized(f);
            // descent: alpha commutes with the q-power Frobenius
            if !alpha.is_fixed_by(|c| f.frobenius_pow(c, k), f) {
                return None;
            }
            let down = alpha.map_entries(|c| descend[&c]);
            Some((l, down))
        })
        .collect();

    let af = a.field();
    let twisted_a = |l: u32| a.modulus().map_coeffs(|c| af.frobenius_pow(c, l));
    let mut verified: Vec<TwistWitness> = candidates
        .into_par_iter()
        .filter(|&(l, alpha)| {
            if !alpha.is_affine() {
                return false;
            }
            match alpha.pull_back(b.modulus(), af) {
                Ok(m) if m.make_monic(af) == twisted_a(l) => {}
                _ => return false,
            }
            let tw = Twist { alpha, l };
            data.iter().all(|d| {
                let on_points = d.points_a.iter().all(|&p| {
                    let img = tw.apply_to_point(&d.ga, p);
                    d.points_b.contains(&img)
                        && d.psi.get(&d.ga.abel_jacobi(p).expect("point of U"))
                            == d.gb.abel_jacobi(img).ok().as_ref()
                });
                on_points
                    && d.ga.elements().is_ok_and(|els| {
                        els.iter().all(|u| {
                            tw.apply_to_class(&d.ga, &d.gb, u).ok().as_ref() == d.psi.get(u)
                        })
                    })
            })
        })
        .map(|(l, alpha)| TwistWitness {
            alpha: alpha.matrix(),
            l,
            verified_levels: levels,
            status: format!("verified to level {levels}"),
        })
        .collect();
    verified.sort_by_key(|x| (x.l, x.alpha));
    match verified.first() {
        None => not_found(format!("no candidate verifies up to level {levels}")),
        Some(w) => Ok(TwistOutcome::Found { designated: w.clone(), all: verified }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldCtx;
    use crate::algebra::text::parse_poly;
    use crate::genus0::DEFAULT_BUDGET;
    use crate::reconstruction::bundle::build_bundle;

    fn spec(q: u32, m: &str) -> Genus0Spec {
        let f = FieldCtx::of_order(q).unwrap();
        Genus0Spec::new(f.clone(), parse_poly(m, &f).unwrap()).unwrap()
    }

    fn planted(a: &Genus0Spec, tw: &Twist, levels: u32) -> TwistOutcome {
        let b = tw.apply_to_spec(a).unwrap();
        let bundle = build_bundle(&b, levels, 3, DEFAULT_BUDGET, Some((a, tw))).unwrap();
        search_twist(a, &bundle, levels, DEFAULT_BUDGET).unwrap()
    }

    fn designated(o: &TwistOutcome) -> &TwistWitness {
        match o {
            TwistOutcome::Found { designated, .. } => designated,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn self_bundle_gives_identity() {
        let a = spec(3, "x^3");
        let o = planted(&a, &Twist::identity(), 2);
        let w = designated(&o);
        assert_eq!((w.alpha, w.l), ([[1, 0], [0, 1]], 0));
        let TwistOutcome::Found { all, .. } = &o else { unreachable!() };
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn planted_witnesses_are_recovered() {
        let a = spec(3, "x^3");
        let w = designated(&planted(&a, &Twist::shift(a.field(), 1), 2)).clone();
        assert_eq!((w.alpha, w.l), ([[1, 1], [0, 1]], 0));
        let w = designated(&planted(&a, &Twist::frobenius(1), 2)).clone();
        assert_eq!((w.alpha, w.l), ([[1, 0], [0, 1]], 1));
        let c = spec(4, "x^3 + [0,1]");
        let tw = Twist { alpha: Mobius::affine(Fe(2), Fe(1)), l: 1 };
        let w = designated(&planted(&c, &tw, 2)).clone();
        assert_eq!(w.twist(), tw);
    }

    #[test]
    fn frobenius_is_invisible_at_level_one() {
        // over F_3 at one level the p-power map is the identity on points
        let a = spec(3, "x^3");
        let o = planted(&a, &Twist::frobenius(1), 1);
        assert_eq!(designated(&o).l, 0);
    }

    #[test]
    fn incompatible_groups() {
        let a = spec(3, "x^3");
        let b = spec(3, "x^3 + x");
        let bundle = build_bundle(&b, 1, 3, DEFAULT_BUDGET, Some((&b, &Twist::identity()))).unwrap();
        match search_twist(&a, &bundle, 1, DEFAULT_BUDGET).unwrap() {
            TwistOutcome::NotFound { reason } => assert!(reason.contains("9 vs 8"), "{reason}"),
            other => panic!("{other:?}"),
        }
    }
}
