//! L-data bundles: everything an observer of a curve gets to see, namely
//! the abstract group at each level, every character's L-series and a
//! table identifying the group with that of a reference curve.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::carrier::FourierCarrier;
use crate::algebra::field::{Fe, FieldCtx};
use crate::curve_spec::{emit_spec, parse_spec, CurveSpec};
use crate::error::{Error, Result};
use crate::genus0::{Genus0Spec, JmClass, Mobius, Point, RayClassGroup};
use crate::lfun::{character_group, divisor_sum_level, Character, CurveLevel, Genus0Level, LSeries};

pub const BUNDLE_FORMAT: &str = "genjac-bundle-1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleLevel {
    pub level: u32,
    pub factors: Vec<u64>,
    pub order: u64,
    /// Class codes of the invariant-factor basis.
    pub generators: Vec<Vec<u32>>,
    pub carrier: FourierCarrier,
    /// One series per character, characters in lexicographic exponent order.
    pub series: Vec<LSeries>,
}

/// `psi_r` as explicit pairs `(class on the source curve, class here)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiLevel {
    pub level: u32,
    pub pairs: Vec<(Vec<u32>, Vec<u32>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    /// Spec text of the source curve.
    pub source: String,
    pub levels: Vec<PsiLevel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LBundle {
    pub format: String,
    pub spec: String,
    pub series_bound: usize,
    pub levels: Vec<BundleLevel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correspondence: Option<Correspondence>,
}

impl LBundle {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundles serialize")
    }

    pub fn from_json(text: &str) -> Result<LBundle> {
        let b: LBundle = serde_json::from_str(text)
            .map_err(|e| Error::IncompleteBundle(format!("malformed bundle: {e}")))?;
        if b.format != BUNDLE_FORMAT {
            return Err(Error::IncompleteBundle(format!("unknown bundle format '{}'", b.format)));
        }
        Ok(b)
    }

    pub fn level(&self, r: u32) -> Result<&BundleLevel> {
        self.levels
            .iter()
            .find(|l| l.level == r)
            .ok_or_else(|| Error::IncompleteBundle(format!("no data for level {r}")))
    }

    pub fn genus0_spec(&self) -> Result<Genus0Spec> {
        match parse_spec(&self.spec)? {
            CurveSpec::Genus0(s) => Ok(s),
            CurveSpec::Elliptic(_) => {
                Err(Error::InvalidInput("reconstruction is implemented for genus0 bundles".into()))
            }
        }
    }

    pub fn max_level(&self) -> u32 {
        self.levels.iter().map(|l| l.level).max().unwrap_or(0)
    }
}

impl BundleLevel {
    /// Checks the series against the character group of `factors`.
    pub fn characters(&self) -> Result<Vec<Character>> {
        let chars = character_group(self.level, &self.factors, &self.carrier);
        if self.series.len() != chars.len() || self.order != chars.len() as u64 {
            return Err(Error::IncompleteBundle(format!(
                "level {}: {} series for {} characters",
                self.level,
                self.series.len(),
                chars.len()
            )));
        }
        for (chi, s) in chars.iter().zip(&self.series) {
            if s.chi != chi.exponents {
                return Err(Error::IncompleteBundle(format!(
                    "level {}: series for character {:?} missing or out of order",
                    self.level, chi.exponents
                )));
            }
            if s.prime != self.carrier.prime || s.order != self.carrier.order {
                return Err(Error::CarrierMismatch(format!(
                    "level {}: series over F_{} inside a bundle over F_{}",
                    self.level, s.prime, self.carrier.prime
                )));
            }
        }
        Ok(chars)
    }
}

pub fn class_from_codes(codes: &[u32]) -> JmClass {
    JmClass(codes.iter().map(|&c| Fe(c)).collect())
}

/// Frobenius twist followed by an affine change of variable: on points
/// `P -> alpha(Frob^l(P))`, on curves `m -> (Frob^l m) o alpha^{-1}`.
/// `l` counts `p`-th powers.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twist {
    pub alpha: Mobius,
    pub l: u32,
}

impl Twist {
    pub fn identity() -> Twist {
        Twist { alpha: Mobius::identity(), l: 0 }
    }

    pub fn shift(f: &FieldCtx, v: i64) -> Twist {
        Twist { alpha: Mobius::affine(Fe::ONE, f.from_int(v)), l: 0 }
    }

    pub fn frobenius(l: u32) -> Twist {
        Twist { alpha: Mobius::identity(), l }
    }

    fn check(&self, f: &FieldCtx) -> Result<()> {
        if !self.alpha.is_affine() || self.alpha.det(f).is_zero() {
            return Err(Error::InvalidInput("twists need an invertible affine map".into()));
        }
        Ok(())
    }

    /// The spec of the image curve.
    pub fn apply_to_spec(&self, a: &Genus0Spec) -> Result<Genus0Spec> {
        let f = a.field();
        self.check(f)?;
        let twisted = a.modulus().map_coeffs(|c| f.frobenius_pow(c, self.l));
        let m = self.alpha.inverse(f).pull_back(&twisted, f)?.make_monic(f);
        Genus0Spec::new(f.clone(), m)
    }

    /// The induced map `J_A -> J_B` at one level.
    pub fn apply_to_class(&self, ga: &RayClassGroup, gb: &RayClassGroup, u: &JmClass) -> Result<JmClass> {
        let f = gb.field();
        let inv = self.alpha.inverse(ga.spec().field()).map_entries(|c| gb.embed(c));
        let twisted = u.to_poly().map_coeffs(|c| f.frobenius_pow(c, self.l));
        gb.normalize(&inv.pull_back(&twisted, f)?)
    }

    pub fn apply_to_point(&self, ga: &RayClassGroup, p: Point) -> Point {
        let f = ga.field();
        let lifted = self.alpha.map_entries(|c| ga.embed(c));
        let moved = match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(a) => Point::Affine(f.frobenius_pow(a, self.l)),
        };
        lifted.apply(moved, f)
    }
}

/// L-data of `spec` at levels `1..=levels` with series to `T^bound`,
/// optionally with `psi` from a source curve carried by a twist.
pub fn build_bundle(
    spec: &Genus0Spec,
    levels: u32,
    bound: usize,
    budget: u64,
    source: Option<(&Genus0Spec, &Twist)>,
) -> Result<LBundle> {
    if levels == 0 {
        return Err(Error::InvalidInput("need at least one level".into()));
    }
    let mut out = Vec::new();
    let mut psi = Vec::new();
    for r in 1..=levels {
        let lv = Genus0Level::new(spec, r, budget)?;
        let (carrier, _chars, series) = divisor_sum_level(&lv, bound)?;
        let series = series
            .into_iter()
            .map(|mut s| {
                s.exact = None;
                s
            })
            .collect();
        out.push(BundleLevel {
            level: r,
            factors: lv.factors().to_vec(),
            order: lv.order(),
            generators: lv.structure.generators.iter().map(|g| g.codes()).collect(),
            carrier,
            series,
        });
        if let Some((a, tw)) = source {
            let expected = tw.apply_to_spec(a)?;
            if expected != *spec {
                return Err(Error::InvalidInput(format!(
                    "twist carries {} to {}, not {}",
                    a.describe(),
                    expected.describe(),
                    spec.describe()
                )));
            }
            let ga = RayClassGroup::new(a, r)?.with_budget(budget);
            let pairs = crate::group::AbelianGroup::elements(&ga)?
                .into_iter()
                .map(|u| Ok((u.codes(), tw.apply_to_class(&ga, &lv.group, &u)?.codes())))
                .collect::<Result<Vec<_>>>()?;
            psi.push(PsiLevel { level: r, pairs });
        }
    }
    Ok(LBundle {
        format: BUNDLE_FORMAT.to_string(),
        spec: emit_spec(&CurveSpec::Genus0(spec.clone())),
        series_bound: bound,
        levels: out,
        correspondence: source.map(|(a, _)| Correspondence {
            source: emit_spec(&CurveSpec::Genus0(a.clone())),
            levels: psi,
        }),
    })
}

/// A bundle re-opened against its own spec: the level groups are rebuilt
/// and checked against the recorded bases.
pub struct BundleView {
    pub spec: Genus0Spec,
    pub levels: Vec<Genus0Level>,
}

impl BundleView {
    pub fn open(bundle: &LBundle, max_level: u32, budget: u64) -> Result<BundleView> {
        let spec = bundle.genus0_spec()?;
        let mut levels = Vec::new();
        for r in 1..=max_level {
            let bl = bundle.level(r)?;
            let lv = Genus0Level::new(&spec, r, budget)?;
            let gens: Vec<Vec<u32>> = lv.structure.generators.iter().map(|g| g.codes()).collect();
            if bl.factors != lv.factors() || gens != bl.generators {
                return Err(Error::IncompleteBundle(format!(
                    "level {r}: recorded group basis does not match the curve"
                )));
            }
            levels.push(lv);
        }
        Ok(BundleView { spec, levels })
    }
}

/// `psi_r` as a map between dense indices, checked to be a bijection.
pub fn psi_index_table(
    corr: &Correspondence,
    r: u32,
    source: &Genus0Level,
    target: &Genus0Level,
) -> Result<Vec<usize>> {
    let lvl = corr
        .levels
        .iter()
        .find(|l| l.level == r)
        .ok_or_else(|| Error::IncompleteBundle(format!("no correspondence at level {r}")))?;
    let n = source.order() as usize;
    if n != target.order() as usize {
        return Err(Error::NotAnIsomorphism(format!(
            "level {r}: orders {} and {} differ",
            n,
            target.order()
        )));
    }
    let mut table = vec![usize::MAX; n];
    let mut hit = vec![false; target.order() as usize];
    for (a, b) in &lvl.pairs {
        let (ca, cb) = (class_from_codes(a), class_from_codes(b));
        let bad = |what: &str| Error::NotAnIsomorphism(format!("level {r}: {what}"));
        source.group.validate(&ca).map_err(|_| bad(&format!("{ca} is not a source class")))?;
        target.group.validate(&cb).map_err(|_| bad(&format!("{cb} is not a target class")))?;
        let (ia, ib) = (source.index_of(&ca), target.index_of(&cb));
        if table[ia] != usize::MAX || hit[ib] {
            return Err(bad("table is not a bijection"));
        }
        table[ia] = ib;
        hit[ib] = true;
    }
    if table.contains(&usize::MAX) {
        return Err(Error::NotAnIsomorphism(format!("level {r}: table is not a bijection")));
    }
    // multiplicative against the generators: psi(a g) = psi(a) psi(g)
    let gens: Vec<usize> = source.structure.generators.iter().map(|g| source.index_of(g)).collect();
    for a in 0..n {
        for &g in &gens {
            let lhs = table[source.structure.mul_index(a, g)];
            let rhs = target.structure.mul_index(table[a], table[g]);
            if lhs != rhs {
                return Err(Error::NotAnIsomorphism(format!(
                    "level {r}: psi(a g) != psi(a) psi(g) for a = {}",
                    source.structure.element(a)
                )));
            }
        }
    }
    Ok(table)
}

/// The class table `psi_r` as a lookup on classes.
pub fn psi_class_map(corr: &Correspondence, r: u32) -> Result<HashMap<JmClass, JmClass>> {
    let lvl = corr
        .levels
        .iter()
        .find(|l| l.level == r)
        .ok_or_else(|| Error::IncompleteBundle(format!("no correspondence at level {r}")))?;
    Ok(lvl.pairs.iter().map(|(a, b)| (class_from_codes(a), class_from_codes(b))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;
    use crate::genus0::DEFAULT_BUDGET;

    fn spec(q: u32, m: &str) -> Genus0Spec {
        let f = FieldCtx::of_order(q).unwrap();
        Genus0Spec::new(f.clone(), parse_poly(m, &f).unwrap()).unwrap()
    }

    #[test]
    fn twisted_specs() {
        let a = spec(3, "x^3");
        let f = a.field().clone();
        assert_eq!(Twist::shift(&f, 1).apply_to_spec(&a).unwrap(), spec(3, "x^3 + 2"));
        assert_eq!(Twist::frobenius(1).apply_to_spec(&a).unwrap(), a);
        let b = spec(9, "x^3 + [0,1]*x + 1");
        let fb = Twist::frobenius(1).apply_to_spec(&b).unwrap();
        assert_eq!(fb.modulus().coeff(1), b.field().frobenius(b.modulus().coeff(1)));
    }

    #[test]
    fn twist_is_compatible_with_abel_jacobi() {
        let a = spec(3, "x^3 + 2*x + 1");
        let f = a.field().clone();
        for tw in [Twist::shift(&f, 2), Twist::frobenius(1), Twist { alpha: Mobius::affine(Fe(2), Fe(1)), l: 1 }] {
            let b = tw.apply_to_spec(&a).unwrap();
            for r in 1..=2 {
                let ga = RayClassGroup::new(&a, r).unwrap();
                let gb = RayClassGroup::new(&b, r).unwrap();
                for (p, c) in ga.points_of_u() {
                    let img = tw.apply_to_point(&ga, p);
                    assert_eq!(tw.apply_to_class(&ga, &gb, &c).unwrap(), gb.abel_jacobi(img).unwrap());
                }
            }
        }
    }

    #[test]
    fn bundle_round_trips_through_json() {
        let a = spec(3, "x^3");
        let b = build_bundle(&a, 2, 4, DEFAULT_BUDGET, Some((&a, &Twist::identity()))).unwrap();
        assert_eq!(b.levels.len(), 2);
        assert_eq!(b.levels[0].order, 9);
        assert_eq!(b.levels[1].order, 81);
        let back = LBundle::from_json(&b.to_json()).unwrap();
        assert_eq!(back, b);
        for l in &back.levels {
            assert_eq!(l.characters().unwrap().len() as u64, l.order);
        }
        let view = BundleView::open(&back, 2, DEFAULT_BUDGET).unwrap();
        let corr = back.correspondence.as_ref().unwrap();
        let t = psi_index_table(corr, 2, &view.levels[1], &view.levels[1]).unwrap();
        assert!(t.iter().enumerate().all(|(i, &j)| i == j));
    }

    #[test]
    fn broken_bundles_are_rejected() {
        let a = spec(3, "x^3");
        let mut b = build_bundle(&a, 1, 3, DEFAULT_BUDGET, Some((&a, &Twist::identity()))).unwrap();
        let mut short = b.clone();
        short.levels[0].series.pop();
        assert!(matches!(short.levels[0].characters(), Err(Error::IncompleteBundle(_))));
        assert!(matches!(b.level(2), Err(Error::IncompleteBundle(_))));
        // swapping two images breaks multiplicativity
        let pairs = &mut b.correspondence.as_mut().unwrap().levels[0].pairs;
        let tmp = pairs[1].1.clone();
        pairs[1].1 = pairs[2].1.clone();
        pairs[2].1 = tmp;
        let view = BundleView::open(&b, 1, DEFAULT_BUDGET).unwrap();
        assert!(matches!(
            psi_index_table(b.correspondence.as_ref().unwrap(), 1, &view.levels[0], &view.levels[0]),
            Err(Error::NotAnIsomorphism(_))
        ));
        assert!(LBundle::from_json("{}").is_err());
    }
}
