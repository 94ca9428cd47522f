//! `J_m(F_{q^r})` for an elliptic curve and a reduced modulus
//! `m = Q_1 + ... + Q_s` of rational points.
//!
//! A class is stored as `(P, t)`: the divisor is `(P) - (O) + div(h)` and
//! `t_i` is the leading coefficient of `h` at `Q_i` in the fixed local
//! uniformizer there, taken modulo the diagonal (first entry 1).

use crate::algebra::field::{Fe, FieldCtx};
use crate::elliptic::curve::{EcPoint, WeierstrassCurve};
use crate::elliptic::miller::{line_leading_with, local_expansion};
use crate::elliptic::spec::EllipticSpec;
use crate::error::{Error, Result};
use crate::genus0::{level_field, DEFAULT_BUDGET};
use crate::group::AbelianGroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayClass {
    pub point: EcPoint,
    pub torus: Vec<Fe>,
}

impl RayClass {
    pub fn format(&self, f: &FieldCtx) -> String {
        let t: Vec<String> = self.torus.iter().map(|c| crate::algebra::text::format_fe(*c, f)).collect();
        format!("{} t=({})", self.point.format(f), t.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct EcRayClassGroup {
    curve: WeierstrassCurve,
    modulus: Vec<EcPoint>,
    expansions: Vec<(Vec<Fe>, Vec<Fe>)>,
    points: Vec<EcPoint>,
    level: u32,
    budget: u64,
}

impl EcRayClassGroup {
    pub fn new(spec: &EllipticSpec, r: u32) -> Result<EcRayClassGroup> {
        let (field, embed) = level_field(spec.field(), r)?;
        let curve = spec.curve().base_change(field, &embed);
        let modulus = spec.modulus_points().iter().map(|p| lift(p, &embed)).collect();
        Self::from_parts(curve, modulus, r)
    }

    /// `curve` and `modulus` are already over the level field.
    pub fn from_parts(curve: WeierstrassCurve, modulus: Vec<EcPoint>, level: u32) -> Result<EcRayClassGroup> {
        let expansions = modulus
            .iter()
            .map(|q| local_expansion(&curve, q))
            .collect::<Result<Vec<_>>>()?;
        let points = curve.points();
        Ok(EcRayClassGroup { curve, modulus, expansions, points, level, budget: DEFAULT_BUDGET })
    }

    pub fn with_budget(mut self, budget: u64) -> EcRayClassGroup {
        self.budget = budget;
        self
    }

    /// The same curve and modulus over the degree-`d` extension of the
    /// level field, with the embedding of the level field.
    pub fn extend(&self, d: u32) -> Result<(EcRayClassGroup, Vec<Fe>)> {
        let f = self.field();
        let big = FieldCtx::new(f.p(), f.degree() * d)?;
        let emb = big.embedding_from(f)?;
        let curve = self.curve.base_change(big, &emb);
        let modulus = self.modulus.iter().map(|p| lift(p, &emb)).collect();
        let g = Self::from_parts(curve, modulus, self.level * d)?.with_budget(self.budget);
        Ok((g, emb))
    }

    pub fn field(&self) -> &FieldCtx {
        self.curve.field()
    }

    pub fn curve(&self) -> &WeierstrassCurve {
        &self.curve
    }

    pub fn modulus_points(&self) -> &[EcPoint] {
        &self.modulus
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// `E(F_{q^r})`, `O` first.
    pub fn curve_points(&self) -> &[EcPoint] {
        &self.points
    }

    /// `#E(F_Q) (Q - 1)^{s - 1}`.
    pub fn order(&self) -> u64 {
        let big_q = self.field().size() as u64;
        self.points.len() as u64 * (big_q - 1).pow(self.modulus.len() as u32 - 1)
    }

    fn normalize_torus(&self, mut t: Vec<Fe>) -> Vec<Fe> {
        let f = self.field();
        let s = f.inv(t[0]).expect("torus entries are units");
        t.iter_mut().for_each(|c| *c = f.mul(*c, s));
        t
    }

    pub fn class(&self, point: EcPoint, torus: Vec<Fe>) -> Result<RayClass> {
        if torus.len() != self.modulus.len() || torus.iter().any(|c| c.is_zero() || c.0 >= self.field().size()) {
            return Err(Error::InvalidClass);
        }
        if !self.curve.contains(&point) {
            return Err(Error::InvalidInput("point is not on the curve".into()));
        }
        Ok(RayClass { point, torus: self.normalize_torus(torus) })
    }

    pub fn identity_class(&self) -> RayClass {
        RayClass { point: EcPoint::Infinity, torus: vec![Fe::ONE; self.modulus.len()] }
    }

    /// Leading coefficients of `g_{P,Q}` at the modulus points.
    pub fn cocycle(&self, p: &EcPoint, q: &EcPoint) -> Vec<Fe> {
        self.expansions
            .iter()
            .map(|(xs, ys)| {
                line_leading_with(&self.curve, p, q, xs, ys)
                    .expect("series precision covers line functions")
                    .1
            })
            .collect()
    }

    pub fn mul(&self, a: &RayClass, b: &RayClass) -> RayClass {
        let f = self.field();
        let c = self.cocycle(&a.point, &b.point);
        let t = a
            .torus
            .iter()
            .zip(&b.torus)
            .zip(&c)
            .map(|((&x, &y), &z)| f.mul(f.mul(x, y), z))
            .collect();
        RayClass { point: self.curve.add(&a.point, &b.point), torus: self.normalize_torus(t) }
    }

    pub fn inv(&self, a: &RayClass) -> RayClass {
        let f = self.field();
        let neg = self.curve.neg(&a.point);
        let c = self.cocycle(&a.point, &neg);
        let t = a
            .torus
            .iter()
            .zip(&c)
            .map(|(&x, &z)| f.inv(f.mul(x, z)).expect("units"))
            .collect();
        RayClass { point: neg, torus: self.normalize_torus(t) }
    }

    /// Class of `(u) - (O)`.
    pub fn abel_jacobi(&self, u: &EcPoint) -> Result<RayClass> {
        if self.modulus.contains(u) {
            return Err(Error::NotCoprime(u.format(self.field())));
        }
        if !self.curve.contains(u) {
            return Err(Error::InvalidInput("point is not on the curve".into()));
        }
        Ok(RayClass { point: *u, torus: vec![Fe::ONE; self.modulus.len()] })
    }

    /// `U(F_{q^r})` with Abel–Jacobi images, `O` first.
    pub fn points_of_u(&self) -> Vec<(EcPoint, RayClass)> {
        self.points
            .iter()
            .filter(|p| !self.modulus.contains(p))
            .map(|p| (*p, self.abel_jacobi(p).expect("points of U")))
            .collect()
    }

    /// The surjection onto `E(F_{q^r})` for the empty modulus.
    pub fn forget(&self, a: &RayClass) -> EcPoint {
        a.point
    }

    /// Coordinatewise `p^n`-th power.
    pub fn frobenius(&self, a: &RayClass, n: u32) -> RayClass {
        let f = self.field();
        let point = match a.point {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(f.frobenius_pow(x, n), f.frobenius_pow(y, n)),
        };
        RayClass { point, torus: a.torus.iter().map(|&c| f.frobenius_pow(c, n)).collect() }
    }
}

fn lift(p: &EcPoint, emb: &[Fe]) -> EcPoint {
    match *p {
        EcPoint::Infinity => EcPoint::Infinity,
        EcPoint::Affine(x, y) => EcPoint::Affine(emb[x.0 as usize], emb[y.0 as usize]),
    }
}

impl AbelianGroup for EcRayClassGroup {
    type Elem = RayClass;

    fn identity(&self) -> RayClass {
        self.identity_class()
    }

    fn op(&self, a: &RayClass, b: &RayClass) -> RayClass {
        self.mul(a, b)
    }

    fn inv(&self, a: &RayClass) -> RayClass {
        EcRayClassGroup::inv(self, a)
    }

    fn elements(&self) -> Result<Vec<RayClass>> {
        let n = self.order();
        if n > self.budget {
            return Err(Error::BudgetExceeded { needed: n, budget: self.budget });
        }
        let units: Vec<Fe> = self.field().elements().filter(|c| !c.is_zero()).collect();
        let free = self.modulus.len() - 1;
        let per_point = (units.len() as u64).pow(free as u32);
        let mut out = Vec::with_capacity(n as usize);
        for p in &self.points {
            for mut idx in 0..per_point {
                let mut t = vec![Fe::ONE; free + 1];
                for c in t.iter_mut().skip(1).rev() {
                    *c = units[(idx % units.len() as u64) as usize];
                    idx /= units.len() as u64;
                }
                out.push(RayClass { point: *p, torus: t });
            }
        }
        Ok(out)
    }
}
