//! `J_m(F_{q^r}) = (F_{q^r}[x]/m)^* / F_{q^r}^*` and the Abel–Jacobi map
//! `u -> [u] - [inf]`.

use std::fmt;

use crate::algebra::factor::poly_factor;
use crate::algebra::field::{Fe, FieldCtx};
use crate::algebra::irreducible::irreducibles_by_degree;
use crate::algebra::poly::Poly;
use crate::algebra::text::{format_fe, format_poly};
use crate::error::{Error, Result};
use crate::genus0::spec::Genus0Spec;
use crate::group::{decompose, AbelianGroup, GroupStructure};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Canonical representative of a class: coefficient vector of length
/// `deg m`, lowest degree first, whose lowest nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JmClass(pub Vec<Fe>);

impl JmClass {
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.0.clone())
    }

    pub fn codes(&self) -> Vec<u32> {
        self.0.iter().map(|c| c.0).collect()
    }

    pub fn format(&self, ctx: &FieldCtx) -> String {
        format_poly(&self.to_poly(), ctx)
    }
}

/// A rational point of `P^1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine(Fe),
}

impl Point {
    pub fn format(&self, ctx: &FieldCtx) -> String {
        match self {
            Point::Infinity => "inf".to_string(),
            Point::Affine(a) => format_fe(*a, ctx),
        }
    }
}

/// A closed point of `P^1` over the level field: infinity or a monic
/// irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedPoint {
    Infinity,
    Finite(Poly),
}

impl ClosedPoint {
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Infinity => 1,
            ClosedPoint::Finite(p) => p.degree().unwrap_or(0),
        }
    }
}

/// Formal sum of closed points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor(pub Vec<(ClosedPoint, i64)>);

impl Divisor {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(p, n)| p.degree() as i64 * n).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|(_, n)| *n >= 0)
    }
}

/// The field `F_{q^r}` built on its own, together with the image of `F_q`
/// in it (a table indexed by the encoding of `F_q` elements).
pub fn level_field(base: &FieldCtx, r: u32) -> Result<(FieldCtx, Vec<Fe>)> {
    if r == 0 {
        return Err(Error::InvalidInput("level must be at least 1".into()));
    }
    if r == 1 {
        return Ok((base.clone(), base.elements().collect()));
    }
    let field = FieldCtx::new(base.p(), base.degree() * r)?;
    let embed = if base.is_prime_field() {
        (0..base.p()).map(Fe).collect()
    } else {
        field.embedding_from(base)?
    };
    Ok((field, embed))
}

/// `prod_i (Q^{d_i} - 1) Q^{d_i (e_i - 1)} / (Q - 1)` with `Q = q^r` and
/// `p_i^{e_i}` the factors of `m` over `F_{q^r}`. A factor of degree `d`
/// over `F_q` splits into `gcd(d, r)` factors of degree `d / gcd(d, r)`.
pub fn order_formula(spec: &Genus0Spec, r: u32) -> u128 {
    let big_q = (spec.q() as u128).pow(r);
    let mut total: u128 = 1;
    for (f, e) in &spec.factorization().factors {
        let d = f.degree().unwrap_or(0) as u32;
        let g = crate::algebra::arith::gcd(d as u64, r as u64) as u32;
        let dl = d / g;
        for _ in 0..g {
            total *= (big_q.pow(dl) - 1) * big_q.pow(dl * (e - 1));
        }
    }
    total / (big_q - 1)
}

/// The ray class group of the spec at level `r`.
#[derive(Clone, Debug)]
pub struct RayClassGroup {
    spec: Genus0Spec,
    r: u32,
    field: FieldCtx,
    embed: Vec<Fe>,
    modulus: Poly,
    /// Low coefficients of the monic modulus.
    m_low: Vec<Fe>,
    /// Distinct irreducible factors of `m` over the level field.
    primes: Vec<Poly>,
    budget: u64,
}

impl RayClassGroup {
    pub fn new(spec: &Genus0Spec, r: u32) -> Result<RayClassGroup> {
        let (field, embed) = level_field(spec.field(), r)?;
        let modulus = spec.modulus().map_coeffs(|c| embed[c.0 as usize]);
        let primes = poly_factor(&modulus, &field)?
            .factors
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        let n = spec.degree();
        let m_low = modulus.coeffs()[..n].to_vec();
        Ok(RayClassGroup {
            spec: spec.clone(),
            r,
            field,
            embed,
            modulus,
            m_low,
            primes,
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> RayClassGroup {
        self.budget = budget;
        self
    }

    pub fn spec(&self) -> &Genus0Spec {
        &self.spec
    }

    pub fn level(&self) -> u32 {
        self.r
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Image of an `F_q` element in the level field.
    pub fn embed(&self, a: Fe) -> Fe {
        self.embed[a.0 as usize]
    }

    /// Table of the embedding `F_q -> F_{q^r}`.
    pub fn embedding(&self) -> &[Fe] {
        &self.embed
    }

    pub fn lift_poly(&self, f: &Poly) -> Poly {
        f.map_coeffs(|c| self.embed(c))
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.m_low.len()
    }

    /// Irreducible factors of the modulus over the level field.
    pub fn modulus_primes(&self) -> &[Poly] {
        &self.primes
    }

    pub fn order(&self) -> u64 {
        order_formula(&self.spec, self.r) as u64
    }

    fn check_budget(&self, needed: u64) -> Result<()> {
        if needed > self.budget {
            return Err(Error::BudgetExceeded { needed, budget: self.budget });
        }
        Ok(())
    }

    fn is_unit_rep(&self, coeffs: &[Fe]) -> bool {
        let f = Poly::new(coeffs.to_vec());
        !f.is_zero()
            && self
                .primes
                .iter()
                .all(|p| !f.rem(p, &self.field).expect("nonzero").is_zero())
    }

    /// Rescales a reduced, length-`deg m` vector.
    fn scale_down(&self, mut v: Vec<Fe>) -> Result<JmClass> {
        let lead = v.iter().copied().find(|c| !c.is_zero()).ok_or(Error::InvalidClass)?;
        if lead != Fe::ONE {
            let s = self.field.inv(lead)?;
            v.iter_mut().for_each(|c| *c = self.field.mul(*c, s));
        }
        Ok(JmClass(v))
    }

    fn pad(&self, f: &Poly) -> Vec<Fe> {
        let mut v = f.coeffs().to_vec();
        v.resize(self.degree(), Fe::ZERO);
        v
    }

    /// Class of a polynomial that is a unit mod `m`.
    pub fn normalize(&self, f: &Poly) -> Result<JmClass> {
        let red = f.rem(&self.modulus, &self.field)?;
        let v = self.pad(&red);
        if !self.is_unit_rep(&v) {
            return Err(Error::InvalidClass);
        }
        self.scale_down(v)
    }

    /// Class of the divisor of `f` on `U` (zeros at infinity ignored).
    pub fn class_of_poly(&self, f: &Poly) -> Result<JmClass> {
        if f.is_zero() || !f.gcd(&self.modulus, &self.field).is_one() {
            return Err(Error::NotCoprime(format_poly(f, &self.field)));
        }
        self.normalize(f)
    }

    /// Checks that `a` is a canonical representative for this level.
    pub fn validate(&self, a: &JmClass) -> Result<()> {
        if a.0.len() != self.degree()
            || a.0.iter().any(|c| c.0 >= self.field.size())
            || a.0.iter().find(|c| !c.is_zero()) != Some(&Fe::ONE)
            || !self.is_unit_rep(&a.0)
        {
            return Err(Error::InvalidClass);
        }
        Ok(())
    }

    pub fn identity_class(&self) -> JmClass {
        let mut v = vec![Fe::ZERO; self.degree()];
        v[0] = Fe::ONE;
        JmClass(v)
    }

    pub fn mul(&self, a: &JmClass, b: &JmClass) -> JmClass {
        let n = self.degree();
        let f = &self.field;
        let mut prod = vec![Fe::ZERO; 2 * n - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c.is_zero() {
                continue;
            }
            for (j, &mj) in self.m_low.iter().enumerate() {
                prod[i - n + j] = f.sub(prod[i - n + j], f.mul(c, mj));
            }
        }
        prod.truncate(n);
        self.scale_down(prod).expect("product of units is a unit")
    }

    pub fn inv(&self, a: &JmClass) -> JmClass {
        let inv = a
            .to_poly()
            .inv_mod(&self.modulus, &self.field)
            .expect("class representatives are units");
        self.normalize(&inv).expect("inverse of a unit is a unit")
    }

    /// Abel–Jacobi image of a rational point; infinity is the base point.
    pub fn abel_jacobi(&self, p: Point) -> Result<JmClass> {
        match p {
            Point::Infinity => Ok(self.identity_class()),
            Point::Affine(a) => self.class_of_poly(&Poly::linear(&self.field, a)),
        }
    }

    /// `U(F_{q^r})`: infinity followed by affine non-roots of `m` in
    /// encoding order.
    pub fn points(&self) -> Vec<Point> {
        std::iter::once(Point::Infinity)
            .chain(
                self.field
                    .elements()
                    .filter(|&a| !self.modulus.eval(a, &self.field).is_zero())
                    .map(Point::Affine),
            )
            .collect()
    }

    pub fn points_of_u(&self) -> Vec<(Point, JmClass)> {
        self.points()
            .into_iter()
            .map(|p| (p, self.abel_jacobi(p).expect("points of U avoid the modulus")))
            .collect()
    }

    /// Affine closed points of `U` of degree `1..=max_deg`, grouped by
    /// degree (entry `d - 1` holds degree `d`).
    pub fn closed_points(&self, max_deg: usize) -> Result<Vec<Vec<Poly>>> {
        let size = (self.field.size() as u64).checked_pow(max_deg as u32).unwrap_or(u64::MAX);
        self.check_budget(size)?;
        Ok(irreducibles_by_degree(&self.field, max_deg)
            .into_iter()
            .map(|polys| {
                polys
                    .into_iter()
                    .filter(|p| !self.primes.contains(p))
                    .collect()
            })
            .collect())
    }

    pub fn class_of_divisor(&self, d: &Divisor) -> Result<JmClass> {
        let mut acc = self.identity_class();
        for (pt, n) in &d.0 {
            let ClosedPoint::Finite(p) = pt else { continue };
            let c = self.class_of_poly(p)?;
            let c = if *n < 0 { self.inv(&c) } else { c };
            acc = self.mul(&acc, &self.pow(&c, n.unsigned_abs()));
        }
        Ok(acc)
    }

    pub fn structure(&self) -> Result<GroupStructure<JmClass>> {
        decompose(self, self.budget)
    }
}

impl AbelianGroup for RayClassGroup {
    type Elem = JmClass;

    fn identity(&self) -> JmClass {
        self.identity_class()
    }

    fn op(&self, a: &JmClass, b: &JmClass) -> JmClass {
        self.mul(a, b)
    }

    fn inv(&self, a: &JmClass) -> JmClass {
        RayClassGroup::inv(self, a)
    }

    /// Canonical representatives grouped by the position of the leading
    /// 1, then by the remaining coefficients in base-`Q` order.
    fn elements(&self) -> Result<Vec<JmClass>> {
        self.check_budget(self.order())?;
        let n = self.degree();
        let big_q = self.field.size() as u64;
        let mut out = Vec::with_capacity(self.order() as usize);
        for i in 0..n {
            let free = (n - 1 - i) as u32;
            for mut idx in 0..big_q.pow(free) {
                let mut v = vec![Fe::ZERO; n];
                v[i] = Fe::ONE;
                for c in v.iter_mut().skip(i + 1) {
                    *c = Fe((idx % big_q) as u32);
                    idx /= big_q;
                }
                if self.is_unit_rep(&v) {
                    out.push(JmClass(v));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for JmClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<String> = self.0.iter().map(|c| c.0.to_string()).collect();
        write!(f, "[{}]", codes.join(","))
    }
}

/// Canonical surjection `J_{m'} -> J_m` for `m | m'`, at a common level.
pub fn reduction_map(from: &RayClassGroup, to: &RayClassGroup, a: &JmClass) -> Result<JmClass> {
    check_reduction(from, to)?;
    to.normalize(&a.to_poly())
}

pub fn check_reduction(from: &RayClassGroup, to: &RayClassGroup) -> Result<()> {
    let (fs, ts) = (from.spec(), to.spec());
    if fs.field() != ts.field() || from.level() != to.level() {
        return Err(Error::NoCanonicalMap("different base fields or levels".into()));
    }
    if !ts.modulus().divides(fs.modulus(), fs.field()) {
        return Err(Error::NoCanonicalMap(format!(
            "{} does not divide {}",
            format_poly(ts.modulus(), ts.field()),
            format_poly(fs.modulus(), fs.field())
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_poly;

    fn spec(q: u32, m: &str) -> Genus0Spec {
        let f = FieldCtx::of_order(q).unwrap();
        let m = parse_poly(m, &f).unwrap();
        Genus0Spec::unchecked(f, m).unwrap()
    }

    fn class(g: &RayClassGroup, s: &str) -> JmClass {
        g.normalize(&parse_poly(s, g.field()).unwrap()).unwrap()
    }

    #[test]
    fn arithmetic_mod_x_cubed() {
        let g = RayClassGroup::new(&spec(3, "x^3"), 1).unwrap();
        let a = class(&g, "1 + x");
        assert_eq!(g.mul(&a, &a), class(&g, "1 + 2*x + x^2"));
        assert_eq!(g.inv(&a), class(&g, "1 + 2*x + x^2"));
        assert_eq!(g.mul(&a, &g.identity_class()), a);
        assert_eq!(g.normalize(&parse_poly("x", g.field()).unwrap()), Err(Error::InvalidClass));
    }

    #[test]
    fn abel_jacobi_examples() {
        let g = RayClassGroup::new(&spec(3, "x^3"), 1).unwrap();
        let pts = g.points_of_u();
        assert_eq!(
            pts,
            vec![
                (Point::Infinity, class(&g, "1")),
                (Point::Affine(Fe(1)), class(&g, "1 + 2*x")),
                (Point::Affine(Fe(2)), class(&g, "1 + x")),
            ]
        );
        let d = Divisor(vec![(ClosedPoint::Infinity, 1)]);
        assert_eq!(g.class_of_divisor(&d).unwrap(), g.identity_class());
        let bad = Divisor(vec![(ClosedPoint::Finite(Poly::x()), 1)]);
        assert!(matches!(g.class_of_divisor(&bad), Err(Error::NotCoprime(_))));
        assert_eq!(RayClassGroup::new(&spec(3, "x^3"), 2).unwrap().points().len(), 9);
        assert_eq!(RayClassGroup::new(&spec(3, "x^3 + x"), 1).unwrap().points().len(), 3);
    }

    #[test]
    fn orders_match_enumeration() {
        for (q, m, r, expected) in [
            (3, "x^3", 1, 9),
            (3, "x^3", 2, 81),
            (3, "x^3 + x", 1, 8),
            (3, "x^3 + x", 2, 64),
            (2, "x^3", 1, 4),
            (2, "x^3", 2, 16),
            (3, "x", 1, 1),
            (3, "x^2", 2, 9),
            (4, "x^3 + x + 1", 1, 0),
            (9, "x^2 + [0,1]", 2, 0),
        ] {
            let s = spec(q, m);
            let g = RayClassGroup::new(&s, r).unwrap();
            let n = g.elements().unwrap().len() as u64;
            assert_eq!(order_formula(&s, r) as u64, n, "q={q} m={m} r={r}");
            if expected > 0 {
                assert_eq!(n, expected, "q={q} m={m} r={r}");
            }
        }
    }

    #[test]
    fn structures() {
        let st = RayClassGroup::new(&spec(3, "x^3"), 1).unwrap().structure().unwrap();
        assert_eq!(st.factors, vec![3, 3]);
        let st = RayClassGroup::new(&spec(3, "x^3 + x"), 1).unwrap().structure().unwrap();
        assert_eq!(st.order, 8);
        assert_eq!(st.factors, vec![8]);
        let st = RayClassGroup::new(&spec(2, "x^3"), 1).unwrap().structure().unwrap();
        assert_eq!(st.order, 4);
        let g = RayClassGroup::new(&spec(3, "x^3"), 3).unwrap().with_budget(100);
        assert!(matches!(g.structure(), Err(Error::BudgetExceeded { needed: 729, .. })));
    }

    #[test]
    fn abel_jacobi_injective_on_reference_specs() {
        for (q, m) in [(3, "x^3"), (3, "x^3 + x"), (2, "x^3")] {
            for r in 1..=4 {
                let g = RayClassGroup::new(&spec(q, m), r).unwrap();
                let mut classes: Vec<JmClass> = g.points_of_u().into_iter().map(|(_, c)| c).collect();
                let n = classes.len();
                classes.sort();
                classes.dedup();
                assert_eq!(classes.len(), n, "q={q} m={m} r={r}");
            }
        }
    }

    #[test]
    fn class_of_divisor_is_multiplicative() {
        let g = RayClassGroup::new(&spec(3, "x^3 + x"), 2).unwrap();
        let cps = g.closed_points(2).unwrap();
        let all: Vec<&Poly> = cps.iter().flatten().collect();
        for (i, p1) in all.iter().enumerate().take(12) {
            for p2 in all.iter().skip(i).take(12) {
                let d1 = Divisor(vec![(ClosedPoint::Finite((*p1).clone()), 2)]);
                let d2 = Divisor(vec![(ClosedPoint::Finite((*p2).clone()), -1), (ClosedPoint::Infinity, 3)]);
                let mut both = d1.0.clone();
                both.extend(d2.0.clone());
                assert_eq!(
                    g.class_of_divisor(&Divisor(both)).unwrap(),
                    g.mul(&g.class_of_divisor(&d1).unwrap(), &g.class_of_divisor(&d2).unwrap())
                );
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let big = RayClassGroup::new(&spec(3, "x^3"), 1).unwrap();
        let small = RayClassGroup::new(&spec(3, "x^2"), 1).unwrap();
        let a = class(&big, "1 + x + x^2");
        assert_eq!(reduction_map(&big, &small, &a).unwrap(), class(&small, "1 + x"));
        assert_eq!(reduction_map(&big, &big, &a).unwrap(), a);
        let p2 = Point::Affine(Fe(2));
        assert_eq!(
            reduction_map(&big, &small, &big.abel_jacobi(p2).unwrap()).unwrap(),
            small.abel_jacobi(p2).unwrap()
        );
        assert!(matches!(
            reduction_map(&small, &big, &small.identity_class()),
            Err(Error::NoCanonicalMap(_))
        ));
        let a1 = RayClassGroup::new(&spec(3, "x^3 + x^2"), 1).unwrap();
        let a2 = RayClassGroup::new(&spec(3, "x^3 + 2*x^2 + x"), 1).unwrap();
        assert!(check_reduction(&a1, &a2).is_err());
        assert!(check_reduction(&a2, &a1).is_err());
    }

    #[test]
    fn reduction_is_a_surjective_homomorphism() {
        for r in 1..=2 {
            let big = RayClassGroup::new(&spec(3, "x^3 + x^2"), r).unwrap();
            let small = RayClassGroup::new(&spec(3, "x^2 + x"), r).unwrap();
            let els = big.elements().unwrap();
            let mut image: Vec<JmClass> =
                els.iter().map(|a| reduction_map(&big, &small, a).unwrap()).collect();
            for (i, a) in els.iter().enumerate().step_by(3) {
                let b = &els[(i * 5 + 1) % els.len()];
                assert_eq!(
                    reduction_map(&big, &small, &big.mul(a, b)).unwrap(),
                    small.mul(&image[i], &image[(i * 5 + 1) % els.len()])
                );
            }
            image.sort();
            image.dedup();
            assert_eq!(image.len() as u64, small.order());
            assert_eq!(big.order() / small.order(), (3u64.pow(r)));
        }
    }
}
