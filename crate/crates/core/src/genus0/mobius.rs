//! Fractional-linear maps `x -> (a x + b) / (c x + d)` over a finite field,
//! kept up to scalars.

use serde::{Deserialize, Serialize};

use crate::algebra::field::{Fe, FieldCtx};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};
use crate::genus0::jacobian::{Point, RayClassGroup};
use crate::genus0::spec::Genus0Spec;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mobius {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Mobius {
    pub fn identity() -> Mobius {
        Mobius { a: 1, b: 0, c: 0, d: 1 }
    }

    /// `x -> u x + v`.
    pub fn affine(u: Fe, v: Fe) -> Mobius {
        Mobius { a: u.0, b: v.0, c: 0, d: 1 }
    }

    pub fn entries(&self) -> [Fe; 4] {
        [Fe(self.a), Fe(self.b), Fe(self.c), Fe(self.d)]
    }

    fn from_entries([a, b, c, d]: [Fe; 4]) -> Mobius {
        Mobius { a: a.0, b: b.0, c: c.0, d: d.0 }
    }

    pub fn matrix(&self) -> [[u32; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn det(&self, f: &FieldCtx) -> Fe {
        let [a, b, c, d] = self.entries();
        f.sub(f.mul(a, d), f.mul(b, c))
    }

    /// Scales so that `c = 1`, or `d = 1` when `c = 0`.
    pub fn normalized(&self, f: &FieldCtx) -> Mobius {
        let e = self.entries();
        let pivot = if e[2].is_zero() { e[3] } else { e[2] };
        let s = f.inv(pivot).expect("invertible matrix has a nonzero bottom row");
        Mobius::from_entries(e.map(|x| f.mul(x, s)))
    }

    pub fn is_affine(&self) -> bool {
        self.c == 0
    }

    pub fn apply(&self, p: Point, f: &FieldCtx) -> Point {
        let [a, b, c, d] = self.entries();
        let (num, den) = match p {
            Point::Infinity => (a, c),
            Point::Affine(x) => (f.add(f.mul(a, x), b), f.add(f.mul(c, x), d)),
        };
        if den.is_zero() {
            Point::Infinity
        } else {
            Point::Affine(f.div(num, den).expect("nonzero"))
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &Mobius, f: &FieldCtx) -> Mobius {
        let [a, b, c, d] = self.entries();
        let [e, g, h, k] = other.entries();
        Mobius::from_entries([
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, k)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, k)),
        ])
        .normalized(f)
    }

    pub fn inverse(&self, f: &FieldCtx) -> Mobius {
        let [a, b, c, d] = self.entries();
        Mobius::from_entries([d, f.neg(b), f.neg(c), a]).normalized(f)
    }

    pub fn map_entries(&self, g: impl Fn(Fe) -> Fe) -> Mobius {
        Mobius::from_entries(self.entries().map(g))
    }

    /// The map sending `0, inf, 1` to `p0, p_inf, p1`.
    fn from_frame(p0: Point, pinf: Point, p1: Point, f: &FieldCtx) -> Result<Mobius> {
        let vec = |p: Point| match p {
            Point::Infinity => (Fe::ONE, Fe::ZERO),
            Point::Affine(x) => (x, Fe::ONE),
        };
        let (v0, vi, v1) = (vec(p0), vec(pinf), vec(p1));
        // solve mu_inf * vi + mu_0 * v0 = v1
        let det = f.sub(f.mul(vi.0, v0.1), f.mul(v0.0, vi.1));
        if det.is_zero() {
            return Err(Error::InvalidInput("frame points are not distinct".into()));
        }
        let mu_inf = f.div(f.sub(f.mul(v1.0, v0.1), f.mul(v0.0, v1.1)), det)?;
        let mu_0 = f.div(f.sub(f.mul(vi.0, v1.1), f.mul(v1.0, vi.1)), det)?;
        if mu_inf.is_zero() || mu_0.is_zero() {
            return Err(Error::InvalidInput("frame points are not distinct".into()));
        }
        Ok(Mobius::from_entries([
            f.mul(mu_inf, vi.0),
            f.mul(mu_0, v0.0),
            f.mul(mu_inf, vi.1),
            f.mul(mu_0, v0.1),
        ]))
    }

    /// The unique map with `from[i] -> to[i]` for three distinct points.
    pub fn from_three_points(from: [Point; 3], to: [Point; 3], f: &FieldCtx) -> Result<Mobius> {
        let n_from = Self::from_frame(from[0], from[1], from[2], f)?;
        let n_to = Self::from_frame(to[0], to[1], to[2], f)?;
        Ok(n_to.compose(&n_from.inverse(f), f))
    }

    /// Image under a field automorphism of `F_q`-level entries; used for
    /// checking that the map is defined over a subfield.
    pub fn is_fixed_by(&self, frob: impl Fn(Fe) -> Fe, f: &FieldCtx) -> bool {
        let n = self.normalized(f);
        n.map_entries(frob).normalized(f) == n
    }

    /// Pullback `g(alpha(x))` of a polynomial under an affine map.
    pub fn pull_back(&self, g: &Poly, f: &FieldCtx) -> Result<Poly> {
        if !self.is_affine() {
            return Err(Error::InvalidInput("pullback of polynomials needs an affine map".into()));
        }
        let n = self.normalized(f);
        let lin = Poly::new(vec![Fe(n.b), Fe(n.a)]);
        Ok(g.compose(&lin, f))
    }
}

/// Affine maps `x -> u x + v` over `F_q` with `m(u x + v) = u^n m(x)`,
/// ordered by matrix entries; the identity comes first.
pub fn automorphisms_fixing_data(spec: &Genus0Spec) -> Vec<Mobius> {
    let f = spec.field();
    let m = spec.modulus();
    let n = spec.degree() as u64;
    let mut out = Vec::new();
    for u in f.elements().filter(|u| !u.is_zero()) {
        let target = m.scale(f.pow(u, n), f);
        for v in f.elements() {
            let alpha = Mobius::affine(u, v);
            if alpha.pull_back(m, f).expect("affine") == target {
                out.push(alpha);
            }
        }
    }
    out.sort();
    out
}

/// Number of points of `U(F_{q^r})` fixed by each automorphism.
pub fn fixed_points(group: &RayClassGroup, alpha: &Mobius) -> usize {
    let f = group.field();
    let lifted = alpha.map_entries(|c| group.embed(c));
    group.points().into_iter().filter(|&p| lifted.apply(p, f) == p).count()
}

/// `f = prod p_i^{n_i}` as numerator and denominator, for a target divisor
/// supported on the closed points of `Supp(m)`.
pub fn function_with_orders(spec: &Genus0Spec, target: &[(Poly, i64)]) -> Result<(Poly, Poly)> {
    let f = spec.field();
    let mut num = Poly::one();
    let mut den = Poly::one();
    for (p, n) in target {
        if spec.factorization().multiplicity(p) == 0 {
            return Err(Error::InvalidInput(format!(
                "{} is not a closed point of the modulus support",
                crate::algebra::text::format_poly(p, f)
            )));
        }
        let pw = p.pow(n.unsigned_abs() as u32, f);
        if *n >= 0 {
            num = num.mul(&pw, f);
        } else {
            den = den.mul(&pw, f);
        }
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factor::poly_factor;
    use crate::algebra::text::parse_poly;

    fn spec(q: u32, m: &str) -> Genus0Spec {
        let f = FieldCtx::of_order(q).unwrap();
        let m = parse_poly(m, &f).unwrap();
        Genus0Spec::unchecked(f, m).unwrap()
    }

    #[test]
    fn automorphism_examples() {
        let s = spec(3, "x^3");
        assert_eq!(
            automorphisms_fixing_data(&s),
            vec![Mobius::affine(Fe(1), Fe(0)), Mobius::affine(Fe(2), Fe(0))]
        );
        assert_eq!(automorphisms_fixing_data(&spec(3, "x^3 + 2*x")).len(), 6);
        assert_eq!(automorphisms_fixing_data(&spec(2, "x^3")), vec![Mobius::identity()]);
    }

    #[test]
    fn fixed_point_examples() {
        let s = spec(3, "x^3");
        let g = RayClassGroup::new(&s, 1).unwrap();
        assert_eq!(fixed_points(&g, &Mobius::affine(Fe(2), Fe(0))), 1);
        assert_eq!(fixed_points(&g, &Mobius::identity()), 3);
        let s = spec(3, "x^3 + 2*x");
        let g = RayClassGroup::new(&s, 1).unwrap();
        assert_eq!(fixed_points(&g, &Mobius::affine(Fe(1), Fe(1))), 1);
    }

    #[test]
    fn three_point_maps() {
        let f = FieldCtx::new(3, 2).unwrap();
        let pts: Vec<Point> = std::iter::once(Point::Infinity)
            .chain(f.elements().map(Point::Affine))
            .collect();
        let alpha = (1..9)
            .map(|d| Mobius { a: 2, b: 5, c: 1, d })
            .find(|m| !m.det(&f).is_zero())
            .unwrap();
        let from = [pts[0], pts[3], pts[8]];
        let to = from.map(|p| alpha.apply(p, &f));
        let beta = Mobius::from_three_points(from, to, &f).unwrap();
        assert_eq!(beta, alpha.normalized(&f));
        for &p in &pts {
            assert_eq!(beta.apply(p, &f), alpha.apply(p, &f));
            assert_eq!(beta.inverse(&f).apply(beta.apply(p, &f), &f), p);
        }
        assert!(Mobius::from_three_points([pts[1], pts[1], pts[2]], to, &f).is_err());
    }

    #[test]
    fn function_with_orders_examples() {
        let s = spec(3, "x^3");
        let f = s.field();
        assert_eq!(
            function_with_orders(&s, &[(Poly::x(), 3)]).unwrap(),
            (parse_poly("x^3", f).unwrap(), Poly::one())
        );
        let s = spec(3, "x^3 + 2*x^2 + x");
        let xp1 = parse_poly("x + 1", f).unwrap();
        assert_eq!(
            function_with_orders(&s, &[(xp1.clone(), 2)]).unwrap().0,
            parse_poly("x^2 + 2*x + 1", f).unwrap()
        );
        let s = spec(3, "x^3 + x");
        let (num, den) = function_with_orders(
            &s,
            &[(Poly::x(), 1), (parse_poly("x^2 + 1", f).unwrap(), 1)],
        )
        .unwrap();
        assert_eq!(num, parse_poly("x^3 + x", f).unwrap());
        assert!(den.is_one());
        // orders read back by factorization
        let fac = poly_factor(&num, f).unwrap();
        assert_eq!(fac.multiplicity(&Poly::x()), 1);
        assert_eq!(fac.multiplicity(&parse_poly("x^2 + 1", f).unwrap()), 1);
        assert!(function_with_orders(&s, &[(xp1, 1)]).is_err());
    }
}
