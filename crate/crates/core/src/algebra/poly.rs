//! Dense univariate polynomials over a [`FieldCtx`].

use std::cmp::Ordering;

use crate::algebra::field::{Fe, FieldCtx};
use crate::error::{Error, Result};

/// Coefficients lowest degree first, trailing zeros trimmed. The zero
/// polynomial has no coefficients and degree `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

/// Polynomials order by degree first, then lexicographically from the
/// leading coefficient down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![Fe::ONE] }
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::new(vec![c])
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![Fe::ZERO, Fe::ONE] }
    }

    pub fn monomial(c: Fe, degree: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    /// Integer coefficients reduced into the prime subfield.
    pub fn from_ints(ctx: &FieldCtx, coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    /// `x - a`.
    pub fn linear(ctx: &FieldCtx, a: Fe) -> Poly {
        Poly::new(vec![ctx.neg(a), Fe::ONE])
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fe::ONE]
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fe::ONE
    }

    pub fn add(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| ctx.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| ctx.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| ctx.neg(c)).collect())
    }

    pub fn scale(&self, c: Fe, ctx: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32, ctx: &FieldCtx) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self, ctx);
        }
        acc
    }

    /// Euclidean division.
    pub fn div_rem(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = ctx.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Fe::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let f = ctx.mul(c, lead_inv);
            quot[i - dd] = f;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = ctx.sub(rem[idx], ctx.mul(f, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        Ok(self.div_rem(divisor, ctx)?.1)
    }

    pub fn divides(&self, other: &Poly, ctx: &FieldCtx) -> bool {
        !self.is_zero() && other.rem(self, ctx).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn make_monic(&self, ctx: &FieldCtx) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = ctx.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv, ctx)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, ctx).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic(ctx)
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly, ctx: &FieldCtx) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, ctx).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, ctx), ctx);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, ctx), ctx);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = ctx.inv(r0.leading()).expect("nonzero");
        (r0.scale(inv, ctx), s0.scale(inv, ctx), t0.scale(inv, ctx))
    }

    /// Inverse of `self` modulo `modulus`, if it exists.
    pub fn inv_mod(&self, modulus: &Poly, ctx: &FieldCtx) -> Option<Poly> {
        let (g, s, _) = self.ext_gcd(modulus, ctx);
        if g.is_one() {
            Some(s.rem(modulus, ctx).expect("nonzero modulus"))
        } else {
            None
        }
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly, ctx: &FieldCtx) -> Poly {
        self.mul(other, ctx).rem(modulus, ctx).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly, ctx: &FieldCtx) -> Poly {
        let mut base = self.rem(modulus, ctx).expect("nonzero modulus");
        let mut acc = Poly::one().rem(modulus, ctx).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus, ctx);
            }
            base = base.mul_mod(&base, modulus, ctx);
            e >>= 1;
        }
        acc
    }

    /// `self^(|F|^n) mod modulus`, computed by repeated `|F|`-th powers.
    pub fn frobenius_pow_mod(&self, n: u32, modulus: &Poly, ctx: &FieldCtx) -> Poly {
        let mut acc = self.rem(modulus, ctx).expect("nonzero modulus");
        for _ in 0..n {
            acc = acc.pow_mod(ctx.size() as u64, modulus, ctx);
        }
        acc
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| ctx.mul(ctx.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, x: Fe, ctx: &FieldCtx) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly, ctx: &FieldCtx) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(g, ctx).add(&Poly::constant(c), ctx))
    }

    pub fn map_coeffs(&self, f: impl Fn(Fe) -> Fe) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// Index of a monic polynomial of degree `d` among all monic
    /// polynomials of that degree: the lower coefficients read in base `q`.
    pub fn monic_index(&self, ctx: &FieldCtx) -> u64 {
        let q = ctx.size() as u64;
        self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .rev()
            .fold(0u64, |acc, c| acc * q + c.0 as u64)
    }

    /// Inverse of [`Poly::monic_index`].
    pub fn monic_from_index(ctx: &FieldCtx, degree: usize, mut index: u64) -> Poly {
        let q = ctx.size() as u64;
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(Fe((index % q) as u32));
            index /= q;
        }
        coeffs.push(Fe::ONE);
        Poly { coeffs }
    }

    /// Every monic polynomial of degree `d`, in index order.
    pub fn monics(ctx: &FieldCtx, degree: usize) -> impl Iterator<Item = Poly> + '_ {
        let count = (ctx.size() as u64).pow(degree as u32);
        (0..count).map(move |i| Poly::monic_from_index(ctx, degree, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldCtx {
        FieldCtx::prime(3).unwrap()
    }

    #[test]
    fn division_identity() {
        let f = f3();
        let a = Poly::from_ints(&f, &[1, 2, 0, 1, 2]);
        let b = Poly::from_ints(&f, &[2, 1, 1]);
        let (q, r) = a.div_rem(&b, &f).unwrap();
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert!(r.degree() < b.degree());
        assert_eq!(a.div_rem(&Poly::zero(), &f), Err(Error::DivisionByZero));
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = FieldCtx::new(2, 3).unwrap();
        let a = Poly::from_ints(&f, &[1, 1, 0, 1]).mul(&Poly::from_ints(&f, &[1, 1]), &f);
        let b = Poly::from_ints(&f, &[1, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b, &f);
        assert_eq!(s.mul(&a, &f).add(&t.mul(&b, &f), &f), g);
        assert_eq!(g, Poly::from_ints(&f, &[1, 1]));
    }

    #[test]
    fn monic_indexing_roundtrip() {
        let f = FieldCtx::new(3, 2).unwrap();
        for (i, m) in Poly::monics(&f, 2).enumerate() {
            assert_eq!(m.monic_index(&f), i as u64);
            assert!(m.is_monic());
        }
    }

    #[test]
    fn ordering_degree_then_top_down() {
        let f = f3();
        let mut v = vec![
            Poly::from_ints(&f, &[2, 1]),
            Poly::from_ints(&f, &[0, 1]),
            Poly::from_ints(&f, &[1, 0, 1]),
            Poly::from_ints(&f, &[1, 1]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Poly::from_ints(&f, &[0, 1]),
                Poly::from_ints(&f, &[1, 1]),
                Poly::from_ints(&f, &[2, 1]),
                Poly::from_ints(&f, &[1, 0, 1]),
            ]
        );
    }

    #[test]
    fn compose_shift() {
        let f = f3();
        // (x+2)^3 = x^3 + 2 over F_3
        let cube = Poly::monomial(Fe::ONE, 3);
        let shifted = cube.compose(&Poly::from_ints(&f, &[2, 1]), &f);
        assert_eq!(shifted, Poly::from_ints(&f, &[2, 0, 0, 1]));
    }
}
