//! Finite fields `F_{p^k}` with table-driven arithmetic.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! encoding its coefficient vector against the power basis of the defining
//! polynomial. Multiplication goes through discrete log / antilog tables
//! built once per context, so every context is immutable after construction
//! and can be shared freely between threads.

use std::fmt;

use crate::algebra::arith::{factor_u64, is_prime_u64};
use crate::error::{Error, Result};

/// Largest field size for which a context will be built.
pub const MAX_FIELD_SIZE: u32 = 1 << 20;

/// Below this size the full addition table is materialized.
const ADD_TABLE_LIMIT: u32 = 512;

/// A field element, encoded in base `p`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    /// Monic defining polynomial over `F_p`, lowest coefficient first.
    defining: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
    generator: Fe,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("defining", &self.defining)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.defining == other.defining
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<FieldCtx> {
        Self::with_defining(p, vec![0, 1])
    }

    /// `F_{p^k}` with the lexicographically smallest monic irreducible of
    /// degree `k` as defining polynomial.
    pub fn new(p: u32, k: u32) -> Result<FieldCtx> {
        if k == 0 {
            return Err(Error::InvalidInput("extension degree must be at least 1".into()));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let fp = Self::prime(p)?;
        let size = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE as u64 {
            return Err(Error::BudgetExceeded { needed: size, budget: MAX_FIELD_SIZE as u64 });
        }
        let defining = crate::algebra::irreducible::smallest_irreducible(&fp, k as usize);
        Self::with_defining(p, defining.coeffs().iter().map(|c| c.0).collect())
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn of_order(q: u32) -> Result<FieldCtx> {
        let (p, k) = prime_power(q as u64)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        Self::new(p as u32, k)
    }

    fn with_defining(p: u32, defining: Vec<u32>) -> Result<FieldCtx> {
        if p < 2 || !is_prime_u64(p as u64) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let k = (defining.len() - 1) as u32;
        let size = (p as u64).pow(k);
        if size > MAX_FIELD_SIZE as u64 {
            return Err(Error::BudgetExceeded { needed: size, budget: MAX_FIELD_SIZE as u64 });
        }
        let q = size as u32;
        let mut ctx = FieldCtx {
            p,
            k,
            q,
            defining,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
            generator: Fe::ONE,
        };
        ctx.neg = (0..q).map(|a| ctx.digit_neg(a)).collect();
        if q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = ctx.digit_add(a, b);
                }
            }
            ctx.add_table = Some(table);
        }
        ctx.build_log_tables()?;
        Ok(ctx)
    }

    fn build_log_tables(&mut self) -> Result<()> {
        let order = (self.q - 1) as u64;
        let primes: Vec<u64> = factor_u64(order).into_iter().map(|(l, _)| l).collect();
        let generator = (1..self.q)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&l| self.slow_pow(g, order / l) != 1)
            })
            .ok_or_else(|| {
                Error::InvalidInput("defining polynomial is not irreducible".into())
            })?;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; self.q as usize];
        let mut cur = 1u32;
        for i in 0..order as u32 {
            if log[cur as usize] != u32::MAX {
                return Err(Error::InvalidInput("defining polynomial is not irreducible".into()));
            }
            exp.push(cur);
            log[cur as usize] = i;
            cur = self.slow_mul(cur, generator);
        }
        self.exp = exp;
        self.log = log;
        self.generator = Fe(generator);
        Ok(())
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn digit_add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn digit_neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let k = self.k as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &g) in self.defining[..k].iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - c) * g as u64) % p;
            }
        }
        let digits: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.undigits(&digits)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn size(&self) -> u32 {
        self.q
    }

    /// Defining polynomial over `F_p`, lowest coefficient first.
    pub fn defining_poly(&self) -> &[u32] {
        &self.defining
    }

    /// A generator of the multiplicative group.
    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    #[inline]
    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.k as usize {
            return Err(Error::InvalidInput(format!(
                "{} coefficients given for a degree {} extension",
                coeffs.len(),
                self.k
            )));
        }
        let reduced: Vec<u32> = coeffs.iter().map(|&c| c % self.p).collect();
        Ok(Fe(self.undigits(&reduced)))
    }

    /// Coefficient vector of length `k` over `F_p`.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        self.digits(a.0)
    }

    /// Iterator over all elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.add_table {
            Some(t) => Fe(t[(a.0 * self.q + b.0) as usize]),
            None => Fe(self.digit_add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fe(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(Fe(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply exponentiation; `0^0 = 1`.
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// `a -> a^(p^n)`.
    pub fn frobenius_pow(&self, a: Fe, n: u32) -> Fe {
        let n = n % self.k;
        let mut x = a;
        for _ in 0..n {
            x = self.frobenius(x);
        }
        x
    }

    /// Discrete logarithm to the base of [`FieldCtx::generator`].
    pub fn log(&self, a: Fe) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.log[a.0 as usize])
    }

    /// `true` iff `a` is a square (zero included).
    pub fn is_square(&self, a: Fe) -> bool {
        a.is_zero() || self.p == 2 || self.log[a.0 as usize].is_multiple_of(2)
    }

    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(Fe::ZERO);
        }
        if self.p == 2 {
            // squaring is bijective in characteristic 2
            return Some(self.pow(a, (self.q / 2) as u64));
        }
        let l = self.log[a.0 as usize];
        if l % 2 == 1 {
            return None;
        }
        Some(Fe(self.exp[(l / 2) as usize]))
    }

    /// Embedding of `sub` into `self`, as a lookup table indexed by the
    /// encoding of `sub` elements. Requires `sub` to have the same
    /// characteristic and a degree dividing ours. The image of the
    /// generator of the power basis of `sub` is the smallest root of its
    /// defining polynomial.
    pub fn embedding_from(&self, sub: &FieldCtx) -> Result<Vec<Fe>> {
        if sub.p != self.p || !self.k.is_multiple_of(sub.k) {
            return Err(Error::InvalidInput(format!(
                "F_{} does not embed in F_{}",
                sub.q, self.q
            )));
        }
        let eval = |x: Fe| {
            sub.defining
                .iter()
                .rev()
                .fold(Fe::ZERO, |acc, &c| self.add(self.mul(acc, x), self.from_int(c as i64)))
        };
        let root = self
            .elements()
            .find(|&x| eval(x).is_zero())
            .ok_or_else(|| Error::InvalidInput("no root of the subfield polynomial".into()))?;
        let powers: Vec<Fe> = (0..sub.k).map(|i| self.pow(root, i as u64)).collect();
        Ok(sub
            .elements()
            .map(|a| {
                sub.coeffs(a)
                    .iter()
                    .zip(&powers)
                    .fold(Fe::ZERO, |acc, (&c, &w)| {
                        self.add(acc, self.mul(self.from_int(c as i64), w))
                    })
            })
            .collect())
    }
}

/// Decomposes `q = p^k`, returning `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factor_u64(q);
    if f.len() != 1 {
        return None;
    }
    Some((f[0].0, f[0].1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mod_three_addition() {
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(f3.add(Fe(2), Fe(2)), Fe(1));
        assert_eq!(f3.frobenius(Fe(2)), Fe(2));
    }

    #[test]
    fn f9_uses_y_squared_plus_one() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.defining_poly(), &[1, 0, 1]);
        let y = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.mul(y, y), Fe(2));
    }

    #[test]
    fn defining_polys_are_smallest() {
        assert_eq!(FieldCtx::new(2, 2).unwrap().defining_poly(), &[1, 1, 1]);
        assert_eq!(FieldCtx::new(2, 3).unwrap().defining_poly(), &[1, 1, 0, 1]);
        assert_eq!(FieldCtx::new(5, 2).unwrap().defining_poly(), &[2, 0, 1]);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = FieldCtx::new(2, 4).unwrap();
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FieldCtx::of_order(6).is_err());
        assert!(FieldCtx::of_order(1).is_err());
        assert_eq!(FieldCtx::of_order(27).unwrap().degree(), 3);
    }

    #[test]
    fn sqrt_roundtrip() {
        for (p, k) in [(2, 3), (3, 2), (5, 1), (7, 2)] {
            let f = FieldCtx::new(p, k).unwrap();
            for a in f.elements() {
                let sq = f.mul(a, a);
                let r = f.sqrt(sq).unwrap();
                assert_eq!(f.mul(r, r), sq);
            }
        }
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let f81 = FieldCtx::new(3, 4).unwrap();
        let emb = f81.embedding_from(&f9).unwrap();
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(emb[f9.mul(a, b).0 as usize], f81.mul(emb[a.0 as usize], emb[b.0 as usize]));
                assert_eq!(emb[f9.add(a, b).0 as usize], f81.add(emb[a.0 as usize], emb[b.0 as usize]));
            }
        }
        assert!(f81.embedding_from(&FieldCtx::new(3, 3).unwrap()).is_err());
    }

    fn field_cases() -> impl Strategy<Value = (u32, u32)> {
        prop_oneof![
            Just((2, 1)),
            Just((3, 1)),
            Just((2, 4)),
            Just((3, 2)),
            Just((3, 3)),
            Just((5, 2)),
            Just((7, 1)),
            Just((2, 9)),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn field_axioms((p, k) in field_cases(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let f = FieldCtx::new(p, k).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..1000 {
                let a = Fe(rng.gen_range(0..f.size()));
                let b = Fe(rng.gen_range(0..f.size()));
                let c = Fe(rng.gen_range(0..f.size()));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                prop_assert_eq!(f.mul(a, b), f.mul(b, a));
                if !a.is_zero() {
                    prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                }
                // frobenius is additive
                prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }
}
