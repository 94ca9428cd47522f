//! Polynomial factorization: square-free decomposition, distinct-degree
//! factorization and Cantor–Zassenhaus equal-degree splitting.
//! [`factor_trial`] is the slow trial-division reference.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::{Fe, FieldCtx};
use crate::algebra::irreducible::is_irreducible;
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub unit: Fe,
    /// Distinct monic irreducibles with multiplicities, sorted.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, ctx: &FieldCtx) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit), |acc, (f, e)| acc.mul(&f.pow(*e, ctx), ctx))
    }

    /// Total degree.
    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, e)| f.degree().unwrap_or(0) * *e as usize)
            .sum()
    }

    pub fn multiplicity(&self, p: &Poly) -> u32 {
        self.factors
            .iter()
            .find(|(f, _)| f == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    fn normalize(mut factors: Vec<(Poly, u32)>) -> Vec<(Poly, u32)> {
        factors.sort();
        let mut out: Vec<(Poly, u32)> = Vec::new();
        for (f, e) in factors {
            match out.last_mut() {
                Some((g, m)) if *g == f => *m += e,
                _ => out.push((f, e)),
            }
        }
        out
    }
}

pub fn poly_factor(f: &Poly, ctx: &FieldCtx) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let unit = f.leading();
    let monic = f.make_monic(ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut factors = Vec::new();
    for (sqf, mult) in squarefree(&monic, ctx) {
        for (block, d) in distinct_degree(&sqf, ctx) {
            for irr in equal_degree(&block, d, ctx, &mut rng) {
                factors.push((irr, mult));
            }
        }
    }
    Ok(Factorization { unit, factors: Factorization::normalize(factors) })
}

/// Reference factorization by trial division with enumerated irreducibles.
pub fn factor_trial(f: &Poly, ctx: &FieldCtx) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let unit = f.leading();
    let mut rest = f.make_monic(ctx);
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    let mut d = 1;
    while 2 * d <= rest.degree().unwrap_or(0) {
        for p in Poly::monics(ctx, d).filter(|g| is_irreducible(g, ctx)) {
            let mut e = 0;
            loop {
                let (quot, rem) = rest.div_rem(&p, ctx)?;
                if !rem.is_zero() {
                    break;
                }
                rest = quot;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        factors.push((rest, 1));
    }
    Ok(Factorization { unit, factors: Factorization::normalize(factors) })
}

fn pth_root(f: &Poly, ctx: &FieldCtx) -> Poly {
    let p = ctx.p() as usize;
    let k = ctx.degree();
    Poly::new(
        f.coeffs()
            .iter()
            .step_by(p)
            .map(|&c| ctx.frobenius_pow(c, k - 1))
            .collect(),
    )
}

fn exact_div(a: &Poly, b: &Poly, ctx: &FieldCtx) -> Poly {
    let (q, r) = a.div_rem(b, ctx).expect("nonzero divisor");
    debug_assert!(r.is_zero());
    q
}

/// Yun's square-free decomposition, extended to characteristic `p`.
fn squarefree(f: &Poly, ctx: &FieldCtx) -> Vec<(Poly, u32)> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let p = ctx.p();
    let fd = f.derivative(ctx);
    if fd.is_zero() {
        return squarefree(&pth_root(f, ctx), ctx)
            .into_iter()
            .map(|(g, m)| (g, m * p))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&fd, ctx);
    let mut w = exact_div(f, &c, ctx);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, ctx);
        let z = exact_div(&w, &y, ctx);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = exact_div(&c, &y, ctx);
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        out.extend(
            squarefree(&pth_root(&c, ctx), ctx)
                .into_iter()
                .map(|(g, m)| (g, m * p)),
        );
    }
    out
}

fn distinct_degree(f: &Poly, ctx: &FieldCtx) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut g = f.clone();
    let x = Poly::x();
    let mut h = x.clone();
    let mut d = 1;
    while g.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(ctx.size() as u64, &g, ctx);
        let t = h.sub(&x, ctx).gcd(&g, ctx);
        if !t.is_one() {
            g = exact_div(&g, &t, ctx);
            h = h.rem(&g, ctx).expect("nonzero");
            out.push((t, d));
        }
        d += 1;
    }
    if let Some(deg) = g.degree() {
        if deg > 0 {
            out.push((g, deg));
        }
    }
    out
}

fn equal_degree(f: &Poly, d: usize, ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a = Poly::new((0..n).map(|_| Fe(rng.gen_range(0..ctx.size()))).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if ctx.p() == 2 {
            // absolute trace a + a^2 + ... + a^(2^(kd-1))
            let steps = ctx.degree() as usize * d;
            let mut t = a.rem(f, ctx).unwrap();
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mul_mod(&t, f, ctx);
                acc = acc.add(&t, ctx);
            }
            acc
        } else {
            // a^((Q^d - 1) / 2) = (a^(1 + Q + ... + Q^(d-1)))^((Q - 1) / 2)
            let mut conj = a.rem(f, ctx).unwrap();
            let mut norm = conj.clone();
            for _ in 1..d {
                conj = conj.pow_mod(ctx.size() as u64, f, ctx);
                norm = norm.mul_mod(&conj, f, ctx);
            }
            norm.pow_mod((ctx.size() as u64 - 1) / 2, f, ctx)
                .sub(&Poly::one(), ctx)
        };
        let g = b.gcd(f, ctx);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(&g, d, ctx, rng);
            out.extend(equal_degree(&exact_div(f, &g, ctx), d, ctx, rng));
            return out;
        }
    }
}
