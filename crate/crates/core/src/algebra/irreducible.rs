//! Enumeration and testing of monic irreducible polynomials.

use crate::algebra::arith::factor_u64;
use crate::algebra::field::{Fe, FieldCtx};
use crate::algebra::poly::Poly;

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Poly, ctx: &FieldCtx) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.make_monic(ctx);
    let x = Poly::x();
    for (l, _) in factor_u64(n as u64) {
        let h = x.frobenius_pow_mod((n as u64 / l) as u32, &f, ctx);
        if !h.sub(&x, ctx).gcd(&f, ctx).is_one() {
            return false;
        }
    }
    x.frobenius_pow_mod(n as u32, &f, ctx).sub(&x, ctx).rem(&f, ctx).unwrap().is_zero()
}

/// Smallest monic irreducible of degree `k`, in (degree, top-down
/// lexicographic) order.
pub fn smallest_irreducible(ctx: &FieldCtx, k: usize) -> Poly {
    Poly::monics(ctx, k)
        .find(|f| is_irreducible(f, ctx))
        .expect("irreducible polynomials exist in every degree")
}

/// All monic irreducibles of degree `1..=d`, sorted by degree and then
/// lexicographically. Uses a sieve: a monic of degree `j` is composite iff
/// it is a multiple of an irreducible of degree at most `j / 2`.
pub fn irreducibles_up_to(ctx: &FieldCtx, d: usize) -> Vec<Poly> {
    irreducibles_by_degree(ctx, d).into_iter().flatten().collect()
}

/// Same as [`irreducibles_up_to`], grouped: entry `j - 1` holds degree `j`.
pub fn irreducibles_by_degree(ctx: &FieldCtx, d: usize) -> Vec<Vec<Poly>> {
    let q = ctx.size() as u64;
    let mut by_degree: Vec<Vec<Poly>> = Vec::with_capacity(d);
    for j in 1..=d {
        let count = q.pow(j as u32);
        let mut composite = vec![false; count as usize];
        for e in 1..=j / 2 {
            let other = j - e;
            for p in &by_degree[e - 1] {
                let pc = p.coeffs();
                // odometer over the lower coefficients of a monic cofactor
                let mut g = vec![Fe::ZERO; other + 1];
                g[other] = Fe::ONE;
                let mut prod = vec![Fe::ZERO; j + 1];
                loop {
                    prod.iter_mut().for_each(|c| *c = Fe::ZERO);
                    for (a, &pa) in pc.iter().enumerate() {
                        if pa.is_zero() {
                            continue;
                        }
                        for (b, &gb) in g.iter().enumerate() {
                            prod[a + b] = ctx.add(prod[a + b], ctx.mul(pa, gb));
                        }
                    }
                    let idx = prod[..j].iter().rev().fold(0u64, |acc, c| acc * q + c.0 as u64);
                    composite[idx as usize] = true;
                    let mut pos = 0;
                    loop {
                        if pos == other {
                            break;
                        }
                        g[pos].0 += 1;
                        if g[pos].0 == ctx.size() {
                            g[pos] = Fe::ZERO;
                            pos += 1;
                        } else {
                            break;
                        }
                    }
                    if pos == other {
                        break;
                    }
                }
            }
        }
        by_degree.push(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| Poly::monic_from_index(ctx, j, i as u64))
                .collect(),
        );
    }
    by_degree
}

/// Number of monic irreducibles of degree `d` over `F_q` by the necklace
/// formula.
pub fn necklace_count(q: u64, d: u32) -> u64 {
    let mut total: i128 = 0;
    for e in crate::algebra::arith::divisors(d as u64) {
        total += crate::algebra::arith::mobius(e) as i128 * (q as i128).pow(d / e as u32);
    }
    (total / d as i128) as u64
}
