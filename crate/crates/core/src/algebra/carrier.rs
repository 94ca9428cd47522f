//! Prime fields `F_P` holding an exact primitive `N`-th root of unity.
//! Character values live here instead of in floating-point `C*`.

use serde::{Deserialize, Serialize};

use crate::algebra::arith::{factor_u64, is_prime_u64, mul_mod, pow_mod};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourierCarrier {
    pub prime: u64,
    pub order: u64,
    pub zeta: u64,
}

/// Smallest prime `P > bound` with `P = 1 (mod n)`, together with a
/// primitive `n`-th root of unity: the first `a^((P-1)/n)`, `a = 1, 2, ...`,
/// of exact order `n`.
pub fn find_fourier_carrier(n: u64, bound: u64) -> Result<FourierCarrier> {
    if n == 0 {
        return Err(Error::InvalidInput("root of unity order must be positive".into()));
    }
    let mut p = (bound.saturating_sub(1) / n + 1) * n + 1;
    while !is_prime_u64(p) {
        p += n;
    }
    let primes: Vec<u64> = factor_u64(n).into_iter().map(|(l, _)| l).collect();
    let zeta = (1..p)
        .map(|a| pow_mod(a, (p - 1) / n, p))
        .find(|&z| primes.iter().all(|&l| pow_mod(z, n / l, p) != 1))
        .expect("F_P^* is cyclic of order divisible by n");
    Ok(FourierCarrier { prime: p, order: n, zeta })
}

impl FourierCarrier {
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.prime {
            s - self.prime
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.prime - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.prime)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.prime)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.prime) {
            return Err(Error::DivisionByZero);
        }
        Ok(pow_mod(a, self.prime - 2, self.prime))
    }

    /// Reduces a signed integer into `[0, P)`.
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.prime as i64) as u64
    }

    /// `zeta^k` for `k = 0..N`.
    pub fn zeta_powers(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut cur = 1u64;
        for _ in 0..self.order {
            out.push(cur);
            cur = self.mul(cur, self.zeta);
        }
        out
    }

    /// Exact order check of `zeta`.
    pub fn is_valid(&self) -> bool {
        is_prime_u64(self.prime)
            && (self.prime - 1).is_multiple_of(self.order)
            && pow_mod(self.zeta, self.order, self.prime) == 1
            && factor_u64(self.order)
                .iter()
                .all(|&(l, _)| pow_mod(self.zeta, self.order / l, self.prime) != 1)
    }
}
