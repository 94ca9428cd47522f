use serde::{Deserialize, Serialize};

use crate::algebra::carrier::FourierCarrier;

/// `chi(g_i) = zeta^{(N / n_i) e_i}` against a fixed invariant-factor basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub level: u32,
    pub exponents: Vec<u64>,
    pub factors: Vec<u64>,
    pub carrier: FourierCarrier,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `k` with `chi(g) = zeta^k`, for `g` given by its coordinates.
    pub fn exponent_at(&self, coords: &[u64]) -> u64 {
        let n = self.carrier.order;
        self.exponents
            .iter()
            .zip(coords)
            .zip(&self.factors)
            .fold(0u64, |acc, ((&e, &c), &ni)| (acc + (n / ni) * (e * c % ni)) % n)
    }

    pub fn value_at(&self, coords: &[u64]) -> u64 {
        self.carrier.pow(self.carrier.zeta, self.exponent_at(coords))
    }

    /// Order of `chi` as an element of the dual group.
    pub fn order(&self) -> u64 {
        self.exponents.iter().zip(&self.factors).fold(1, |acc, (&e, &n)| {
            let o = n / crate::algebra::arith::gcd(e, n);
            crate::algebra::arith::lcm(acc, o)
        })
    }
}

/// All characters of `Z/n_1 x ... x Z/n_k`, exponent vectors in
/// lexicographic order (the same mixed radix as group element indices).
pub fn character_group(level: u32, factors: &[u64], carrier: &FourierCarrier) -> Vec<Character> {
    let total: u64 = factors.iter().product();
    (0..total)
        .map(|mut idx| {
            let mut e = vec![0; factors.len()];
            for i in (0..factors.len()).rev() {
                e[i] = idx % factors[i];
                idx /= factors[i];
            }
            Character {
                level,
                exponents: e,
                factors: factors.to_vec(),
                carrier: *carrier,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::carrier::find_fourier_carrier;

    fn coords(factors: &[u64]) -> Vec<Vec<u64>> {
        character_group(1, factors, &find_fourier_carrier(1, 2).unwrap())
            .into_iter()
            .map(|c| c.exponents)
            .collect()
    }

    #[test]
    fn counts() {
        let c = find_fourier_carrier(3, 100).unwrap();
        assert_eq!(character_group(1, &[3, 3], &c).len(), 9);
        let one = find_fourier_carrier(1, 100).unwrap();
        let triv = character_group(1, &[], &one);
        assert_eq!(triv.len(), 1);
        assert!(triv[0].is_trivial());
        let c8 = find_fourier_carrier(8, 100).unwrap();
        assert_eq!(c8.prime % 8, 1);
        let chars = character_group(1, &[8], &c8);
        assert_eq!(chars.len(), 8);
        assert_eq!(chars[1].value_at(&[1]), c8.zeta);
        assert_eq!(chars[1].order(), 8);
    }

    #[test]
    fn orthogonality_and_homomorphism() {
        let factors = [2u64, 6];
        let c = find_fourier_carrier(6, 1000).unwrap();
        let chars = character_group(1, &factors, &c);
        let els = coords(&factors);
        for a in &chars {
            for b in &chars {
                let s = els.iter().fold(0u64, |acc, g| {
                    c.add(acc, c.mul(a.value_at(g), c.inv(b.value_at(g)).unwrap()))
                });
                assert_eq!(s, if a == b { 12 } else { 0 });
            }
            for g in &els {
                for h in &els {
                    let gh: Vec<u64> = g.iter().zip(h).zip(&factors).map(|((x, y), n)| (x + y) % n).collect();
                    assert_eq!(a.value_at(&gh), c.mul(a.value_at(g), a.value_at(h)));
                }
            }
        }
    }
}
