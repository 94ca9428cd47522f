//! Truncated character L-series, computed by the Euler product over closed
//! points and by the sum over effective divisors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::carrier::FourierCarrier;
use crate::error::{Error, Result};
use crate::lfun::character::Character;
use crate::lfun::tables::CurveLevel;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Euler,
    DivisorSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LSeries {
    pub level: u32,
    pub chi: Vec<u64>,
    #[serde(rename = "P")]
    pub prime: u64,
    #[serde(rename = "N")]
    pub order: u64,
    pub coeffs: Vec<u64>,
    pub provenance: Provenance,
    /// Coefficients in `Z[C_N]`: entry `k` counts divisors with value
    /// `zeta^k`. Present for the divisor-sum route only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<Vec<i64>>>,
}

impl LSeries {
    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn agrees_with(&self, other: &LSeries) -> bool {
        self.prime == other.prime && self.order == other.order && self.coeffs == other.coeffs
    }
}

/// Power series truncated at `T^B` over `F_P`.
fn series_mul(a: &[u64], b: &[u64], c: &FourierCarrier) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0u64; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] = c.add(out[i + j], c.mul(x, y));
        }
    }
    out
}

/// `(1 - z T^e)^{-m} = sum_j C(m + j - 1, j) z^j T^{e j}`, truncated.
fn inverse_binomial(z: u64, e: usize, m: u64, bound: usize, c: &FourierCarrier) -> Vec<u64> {
    let mut out = vec![0u64; bound + 1];
    let mut binom = 1u64;
    let mut zj = 1u64;
    let mut j = 0usize;
    while j * e <= bound {
        out[j * e] = c.mul(binom, zj);
        j += 1;
        // C(m + j - 1, j) = C(m + j - 2, j - 1) * (m + j - 1) / j
        binom = c.mul(binom, c.mul(c.reduce((m + j as u64 - 1) as i64), c.inv(j as u64).unwrap()));
        zj = c.mul(zj, z);
    }
    out
}

/// Euler product `prod_y (1 - chi(Frob_y) T^{deg y})^{-1}` over the closed
/// points of `U` of degree `<= B`, grouped by degree and character value.
pub fn lfun_euler<C: CurveLevel + ?Sized>(
    chi: &Character,
    level: &C,
    closed: &[Vec<usize>],
    bound: usize,
) -> Result<LSeries> {
    if closed.len() < bound {
        return Err(Error::InvalidInput("closed points missing for the series bound".into()));
    }
    let car = &chi.carrier;
    let n = car.order as usize;
    let zeta = car.zeta_powers();
    let mut series = vec![0u64; bound + 1];
    series[0] = 1;
    for (i, pts) in closed.iter().enumerate().take(bound) {
        let deg = i + 1;
        let mut counts = vec![0u64; n];
        for &idx in pts {
            counts[chi.exponent_at(&level.coords(idx)) as usize] += 1;
        }
        for (k, &m) in counts.iter().enumerate() {
            if m > 0 {
                series = series_mul(&series, &inverse_binomial(zeta[k], deg, m, bound, car), car);
            }
        }
    }
    Ok(LSeries {
        level: chi.level,
        chi: chi.exponents.clone(),
        prime: car.prime,
        order: car.order,
        coeffs: series,
        provenance: Provenance::Euler,
        exact: None,
    })
}

/// `a_d = sum over effective divisors D of degree d of chi([D - d inf])`.
pub fn lfun_divisor_sum<C: CurveLevel + ?Sized>(
    chi: &Character,
    level: &C,
    histogram: &[Vec<u64>],
    bound: usize,
) -> Result<LSeries> {
    if histogram.len() <= bound {
        return Err(Error::InvalidInput("divisor histogram shorter than the series bound".into()));
    }
    let car = &chi.carrier;
    let n = car.order as usize;
    let ks: Vec<usize> = (0..level.order() as usize)
        .map(|idx| chi.exponent_at(&level.coords(idx)) as usize)
        .collect();
    let zeta = car.zeta_powers();
    let mut coeffs = Vec::with_capacity(bound + 1);
    let mut exact = Vec::with_capacity(bound + 1);
    for h in histogram.iter().take(bound + 1) {
        let mut v = vec![0i64; n];
        for (idx, &cnt) in h.iter().enumerate() {
            v[ks[idx]] += cnt as i64;
        }
        coeffs.push(v.iter().enumerate().fold(0u64, |acc, (k, &cnt)| {
            car.add(acc, car.mul(car.reduce(cnt), zeta[k]))
        }));
        exact.push(v);
    }
    Ok(LSeries {
        level: chi.level,
        chi: chi.exponents.clone(),
        prime: car.prime,
        order: car.order,
        coeffs,
        provenance: Provenance::DivisorSum,
        exact: Some(exact),
    })
}

/// `(1 - T) L(T)` truncated below `max_len`; the coefficients from
/// `max_len` up to the series bound must vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyPart {
    #[serde(rename = "P")]
    pub prime: u64,
    #[serde(rename = "N")]
    pub order: u64,
    pub coeffs: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<Vec<i64>>>,
}

impl PolyPart {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// `(1 - T) L` for a nontrivial character, with degree below `deg_m`.
pub fn polynomial_part(l: &LSeries, trivial: bool, deg_m: usize) -> Result<PolyPart> {
    if trivial {
        return Err(Error::TrivialCharacter);
    }
    let bound = l.bound();
    if bound < deg_m {
        return Err(Error::InvalidInput(format!(
            "series bound {bound} is below deg m = {deg_m}"
        )));
    }
    let p = l.prime;
    let diff: Vec<u64> = (0..=bound)
        .map(|i| {
            let prev = if i == 0 { 0 } else { l.coeffs[i - 1] };
            (l.coeffs[i] + p - prev) % p
        })
        .collect();
    if let Some(d) = (deg_m..=bound).find(|&d| diff[d] != 0) {
        return Err(Error::DegreeBoundViolation { degree: d });
    }
    let mut coeffs = diff[..deg_m].to_vec();
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    let exact = l.exact.as_ref().map(|ex| {
        let mut v: Vec<Vec<i64>> = (0..coeffs.len())
            .map(|i| {
                let mut c = ex[i].clone();
                if i > 0 {
                    c.iter_mut().zip(&ex[i - 1]).for_each(|(a, b)| *a -= b);
                }
                c
            })
            .collect();
        v.truncate(coeffs.len());
        v
    });
    Ok(PolyPart { prime: p, order: l.order, coeffs, exact })
}

/// Complex lift via `zeta -> exp(2 pi i / N)`.
pub fn lift_complex(part: &PolyPart) -> Result<Vec<Complex64>> {
    let exact = part
        .exact
        .as_ref()
        .ok_or_else(|| Error::NumericalFailure("no exact group-ring coefficients to lift".into()))?;
    let n = part.order as f64;
    Ok(exact
        .iter()
        .map(|v| {
            v.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (k, &c)| {
                acc + Complex64::from_polar(c as f64, std::f64::consts::TAU * k as f64 / n)
            })
        })
        .collect())
}

/// Magnitudes of the inverse roots of `1 + c_1 T + ... + c_k T^k`, sorted.
pub fn weil_magnitudes(part: &PolyPart) -> Result<Vec<f64>> {
    let c = lift_complex(part)?;
    let mut c = c;
    while c.len() > 1 && c.last().map(|z| z.norm() < 1e-9).unwrap_or(false) {
        c.pop();
    }
    // inverse roots of sum c_i T^i are the roots of sum c_i z^{k-i}
    let mut mags: Vec<f64> = durand_kerner(&c)?.iter().map(|z| z.norm()).collect();
    mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(mags)
}

/// Roots of `p[0] z^k + ... + p[k]`.
fn durand_kerner(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let k = p.len() - 1;
    if k == 0 {
        return Ok(Vec::new());
    }
    let lead = p[0];
    if lead.norm() < 1e-12 {
        return Err(Error::NumericalFailure("vanishing leading coefficient".into()));
    }
    let monic: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| monic.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let radius = 1.0 + monic.iter().skip(1).map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..k).map(|i| seed.powu(i as u32) * radius / 2.0).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..k {
            let denom = (0..k)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-7, 1e-7);
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            return Ok(z);
        }
    }
    let resid = z.iter().map(|&w| eval(w).norm()).fold(0.0, f64::max);
    if resid < 1e-9 {
        Ok(z)
    } else {
        Err(Error::NumericalFailure(format!("no convergence, residual {resid:e}")))
    }
}

/// True when every magnitude is within `tol` of 1 or of `sqrt(Q)`.
pub fn weil_check(mags: &[f64], big_q: u64, tol: f64) -> bool {
    let s = (big_q as f64).sqrt();
    mags.iter().all(|m| (m - 1.0).abs() <= tol || (m - s).abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::carrier::find_fourier_carrier;

    #[test]
    fn binomial_expansion() {
        let c = find_fourier_carrier(1, 1000).unwrap();
        // (1 - T)^{-3} = 1 + 3T + 6T^2 + 10T^3
        assert_eq!(inverse_binomial(1, 1, 3, 3, &c), vec![1, 3, 6, 10]);
        // (1 - 2T^2)^{-1} = 1 + 2T^2 + 4T^4
        assert_eq!(inverse_binomial(2, 2, 1, 5, &c), vec![1, 0, 2, 0, 4, 0]);
    }

    #[test]
    fn magnitudes_of_small_polynomials() {
        let part = |exact: Vec<Vec<i64>>| PolyPart { prime: 7, order: 1, coeffs: vec![], exact: Some(exact) };
        let m = weil_magnitudes(&part(vec![vec![1], vec![-1]])).unwrap();
        assert_eq!(m.len(), 1);
        assert!((m[0] - 1.0).abs() < 1e-12);
        assert!(weil_magnitudes(&part(vec![vec![1]])).unwrap().is_empty());
        // 1 + 3T^2 has inverse roots +-i sqrt 3
        let m = weil_magnitudes(&part(vec![vec![1], vec![0], vec![3]])).unwrap();
        assert!(m.iter().all(|x| (x - 3f64.sqrt()).abs() < 1e-9));
        assert!(weil_check(&m, 3, 1e-6));
        let missing = PolyPart { prime: 7, order: 1, coeffs: vec![1], exact: None };
        assert!(matches!(weil_magnitudes(&missing), Err(Error::NumericalFailure(_))));
    }
}
