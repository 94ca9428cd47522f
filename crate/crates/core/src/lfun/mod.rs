//! Characters of `J_m(F_{q^r})` with exact values in a prime field, and
//! their L-functions.

pub mod character;
pub mod series;
pub mod tables;

use rayon::prelude::*;

use crate::algebra::carrier::{find_fourier_carrier, FourierCarrier};
use crate::error::Result;
use crate::genus0::{ClosedPoint, Divisor};

pub use character::{character_group, Character};
pub use series::{
    lfun_divisor_sum, lfun_euler, polynomial_part, weil_check, weil_magnitudes, LSeries, PolyPart,
    Provenance,
};
pub use tables::{carrier_bound, CurveLevel, Genus0Level};

/// Carrier for a level: `N` = group exponent, `P` above the count bound.
pub fn level_carrier<C: CurveLevel + ?Sized>(level: &C, bound: usize) -> Result<FourierCarrier> {
    find_fourier_carrier(level.exponent(), carrier_bound(level, bound))
}

/// `chi(Frob_y)`, the character at the class of `[y] - deg(y) [inf]`.
pub fn frobenius_value(chi: &Character, y: &ClosedPoint, level: &Genus0Level) -> Result<u64> {
    let d = y.degree() as i64;
    let div = Divisor(vec![(y.clone(), 1), (ClosedPoint::Infinity, -d)]);
    let class = level.group.class_of_divisor(&div)?;
    Ok(chi.value_at(&level.structure.coords(&class).expect("class in table")))
}

/// Every character of a level with both L-series.
pub struct LevelSeries {
    pub carrier: FourierCarrier,
    pub characters: Vec<Character>,
    pub euler: Vec<LSeries>,
    pub divisor_sum: Vec<LSeries>,
}

impl LevelSeries {
    pub fn agree(&self) -> bool {
        self.euler.iter().zip(&self.divisor_sum).all(|(a, b)| a.agrees_with(b))
    }
}

pub fn compute_level<C: CurveLevel + ?Sized>(level: &C, bound: usize) -> Result<LevelSeries> {
    let carrier = level_carrier(level, bound)?;
    let characters = character_group(level.level(), level.factors(), &carrier);
    let closed = level.closed_point_classes(bound)?;
    let hist = level.divisor_histogram(bound)?;
    let euler = characters
        .par_iter()
        .map(|chi| lfun_euler(chi, level, &closed, bound))
        .collect::<Result<Vec<_>>>()?;
    let divisor_sum = characters
        .par_iter()
        .map(|chi| lfun_divisor_sum(chi, level, &hist, bound))
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelSeries { carrier, characters, euler, divisor_sum })
}

/// Only the divisor-sum route, which is what a bundle records.
pub fn divisor_sum_level<C: CurveLevel + ?Sized>(
    level: &C,
    bound: usize,
) -> Result<(FourierCarrier, Vec<Character>, Vec<LSeries>)> {
    let carrier = level_carrier(level, bound)?;
    let characters = character_group(level.level(), level.factors(), &carrier);
    let hist = level.divisor_histogram(bound)?;
    let series = characters
        .par_iter()
        .map(|chi| lfun_divisor_sum(chi, level, &hist, bound))
        .collect::<Result<Vec<_>>>()?;
    Ok((carrier, characters, series))
}
