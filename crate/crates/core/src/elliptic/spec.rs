use crate::algebra::field::FieldCtx;
use crate::elliptic::curve::{EcPoint, WeierstrassCurve};
use crate::error::{Error, Result};

/// An elliptic curve over `F_q` with base point `O` and a reduced modulus
/// made of at least two distinct affine rational points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticSpec {
    curve: WeierstrassCurve,
    modulus_points: Vec<EcPoint>,
}

impl EllipticSpec {
    pub fn new(curve: WeierstrassCurve, modulus_points: Vec<EcPoint>) -> Result<EllipticSpec> {
        let f = curve.field();
        for (i, p) in modulus_points.iter().enumerate() {
            if *p == EcPoint::Infinity {
                return Err(Error::InvalidInput("the modulus must avoid the base point O".into()));
            }
            if !curve.contains(p) {
                return Err(Error::InvalidInput(format!("{} is not on the curve", p.format(f))));
            }
            if modulus_points[..i].contains(p) {
                return Err(Error::InvalidInput(format!(
                    "modulus point {} repeated; only reduced moduli are supported",
                    p.format(f)
                )));
            }
        }
        if modulus_points.len() < 2 {
            return Err(Error::HypothesisViolated(format!(
                "modulus has {} point(s); at least two are needed",
                modulus_points.len()
            )));
        }
        Ok(EllipticSpec { curve, modulus_points })
    }

    pub fn curve(&self) -> &WeierstrassCurve {
        &self.curve
    }

    pub fn field(&self) -> &FieldCtx {
        self.curve.field()
    }

    pub fn q(&self) -> u32 {
        self.field().size()
    }

    pub fn modulus_points(&self) -> &[EcPoint] {
        &self.modulus_points
    }

    /// Genus one plus the torus dimension `s - 1`.
    pub fn pi(&self) -> usize {
        self.modulus_points.len()
    }
}
