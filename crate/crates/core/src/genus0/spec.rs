use crate::algebra::factor::{poly_factor, Factorization};
use crate::algebra::field::FieldCtx;
use crate::algebra::poly::Poly;
use crate::algebra::text::format_poly;
use crate::error::{Error, Result};

/// The projective line over `F_q` with an affine effective modulus `m` and
/// base point at infinity.
#[derive(Clone, Debug)]
pub struct Genus0Spec {
    field: FieldCtx,
    modulus: Poly,
    factorization: Factorization,
}

impl PartialEq for Genus0Spec {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.modulus == other.modulus
    }
}

impl Eq for Genus0Spec {}

impl Genus0Spec {
    /// Validated constructor: requires `deg m >= 3`, so that the generalized
    /// Jacobian has dimension at least two.
    pub fn new(field: FieldCtx, modulus: Poly) -> Result<Genus0Spec> {
        let spec = Self::unchecked(field, modulus)?;
        if spec.degree() < 3 {
            return Err(Error::HypothesisViolated(format!(
                "modulus {} has degree {}; dim J_m = deg m - 1 must be at least 2",
                format_poly(&spec.modulus, &spec.field),
                spec.degree()
            )));
        }
        Ok(spec)
    }

    /// Accepts any nonconstant modulus. Used for comparison targets such
    /// as `m = x^2` which sit below the dimension hypothesis.
    pub fn unchecked(field: FieldCtx, modulus: Poly) -> Result<Genus0Spec> {
        match modulus.degree() {
            None | Some(0) => {
                return Err(Error::InvalidInput("modulus must have positive degree".into()))
            }
            _ => {}
        }
        let modulus = modulus.make_monic(&field);
        let factorization = poly_factor(&modulus, &field)?;
        Ok(Genus0Spec { field, modulus, factorization })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.size()
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// Arithmetic genus of `U`, equal to `dim J_m = deg m - 1`.
    pub fn pi(&self) -> usize {
        self.degree() - 1
    }

    pub fn describe(&self) -> String {
        format!("q={} m={}", self.q(), format_poly(&self.modulus, &self.field))
    }
}
