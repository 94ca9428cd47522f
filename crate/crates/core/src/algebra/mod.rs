//! Finite fields, polynomials over them, factorization and the exact
//! root-of-unity carrier.

pub mod arith;
pub mod carrier;
pub mod factor;
pub mod field;
pub mod irreducible;
pub mod poly;
pub mod text;

pub use carrier::{find_fourier_carrier, FourierCarrier};
pub use factor::{factor_trial, poly_factor, Factorization};
pub use field::{Fe, FieldCtx};
pub use irreducible::{irreducibles_by_degree, irreducibles_up_to, is_irreducible};
pub use poly::Poly;
