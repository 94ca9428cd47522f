//! Generalized Jacobians of elliptic curves with a reduced modulus.

pub mod curve;
pub mod level;
pub mod miller;
pub mod rayclass;
pub mod spec;

pub use curve::{EcPoint, WeierstrassCurve};
pub use level::EllipticLevel;
pub use miller::{line_leading, local_expansion, miller_line_eval};
pub use rayclass::{EcRayClassGroup, RayClass};
pub use spec::EllipticSpec;
