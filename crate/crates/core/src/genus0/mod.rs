//! The projective line with an affine modulus: `J_m` as a unit group
//! quotient, Abel–Jacobi, reduction maps and automorphisms.

pub mod jacobian;
pub mod mobius;
pub mod spec;

pub use jacobian::{
    level_field, order_formula, reduction_map, ClosedPoint, Divisor, JmClass, Point,
    RayClassGroup, DEFAULT_BUDGET,
};
pub use mobius::{automorphisms_fixing_data, fixed_points, function_with_orders, Mobius};
pub use spec::Genus0Spec;
