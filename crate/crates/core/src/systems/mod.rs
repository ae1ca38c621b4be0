//! Explicit dynamical systems: rotations, affine Weyl nilsystems, cyclic
//! rotations, Sturmian subshifts and products, with exact rational or
//! guarded fixed-point arithmetic; plus finite uniform measure systems.

mod measure;
mod orbit;
mod scalar;
mod spec;
mod sturmian;

pub use measure::FiniteMeasureSystem;
pub use orbit::{ball_verdict, circle_norm, orbit_point, return_set, torus_distance, Distance, ReturnSet, Verdict, MAX_RETURN_WINDOW};
pub use scalar::{binomial, frac, rational_to_string, Coef, ContinuedFraction, Fixed, TorusScalar};
pub use spec::{Neighborhood, SystemPoint, SystemSpec};
pub use sturmian::{code_point, factor_count, sturmian_code, SturmianWord};
