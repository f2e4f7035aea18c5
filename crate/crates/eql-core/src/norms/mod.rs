//! The topology layer: Hölder test functions, Fréchet / uniform-weak*
//! norm estimators for lamination differences, cross-ratio and Zygmund
//! norms of boundary vector fields, and quasisymmetric distortion of
//! circle maps.

pub mod crossratio;
pub mod field;
pub mod frechet;
pub mod qs;
pub mod testfn;
pub mod zygmund;

pub use crossratio::{box_expression, crossratio_norm};
pub use field::{CircleVectorField, PiecewiseAngleField, PolyField};
pub use frechet::{frechet_norm, symmetric_difference, uweak_distance, NormInterval};
pub use qs::{qs_constant, qs_distortion, CircleMap};
pub use testfn::{holder_norm, pair, Profile, TestFunction};
pub use zygmund::{zygmund_norm, ZygmundGrid};
