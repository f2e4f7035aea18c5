//! Computational toolkit for earthquake maps and bounded measured geodesic
//! laminations on the hyperbolic plane.
//!
//! The crate covers, end to end: boundary points and Möbius maps in the
//! half-plane and disk charts; boxes of geodesics with their cross-ratio /
//! Liouville measure; discrete and band laminations behind a common
//! box-measure interface; finite earthquakes with boundary evaluation and
//! earthquake-measure extraction; Hölder / Fréchet / uniform-weak* /
//! cross-ratio / Zygmund norm estimators (certified lower bounds with
//! analytic companions where available); infinitesimal earthquake fields
//! with certified tail truncation; and the constructive discretization of a
//! bounded lamination into Dirac masses with a full per-box ledger.
//!
//! Estimator candidate sweeps run in parallel with `rayon` under the
//! default `parallel` feature; disabling it yields a dependency-free
//! sequential build with identical results.

pub mod approx;
pub mod boundary;
pub mod boxes;
pub mod error;
pub mod geodesic;
pub mod lamination;
pub mod mobius;
pub mod profile;
pub mod quadrature;
pub mod search;

pub use boundary::{metric_circle, BoundaryPoint, ExtReal, InteriorPoint};
pub use boxes::{
    box_center, box_normalizer, cross_ratio, log2_box_family, q_star, q_star_0, GeodesicBox,
    SideKind, OMEGA_0,
};
pub use geodesic::{hyperbolic_distance, metric_geodesics, Geodesic};
pub use lamination::{
    pullback, restrict, BandLamination, DiscreteLamination, Lamination, LaminationOracle,
    Transversal,
};
pub use lamination::thurston::{box_sup, thurston_norm};
pub use mobius::{
    hyperbolic_translation, mobius_from_triples, translation_length_axis, MobiusMap,
};
pub use search::SearchBudget;
