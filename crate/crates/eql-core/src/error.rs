//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("two points of a triple coincide within tolerance")]
    DegenerateTriple,
    #[error("triples have opposite cyclic orders")]
    OrientationMismatch,
    #[error("matrix is not orientation-preserving (det = {det})")]
    NotOrientationPreserving { det: f64 },
    #[error("geodesic endpoints coincide within tolerance")]
    DegenerateGeodesic,
    #[error("geodesics cross: endpoints interleave on the circle")]
    GeodesicsCross,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoxError {
    #[error("two corner points coincide within tolerance")]
    DegenerateQuadruple,
    #[error("corners are not in counterclockwise order")]
    CornersNotCcw,
    #[error("box has a degeneracy flag set; its Liouville measure is 0 by convention")]
    DegenerateBox,
    #[error("Liouville measure {found} differs from log 2 by more than {tol}")]
    NotLogTwoBox { found: f64, tol: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LaminationError {
    #[error("leaves {i} and {j} cross")]
    CrossingLeaves { i: usize, j: usize },
    #[error("leaf weight must be positive, got {weight}")]
    NonPositiveWeight { weight: f64 },
    #[error("band endpoint functions produce crossing leaves near t = {t}")]
    BandLeavesCross { t: f64 },
    #[error("band density is negative at t = {t}")]
    NegativeDensity { t: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EarthquakeError {
    #[error("base point lies on a leaf of the lamination")]
    BasePointOnLeaf,
    #[error(transparent)]
    Lamination(#[from] LaminationError),
    #[error("lamination exceeds the leaf cap ({n} > {max})")]
    TooManyLeaves { n: usize, max: usize },
    #[error("pieces {near} and {far}: comparison map is not an earthquake step ({reason})")]
    NotAnEarthquake { near: usize, far: usize, reason: String },
    #[error("piecewise map does not cover the circle")]
    BadPieceTable,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NormError {
    #[error("Hölder exponent must lie in (0, 1], got {nu}")]
    BadExponent { nu: f64 },
    #[error("vector field returned a non-finite sample at angle {theta}")]
    NonFinite { theta: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ApproxError {
    #[error("lamination has a continuous part but no compact support window")]
    WindowRequired,
    #[error("oracle returned a peak outside the queried box")]
    OracleInconsistent,
    #[error("cell refinement stalled before reaching the per-box mass target")]
    RefinementStalled,
}
