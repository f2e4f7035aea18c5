//! Complete geodesics of the hyperbolic plane as unordered pairs of distinct
//! ideal endpoints, the metric on the space of geodesics, and side / crossing
//! predicates used by laminations and earthquakes.

use crate::boundary::{angle_dist, ccw_offset, BoundaryPoint, ExtReal, InteriorPoint, EPS_PT};
use crate::error::GeometryError;
use serde::{Deserialize, Serialize};

/// A complete geodesic, stored as an endpoint pair. Equality and ordering
/// are insensitive to the stored order; orientation-sensitive operations
/// (hyperbolic translations) read the stored order explicitly.
#[derive(Clone, Copy, Debug)]
pub struct Geodesic {
    pub p: BoundaryPoint,
    pub q: BoundaryPoint,
}

impl Geodesic {
    pub fn new(p: BoundaryPoint, q: BoundaryPoint) -> Result<Self, GeometryError> {
        if p.dist(&q) <= EPS_PT {
            return Err(GeometryError::DegenerateGeodesic);
        }
        Ok(Geodesic { p, q })
    }

    /// Construct without the separation check (for callers that already
    /// guarantee distinct endpoints).
    pub fn new_unchecked(p: BoundaryPoint, q: BoundaryPoint) -> Self {
        Geodesic { p, q }
    }

    pub fn half_plane(u: f64, v: f64) -> Self {
        Geodesic::new_unchecked(BoundaryPoint::half_plane(u), BoundaryPoint::half_plane(v))
    }

    pub fn to_infinity(u: f64) -> Self {
        Geodesic::new_unchecked(BoundaryPoint::half_plane(u), BoundaryPoint::infinity())
    }

    /// Endpoint angles sorted increasingly; the canonical key for ordering
    /// and deduplication.
    pub fn sorted_angles(&self) -> (f64, f64) {
        let (a, b) = (self.p.angle(), self.q.angle());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn reversed(&self) -> Geodesic {
        Geodesic { p: self.q, q: self.p }
    }

    /// Order-insensitive equality within `tol` (angle metric per endpoint).
    pub fn approx_eq(&self, other: &Geodesic, tol: f64) -> bool {
        (self.p.dist(&other.p) <= tol && self.q.dist(&other.q) <= tol)
            || (self.p.dist(&other.q) <= tol && self.q.dist(&other.p) <= tol)
    }

    /// Largest endpoint residual under the best pairing.
    pub fn endpoint_error(&self, other: &Geodesic) -> f64 {
        let direct = self.p.dist(&other.p).max(self.q.dist(&other.q));
        let swapped = self.p.dist(&other.q).max(self.q.dist(&other.p));
        direct.min(swapped)
    }

    /// True when the two geodesics cross in the open disk: endpoints
    /// strictly interleave on the circle. Shared endpoints do not count.
    pub fn crosses(&self, other: &Geodesic) -> bool {
        let a = self.p.angle();
        let b = self.q.angle();
        let c = other.p.angle();
        let d = other.q.angle();
        // Shared endpoints (within tolerance) never cross.
        for (x, y) in [(a, c), (a, d), (b, c), (b, d)] {
            if angle_dist(x, y) <= EPS_PT {
                return false;
            }
        }
        let span = ccw_offset(a, b);
        let oc = ccw_offset(a, c);
        let od = ccw_offset(a, d);
        (oc < span) != (od < span)
    }

    /// Signed side of an interior point (disk model): the geodesic is the
    /// circular arc orthogonal to the unit circle through its endpoints;
    /// the sign of this function separates the two components.
    pub fn side_interior(&self, z: &InteriorPoint) -> f64 {
        side_value(self, z.x, z.y)
    }

    /// Side value of a boundary point; zero exactly at the endpoints.
    pub fn side_boundary(&self, p: &BoundaryPoint) -> f64 {
        let t = p.angle();
        side_value(self, t.cos(), t.sin())
    }

    /// True when `z` and `w` lie weakly on opposite sides
    /// (either side value may be zero).
    pub fn separates_interior(&self, z: &InteriorPoint, w: &InteriorPoint) -> bool {
        self.side_interior(z) * self.side_interior(w) <= 0.0
    }
}

/// Side function: for a "diameter" geodesic the signed distance to the
/// chord line, otherwise |z − c|² − r² of the orthogonal circle, with a
/// sign fixed so that results are comparable between points.
fn side_value(g: &Geodesic, x: f64, y: f64) -> f64 {
    let (ta, tb) = (g.p.angle(), g.q.angle());
    let (ax, ay) = (ta.cos(), ta.sin());
    let (bx, by) = (tb.cos(), tb.sin());
    let dot = ax * bx + ay * by;
    if dot < -1.0 + 1e-14 {
        // Antipodal endpoints: the geodesic is a diameter; use the line side.
        return (bx - ax) * (y - ay) - (by - ay) * (x - ax);
    }
    // Circle through a, b orthogonal to the unit circle: center c with
    // Re(a·c̄) = 1 and Re(b·c̄) = 1.
    let det = ax * by - ay * bx;
    debug_assert!(det.abs() > 1e-300, "degenerate geodesic endpoints");
    let cx = (by - ay) / det;
    let cy = (ax - bx) / det;
    // Orthogonality to the unit circle forces r² = |c|² − 1.
    let r2 = cx * cx + cy * cy - 1.0;
    // Independent of the stored endpoint order: swapping flips both the
    // determinant and the numerators.
    (x - cx) * (x - cx) + (y - cy) * (y - cy) - r2
}

/// The metric on the space of geodesics induced by the angle metric:
/// min over the two endpoint pairings of the larger endpoint distance.
pub fn metric_geodesics(g: &Geodesic, h: &Geodesic) -> f64 {
    let d = |p: &BoundaryPoint, q: &BoundaryPoint| p.dist(q);
    let direct = d(&g.p, &h.p).max(d(&g.q, &h.q));
    let swapped = d(&g.p, &h.q).max(d(&g.q, &h.p));
    direct.min(swapped)
}

/// Hyperbolic distance between two disjoint geodesics (0 when they share
/// an endpoint). Errors when the geodesics cross.
///
/// Computed through the Liouville measure of the box they span:
/// `L = −2 log tanh(D/2)`, so `D = 2 artanh(e^{−L/2})`.
pub fn hyperbolic_distance(g: &Geodesic, h: &Geodesic) -> Result<f64, GeometryError> {
    if g.crosses(h) {
        return Err(GeometryError::GeodesicsCross);
    }
    // Shared endpoint: asymptotic geodesics are at distance 0.
    for (x, y) in [(&g.p, &h.p), (&g.p, &h.q), (&g.q, &h.p), (&g.q, &h.q)] {
        if x.dist(y) <= EPS_PT {
            return Ok(0.0);
        }
    }
    // Arrange corners (a, b, c, d) counterclockwise with {a,b} = g, {c,d} = h.
    let (a, b, c, d) = order_disjoint_pairs(g, h);
    let cr = crate::boxes::cross_ratio_coords(
        a.coordinate(),
        b.coordinate(),
        c.coordinate(),
        d.coordinate(),
    );
    let l = cr.abs().ln().abs();
    Ok(2.0 * (-l / 2.0).exp().atanh())
}

/// Order the endpoints of two disjoint geodesics into a counterclockwise
/// quadruple (a, b, c, d) with {a,b} the first pair.
fn order_disjoint_pairs(
    g: &Geodesic,
    h: &Geodesic,
) -> (BoundaryPoint, BoundaryPoint, BoundaryPoint, BoundaryPoint) {
    for (a, b) in [(g.p, g.q), (g.q, g.p)] {
        for (c, d) in [(h.p, h.q), (h.q, h.p)] {
            let ta = a.angle();
            let ob = ccw_offset(ta, b.angle());
            let oc = ccw_offset(ta, c.angle());
            let od = ccw_offset(ta, d.angle());
            if ob <= oc && oc <= od {
                return (a, b, c, d);
            }
        }
    }
    unreachable!("disjoint pairs always admit a counterclockwise arrangement")
}

/// Intersection point of two crossing geodesics in half-plane coordinates.
pub fn geodesic_intersection_h(g: &Geodesic, h: &Geodesic) -> Option<num_complex::Complex64> {
    let circ = |g: &Geodesic| -> Option<(f64, f64)> {
        match (g.p.coordinate(), g.q.coordinate()) {
            (ExtReal::Finite(u), ExtReal::Finite(v)) => Some(((u + v) / 2.0, (v - u).abs() / 2.0)),
            _ => None,
        }
    };
    let vert = |g: &Geodesic| -> Option<f64> {
        match (g.p.coordinate(), g.q.coordinate()) {
            (ExtReal::Finite(u), ExtReal::Inf) | (ExtReal::Inf, ExtReal::Finite(u)) => Some(u),
            _ => None,
        }
    };
    let pt = match (circ(g), circ(h), vert(g), vert(h)) {
        (Some((c1, r1)), Some((c2, r2)), _, _) => {
            if (c2 - c1).abs() < 1e-300 {
                return None;
            }
            let x = (r1 * r1 - r2 * r2 - c1 * c1 + c2 * c2) / (2.0 * (c2 - c1));
            let y2 = r1 * r1 - (x - c1) * (x - c1);
            if y2 <= 0.0 {
                return None;
            }
            num_complex::Complex64::new(x, y2.sqrt())
        }
        (Some((c, r)), None, _, Some(v)) | (None, Some((c, r)), Some(v), _) => {
            let y2 = r * r - (v - c) * (v - c);
            if y2 <= 0.0 {
                return None;
            }
            num_complex::Complex64::new(v, y2.sqrt())
        }
        _ => return None,
    };
    Some(pt)
}

/// Hyperbolic distance from an interior half-plane point to a geodesic.
pub fn dist_point_to_geodesic_h(z: num_complex::Complex64, g: &Geodesic) -> f64 {
    let cosh_d = match (g.p.coordinate(), g.q.coordinate()) {
        (ExtReal::Finite(u), ExtReal::Finite(v)) => {
            ((z - u).norm() * (z - v).norm()) / ((v - u).abs() * z.im)
        }
        (ExtReal::Finite(u), ExtReal::Inf) | (ExtReal::Inf, ExtReal::Finite(u)) => {
            (z - u).norm() / z.im
        }
        _ => return 0.0,
    };
    cosh_d.max(1.0).acosh()
}

impl Serialize for Geodesic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [&self.p, &self.q].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Geodesic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [p, q] = <[BoundaryPoint; 2]>::deserialize(d)?;
        Geodesic::new(p, q).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn equality_is_unordered() {
        let g = Geodesic::half_plane(0.0, 2.0);
        let h = Geodesic::half_plane(2.0, 0.0);
        assert!(g.approx_eq(&h, 1e-15));
        assert_eq!(metric_geodesics(&g, &h), 0.0);
    }

    #[test]
    fn metric_symmetry_under_relabeling() {
        let g = Geodesic::half_plane(-1.0, 1.0);
        let h = Geodesic::half_plane(0.5, 4.0);
        assert_eq!(metric_geodesics(&g, &h), metric_geodesics(&g.reversed(), &h));
        assert_eq!(metric_geodesics(&g, &h), metric_geodesics(&h, &g));
    }

    #[test]
    fn crossing_predicate() {
        let g = Geodesic::to_infinity(0.0);
        assert!(g.crosses(&Geodesic::half_plane(-1.0, 1.0)));
        assert!(!g.crosses(&Geodesic::half_plane(1.0, 2.0)));
        // Shared endpoint does not count as crossing.
        assert!(!g.crosses(&Geodesic::half_plane(0.0, 1.0)));
    }

    #[test]
    fn distance_normalized_pair() {
        for &d in &[0.5f64, 1.0, 2.0, 5.0] {
            let g = Geodesic::half_plane(-1.0, 1.0);
            let h = Geodesic::half_plane(d.exp(), -d.exp());
            let got = hyperbolic_distance(&g, &h).unwrap();
            assert!((got - d).abs() < 1e-10, "D = {d}, got {got}");
        }
    }

    #[test]
    fn distance_asymptotic_and_crossing() {
        let g = Geodesic::to_infinity(0.0);
        assert_eq!(hyperbolic_distance(&g, &Geodesic::half_plane(0.0, 1.0)).unwrap(), 0.0);
        assert!(matches!(
            hyperbolic_distance(&g, &Geodesic::half_plane(-1.0, 1.0)),
            Err(GeometryError::GeodesicsCross)
        ));
    }

    #[test]
    fn sides_of_vertical_axis() {
        let g = Geodesic::to_infinity(0.0);
        let left = InteriorPoint::from_half_plane(-1.0, 1.0);
        let right = InteriorPoint::from_half_plane(1.0, 1.0);
        assert!(g.side_interior(&left) * g.side_interior(&right) < 0.0);
        let b_left = BoundaryPoint::half_plane(-5.0);
        let b_right = BoundaryPoint::half_plane(5.0);
        assert!(g.side_boundary(&b_left) * g.side_boundary(&b_right) < 0.0);
        assert!(g.side_boundary(&BoundaryPoint::half_plane(0.0)).abs() < 1e-12);
    }

    #[test]
    fn diameter_side_function() {
        // Geodesic with antipodal endpoints: disk angles 0 and π.
        let g = Geodesic::new_unchecked(BoundaryPoint::disk(0.0), BoundaryPoint::disk(PI));
        let up = InteriorPoint::new(0.0, 0.5);
        let down = InteriorPoint::new(0.0, -0.5);
        assert!(g.side_interior(&up) * g.side_interior(&down) < 0.0);
    }

    #[test]
    fn intersection_point() {
        let g = Geodesic::to_infinity(0.0);
        let h = Geodesic::half_plane(-2.0, 2.0);
        let z = geodesic_intersection_h(&g, &h).unwrap();
        assert!((z.re - 0.0).abs() < 1e-14 && (z.im - 2.0).abs() < 1e-14);
    }

    #[test]
    fn point_to_geodesic_distance() {
        let g = Geodesic::half_plane(-1.0, 1.0);
        // d(i·e^h, unit semicircle) = h.
        for &h in &[0.3f64, 1.0, 2.5] {
            let z = num_complex::Complex64::new(0.0, h.exp());
            assert!((dist_point_to_geodesic_h(z, &g) - h).abs() < 1e-12);
        }
    }
}
