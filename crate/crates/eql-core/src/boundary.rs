//! Ideal boundary points of the hyperbolic plane in two charts.
//!
//! The half-plane chart carries an extended real coordinate (with `Inf` as an
//! exact tagged value, never a large float); the disk chart carries an angle
//! in `[0, 2π)` standing for the point `e^{iθ}` on the unit circle. The fixed
//! Cayley map `C(z) = (z − i)/(z + i)` is the single bridge between the two,
//! with `C(∞) = 1` (angle 0).

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::f64::consts::{PI, TAU};

/// Point separation tolerance (disk-chart angle metric).
pub const EPS_PT: f64 = 1e-12;

/// An extended real number: the boundary of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Inf,
}

impl ExtReal {
    pub fn is_infinite(self) -> bool {
        matches!(self, ExtReal::Inf)
    }

    /// Finite value, or `None` for ∞.
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            ExtReal::Inf => None,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::Finite(x)
    }
}

/// A point of the ideal boundary circle, remembered in the chart it was
/// given in. Conversions go through the fixed Cayley map.
#[derive(Clone, Copy, Debug)]
pub enum BoundaryPoint {
    /// Disk chart: the angle θ ∈ [0, 2π) of e^{iθ}.
    Disk(f64),
    /// Half-plane chart: extended real coordinate.
    HalfPlane(ExtReal),
}

/// Canonicalize an angle into `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t == TAU {
        0.0
    } else {
        t
    }
}

/// Angle distance on the circle, in `[0, π]`.
pub fn angle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

impl BoundaryPoint {
    pub fn disk(theta: f64) -> Self {
        BoundaryPoint::Disk(wrap_angle(theta))
    }

    pub fn half_plane(x: f64) -> Self {
        BoundaryPoint::HalfPlane(ExtReal::Finite(x))
    }

    pub fn infinity() -> Self {
        BoundaryPoint::HalfPlane(ExtReal::Inf)
    }

    /// Disk-chart angle of this point. `∞ ↦ 0` exactly (the point 1).
    pub fn angle(&self) -> f64 {
        match *self {
            BoundaryPoint::Disk(t) => t,
            BoundaryPoint::HalfPlane(ExtReal::Inf) => 0.0,
            BoundaryPoint::HalfPlane(ExtReal::Finite(x)) => {
                // C(x) = (x−i)/(x+i) = (x²−1 − 2xi)/(x²+1)
                wrap_angle((-2.0 * x).atan2(x * x - 1.0))
            }
        }
    }

    /// Half-plane coordinate of this point. Angle 0 ↦ ∞ exactly.
    pub fn coordinate(&self) -> ExtReal {
        match *self {
            BoundaryPoint::HalfPlane(v) => v,
            BoundaryPoint::Disk(t) => {
                if t == 0.0 {
                    ExtReal::Inf
                } else {
                    // C⁻¹(e^{iθ}) = −cot(θ/2)
                    ExtReal::Finite(-1.0 / (t / 2.0).tan())
                }
            }
        }
    }

    /// The point as a complex number on the unit circle.
    pub fn unit_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle())
    }

    /// Re-express in the chart of `other`, preserving the location.
    pub fn in_chart_of(&self, other: &BoundaryPoint) -> BoundaryPoint {
        match other {
            BoundaryPoint::Disk(_) => BoundaryPoint::Disk(self.angle()),
            BoundaryPoint::HalfPlane(_) => BoundaryPoint::HalfPlane(self.coordinate()),
        }
    }

    /// Angle distance to another boundary point (chart-independent).
    pub fn dist(&self, other: &BoundaryPoint) -> f64 {
        angle_dist(self.angle(), other.angle())
    }

    pub fn approx_eq(&self, other: &BoundaryPoint, tol: f64) -> bool {
        self.dist(other) <= tol
    }
}

/// Angle metric on S¹ with base point at the disk origin (the fixed metric
/// used everywhere; values in `[0, π]`).
pub fn metric_circle(p: &BoundaryPoint, q: &BoundaryPoint) -> f64 {
    p.dist(q)
}

/// True when the triple (a, b, c) is in strict counterclockwise order.
pub fn is_ccw(a: &BoundaryPoint, b: &BoundaryPoint, c: &BoundaryPoint) -> bool {
    let (ta, tb, tc) = (a.angle(), b.angle(), c.angle());
    let db = (tb - ta).rem_euclid(TAU);
    let dc = (tc - ta).rem_euclid(TAU);
    db > 0.0 && dc > 0.0 && db < dc
}

/// Arc position of `p` measured counterclockwise from `from`, in `[0, 2π)`.
pub fn ccw_offset(from: f64, p: f64) -> f64 {
    (p - from).rem_euclid(TAU)
}

/// An interior point of the hyperbolic plane, held in the disk model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InteriorPoint {
    pub x: f64,
    pub y: f64,
}

impl InteriorPoint {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x * x + y * y < 1.0, "interior point must be in the unit disk");
        InteriorPoint { x, y }
    }

    /// Interior point from half-plane coordinates (Im > 0), through Cayley.
    pub fn from_half_plane(x: f64, y: f64) -> Self {
        let z = Complex64::new(x, y);
        let w = (z - Complex64::i()) / (z + Complex64::i());
        InteriorPoint { x: w.re, y: w.im }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Half-plane coordinates of this point.
    pub fn to_half_plane(&self) -> Complex64 {
        let w = self.as_complex();
        Complex64::i() * (Complex64::new(1.0, 0.0) + w) / (Complex64::new(1.0, 0.0) - w)
    }

    /// Hyperbolic distance to another interior point.
    pub fn dist(&self, other: &InteriorPoint) -> f64 {
        let a = self.as_complex();
        let b = other.as_complex();
        let num = (a - b).norm_sqr();
        let den = (1.0 - a.norm_sqr()) * (1.0 - b.norm_sqr());
        (1.0 + 2.0 * num / den).acosh()
    }

    /// Hyperbolic distance to the disk origin.
    pub fn dist_origin(&self) -> f64 {
        let r = self.as_complex().norm();
        ((1.0 + r) / (1.0 - r)).ln()
    }
}

// JSON form: {"chart":"H"|"D", "v": number|"inf"}
impl Serialize for BoundaryPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BoundaryPoint", 2)?;
        match self {
            BoundaryPoint::Disk(t) => {
                st.serialize_field("chart", "D")?;
                st.serialize_field("v", t)?;
            }
            BoundaryPoint::HalfPlane(ExtReal::Finite(x)) => {
                st.serialize_field("chart", "H")?;
                st.serialize_field("v", x)?;
            }
            BoundaryPoint::HalfPlane(ExtReal::Inf) => {
                st.serialize_field("chart", "H")?;
                st.serialize_field("v", "inf")?;
            }
        }
        st.end()
    }
}

impl<'de> Deserialize<'de> for BoundaryPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            chart: String,
            v: serde_json::Value,
        }
        let raw = Raw::deserialize(d)?;
        match raw.chart.as_str() {
            "D" => {
                let t = raw.v.as_f64().ok_or_else(|| D::Error::custom("disk point needs a number"))?;
                Ok(BoundaryPoint::disk(t))
            }
            "H" => match raw.v {
                serde_json::Value::String(s) if s == "inf" => Ok(BoundaryPoint::infinity()),
                v => {
                    let x = v.as_f64().ok_or_else(|| D::Error::custom("half-plane point needs a number or \"inf\""))?;
                    Ok(BoundaryPoint::half_plane(x))
                }
            },
            other => Err(D::Error::custom(format!("unknown chart {other:?}"))),
        }
    }
}

/// The angle of the disk point at `π/2·k`, kept exact for the fixed
/// normalization triple (1, i, −1).
pub fn quarter_angle(k: u32) -> f64 {
    (k as f64) * PI / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_special_points() {
        assert_eq!(BoundaryPoint::infinity().angle(), 0.0);
        assert!((BoundaryPoint::half_plane(0.0).angle() - PI).abs() < 1e-15);
        assert!((BoundaryPoint::half_plane(1.0).angle() - 3.0 * PI / 2.0).abs() < 1e-15);
        assert!((BoundaryPoint::half_plane(-1.0).angle() - PI / 2.0).abs() < 1e-15);
        assert!(BoundaryPoint::disk(0.0).coordinate().is_infinite());
    }

    #[test]
    fn cayley_round_trip() {
        for k in 0..10_000 {
            let theta = (k as f64) * TAU / 10_000.0 + 1e-4;
            let p = BoundaryPoint::disk(theta);
            let back = BoundaryPoint::HalfPlane(p.coordinate());
            assert!(p.dist(&back) < EPS_PT, "round trip failed at θ = {theta}");
        }
    }

    #[test]
    fn ccw_predicate() {
        let a = BoundaryPoint::disk(0.1);
        let b = BoundaryPoint::disk(2.0);
        let c = BoundaryPoint::disk(4.0);
        assert!(is_ccw(&a, &b, &c));
        assert!(!is_ccw(&a, &c, &b));
        assert!(is_ccw(&c, &a, &b));
    }

    #[test]
    fn metric_antipodal() {
        let p = BoundaryPoint::disk(0.0);
        let q = BoundaryPoint::disk(PI);
        assert_eq!(metric_circle(&p, &q), PI);
    }

    #[test]
    fn interior_distance_half_plane() {
        // d(i, e·i) = 1 in the half-plane.
        let a = InteriorPoint::from_half_plane(0.0, 1.0);
        let b = InteriorPoint::from_half_plane(0.0, std::f64::consts::E);
        assert!((a.dist(&b) - 1.0).abs() < 1e-12);
        assert!(a.dist_origin() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let pts = [
            BoundaryPoint::infinity(),
            BoundaryPoint::half_plane(2.5),
            BoundaryPoint::disk(1.25),
        ];
        for p in pts {
            let s = serde_json::to_string(&p).unwrap();
            let q: BoundaryPoint = serde_json::from_str(&s).unwrap();
            assert!(p.dist(&q) < 1e-15);
        }
        assert_eq!(
            serde_json::to_string(&BoundaryPoint::infinity()).unwrap(),
            r#"{"chart":"H","v":"inf"}"#
        );
    }
}
