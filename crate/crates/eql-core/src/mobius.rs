//! Orientation-preserving Möbius maps of the upper half-plane, as real
//! 2×2 matrices with determinant one. `M` and `−M` act identically; the
//! canonical representative makes the first nonzero entry positive.

use crate::boundary::{BoundaryPoint, ExtReal};
use crate::error::GeometryError;
use crate::geodesic::Geodesic;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Determinant tolerance.
pub const EPS_DET: f64 = 1e-10;
/// Trace threshold for the hyperbolic / non-hyperbolic classification.
pub const EPS_TR: f64 = 1e-10;

/// A Möbius map `x ↦ (a·x + b)/(c·x + d)` preserving the upper half-plane,
/// stored row-major with `ad − bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MobiusMap {
    pub const IDENTITY: MobiusMap = MobiusMap { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Normalize to determinant one and canonical sign.
    ///
    /// Errors when the determinant is not positive (orientation-reversing or
    /// singular input).
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, GeometryError> {
        let det = a * d - b * c;
        if !(det.is_finite() && det > 0.0) {
            return Err(GeometryError::NotOrientationPreserving { det });
        }
        let s = det.sqrt();
        Ok(MobiusMap { a: a / s, b: b / s, c: c / s, d: d / s }.canonical_sign())
    }

    /// Pick the representative of `{M, −M}` whose first nonzero entry
    /// (scanning a, b, c, d) is positive.
    pub fn canonical_sign(self) -> Self {
        for v in [self.a, self.b, self.c, self.d] {
            if v != 0.0 {
                return if v < 0.0 { MobiusMap { a: -self.a, b: -self.b, c: -self.c, d: -self.d } } else { self };
            }
        }
        self
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace_abs(&self) -> f64 {
        (self.a + self.d).abs()
    }

    /// Operator norm bound: the largest singular value.
    pub fn op_norm(&self) -> f64 {
        let f = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
        // Singular values σ, 1/σ satisfy σ² + σ⁻² = f.
        (0.5 * (f + (f * f - 4.0).max(0.0).sqrt())).sqrt()
    }

    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
        .canonical_sign()
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }.canonical_sign()
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.a - self.d).abs() <= tol
            && self.b.abs() <= tol
            && self.c.abs() <= tol
            && (self.a.abs() - 1.0).abs() <= tol
    }

    /// Action on the extended real line; ∞ and the pole are exact.
    pub fn apply_ext(&self, x: ExtReal) -> ExtReal {
        match x {
            ExtReal::Inf => {
                if self.c == 0.0 {
                    ExtReal::Inf
                } else {
                    ExtReal::Finite(self.a / self.c)
                }
            }
            ExtReal::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    ExtReal::Inf
                } else {
                    ExtReal::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// Action on a boundary point; the output stays in the input chart.
    pub fn apply(&self, p: &BoundaryPoint) -> BoundaryPoint {
        let image = BoundaryPoint::HalfPlane(self.apply_ext(p.coordinate()));
        image.in_chart_of(p)
    }

    /// Action on an interior point of the half-plane.
    pub fn apply_interior_h(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    pub fn apply_geodesic(&self, g: &Geodesic) -> Geodesic {
        Geodesic::new_unchecked(self.apply(&g.p), self.apply(&g.q))
    }

    /// Derivative at a finite half-plane boundary point.
    pub fn derivative(&self, x: f64) -> f64 {
        let den = self.c * x + self.d;
        1.0 / (den * den)
    }

    /// Row-major entries `[a, b, c, d]`.
    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl Serialize for MobiusMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MobiusMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b, c, dd] = <[f64; 4]>::deserialize(d)?;
        MobiusMap::new(a, b, c, dd).map_err(serde::de::Error::custom)
    }
}

/// Matrix of the map sending `(p1, p2, p3) ↦ (0, 1, ∞)`, before
/// normalization. Requires distinct points.
fn to_zero_one_inf(p: [ExtReal; 3]) -> (f64, f64, f64, f64) {
    match p {
        [ExtReal::Inf, ExtReal::Finite(p2), ExtReal::Finite(p3)] => (0.0, p2 - p3, 1.0, -p3),
        [ExtReal::Finite(p1), ExtReal::Inf, ExtReal::Finite(p3)] => (1.0, -p1, 1.0, -p3),
        [ExtReal::Finite(p1), ExtReal::Finite(p2), ExtReal::Inf] => (1.0, -p1, 0.0, p2 - p1),
        [ExtReal::Finite(p1), ExtReal::Finite(p2), ExtReal::Finite(p3)] => {
            (p2 - p3, -p1 * (p2 - p3), p2 - p1, -p3 * (p2 - p1))
        }
        _ => unreachable!("triple with two infinities is degenerate"),
    }
}

/// The unique orientation-preserving Möbius map with `src_k ↦ dst_k`.
///
/// Both triples must consist of distinct points in counterclockwise order.
pub fn mobius_from_triples(
    src: [&BoundaryPoint; 3],
    dst: [&BoundaryPoint; 3],
) -> Result<MobiusMap, GeometryError> {
    use crate::boundary::{is_ccw, EPS_PT};
    for t in [src, dst] {
        for i in 0..3 {
            for j in (i + 1)..3 {
                if t[i].dist(t[j]) <= EPS_PT {
                    return Err(GeometryError::DegenerateTriple);
                }
            }
        }
    }
    if !is_ccw(src[0], src[1], src[2]) || !is_ccw(dst[0], dst[1], dst[2]) {
        return Err(GeometryError::OrientationMismatch);
    }
    let (na, nb, nc, nd) = to_zero_one_inf([src[0].coordinate(), src[1].coordinate(), src[2].coordinate()]);
    let (ma, mb, mc, md) = to_zero_one_inf([dst[0].coordinate(), dst[1].coordinate(), dst[2].coordinate()]);
    // M = N_dst⁻¹ · N_src, with the un-normalized adjugate inverse.
    let (ia, ib, ic, id) = (md, -mb, -mc, ma);
    MobiusMap::new(
        ia * na + ib * nc,
        ia * nb + ib * nd,
        ic * na + id * nc,
        ic * nb + id * nd,
    )
}

/// The hyperbolic translation along `axis` by signed length `length`.
///
/// The axis is read as oriented from its first stored endpoint to its
/// second; positive length translates toward the second endpoint. On the
/// normalized axis (0, ∞) this is `z ↦ e^t z`, the left translation as
/// seen from `{Re z < 0}`.
pub fn hyperbolic_translation(axis: &Geodesic, length: f64) -> MobiusMap {
    if length == 0.0 {
        return MobiusMap::IDENTITY;
    }
    let e = (length / 2.0).exp();
    let diag = MobiusMap { a: e, b: 0.0, c: 0.0, d: 1.0 / e };
    let p = axis.p.coordinate();
    let q = axis.q.coordinate();
    // S sends (p, q) ↦ (0, ∞); the translation is S⁻¹ · diag · S.
    let (sa, sb, sc, sd) = match (p, q) {
        (ExtReal::Finite(p), ExtReal::Finite(q)) => (1.0, -p, 1.0, -q),
        (ExtReal::Finite(p), ExtReal::Inf) => (1.0, -p, 0.0, 1.0),
        (ExtReal::Inf, ExtReal::Finite(q)) => (0.0, 1.0, 1.0, -q),
        (ExtReal::Inf, ExtReal::Inf) => unreachable!("degenerate axis"),
    };
    let s = MobiusMap { a: sa, b: sb, c: sc, d: sd };
    let s_inv = MobiusMap { a: sd, b: -sb, c: -sc, d: sa };
    // det(S⁻¹·D·S) = det(adj S · D · S) = det(S)² which cancels in new();
    // assemble raw then normalize.
    let t = {
        let u = MobiusMap {
            a: s_inv.a * diag.a,
            b: s_inv.b * diag.d,
            c: s_inv.c * diag.a,
            d: s_inv.d * diag.d,
        };
        MobiusMap::new(
            u.a * s.a + u.b * s.c,
            u.a * s.b + u.b * s.d,
            u.c * s.a + u.d * s.c,
            u.c * s.b + u.d * s.d,
        )
    };
    t.expect("translation matrix has positive determinant")
}

/// Classification of a Möbius map by translation length.
#[derive(Clone, Debug)]
pub struct TranslationData {
    /// Translation length (> 0 for hyperbolic elements, 0 otherwise).
    pub length: f64,
    /// Axis oriented from the repelling to the attracting fixed point;
    /// `None` for identity / parabolic / elliptic elements.
    pub axis: Option<Geodesic>,
}

/// Translation length and oriented axis of `m`.
///
/// Hyperbolic iff `tr² − 4 > EPS_TR²` (equivalently `2 sinh(ℓ/2) > EPS_TR`,
/// which resolves lengths well below the naive trace test); then the axis
/// runs from the repelling to the attracting fixed point. The length is
/// computed through `log1p` on `(|tr| − 2)/2 + √(tr² − 4)/2` to keep full
/// relative precision for short translations.
pub fn translation_length_axis(m: &MobiusMap) -> TranslationData {
    let tr = m.a + m.d;
    // tr² − 4 = (a − d)² + 4bc when det = 1; this form avoids the
    // catastrophic cancellation of tr² − 4 near |tr| = 2.
    let disc = (m.a - m.d) * (m.a - m.d) + 4.0 * m.b * m.c;
    if disc <= EPS_TR * EPS_TR {
        return TranslationData { length: 0.0, axis: None };
    }
    let sq = disc.sqrt();
    // λ_max = (|tr| + √disc)/2; ℓ = 2 log λ_max.
    let length = 2.0 * ((tr.abs() - 2.0) / 2.0 + sq / 2.0).ln_1p();
    // Fixed points solve c·x² + (d−a)·x − b = 0.
    let (fix1, fix2) = if m.c.abs() < 1e-300 {
        // One fixed point at ∞, the other at b/(a−d).
        (ExtReal::Inf, ExtReal::Finite(m.b / (m.a - m.d)))
    } else {
        // Larger-magnitude root first, the other through the product
        // x1·x2 = −b/c, avoiding subtractive cancellation.
        let e = m.a - m.d;
        let x1 = (e + e.signum() * sq) / (2.0 * m.c);
        let x2 = if x1 == 0.0 { -e / m.c } else { -m.b / (m.c * x1) };
        (ExtReal::Finite(x1), ExtReal::Finite(x2))
    };
    // The attracting fixed point has |M′| < 1.
    let deriv_at = |x: ExtReal| -> f64 {
        match x {
            ExtReal::Finite(x) => m.derivative(x).abs(),
            // At ∞ the multiplier is the reciprocal of the one at the
            // finite fixed point; c = 0 there, so compare a/d directly.
            ExtReal::Inf => (m.d / m.a) * (m.d / m.a),
        }
    };
    let (rep, att) = if deriv_at(fix1) < 1.0 { (fix2, fix1) } else { (fix1, fix2) };
    TranslationData {
        length,
        axis: Some(Geodesic::new_unchecked(
            BoundaryPoint::HalfPlane(rep),
            BoundaryPoint::HalfPlane(att),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::EPS_PT;

    fn bp(x: f64) -> BoundaryPoint {
        BoundaryPoint::half_plane(x)
    }

    #[test]
    fn identity_and_scaling() {
        let id = MobiusMap::IDENTITY;
        assert_eq!(id.apply_ext(ExtReal::Finite(0.0)), ExtReal::Finite(0.0));
        let e = (0.5f64).exp();
        let m = MobiusMap::new(e, 0.0, 0.0, 1.0 / e).unwrap();
        assert!((m.apply_ext(ExtReal::Finite(1.0)).finite().unwrap() - std::f64::consts::E).abs() < 1e-14);
    }

    #[test]
    fn infinity_is_exact() {
        let m = MobiusMap::new(2.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(m.apply_ext(ExtReal::Inf), ExtReal::Finite(2.0));
        assert_eq!(m.apply_ext(ExtReal::Finite(-1.0)), ExtReal::Inf);
        // Cayley: half-plane ∞ is the disk point 1 (angle 0).
        assert_eq!(BoundaryPoint::infinity().angle(), 0.0);
    }

    #[test]
    fn from_triples_identity_and_scaling() {
        let inf = BoundaryPoint::infinity();
        let m = mobius_from_triples([&bp(0.0), &bp(1.0), &inf], [&bp(0.0), &bp(1.0), &inf]).unwrap();
        assert!(m.is_identity(1e-14));

        let e = std::f64::consts::E;
        let m = mobius_from_triples([&bp(0.0), &bp(1.0), &inf], [&bp(0.0), &bp(e), &inf]).unwrap();
        let ex = (0.5f64).exp();
        assert!((m.a - ex).abs() < 1e-12 && (m.d - 1.0 / ex).abs() < 1e-12);
        assert!(m.b.abs() < 1e-12 && m.c.abs() < 1e-12);
    }

    #[test]
    fn from_triples_rejects_degenerate_and_flipped() {
        let inf = BoundaryPoint::infinity();
        assert!(matches!(
            mobius_from_triples([&bp(0.0), &bp(0.0), &inf], [&bp(0.0), &bp(1.0), &inf]),
            Err(GeometryError::DegenerateTriple)
        ));
        assert!(matches!(
            mobius_from_triples([&bp(0.0), &bp(1.0), &inf], [&bp(1.0), &bp(0.0), &inf]),
            Err(GeometryError::OrientationMismatch)
        ));
    }

    #[test]
    fn translation_normal_form() {
        let axis = Geodesic::new_unchecked(bp(0.0), BoundaryPoint::infinity());
        let m = hyperbolic_translation(&axis, 1.0);
        let e = (0.5f64).exp();
        assert!((m.a - e).abs() < 1e-14 && (m.d - 1.0 / e).abs() < 1e-14);
        assert!(hyperbolic_translation(&axis, 0.0).is_identity(0.0));
    }

    #[test]
    fn translation_round_trip() {
        let axis = Geodesic::new_unchecked(bp(-2.0), bp(3.0));
        for &len in &[1e-6, 0.013, 1.0, 7.5, 20.0] {
            let m = hyperbolic_translation(&axis, len);
            let data = translation_length_axis(&m);
            assert!((data.length - len).abs() / len < 1e-8, "length {len}");
            let rec = data.axis.unwrap();
            assert!(rec.p.dist(&axis.p) < 1e-8 && rec.q.dist(&axis.q) < 1e-8);
        }
    }

    #[test]
    fn translation_identity_classification() {
        let data = translation_length_axis(&MobiusMap::IDENTITY);
        assert_eq!(data.length, 0.0);
        assert!(data.axis.is_none());
    }

    #[test]
    fn conjugation_equivariance() {
        let inf = BoundaryPoint::infinity();
        let gamma = mobius_from_triples([&bp(0.0), &bp(1.0), &inf], [&bp(-3.0), &bp(0.5), &bp(2.0)]).unwrap();
        let axis = Geodesic::new_unchecked(bp(0.0), inf);
        let lhs = hyperbolic_translation(&gamma.apply_geodesic(&axis), 1.0);
        let rhs = gamma.compose(&hyperbolic_translation(&axis, 1.0)).compose(&gamma.inverse());
        for (x, y) in lhs.entries().iter().zip(rhs.entries()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn group_action_on_points() {
        let m1 = MobiusMap::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let m2 = MobiusMap::new(1.0, -3.0, 0.5, 1.0).unwrap();
        let p = bp(0.75);
        let once = m1.compose(&m2).apply(&p);
        let twice = m1.apply(&m2.apply(&p));
        assert!(once.dist(&twice) < EPS_PT * 10.0);
    }
}
