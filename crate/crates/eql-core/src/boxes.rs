//! Boxes of geodesics: products of two disjoint boundary arcs, their
//! cross-ratio / Liouville measure, the reference boxes, normalizing maps,
//! centers, and the one-parameter family of log-2 boxes with a given center.

use crate::boundary::{ccw_offset, BoundaryPoint, ExtReal, EPS_PT};
use crate::error::BoxError;
use crate::geodesic::Geodesic;
use crate::mobius::{mobius_from_triples, MobiusMap};
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI, TAU};
use std::sync::OnceLock;

/// `ω₀ = (1+√2)² = 3 + 2√2`: `e^D` for the distance D between the side
/// geodesics of any log-2 box.
pub const OMEGA_0: f64 = 3.0 + 2.0 * std::f64::consts::SQRT_2;

/// Tolerance on `|L(Q) − log 2|` for box normalization.
pub const TOL_LOG2: f64 = 1e-8;

/// How a box side is to be read as a subset of the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SideKind {
    /// Closed arc `[lo, hi]`.
    Closed,
    /// Half-open `(lo, hi]`.
    OpenLo,
    /// Half-open `[lo, hi)`.
    OpenHi,
    /// Open `(lo, hi)`.
    Open,
    /// A single point (`lo == hi`).
    Point,
}

impl SideKind {
    fn includes_lo(self) -> bool {
        matches!(self, SideKind::Closed | SideKind::OpenHi | SideKind::Point)
    }
    fn includes_hi(self) -> bool {
        matches!(self, SideKind::Closed | SideKind::OpenLo | SideKind::Point)
    }
}

/// A circular arc from `lo` counterclockwise to `hi` (disk angles).
#[derive(Clone, Copy, Debug)]
pub struct CircleArc {
    pub lo: f64,
    pub hi: f64,
    pub kind: SideKind,
}

impl CircleArc {
    pub fn len(&self) -> f64 {
        if self.kind == SideKind::Point {
            0.0
        } else {
            ccw_offset(self.lo, self.hi)
        }
    }

    pub fn contains_angle(&self, theta: f64) -> bool {
        let off = ccw_offset(self.lo, theta);
        if self.kind == SideKind::Point {
            return off == 0.0;
        }
        let len = self.len();
        if off == 0.0 {
            return self.kind.includes_lo();
        }
        if off == len {
            return self.kind.includes_hi();
        }
        off < len
    }

    /// Nonempty intersection with another arc, honoring open ends.
    pub fn overlaps(&self, other: &CircleArc) -> bool {
        if self.kind == SideKind::Point {
            return other.contains_angle(self.lo);
        }
        if other.kind == SideKind::Point {
            return self.contains_angle(other.lo);
        }
        // Work in offsets from self.lo; other may wrap around 2π.
        let la = self.len();
        let s = ccw_offset(self.lo, other.lo);
        let lb = other.len();
        let mut pieces: Vec<(f64, f64, bool, bool)> = Vec::with_capacity(2);
        if s + lb <= TAU {
            pieces.push((s, s + lb, other.kind.includes_lo(), other.kind.includes_hi()));
        } else {
            pieces.push((s, TAU, other.kind.includes_lo(), true));
            pieces.push((0.0, s + lb - TAU, true, other.kind.includes_hi()));
        }
        for (blo, bhi, inc_lo, inc_hi) in pieces {
            let x = blo.max(0.0);
            let y = bhi.min(la);
            if y > x {
                return true;
            }
            if y == x {
                // Single touching point: must be included by both arcs.
                let self_inc = if x == 0.0 {
                    self.kind.includes_lo()
                } else if x == la {
                    self.kind.includes_hi()
                } else {
                    true
                };
                let other_inc = if x == blo { inc_lo } else if x == bhi { inc_hi } else { true };
                if self_inc && other_inc {
                    return true;
                }
            }
        }
        false
    }

    /// `self ⊆ other`, honoring open ends.
    pub fn contained_in(&self, other: &CircleArc) -> bool {
        if self.kind == SideKind::Point {
            return other.contains_angle(self.lo);
        }
        if other.kind == SideKind::Point {
            return false;
        }
        let s = ccw_offset(other.lo, self.lo);
        if s + self.len() > other.len() {
            return false;
        }
        if s == 0.0 && self.kind.includes_lo() && !other.kind.includes_lo() {
            return false;
        }
        if s + self.len() == other.len() && self.kind.includes_hi() && !other.kind.includes_hi() {
            return false;
        }
        true
    }
}

/// A box of geodesics `Q = [a,b] × [c,d]`: the set of geodesics with one
/// endpoint in each of the two disjoint arcs. Corners are stored in the
/// chart they were given in; `(a, b, c, d)` is counterclockwise.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GeodesicBox {
    pub a: BoundaryPoint,
    pub b: BoundaryPoint,
    pub c: BoundaryPoint,
    pub d: BoundaryPoint,
    pub flags: [SideKind; 2],
}

impl GeodesicBox {
    pub fn new(
        a: BoundaryPoint,
        b: BoundaryPoint,
        c: BoundaryPoint,
        d: BoundaryPoint,
        flags: [SideKind; 2],
    ) -> Result<Self, BoxError> {
        let q = GeodesicBox { a, b, c, d, flags };
        let (ob, oc, od) = q.offsets();
        let side1_point = flags[0] == SideKind::Point;
        let side2_point = flags[1] == SideKind::Point;
        if (ob == 0.0) != side1_point || ((od - oc) == 0.0) != side2_point {
            return Err(BoxError::CornersNotCcw);
        }
        if !(ob <= oc && oc <= od && oc > ob && od > 0.0) {
            return Err(BoxError::CornersNotCcw);
        }
        Ok(q)
    }

    /// Closed box from four counterclockwise corners.
    pub fn closed(
        a: BoundaryPoint,
        b: BoundaryPoint,
        c: BoundaryPoint,
        d: BoundaryPoint,
    ) -> Result<Self, BoxError> {
        GeodesicBox::new(a, b, c, d, [SideKind::Closed, SideKind::Closed])
    }

    /// Closed box from half-plane coordinates (use `f64::INFINITY` for ∞).
    pub fn closed_h(a: f64, b: f64, c: f64, d: f64) -> Result<Self, BoxError> {
        let bp = |x: f64| {
            if x.is_infinite() {
                BoundaryPoint::infinity()
            } else {
                BoundaryPoint::half_plane(x)
            }
        };
        GeodesicBox::closed(bp(a), bp(b), bp(c), bp(d))
    }

    fn offsets(&self) -> (f64, f64, f64) {
        let ta = self.a.angle();
        (
            ccw_offset(ta, self.b.angle()),
            ccw_offset(ta, self.c.angle()),
            ccw_offset(ta, self.d.angle()),
        )
    }

    pub fn arc1(&self) -> CircleArc {
        CircleArc { lo: self.a.angle(), hi: self.b.angle(), kind: self.flags[0] }
    }

    pub fn arc2(&self) -> CircleArc {
        CircleArc { lo: self.c.angle(), hi: self.d.angle(), kind: self.flags[1] }
    }

    pub fn is_degenerate(&self) -> bool {
        self.flags.contains(&SideKind::Point)
    }

    pub fn contains_geodesic(&self, g: &Geodesic) -> bool {
        let (a1, a2) = (self.arc1(), self.arc2());
        let (tp, tq) = (g.p.angle(), g.q.angle());
        (a1.contains_angle(tp) && a2.contains_angle(tq))
            || (a1.contains_angle(tq) && a2.contains_angle(tp))
    }

    /// Nonempty intersection as sets of geodesics.
    pub fn intersects(&self, other: &GeodesicBox) -> bool {
        let (a1, a2) = (self.arc1(), self.arc2());
        let (b1, b2) = (other.arc1(), other.arc2());
        (a1.overlaps(&b1) && a2.overlaps(&b2)) || (a1.overlaps(&b2) && a2.overlaps(&b1))
    }

    /// Set containment `self ⊆ other`.
    pub fn contained_in(&self, other: &GeodesicBox) -> bool {
        let (a1, a2) = (self.arc1(), self.arc2());
        let (b1, b2) = (other.arc1(), other.arc2());
        (a1.contained_in(&b1) && a2.contained_in(&b2))
            || (a1.contained_in(&b2) && a2.contained_in(&b1))
    }

    /// Image box under a Möbius map (counterclockwise order is preserved).
    pub fn apply(&self, m: &MobiusMap) -> GeodesicBox {
        GeodesicBox {
            a: m.apply(&self.a),
            b: m.apply(&self.b),
            c: m.apply(&self.c),
            d: m.apply(&self.d),
            flags: self.flags,
        }
    }

    /// Liouville measure `|log |cr(a,b,c,d)||`; errors on point-degenerate
    /// sides (their measure is 0 by convention, reported distinctly).
    pub fn liouville(&self) -> Result<f64, BoxError> {
        if self.is_degenerate() {
            return Err(BoxError::DegenerateBox);
        }
        Ok(self.liouville_or_zero())
    }

    /// Liouville measure, with 0 for point-degenerate boxes.
    pub fn liouville_or_zero(&self) -> f64 {
        if self.is_degenerate() {
            return 0.0;
        }
        let cr = cross_ratio_coords(
            self.a.coordinate(),
            self.b.coordinate(),
            self.c.coordinate(),
            self.d.coordinate(),
        );
        cr.abs().ln().abs()
    }

    /// The geodesics spanned corner-to-corner: `(a,d)` and `(b,c)`.
    pub fn extreme_geodesics(&self) -> (Geodesic, Geodesic) {
        (
            Geodesic::new_unchecked(self.a, self.d),
            Geodesic::new_unchecked(self.b, self.c),
        )
    }

    /// Grow both arcs by the same angular padding until the Liouville
    /// measure reaches log 2. `None` when the box already exceeds log 2.
    pub fn inflate_to_log2(&self) -> Option<GeodesicBox> {
        let l0 = self.liouville_or_zero();
        if l0 > LN_2 + 1e-12 {
            return None;
        }
        if (l0 - LN_2).abs() <= 1e-12 {
            return Some(*self);
        }
        let (ta, tb, tc, td) = (
            self.a.angle(),
            self.b.angle(),
            self.c.angle(),
            self.d.angle(),
        );
        let gap1 = ccw_offset(tb, tc);
        let gap2 = ccw_offset(td, ta);
        let max_pad = 0.499 * gap1.min(gap2);
        if max_pad <= 0.0 {
            return None;
        }
        let padded = |pad: f64| {
            GeodesicBox {
                a: BoundaryPoint::disk(ta - pad),
                b: BoundaryPoint::disk(tb + pad),
                c: BoundaryPoint::disk(tc - pad),
                d: BoundaryPoint::disk(td + pad),
                flags: [SideKind::Closed, SideKind::Closed],
            }
        };
        if padded(max_pad).liouville_or_zero() < LN_2 {
            return None;
        }
        let (mut lo, mut hi) = (0.0, max_pad);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if padded(mid).liouville_or_zero() < LN_2 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(padded(0.5 * (lo + hi)))
    }
}

/// Real cross ratio `(a−c)(b−d)/((a−d)(b−c))` on half-plane coordinates,
/// with at most one slot at ∞ handled as the exact limit.
pub fn cross_ratio_coords(a: ExtReal, b: ExtReal, c: ExtReal, d: ExtReal) -> f64 {
    use ExtReal::*;
    match (a, b, c, d) {
        (Inf, Finite(b), Finite(c), Finite(d)) => (b - d) / (b - c),
        (Finite(a), Inf, Finite(c), Finite(d)) => (a - c) / (a - d),
        (Finite(a), Finite(b), Inf, Finite(d)) => (b - d) / (a - d),
        (Finite(a), Finite(b), Finite(c), Inf) => (a - c) / (b - c),
        (Finite(a), Finite(b), Finite(c), Finite(d)) => ((a - c) * (b - d)) / ((a - d) * (b - c)),
        _ => f64::NAN,
    }
}

/// Cross ratio of four distinct boundary points.
pub fn cross_ratio(
    a: &BoundaryPoint,
    b: &BoundaryPoint,
    c: &BoundaryPoint,
    d: &BoundaryPoint,
) -> Result<f64, BoxError> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i].dist(pts[j]) <= EPS_PT {
                return Err(BoxError::DegenerateQuadruple);
            }
        }
    }
    Ok(cross_ratio_coords(
        a.coordinate(),
        b.coordinate(),
        c.coordinate(),
        d.coordinate(),
    ))
}

/// The reference box `Q* = [−i, 1] × [i, −1]` (disk corners at angles
/// 3π/2, 0, π/2, π).
pub fn q_star() -> GeodesicBox {
    GeodesicBox::closed(
        BoundaryPoint::disk(1.5 * PI),
        BoundaryPoint::disk(0.0),
        BoundaryPoint::disk(0.5 * PI),
        BoundaryPoint::disk(PI),
    )
    .expect("Q* is a valid box")
}

/// The small reference box `Q*₀ = [ω₁¹³, ω₁¹⁵] × [ω₁⁵, ω₁⁷]`, `ω₁ = e^{iπ/8}`.
pub fn q_star_0() -> GeodesicBox {
    let w = PI / 8.0;
    GeodesicBox::closed(
        BoundaryPoint::disk(13.0 * w),
        BoundaryPoint::disk(15.0 * w),
        BoundaryPoint::disk(5.0 * w),
        BoundaryPoint::disk(7.0 * w),
    )
    .expect("Q*₀ is a valid box")
}

/// The center geodesic of `Q*`: endpoints `e^{−iπ/4}` and `e^{3iπ/4}`.
pub fn center_of_q_star() -> Geodesic {
    Geodesic::new_unchecked(
        BoundaryPoint::disk(7.0 * PI / 4.0),
        BoundaryPoint::disk(3.0 * PI / 4.0),
    )
}

/// The unique Möbius map carrying `Q*` onto `Q` as ordered corner
/// quadruples. Requires `|L(Q) − log 2| ≤ TOL_LOG2`.
pub fn box_normalizer(q: &GeodesicBox) -> Result<MobiusMap, BoxError> {
    let l = q.liouville()?;
    if (l - LN_2).abs() > TOL_LOG2 {
        return Err(BoxError::NotLogTwoBox { found: l, tol: TOL_LOG2 });
    }
    let qs = q_star();
    mobius_from_triples([&qs.a, &qs.b, &qs.c], [&q.a, &q.b, &q.c])
        .map_err(|_| BoxError::DegenerateQuadruple)
}

/// The center of a log-2 box: the image of the center of `Q*` under the
/// box normalizer.
pub fn box_center(q: &GeodesicBox) -> Result<Geodesic, BoxError> {
    let m = box_normalizer(q)?;
    Ok(m.apply_geodesic(&center_of_q_star()))
}

/// The symmetric log-2 box `[−a, a] × [ω₀ a, −ω₀ a]` in the half-plane;
/// its center is the geodesic (0, ∞) for every `a > 0`.
pub fn symmetric_log2_box(a: f64) -> GeodesicBox {
    debug_assert!(a > 0.0);
    GeodesicBox::closed_h(-a, a, OMEGA_0 * a, -OMEGA_0 * a).expect("symmetric box is valid")
}

/// The log-2 boxes with a given center, swept by `s ∈ (0, 1)`.
///
/// `s = 1/2` gives the symmetric shape; the family covers all log-2 boxes
/// with this center up to the residual one-parameter freedom, which `s`
/// parametrizes through the scale `a = s/(1−s)`.
pub fn log2_box_family(center: &Geodesic, s: f64) -> GeodesicBox {
    assert!(s > 0.0 && s < 1.0, "family parameter must lie in (0, 1)");
    let a = s / (1.0 - s);
    log2_box_at_scale(center, a)
}

/// Same family indexed directly by the scale `a ∈ (0, ∞)`.
pub fn log2_box_at_scale(center: &Geodesic, a: f64) -> GeodesicBox {
    symmetric_log2_box(a).apply(&center_frame(center))
}

/// The Möbius map carrying the normalized frame onto the given center:
/// `(0, ∞) ↦ (p, q)` with the endpoints in canonical angle order. The
/// log-2 family with this center is the image of the symmetric family.
pub fn center_frame(center: &Geodesic) -> MobiusMap {
    // Deterministic endpoint order: smaller disk angle first.
    let (p, q) = {
        let (tp, tq) = (center.p.angle(), center.q.angle());
        if tp <= tq {
            (center.p, center.q)
        } else {
            (center.q, center.p)
        }
    };
    match (p.coordinate(), q.coordinate()) {
        (ExtReal::Finite(pv), ExtReal::Finite(qv)) => {
            if qv > pv {
                MobiusMap::new(qv, pv, 1.0, 1.0)
            } else {
                MobiusMap::new(qv, -pv, 1.0, -1.0)
            }
        }
        (ExtReal::Finite(pv), ExtReal::Inf) => MobiusMap::new(1.0, pv, 0.0, 1.0),
        (ExtReal::Inf, ExtReal::Finite(qv)) => MobiusMap::new(qv, -1.0, 1.0, 0.0),
        _ => unreachable!("degenerate center"),
    }
    .expect("normalizing map is orientation-preserving")
}

/// A finite family of Möbius maps whose images of `Q*₀` cover `Q*`,
/// verified on a grid at construction. Used to transport the special test
/// function when converting box masses into test-function pairings.
pub fn q_star_covering() -> &'static Vec<MobiusMap> {
    static COVER: OnceLock<Vec<MobiusMap>> = OnceLock::new();
    COVER.get_or_init(|| {
        // Split Q* into cells and anchor one map per cell and per side:
        // γ sends the x-arc of Q*₀ exactly onto a slightly padded cell
        // column and pins one anchor point of the other arc, so γ(Q*₀)
        // contains the cell with room to spare. Verified below.
        let w = PI / 8.0;
        let cells = 4usize;
        let h = (PI / 2.0) / cells as f64;
        let pad = 0.75 * h;
        let mut maps = Vec::new();
        for i in 0..cells {
            for j in 0..cells {
                let u = 1.5 * PI + (i as f64 + 0.5) * h;
                let v = 0.5 * PI + (j as f64 + 0.5) * h;
                let src_x = (BoundaryPoint::disk(13.0 * w), BoundaryPoint::disk(15.0 * w));
                let dst_x = (BoundaryPoint::disk(u - pad), BoundaryPoint::disk(u + pad));
                for anchor in [
                    (BoundaryPoint::disk(6.0 * w), BoundaryPoint::disk(v)),
                    (BoundaryPoint::disk(5.0 * w), BoundaryPoint::disk(v - pad)),
                    (BoundaryPoint::disk(7.0 * w), BoundaryPoint::disk(v + pad)),
                ] {
                    if let Ok(m) = crate::mobius::mobius_from_triples(
                        [&src_x.0, &src_x.1, &anchor.0],
                        [&dst_x.0, &dst_x.1, &anchor.1],
                    ) {
                        maps.push(m);
                    }
                }
            }
        }
        let q0 = q_star_0();
        // Verify: a grid of geodesics inside Q* must be covered.
        let n = 48;
        for i in 0..=n {
            for j in 0..=n {
                let u = 1.5 * PI + (i as f64) * (PI / 2.0) / (n as f64);
                let v = 0.5 * PI + (j as f64) * (PI / 2.0) / (n as f64);
                let g = Geodesic::new_unchecked(BoundaryPoint::disk(u), BoundaryPoint::disk(v));
                let covered = maps
                    .iter()
                    .any(|m| q0.contains_geodesic(&m.inverse().apply_geodesic(&g)));
                assert!(covered, "covering gap at ({u}, {v})");
            }
        }
        maps
    })
}

/// Rotation of the disk by angle `beta`, as a half-plane matrix.
pub fn disk_rotation(beta: f64) -> MobiusMap {
    let t = beta / 2.0;
    MobiusMap::new(t.cos(), t.sin(), -t.sin(), t.cos()).expect("rotation is in SL(2)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundaryPoint as BP;

    #[test]
    fn cross_ratio_limit_and_disk() {
        // (∞, −e, 0, e) → 2: the §-normalized elementary box at n = 1.
        let e = std::f64::consts::E;
        let cr = cross_ratio(
            &BP::infinity(),
            &BP::half_plane(-e),
            &BP::half_plane(0.0),
            &BP::half_plane(e),
        )
        .unwrap();
        assert!((cr - 2.0).abs() < 1e-14);

        // Disk corners (−i, 1, i, −1) → 2.
        let cr = cross_ratio(
            &BP::disk(1.5 * PI),
            &BP::disk(0.0),
            &BP::disk(0.5 * PI),
            &BP::disk(PI),
        )
        .unwrap();
        assert!((cr - 2.0).abs() < 1e-12);

        // Exact rational check: cr(0,1,2,3) = ((0−2)(1−3))/((0−3)(1−2)) = 4/3.
        let cr = cross_ratio(
            &BP::half_plane(0.0),
            &BP::half_plane(1.0),
            &BP::half_plane(2.0),
            &BP::half_plane(3.0),
        )
        .unwrap();
        assert!((cr - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn cross_ratio_rejects_coincident_points() {
        assert!(matches!(
            cross_ratio(
                &BP::half_plane(0.0),
                &BP::half_plane(0.0),
                &BP::half_plane(1.0),
                &BP::half_plane(2.0),
            ),
            Err(BoxError::DegenerateQuadruple)
        ));
    }

    #[test]
    fn liouville_reference_values() {
        assert!((q_star().liouville().unwrap() - LN_2).abs() < 1e-12);
        let expected = (4.0 / (std::f64::consts::SQRT_2 + 2.0)).ln().abs();
        assert!((q_star_0().liouville().unwrap() - expected).abs() < 1e-12);

        // [−1,1] × [3+2√2, −(3+2√2)] has measure log 2.
        let q = GeodesicBox::closed_h(-1.0, 1.0, OMEGA_0, -OMEGA_0).unwrap();
        assert!((q.liouville().unwrap() - LN_2).abs() < 1e-12);

        // [−1,1] × [e^D, −e^D] has measure −2 log tanh(D/2).
        for &d in &[0.1f64, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let q = GeodesicBox::closed_h(-1.0, 1.0, d.exp(), -d.exp()).unwrap();
            let want = -2.0 * ((d / 2.0) as f64).tanh().ln();
            assert!((q.liouville().unwrap() - want).abs() < 1e-10, "D = {d}");
        }
    }

    #[test]
    fn normalizer_of_q_star_is_identity() {
        let m = box_normalizer(&q_star()).unwrap();
        assert!(m.is_identity(1e-9));
        let c = box_center(&q_star()).unwrap();
        assert!(c.approx_eq(&center_of_q_star(), 1e-9));
    }

    #[test]
    fn normalizer_rejects_off_measure_boxes() {
        let q = GeodesicBox::closed_h(-1.0, 1.0, 4.0, -4.0).unwrap();
        assert!(matches!(box_normalizer(&q), Err(BoxError::NotLogTwoBox { .. })));
    }

    #[test]
    fn symmetric_family_center_and_measure() {
        let ell_inf = Geodesic::to_infinity(0.0);
        for &s in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            let q = log2_box_family(&ell_inf, s);
            assert!((q.liouville().unwrap() - LN_2).abs() < 1e-10, "s = {s}");
            let c = box_center(&q).unwrap();
            assert!(c.approx_eq(&ell_inf, 1e-8), "s = {s}");
        }
    }

    #[test]
    fn family_with_generic_center() {
        let center = Geodesic::half_plane(-2.0, 0.7);
        for &s in &[0.25, 0.5, 0.75] {
            let q = log2_box_family(&center, s);
            assert!((q.liouville().unwrap() - LN_2).abs() < 1e-10);
            let c = box_center(&q).unwrap();
            assert!(c.approx_eq(&center, 1e-8));
        }
    }

    #[test]
    fn box_membership_and_pairing() {
        let q = symmetric_log2_box(1.0);
        assert!(q.contains_geodesic(&Geodesic::to_infinity(0.0)));
        assert!(q.contains_geodesic(&Geodesic::half_plane(OMEGA_0 + 1.0, 0.5)));
        assert!(!q.contains_geodesic(&Geodesic::half_plane(0.1, 2.0)));
    }

    #[test]
    fn half_open_membership() {
        let a = BP::disk(0.2);
        let b = BP::disk(0.8);
        let c = BP::disk(2.0);
        let d = BP::disk(2.6);
        let closed = GeodesicBox::closed(a, b, c, d).unwrap();
        let half = GeodesicBox::new(a, b, c, d, [SideKind::OpenHi, SideKind::Closed]).unwrap();
        let edge = Geodesic::new_unchecked(b, c);
        assert!(closed.contains_geodesic(&edge));
        assert!(!half.contains_geodesic(&edge));
    }

    #[test]
    fn inflate_reaches_log2() {
        let small = GeodesicBox::closed_h(-0.1, 0.1, 10.0, -10.0).unwrap();
        assert!(small.liouville().unwrap() < LN_2);
        let inflated = small.inflate_to_log2().unwrap();
        assert!((inflated.liouville().unwrap() - LN_2).abs() < 1e-9);
        assert!(small.contained_in(&inflated));
    }

    #[test]
    fn covering_exists() {
        let maps = q_star_covering();
        assert!(!maps.is_empty());
    }

    #[test]
    fn log2_characterization_diag_distance() {
        // L(Q) = log 2 iff dist((a,b),(c,d)) equals dist((a,d),(b,c)).
        use crate::geodesic::hyperbolic_distance;
        for &s in &[0.2, 0.5, 0.8] {
            let q = log2_box_family(&Geodesic::half_plane(-1.0, 1.0), s);
            let side1 = Geodesic::new_unchecked(q.a, q.b);
            let side2 = Geodesic::new_unchecked(q.c, q.d);
            let (diag1, diag2) = q.extreme_geodesics();
            let d_sides = hyperbolic_distance(&side1, &side2).unwrap();
            let d_diags = hyperbolic_distance(&diag1, &diag2).unwrap();
            assert!((d_sides - d_diags).abs() < 1e-8);
            assert!((d_sides.exp() - OMEGA_0).abs() < 1e-6);
        }
    }
}
