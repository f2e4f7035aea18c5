//! Boundary vector fields: evaluable in both charts, with the quadratic
//! growth coefficient needed for box expressions with a corner at ∞.
//!
//! Conventions: in the half-plane chart a field is the real value `V(x)`;
//! in the disk chart it is the real coefficient `u(θ) = V(e^{iθ})/(ie^{iθ})`.
//! The two are linked by `u(θ) = 2·V_H(x)/(1 + x²)` with `x = −cot(θ/2)`.

use crate::geodesic::Geodesic;

pub trait CircleVectorField: Sync {
    /// Real tangent coefficient in the disk chart (finite everywhere,
    /// including the wrap point θ = 0 standing for x = ∞).
    fn disk_coeff(&self, theta: f64) -> f64;

    /// Value in the half-plane chart at a finite boundary coordinate.
    fn half_plane_value(&self, x: f64) -> f64;

    /// `κ = lim_{x→∞} V_H(x)/x²`, read off the disk coefficient at the
    /// wrap point.
    fn quadratic_coeff(&self) -> f64 {
        0.5 * self.disk_coeff(0.0)
    }

    /// Candidate box centers a supremum search should seed from (support
    /// features of the field). The default covers fields with no special
    /// structure by a deterministic angle grid.
    fn suggested_centers(&self) -> Vec<Geodesic> {
        let n = 16usize;
        let mut out = Vec::with_capacity(n * 2);
        for i in 0..n {
            let t1 = (i as f64) * std::f64::consts::TAU / (n as f64);
            for &gap in &[std::f64::consts::FRAC_PI_2, std::f64::consts::PI] {
                out.push(Geodesic::new_unchecked(
                    crate::boundary::BoundaryPoint::disk(t1),
                    crate::boundary::BoundaryPoint::disk(t1 + gap),
                ));
            }
        }
        out
    }
}

/// Polynomial field of degree ≤ 2 in the half-plane coordinate
/// (the cross-ratio and Zygmund kernels: 1, x, x²).
#[derive(Clone, Debug)]
pub struct PolyField {
    /// `c[0] + c[1]·x + c[2]·x²`
    pub coeffs: [f64; 3],
}

impl PolyField {
    pub fn constant() -> Self {
        PolyField { coeffs: [1.0, 0.0, 0.0] }
    }
    pub fn linear() -> Self {
        PolyField { coeffs: [0.0, 1.0, 0.0] }
    }
    pub fn square() -> Self {
        PolyField { coeffs: [0.0, 0.0, 1.0] }
    }
}

impl CircleVectorField for PolyField {
    fn disk_coeff(&self, theta: f64) -> f64 {
        // u = 2 sin²(h)·V(−cot h) with h = θ/2, expanded exactly:
        // 2[c0 sin²h − c1 sin h cos h + c2 cos²h].
        let h = theta / 2.0;
        let (s, c) = h.sin_cos();
        2.0 * (self.coeffs[0] * s * s - self.coeffs[1] * s * c + self.coeffs[2] * c * c)
    }

    fn half_plane_value(&self, x: f64) -> f64 {
        self.coeffs[0] + self.coeffs[1] * x + self.coeffs[2] * x * x
    }

    fn quadratic_coeff(&self) -> f64 {
        self.coeffs[2]
    }
}

/// A field given by a piecewise-linear disk coefficient `u(θ)` over corner
/// angles; the slope jumps are the Zygmund content.
#[derive(Clone, Debug)]
pub struct PiecewiseAngleField {
    /// Corner angles in increasing order within [0, 2π), with values; the
    /// coefficient interpolates linearly (cyclically).
    pub corners: Vec<(f64, f64)>,
}

impl CircleVectorField for PiecewiseAngleField {
    fn disk_coeff(&self, theta: f64) -> f64 {
        let t = crate::boundary::wrap_angle(theta);
        let n = self.corners.len();
        debug_assert!(n >= 2);
        for k in 0..n {
            let (t0, v0) = self.corners[k];
            let (t1raw, v1) = self.corners[(k + 1) % n];
            let t1 = if k + 1 == n { t1raw + std::f64::consts::TAU } else { t1raw };
            let tt = if t < t0 { t + std::f64::consts::TAU } else { t };
            if tt >= t0 && tt <= t1 {
                let s = if t1 > t0 { (tt - t0) / (t1 - t0) } else { 0.0 };
                return v0 + s * (v1 - v0);
            }
        }
        self.corners[0].1
    }

    fn half_plane_value(&self, x: f64) -> f64 {
        let theta = crate::boundary::BoundaryPoint::half_plane(x).angle();
        self.disk_coeff(theta) * (1.0 + x * x) / 2.0
    }

    fn suggested_centers(&self) -> Vec<Geodesic> {
        let mut out = Vec::new();
        for (t, _) in &self.corners {
            out.push(Geodesic::new_unchecked(
                crate::boundary::BoundaryPoint::disk(*t),
                crate::boundary::BoundaryPoint::disk(*t + std::f64::consts::FRAC_PI_2),
            ));
        }
        out
    }
}
