//! Test functions on the space of geodesics: built-in profiles on the
//! reference box, transported to arbitrary log-2 boxes through the box
//! normalizer, with certified Hölder normalization.

use crate::boundary::BoundaryPoint;
use crate::boxes::{box_normalizer, center_of_q_star, q_star, GeodesicBox};
use crate::error::{BoxError, NormError};
use crate::geodesic::{metric_geodesics, Geodesic};
use crate::mobius::MobiusMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Trapezoid ramp margin: the gap between the reference box and its inner
/// plateau box is π/8 per side.
const MARGIN: f64 = PI / 8.0;

/// Exact Lipschitz constant of the product-trapezoid profile with respect
/// to the max-pairing metric on geodesics: 2/margin = 16/π.
pub fn phi0_lipschitz() -> f64 {
    2.0 / MARGIN
}

/// `‖φ₀‖₁ = max(sup |φ₀|, Lip φ₀) = 16/π` for the built-in profile.
pub fn phi0_holder_one_norm() -> f64 {
    phi0_lipschitz().max(1.0)
}

/// Built-in profiles on the reference box `Q*`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile {
    /// Product of trapezoids: ≡ 1 on the inner reference box, supported in
    /// `Q*`, values in [0, 1], Lipschitz constant exactly 16/π.
    Trapezoid,
    /// `max(0, (π/4)^ν − d(g, center)^ν)`: ν-Hölder quotient ≤ 1 and the
    /// largest possible center value among ν-test functions of this shape.
    Cone { nu: f64 },
    /// Lipschitz cone of slope 1/2 (a gentler fixed profile for weak*
    /// pairings).
    HalfSlopeCone,
    /// Smoothstep bump of the center distance; C¹ with quadratic decay at
    /// the peak.
    SmoothBump,
}

fn trapezoid(pos: f64, len: f64) -> f64 {
    (pos / MARGIN).min((len - pos) / MARGIN).clamp(0.0, 1.0)

}

impl Profile {
    /// Evaluate on `Q*` coordinates; zero outside the reference box.
    pub fn eval_reference(&self, g: &Geodesic) -> f64 {
        match self {
            Profile::Trapezoid => {
                let qs = q_star();
                if !qs.contains_geodesic(g) {
                    return 0.0;
                }
                let (a1, a2) = (qs.arc1(), qs.arc2());
                let (tp, tq) = (g.p.angle(), g.q.angle());
                let (x, y) = if a1.contains_angle(tp) { (tp, tq) } else { (tq, tp) };
                let p1 = crate::boundary::ccw_offset(a1.lo, x);
                let p2 = crate::boundary::ccw_offset(a2.lo, y);
                trapezoid(p1, FRAC_PI_2) * trapezoid(p2, FRAC_PI_2)
            }
            Profile::Cone { nu } => {
                let d = metric_geodesics(g, &center_of_q_star());
                (FRAC_PI_4.powf(*nu) - d.powf(*nu)).max(0.0)
            }
            Profile::HalfSlopeCone => {
                let d = metric_geodesics(g, &center_of_q_star());
                (0.5 * (FRAC_PI_4 - d)).max(0.0)
            }
            Profile::SmoothBump => {
                let d = metric_geodesics(g, &center_of_q_star());
                let u = (1.0 - d / FRAC_PI_4).clamp(0.0, 1.0);
                u * u * (3.0 - 2.0 * u)
            }
        }
    }

    /// Value at the reference center.
    pub fn center_value(&self) -> f64 {
        self.eval_reference(&center_of_q_star())
    }

    /// Scale making the transported function a valid ν-test function
    /// (`‖φ∘γ_Q‖_ν ≤ 1`).
    pub fn test_scale(&self, nu: f64) -> f64 {
        match self {
            // Eq-style normalization through the Lipschitz bound:
            // ‖φ₀‖_ν ≤ (π/2)^{1−ν}·‖φ₀‖₁.
            Profile::Trapezoid => 1.0 / (FRAC_PI_2.powf(1.0 - nu) * phi0_holder_one_norm()),
            // The ν-cone already has quotient ≤ 1 and sup < 1.
            Profile::Cone { .. } => 1.0,
            // Slope 1/2 and sup < 1: Lipschitz norm ≤ 1, so the Hölder
            // comparison gives the same (π/2)^{1−ν} safety factor.
            Profile::HalfSlopeCone => 1.0 / FRAC_PI_2.powf(1.0 - nu),
            // Smoothstep slope peaks at 3/2 over the radius π/4: Lipschitz
            // constant 6/π.
            Profile::SmoothBump => {
                let lip: f64 = 1.5 / FRAC_PI_4;
                1.0 / (FRAC_PI_2.powf(1.0 - nu) * lip.max(1.0))
            }
        }
    }
}

/// A ν-test function: a profile on `Q*` transported onto a log-2 box `Q`
/// through the box normalizer, with the ν-normalizing scale applied.
#[derive(Clone, Debug)]
pub struct TestFunction {
    pub profile: Profile,
    pub nu: f64,
    pub q: GeodesicBox,
    normalizer_inv: MobiusMap,
    pub scale: f64,
}

impl TestFunction {
    pub fn new(profile: Profile, nu: f64, q: GeodesicBox) -> Result<Self, BoxError> {
        let gamma = box_normalizer(&q)?;
        Ok(TestFunction {
            profile,
            nu,
            q,
            normalizer_inv: gamma.inverse(),
            scale: profile.test_scale(nu),
        })
    }

    /// For fixed-profile pairings (uniform-weak* distances): no ν scale.
    pub fn unscaled(profile: Profile, q: GeodesicBox) -> Result<Self, BoxError> {
        let gamma = box_normalizer(&q)?;
        Ok(TestFunction { profile, nu: 1.0, q, normalizer_inv: gamma.inverse(), scale: 1.0 })
    }

    pub fn eval(&self, g: &Geodesic) -> f64 {
        let pulled = self.normalizer_inv.apply_geodesic(g);
        self.scale * self.profile.eval_reference(&pulled)
    }

    /// Audit the ν-Hölder quotient of the transported profile on a
    /// deterministic pair grid; the estimate must stay ≤ 1 + tolerance.
    pub fn audit_quotient(&self, pairs: usize) -> f64 {
        let mut worst = self.profile.center_value() * self.scale; // sup ≥ quotient floor 0
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = || {
            // SplitMix64: deterministic, dependency-free sample stream.
            state = state.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            ((z ^ (z >> 31)) as f64) / (u64::MAX as f64)
        };
        let sample = |r1: f64, r2: f64, r3: f64, r4: f64| -> Geodesic {
            // Concentrate samples inside and near Q* in reference coords.
            let u = 1.5 * PI + (r1 * 2.0 - 0.5) * FRAC_PI_2;
            let v = 0.5 * PI + (r2 * 2.0 - 0.5) * FRAC_PI_2;
            Geodesic::new_unchecked(
                BoundaryPoint::disk(u + 0.03 * r3),
                BoundaryPoint::disk(v + 0.03 * r4),
            )
        };
        for _ in 0..pairs {
            let g = sample(next(), next(), next(), next());
            let h = sample(next(), next(), next(), next());
            let d = metric_geodesics(&g, &h);
            if d < 1e-9 {
                continue;
            }
            let fg = self.scale * self.profile.eval_reference(&g);
            let fh = self.scale * self.profile.eval_reference(&h);
            let quot = (fg - fh).abs() / d.powf(self.nu);
            worst = worst.max(quot).max(fg.abs());
        }
        worst
    }
}

/// Pair a test function against a lamination: `∫ φ dλ`.
pub fn pair(
    f: &TestFunction,
    lam: &crate::lamination::Lamination,
    tol: f64,
) -> f64 {
    lam.integrate(&|g| f.eval(g), &f.q, tol)
}

/// Hölder-norm estimate of a transported profile: grid lower bound plus
/// the analytic upper bound from the profile's Lipschitz constant.
#[derive(Clone, Debug)]
pub struct HolderEstimate {
    pub grid_lower: f64,
    pub analytic_upper: f64,
}

/// The ν-norm of `profile ∘ γ⁻¹` measured back on the reference box.
pub fn holder_norm(profile: Profile, nu: f64, pairs: usize) -> Result<HolderEstimate, NormError> {
    if !(nu > 0.0 && nu <= 1.0) {
        return Err(NormError::BadExponent { nu });
    }
    let f = TestFunction { profile, nu, q: q_star(), normalizer_inv: MobiusMap::IDENTITY, scale: 1.0 };
    let lower = f.audit_quotient(pairs);
    let lip = match profile {
        Profile::Trapezoid => phi0_holder_one_norm(),
        Profile::Cone { .. } => 1.0,
        Profile::HalfSlopeCone => 1.0,
        Profile::SmoothBump => 1.5 / FRAC_PI_4,
    };
    Ok(HolderEstimate {
        grid_lower: lower,
        analytic_upper: FRAC_PI_2.powf(1.0 - nu) * lip.max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxes::symmetric_log2_box;

    #[test]
    fn profile_plateau_and_support() {
        let phi = Profile::Trapezoid;
        // Center value 1, zero outside Q*.
        assert_eq!(phi.center_value(), 1.0);
        let inside_q0 = Geodesic::new_unchecked(
            BoundaryPoint::disk(14.0 * PI / 8.0),
            BoundaryPoint::disk(6.0 * PI / 8.0),
        );
        assert_eq!(phi.eval_reference(&inside_q0), 1.0);
        let outside = Geodesic::half_plane(5.0, 9.0);
        assert_eq!(phi.eval_reference(&outside), 0.0);
    }

    #[test]
    fn cone_center_value_beats_two_over_pi() {
        for &nu in &[0.1, 0.25, 0.5, 1.0] {
            let c = Profile::Cone { nu }.center_value();
            assert!(c >= FRAC_PI_4.powf(nu) - 1e-15);
            assert!(c > 2.0 / PI, "nu = {nu}: center value {c}");
        }
    }

    #[test]
    fn audits_stay_normalized() {
        for &nu in &[0.1, 0.5, 1.0] {
            for profile in [
                Profile::Trapezoid,
                Profile::Cone { nu },
                Profile::HalfSlopeCone,
                Profile::SmoothBump,
            ] {
                let f = TestFunction::new(profile, nu, symmetric_log2_box(1.0)).unwrap();
                let quot = f.audit_quotient(10_000);
                assert!(quot <= 1.0 + 1e-6, "{profile:?} at ν = {nu}: quotient {quot}");
            }
        }
    }

    #[test]
    fn transported_cone_sees_center() {
        let q = symmetric_log2_box(0.37);
        let f = TestFunction::new(Profile::Cone { nu: 0.5 }, 0.5, q).unwrap();
        let center = Geodesic::to_infinity(0.0);
        assert!((f.eval(&center) - FRAC_PI_4.sqrt()).abs() < 1e-8);
        // A geodesic outside the box scores zero.
        assert_eq!(f.eval(&Geodesic::half_plane(5.0, 6.0)), 0.0);
    }

    #[test]
    fn holder_norm_bounds() {
        let est = holder_norm(Profile::Trapezoid, 1.0, 20_000).unwrap();
        assert!(est.grid_lower <= est.analytic_upper + 1e-9);
        // The grid should get reasonably close to the Lipschitz constant.
        assert!(est.grid_lower > 0.5 * phi0_lipschitz());
        assert!(matches!(
            holder_norm(Profile::Trapezoid, 1.5, 10),
            Err(NormError::BadExponent { .. })
        ));
        // Constant-zero check: the cone far from its support.
        let f = TestFunction::new(Profile::Cone { nu: 1.0 }, 1.0, symmetric_log2_box(1.0)).unwrap();
        assert_eq!(f.eval(&Geodesic::half_plane(50.0, 60.0)), 0.0);
    }
}
