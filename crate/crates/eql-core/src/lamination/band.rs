//! Band laminations: a continuous one-parameter family of disjoint
//! geodesics `ℓ(t) = (α(t), β(t))`, `t ∈ [0, 1]`, with density `ρ(t) dt`.
//! The endpoint functions and the density come from the built-in profile
//! families, so masses integrate exactly; only interval endpoints are
//! located numerically (bisection to well below `TOL_Q`).

use crate::boundary::BoundaryPoint;
use crate::boxes::GeodesicBox;
use crate::error::LaminationError;
use crate::geodesic::Geodesic;
use crate::profile::ProfileFn;
use serde::{Deserialize, Serialize};

/// Parameter tolerance for interval-endpoint location.
const T_TOL: f64 = 1e-13;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BandLamination {
    pub alpha: ProfileFn,
    pub beta: ProfileFn,
    pub rho: ProfileFn,
}

impl BandLamination {
    pub fn new(alpha: ProfileFn, beta: ProfileFn, rho: ProfileFn) -> Result<Self, LaminationError> {
        let band = BandLamination { alpha, beta, rho };
        // Disjointness on a grid of pairs, density nonnegative on a grid.
        let n = 1000;
        let leaves: Vec<Geodesic> = (0..=n).map(|k| band.leaf(k as f64 / n as f64)).collect();
        for k in 0..n {
            if band.rho.eval(k as f64 / n as f64) < 0.0 {
                return Err(LaminationError::NegativeDensity { t: k as f64 / n as f64 });
            }
            // Consecutive pairs plus a stride sample.
            let partners = [k + 1, (k + 37) % (n + 1)];
            for &j in &partners {
                if j != k && leaves[k].crosses(&leaves[j]) {
                    return Err(LaminationError::BandLeavesCross { t: k as f64 / n as f64 });
                }
            }
        }
        Ok(band)
    }

    /// The standard test fixture: nested semicircles `(−(1+t), 1+t)` with
    /// unit density. Total mass 1, Thurston norm 1.
    pub fn nested_fixture() -> Self {
        BandLamination::new(
            ProfileFn::affine(-1.0, -1.0),
            ProfileFn::affine(1.0, 1.0),
            ProfileFn::constant(1.0),
        )
        .expect("fixture is valid")
    }

    pub fn leaf(&self, t: f64) -> Geodesic {
        Geodesic::half_plane(self.alpha.eval(t), self.beta.eval(t))
    }

    pub fn total_mass(&self) -> f64 {
        self.rho.integral(0.0, 1.0)
    }

    /// Mass of a union of parameter intervals (exact polynomial integral).
    pub fn mass_on(&self, intervals: &[(f64, f64)]) -> f64 {
        intervals.iter().map(|&(a, b)| self.rho.integral(a, b)).sum()
    }

    /// Parameter intervals of leaves satisfying a boolean predicate whose
    /// truth set is a finite union of intervals. Grid scan plus bisection
    /// refinement of simple boundaries.
    pub fn t_intervals_where<F: Fn(f64) -> bool>(&self, pred: F) -> Vec<(f64, f64)> {
        let n = 2048;
        let at = |k: usize| k as f64 / n as f64;
        let states: Vec<bool> = (0..=n).map(|k| pred(at(k))).collect();
        // Refine each transition by bisection on the boolean.
        let mut cuts: Vec<(usize, f64)> = Vec::new();
        for k in 0..n {
            if states[k] != states[k + 1] {
                let (mut lo, mut hi) = (at(k), at(k + 1));
                while hi - lo > T_TOL {
                    let mid = 0.5 * (lo + hi);
                    if pred(mid) == states[k] {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                cuts.push((k, 0.5 * (lo + hi)));
            }
        }
        let mut intervals = Vec::new();
        let mut start = if states[0] { Some(0.0) } else { None };
        for (k, t) in cuts {
            if states[k] {
                if let Some(s) = start.take() {
                    if t > s {
                        intervals.push((s, t));
                    }
                }
            } else {
                start = Some(t);
            }
        }
        if let Some(s) = start {
            if 1.0 > s {
                intervals.push((s, 1.0));
            }
        }
        intervals
    }

    /// Parameter intervals of leaves inside a box.
    pub fn t_intervals_in_box(&self, q: &GeodesicBox) -> Vec<(f64, f64)> {
        self.t_intervals_where(|t| q.contains_geodesic(&self.leaf(t)))
    }

    /// A closed box containing the whole band.
    pub fn support_window(&self) -> GeodesicBox {
        let (a0, a1) = (self.alpha.eval(0.0), self.alpha.eval(1.0));
        let (b0, b1) = (self.beta.eval(0.0), self.beta.eval(1.0));
        let mk = |p: f64| BoundaryPoint::half_plane(p);
        // Try the corner orderings; endpoint functions are monotone so one
        // of the four closed arrangements is counterclockwise.
        for (p1, p2) in [(a0, a1), (a1, a0)] {
            for (q1, q2) in [(b0, b1), (b1, b0)] {
                if let Ok(q) = GeodesicBox::closed(mk(p1), mk(p2), mk(q1), mk(q2)) {
                    if q.contains_geodesic(&self.leaf(0.5)) {
                        return q;
                    }
                }
            }
        }
        panic!("band endpoint ranges do not bound a box");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_masses() {
        let band = BandLamination::nested_fixture();
        assert!((band.total_mass() - 1.0).abs() < 1e-15);
        let window = band.support_window();
        assert!((band.mass_on(&band.t_intervals_in_box(&window)) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sub_band_mass() {
        let band = BandLamination::nested_fixture();
        // Box catching exactly t ∈ [0.2, 0.5]: alpha ∈ [−1.5, −1.2].
        let q = GeodesicBox::closed_h(-1.5, -1.2, 1.0, 2.2).unwrap();
        let ivs = band.t_intervals_in_box(&q);
        let mass = band.mass_on(&ivs);
        assert!((mass - 0.3).abs() < 1e-9, "got {mass}");
    }

    #[test]
    fn crossing_band_rejected() {
        // Both endpoints slide right in parallel → consecutive leaves link.
        let bad = BandLamination::new(
            ProfileFn::affine(-1.0, 2.0),
            ProfileFn::affine(2.0, 2.0),
            ProfileFn::constant(1.0),
        );
        assert!(bad.is_err());
    }
}
