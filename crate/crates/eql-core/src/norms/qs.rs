//! Quasisymmetric distortion of circle maps: cross-ratio distortion over
//! log-2 boxes, and the classical adjacent-arc constant.

use crate::boundary::BoundaryPoint;
use crate::boxes::{box_center, log2_box_at_scale, GeodesicBox};
use crate::earthquake::PiecewiseMobius;
use crate::geodesic::Geodesic;
use crate::mobius::MobiusMap;
use crate::search::{budgeted_sweep, scale_ladder, SearchBudget};
use std::f64::consts::{LN_2, TAU};

/// An evaluable orientation-preserving circle map.
#[derive(Clone, Debug)]
pub enum CircleMap {
    Mobius(MobiusMap),
    Piecewise(PiecewiseMobius),
}

impl CircleMap {
    pub fn apply(&self, p: &BoundaryPoint) -> BoundaryPoint {
        match self {
            CircleMap::Mobius(m) => m.apply(p),
            CircleMap::Piecewise(pm) => pm.apply(p),
        }
    }

    pub fn apply_angle(&self, theta: f64) -> f64 {
        self.apply(&BoundaryPoint::disk(theta)).angle()
    }

    /// Image box: the corner images (counterclockwise order is preserved
    /// by orientation-preserving maps).
    pub fn apply_box(&self, q: &GeodesicBox) -> Result<GeodesicBox, crate::error::BoxError> {
        GeodesicBox::new(
            self.apply(&q.a),
            self.apply(&q.b),
            self.apply(&q.c),
            self.apply(&q.d),
            q.flags,
        )
    }

    /// Seed centers for distortion sweeps: piece boundaries for piecewise
    /// maps, a fixed grid otherwise.
    fn seed_centers(&self) -> Vec<Geodesic> {
        let mut cuts: Vec<f64> = match self {
            CircleMap::Mobius(_) => Vec::new(),
            CircleMap::Piecewise(pm) => pm.pieces().map(|(lo, _, _)| lo).collect(),
        };
        let n = 12usize;
        cuts.extend((0..n).map(|k| TAU * (k as f64) / (n as f64)));
        let mut centers = Vec::with_capacity(cuts.len() * 2);
        for &t in &cuts {
            for &gap in &[std::f64::consts::FRAC_PI_2, 2.5] {
                centers.push(Geodesic::new_unchecked(
                    BoundaryPoint::disk(t + 0.01),
                    BoundaryPoint::disk(t + gap),
                ));
            }
        }
        centers
    }
}

/// Supremum estimate of `|L(h(Q)) − log 2|` over log-2 boxes: the
/// cross-ratio distortion of the map. Zero exactly for Möbius maps.
pub fn qs_distortion(h: &CircleMap, budget: &SearchBudget) -> crate::lamination::thurston::SupEstimate {
    let ladder = scale_ladder(6, 2.5);
    let mut candidates: Vec<GeodesicBox> = Vec::new();
    for c in h.seed_centers() {
        for &a in &ladder {
            candidates.push(log2_box_at_scale(&c, a));
        }
    }
    let score = |q: &GeodesicBox| -> f64 {
        match h.apply_box(q) {
            Ok(img) => (img.liouville_or_zero() - LN_2).abs(),
            Err(_) => f64::NAN,
        }
    };
    let outcome = budgeted_sweep(&candidates, budget, score).expect("nonempty candidates");
    let mut best = outcome.best_score;
    let mut best_box = candidates[outcome.best_index];
    let mut step = 0.2f64;
    let mut evals = outcome.evals;
    for _ in 0..budget.refine_rounds {
        if let Ok(center) = box_center(&best_box) {
            let (t1, t2) = (center.p.angle(), center.q.angle());
            let mut local = Vec::new();
            for &d1 in &[-step, 0.0, step] {
                for &d2 in &[-step, 0.0, step] {
                    for &ds in &[-step, 0.0, step] {
                        let c = Geodesic::new_unchecked(
                            BoundaryPoint::disk(t1 + d1),
                            BoundaryPoint::disk(t2 + d2),
                        );
                        if c.p.dist(&c.q) < 1e-6 {
                            continue;
                        }
                        local.push(log2_box_at_scale(&c, ds.exp()));
                    }
                }
            }
            if let Some(out) = budgeted_sweep(&local, budget, score) {
                evals += out.evals;
                if out.best_score > best {
                    best = out.best_score;
                    best_box = local[out.best_index];
                }
            }
        }
        step *= 0.5;
    }
    crate::lamination::thurston::SupEstimate {
        value: best,
        witness: Some(best_box),
        exact: false,
        exhausted: outcome.exhausted,
        evals,
    }
}

/// Sampled quasisymmetric constant: sup over the grid of
/// `max(r, 1/r)` with `r = |h(J₁)|/|h(J₂)|` for adjacent equal arcs.
pub fn qs_constant(h: &CircleMap, base_points: usize, t_values: &[f64]) -> f64 {
    let mut worst = 1.0f64;
    for k in 0..base_points {
        let x = TAU * (k as f64) / (base_points as f64);
        for &t in t_values {
            let a = h.apply_angle(x - t);
            let b = h.apply_angle(x);
            let c = h.apply_angle(x + t);
            let left = (b - a).rem_euclid(TAU);
            let right = (c - b).rem_euclid(TAU);
            if left > 0.0 && right > 0.0 {
                let r = right / left;
                worst = worst.max(r.max(1.0 / r));
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamination::DiscreteLamination;

    #[test]
    fn mobius_maps_have_zero_distortion() {
        let m = MobiusMap::new(3.0, 1.0, 1.0, 2.0).unwrap();
        let est = qs_distortion(&CircleMap::Mobius(m), &SearchBudget::with_max_evals(512));
        assert!(est.value < 1e-10, "distortion {}", est.value);
        let k = qs_constant(&CircleMap::Mobius(MobiusMap::IDENTITY), 64, &[0.1, 0.01]);
        assert!((k - 1.0).abs() < 1e-12);
    }

    #[test]
    fn earthquake_distortion_grows_with_weight() {
        let base = crate::boundary::InteriorPoint::from_half_plane(-1.0, 1.0);
        let mut prev = 0.0;
        for &w in &[0.1, 0.5, 1.0] {
            let lam = DiscreteLamination::single(Geodesic::to_infinity(0.0), w).unwrap();
            let eq = crate::earthquake::FiniteEarthquake::build(lam, base).unwrap();
            let est = qs_distortion(
                &CircleMap::Piecewise(eq.to_circle_map()),
                &SearchBudget::with_max_evals(2000),
            );
            assert!(est.value > prev, "w = {w}: {} vs {prev}", est.value);
            prev = est.value;
        }
        assert!(prev > 0.1);
    }
}
