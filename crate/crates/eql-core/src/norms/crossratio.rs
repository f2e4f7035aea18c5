//! Cross-ratio norm of boundary vector fields: the supremum over log-2
//! boxes of the four-term difference expression, which annihilates the
//! Möbius kernel (quadratic polynomial fields) identically.

use crate::boundary::ExtReal;
use crate::boxes::{log2_box_at_scale, GeodesicBox};
use crate::error::NormError;
use crate::norms::field::CircleVectorField;
use crate::search::{budgeted_sweep, scale_ladder, SearchBudget};

/// The box expression
/// `V[Q] = (V(a)−V(c))/(a−c) + (V(b)−V(d))/(b−d) − (V(a)−V(d))/(a−d) − (V(b)−V(c))/(b−c)`
/// in half-plane coordinates, with a corner at ∞ handled through the
/// quadratic growth coefficient `κ`: the two terms containing the infinite
/// corner contribute `κ·(difference of the two finite partners)`.
pub fn box_expression(v: &dyn CircleVectorField, q: &GeodesicBox) -> Result<f64, NormError> {
    let coords = [
        q.a.coordinate(),
        q.b.coordinate(),
        q.c.coordinate(),
        q.d.coordinate(),
    ];
    let finite = |x: ExtReal| x.finite().expect("at most one corner at infinity");
    let term = |x: f64, y: f64| (v.half_plane_value(x) - v.half_plane_value(y)) / (x - y);
    let kappa = v.quadratic_coeff();
    let value = match coords {
        [ExtReal::Inf, b, c, d] => {
            let (b, c, d) = (finite(b), finite(c), finite(d));
            kappa * (c - d) + term(b, d) - term(b, c)
        }
        [a, ExtReal::Inf, c, d] => {
            let (a, c, d) = (finite(a), finite(c), finite(d));
            term(a, c) - term(a, d) + kappa * (d - c)
        }
        [a, b, ExtReal::Inf, d] => {
            let (a, b, d) = (finite(a), finite(b), finite(d));
            kappa * (a - b) + term(b, d) - term(a, d)
        }
        [a, b, c, ExtReal::Inf] => {
            let (a, b, c) = (finite(a), finite(b), finite(c));
            term(a, c) - term(b, c) + kappa * (b - a)
        }
        [a, b, c, d] => {
            let (a, b, c, d) = (finite(a), finite(b), finite(c), finite(d));
            term(a, c) + term(b, d) - term(a, d) - term(b, c)
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(NormError::NonFinite { theta: q.a.angle() })
    }
}

/// Supremum estimate of `|V[Q]|` over log-2 boxes (a certified lower
/// bound: every score is an admissible box value).
pub fn crossratio_norm(
    v: &dyn CircleVectorField,
    budget: &SearchBudget,
) -> Result<crate::lamination::thurston::SupEstimate, NormError> {
    let centers = v.suggested_centers();
    let ladder = scale_ladder(8, 3.0);
    let mut candidates: Vec<GeodesicBox> = Vec::new();
    for c in &centers {
        for &a in &ladder {
            candidates.push(log2_box_at_scale(c, a));
        }
    }
    // Reject non-finite samples loudly rather than silently skipping.
    for q in candidates.iter().take(8) {
        box_expression(v, q)?;
    }
    let outcome = budgeted_sweep(&candidates, budget, |q| {
        box_expression(v, q).map(|x| x.abs()).unwrap_or(f64::NAN)
    })
    .expect("candidate list is nonempty");
    let mut best = outcome.best_score;
    let mut best_box = candidates[outcome.best_index];
    let mut evals = outcome.evals;
    // Refinement around the incumbent.
    let mut step = 0.25f64;
    for _ in 0..budget.refine_rounds {
        if let Ok(center) = crate::boxes::box_center(&best_box) {
            let (t1, t2) = (center.p.angle(), center.q.angle());
            let mut local = Vec::new();
            for &d1 in &[-step, 0.0, step] {
                for &d2 in &[-step, 0.0, step] {
                    for &ds in &[-step, 0.0, step] {
                        let c = crate::geodesic::Geodesic::new_unchecked(
                            crate::boundary::BoundaryPoint::disk(t1 + d1),
                            crate::boundary::BoundaryPoint::disk(t2 + d2),
                        );
                        if c.p.dist(&c.q) < 1e-6 {
                            continue;
                        }
                        local.push(log2_box_at_scale(&c, ds.exp()));
                    }
                }
            }
            if let Some(out) = budgeted_sweep(&local, budget, |q| {
                box_expression(v, q).map(|x| x.abs()).unwrap_or(f64::NAN)
            }) {
                evals += out.evals;
                if out.best_score > best {
                    best = out.best_score;
                    best_box = local[out.best_index];
                }
            }
        }
        step *= 0.5;
    }
    Ok(crate::lamination::thurston::SupEstimate {
        value: best,
        witness: Some(best_box),
        exact: false,
        exhausted: outcome.exhausted,
        evals,
    })
}
