//! Fréchet ν-norm and uniform-weak* distance estimators for differences
//! of laminations: certified lower bounds from explicit test-function
//! candidates, with a total-variation box-mass upper bound.

use crate::boxes::{log2_box_at_scale, q_star_covering, GeodesicBox};
use crate::error::NormError;
use crate::geodesic::Geodesic;
use crate::lamination::thurston::box_sup;
use crate::lamination::{DiscreteLamination, Lamination, LaminationOracle};
use crate::norms::testfn::{pair, Profile, TestFunction};
use crate::quadrature::TOL_Q;
use crate::search::{budgeted_sweep, scale_ladder, SearchBudget};

/// A two-sided estimate of a norm of a signed difference.
#[derive(Clone, Debug)]
pub struct NormInterval {
    pub lower: f64,
    pub upper: f64,
    /// The witnessing box of the best candidate.
    pub witness: Option<GeodesicBox>,
    /// Which profile realized the lower bound.
    pub witness_profile: Option<Profile>,
    pub exhausted: bool,
}

/// Candidate boxes for pairings against `λ₁ − λ₂`: the log-2 family seeded
/// at every atom and sampled leaf of both laminations, with a logarithmic
/// scale sweep plus neighbor-derived adversarial scales (boxes hugging a
/// leaf while excluding its neighbors), plus the covering transports of
/// the box-mass argmax (the pigeonhole candidates of the mass-vs-norm
/// comparison).
fn candidate_boxes(l1: &Lamination, l2: &Lamination, budget: &SearchBudget) -> Vec<GeodesicBox> {
    let mut atoms: Vec<Geodesic> = Vec::new();
    let mut sampled: Vec<Geodesic> = Vec::new();
    for lam in [l1, l2] {
        if let Some(w) = lam.support_window() {
            for (g, _) in lam.atoms_in(&w) {
                atoms.push(g);
            }
            let cells = crate::approx::partition_window(&w, std::f64::consts::LN_2 / 4.0);
            for cell in cells.boxes.iter().take(64) {
                if let Some(g) = lam.some_leaf_in(cell) {
                    sampled.push(g);
                }
            }
        }
    }
    let canonical = |v: &mut Vec<Geodesic>| {
        v.sort_by(|x, y| x.sorted_angles().partial_cmp(&y.sorted_angles()).unwrap());
        v.dedup_by(|x, y| x.approx_eq(y, 1e-12));
    };
    canonical(&mut atoms);
    canonical(&mut sampled);

    // Priority order: pigeonhole covers first (the candidates with a
    // proven lower-bound guarantee), then atom-seeded boxes with
    // adversarial scales, then the generic sampled ladder.
    let mut boxes: Vec<GeodesicBox> = Vec::new();
    for lam in [l1, l2] {
        if let Some(w) = box_sup(lam, budget).witness {
            if let Ok(gamma) = crate::boxes::box_normalizer(&w) {
                for cover in q_star_covering() {
                    boxes.push(crate::boxes::q_star().apply(&gamma.compose(cover)));
                }
            }
        }
    }
    let ladder = scale_ladder(6, 4.0);
    let adversarial_cap = 24.min(atoms.len());
    for c in &atoms {
        for &a in &ladder {
            boxes.push(log2_box_at_scale(c, a));
        }
        // Adversarial scales: for nearby atoms, bracket the transition
        // where the neighbor enters the family box around this center.
        let frame_inv = crate::boxes::center_frame(c).inverse();
        for other in atoms.iter().take(adversarial_cap) {
            if other.approx_eq(c, 1e-12) {
                continue;
            }
            let pulled = frame_inv.apply_geodesic(other);
            for coord in [pulled.p.coordinate(), pulled.q.coordinate()] {
                if let crate::boundary::ExtReal::Finite(x) = coord {
                    let m = x.abs();
                    if m > 1e-12 && m < 1e12 {
                        boxes.push(log2_box_at_scale(c, 0.5 * m));
                        boxes.push(log2_box_at_scale(c, 0.99 * m));
                    }
                }
            }
        }
    }
    for c in &sampled {
        for &a in &ladder {
            boxes.push(log2_box_at_scale(c, a));
        }
    }
    boxes
}

/// Total-variation upper bound for `λ₁ − λ₂`: the exact symmetric weight
/// difference when both sides are discrete, else the sum.
fn variation_upper(l1: &Lamination, l2: &Lamination, budget: &SearchBudget) -> f64 {
    if let (Lamination::Discrete { leaves: d1 }, Lamination::Discrete { leaves: d2 }) = (l1, l2) {
        if let Some(diff) = symmetric_difference(d1, d2) {
            let lam: Lamination = diff.into();
            return box_sup(&lam, budget).value;
        }
    }
    box_sup(&l1.plus(l2), budget).value
}

/// |λ₁ − λ₂| as a discrete lamination (leaves with equal weights cancel).
pub fn symmetric_difference(
    d1: &DiscreteLamination,
    d2: &DiscreteLamination,
) -> Option<DiscreteLamination> {
    let mut leaves: Vec<(Geodesic, f64)> = d1.leaves().iter().map(|l| (l.g, l.w)).collect();
    for l in d2.leaves() {
        match leaves.iter_mut().find(|(g, _)| g.approx_eq(&l.g, crate::boundary::EPS_PT)) {
            Some(entry) => entry.1 -= l.w,
            None => leaves.push((l.g, -l.w)),
        }
    }
    let kept: Vec<(Geodesic, f64)> = leaves
        .into_iter()
        .filter(|(_, w)| w.abs() > 1e-15)
        .map(|(g, w)| (g, w.abs()))
        .collect();
    if kept.is_empty() {
        return Some(DiscreteLamination::empty());
    }
    DiscreteLamination::new(kept).ok()
}

/// Fréchet ν-norm of `λ₁ − λ₂`: max over candidate test functions of
/// `|∫φ d(λ₁ − λ₂)|` (lower) against the variation bound (upper).
pub fn frechet_norm(
    l1: &Lamination,
    l2: &Lamination,
    nu: f64,
    budget: &SearchBudget,
) -> Result<NormInterval, NormError> {
    if !(nu > 0.0 && nu <= 1.0) {
        return Err(NormError::BadExponent { nu });
    }
    let boxes = candidate_boxes(l1, l2, budget);
    let mut tests: Vec<TestFunction> = Vec::new();
    for q in &boxes {
        for profile in [Profile::Cone { nu }, Profile::Trapezoid] {
            if let Ok(t) = TestFunction::new(profile, nu, *q) {
                tests.push(t);
            }
        }
    }
    let upper = variation_upper(l1, l2, budget);
    if tests.is_empty() {
        return Ok(NormInterval { lower: 0.0, upper, witness: None, witness_profile: None, exhausted: false });
    }
    let outcome = budgeted_sweep(&tests, budget, |t| {
        (pair(t, l1, TOL_Q) - pair(t, l2, TOL_Q)).abs()
    })
    .expect("nonempty candidate list");
    let best = &tests[outcome.best_index];
    Ok(NormInterval {
        lower: outcome.best_score,
        upper: upper.max(outcome.best_score),
        witness: Some(best.q),
        witness_profile: Some(best.profile),
        exhausted: outcome.exhausted,
    })
}

/// Uniform-weak* distance: `sup_Q |∫ f∘γ_Q⁻¹ d(λ₁ − λ₂)|` over log-2
/// boxes, with a fixed profile and no ν scaling. A lower bound.
pub fn uweak_distance(
    l1: &Lamination,
    l2: &Lamination,
    profile: Profile,
    budget: &SearchBudget,
) -> NormInterval {
    let boxes = candidate_boxes(l1, l2, budget);
    let tests: Vec<TestFunction> = boxes
        .iter()
        .filter_map(|q| TestFunction::unscaled(profile, *q).ok())
        .collect();
    if tests.is_empty() {
        return NormInterval {
            lower: 0.0,
            upper: 0.0,
            witness: None,
            witness_profile: Some(profile),
            exhausted: false,
        };
    }
    let outcome = budgeted_sweep(&tests, budget, |t| {
        (pair(t, l1, TOL_Q) - pair(t, l2, TOL_Q)).abs()
    })
    .expect("nonempty candidate list");
    NormInterval {
        lower: outcome.best_score,
        upper: f64::INFINITY,
        witness: Some(tests[outcome.best_index].q),
        witness_profile: Some(profile),
        exhausted: outcome.exhausted,
    }
}
