//! Finite earthquakes: built from a discrete lamination and a base
//! stratum, evaluated on the boundary circle (and the interior), exported
//! as piecewise-Möbius circle maps, and inverted back into their
//! earthquake measure through the comparison isometries.

use crate::boundary::{wrap_angle, BoundaryPoint, InteriorPoint};
use crate::error::EarthquakeError;
use crate::geodesic::{dist_point_to_geodesic_h, Geodesic};
use crate::lamination::DiscreteLamination;
use crate::mobius::{hyperbolic_translation, translation_length_axis, MobiusMap};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Leaf cap for earthquake construction.
pub const N_MAX: usize = 10_000;

struct Node {
    /// Index into the lamination's leaf list.
    leaf: usize,
    /// Open far-side boundary arc (angles): the leaf oriented from
    /// `arc_lo` to `arc_hi` has the base stratum on its left.
    arc_lo: f64,
    arc_len: f64,
    /// Cumulative stratum map for the region just beyond this leaf.
    map: MobiusMap,
    children: Vec<usize>,
}

/// An earthquake supported on finitely many geodesics, normalized to the
/// identity on the stratum of `base_point`.
pub struct FiniteEarthquake {
    lamination: DiscreteLamination,
    base_point: InteriorPoint,
    nodes: Vec<Node>,
    roots: Vec<usize>,
}

impl FiniteEarthquake {
    /// Build the stratum tree and per-stratum maps.
    ///
    /// The map for a stratum separated from the base by leaves
    /// `ℓ₁, …, ℓ_k` (nearest first) is `T₁∘…∘T_k`, each `T_j` the left
    /// translation along `ℓ_j` by its weight, as seen from the base side.
    pub fn build(
        lamination: DiscreteLamination,
        base_point: InteriorPoint,
    ) -> Result<Self, EarthquakeError> {
        if lamination.len() > N_MAX {
            return Err(EarthquakeError::TooManyLeaves { n: lamination.len(), max: N_MAX });
        }
        let base_h = base_point.to_half_plane();
        // Far-side arcs, oriented so the base stratum is on the left.
        let mut arcs: Vec<(usize, f64, f64)> = Vec::with_capacity(lamination.len());
        for (i, leaf) in lamination.leaves().iter().enumerate() {
            if dist_point_to_geodesic_h(base_h, &leaf.g) < 1e-9 {
                return Err(EarthquakeError::BasePointOnLeaf);
            }
            let (tp, tq) = (leaf.g.p.angle(), leaf.g.q.angle());
            let base_side = leaf.g.side_interior(&base_point);
            // Midpoint of the arc p→q; if it lies on the far side, that
            // arc is the far arc (leaf oriented p→q), else the other one.
            let span_pq = (tq - tp).rem_euclid(TAU);
            let mid_pq = wrap_angle(tp + 0.5 * span_pq);
            let mid_side = leaf.g.side_boundary(&BoundaryPoint::disk(mid_pq));
            if mid_side * base_side < 0.0 {
                arcs.push((i, tp, span_pq));
            } else {
                arcs.push((i, tq, TAU - span_pq));
            }
        }
        // The far arcs form a laminar family. Cut the circle at an angle
        // outside all of them (a base-stratum boundary direction) and
        // build the inclusion forest with a stack over sorted intervals.
        let cut = find_uncovered_angle(&arcs).ok_or(EarthquakeError::BasePointOnLeaf)?;
        let shifted = |lo: f64| (lo - cut).rem_euclid(TAU);
        let mut order: Vec<usize> = (0..arcs.len()).collect();
        order.sort_by(|&x, &y| {
            (shifted(arcs[x].1), -arcs[x].2)
                .partial_cmp(&(shifted(arcs[y].1), -arcs[y].2))
                .unwrap()
        });
        let mut nodes: Vec<Node> = Vec::with_capacity(arcs.len());
        let mut roots: Vec<usize> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        for &ai in &order {
            let (leaf_idx, lo, len) = arcs[ai];
            let start = shifted(lo);
            let end = start + len;
            while let Some(&top) = stack.last() {
                let t_start = shifted(nodes[top].arc_lo);
                let t_end = t_start + nodes[top].arc_len;
                if end <= t_end + 1e-15 && start >= t_start - 1e-15 {
                    break;
                }
                stack.pop();
            }
            let leaf = &lamination.leaves()[leaf_idx];
            let axis = oriented_axis(&leaf.g, lo);
            let translation = hyperbolic_translation(&axis, leaf.w);
            let (parent_map, parent) = match stack.last() {
                Some(&top) => (nodes[top].map, Some(top)),
                None => (MobiusMap::IDENTITY, None),
            };
            let node = Node {
                leaf: leaf_idx,
                arc_lo: lo,
                arc_len: len,
                map: parent_map.compose(&translation),
                children: Vec::new(),
            };
            let idx = nodes.len();
            nodes.push(node);
            match parent {
                Some(p) => nodes[p].children.push(idx),
                None => roots.push(idx),
            }
            stack.push(idx);
        }
        Ok(FiniteEarthquake { lamination, base_point, nodes, roots })
    }

    pub fn lamination(&self) -> &DiscreteLamination {
        &self.lamination
    }

    pub fn base_point(&self) -> InteriorPoint {
        self.base_point
    }

    fn arc_contains_open(&self, node: &Node, theta: f64) -> bool {
        let off = (theta - node.arc_lo).rem_euclid(TAU);
        off > 0.0 && off < node.arc_len
    }

    /// Stratum map at a boundary angle. At the endpoints of a leaf the
    /// base-side map applies (open far arcs), which agrees with the far
    /// map there.
    pub fn map_at_angle(&self, theta: f64) -> MobiusMap {
        let mut current: Option<usize> = None;
        let mut candidates: &[usize] = &self.roots;
        'descend: loop {
            for &i in candidates {
                if self.arc_contains_open(&self.nodes[i], theta) {
                    current = Some(i);
                    candidates = &self.nodes[i].children;
                    continue 'descend;
                }
            }
            break;
        }
        match current {
            Some(i) => self.nodes[i].map,
            None => MobiusMap::IDENTITY,
        }
    }

    /// Boundary extension of the earthquake.
    pub fn eval_boundary(&self, p: &BoundaryPoint) -> BoundaryPoint {
        self.map_at_angle(p.angle()).apply(p)
    }

    /// Value on an interior point: the map of the deepest leaf whose far
    /// side contains it.
    pub fn eval_interior(&self, z: &InteriorPoint) -> InteriorPoint {
        let mut current: Option<usize> = None;
        let mut candidates: &[usize] = &self.roots;
        'descend: loop {
            for &i in candidates {
                let leaf = &self.lamination.leaves()[self.nodes[i].leaf];
                let mid = wrap_angle(self.nodes[i].arc_lo + 0.5 * self.nodes[i].arc_len);
                let far_sign = leaf.g.side_boundary(&BoundaryPoint::disk(mid));
                if leaf.g.side_interior(z) * far_sign > 0.0 {
                    current = Some(i);
                    candidates = &self.nodes[i].children;
                    continue 'descend;
                }
            }
            break;
        }
        let m = match current {
            Some(i) => self.nodes[i].map,
            None => MobiusMap::IDENTITY,
        };
        let w = m.apply_interior_h(z.to_half_plane());
        InteriorPoint::from_half_plane(w.re, w.im)
    }

    /// The boundary map as an explicit piecewise-Möbius table.
    pub fn to_circle_map(&self) -> PiecewiseMobius {
        let mut cuts: Vec<f64> = Vec::with_capacity(2 * self.lamination.len());
        for leaf in self.lamination.leaves() {
            cuts.push(leaf.g.p.angle());
            cuts.push(leaf.g.q.angle());
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        if cuts.is_empty() {
            return PiecewiseMobius::identity();
        }
        let n = cuts.len();
        let mut maps = Vec::with_capacity(n);
        for k in 0..n {
            let next = if k + 1 < n { cuts[k + 1] } else { cuts[0] + TAU };
            let mid = wrap_angle(0.5 * (cuts[k] + next));
            maps.push(self.map_at_angle(mid));
        }
        PiecewiseMobius { cuts, maps }
    }
}

fn oriented_axis(g: &Geodesic, far_lo: f64) -> Geodesic {
    // Axis oriented from the far arc's start to its end: the base side is
    // then on the left of the direction of travel.
    if (g.p.angle() - far_lo).abs() < 1e-14 {
        *g
    } else {
        g.reversed()
    }
}

/// An angle not covered by any of the far arcs (a base-stratum boundary
/// direction); gap midpoints between sorted arc endpoints are candidates.
fn find_uncovered_angle(arcs: &[(usize, f64, f64)]) -> Option<f64> {
    if arcs.is_empty() {
        return Some(0.0);
    }
    let mut cuts: Vec<f64> = Vec::with_capacity(2 * arcs.len());
    for &(_, lo, len) in arcs {
        cuts.push(lo);
        cuts.push(wrap_angle(lo + len));
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = cuts.len();
    for k in 0..n {
        let next = if k + 1 < n { cuts[k + 1] } else { cuts[0] + TAU };
        let mid = wrap_angle(0.5 * (cuts[k] + next));
        let covered = arcs.iter().any(|&(_, lo, len)| {
            let off = (mid - lo).rem_euclid(TAU);
            off > 0.0 && off < len
        });
        if !covered {
            return Some(mid);
        }
    }
    None
}

/// An orientation-preserving circle homeomorphism given by an ordered
/// list of boundary arcs with a Möbius matrix on each.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "PiecewiseMobiusWire", into = "PiecewiseMobiusWire")]
pub struct PiecewiseMobius {
    /// Piece k acts on angles `[cuts[k], cuts[k+1])` (cyclically).
    cuts: Vec<f64>,
    maps: Vec<MobiusMap>,
}

impl PiecewiseMobius {
    pub fn identity() -> Self {
        PiecewiseMobius { cuts: vec![0.0], maps: vec![MobiusMap::IDENTITY] }
    }

    pub fn from_mobius(m: MobiusMap) -> Self {
        PiecewiseMobius { cuts: vec![0.0], maps: vec![m] }
    }

    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, &MobiusMap)> + '_ {
        let n = self.cuts.len();
        (0..n).map(move |k| {
            let next = if k + 1 < n { self.cuts[k + 1] } else { self.cuts[0] + TAU };
            (self.cuts[k], next, &self.maps[k])
        })
    }

    pub fn piece_count(&self) -> usize {
        self.maps.len()
    }

    fn piece_index(&self, theta: f64) -> usize {
        let t = wrap_angle(theta);
        if t < self.cuts[0] {
            return self.cuts.len() - 1;
        }
        match self.cuts.binary_search_by(|c| c.partial_cmp(&t).unwrap()) {
            Ok(k) => k,
            Err(0) => self.cuts.len() - 1,
            Err(k) => k - 1,
        }
    }

    pub fn apply(&self, p: &BoundaryPoint) -> BoundaryPoint {
        self.maps[self.piece_index(p.angle())].apply(p)
    }

    pub fn apply_angle(&self, theta: f64) -> f64 {
        self.apply(&BoundaryPoint::disk(theta)).angle()
    }

    /// Inverse evaluation: locate the piece whose image arc contains the
    /// point, then apply the inverse matrix.
    pub fn invert(&self, p: &BoundaryPoint) -> BoundaryPoint {
        let t = p.angle();
        for (lo, hi, m) in self.pieces() {
            let img_lo = m.apply(&BoundaryPoint::disk(lo)).angle();
            let img_hi = m.apply(&BoundaryPoint::disk(wrap_angle(hi))).angle();
            let len = (img_hi - img_lo).rem_euclid(TAU);
            let off = (t - img_lo).rem_euclid(TAU);
            if off <= len || off == 0.0 {
                return m.inverse().apply(p);
            }
        }
        // Numerical fallback: the nearest piece boundary image.
        self.maps[0].inverse().apply(p)
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &PiecewiseMobius) -> PiecewiseMobius {
        let mut cuts: Vec<f64> = other.cuts.clone();
        for (lo, _, _) in self.pieces() {
            cuts.push(other.invert(&BoundaryPoint::disk(lo)).angle());
        }
        cuts = cuts.into_iter().map(wrap_angle).collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        let n = cuts.len();
        let mut maps = Vec::with_capacity(n);
        for k in 0..n {
            let next = if k + 1 < n { cuts[k + 1] } else { cuts[0] + TAU };
            let mid = wrap_angle(0.5 * (cuts[k] + next));
            let g = &other.maps[other.piece_index(mid)];
            let g_mid = g.apply(&BoundaryPoint::disk(mid)).angle();
            let f = &self.maps[self.piece_index(g_mid)];
            maps.push(f.compose(g));
        }
        PiecewiseMobius { cuts, maps }
    }

    /// Post-compose with the Möbius map sending the images of the disk
    /// points 1, i, −1 back to themselves.
    pub fn normalize_fix_triple(&self) -> Result<PiecewiseMobius, crate::error::GeometryError> {
        let anchors = [
            BoundaryPoint::disk(0.0),
            BoundaryPoint::disk(std::f64::consts::FRAC_PI_2),
            BoundaryPoint::disk(std::f64::consts::PI),
        ];
        let images = [self.apply(&anchors[0]), self.apply(&anchors[1]), self.apply(&anchors[2])];
        let nu = crate::mobius::mobius_from_triples(
            [&images[0], &images[1], &images[2]],
            [&anchors[0], &anchors[1], &anchors[2]],
        )?;
        Ok(PiecewiseMobius {
            cuts: self.cuts.clone(),
            maps: self.maps.iter().map(|m| nu.compose(m)).collect(),
        })
    }

    /// Strict monotonicity of the boundary map on a grid.
    pub fn is_monotone(&self, grid: usize) -> bool {
        let base = self.apply_angle(0.0);
        let mut prev = 0.0f64;
        let mut total = 0.0f64;
        for k in 1..=grid {
            let t = TAU * (k as f64) / (grid as f64 + 1.0);
            let cur = (self.apply_angle(t) - base).rem_euclid(TAU);
            if cur <= prev {
                return false;
            }
            total = cur;
            prev = cur;
        }
        total < TAU
    }
}

#[derive(Serialize, Deserialize)]
struct PiecewiseMobiusWire {
    pieces: Vec<PieceWire>,
}

#[derive(Serialize, Deserialize)]
struct PieceWire {
    arc: [BoundaryPoint; 2],
    m: MobiusMap,
}

impl From<PiecewiseMobius> for PiecewiseMobiusWire {
    fn from(pm: PiecewiseMobius) -> Self {
        PiecewiseMobiusWire {
            pieces: pm
                .pieces()
                .map(|(lo, hi, m)| PieceWire {
                    arc: [BoundaryPoint::disk(lo), BoundaryPoint::disk(wrap_angle(hi))],
                    m: *m,
                })
                .collect(),
        }
    }
}

impl TryFrom<PiecewiseMobiusWire> for PiecewiseMobius {
    type Error = String;
    fn try_from(w: PiecewiseMobiusWire) -> Result<Self, String> {
        if w.pieces.is_empty() {
            return Err("piecewise map needs at least one piece".into());
        }
        let mut entries: Vec<(f64, MobiusMap)> =
            w.pieces.iter().map(|p| (p.arc[0].angle(), p.m)).collect();
        entries.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        Ok(PiecewiseMobius {
            cuts: entries.iter().map(|e| e.0).collect(),
            maps: entries.iter().map(|e| e.1).collect(),
        })
    }
}

/// Earthquake along `t·λ` with a base stratum fixed independently of `t`.
pub fn earthquake_path(
    lam: &DiscreteLamination,
    t: f64,
    base_point: InteriorPoint,
) -> Result<FiniteEarthquake, EarthquakeError> {
    assert!(t >= 0.0, "path parameter must be nonnegative");
    FiniteEarthquake::build(lam.scale(t), base_point)
}

/// Recover the earthquake measure of a piecewise-Möbius circle map.
///
/// Every adjacent piece pair yields a comparison isometry; each must be a
/// hyperbolic left translation whose axis ends at the shared cut. Each
/// leaf is seen from its two endpoints; occurrences are merged and must
/// agree.
pub fn extract_measure(pm: &PiecewiseMobius) -> Result<DiscreteLamination, EarthquakeError> {
    let n = pm.piece_count();
    if n <= 1 {
        return Ok(DiscreteLamination::empty());
    }
    let mut found: Vec<(Geodesic, f64)> = Vec::new();
    for k in 0..n {
        let k_next = (k + 1) % n;
        let shared = pm.cuts[k_next % n];
        let near = &pm.maps[k];
        let far = &pm.maps[k_next];
        let cmp = near.inverse().compose(far);
        if cmp.is_identity(1e-12) {
            // Redundant cut between identical strata.
            continue;
        }
        let data = translation_length_axis(&cmp);
        let Some(axis) = data.axis else {
            return Err(EarthquakeError::NotAnEarthquake {
                near: k,
                far: k_next,
                reason: format!("comparison map is not hyperbolic (|tr| = {})", cmp.trace_abs()),
            });
        };
        // The axis must end at the shared circle point.
        let shared_pt = BoundaryPoint::disk(shared);
        let d_rep = axis.p.dist(&shared_pt);
        let d_att = axis.q.dist(&shared_pt);
        if d_rep.min(d_att) > 1e-7 {
            return Err(EarthquakeError::NotAnEarthquake {
                near: k,
                far: k_next,
                reason: "comparison axis does not pass through the shared boundary point".into(),
            });
        }
        // Left translation seen from the near piece: the near piece's arc
        // must lie on the left of the axis oriented repelling → attracting,
        // i.e. in the circle arc from attracting to repelling.
        let mid_near = {
            let lo = pm.cuts[k];
            let hi = if k + 1 < n { pm.cuts[k + 1] } else { pm.cuts[0] + TAU };
            wrap_angle(0.5 * (lo + hi))
        };
        let off = (mid_near - axis.q.angle()).rem_euclid(TAU);
        let span = (axis.p.angle() - axis.q.angle()).rem_euclid(TAU);
        if off >= span {
            return Err(EarthquakeError::NotAnEarthquake {
                near: k,
                far: k_next,
                reason: "comparison map translates to the right".into(),
            });
        }
        match found.iter_mut().find(|(g, _)| g.approx_eq(&axis, 1e-7)) {
            Some((_, w)) => *w = 0.5 * (*w + data.length),
            None => found.push((axis, data.length)),
        }
    }
    DiscreteLamination::new(found).map_err(EarthquakeError::Lamination)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn base_left() -> InteriorPoint {
        InteriorPoint::from_half_plane(-1.0, 1.0)
    }

    fn single_leaf_quake(u: f64, w: f64) -> FiniteEarthquake {
        let lam = DiscreteLamination::single(Geodesic::to_infinity(u), w).unwrap();
        FiniteEarthquake::build(lam, base_left()).unwrap()
    }

    #[test]
    fn empty_lamination_is_identity() {
        let eq = FiniteEarthquake::build(DiscreteLamination::empty(), base_left()).unwrap();
        for x in [-2.0, 0.0, 1.0, 7.5] {
            let p = BoundaryPoint::half_plane(x);
            assert!(eq.eval_boundary(&p).dist(&p) < 1e-15);
        }
    }

    #[test]
    fn single_leaf_matches_closed_form() {
        // h(x) = e·(x − u) + u for x ≥ u, identity for x ≤ u.
        for n in [1.0, 4.0] {
            let u = 1.0 / n;
            let eq = single_leaf_quake(u, 1.0);
            for x in [u + 0.1, 1.0, 5.0, 100.0] {
                let img = eq.eval_boundary(&BoundaryPoint::half_plane(x));
                let want = E * (x - u) + u;
                assert!((img.coordinate().finite().unwrap() - want).abs() < 1e-9);
            }
            for x in [u - 0.1, 0.0, -3.0] {
                let img = eq.eval_boundary(&BoundaryPoint::half_plane(x));
                assert!((img.coordinate().finite().unwrap() - x).abs() < 1e-12);
            }
            // Endpoints of the leaf are fixed.
            let at_u = eq.eval_boundary(&BoundaryPoint::half_plane(u));
            assert!((at_u.coordinate().finite().unwrap() - u).abs() < 1e-12);
            assert!(eq.eval_boundary(&BoundaryPoint::infinity()).coordinate().is_infinite());
        }
    }

    #[test]
    fn base_point_on_leaf_rejected() {
        let lam = DiscreteLamination::single(Geodesic::to_infinity(0.0), 1.0).unwrap();
        let on_leaf = InteriorPoint::from_half_plane(0.0, 2.0);
        assert!(matches!(
            FiniteEarthquake::build(lam, on_leaf),
            Err(EarthquakeError::BasePointOnLeaf)
        ));
    }

    #[test]
    fn two_sided_leaves_compose_independently() {
        // Leaves (−2,−1) and (1,2), base in the middle gap: each side gets
        // its own single-leaf map.
        let lam = DiscreteLamination::new(vec![
            (Geodesic::half_plane(-2.0, -1.0), 0.7),
            (Geodesic::half_plane(1.0, 2.0), 1.3),
        ])
        .unwrap();
        let base = InteriorPoint::from_half_plane(0.0, 1.0);
        let eq = FiniteEarthquake::build(lam.clone(), base).unwrap();

        let right_only =
            FiniteEarthquake::build(DiscreteLamination::single(Geodesic::half_plane(1.0, 2.0), 1.3).unwrap(), base)
                .unwrap();
        let left_only =
            FiniteEarthquake::build(DiscreteLamination::single(Geodesic::half_plane(-2.0, -1.0), 0.7).unwrap(), base)
                .unwrap();
        for x in [1.2, 1.7, 3.0, 50.0] {
            let p = BoundaryPoint::half_plane(x);
            assert!(eq.eval_boundary(&p).dist(&right_only.eval_boundary(&p)) < 1e-12);
        }
        for x in [-1.5, -1.2, -4.0] {
            let p = BoundaryPoint::half_plane(x);
            assert!(eq.eval_boundary(&p).dist(&left_only.eval_boundary(&p)) < 1e-12);
        }
        // The middle gap stays fixed.
        for x in [-0.5, 0.0, 0.9] {
            let p = BoundaryPoint::half_plane(x);
            assert!(eq.eval_boundary(&p).dist(&p) < 1e-12);
        }
    }

    #[test]
    fn nested_leaves_compose_in_order() {
        // Nested leaves around the far side; direct matrix composition.
        let g_outer = Geodesic::half_plane(0.0, 10.0);
        let g_inner = Geodesic::half_plane(2.0, 6.0);
        let lam = DiscreteLamination::new(vec![(g_outer, 0.5), (g_inner, 0.8)]).unwrap();
        let eq = FiniteEarthquake::build(lam, base_left()).unwrap();
        let t_outer = hyperbolic_translation(&Geodesic::half_plane(0.0, 10.0), 0.5);
        let t_inner = hyperbolic_translation(&Geodesic::half_plane(2.0, 6.0), 0.8);
        let expect = t_outer.compose(&t_inner);
        let p = BoundaryPoint::half_plane(4.0);
        let got = eq.eval_boundary(&p);
        assert!(got.dist(&expect.apply(&p)) < 1e-12);
    }

    #[test]
    fn circle_map_is_monotone() {
        let lam = DiscreteLamination::new(vec![
            (Geodesic::half_plane(-2.0, -1.0), 0.7),
            (Geodesic::half_plane(1.0, 2.0), 1.3),
            (Geodesic::half_plane(0.5, 3.0), 0.4),
            (Geodesic::to_infinity(-5.0), 0.9),
        ])
        .unwrap();
        let base = InteriorPoint::from_half_plane(0.0, 1.0);
        let eq = FiniteEarthquake::build(lam, base).unwrap();
        assert!(eq.to_circle_map().is_monotone(2000));
    }

    #[test]
    fn extraction_round_trip_single() {
        let eq = single_leaf_quake(0.25, 1.0);
        let pm = eq.to_circle_map();
        let lam = extract_measure(&pm).unwrap();
        assert_eq!(lam.len(), 1);
        let leaf = &lam.leaves()[0];
        assert!(leaf.g.approx_eq(&Geodesic::to_infinity(0.25), 1e-9));
        assert!((leaf.w - 1.0).abs() < 1e-10);
    }

    #[test]
    fn extraction_rejects_non_earthquake() {
        // A table whose comparison is elliptic: rotate one half only.
        let rot = crate::boxes::disk_rotation(0.3);
        let pm = PiecewiseMobius {
            cuts: vec![0.0, std::f64::consts::PI],
            maps: vec![MobiusMap::IDENTITY, rot],
        };
        assert!(matches!(
            extract_measure(&pm),
            Err(EarthquakeError::NotAnEarthquake { .. })
        ));
    }

    #[test]
    fn identity_extracts_empty() {
        let pm = PiecewiseMobius::identity();
        assert!(extract_measure(&pm).unwrap().is_empty());
    }

    #[test]
    fn path_scales_single_leaf() {
        let lam = DiscreteLamination::single(Geodesic::to_infinity(0.0), 1.0).unwrap();
        for t in [0.0, 0.3, 1.0, 2.0] {
            let eq = earthquake_path(&lam, t, base_left()).unwrap();
            let img = eq.eval_boundary(&BoundaryPoint::half_plane(1.0));
            assert!((img.coordinate().finite().unwrap() - t.exp()).abs() < 1e-10);
        }
    }

    #[test]
    fn piecewise_inverse_and_composition() {
        let eq = single_leaf_quake(0.0, 1.0);
        let pm = eq.to_circle_map();
        for x in [-3.0, -0.5, 0.7, 2.0, 40.0] {
            let p = BoundaryPoint::half_plane(x);
            let there = pm.apply(&p);
            let back = pm.invert(&there);
            assert!(back.dist(&p) < 1e-10, "x = {x}");
        }
        let other = single_leaf_quake(1.0, 0.5).to_circle_map();
        let comp = pm.compose(&other);
        for x in [-2.0, 0.5, 3.0] {
            let p = BoundaryPoint::half_plane(x);
            assert!(comp.apply(&p).dist(&pm.apply(&other.apply(&p))) < 1e-10);
        }
    }

    #[test]
    fn json_round_trip() {
        let pm = single_leaf_quake(0.5, 1.0).to_circle_map();
        let s = serde_json::to_string(&pm).unwrap();
        let back: PiecewiseMobius = serde_json::from_str(&s).unwrap();
        for x in [-1.0, 0.6, 2.0] {
            let p = BoundaryPoint::half_plane(x);
            assert!(back.apply(&p).dist(&pm.apply(&p)) < 1e-12);
        }
    }
}
