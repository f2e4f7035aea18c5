//! Measured laminations behind a common box-measure interface.
//!
//! Atoms and a continuous part are both admitted: `DiscreteLamination` is
//! the purely atomic case, `BandLamination` the purely continuous one, and
//! sums, Möbius pullbacks and restrictions to a transversal combine them.
//! Every composite resolves to a list of primitive parts carried by an
//! accumulated Möbius map and a list of transversal filters, which is what
//! the measure queries walk.

mod band;
mod discrete;
pub mod thurston;

pub use band::BandLamination;
pub use discrete::{DiscreteLamination, Leaf, ATOM_FLOOR};

use crate::boundary::{BoundaryPoint, InteriorPoint};
use crate::boxes::GeodesicBox;
use crate::geodesic::Geodesic;
use crate::mobius::MobiusMap;
use serde::{Deserialize, Serialize};

/// A hyperbolic segment or ray used to restrict a lamination to the leaves
/// it crosses. Endpoints may be interior or ideal.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Transversal {
    pub start: TransversalEnd,
    pub end: TransversalEnd,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum TransversalEnd {
    Interior(InteriorPoint),
    Boundary(BoundaryPoint),
}

impl Transversal {
    pub fn segment(a: InteriorPoint, b: InteriorPoint) -> Self {
        Transversal { start: TransversalEnd::Interior(a), end: TransversalEnd::Interior(b) }
    }

    pub fn ray(from: InteriorPoint, to: BoundaryPoint) -> Self {
        Transversal { start: TransversalEnd::Interior(from), end: TransversalEnd::Boundary(to) }
    }

    fn side(&self, end: &TransversalEnd, g: &Geodesic) -> f64 {
        match end {
            TransversalEnd::Interior(p) => g.side_interior(p),
            TransversalEnd::Boundary(p) => g.side_boundary(p),
        }
    }

    /// Weak crossing: the two ends lie on opposite sides of the leaf, an
    /// end on the leaf itself included.
    pub fn crossed_by(&self, g: &Geodesic) -> bool {
        self.side(&self.start, g) * self.side(&self.end, g) <= 0.0
    }

    pub fn apply(&self, m: &MobiusMap) -> Transversal {
        let map_end = |e: &TransversalEnd| match e {
            TransversalEnd::Interior(p) => {
                let z = m.apply_interior_h(p.to_half_plane());
                TransversalEnd::Interior(InteriorPoint::from_half_plane(z.re, z.im))
            }
            TransversalEnd::Boundary(p) => TransversalEnd::Boundary(m.apply(p)),
        };
        Transversal { start: map_end(&self.start), end: map_end(&self.end) }
    }
}

/// The box-measure interface every lamination implements.
pub trait LaminationOracle: Send + Sync {
    /// Mass of the geodesics lying in the box (side flags honored).
    fn box_mass(&self, q: &GeodesicBox) -> f64;
    /// Every atom of mass ≥ `ATOM_FLOOR` inside the box.
    fn atoms_in(&self, q: &GeodesicBox) -> Vec<(Geodesic, f64)>;
    /// At most two support leaves extreme in the closure of the box.
    fn peaks_in(&self, q: &GeodesicBox) -> Vec<Geodesic>;
    /// Some support leaf inside the box, if any.
    fn some_leaf_in(&self, q: &GeodesicBox) -> Option<Geodesic>;
    /// A closed box containing the whole support, when one exists.
    fn support_window(&self) -> Option<GeodesicBox>;
    /// Total mass.
    fn total_mass(&self) -> f64;
}

/// A measured lamination: primitives and the closures of the operations
/// the artifact needs (sum, pullback, restriction).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Lamination {
    Discrete {
        leaves: DiscreteLamination,
    },
    Band {
        #[serde(flatten)]
        band: BandLamination,
    },
    Sum {
        parts: Vec<Lamination>,
    },
    Pullback {
        map: MobiusMap,
        inner: Box<Lamination>,
    },
    Restricted {
        transversal: Transversal,
        inner: Box<Lamination>,
    },
}

impl From<DiscreteLamination> for Lamination {
    fn from(leaves: DiscreteLamination) -> Self {
        Lamination::Discrete { leaves }
    }
}

impl From<BandLamination> for Lamination {
    fn from(band: BandLamination) -> Self {
        Lamination::Band { band }
    }
}

/// `γ*λ`: support `γ⁻¹(|λ|)`, with `(γ*λ)(Q) = λ(γ(Q))`.
pub fn pullback(map: &MobiusMap, lam: &Lamination) -> Lamination {
    match lam {
        // Discrete laminations pull back explicitly.
        Lamination::Discrete { leaves } => Lamination::Discrete {
            leaves: leaves.map_leaves(&map.inverse()),
        },
        other => Lamination::Pullback { map: *map, inner: Box::new(other.clone()) },
    }
}

/// Restriction `λ_I` to the leaves crossing the transversal.
pub fn restrict(lam: &Lamination, transversal: Transversal) -> Lamination {
    Lamination::Restricted { transversal, inner: Box::new(lam.clone()) }
}

/// One primitive component with its ambient placement.
struct ResolvedPart<'a> {
    prim: Prim<'a>,
    /// Ambient leaf = `to_ambient(primitive leaf)`.
    to_ambient: MobiusMap,
    /// Transversal filters in primitive coordinates.
    filters: Vec<Transversal>,
}

enum Prim<'a> {
    Discrete(&'a DiscreteLamination),
    Band(&'a BandLamination),
}

impl<'a> ResolvedPart<'a> {
    fn is_trivial_map(&self) -> bool {
        self.to_ambient.is_identity(0.0)
    }

    /// Box in primitive coordinates corresponding to an ambient box.
    fn pull_box(&self, q: &GeodesicBox) -> GeodesicBox {
        if self.is_trivial_map() {
            *q
        } else {
            q.apply(&self.to_ambient.inverse())
        }
    }

    fn leaf_passes(&self, g: &Geodesic) -> bool {
        self.filters.iter().all(|t| t.crossed_by(g))
    }

    fn band_intervals(&self, band: &BandLamination, q: &GeodesicBox) -> Vec<(f64, f64)> {
        let qp = self.pull_box(q);
        band.t_intervals_where(|t| {
            let leaf = band.leaf(t);
            qp.contains_geodesic(&leaf) && self.leaf_passes(&leaf)
        })
    }
}

fn resolve<'a>(lam: &'a Lamination, out: &mut Vec<ResolvedPart<'a>>, map: MobiusMap) {
    match lam {
        Lamination::Discrete { leaves } => out.push(ResolvedPart {
            prim: Prim::Discrete(leaves),
            to_ambient: map,
            filters: Vec::new(),
        }),
        Lamination::Band { band } => out.push(ResolvedPart {
            prim: Prim::Band(band),
            to_ambient: map,
            filters: Vec::new(),
        }),
        Lamination::Sum { parts } => {
            for p in parts {
                resolve(p, out, map);
            }
        }
        Lamination::Pullback { map: gamma, inner } => {
            // Ambient leaf = map(γ⁻¹(inner-ambient leaf)).
            resolve(inner, out, map.compose(&gamma.inverse()));
        }
        Lamination::Restricted { transversal, inner } => {
            let start = out.len();
            resolve(inner, out, map);
            for part in out.iter_mut().skip(start) {
                // Transversal in ambient coords of `lam` equals `map`-ambient;
                // carry it to primitive coordinates of each part.
                let local = transversal.apply(&part.to_ambient.inverse());
                part.filters.push(local);
            }
        }
    }
}

impl Lamination {
    fn parts(&self) -> Vec<ResolvedPart<'_>> {
        let mut out = Vec::new();
        resolve(self, &mut out, MobiusMap::IDENTITY);
        out
    }

    /// The continuous part: all atoms removed, filters kept.
    pub fn continuous_part(&self) -> Lamination {
        match self {
            Lamination::Discrete { .. } => Lamination::Discrete { leaves: DiscreteLamination::empty() },
            Lamination::Band { .. } => self.clone(),
            Lamination::Sum { parts } => Lamination::Sum {
                parts: parts.iter().map(|p| p.continuous_part()).collect(),
            },
            Lamination::Pullback { map, inner } => Lamination::Pullback {
                map: *map,
                inner: Box::new(inner.continuous_part()),
            },
            Lamination::Restricted { transversal, inner } => Lamination::Restricted {
                transversal: *transversal,
                inner: Box::new(inner.continuous_part()),
            },
        }
    }

    /// Sum with another lamination.
    pub fn plus(&self, other: &Lamination) -> Lamination {
        Lamination::Sum { parts: vec![self.clone(), other.clone()] }
    }

    /// `∫ f dλ` over the geodesics inside `support`: exact sums over
    /// atoms, adaptive quadrature to `tol` over band parts.
    pub fn integrate(&self, f: &dyn Fn(&Geodesic) -> f64, support: &GeodesicBox, tol: f64) -> f64 {
        let mut total = 0.0;
        for part in self.parts() {
            match part.prim {
                Prim::Discrete(d) => {
                    let qp = part.pull_box(support);
                    for l in d.leaves() {
                        if qp.contains_geodesic(&l.g) && part.leaf_passes(&l.g) {
                            let ambient = if part.is_trivial_map() {
                                l.g
                            } else {
                                part.to_ambient.apply_geodesic(&l.g)
                            };
                            total += l.w * f(&ambient);
                        }
                    }
                }
                Prim::Band(b) => {
                    for (t0, t1) in part.band_intervals(b, support) {
                        let integrand = |t: f64| {
                            let leaf = b.leaf(t);
                            let ambient = if part.is_trivial_map() {
                                leaf
                            } else {
                                part.to_ambient.apply_geodesic(&leaf)
                            };
                            f(&ambient) * b.rho.eval(t)
                        };
                        let (v, _) = crate::quadrature::adaptive_simpson(&integrand, t0, t1, tol);
                        total += v;
                    }
                }
            }
        }
        total
    }
}

impl LaminationOracle for Lamination {
    fn box_mass(&self, q: &GeodesicBox) -> f64 {
        let mut total = 0.0;
        for part in self.parts() {
            match part.prim {
                Prim::Discrete(d) => {
                    let qp = part.pull_box(q);
                    total += d
                        .leaves()
                        .iter()
                        .filter(|l| qp.contains_geodesic(&l.g) && part.leaf_passes(&l.g))
                        .map(|l| l.w)
                        .sum::<f64>();
                }
                Prim::Band(b) => {
                    total += b.mass_on(&part.band_intervals(b, q));
                }
            }
        }
        total
    }

    fn atoms_in(&self, q: &GeodesicBox) -> Vec<(Geodesic, f64)> {
        let mut out: Vec<(Geodesic, f64)> = Vec::new();
        for part in self.parts() {
            if let Prim::Discrete(d) = part.prim {
                let qp = part.pull_box(q);
                for l in d.leaves() {
                    if l.w >= ATOM_FLOOR && qp.contains_geodesic(&l.g) && part.leaf_passes(&l.g) {
                        let ambient = if part.is_trivial_map() {
                            l.g
                        } else {
                            part.to_ambient.apply_geodesic(&l.g)
                        };
                        match out.iter_mut().find(|(g, _)| g.approx_eq(&ambient, crate::boundary::EPS_PT)) {
                            Some((_, w)) => *w += l.w,
                            None => out.push((ambient, l.w)),
                        }
                    }
                }
            }
        }
        out
    }

    fn peaks_in(&self, q: &GeodesicBox) -> Vec<Geodesic> {
        // Candidates: per-part extremal leaves in the closed box; the global
        // extremes are extremal among them. Order along the box by the
        // position of the endpoint on the first arc.
        let closed = GeodesicBox {
            a: q.a,
            b: q.b,
            c: q.c,
            d: q.d,
            flags: [
                closed_kind(q.flags[0]),
                closed_kind(q.flags[1]),
            ],
        };
        let mut candidates: Vec<Geodesic> = Vec::new();
        for part in self.parts() {
            let qp = part.pull_box(&closed);
            match part.prim {
                Prim::Discrete(d) => {
                    for l in d.leaves() {
                        if qp.contains_geodesic(&l.g) && part.leaf_passes(&l.g) {
                            candidates.push(if part.is_trivial_map() {
                                l.g
                            } else {
                                part.to_ambient.apply_geodesic(&l.g)
                            });
                        }
                    }
                }
                Prim::Band(b) => {
                    let pred = |t: f64| {
                        let leaf = b.leaf(t);
                        qp.contains_geodesic(&leaf) && part.leaf_passes(&leaf)
                    };
                    for (t0, t1) in b.t_intervals_where(pred) {
                        // The bisected interval ends may sit a hair outside;
                        // nudge inward until the membership predicate holds.
                        for (t_raw, dir) in [(t0, 1.0), (t1, -1.0)] {
                            let mut t = t_raw.clamp(0.0, 1.0);
                            for _ in 0..8 {
                                if pred(t) {
                                    break;
                                }
                                t = (t + dir * 5e-13).clamp(0.0, 1.0);
                            }
                            if pred(t) {
                                let leaf = b.leaf(t);
                                candidates.push(if part.is_trivial_map() {
                                    leaf
                                } else {
                                    part.to_ambient.apply_geodesic(&leaf)
                                });
                            }
                        }
                    }
                }
            }
        }
        if candidates.is_empty() {
            return Vec::new();
        }
        let arc1 = closed.arc1();
        let pos = |g: &Geodesic| -> f64 {
            let (tp, tq) = (g.p.angle(), g.q.angle());
            if arc1.contains_angle(tp) {
                crate::boundary::ccw_offset(arc1.lo, tp)
            } else {
                crate::boundary::ccw_offset(arc1.lo, tq)
            }
        };
        let lo = candidates
            .iter()
            .min_by(|a, b| pos(a).partial_cmp(&pos(b)).unwrap())
            .copied()
            .unwrap();
        let hi = candidates
            .iter()
            .max_by(|a, b| pos(a).partial_cmp(&pos(b)).unwrap())
            .copied()
            .unwrap();
        if lo.approx_eq(&hi, crate::boundary::EPS_PT) {
            vec![lo]
        } else {
            vec![lo, hi]
        }
    }

    fn some_leaf_in(&self, q: &GeodesicBox) -> Option<Geodesic> {
        for part in self.parts() {
            let qp = part.pull_box(q);
            match part.prim {
                Prim::Discrete(d) => {
                    if let Some(l) = d
                        .leaves()
                        .iter()
                        .find(|l| qp.contains_geodesic(&l.g) && part.leaf_passes(&l.g))
                    {
                        return Some(if part.is_trivial_map() {
                            l.g
                        } else {
                            part.to_ambient.apply_geodesic(&l.g)
                        });
                    }
                }
                Prim::Band(b) => {
                    if let Some(&(t0, t1)) = part.band_intervals(b, q).first() {
                        let leaf = b.leaf(0.5 * (t0 + t1));
                        return Some(if part.is_trivial_map() {
                            leaf
                        } else {
                            part.to_ambient.apply_geodesic(&leaf)
                        });
                    }
                }
            }
        }
        None
    }

    fn support_window(&self) -> Option<GeodesicBox> {
        let parts = self.parts();
        let mut windows = Vec::new();
        for part in &parts {
            let w = match part.prim {
                Prim::Discrete(d) => {
                    if d.is_empty() {
                        continue;
                    }
                    minimal_closed_box(&d.leaves().iter().map(|l| l.g).collect::<Vec<_>>())?
                }
                Prim::Band(b) => b.support_window(),
            };
            windows.push(if part.is_trivial_map() { w } else { w.apply(&part.to_ambient) });
        }
        match windows.len() {
            0 => None,
            1 => Some(windows[0]),
            _ => {
                // Hull of all windows: the minimal box over the corner
                // geodesics of every window.
                let mut gs = Vec::new();
                for w in &windows {
                    let (e1, e2) = w.extreme_geodesics();
                    gs.push(e1);
                    gs.push(e2);
                    gs.push(Geodesic::new_unchecked(w.a, w.c));
                    gs.push(Geodesic::new_unchecked(w.b, w.d));
                }
                minimal_closed_box(&gs)
            }
        }
    }

    fn total_mass(&self) -> f64 {
        let mut total = 0.0;
        for part in self.parts() {
            match part.prim {
                Prim::Discrete(d) => {
                    total += d
                        .leaves()
                        .iter()
                        .filter(|l| part.leaf_passes(&l.g))
                        .map(|l| l.w)
                        .sum::<f64>();
                }
                Prim::Band(b) => {
                    if part.filters.is_empty() {
                        total += b.total_mass();
                    } else {
                        let ivs = b.t_intervals_where(|t| part.leaf_passes(&b.leaf(t)));
                        total += b.mass_on(&ivs);
                    }
                }
            }
        }
        total
    }
}

fn closed_kind(k: crate::boxes::SideKind) -> crate::boxes::SideKind {
    use crate::boxes::SideKind;
    match k {
        SideKind::Point => SideKind::Point,
        _ => SideKind::Closed,
    }
}

/// A closed box containing a family of geodesics with arcs spanned by the
/// family's own endpoints, when the family fits a box at all (i.e. its
/// endpoints split into two disjoint arcs, one endpoint of each geodesic
/// in each). Returns the first valid split found.
pub fn minimal_closed_box(geodesics: &[Geodesic]) -> Option<GeodesicBox> {
    let n = geodesics.len();
    if n == 0 {
        return None;
    }
    // All endpoints in cyclic order, tagged with their leaf index.
    let mut pts: Vec<(f64, usize)> = Vec::with_capacity(2 * n);
    for (i, g) in geodesics.iter().enumerate() {
        pts.push((g.p.angle(), i));
        pts.push((g.q.angle(), i));
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // A valid split takes n consecutive endpoints covering each leaf once;
    // scan all rotations and verify the resulting box directly.
    let mut seen = vec![false; n];
    'rot: for r in 0..(2 * n) {
        seen.iter_mut().for_each(|s| *s = false);
        for k in 0..n {
            let id = pts[(r + k) % (2 * n)].1;
            if seen[id] {
                continue 'rot;
            }
            seen[id] = true;
        }
        let a = pts[r].0;
        let b = pts[(r + n - 1) % (2 * n)].0;
        let c = pts[(r + n) % (2 * n)].0;
        let d = pts[(r + 2 * n - 1) % (2 * n)].0;
        let kind = |lo: f64, hi: f64| {
            if lo == hi {
                crate::boxes::SideKind::Point
            } else {
                crate::boxes::SideKind::Closed
            }
        };
        let mk = BoundaryPoint::disk;
        if let Ok(q) = GeodesicBox::new(mk(a), mk(b), mk(c), mk(d), [kind(a, b), kind(c, d)]) {
            if geodesics.iter().all(|g| q.contains_geodesic(g)) {
                return Some(q);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxes::symmetric_log2_box;

    #[test]
    fn dirac_box_mass() {
        let ell = Geodesic::to_infinity(0.0);
        let lam: Lamination = DiscreteLamination::single(ell, 1.0).unwrap().into();
        let q = symmetric_log2_box(1.0);
        assert_eq!(lam.box_mass(&q), 1.0);
        let q_far = GeodesicBox::closed_h(5.0, 6.0, 7.0, 8.0).unwrap();
        assert_eq!(lam.box_mass(&q_far), 0.0);
    }

    #[test]
    fn example_one_masses() {
        // λ_∞(Q_n) = 1 and λ_n(Q_n) = 0 for Q_n = [−a, a] × [ω₀a, −ω₀a]
        // with 1/(ω₀ n) < a < 1/n.
        let n = 7.0;
        let a = 1.0 / (n * crate::boxes::OMEGA_0.sqrt());
        let q = symmetric_log2_box(a);
        let lam_inf: Lamination = DiscreteLamination::single(Geodesic::to_infinity(0.0), 1.0)
            .unwrap()
            .into();
        let lam_n: Lamination = DiscreteLamination::single(Geodesic::to_infinity(1.0 / n), 1.0)
            .unwrap()
            .into();
        assert_eq!(lam_inf.box_mass(&q), 1.0);
        assert_eq!(lam_n.box_mass(&q), 0.0);
    }

    #[test]
    fn pullback_moves_leaves_and_masses() {
        let ell = Geodesic::half_plane(-1.0, 1.0);
        let lam: Lamination = DiscreteLamination::single(ell, 2.0).unwrap().into();
        let gamma = crate::mobius::MobiusMap::new(2.0, 1.0, 0.0, 0.5).unwrap();
        let pulled = pullback(&gamma, &lam);
        // (γ*λ)(Q) = λ(γ(Q)).
        let q = minimal_closed_box(&[gamma.inverse().apply_geodesic(&ell)]).unwrap();
        assert_eq!(pulled.box_mass(&q), 2.0);
        match &pulled {
            Lamination::Discrete { leaves } => {
                assert!(leaves.leaves()[0].g.approx_eq(&gamma.inverse().apply_geodesic(&ell), 1e-12));
            }
            _ => panic!("discrete pullback should stay discrete"),
        }
    }

    #[test]
    fn pullback_of_band_is_lazy_and_consistent() {
        let band: Lamination = BandLamination::nested_fixture().into();
        let gamma = crate::mobius::MobiusMap::new(1.0, 2.0, 0.0, 1.0).unwrap();
        let pulled = pullback(&gamma, &band);
        let q = band.support_window().unwrap();
        let q_pulled = q.apply(&gamma.inverse());
        assert!((pulled.box_mass(&q_pulled) - band.box_mass(&q)).abs() < 1e-9);
    }

    #[test]
    fn restriction_counts_crossing_leaves() {
        let lam: Lamination = DiscreteLamination::new(vec![
            (Geodesic::to_infinity(0.0), 1.0),
            (Geodesic::half_plane(5.0, 6.0), 1.0),
        ])
        .unwrap()
        .into();
        // Segment on the unit half-circle from e^{iπ/4} to e^{3iπ/4}
        // crosses (0, ∞) but not (5, 6).
        let seg = Transversal::segment(
            InteriorPoint::from_half_plane((2f64).sqrt() / 2.0, (2f64).sqrt() / 2.0),
            InteriorPoint::from_half_plane(-(2f64).sqrt() / 2.0, (2f64).sqrt() / 2.0),
        );
        let restricted = restrict(&lam, seg);
        assert_eq!(restricted.total_mass(), 1.0);
        let window = lam.support_window().unwrap();
        assert_eq!(restricted.box_mass(&window), 1.0);
    }

    #[test]
    fn restriction_of_band_matches_quadrature() {
        let band = BandLamination::nested_fixture();
        let lam: Lamination = band.clone().into();
        // Vertical ray from 1.1i to ∞ crosses leaves with 1 + t > 1.1.
        let ray = Transversal::ray(
            InteriorPoint::from_half_plane(0.0, 1.1),
            BoundaryPoint::infinity(),
        );
        let restricted = restrict(&lam, ray);
        assert!((restricted.total_mass() - 0.9).abs() < 1e-9);
    }

    #[test]
    fn band_peaks_are_extreme_leaves() {
        let band = BandLamination::nested_fixture();
        let lam: Lamination = band.clone().into();
        let window = lam.support_window().unwrap();
        let peaks = lam.peaks_in(&window);
        assert_eq!(peaks.len(), 2);
        let t_ends = [band.leaf(0.0), band.leaf(1.0)];
        assert!(t_ends.iter().any(|g| g.approx_eq(&peaks[0], 1e-6)));
        assert!(t_ends.iter().any(|g| g.approx_eq(&peaks[1], 1e-6)));
    }

    #[test]
    fn sum_mass_adds() {
        let a: Lamination = DiscreteLamination::single(Geodesic::half_plane(-1.0, 1.0), 1.5)
            .unwrap()
            .into();
        let b: Lamination = BandLamination::nested_fixture().into();
        let sum = a.plus(&b);
        assert!((sum.total_mass() - 2.5).abs() < 1e-12);
        let atoms = sum.atoms_in(&sum.support_window().unwrap());
        assert_eq!(atoms.len(), 1);
    }

    #[test]
    fn minimal_box_fails_for_triangle_family() {
        // Three mutually "facing" geodesics do not fit one box.
        let gs = [
            Geodesic::half_plane(0.0, 1.0),
            Geodesic::half_plane(2.0, 3.0),
            Geodesic::half_plane(4.0, 5.0),
        ];
        assert!(minimal_closed_box(&gs).is_none());
    }

    #[test]
    fn json_round_trip() {
        let lam: Lamination = DiscreteLamination::new(vec![
            (Geodesic::to_infinity(0.5), 1.0),
            (Geodesic::half_plane(-3.0, -2.0), 0.25),
        ])
        .unwrap()
        .into();
        let s = serde_json::to_string(&lam).unwrap();
        assert!(s.contains(r#""type":"discrete"#));
        let back: Lamination = serde_json::from_str(&s).unwrap();
        assert!((back.total_mass() - 1.25).abs() < 1e-15);

        let band: Lamination = BandLamination::nested_fixture().into();
        let s = serde_json::to_string(&band).unwrap();
        let back: Lamination = serde_json::from_str(&s).unwrap();
        assert!((back.total_mass() - 1.0).abs() < 1e-15);
    }
}
