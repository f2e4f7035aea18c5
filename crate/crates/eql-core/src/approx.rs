//! Constructive discretization of a bounded lamination: split off atoms,
//! partition the support window into small-Liouville cells, shrink each
//! cell to its peak geodesics, and place one Dirac mass per cell — with a
//! complete per-box ledger for auditing the construction.

use crate::boundary::{ccw_offset, BoundaryPoint};
use crate::boxes::{GeodesicBox, SideKind};
use crate::error::ApproxError;
use crate::geodesic::Geodesic;
use crate::lamination::{DiscreteLamination, Lamination, LaminationOracle};
use serde::Serialize;
use std::f64::consts::LN_2;

/// A partition of a window box into generalized boxes with pairwise
/// disjoint interiors (half-open side discipline) covering the window.
#[derive(Clone, Debug)]
pub struct BoxPartition {
    pub boxes: Vec<GeodesicBox>,
}

/// Subdivide the window until every cell's Liouville measure is ≤ `max_l`.
/// Splits always bisect the longer corner arc in angle measure, so cell
/// diameters shrink to zero under repeated refinement.
pub fn partition_window(window: &GeodesicBox, max_l: f64) -> BoxPartition {
    assert!(max_l <= LN_2 + 1e-12, "cells must stay at or below log 2");
    let mut todo = vec![half_openized(window)];
    let mut done = Vec::new();
    while let Some(q) = todo.pop() {
        if q.liouville_or_zero() <= max_l + 1e-12 {
            done.push(q);
        } else {
            let (l, r) = bisect_longer_arc(&q);
            todo.push(l);
            todo.push(r);
        }
    }
    // Deterministic order: by first-corner angle, then second.
    done.sort_by(|x, y| {
        (x.a.angle(), x.c.angle())
            .partial_cmp(&(y.a.angle(), y.c.angle()))
            .unwrap()
    });
    BoxPartition { boxes: done }
}

/// Closed window → half-open cells that still cover it: both arcs drop
/// their upper endpoint except the boundary is restored by keeping the
/// original closed flags on the *window itself* when it is a single cell.
fn half_openized(window: &GeodesicBox) -> GeodesicBox {
    GeodesicBox {
        a: window.a,
        b: window.b,
        c: window.c,
        d: window.d,
        flags: window.flags,
    }
}

fn bisect_longer_arc(q: &GeodesicBox) -> (GeodesicBox, GeodesicBox) {
    let len1 = ccw_offset(q.a.angle(), q.b.angle());
    let len2 = ccw_offset(q.c.angle(), q.d.angle());
    if len1 >= len2 {
        let mid = BoundaryPoint::disk(q.a.angle() + 0.5 * len1);
        // [a, mid) ∪ [mid, b]: the left cell loses its upper end.
        let left = GeodesicBox {
            a: q.a,
            b: mid,
            c: q.c,
            d: q.d,
            flags: [open_hi(q.flags[0], true), q.flags[1]],
        };
        let right = GeodesicBox {
            a: mid,
            b: q.b,
            c: q.c,
            d: q.d,
            flags: [open_hi(q.flags[0], false), q.flags[1]],
        };
        (left, right)
    } else {
        let mid = BoundaryPoint::disk(q.c.angle() + 0.5 * len2);
        let left = GeodesicBox {
            a: q.a,
            b: q.b,
            c: q.c,
            d: mid,
            flags: [q.flags[0], open_hi(q.flags[1], true)],
        };
        let right = GeodesicBox {
            a: q.a,
            b: q.b,
            c: mid,
            d: q.d,
            flags: [q.flags[0], open_hi(q.flags[1], false)],
        };
        (left, right)
    }
}

/// Flag algebra for a split side: the lower half keeps the inherited lower
/// closure and opens its top; the upper half closes its bottom (the cut
/// point belongs to it) and keeps the inherited top closure.
fn open_hi(kind: SideKind, is_lower_half: bool) -> SideKind {
    let (lo, hi) = match kind {
        SideKind::Closed => (true, true),
        SideKind::OpenLo => (false, true),
        SideKind::OpenHi => (true, false),
        SideKind::Open => (false, false),
        SideKind::Point => return SideKind::Point,
    };
    let (new_lo, new_hi) = if is_lower_half { (lo, false) } else { (true, hi) };
    match (new_lo, new_hi) {
        (true, true) => SideKind::Closed,
        (false, true) => SideKind::OpenLo,
        (true, false) => SideKind::OpenHi,
        (false, false) => SideKind::Open,
    }
}

/// Result of shrinking a cell to the peak geodesics of the lamination.
pub enum PeakShrink {
    /// Cell meets no support, or only a single non-atomic point: dropped.
    Empty,
    /// Cell's support is a single atom: route it to the atomic part.
    Atom(Geodesic, f64),
    /// Shrunk generalized box whose extreme geodesics are support leaves.
    Box(GeodesicBox),
}

/// Shrink a partition cell onto the support of `lam` between its two peak
/// geodesics. Errors when the oracle reports peaks outside the cell.
pub fn peak_shrink(cell: &GeodesicBox, lam: &Lamination) -> Result<PeakShrink, ApproxError> {
    let peaks = lam.peaks_in(cell);
    match peaks.len() {
        0 => Ok(PeakShrink::Empty),
        1 => {
            let g = peaks[0];
            let atoms = lam.atoms_in(cell);
            if let Some((ag, aw)) = atoms.into_iter().find(|(ag, _)| ag.approx_eq(&g, 1e-9)) {
                Ok(PeakShrink::Atom(ag, aw))
            } else {
                Ok(PeakShrink::Empty)
            }
        }
        _ => {
            let (g1, g2) = (peaks[0], peaks[1]);
            let padded = padded_closed(cell, 1e-9);
            if !padded.contains_geodesic(&g1) || !padded.contains_geodesic(&g2) {
                return Err(ApproxError::OracleInconsistent);
            }
            let shrunk = crate::lamination::minimal_closed_box(&[g1, g2])
                .ok_or(ApproxError::OracleInconsistent)?;
            Ok(PeakShrink::Box(shrunk))
        }
    }
}

fn closed_version(q: &GeodesicBox) -> GeodesicBox {
    let closed = |k: SideKind| if k == SideKind::Point { k } else { SideKind::Closed };
    GeodesicBox { a: q.a, b: q.b, c: q.c, d: q.d, flags: [closed(q.flags[0]), closed(q.flags[1])] }
}

/// Closed copy of the cell with each arc widened by `pad` on both ends,
/// absorbing the bisection tolerance of band interval endpoints.
fn padded_closed(q: &GeodesicBox, pad: f64) -> GeodesicBox {
    let widen = |p: &BoundaryPoint, delta: f64| BoundaryPoint::disk(p.angle() + delta);
    let closed = closed_version(q);
    GeodesicBox {
        a: widen(&closed.a, -pad),
        b: widen(&closed.b, pad),
        c: widen(&closed.c, -pad),
        d: widen(&closed.d, pad),
        flags: closed.flags,
    }
}

/// One ledger row of the discretization.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerRow {
    /// The (shrunk) box this Dirac mass accounts for.
    pub cell: GeodesicBox,
    /// Continuous-part mass captured by the cell.
    pub mass: f64,
    /// The chosen support leaf carrying the mass.
    pub leaf: Geodesic,
}

/// Full output of the discretization pipeline.
#[derive(Clone, Debug)]
pub struct DiscretizationReport {
    pub n: u32,
    /// The discrete approximation λ_n.
    pub result: DiscreteLamination,
    /// Atoms kept verbatim (the trimmed atomic part λ⁰_n).
    pub kept_atoms: DiscreteLamination,
    /// Per-cell ledger of placed Dirac masses (the λ²_n part).
    pub ledger: Vec<LedgerRow>,
    /// Total atom mass trimmed into the continuous part (< 1/n).
    pub trimmed_tail: f64,
    /// Total mass of the input.
    pub input_mass: f64,
}

/// Approximate a bounded lamination by a discrete one, following the
/// density construction: per-box atom trimming with tail < 1/n, cell
/// refinement until each retained cell has continuous mass < 1/n, peak
/// shrinking, and one Dirac mass per cell at a support leaf.
pub fn discretize(lam: &Lamination, n: u32) -> Result<DiscretizationReport, ApproxError> {
    assert!(n >= 1);
    let input_mass = lam.total_mass();
    let window = lam.support_window();

    // Atom split: trim the smallest atoms with total below the tail cap;
    // they rejoin the continuous part and are recaptured by the cells.
    let all_atoms = match &window {
        Some(w) => lam.atoms_in(w),
        None => Vec::new(),
    };
    let tail_cap = 0.5 / (n as f64);
    let mut sorted = all_atoms.clone();
    sorted.sort_by(|x, y| {
        (x.1, x.0.sorted_angles())
            .partial_cmp(&(y.1, y.0.sorted_angles()))
            .unwrap()
    });
    let mut trimmed_tail = 0.0;
    let mut dropped: Vec<(Geodesic, f64)> = Vec::new();
    for (g, w) in &sorted {
        if trimmed_tail + w < tail_cap {
            trimmed_tail += w;
            dropped.push((*g, *w));
        } else {
            break;
        }
    }
    let kept: Vec<(Geodesic, f64)> = all_atoms
        .iter()
        .filter(|(g, _)| !dropped.iter().any(|(dg, _)| dg.approx_eq(g, 0.0)))
        .cloned()
        .collect();
    let kept_atoms = DiscreteLamination::new(kept).unwrap_or_else(|_| DiscreteLamination::empty());

    // Continuous part plus the dropped atoms.
    let mut cont = lam.continuous_part();
    if !dropped.is_empty() {
        let dropped_lam: Lamination = DiscreteLamination::new(dropped.clone())
            .map_err(|_| ApproxError::OracleInconsistent)?
            .into();
        cont = cont.plus(&dropped_lam);
    }
    let cont_mass = cont.total_mass();

    let mut ledger: Vec<LedgerRow> = Vec::new();
    if cont_mass > 0.0 {
        let w = window.ok_or(ApproxError::WindowRequired)?;
        // Partition, then refine cells whose continuous mass is ≥ 1/n.
        let target = 1.0 / (n as f64);
        let mut cells = partition_window(&w, LN_2).boxes;
        let mut retained: Vec<GeodesicBox> = Vec::new();
        let mut rounds = 0;
        while let Some(cell) = cells.pop() {
            let m = cont.box_mass(&cell);
            if m <= 0.0 {
                continue;
            }
            if m < target {
                retained.push(cell);
            } else {
                rounds += 1;
                if rounds > 200_000 {
                    return Err(ApproxError::RefinementStalled);
                }
                let (l, r) = bisect_longer_arc(&cell);
                cells.push(l);
                cells.push(r);
            }
        }
        retained.sort_by(|x, y| {
            (x.a.angle(), x.c.angle())
                .partial_cmp(&(y.a.angle(), y.c.angle()))
                .unwrap()
        });

        for cell in retained {
            match peak_shrink(&cell, &cont)? {
                PeakShrink::Empty => {}
                PeakShrink::Atom(g, w) => {
                    ledger.push(LedgerRow { cell: point_cell(&g), mass: w, leaf: g });
                }
                PeakShrink::Box(shrunk) => {
                    let mass = cont.box_mass(&cell);
                    if mass <= 0.0 {
                        continue;
                    }
                    // Deterministic leaf choice: the peak nearer the center
                    // of the shrunk box.
                    let leaf = choose_leaf(&shrunk, &cont);
                    ledger.push(LedgerRow { cell: shrunk, mass, leaf });
                }
            }
        }
    }

    let mut leaves: Vec<(Geodesic, f64)> = kept_atoms.leaves().iter().map(|l| (l.g, l.w)).collect();
    for row in &ledger {
        leaves.push((row.leaf, row.mass));
    }
    let result = DiscreteLamination::new(leaves).map_err(|_| ApproxError::OracleInconsistent)?;
    Ok(DiscretizationReport { n, result, kept_atoms, ledger, trimmed_tail, input_mass })
}

fn point_cell(g: &Geodesic) -> GeodesicBox {
    crate::lamination::thurston::point_box(g)
}

/// The support leaf carrying the cell's mass: of the two peaks, the one
/// nearer the cell's own middle leaf (deterministic tie-break to the
/// smaller canonical key).
fn choose_leaf(shrunk: &GeodesicBox, lam: &Lamination) -> Geodesic {
    let peaks = lam.peaks_in(shrunk);
    debug_assert!(!peaks.is_empty());
    if peaks.len() == 1 {
        return peaks[0];
    }
    let mid = Geodesic::new_unchecked(
        BoundaryPoint::disk(shrunk.a.angle() + 0.5 * ccw_offset(shrunk.a.angle(), shrunk.b.angle())),
        BoundaryPoint::disk(shrunk.c.angle() + 0.5 * ccw_offset(shrunk.c.angle(), shrunk.d.angle())),
    );
    let d0 = crate::geodesic::metric_geodesics(&peaks[0], &mid);
    let d1 = crate::geodesic::metric_geodesics(&peaks[1], &mid);
    if d0 <= d1 {
        peaks[0]
    } else {
        peaks[1]
    }
}

/// Count the ledger boxes meeting `q` without being contained in it.
pub fn overlap_census(boxes: &[GeodesicBox], q: &GeodesicBox) -> usize {
    boxes
        .iter()
        .filter(|b| b.intersects(q) && !b.contained_in(q))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamination::BandLamination;

    #[test]
    fn partition_respects_measure_bound() {
        let w = crate::boxes::q_star();
        let part = partition_window(&w, LN_2);
        assert_eq!(part.boxes.len(), 1, "Q* itself already has measure log 2");

        let part = partition_window(&w, 0.1);
        assert!(part.boxes.len() > 1);
        for b in &part.boxes {
            assert!(b.liouville_or_zero() <= 0.1 + 1e-12);
        }
    }

    #[test]
    fn partition_masses_are_additive() {
        let band: Lamination = BandLamination::nested_fixture().into();
        let w = band.support_window().unwrap();
        let part = partition_window(&w, 0.05);
        let total: f64 = part.boxes.iter().map(|b| band.box_mass(b)).sum();
        assert!(
            (total - band.box_mass(&w)).abs() < 1e-7,
            "partition masses sum to {total}"
        );
    }

    #[test]
    fn discretize_leaves_discrete_input_alone() {
        let lam: Lamination = DiscreteLamination::new(vec![
            (Geodesic::half_plane(-1.0, 1.0), 1.0),
            (Geodesic::half_plane(2.0, 3.0), 0.5),
        ])
        .unwrap()
        .into();
        let rep = discretize(&lam, 64).unwrap();
        assert_eq!(rep.result.len(), 2);
        assert!(rep.trimmed_tail < 1.0 / 64.0);
        assert!((rep.result.total_mass() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn discretize_band_ledger_invariants() {
        let band: Lamination = BandLamination::nested_fixture().into();
        for n in [4u32, 16, 64] {
            let rep = discretize(&band, n).unwrap();
            assert!(rep.trimmed_tail < 1.0 / n as f64);
            for row in &rep.ledger {
                assert!(row.mass < 1.0 / n as f64, "cell mass {} at n = {n}", row.mass);
                assert!(row.cell.liouville_or_zero() <= LN_2 + 1e-9);
                assert!(closed_version(&row.cell).contains_geodesic(&row.leaf));
            }
            let placed: f64 = rep.ledger.iter().map(|r| r.mass).sum();
            assert!(
                (placed + rep.kept_atoms.total_mass() - rep.input_mass).abs() < 1e-6,
                "mass conservation at n = {n}"
            );
        }
    }

    #[test]
    fn census_is_small_on_band_ledger() {
        let band: Lamination = BandLamination::nested_fixture().into();
        let rep = discretize(&band, 16).unwrap();
        let boxes: Vec<GeodesicBox> = rep.ledger.iter().map(|r| r.cell).collect();
        // Sweep a window of query boxes across the band.
        for k in 0..200 {
            let a = 1.0 + (k as f64) / 200.0;
            let q = crate::boxes::symmetric_log2_box(a);
            assert!(overlap_census(&boxes, &q) <= 2, "census at scale {a}");
        }
    }
}
