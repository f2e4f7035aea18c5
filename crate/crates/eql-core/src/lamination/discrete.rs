//! Discrete measured laminations: finite weighted sets of pairwise
//! non-crossing geodesics with canonical ordering and merged duplicates.

use crate::boundary::EPS_PT;
use crate::error::LaminationError;
use crate::geodesic::Geodesic;
use serde::{Deserialize, Serialize};

/// Weights below this are treated as continuous-part dust, never as atoms.
pub const ATOM_FLOOR: f64 = 1e-15;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Leaf {
    pub g: Geodesic,
    pub w: f64,
}

/// A finite weighted set of pairwise disjoint geodesics.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Leaf>", into = "Vec<Leaf>")]
pub struct DiscreteLamination {
    leaves: Vec<Leaf>,
}

impl DiscreteLamination {
    pub fn empty() -> Self {
        DiscreteLamination { leaves: Vec::new() }
    }

    /// Validate weights and disjointness, merge duplicate geodesics by
    /// summing weights, and sort canonically by endpoint angles.
    pub fn new(leaves: Vec<(Geodesic, f64)>) -> Result<Self, LaminationError> {
        for (_, w) in &leaves {
            if !(w.is_finite() && *w > 0.0) {
                return Err(LaminationError::NonPositiveWeight { weight: *w });
            }
        }
        let mut merged: Vec<Leaf> = Vec::with_capacity(leaves.len());
        for (g, w) in leaves {
            match merged.iter_mut().find(|l| l.g.approx_eq(&g, EPS_PT)) {
                Some(l) => l.w += w,
                None => merged.push(Leaf { g, w }),
            }
        }
        for i in 0..merged.len() {
            for j in (i + 1)..merged.len() {
                if merged[i].g.crosses(&merged[j].g) {
                    return Err(LaminationError::CrossingLeaves { i, j });
                }
            }
        }
        merged.sort_by(|x, y| {
            let kx = x.g.sorted_angles();
            let ky = y.g.sorted_angles();
            kx.partial_cmp(&ky).unwrap()
        });
        Ok(DiscreteLamination { leaves: merged })
    }

    pub fn single(g: Geodesic, w: f64) -> Result<Self, LaminationError> {
        DiscreteLamination::new(vec![(g, w)])
    }

    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.leaves.iter().map(|l| l.w).sum()
    }

    /// `c·λ`; `c = 0` gives the empty lamination.
    pub fn scale(&self, c: f64) -> DiscreteLamination {
        assert!(c >= 0.0, "scaling factor must be nonnegative");
        if c == 0.0 {
            return DiscreteLamination::empty();
        }
        DiscreteLamination {
            leaves: self.leaves.iter().map(|l| Leaf { g: l.g, w: c * l.w }).collect(),
        }
    }

    /// Map every leaf by a Möbius map, weights unchanged.
    pub fn map_leaves(&self, m: &crate::mobius::MobiusMap) -> DiscreteLamination {
        let mapped = self.leaves.iter().map(|l| (m.apply_geodesic(&l.g), l.w)).collect();
        DiscreteLamination::new(mapped).expect("Möbius maps preserve disjointness")
    }

    /// Merge two laminations (used by fixtures; crossing leaves error).
    pub fn merge(&self, other: &DiscreteLamination) -> Result<DiscreteLamination, LaminationError> {
        let all = self
            .leaves
            .iter()
            .chain(other.leaves.iter())
            .map(|l| (l.g, l.w))
            .collect();
        DiscreteLamination::new(all)
    }
}

impl TryFrom<Vec<Leaf>> for DiscreteLamination {
    type Error = LaminationError;
    fn try_from(v: Vec<Leaf>) -> Result<Self, Self::Error> {
        DiscreteLamination::new(v.into_iter().map(|l| (l.g, l.w)).collect())
    }
}

impl From<DiscreteLamination> for Vec<Leaf> {
    fn from(d: DiscreteLamination) -> Vec<Leaf> {
        d.leaves
    }
}
