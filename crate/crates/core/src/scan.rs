//! Role-assignment scan and classification of Charlie's measurement angle.
//!
//! For a fixed assignment the combined defect
//! `d(t) = max(defect sigma^{111}(t), defect sigma^{112}(t))` is a
//! trigonometric polynomial of low degree with period pi. It is sampled on a
//! uniform grid over `[0, pi)`; every local minimum of the samples is then
//! refined by golden-section search. The grid is a numeric certificate, not
//! a symbolic proof.

use std::cmp::Ordering;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::entanglement::{partial_trace, purity};
use crate::error::{Error, Result};
use crate::matrix;
use crate::state::PureState;
use crate::teleport::{sigma_formula_arranged, CharlieBasis, RoleAssignment};

pub const GRID_POINTS: usize = 720;

/// Width of the final golden-section bracket, in radians.
pub const REFINE_TOL: f64 = 1e-12;

/// Roots closer than this are the same root.
pub const ROOT_MERGE: f64 = 1e-9;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaClass {
    /// Faithful for every angle.
    AllTheta,
    /// Faithful only at isolated angles.
    DiscreteTheta,
    /// Never faithful.
    None,
}

impl ThetaClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ThetaClass::AllTheta => "all_theta",
            ThetaClass::DiscreteTheta => "discrete_theta",
            ThetaClass::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaClassification {
    pub kind: ThetaClass,
    /// Angles in `[0, pi)` where the defect is within tolerance; only filled
    /// for [`ThetaClass::DiscreteTheta`].
    pub roots: Vec<f64>,
    pub min_defect: f64,
    pub argmin_theta: f64,
}

/// Combined defect of `sigma^{111}` and `sigma^{112}` on a channel already
/// arranged into role order.
fn defect_arranged(arranged: &PureState, theta: f64) -> f64 {
    let d = |outcome| {
        matrix::unitarity_defect(&sigma_formula_arranged(
            arranged,
            CharlieBasis { theta, outcome },
        ))
    };
    d(1).max(d(2))
}

/// `max(defect sigma^{111}(theta), defect sigma^{112}(theta))`.
pub fn combined_defect(channel: &PureState, assign: &RoleAssignment, theta: f64) -> Result<f64> {
    Ok(defect_arranged(&assign.arrange(channel)?, theta))
}

/// Minimizes `f` on `[lo, hi]`, assuming it is unimodal there.
fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    let fx = f(x);
    [(x1, f1), (x2, f2), (x, fx)]
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
}

fn canonical_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(PI);
    if t > PI - ROOT_MERGE {
        (t - PI).max(0.0)
    } else {
        t
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::BadTolerance(tol))
    }
}

/// Classifies the angles at which `assign` teleports faithfully.
pub fn classify_theta(
    channel: &PureState,
    assign: &RoleAssignment,
    tol: f64,
) -> Result<ThetaClassification> {
    check_tol(tol)?;
    let arranged = assign.arrange(channel)?;
    Ok(classify_arranged(&arranged, tol))
}

fn classify_arranged(arranged: &PureState, tol: f64) -> ThetaClassification {
    let step = PI / GRID_POINTS as f64;
    let f = |t: f64| defect_arranged(arranged, t);
    let grid: Vec<f64> = (0..GRID_POINTS).map(|k| f(k as f64 * step)).collect();

    let (grid_argmin, grid_min) = grid
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, &d)| (k as f64 * step, d))
        .unwrap();

    if grid.iter().all(|&d| d <= tol) {
        return ThetaClassification {
            kind: ThetaClass::AllTheta,
            roots: Vec::new(),
            min_defect: grid_min,
            argmin_theta: grid_argmin,
        };
    }

    let mut best = (grid_argmin, grid_min);
    let mut roots: Vec<(f64, f64)> = Vec::new();
    for k in 0..GRID_POINTS {
        let prev = grid[(k + GRID_POINTS - 1) % GRID_POINTS];
        let next = grid[(k + 1) % GRID_POINTS];
        if grid[k] > prev || grid[k] > next {
            continue;
        }
        let centre = k as f64 * step;
        let (t, d) = golden_section(f, centre - step, centre + step, REFINE_TOL);
        let t = canonical_angle(if d <= grid[k] { t } else { centre });
        let d = f(t);
        if d < best.1 {
            best = (t, d);
        }
        if d <= tol {
            roots.push((t, d));
        }
    }

    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(roots.len());
    for (t, d) in roots {
        match merged.last_mut() {
            Some(last) if t - last.0 < ROOT_MERGE => {
                if d < last.1 {
                    *last = (t, d);
                }
            }
            _ => merged.push((t, d)),
        }
    }
    // a root just below pi and one at 0 are the same basis
    if merged.len() > 1 {
        let first = merged[0];
        let last = merged[merged.len() - 1];
        if first.0 + PI - last.0 < ROOT_MERGE {
            if last.1 < first.1 {
                merged[0] = (canonical_angle(last.0 - PI), last.1);
            }
            merged.pop();
        }
    }

    ThetaClassification {
        kind: if merged.is_empty() {
            ThetaClass::None
        } else {
            ThetaClass::DiscreteTheta
        },
        roots: merged.iter().map(|r| r.0).collect(),
        min_defect: best.1,
        argmin_theta: best.0,
    }
}

/// The defect-minimizing angle in `[0, pi)`. When every angle works the
/// answer is 0 by convention.
pub fn optimal_theta(channel: &PureState, assign: &RoleAssignment, tol: f64) -> Result<(f64, f64)> {
    check_tol(tol)?;
    let arranged = assign.arrange(channel)?;
    let class = classify_arranged(&arranged, tol);
    Ok(match class.kind {
        ThetaClass::AllTheta => (0.0, defect_arranged(&arranged, 0.0)),
        _ => (class.argmin_theta, class.min_defect),
    })
}

/// All 30 assignments with ascending pairs inside each role, ordered by
/// Alice's pair and then Bob's pair.
pub fn enumerate_assignments() -> Vec<RoleAssignment> {
    let mut out = Vec::with_capacity(30);
    for a1 in 1..=5 {
        for a2 in a1 + 1..=5 {
            let rest: Vec<usize> = (1..=5).filter(|&q| q != a1 && q != a2).collect();
            for x in 0..3 {
                for y in x + 1..3 {
                    let charlie = rest[3 - x - y];
                    out.push(RoleAssignment {
                        alice: [a1, a2],
                        bob: [rest[x], rest[y]],
                        charlie,
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanEntry {
    pub assignment: RoleAssignment,
    pub classification: ThetaClassification,
    pub purity_alice: f64,
    pub purity_bob: f64,
}

impl Serialize for ScanEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            alice: [usize; 2],
            bob: [usize; 2],
            charlie: usize,
            kind: ThetaClass,
            roots: &'a [f64],
            min_defect: f64,
            argmin_theta: f64,
            purity_alice: f64,
            purity_bob: f64,
        }
        let c = &self.classification;
        Wire {
            alice: self.assignment.alice,
            bob: self.assignment.bob,
            charlie: self.assignment.charlie,
            kind: c.kind,
            roots: &c.roots,
            min_defect: c.min_defect,
            argmin_theta: c.argmin_theta,
            purity_alice: self.purity_alice,
            purity_bob: self.purity_bob,
        }
        .serialize(serializer)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn find(&self, assign: &RoleAssignment) -> Option<&ScanEntry> {
        self.entries.iter().find(|e| e.assignment == *assign)
    }
}

/// Classifies every assignment of a five-qubit channel. Entries come back
/// with `all_theta` first, then `discrete_theta`, then by ascending
/// minimum defect.
pub fn scan(channel: &PureState, tol: f64) -> Result<ScanReport> {
    check_tol(tol)?;
    let mut entries = enumerate_assignments()
        .into_par_iter()
        .map(|assignment| {
            let arranged = assignment.arrange(channel)?;
            Ok(ScanEntry {
                assignment,
                classification: classify_arranged(&arranged, tol),
                purity_alice: purity(&partial_trace(channel, &assignment.alice)?),
                purity_bob: purity(&partial_trace(channel, &assignment.bob)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|a, b| {
        let (ca, cb) = (&a.classification, &b.classification);
        match ca.kind.cmp(&cb.kind) {
            Ordering::Equal => ca.min_defect.total_cmp(&cb.min_defect),
            other => other,
        }
    });
    Ok(ScanReport { entries })
}
