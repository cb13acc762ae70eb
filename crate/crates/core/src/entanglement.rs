//! Reduced density matrices and purities.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::state::{bit_shift, PureState};

/// Dense `dim x dim` density matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest `|rho[i][j] - conj(rho[j][i])|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Tr(rho^2) before discarding the imaginary part.
    pub fn trace_of_square(&self) -> Complex64 {
        let d = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += self.get(i, j) * self.get(j, i);
            }
        }
        acc
    }
}

/// Reduced state on `keep`. The kept qubits index the matrix in the order
/// given, so `keep = [3, 1]` puts qubit 3 on the high bit.
pub fn partial_trace(state: &PureState, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.num_qubits();
    if keep.is_empty() {
        return Err(Error::InvalidKeepSet("keep set is empty".into()));
    }
    if keep.len() >= n {
        return Err(Error::InvalidKeepSet(format!(
            "keep set must leave at least one of the {n} qubits to trace out"
        )));
    }
    let mut seen = vec![false; n + 1];
    for &q in keep {
        if q == 0 || q > n {
            return Err(Error::QubitOutOfRange {
                label: q,
                num_qubits: n,
            });
        }
        if std::mem::replace(&mut seen[q], true) {
            return Err(Error::DuplicateQubit(q));
        }
    }
    let traced: Vec<usize> = (1..=n).filter(|q| !seen[*q]).collect();
    let compose = |sub: usize, labels: &[usize]| -> usize {
        let w = labels.len();
        labels
            .iter()
            .enumerate()
            .filter(|(m, _)| (sub >> (w - 1 - m)) & 1 == 1)
            .fold(0, |acc, (_, &q)| acc | (1 << bit_shift(q, n)))
    };
    let dim = 1usize << keep.len();
    let kept_offsets: Vec<usize> = (0..dim).map(|r| compose(r, keep)).collect();
    let env_offsets: Vec<usize> = (0..1usize << traced.len())
        .map(|e| compose(e, &traced))
        .collect();
    let psi = state.amplitudes();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in r..dim {
            let v: Complex64 = env_offsets
                .iter()
                .map(|&e| psi[kept_offsets[r] | e] * psi[kept_offsets[c] | e].conj())
                .sum();
            entries[r * dim + c] = v;
            entries[c * dim + r] = v.conj();
        }
    }
    Ok(DensityMatrix { dim, entries })
}

/// Tr(rho^2).
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.trace_of_square().re
}

/// Purity of the {1,2} reduction written out as four squared block norms
/// plus twice the six squared block overlaps of the 32 amplitudes. Kept
/// independent of [`partial_trace`] so the two can check each other.
pub fn purity_eq8(state: &PureState) -> Result<f64> {
    if state.num_qubits() != 5 {
        return Err(Error::WrongQubitCount {
            expected: 5,
            got: state.num_qubits(),
        });
    }
    let a = state.amplitudes();
    let block = |k: usize| &a[8 * k..8 * k + 8];
    let mut total = 0.0;
    for k in 0..4 {
        let s: f64 = block(k).iter().map(|x| x.norm_sqr()).sum();
        total += s * s;
    }
    for k in 0..4 {
        for l in k + 1..4 {
            let overlap: Complex64 = block(k)
                .iter()
                .zip(block(l))
                .map(|(x, y)| x * y.conj())
                .sum();
            total += 2.0 * overlap.norm_sqr();
        }
    }
    Ok(total)
}

/// The ten unordered pairs of a five-qubit register, ascending.
pub fn qubit_pairs() -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(10);
    for a in 1..=5 {
        for b in a + 1..=5 {
            pairs.push((a, b));
        }
    }
    pairs
}

/// Target pair purity for a maximally multipartite entangled five-qubit state.
pub const MMES_PAIR_PURITY: f64 = 0.25;

#[derive(Clone, Debug, PartialEq)]
pub struct MmesVerdict {
    pub mmes: bool,
    pub worst_pair: (usize, usize),
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PurityReport {
    pub pairs: BTreeMap<(usize, usize), f64>,
    pub singles: BTreeMap<usize, f64>,
    pub verdict: MmesVerdict,
}

impl PurityReport {
    pub fn pair(&self, a: usize, b: usize) -> f64 {
        self.pairs[&(a.min(b), a.max(b))]
    }
}

pub(crate) fn pair_key(pair: (usize, usize)) -> String {
    format!("{}{}", pair.0, pair.1)
}

impl Serialize for PurityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            pairs: BTreeMap<String, f64>,
            singles: BTreeMap<String, f64>,
            mmes: bool,
            worst_pair: String,
            max_deviation: f64,
        }
        Wire {
            pairs: self.pairs.iter().map(|(&p, &v)| (pair_key(p), v)).collect(),
            singles: self
                .singles
                .iter()
                .map(|(q, &v)| (q.to_string(), v))
                .collect(),
            mmes: self.verdict.mmes,
            worst_pair: pair_key(self.verdict.worst_pair),
            max_deviation: self.verdict.max_deviation,
        }
        .serialize(serializer)
    }
}

fn require_five(state: &PureState) -> Result<()> {
    if state.num_qubits() != 5 {
        return Err(Error::WrongQubitCount {
            expected: 5,
            got: state.num_qubits(),
        });
    }
    Ok(())
}

fn pair_purities(state: &PureState) -> Result<BTreeMap<(usize, usize), f64>> {
    qubit_pairs()
        .into_iter()
        .map(|(a, b)| Ok(((a, b), purity(&partial_trace(state, &[a, b])?))))
        .collect()
}

fn verdict_from(pairs: &BTreeMap<(usize, usize), f64>, tol: f64) -> MmesVerdict {
    let mut worst_pair = (1, 2);
    let mut max_deviation = f64::NEG_INFINITY;
    for (&pair, &p) in pairs {
        let deviation = (p - MMES_PAIR_PURITY).abs();
        // ties resolve to the first pair in ascending order
        if deviation > max_deviation + 1e-12 {
            max_deviation = deviation;
            worst_pair = pair;
        }
    }
    MmesVerdict {
        mmes: max_deviation <= tol,
        worst_pair,
        max_deviation,
    }
}

/// All ten pair purities and five single-qubit purities of a five-qubit
/// state; the MMES verdict uses `tol`.
pub fn purity_table(state: &PureState, tol: f64) -> Result<PurityReport> {
    require_five(state)?;
    let pairs = pair_purities(state)?;
    let singles = (1..=5)
        .map(|q| Ok((q, purity(&partial_trace(state, &[q])?))))
        .collect::<Result<_>>()?;
    let verdict = verdict_from(&pairs, tol);
    Ok(PurityReport {
        pairs,
        singles,
        verdict,
    })
}

/// True iff every pair purity lies within `tol` of 1/4. Single-qubit
/// purities are not gated.
pub fn mmes_check(state: &PureState, tol: f64) -> Result<MmesVerdict> {
    require_five(state)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::BadTolerance(tol));
    }
    Ok(verdict_from(&pair_purities(state)?, tol))
}
