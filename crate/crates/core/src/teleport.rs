//! Transformation operators, the unitarity criterion and protocol
//! simulation.
//!
//! The joint system is seven qubits: the unknown pair `a1 a2` (labels 1, 2)
//! followed by the channel relabeled into role order `A1 A2 B1 B2 C`
//! (labels 3 to 7). Alice measures `(a1, A1)` and `(a2, A2)` in the Bell
//! basis, Charlie measures `C` in a real rotated basis, and Bob is left with
//!
//! ```text
//! r = sigma^{ijn} x / (4 sqrt 2)
//! ```
//!
//! where `x` holds the input coefficients. `sigma^{ijn}` in this form is the
//! *action* layout. The alternative layout (`Layout::Paper`), with rows indexed by Alice's two-bit
//! index and columns by Bob's, is its transpose.

use std::f64::consts::SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::entanglement::{partial_trace, purity};
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix2, Matrix4, Vector4};
use crate::state::{NamedState, PureState};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Entrywise tolerance used by [`eq5_factorization`].
pub const EQ5_TOL: f64 = 1e-10;

/// Relative pivot threshold below which an operator counts as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Probability below which an outcome is treated as never occurring.
pub const NULL_OUTCOME_PROB: f64 = 1e-24;

/// Which physical channel qubit plays each role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct RoleAssignment {
    pub alice: [usize; 2],
    pub bob: [usize; 2],
    pub charlie: usize,
}

impl RoleAssignment {
    pub fn new(alice: [usize; 2], bob: [usize; 2], charlie: usize) -> Result<Self> {
        let labels = [alice[0], alice[1], bob[0], bob[1], charlie];
        let mut seen = [false; 6];
        for &q in &labels {
            if !(1..=5).contains(&q) {
                return Err(Error::InvalidAssignment(format!(
                    "qubit {q} is outside 1..=5"
                )));
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::InvalidAssignment(format!(
                    "qubit {q} is assigned twice"
                )));
            }
        }
        Ok(Self {
            alice,
            bob,
            charlie,
        })
    }

    /// The assignment whose roles sit on qubits `1 2 | 3 4 | 5`.
    pub fn standard() -> Self {
        Self {
            alice: [1, 2],
            bob: [3, 4],
            charlie: 5,
        }
    }

    /// `perm[q - 1]` is the role-order label of physical qubit `q`.
    pub fn permutation(&self) -> [usize; 5] {
        let mut perm = [0; 5];
        let order = [
            self.alice[0],
            self.alice[1],
            self.bob[0],
            self.bob[1],
            self.charlie,
        ];
        for (position, &q) in order.iter().enumerate() {
            perm[q - 1] = position + 1;
        }
        perm
    }

    /// Relabels `channel` so its qubits read `A1 A2 B1 B2 C`.
    pub fn arrange(&self, channel: &PureState) -> Result<PureState> {
        require_channel(channel)?;
        channel.permute_qubits(&self.permutation())
    }

    pub fn swap_alice(&self) -> Self {
        Self {
            alice: [self.alice[1], self.alice[0]],
            ..*self
        }
    }

    pub fn swap_bob(&self) -> Self {
        Self {
            bob: [self.bob[1], self.bob[0]],
            ..*self
        }
    }
}

impl fmt::Display for RoleAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}|{}{}|{}",
            self.alice[0], self.alice[1], self.bob[0], self.bob[1], self.charlie
        )
    }
}

fn require_channel(channel: &PureState) -> Result<()> {
    if channel.num_qubits() != 5 {
        return Err(Error::WrongQubitCount {
            expected: 5,
            got: channel.num_qubits(),
        });
    }
    Ok(())
}

/// Outcome of one of Alice's Bell measurements.
///
/// 1 = (|00> + |11>)/√2, 2 = (|00> - |11>)/√2, 3 = (|01> + |10>)/√2,
/// 4 = (|01> - |10>)/√2. With this order outcome `k` costs Bob the Pauli
/// factor `I, Z, X, -iY` respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellIndex(u8);

impl BellIndex {
    pub const ALL: [BellIndex; 4] = [BellIndex(1), BellIndex(2), BellIndex(3), BellIndex(4)];

    pub fn new(value: u8) -> Result<Self> {
        if (1..=4).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::BadBellIndex(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn state(self) -> PureState {
        let named = match self.0 {
            1 => NamedState::BellPhiPlus,
            2 => NamedState::BellPhiMinus,
            3 => NamedState::BellPsiPlus,
            _ => NamedState::BellPsiMinus,
        };
        named.build().expect("catalog Bell state")
    }

    /// Pauli factor `I, Z, X, -iY` attached to this outcome.
    pub fn pauli(self) -> Matrix2 {
        let c = |re: f64| Complex64::new(re, 0.0);
        match self.0 {
            1 => [[c(1.0), c(0.0)], [c(0.0), c(1.0)]],
            2 => [[c(1.0), c(0.0)], [c(0.0), c(-1.0)]],
            3 => [[c(0.0), c(1.0)], [c(1.0), c(0.0)]],
            // -i * [[0, -i], [i, 0]]
            _ => [[c(0.0), c(-1.0)], [c(1.0), c(0.0)]],
        }
    }
}

/// Charlie's measurement vector: outcome 1 is `cos t|0> + sin t|1>`,
/// outcome 2 is `sin t|0> - cos t|1>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharlieBasis {
    pub theta: f64,
    pub outcome: u8,
}

impl CharlieBasis {
    pub fn new(theta: f64, outcome: u8) -> Result<Self> {
        if outcome == 1 || outcome == 2 {
            Ok(Self { theta, outcome })
        } else {
            Err(Error::BadCharlieOutcome(outcome))
        }
    }

    /// Components along `|0>` and `|1>`.
    pub fn components(&self) -> (f64, f64) {
        let (s, c) = self.theta.sin_cos();
        if self.outcome == 1 {
            (c, s)
        } else {
            (s, -c)
        }
    }

    pub fn state(&self) -> PureState {
        let (c0, c1) = self.components();
        PureState::from_real(1, &[c0, c1]).expect("unit vector")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    /// Acts on the column of input coefficients.
    Action,
    /// Rows by Alice's index, columns by Bob's (transpose of `Action`).
    Paper,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformationOperator {
    action: Matrix4,
    pub i: BellIndex,
    pub j: BellIndex,
    pub n: u8,
    pub theta: f64,
}

impl TransformationOperator {
    pub fn matrix(&self, layout: Layout) -> Matrix4 {
        match layout {
            Layout::Action => self.action,
            Layout::Paper => matrix::transpose(&self.action),
        }
    }

    pub fn action(&self) -> &Matrix4 {
        &self.action
    }

    pub fn defect(&self) -> f64 {
        matrix::unitarity_defect(&self.action)
    }
}

/// `sigma^{11n}` read directly off the role-ordered channel amplitudes:
/// entry `[k][b]` in `Layout::Paper` is `2√2 (a_{k b 0} u0 + a_{k b 1} u1)` with
/// `(u0, u1)` Charlie's measurement vector.
pub fn sigma_formula(
    channel: &PureState,
    assign: &RoleAssignment,
    n: u8,
    theta: f64,
) -> Result<Matrix4> {
    let basis = CharlieBasis::new(theta, n)?;
    let arranged = assign.arrange(channel)?;
    Ok(sigma_formula_arranged(&arranged, basis))
}

pub(crate) fn sigma_formula_arranged(arranged: &PureState, basis: CharlieBasis) -> Matrix4 {
    let (u0, u1) = basis.components();
    let a = arranged.amplitudes();
    let mut action = [[ZERO; 4]; 4];
    for (b, row) in action.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate() {
            let idx = k << 3 | b << 1;
            *entry = 2.0 * SQRT_2 * (a[idx] * u0 + a[idx | 1] * u1);
        }
    }
    action
}

/// The seven-qubit bra `<phi^i| <phi^j| <phi_C^n|` and the joint labels it
/// acts on: `(a1, A1)`, `(a2, A2)`, `C`.
fn measurement_bra(i: BellIndex, j: BellIndex, basis: CharlieBasis) -> (PureState, [usize; 5]) {
    let bra = i
        .state()
        .tensor(&j.state())
        .and_then(|s| s.tensor(&basis.state()))
        .expect("five-qubit bra");
    (bra, [1, 3, 2, 4, 7])
}

/// Transformation operator for outcome `(i, j, n)`, built by projecting the
/// joint state `|e_k> (x) channel` for each input basis vector `e_k`.
pub fn transformation_operator(
    channel: &PureState,
    assign: &RoleAssignment,
    i: BellIndex,
    j: BellIndex,
    n: u8,
    theta: f64,
) -> Result<TransformationOperator> {
    let basis = CharlieBasis::new(theta, n)?;
    let arranged = assign.arrange(channel)?;
    Ok(TransformationOperator {
        action: projected_operator(&arranged, i, j, basis)?,
        i,
        j,
        n,
        theta,
    })
}

fn projected_operator(
    arranged: &PureState,
    i: BellIndex,
    j: BellIndex,
    basis: CharlieBasis,
) -> Result<Matrix4> {
    let (bra, labels) = measurement_bra(i, j, basis);
    let mut action = [[ZERO; 4]; 4];
    // column k is the residual for input basis state k
    #[allow(clippy::needless_range_loop)]
    for k in 0..4 {
        let joint = PureState::basis(2, k)?.tensor(arranged)?;
        let residual = joint.project_subsystem(&labels, &bra)?;
        for (b, amp) in residual.amplitudes.iter().enumerate() {
            action[b][k] = 4.0 * SQRT_2 * amp;
        }
    }
    Ok(action)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitarityCheck {
    pub unitary: bool,
    pub defect: f64,
}

/// Frobenius defect `||M^dagger M - I||`; unitary iff the defect is at most
/// `tol`. Layout does not matter: the transpose has the same defect.
pub fn is_unitary(op: &TransformationOperator, tol: f64) -> UnitarityCheck {
    check_matrix(op.action(), tol)
}

pub fn check_matrix(m: &Matrix4, tol: f64) -> UnitarityCheck {
    let defect = matrix::unitarity_defect(m);
    UnitarityCheck {
        unitary: defect <= tol,
        defect,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub assignment: RoleAssignment,
    pub theta: f64,
    pub sigma111_defect: f64,
    pub sigma112_defect: f64,
    pub pass: bool,
    pub purity_alice_pair: f64,
    pub purity_bob_pair: f64,
}

/// Both `sigma^{111}` and `sigma^{112}` unitary within `tol`. The other 30
/// operators differ from these by Pauli factors, so this decides all 32.
pub fn criterion_check(
    channel: &PureState,
    assign: &RoleAssignment,
    theta: f64,
    tol: f64,
) -> Result<CriterionReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::BadTolerance(tol));
    }
    let arranged = assign.arrange(channel)?;
    let d1 = matrix::unitarity_defect(&sigma_formula_arranged(
        &arranged,
        CharlieBasis { theta, outcome: 1 },
    ));
    let d2 = matrix::unitarity_defect(&sigma_formula_arranged(
        &arranged,
        CharlieBasis { theta, outcome: 2 },
    ));
    Ok(CriterionReport {
        assignment: *assign,
        theta,
        sigma111_defect: d1,
        sigma112_defect: d2,
        pass: d1 <= tol && d2 <= tol,
        purity_alice_pair: purity(&partial_trace(channel, &assign.alice)?),
        purity_bob_pair: purity(&partial_trace(channel, &assign.bob)?),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eq5Report {
    pub assignment: RoleAssignment,
    pub theta: f64,
    pub holds: bool,
    pub max_deviation: f64,
    pub labels_checked: usize,
}

/// Checks that every projected `sigma^{ijn}` equals
/// `sigma^{11n} (P_i (x) P_j)` entrywise within [`EQ5_TOL`], with the
/// right-hand side taken from [`sigma_formula`].
pub fn eq5_factorization(
    channel: &PureState,
    assign: &RoleAssignment,
    theta: f64,
) -> Result<Eq5Report> {
    let arranged = assign.arrange(channel)?;
    let mut max_deviation = 0.0f64;
    let mut labels_checked = 0;
    for n in [1u8, 2] {
        let basis = CharlieBasis { theta, outcome: n };
        let base = sigma_formula_arranged(&arranged, basis);
        for i in BellIndex::ALL {
            for j in BellIndex::ALL {
                let projected = projected_operator(&arranged, i, j, basis)?;
                let factored = matrix::mul(&base, &matrix::kron(&i.pauli(), &j.pauli()));
                max_deviation = max_deviation.max(matrix::max_abs_diff(&projected, &factored));
                labels_checked += 1;
            }
        }
    }
    Ok(Eq5Report {
        assignment: *assign,
        theta,
        holds: max_deviation <= EQ5_TOL,
        max_deviation,
        labels_checked,
    })
}

/// How Bob undoes the transformation operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Correction {
    /// Apply `sigma^dagger`; equals the inverse up to scale when unitary.
    #[default]
    Adjoint,
    /// Apply `sigma^{-1}`; singular outcomes are flagged unrecoverable.
    Inverse,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TeleportationRecord {
    pub outcome: (BellIndex, BellIndex, u8),
    pub probability: f64,
    /// Bob's normalized state before correction; `None` for a null outcome.
    pub bob_raw: Option<PureState>,
    /// Bob's normalized state after correction.
    pub bob_corrected: Option<PureState>,
    pub fidelity: f64,
    /// False when the outcome never occurs or the inverse does not exist.
    pub recoverable: bool,
}

impl Serialize for TeleportationRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            outcome: [u8; 3],
            probability: f64,
            fidelity: f64,
            recoverable: bool,
        }
        Wire {
            outcome: [
                self.outcome.0.value(),
                self.outcome.1.value(),
                self.outcome.2,
            ],
            probability: self.probability,
            fidelity: self.fidelity,
            recoverable: self.recoverable,
        }
        .serialize(serializer)
    }
}

fn fidelity(input: &PureState, state: &PureState) -> f64 {
    input
        .inner_product(state)
        .map(|o| o.norm_sqr())
        .unwrap_or(0.0)
}

/// Runs the protocol for all 32 outcomes `(i, j, n)`, ordered with `i`
/// slowest and `n` fastest.
pub fn simulate(
    channel: &PureState,
    assign: &RoleAssignment,
    theta: f64,
    input: &PureState,
    correction: Correction,
) -> Result<Vec<TeleportationRecord>> {
    if input.num_qubits() != 2 {
        return Err(Error::WrongQubitCount {
            expected: 2,
            got: input.num_qubits(),
        });
    }
    let arranged = assign.arrange(channel)?;
    let joint = input.tensor(&arranged)?;
    let mut records = Vec::with_capacity(32);
    for i in BellIndex::ALL {
        for j in BellIndex::ALL {
            for n in [1u8, 2] {
                let basis = CharlieBasis { theta, outcome: n };
                let (bra, labels) = measurement_bra(i, j, basis);
                let residual = joint.project_subsystem(&labels, &bra)?;
                let probability = residual.norm_sqr();
                let outcome = (i, j, n);
                if probability <= NULL_OUTCOME_PROB {
                    records.push(TeleportationRecord {
                        outcome,
                        probability,
                        bob_raw: None,
                        bob_corrected: None,
                        fidelity: 0.0,
                        recoverable: false,
                    });
                    continue;
                }
                let raw = residual.to_state()?;
                let sigma = projected_operator(&arranged, i, j, basis)?;
                let r: Vector4 = std::array::from_fn(|b| residual.amplitudes[b]);
                let undo = match correction {
                    Correction::Adjoint => Some(matrix::adjoint(&sigma)),
                    Correction::Inverse => matrix::inverse(&sigma, SINGULAR_TOL),
                };
                let corrected = undo
                    .map(|u| matrix::mul_vec(&u, &r))
                    .and_then(|v| PureState::new(2, v.to_vec()).ok());
                let record = match corrected {
                    Some(state) => TeleportationRecord {
                        outcome,
                        probability,
                        fidelity: fidelity(input, &state),
                        bob_raw: Some(raw),
                        bob_corrected: Some(state),
                        recoverable: true,
                    },
                    None => TeleportationRecord {
                        outcome,
                        probability,
                        fidelity: fidelity(input, &raw),
                        bob_raw: Some(raw),
                        bob_corrected: None,
                        recoverable: false,
                    },
                };
                records.push(record);
            }
        }
    }
    Ok(records)
}

/// Probability-weighted mean fidelity over the records.
pub fn average_fidelity(records: &[TeleportationRecord]) -> f64 {
    let total: f64 = records.iter().map(|r| r.probability).sum();
    records
        .iter()
        .map(|r| r.probability * r.fidelity)
        .sum::<f64>()
        / total
}

/// Input state from four complex coefficients, normalized.
pub fn input_state(coefficients: [Complex64; 4]) -> Result<PureState> {
    PureState::new(2, coefficients.to_vec())
}
