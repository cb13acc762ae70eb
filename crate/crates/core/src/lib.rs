//! Controlled teleportation of an arbitrary two-qubit state through a
//! five-qubit entangled channel.
//!
//! Alice holds the unknown pair `a1 a2` and the channel qubits `A1 A2`, Bob
//! holds `B1 B2` and Charlie holds `C`. After Alice's two Bell measurements
//! and Charlie's single-qubit measurement in the basis
//! `{cos t|0> + sin t|1>, sin t|0> - cos t|1>}`, Bob's pair is left in
//! `sigma^{ijn} |chi>` up to a fixed scale. The teleportation is faithful
//! exactly when every such transformation operator is unitary.
//!
//! Modules:
//!
//! * [`state`]: n-qubit pure states, the state catalog, tensor products,
//!   relabeling and partial projections.
//! * [`entanglement`]: reduced density matrices, purities and the
//!   maximal-multipartite-entanglement check.
//! * [`teleport`]: transformation operators, the unitarity criterion and a
//!   brute-force simulation of the full protocol.
//! * [`scan`]: all role assignments of a channel and the classification of
//!   Charlie's admissible measurement angles.
//! * [`cli`]: the command-line front end.
//!
//! Bit convention: amplitude index `k` of an n-qubit state is the big-endian
//! bit string of the qubit labels `1..=n`, so qubit 1 is the most
//! significant bit. A five-qubit channel relabeled into role order has
//! layout `A1 A2 B1 B2 C`.

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod matrix;
pub mod scan;
pub mod state;
pub mod teleport;

pub use entanglement::{
    mmes_check, partial_trace, purity, purity_eq8, purity_table, DensityMatrix, MmesVerdict,
    PurityReport,
};
pub use error::{Error, Result};
pub use matrix::Matrix4;
pub use scan::{
    classify_theta, combined_defect, enumerate_assignments, optimal_theta, scan, ScanEntry,
    ScanReport, ThetaClass, ThetaClassification,
};
pub use state::{named_state, Amplitude, NamedState, PureState};
pub use teleport::{
    criterion_check, eq5_factorization, is_unitary, simulate, transformation_operator, BellIndex,
    CharlieBasis, Correction, CriterionReport, Eq5Report, Layout, RoleAssignment,
    TeleportationRecord, TransformationOperator, UnitarityCheck,
};

/// Default tolerance on the Frobenius unitarity defect.
pub const DEFAULT_TOL: f64 = 1e-10;
