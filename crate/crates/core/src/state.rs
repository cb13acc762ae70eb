//! Pure n-qubit states as dense complex amplitude vectors.
//!
//! Index convention: amplitude `k` belongs to the basis ket whose bit string,
//! read left to right, lists qubits `1, 2, ..., n`. Qubit 1 is the most
//! significant bit of `k`. Every other module relies on this.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Amplitude = Complex64;

/// Largest supported register. The protocol needs seven qubits.
pub const MAX_QUBITS: usize = 20;

/// Norm deviation above which [`PureState::new`] reports that it rescaled.
pub const RENORM_REPORT_TOL: f64 = 1e-12;

/// Norm deviation accepted by [`PureState::new_strict`] and the state file
/// readers before the input is rejected as wrong data.
pub const NORM_REJECT_TOL: f64 = 1e-6;

/// Bit position (from the least significant end) of a 1-based qubit label.
#[inline]
pub(crate) fn bit_shift(label: usize, num_qubits: usize) -> usize {
    num_qubits - label
}

#[derive(Clone, Debug)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Amplitude>,
    renormalized: bool,
}

/// Exact amplitude equality; the renormalization flag is ignored.
impl PartialEq for PureState {
    fn eq(&self, other: &Self) -> bool {
        self.num_qubits == other.num_qubits && self.amplitudes == other.amplitudes
    }
}

fn check_qubit_count(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::BadQubitCount {
            got: num_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

fn norm_sqr(amplitudes: &[Amplitude]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

impl PureState {
    /// Builds a state from raw amplitudes, dividing by the norm.
    ///
    /// Any nonzero vector is accepted; [`PureState::renormalized`] tells
    /// whether the input norm was off by more than [`RENORM_REPORT_TOL`].
    pub fn new(num_qubits: usize, amplitudes: Vec<Amplitude>) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        let expected = 1usize << num_qubits;
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                num_qubits,
                expected,
                got: amplitudes.len(),
            });
        }
        if let Some(index) = amplitudes
            .iter()
            .position(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        let n2 = norm_sqr(&amplitudes);
        if n2 == 0.0 {
            return Err(Error::ZeroVector);
        }
        let renormalized = (n2 - 1.0).abs() > RENORM_REPORT_TOL;
        let amplitudes = if renormalized {
            let scale = 1.0 / n2.sqrt();
            amplitudes.into_iter().map(|a| a * scale).collect()
        } else {
            amplitudes
        };
        Ok(Self {
            num_qubits,
            amplitudes,
            renormalized,
        })
    }

    /// Like [`PureState::new`] but rejects input whose squared norm differs
    /// from 1 by more than `limit`.
    pub fn new_strict(num_qubits: usize, amplitudes: Vec<Amplitude>, limit: f64) -> Result<Self> {
        let n2 = norm_sqr(&amplitudes);
        if n2.is_finite() && n2 > 0.0 && (n2 - 1.0).abs() > limit {
            return Err(Error::NotNormalized {
                deviation: (n2 - 1.0).abs(),
                limit,
            });
        }
        Self::new(num_qubits, amplitudes)
    }

    /// Real amplitudes, convenience for the catalog and tests.
    pub fn from_real(num_qubits: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(
            num_qubits,
            amplitudes.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        )
    }

    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::LengthMismatch {
                num_qubits,
                expected: dim,
                got: index + 1,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self::new(num_qubits, amplitudes)
    }

    /// Builds a state from a sparse list of `(bit string, amplitude)` terms.
    pub fn from_kets(num_qubits: usize, terms: &[(&str, Amplitude)]) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        for (line, (bits, amp)) in terms.iter().enumerate() {
            let index = parse_bitstring(bits, num_qubits).map_err(|message| Error::Parse {
                line: line + 1,
                message,
            })?;
            amplitudes[index] += amp;
        }
        Self::new(num_qubits, amplitudes)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amplitudes[index]
    }

    /// Whether construction had to rescale the input by more than
    /// [`RENORM_REPORT_TOL`].
    pub fn renormalized(&self) -> bool {
        self.renormalized
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// `<self|other> = sum_k conj(self_k) other_k`.
    pub fn inner_product(&self, other: &PureState) -> Result<Amplitude> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|self> (x) |other>`; `self` keeps labels `1..=n_self`, `other`
    /// moves to `n_self+1..`.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let num_qubits = self.num_qubits + other.num_qubits;
        check_qubit_count(num_qubits)?;
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        Ok(PureState {
            num_qubits,
            amplitudes,
            renormalized: false,
        })
    }

    /// Relabels qubits. `perm[q - 1]` is the new label of old qubit `q`, so
    /// the bit old qubit `q` carried ends up at label `perm[q - 1]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<PureState> {
        let n = self.num_qubits;
        validate_permutation(perm, n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (old_index, amp) in self.amplitudes.iter().enumerate() {
            let mut new_index = 0usize;
            for (q0, &target) in perm.iter().enumerate() {
                let bit = (old_index >> bit_shift(q0 + 1, n)) & 1;
                new_index |= bit << bit_shift(target, n);
            }
            amplitudes[new_index] = *amp;
        }
        Ok(PureState {
            num_qubits: n,
            amplitudes,
            renormalized: false,
        })
    }

    /// Applies `<bra|` to the qubits listed in `labels` (bra qubit `m` acts
    /// on label `labels[m]`) and returns the unnormalized state left on the
    /// remaining qubits, in ascending label order.
    pub fn project_subsystem(&self, labels: &[usize], bra: &PureState) -> Result<Residual> {
        let n = self.num_qubits;
        validate_labels(labels, n)?;
        if bra.num_qubits != labels.len() {
            return Err(Error::DimensionMismatch {
                left: bra.num_qubits,
                right: labels.len(),
            });
        }
        let remaining: Vec<usize> = (1..=n).filter(|q| !labels.contains(q)).collect();
        let measured_masks: Vec<usize> = labels.iter().map(|&q| 1 << bit_shift(q, n)).collect();
        let rest_masks: Vec<usize> = remaining.iter().map(|&q| 1 << bit_shift(q, n)).collect();
        let spread = |sub_index: usize, masks: &[usize]| -> usize {
            let width = masks.len();
            masks
                .iter()
                .enumerate()
                .filter(|(m, _)| (sub_index >> (width - 1 - m)) & 1 == 1)
                .fold(0, |acc, (_, mask)| acc | mask)
        };
        let measured_offsets: Vec<usize> =
            (0..bra.dim()).map(|b| spread(b, &measured_masks)).collect();
        let amplitudes = (0..1usize << remaining.len())
            .map(|r| {
                // zero remaining qubits leaves the scalar overlap at r = 0
                let base = spread(r, &rest_masks);
                measured_offsets
                    .iter()
                    .zip(&bra.amplitudes)
                    .map(|(&off, b)| b.conj() * self.amplitudes[base | off])
                    .sum()
            })
            .collect();
        Ok(Residual {
            labels: remaining,
            amplitudes,
        })
    }
}

/// Unnormalized state left after a partial projection. Its squared norm is
/// the probability of the projected outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    /// Original labels of the remaining qubits, ascending.
    pub labels: Vec<usize>,
    pub amplitudes: Vec<Amplitude>,
}

impl Residual {
    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    /// Normalizes into a [`PureState`]; fails on a zero residual.
    pub fn to_state(&self) -> Result<PureState> {
        PureState::new(self.labels.len(), self.amplitudes.clone())
    }
}

fn validate_labels(labels: &[usize], num_qubits: usize) -> Result<()> {
    let mut seen = vec![false; num_qubits + 1];
    for &label in labels {
        if label == 0 || label > num_qubits {
            return Err(Error::QubitOutOfRange { label, num_qubits });
        }
        if seen[label] {
            return Err(Error::DuplicateQubit(label));
        }
        seen[label] = true;
    }
    Ok(())
}

fn validate_permutation(perm: &[usize], num_qubits: usize) -> Result<()> {
    if perm.len() != num_qubits {
        return Err(Error::InvalidPermutation(format!(
            "expected {num_qubits} entries, got {}",
            perm.len()
        )));
    }
    validate_labels(perm, num_qubits).map_err(|e| Error::InvalidPermutation(e.to_string()))
}

pub(crate) fn parse_bitstring(bits: &str, num_qubits: usize) -> std::result::Result<usize, String> {
    if bits.len() != num_qubits {
        return Err(format!(
            "bit string `{bits}` has {} bits, expected {num_qubits}",
            bits.len()
        ));
    }
    bits.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(format!("bit string `{bits}` contains `{c}`")),
    })
}

/// Catalog of the named states.
///
/// Bell states use the common naming: `Phi±` = (|00> ± |11>)/√2 and
/// `Psi±` = (|01> ± |10>)/√2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedState {
    /// Five-qubit state of Man, Xia and An with sixteen ±1/4 terms.
    ManM5,
    /// Five-qubit Brown state,
    /// `(|001>Psi- + |010>Phi- + |100>Psi+ + |111>Phi+) / 2`.
    Brown,
    Ghz5,
    BellPhiPlus,
    BellPhiMinus,
    BellPsiPlus,
    BellPsiMinus,
    ProductZero(usize),
}

impl NamedState {
    pub const KEYS: [&'static str; 8] = [
        "man_m5",
        "brown",
        "ghz5",
        "bell_phi_plus",
        "bell_phi_minus",
        "bell_psi_plus",
        "bell_psi_minus",
        "product_zero_n",
    ];

    /// Catalog entries used by the exhaustive checks, with `|00000>` as the
    /// five-qubit product state.
    pub fn five_qubit_catalog() -> [NamedState; 4] {
        [
            NamedState::ManM5,
            NamedState::Brown,
            NamedState::Ghz5,
            NamedState::ProductZero(5),
        ]
    }

    pub fn build(self) -> Result<PureState> {
        let h = FRAC_1_SQRT_2;
        let c = |re: f64| Complex64::new(re, 0.0);
        match self {
            NamedState::ManM5 => {
                const TERMS: [(&str, f64); 16] = [
                    ("00000", 1.0),
                    ("00001", 1.0),
                    ("00110", 1.0),
                    ("00111", -1.0),
                    ("01010", 1.0),
                    ("01011", 1.0),
                    ("01100", -1.0),
                    ("01101", 1.0),
                    ("10010", -1.0),
                    ("10011", 1.0),
                    ("10100", 1.0),
                    ("10101", 1.0),
                    ("11000", 1.0),
                    ("11001", -1.0),
                    ("11110", 1.0),
                    ("11111", 1.0),
                ];
                let terms: Vec<_> = TERMS.iter().map(|&(k, s)| (k, c(0.25 * s))).collect();
                PureState::from_kets(5, &terms)
            }
            NamedState::Brown => {
                let pairs = [
                    ("001", NamedState::BellPsiMinus),
                    ("010", NamedState::BellPhiMinus),
                    ("100", NamedState::BellPsiPlus),
                    ("111", NamedState::BellPhiPlus),
                ];
                let mut amplitudes = vec![c(0.0); 32];
                for (prefix, bell) in pairs {
                    let head = PureState::from_kets(3, &[(prefix, c(1.0))])?;
                    let term = head.tensor(&bell.build()?)?;
                    for (acc, a) in amplitudes.iter_mut().zip(term.amplitudes()) {
                        *acc += 0.5 * a;
                    }
                }
                PureState::new(5, amplitudes)
            }
            NamedState::Ghz5 => PureState::from_kets(5, &[("00000", c(h)), ("11111", c(h))]),
            NamedState::BellPhiPlus => PureState::from_kets(2, &[("00", c(h)), ("11", c(h))]),
            NamedState::BellPhiMinus => PureState::from_kets(2, &[("00", c(h)), ("11", c(-h))]),
            NamedState::BellPsiPlus => PureState::from_kets(2, &[("01", c(h)), ("10", c(h))]),
            NamedState::BellPsiMinus => PureState::from_kets(2, &[("01", c(h)), ("10", c(-h))]),
            NamedState::ProductZero(n) => PureState::basis(n, 0),
        }
    }
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "man_m5" => NamedState::ManM5,
            "brown" => NamedState::Brown,
            "ghz5" => NamedState::Ghz5,
            "bell_phi_plus" => NamedState::BellPhiPlus,
            "bell_phi_minus" => NamedState::BellPhiMinus,
            "bell_psi_plus" => NamedState::BellPsiPlus,
            "bell_psi_minus" => NamedState::BellPsiMinus,
            "product_zero" => NamedState::ProductZero(5),
            other => match other.strip_prefix("product_zero_") {
                Some(n) => match n.parse::<usize>() {
                    Ok(n) if (1..=MAX_QUBITS).contains(&n) => NamedState::ProductZero(n),
                    _ => return Err(Error::UnknownState(s.to_string())),
                },
                None => return Err(Error::UnknownState(s.to_string())),
            },
        })
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedState::ManM5 => f.write_str("man_m5"),
            NamedState::Brown => f.write_str("brown"),
            NamedState::Ghz5 => f.write_str("ghz5"),
            NamedState::BellPhiPlus => f.write_str("bell_phi_plus"),
            NamedState::BellPhiMinus => f.write_str("bell_phi_minus"),
            NamedState::BellPsiPlus => f.write_str("bell_psi_plus"),
            NamedState::BellPsiMinus => f.write_str("bell_psi_minus"),
            NamedState::ProductZero(n) => write!(f, "product_zero_{n}"),
        }
    }
}

/// Looks up a catalog state by key (see [`NamedState::KEYS`]).
pub fn named_state(name: &str) -> Result<PureState> {
    name.parse::<NamedState>()?.build()
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    num_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

impl Serialize for PureState {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        StateFile {
            num_qubits: self.num_qubits,
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        }
        .serialize(serializer)
    }
}

/// Parses `{"num_qubits": n, "amplitudes": [[re, im], ...]}`.
pub fn parse_state_json(contents: &str) -> Result<PureState> {
    let file: StateFile = serde_json::from_str(contents).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let amplitudes = file
        .amplitudes
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    PureState::new_strict(file.num_qubits, amplitudes, NORM_REJECT_TOL)
}

/// Parses the sparse text form: one `bitstring re im` line per nonzero
/// amplitude. Blank lines and lines starting with `#` are skipped.
pub fn parse_state_text(contents: &str) -> Result<PureState> {
    let mut num_qubits = None;
    let mut terms: Vec<(usize, Complex64)> = Vec::new();
    for (i, raw) in contents.lines().enumerate() {
        let line = i + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(format!(
                "expected `bitstring re im`, found {} fields",
                fields.len()
            )));
        }
        let n = *num_qubits.get_or_insert(fields[0].len());
        let index = parse_bitstring(fields[0], n).map_err(err)?;
        let re: f64 = fields[1]
            .parse()
            .map_err(|_| err(format!("bad real part `{}`", fields[1])))?;
        let im: f64 = fields[2]
            .parse()
            .map_err(|_| err(format!("bad imaginary part `{}`", fields[2])))?;
        terms.push((index, Complex64::new(re, im)));
    }
    let n = num_qubits.ok_or(Error::Parse {
        line: 0,
        message: "no amplitudes".into(),
    })?;
    check_qubit_count(n)?;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (index, amp) in terms {
        amplitudes[index] += amp;
    }
    PureState::new_strict(n, amplitudes, NORM_REJECT_TOL)
}

/// Picks the JSON reader when the content starts with `{`, the text reader
/// otherwise.
pub fn parse_state_file(contents: &str) -> Result<PureState> {
    if contents.trim_start().starts_with('{') {
        parse_state_json(contents)
    } else {
        parse_state_text(contents)
    }
}
