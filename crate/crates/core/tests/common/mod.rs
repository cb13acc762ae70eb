#![allow(dead_code, clippy::needless_range_loop)]

//! Test-only oracles. Nothing here calls the library's projection,
//! permutation or partial-trace code.

use num_complex::Complex64;
use qtele::{PureState, RoleAssignment};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub type C = Complex64;

pub fn c(re: f64) -> C {
    Complex64::new(re, 0.0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_amplitudes(rng: &mut ChaCha8Rng, len: usize) -> Vec<C> {
    (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect()
}

pub fn random_state(rng: &mut ChaCha8Rng, num_qubits: usize) -> PureState {
    PureState::new(num_qubits, random_amplitudes(rng, 1 << num_qubits)).unwrap()
}

/// Haar-ish single-qubit unitary from a normalized complex pair.
pub fn random_unitary2(rng: &mut ChaCha8Rng) -> [[C; 2]; 2] {
    let v = random_amplitudes(rng, 2);
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let (a, b) = (v[0] / n, v[1] / n);
    [[a, -b.conj()], [b, a.conj()]]
}

/// Applies `u` to 1-based qubit `q` of an n-qubit state.
pub fn apply_single(state: &PureState, q: usize, u: &[[C; 2]; 2]) -> PureState {
    let n = state.num_qubits();
    let shift = n - q;
    let src = state.amplitudes();
    let mut out = vec![c(0.0); src.len()];
    for k in 0..src.len() {
        let bit = (k >> shift) & 1;
        let k0 = k & !(1 << shift);
        let k1 = k0 | (1 << shift);
        out[k] = u[bit][0] * src[k0] + u[bit][1] * src[k1];
    }
    PureState::new(n, out).unwrap()
}

/// Bit `q` (1-based, big-endian) of index `k` in an n-qubit register.
pub fn bit(k: usize, q: usize, n: usize) -> usize {
    (k >> (n - q)) & 1
}

/// Shuffle oracle: new index gets old qubit `q`'s bit at `perm[q-1]`.
pub fn shuffle_oracle(state: &PureState, perm: &[usize]) -> Vec<C> {
    let n = state.num_qubits();
    let mut out = vec![c(0.0); state.dim()];
    for k in 0..state.dim() {
        let bits: Vec<usize> = (1..=n).map(|q| bit(k, q, n)).collect();
        let mut new_bits = vec![0; n];
        for q in 1..=n {
            new_bits[perm[q - 1] - 1] = bits[q - 1];
        }
        let idx = new_bits.iter().fold(0, |acc, b| (acc << 1) | b);
        out[idx] = state.amplitude(k);
    }
    out
}

/// Two-qubit reduced density matrix on qubits (p, q) of a five-qubit state
/// by explicit summation over the other three bits.
pub fn pair_rho_oracle(state: &PureState, p: usize, q: usize) -> [[C; 4]; 4] {
    let n = state.num_qubits();
    let mut rho = [[c(0.0); 4]; 4];
    for r in 0..4 {
        for col in 0..4 {
            let mut acc = c(0.0);
            for k in 0..state.dim() {
                if (bit(k, p, n) << 1 | bit(k, q, n)) != r {
                    continue;
                }
                // same environment bits, (p, q) bits set to col
                let mut k2 = k;
                for (label, b) in [(p, col >> 1), (q, col & 1)] {
                    k2 = (k2 & !(1 << (n - label))) | (b << (n - label));
                }
                acc += state.amplitude(k) * state.amplitude(k2).conj();
            }
            rho[r][col] = acc;
        }
    }
    rho
}

pub fn purity_of(rho: &[[C; 4]; 4]) -> f64 {
    let mut acc = c(0.0);
    for i in 0..4 {
        for j in 0..4 {
            acc += rho[i][j] * rho[j][i];
        }
    }
    acc.re
}

/// Bell coefficients `<u v | phi^i>` for i = 1..4, written out by hand.
pub fn bell_coeff(i: u8, u: usize, v: usize) -> f64 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match (i, u, v) {
        (1, 0, 0) | (1, 1, 1) => h,
        (2, 0, 0) => h,
        (2, 1, 1) => -h,
        (3, 0, 1) | (3, 1, 0) => h,
        (4, 0, 1) => h,
        (4, 1, 0) => -h,
        _ => 0.0,
    }
}

pub fn charlie_coeff(n: u8, theta: f64, c_bit: usize) -> f64 {
    let (s, co) = theta.sin_cos();
    match (n, c_bit) {
        (1, 0) => co,
        (1, _) => s,
        (_, 0) => s,
        _ => -co,
    }
}

/// Bob's unnormalized amplitudes after outcome `(i, j, n)`, by brute-force
/// summation over all 128 joint basis states of `|x> (x) channel`.
pub fn bob_residual_oracle(
    channel: &PureState,
    assign: &RoleAssignment,
    input: &[C; 4],
    i: u8,
    j: u8,
    n: u8,
    theta: f64,
) -> [C; 4] {
    let mut bob = [c(0.0); 4];
    for joint in 0..128usize {
        let a1 = (joint >> 6) & 1;
        let a2 = (joint >> 5) & 1;
        let ch = joint & 31;
        let big_a1 = bit(ch, assign.alice[0], 5);
        let big_a2 = bit(ch, assign.alice[1], 5);
        let b1 = bit(ch, assign.bob[0], 5);
        let b2 = bit(ch, assign.bob[1], 5);
        let cb = bit(ch, assign.charlie, 5);
        let weight =
            bell_coeff(i, a1, big_a1) * bell_coeff(j, a2, big_a2) * charlie_coeff(n, theta, cb);
        if weight == 0.0 {
            continue;
        }
        bob[b1 << 1 | b2] += weight * input[a1 << 1 | a2] * channel.amplitude(ch);
    }
    bob
}

pub fn norm_sqr4(v: &[C; 4]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}
