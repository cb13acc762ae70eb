//! Library results checked against independent brute-force oracles.

#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use qtele::entanglement::qubit_pairs;
use qtele::scan::combined_defect;
use qtele::teleport::sigma_formula;
use qtele::{
    partial_trace, purity, purity_eq8, simulate, transformation_operator, BellIndex, Correction,
    Layout, NamedState, PureState, RoleAssignment,
};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI, SQRT_2};

const EPS: f64 = 1e-12;
const BROWN_AMP: f64 = 0.353_553_390_593_273_8;

fn assign(a: [usize; 2], b: [usize; 2], c: usize) -> RoleAssignment {
    RoleAssignment::new(a, b, c).unwrap()
}

fn brown() -> PureState {
    NamedState::Brown.build().unwrap()
}

fn kets(state: &PureState) -> Vec<(String, f64)> {
    (0..state.dim())
        .filter(|&k| state.amplitude(k).norm() > 1e-14)
        .map(|k| (format!("{k:05b}"), state.amplitude(k).re))
        .collect()
}

#[test]
fn permutation_matches_bit_shuffle_oracle() {
    let perm = [1, 3, 2, 4, 5];
    let permuted = brown().permute_qubits(&perm).unwrap();
    let oracle = shuffle_oracle(&brown(), &perm);
    for k in 0..32 {
        assert_eq!(permuted.amplitude(k), oracle[k], "index {k}");
    }
    // frozen from the oracle: 01001 carries brown's 00101 amplitude
    assert!((permuted.amplitude(0b01001) - c(BROWN_AMP)).norm() < EPS);

    let mut rng = rng(11);
    for _ in 0..20 {
        let s = random_state(&mut rng, 5);
        let perm = [4, 1, 5, 3, 2];
        let p = s.permute_qubits(&perm).unwrap();
        assert_eq!(p.amplitudes(), shuffle_oracle(&s, &perm).as_slice());
    }
}

#[test]
fn role_arrangements_reproduce_relabeled_brown_channels() {
    let mut expected_13_24 = vec![
        ("01001", 1.0),
        ("01010", -1.0),
        ("00100", 1.0),
        ("00111", -1.0),
        ("10001", 1.0),
        ("10010", 1.0),
        ("11100", 1.0),
        ("11111", 1.0),
    ];
    let mut expected_14_23 = vec![
        ("00011", 1.0),
        ("01010", -1.0),
        ("00100", 1.0),
        ("01101", -1.0),
        ("10001", 1.0),
        ("11000", 1.0),
        ("10110", 1.0),
        ("11111", 1.0),
    ];
    for (roles, expected) in [
        (assign([1, 3], [2, 4], 5), &mut expected_13_24),
        (assign([1, 4], [2, 3], 5), &mut expected_14_23),
    ] {
        expected.sort_by(|a, b| a.0.cmp(b.0));
        let arranged = roles.arrange(&brown()).unwrap();
        let got = kets(&arranged);
        assert_eq!(got.len(), 8);
        for ((k, v), (ek, ev)) in got.iter().zip(expected.iter()) {
            assert_eq!(k, ek);
            assert!((v - ev * BROWN_AMP).abs() < EPS);
        }
    }
}

#[test]
fn pair_purities_match_explicit_summation() {
    let mut rng = rng(5);
    let mut states: Vec<PureState> = NamedState::five_qubit_catalog()
        .iter()
        .map(|s| s.build().unwrap())
        .collect();
    states.extend((0..10).map(|_| random_state(&mut rng, 5)));
    for s in &states {
        for (p, q) in qubit_pairs() {
            let lib = partial_trace(s, &[p, q]).unwrap();
            let oracle = pair_rho_oracle(s, p, q);
            for r in 0..4 {
                for col in 0..4 {
                    assert!((lib.get(r, col) - oracle[r][col]).norm() < EPS);
                }
            }
            assert!((purity(&lib) - purity_of(&oracle)).abs() < EPS);
        }
    }
}

#[test]
fn brown_pairs_are_all_quarter() {
    let b = brown();
    for (p, q) in qubit_pairs() {
        assert!((purity_of(&pair_rho_oracle(&b, p, q)) - 0.25).abs() < EPS);
    }
    assert!((purity_eq8(&b).unwrap() - 0.25).abs() < EPS);
}

#[test]
fn operators_match_brute_force_residuals() {
    let mut rng = rng(21);
    let channels = [
        brown(),
        NamedState::ManM5.build().unwrap(),
        random_state(&mut rng, 5),
    ];
    let roles = [
        assign([1, 2], [3, 4], 5),
        assign([3, 5], [1, 4], 2),
        assign([4, 2], [5, 1], 3),
    ];
    for ch in &channels {
        for a in &roles {
            for theta in [0.0, 0.37, 2.1] {
                for i in 1..=4u8 {
                    for j in 1..=4u8 {
                        for n in 1..=2u8 {
                            let op = transformation_operator(
                                ch,
                                a,
                                BellIndex::new(i).unwrap(),
                                BellIndex::new(j).unwrap(),
                                n,
                                theta,
                            )
                            .unwrap();
                            // column k is 4√2 times Bob's residual for input e_k
                            for k in 0..4 {
                                let mut e = [c(0.0); 4];
                                e[k] = c(1.0);
                                let r = bob_residual_oracle(ch, a, &e, i, j, n, theta);
                                for b in 0..4 {
                                    let want = r[b] * (4.0 * SQRT_2);
                                    assert!((op.action()[b][k] - want).norm() < EPS);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn simulation_matches_brute_force_probabilities() {
    let mut rng = rng(3);
    let ch = random_state(&mut rng, 5);
    let a = assign([2, 5], [3, 1], 4);
    let input = random_state(&mut rng, 2);
    let x: [C; 4] = std::array::from_fn(|k| input.amplitude(k));
    let records = simulate(&ch, &a, 0.9, &input, Correction::Adjoint).unwrap();
    let mut total = 0.0;
    for rec in &records {
        let (i, j, n) = rec.outcome;
        let r = bob_residual_oracle(&ch, &a, &x, i.value(), j.value(), n, 0.9);
        assert!((rec.probability - norm_sqr4(&r)).abs() < EPS);
        total += rec.probability;
    }
    assert!((total - 1.0).abs() < EPS);
}

#[test]
fn brown_basis_input_outcome_111() {
    // brute force: outcome (1,1,1), theta 0, input |00>
    let e0 = [c(1.0), c(0.0), c(0.0), c(0.0)];
    let r = bob_residual_oracle(&brown(), &RoleAssignment::standard(), &e0, 1, 1, 1, 0.0);
    assert!((norm_sqr4(&r) - 1.0 / 32.0).abs() < EPS);
    assert!(r[0].norm() + r[1].norm() + r[2].norm() < EPS);
    assert!(r[3].re < 0.0);

    let input = PureState::basis(2, 0).unwrap();
    let recs = simulate(
        &brown(),
        &RoleAssignment::standard(),
        0.0,
        &input,
        Correction::Adjoint,
    )
    .unwrap();
    let rec = &recs[0];
    assert!((rec.probability - 1.0 / 32.0).abs() < EPS);
    let raw = rec.bob_raw.as_ref().unwrap();
    assert!((raw.amplitude(3) - c(-1.0)).norm() < EPS);
    assert!((rec.fidelity - 1.0).abs() < 1e-10);
}

/// The printed sigma^{14|23|5} matrices give `M^dagger M - I` with four
/// off-diagonal entries equal to `sin 2t`, so the defect is `2|sin 2t|`.
#[test]
fn brown_14_23_defect_closed_form() {
    let a = assign([1, 4], [2, 3], 5);
    for theta in [0.0, 0.1, FRAC_PI_6, FRAC_PI_4, 1.0, FRAC_PI_2, 2.5] {
        let want = 2.0 * (2.0 * theta).sin().abs();
        let got = combined_defect(&brown(), &a, theta).unwrap();
        assert!((got - want).abs() < 1e-12, "theta {theta}: {got} vs {want}");
    }
}

#[test]
fn defect_is_pi_periodic() {
    let mut rng = rng(8);
    for _ in 0..5 {
        let ch = random_state(&mut rng, 5);
        let a = assign([1, 3], [5, 2], 4);
        let d0 = combined_defect(&ch, &a, 0.0).unwrap();
        let dpi = combined_defect(&ch, &a, PI).unwrap();
        assert!((d0 - dpi).abs() < 1e-9);
        let m = sigma_formula(&ch, &a, 1, 0.4).unwrap();
        let mpi = sigma_formula(&ch, &a, 1, 0.4 + PI).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                assert!((m[r][col] + mpi[r][col]).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn paper_layout_is_transpose() {
    let op = transformation_operator(
        &brown(),
        &RoleAssignment::standard(),
        BellIndex::new(3).unwrap(),
        BellIndex::new(2).unwrap(),
        2,
        0.6,
    )
    .unwrap();
    let a = op.matrix(Layout::Action);
    let p = op.matrix(Layout::Paper);
    for r in 0..4 {
        for col in 0..4 {
            assert_eq!(a[r][col], p[col][r]);
        }
    }
}
