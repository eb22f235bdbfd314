//! Shared helpers for the library integration tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swapdec::qstate::{Role, StateVector};

/// Deterministic random pure state over `n` environment-labelled qubits.
pub fn random_state(seed: u64, n: usize) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amps: Vec<Complex64> = (0..1usize << n)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    let roles: Vec<Role> = (0..n as u16).map(Role::Environment).collect();
    StateVector::from_amplitudes(&roles, &amps).expect("normalized amplitudes")
}

/// General single-qubit unitary from Euler-like angles; unitary by
/// construction for any inputs.
pub fn euler_unitary(theta: f64, phi: f64, lambda: f64) -> [[Complex64; 2]; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e_l = Complex64::from_polar(1.0, lambda);
    let e_p = Complex64::from_polar(1.0, phi);
    [
        [Complex64::new(c, 0.0), -e_l * s],
        [e_p * s, e_p * e_l * c],
    ]
}

/// Reduced density matrix by direct summation over full outer-product
/// indices (independent loop structure from the engine's reshape).
pub fn dense_reduced(
    amps: &[Complex64],
    n: usize,
    keep: &[usize],
) -> Vec<Vec<Complex64>> {
    let compact = |g: usize| -> usize {
        keep.iter()
            .enumerate()
            .fold(0, |acc, (slot, &q)| acc | (((g >> q) & 1) << slot))
    };
    let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let rest_bits = |g: usize| -> usize {
        rest.iter()
            .enumerate()
            .fold(0, |acc, (slot, &q)| acc | (((g >> q) & 1) << slot))
    };
    let dim = 1usize << keep.len();
    let mut rho = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for g1 in 0..amps.len() {
        for g2 in 0..amps.len() {
            if rest_bits(g1) == rest_bits(g2) {
                rho[compact(g1)][compact(g2)] += amps[g1] * amps[g2].conj();
            }
        }
    }
    rho
}
