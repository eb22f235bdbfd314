//! Independent dense oracle for reduced-state diagnostics.
//!
//! Everything here recomputes what the engine computes, by a different
//! route: the full outer product |psi><psi| is materialized, indices are
//! traced explicitly, and eigenvalues come from a hand-rolled complex
//! Jacobi iteration rather than the engine's eigensolver.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random normalized amplitude vector over `n` qubits.
pub fn random_amplitudes(seed: u64, n: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amps: Vec<Complex64> = (0..1usize << n)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    amps
}

fn extract_bits(index: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (slot, &q)| acc | (((index >> q) & 1) << slot))
}

/// Reduced density matrix on `keep` (sorted ascending) by materializing the
/// full outer product and summing entries whose traced-out bits agree.
pub fn reduced_oracle(amps: &[Complex64], n: usize, keep: &[usize]) -> Vec<Vec<Complex64>> {
    let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let dim = 1usize << keep.len();
    let mut rho = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for g1 in 0..amps.len() {
        for g2 in 0..amps.len() {
            if extract_bits(g1, &rest) != extract_bits(g2, &rest) {
                continue;
            }
            let outer = amps[g1] * amps[g2].conj();
            rho[extract_bits(g1, keep)][extract_bits(g2, keep)] += outer;
        }
    }
    rho
}

/// Tr(rho^2) by forming the matrix product and summing the diagonal.
pub fn purity_oracle(rho: &[Vec<Complex64>]) -> f64 {
    let dim = rho.len();
    let mut trace = Complex64::new(0.0, 0.0);
    for i in 0..dim {
        for k in 0..dim {
            trace += rho[i][k] * rho[k][i];
        }
    }
    trace.re
}

/// Partial transpose over the B-slots of a reduced matrix whose index bits
/// follow `keep` (sorted); `b_slots` are bit positions within that compact
/// index.
pub fn partial_transpose_oracle(rho: &[Vec<Complex64>], b_mask: usize) -> Vec<Vec<Complex64>> {
    let dim = rho.len();
    let mut pt = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let row = (i & !b_mask) | (j & b_mask);
            let col = (j & !b_mask) | (i & b_mask);
            pt[i][j] = rho[row][col];
        }
    }
    pt
}

/// Negativity across (A, B) from the dense oracle pipeline.
pub fn negativity_oracle(
    amps: &[Complex64],
    n: usize,
    part_a: &[usize],
    part_b: &[usize],
) -> f64 {
    let mut keep: Vec<usize> = part_a.iter().chain(part_b).copied().collect();
    keep.sort_unstable();
    let rho = reduced_oracle(amps, n, &keep);
    let mut b_mask = 0usize;
    for (slot, q) in keep.iter().enumerate() {
        if part_b.contains(q) {
            b_mask |= 1 << slot;
        }
    }
    let pt = partial_transpose_oracle(&rho, b_mask);
    hermitian_eigenvalues(pt)
        .into_iter()
        .filter(|&l| l < 0.0)
        .map(|l| -l)
        .sum()
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn hermitian_eigenvalues(mut a: Vec<Vec<Complex64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..200 {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q].norm_sqr())
            .sum();
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                let r = apq.norm();
                if r < 1e-18 {
                    continue;
                }
                let phase = apq / r;
                let tau = (a[q][q].re - a[p][p].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // B = V^dagger A V with V touching columns p and q:
                // V[p][p] = c, V[p][q] = s e^{i phi},
                // V[q][p] = -s e^{-i phi}, V[q][q] = c,
                // where phi = arg(A_pq). This choice of t zeroes B_pq.
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * phase.conj() * akq;
                    a[k][q] = s * phase * akp + c * akq;
                    a[p][k] = a[k][p].conj();
                    a[q][k] = a[k][q].conj();
                }
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                a[p][p] = Complex64::new(app * c * c - 2.0 * r * s * c + aqq * s * s, 0.0);
                a[q][q] = Complex64::new(app * s * s + 2.0 * r * s * c + aqq * c * c, 0.0);
                a[p][q] = Complex64::new(0.0, 0.0);
                a[q][p] = Complex64::new(0.0, 0.0);
            }
        }
    }
    (0..n).map(|i| a[i][i].re).collect()
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn jacobi_reproduces_pauli_z_spectrum() {
        let z = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
        ];
        let mut eigs = hermitian_eigenvalues(z);
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((eigs[0] + 1.0).abs() < 1e-12);
        assert!((eigs[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_reproduces_bell_partial_transpose_spectrum() {
        // Bell projector PT eigenvalues: {0.5, 0.5, 0.5, -0.5}.
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); 4];
        amps[0b00] = s;
        amps[0b11] = s;
        let neg = negativity_oracle(&amps, 2, &[0], &[1]);
        assert!((neg - 0.5).abs() < 1e-12, "negativity {neg}");
    }

    #[test]
    fn jacobi_handles_complex_phases() {
        // Hermitian with off-diagonal phase: [[2, i],[-i, 0]] has
        // eigenvalues 1 +/- sqrt(2).
        let m = vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, -1.0), Complex64::new(0.0, 0.0)],
        ];
        let mut eigs = hermitian_eigenvalues(m);
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((eigs[0] - (1.0 - 2.0_f64.sqrt())).abs() < 1e-12);
        assert!((eigs[1] - (1.0 + 2.0_f64.sqrt())).abs() < 1e-12);
    }
}
