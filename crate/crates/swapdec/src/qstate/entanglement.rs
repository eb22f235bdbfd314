//! Negativity: the separability witness used across observer-system cuts.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::density::partial_trace;
use crate::qstate::StateVector;

/// Negativity across the (A, B) cut: the reduced state on A u B is partially
/// transposed over B and the absolute values of its negative eigenvalues are
/// summed. Zero for separable cuts of pure states; 0.5 for a Bell pair.
pub fn negativity(state: &StateVector, part_a: &[usize], part_b: &[usize]) -> Result<f64> {
    if part_a.is_empty() || part_b.is_empty() {
        return Err(Error::validation(
            "negativity: both partitions must be nonempty",
        ));
    }
    if part_a.iter().any(|q| part_b.contains(q)) {
        return Err(Error::validation("negativity: partitions must be disjoint"));
    }

    let mut kept: Vec<usize> = part_a.iter().chain(part_b).copied().collect();
    kept.sort_unstable();
    let rho = partial_trace(state, &kept)?;

    // Bit positions of B within the compacted reduced index.
    let mut b_mask = 0usize;
    for (slot, q) in kept.iter().enumerate() {
        if part_b.contains(q) {
            b_mask |= 1 << slot;
        }
    }

    let dim = rho.dim();
    let mut pt = DMatrix::<Complex64>::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            // Transpose only the B-factor indices.
            let row = (i & !b_mask) | (j & b_mask);
            let col = (j & !b_mask) | (i & b_mask);
            pt[(i, j)] = rho.entry(row, col);
        }
    }

    let eigenvalues = pt.symmetric_eigen().eigenvalues;
    let total: f64 = eigenvalues.iter().filter(|&&l| l < 0.0).map(|l| -l).sum();
    // An empty sum folds from -0.0; keep separable cuts at +0.0.
    Ok(total + 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::gates::{apply_cnot, apply_single_qubit_unitary, hadamard};
    use crate::qstate::Role;
    use approx::assert_relative_eq;

    #[test]
    fn product_state_is_separable() {
        let sv = StateVector::zeros(&[Role::Pointer(0), Role::Pointer(1)]).unwrap();
        let n = negativity(&sv, &[0], &[1]).unwrap();
        assert_relative_eq!(n, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn bell_state_negativity_is_half() {
        // Partial transpose of the Bell projector has eigenvalues
        // {0.5, 0.5, 0.5, -0.5}; negativity 0.5.
        let mut sv = StateVector::zeros(&[Role::Pointer(0), Role::Pointer(1)]).unwrap();
        apply_single_qubit_unitary(&mut sv, 0, &hadamard()).unwrap();
        apply_cnot(&mut sv, 0, 1).unwrap();
        let n = negativity(&sv, &[0], &[1]).unwrap();
        assert_relative_eq!(n, 0.5, epsilon = 1e-10);
    }

    #[test]
    fn ghz_single_qubit_cut_is_half() {
        let mut sv =
            StateVector::zeros(&[Role::Pointer(0), Role::Pointer(1), Role::Pointer(2)]).unwrap();
        apply_single_qubit_unitary(&mut sv, 0, &hadamard()).unwrap();
        apply_cnot(&mut sv, 0, 1).unwrap();
        apply_cnot(&mut sv, 1, 2).unwrap();
        let n = negativity(&sv, &[0], &[1, 2]).unwrap();
        assert_relative_eq!(n, 0.5, epsilon = 1e-10);
    }

    #[test]
    fn bell_with_spectator_keeps_negativity() {
        let mut sv = StateVector::zeros(&[Role::Pointer(0), Role::Pointer(1)]).unwrap();
        apply_single_qubit_unitary(&mut sv, 0, &hadamard()).unwrap();
        apply_cnot(&mut sv, 0, 1).unwrap();
        sv.extend_with_fresh_qubit(Role::Environment(0)).unwrap();
        let n = negativity(&sv, &[0], &[1]).unwrap();
        assert_relative_eq!(n, 0.5, epsilon = 1e-10);
    }

    #[test]
    fn overlapping_partitions_rejected() {
        let sv = StateVector::zeros(&[Role::Pointer(0), Role::Pointer(1)]).unwrap();
        assert!(negativity(&sv, &[0, 1], &[1]).is_err());
    }
}
