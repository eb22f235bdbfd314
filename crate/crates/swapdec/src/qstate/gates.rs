use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{StateVector, UNITARY_TOL};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_x() -> [[Complex64; 2]; 2] {
    [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn pauli_y() -> [[Complex64; 2]; 2] {
    [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]
}

pub fn pauli_z() -> [[Complex64; 2]; 2] {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]
}

pub fn hadamard() -> [[Complex64; 2]; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]
}

/// Rotation about the x axis by `angle`: exp(-i angle X / 2).
pub fn rotation_x(angle: f64) -> [[Complex64; 2]; 2] {
    let half = angle / 2.0;
    [
        [c(half.cos(), 0.0), c(0.0, -half.sin())],
        [c(0.0, -half.sin()), c(half.cos(), 0.0)],
    ]
}

/// Frobenius distance of u * u^dagger from the identity.
fn unitarity_defect(u: &[[Complex64; 2]; 2]) -> f64 {
    let mut defect = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            // (u u^dagger)_ij = sum_k u_ik conj(u_jk)
            let mut dot = c(0.0, 0.0);
            for k in 0..2 {
                dot += u[i][k] * u[j][k].conj();
            }
            let expected = if i == j { 1.0 } else { 0.0 };
            defect += (dot - c(expected, 0.0)).norm_sqr();
        }
    }
    defect.sqrt()
}

/// Applies a 2x2 unitary to the `target` tensor factor.
pub fn apply_single_qubit_unitary(
    state: &mut StateVector,
    target: usize,
    u: &[[Complex64; 2]; 2],
) -> Result<()> {
    state.check_qubit(target)?;
    let defect = unitarity_defect(u);
    if defect > UNITARY_TOL {
        return Err(Error::validation(format!(
            "matrix is not unitary (defect {defect:.3e} > {UNITARY_TOL:.0e})"
        )));
    }
    apply_single_qubit_unitary_raw(state, target, u);
    Ok(())
}

/// Unchecked variant for internally constructed unitaries (frame rotations,
/// Paulis). The target must be in range.
pub(crate) fn apply_single_qubit_unitary_raw(
    state: &mut StateVector,
    target: usize,
    u: &[[Complex64; 2]; 2],
) {
    let bit = 1usize << target;
    let amps = state.amplitudes_mut();
    for base in 0..amps.len() {
        if base & bit != 0 {
            continue;
        }
        let a0 = amps[base];
        let a1 = amps[base | bit];
        amps[base] = u[0][0] * a0 + u[0][1] * a1;
        amps[base | bit] = u[1][0] * a0 + u[1][1] * a1;
    }
}

/// Flips `target` on every basis state where `control` is set.
pub fn apply_cnot(state: &mut StateVector, control: usize, target: usize) -> Result<()> {
    if control == target {
        return Err(Error::validation("cnot control and target must differ"));
    }
    state.check_qubit(control)?;
    state.check_qubit(target)?;
    let cbit = 1usize << control;
    let tbit = 1usize << target;
    let amps = state.amplitudes_mut();
    for base in 0..amps.len() {
        // Visit each swapped pair once: control set, target clear.
        if base & cbit != 0 && base & tbit == 0 {
            amps.swap(base, base | tbit);
        }
    }
    Ok(())
}
