use rand::Rng;

use crate::dynamics::Decomposition;
use crate::error::{Error, Result};
use crate::qstate::{apply_cnot, StateVector};

/// A pointer-environment interaction opportunity.
///
/// With probability `p_int` a fresh degree of freedom xi is allocated in
/// |0>, a CNOT from the tracked pointer qubit fully correlates it, and xi is
/// absorbed into the pointer component (the pointer P becomes P (x) xi).
/// One firing suffices to zero the tracked qubit's coherence. Returns
/// whether the coupling fired.
pub fn couple_environment<R: Rng + ?Sized>(
    state: &mut StateVector,
    decomp: &mut Decomposition,
    rng: &mut R,
    p_int: f64,
) -> Result<bool> {
    if !(0.0..=1.0).contains(&p_int) {
        return Err(Error::validation(format!(
            "coupling probability must lie in [0, 1], got {p_int}"
        )));
    }
    let u: f64 = rng.random();
    if u >= p_int {
        return Ok(false);
    }
    let pointer_pos = state.position(decomp.tracked_pointer)?;
    let xi = decomp.next_pointer_role();
    let xi_pos = state.extend_with_fresh_qubit(xi)?;
    apply_cnot(state, pointer_pos, xi_pos)?;
    decomp.absorb_coupled(xi);
    Ok(true)
}
