//! Binary (yes/no) observables and projective measurement.
//!
//! An observable acts on one target qubit along an arbitrary Bloch axis.
//! Outcome 0 corresponds to the +axis eigenstate, outcome 1 to the -axis
//! eigenstate, so a z-axis observable on |0> returns 0 with certainty.
//! The induced operator with eigenvalues {0, 1} is the projector P1 onto
//! the -axis eigenspace; the +/-1 spin form `axis . sigma` is exposed for
//! commutator checks.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::gates::apply_single_qubit_unitary;
use crate::qstate::{Role, StateVector, INVARIANT_TOL};

/// Whether an observable identifies the system (reference) or reads its
/// time-varying state (pointer).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObservableKind {
    Reference,
    Pointer,
}

impl std::fmt::Display for ObservableKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObservableKind::Reference => write!(f, "R"),
            ObservableKind::Pointer => write!(f, "P"),
        }
    }
}

/// A binary measurement on one labelled qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinaryObservable {
    pub id: String,
    pub kind: ObservableKind,
    pub target: Role,
    /// Measurement direction on the Bloch sphere; defaults to +z.
    #[serde(default = "default_axis")]
    pub axis: [f64; 3],
}

fn default_axis() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}

impl BinaryObservable {
    pub fn new(id: impl Into<String>, kind: ObservableKind, target: Role) -> Self {
        BinaryObservable {
            id: id.into(),
            kind,
            target,
            axis: default_axis(),
        }
    }

    pub fn with_axis(mut self, axis: [f64; 3]) -> Self {
        self.axis = axis;
        self
    }

    /// Unit-norm check on the axis (tolerance 1e-12).
    pub fn validate(&self) -> Result<()> {
        let n2: f64 = self.axis.iter().map(|x| x * x).sum();
        if (n2.sqrt() - 1.0).abs() > 1e-12 {
            return Err(Error::validation(format!(
                "observable {}: axis must have unit norm, got {}",
                self.id,
                n2.sqrt()
            )));
        }
        Ok(())
    }

    /// Unitary taking the axis eigenbasis to the computational basis:
    /// U |+axis> = |0>, U |-axis> = |1>.
    pub fn frame_unitary(&self) -> [[Complex64; 2]; 2] {
        let [nx, ny, nz] = self.axis;
        let theta = nz.clamp(-1.0, 1.0).acos();
        let phi = if nx == 0.0 && ny == 0.0 {
            0.0
        } else {
            ny.atan2(nx)
        };
        let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let e = Complex64::from_polar(1.0, -phi);
        [
            [Complex64::new(ct, 0.0), e * st],
            [Complex64::new(st, 0.0), -e * ct],
        ]
    }

    /// Inverse of [`frame_unitary`](Self::frame_unitary).
    pub fn frame_unitary_inverse(&self) -> [[Complex64; 2]; 2] {
        let u = self.frame_unitary();
        [
            [u[0][0].conj(), u[1][0].conj()],
            [u[0][1].conj(), u[1][1].conj()],
        ]
    }

    /// The +/-1 spin operator `axis . sigma`.
    pub fn pauli_operator(&self) -> nalgebra::Matrix2<Complex64> {
        let [nx, ny, nz] = self.axis;
        nalgebra::Matrix2::new(
            Complex64::new(nz, 0.0),
            Complex64::new(nx, -ny),
            Complex64::new(nx, ny),
            Complex64::new(-nz, 0.0),
        )
    }

    /// Projectors (P0, P1) onto the outcome-0 and outcome-1 eigenspaces.
    /// P0 + P1 = I and P0 P1 = 0 hold by construction.
    pub fn projectors(&self) -> (nalgebra::Matrix2<Complex64>, nalgebra::Matrix2<Complex64>) {
        let s = self.pauli_operator();
        let id = nalgebra::Matrix2::identity();
        let half = Complex64::new(0.5, 0.0);
        ((id + s) * half, (id - s) * half)
    }
}

/// Born-rule probabilities (p0, p1) for measuring `obs` on `state`.
pub fn born_probabilities(state: &StateVector, obs: &BinaryObservable) -> Result<(f64, f64)> {
    let target = state.position(obs.target)?;
    let u = obs.frame_unitary();
    let bit = 1usize << target;
    let mut p0 = 0.0;
    let mut p1 = 0.0;
    for base in 0..state.amplitudes().len() {
        if base & bit != 0 {
            continue;
        }
        let a0 = state.amplitudes()[base];
        let a1 = state.amplitudes()[base | bit];
        p0 += (u[0][0] * a0 + u[0][1] * a1).norm_sqr();
        p1 += (u[1][0] * a0 + u[1][1] * a1).norm_sqr();
    }
    Ok((p0, p1))
}

/// Samples an outcome per the Born rule and collapses the state onto the
/// corresponding eigenspace, renormalized. Repeating the measurement on the
/// collapsed state reproduces the outcome with probability 1.
pub fn projective_measure<R: Rng + ?Sized>(
    state: &mut StateVector,
    obs: &BinaryObservable,
    rng: &mut R,
) -> Result<u8> {
    let (p0, p1) = born_probabilities(state, obs)?;
    if p0 < 1e-15 && p1 < 1e-15 {
        return Err(Error::Numerical(format!(
            "both outcome branches of {} have probability < 1e-15",
            obs.id
        )));
    }
    let u: f64 = rng.random();
    let outcome = if u < p0 { 0u8 } else { 1u8 };

    let target = state.position(obs.target)?;
    apply_single_qubit_unitary(state, target, &obs.frame_unitary())?;
    let bit = 1usize << target;
    let keep_set = outcome == 1;
    for (idx, amp) in state.amplitudes_mut().iter_mut().enumerate() {
        if (idx & bit != 0) != keep_set {
            *amp = Complex64::new(0.0, 0.0);
        }
    }
    state.renormalize();
    apply_single_qubit_unitary(state, target, &obs.frame_unitary_inverse())?;

    debug_assert!((state.norm() - 1.0).abs() < INVARIANT_TOL);
    Ok(outcome)
}
