//! Reduced density matrices of pure register states.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{StateVector, INVARIANT_TOL, MAX_REDUCED_QUBITS};

/// Density matrix on a 2^k-dimensional subspace.
///
/// Valid instances are Hermitian, unit-trace, and positive semidefinite
/// (within [`INVARIANT_TOL`]); [`partial_trace`] validates on construction.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    dim: usize,
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn from_entries(entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = entries.nrows();
        if dim == 0 || entries.ncols() != dim || !dim.is_power_of_two() {
            return Err(Error::validation(
                "density matrix must be square with power-of-two dimension",
            ));
        }
        let rho = DensityMatrix { dim, entries };
        rho.validate()?;
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    fn validate(&self) -> Result<()> {
        let herm_defect = (&self.entries - self.entries.adjoint()).norm();
        if herm_defect > INVARIANT_TOL {
            return Err(Error::Numerical(format!(
                "density matrix not Hermitian (defect {herm_defect:.3e})"
            )));
        }
        let trace: f64 = self.entries.diagonal().iter().map(|z| z.re).sum();
        if (trace - 1.0).abs() > INVARIANT_TOL {
            return Err(Error::Numerical(format!(
                "density matrix trace {trace} != 1"
            )));
        }
        let min_eig = self
            .eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -INVARIANT_TOL {
            return Err(Error::Numerical(format!(
                "density matrix has negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(())
    }

    /// Real eigenvalues of the (Hermitian) matrix.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect()
    }

    /// Tr(rho^2). Equals 1 iff the state is pure.
    pub fn purity(&self) -> f64 {
        // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Traces a pure state down to the qubits in `keep` (sorted ascending; the
/// kept qubit of lowest physical position becomes bit 0 of the reduced
/// index).
pub fn partial_trace(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::validation("partial_trace: keep set must be nonempty"));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() {
        return Err(Error::validation("partial_trace: duplicate qubit in keep set"));
    }
    for &q in &kept {
        state.check_qubit(q)?;
    }
    if kept.len() > MAX_REDUCED_QUBITS {
        return Err(Error::Resource {
            required: kept.len(),
            available: MAX_REDUCED_QUBITS,
            hint: "reduce the kept-qubit set".into(),
        });
    }

    let n = state.num_qubits();
    let k = kept.len();
    let kept_dim = 1usize << k;
    let env_dim = 1usize << (n - k);
    let keep_mask: usize = kept.iter().map(|&q| 1usize << q).sum();

    // Reshape amplitudes into columns indexed by the traced-out configuration.
    let mut table = vec![Complex64::new(0.0, 0.0); kept_dim * env_dim];
    for (g, &amp) in state.amplitudes().iter().enumerate() {
        let mut i = 0usize; // kept bits, compacted
        for (slot, &q) in kept.iter().enumerate() {
            if g & (1 << q) != 0 {
                i |= 1 << slot;
            }
        }
        let mut e = 0usize; // env bits, compacted
        let mut slot = 0;
        for q in 0..n {
            if keep_mask & (1 << q) == 0 {
                if g & (1 << q) != 0 {
                    e |= 1 << slot;
                }
                slot += 1;
            }
        }
        table[e * kept_dim + i] = amp;
    }

    let mut rho = DMatrix::<Complex64>::zeros(kept_dim, kept_dim);
    for e in 0..env_dim {
        let col = &table[e * kept_dim..(e + 1) * kept_dim];
        for i in 0..kept_dim {
            if col[i].norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..kept_dim {
                rho[(i, j)] += col[i] * col[j].conj();
            }
        }
    }
    DensityMatrix::from_entries(rho)
}
