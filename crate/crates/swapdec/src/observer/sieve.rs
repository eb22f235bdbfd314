//! Commutation checks that keep reference outcomes stable under redeployment.
//!
//! Every reference-reference and reference-pointer pair must commute; the
//! pointer observables themselves are exempt and may be mutually
//! incompatible. Commutators are evaluated on the +/-1 spin form
//! `axis . sigma` of each observable, over the minimal joint space spanned
//! by the union of the two targets.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::observer::ObservableCatalog;
use crate::qstate::{BinaryObservable, ObservableKind};

/// Frobenius-norm threshold above which a commutator counts as a violation.
pub const COMMUTATOR_TOL: f64 = 1e-10;

/// One non-commuting pair flagged by the sieve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveViolation {
    pub first_id: String,
    pub second_id: String,
    pub first_kind: ObservableKind,
    pub second_kind: ObservableKind,
    pub commutator_norm: f64,
}

fn kron2(a: &nalgebra::Matrix2<Complex64>, b: &nalgebra::Matrix2<Complex64>) -> DMatrix<Complex64> {
    let mut out = DMatrix::<Complex64>::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Frobenius norm of [A, B] for the pair's operators on their joint space.
pub fn commutator_norm(a: &BinaryObservable, b: &BinaryObservable) -> f64 {
    if a.target == b.target {
        let (ma, mb) = (a.pauli_operator(), b.pauli_operator());
        (ma * mb - mb * ma).norm()
    } else {
        let id = nalgebra::Matrix2::identity();
        let ma = kron2(&a.pauli_operator(), &id);
        let mb = kron2(&id, &b.pauli_operator());
        (&ma * &mb - &mb * &ma).norm()
    }
}

/// Checks all reference-reference and reference-pointer pairs of the catalog
/// and reports those whose commutator exceeds [`COMMUTATOR_TOL`].
pub fn verify_predictability_sieve(catalog: &ObservableCatalog) -> Vec<SieveViolation> {
    let entries = catalog.entries();
    let mut violations = Vec::new();
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            let (a, b) = (&entries[i], &entries[j]);
            // Pointer-pointer pairs are exempt.
            if a.kind == ObservableKind::Pointer && b.kind == ObservableKind::Pointer {
                continue;
            }
            let norm = commutator_norm(a, b);
            if norm > COMMUTATOR_TOL {
                violations.push(SieveViolation {
                    first_id: a.id.clone(),
                    second_id: b.id.clone(),
                    first_kind: a.kind,
                    second_kind: b.kind,
                    commutator_norm: norm,
                });
            }
        }
    }
    violations
}
