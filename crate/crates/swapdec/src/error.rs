use crate::qstate::Role;

/// Library-wide error type. The CLI maps variants to process exit codes:
/// `Resource` exits 2, `InsufficientData` exits 3, everything else exits 1.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("qubit index {index} out of range for {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("no qubit labelled {0} in this register")]
    UnknownRole(Role),

    #[error("resource limit exceeded: {required} qubits required, {available} available. {hint}")]
    Resource {
        required: usize,
        available: usize,
        hint: String,
    },

    #[error("numerical degeneracy: {0}")]
    Numerical(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Exit code the CLI uses for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 2,
            Error::InsufficientData(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
