use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for {len} qubits")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("control and target are both qubit {0}")]
    SameQubit(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular over GF(2)")]
    SingularMatrix,

    #[error("phase gadget has no legs")]
    EmptyGadget,

    #[error("region mixes Z and X gadgets")]
    MixedBasis,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("unknown topology `{0}`")]
    UnknownTopology(String),

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("invalid qubit mapping: {0}")]
    InvalidMapping(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{n} qubits exceeds the dense simulation limit of {max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub(crate) fn check_index(index: usize, len: usize) -> Result<()> {
    if index < len {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, len })
    }
}

pub(crate) fn check_pair(control: usize, target: usize, len: usize) -> Result<()> {
    check_index(control, len)?;
    check_index(target, len)?;
    if control == target {
        return Err(Error::SameQubit(control));
    }
    Ok(())
}
