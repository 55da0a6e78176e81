use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("signature is identically zero")]
    EmptySupport,
    #[error("support is not an affine subspace")]
    NotAffine,
    #[error("signature values are not all unit multiples of a common constant (f^2 is not affine)")]
    NotUnimodular,
    #[error("arity {0} exceeds the supported maximum of 64")]
    ArityTooLarge(usize),
    #[error("variable {var} out of range for arity {arity}")]
    BadVariable { var: usize, arity: usize },
    #[error("assignment {bits:#x} has bits beyond arity {arity}")]
    BadAssignment { bits: u64, arity: usize },
    #[error("malformed grid: {0}")]
    MalformedGrid(String),
    #[error("instance too large: {edges} edges exceeds the brute-force cap of {cap}")]
    TooLarge { edges: usize, cap: usize },
    #[error("vertex {vertex} ({name}) is not in class {class}")]
    NotInClass { vertex: usize, name: String, class: &'static str },
    #[error("signature {0} is not real valued")]
    NotRealValued(String),
    #[error("bundle operation not applicable: {0}")]
    BundleViolation(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate entry {bits}")]
    DuplicateEntry { line: usize, bits: String },
    #[error("line {line}: value outside Q(ζ8): {text}")]
    ValueOutsideRing { line: usize, text: String },
    #[error("unknown signature {0:?}")]
    UnknownSignature(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
