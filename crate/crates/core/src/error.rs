use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by graph construction, kernels, solvers and oracles.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    SelfLoop { vertex: usize },
    EndpointOutOfRange { vertex: usize, n: usize },
    InvalidGenerator(&'static str),
    EmptyGraph,
    LengthMismatch { expected: usize, got: usize },
    ZeroVector,
    InvalidExponent { p: f64, reason: &'static str },
    NormOrder { p: f64, q: f64 },
    NotNormalized { norm: f64 },
    NoEdges,
    /// Exponential enumeration refused above the configured vertex guard.
    Guard { what: &'static str, n: usize, guard: usize },
    InvalidConfig(&'static str),
    InvalidGrid(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Error::EndpointOutOfRange { vertex, n } => {
                write!(f, "endpoint {vertex} out of range for {n} vertices")
            }
            Error::InvalidGenerator(msg) => write!(f, "invalid generator: {msg}"),
            Error::EmptyGraph => write!(f, "graph has no vertices"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "vector length {got} does not match vertex count {expected}")
            }
            Error::ZeroVector => write!(f, "zero vector"),
            Error::InvalidExponent { p, reason } => write!(f, "invalid exponent p={p}: {reason}"),
            Error::NormOrder { p, q } => write!(f, "norm comparison needs p <= q, got p={p} q={q}"),
            Error::NotNormalized { norm } => write!(f, "vector is not on the unit sphere (norm {norm})"),
            Error::NoEdges => write!(f, "graph has no edges"),
            Error::Guard { what, n, guard } => write!(
                f,
                "{what} refused: n={n} exceeds the enumeration guard {guard} (exponential cost)"
            ),
            Error::InvalidConfig(msg) => write!(f, "invalid solver configuration: {msg}"),
            Error::InvalidGrid(msg) => write!(f, "invalid p-grid: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
