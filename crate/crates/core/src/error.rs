use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("density matrix has eigenvalue {value:e} below the clamping floor")]
    NegativeEigenvalue { value: f64 },

    #[error("expected a {expected} matrix, got {rows}x{cols}")]
    Shape {
        expected: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("index {index} out of range (must be < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("unknown state name `{0}`")]
    UnknownState(String),

    #[error("invalid qubit subset: {0}")]
    InvalidSubset(String),

    #[error("{what} = {value} is outside its domain {domain}")]
    OutOfDomain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("alpha must be positive, got {0}")]
    InvalidAlpha(f64),

    #[error("local operator factor {index} fails the {kind} check (deviation {deviation:e})")]
    InvalidFactor {
        index: usize,
        kind: &'static str,
        deviation: f64,
    },

    #[error("state is not in class A (residual {residual:e})")]
    NotInClassA { residual: f64 },

    #[error("no sign change of the crossover function on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("sampler gave up after {0} rejected proposals")]
    SamplerExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
