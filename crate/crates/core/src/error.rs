use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid OI-morphism: {0}")]
    InvalidMorphism(String),

    #[error("cannot compose [{inner_target}] with a map out of [{outer_source}]")]
    Composition {
        inner_target: usize,
        outer_source: usize,
    },

    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("elements live in different modules")]
    ModuleMismatch,

    #[error("monomial {divisor} does not divide {dividend}")]
    NotDivisible { divisor: String, dividend: String },

    #[error("zero element where a nonzero one is required")]
    ZeroElement,

    #[error("empty generating set")]
    EmptyInput,

    #[error("invalid module element: {0}")]
    InvalidElement(String),

    #[error("pair cap of {cap} exceeded with {basis_len} basis elements found so far")]
    PairCapExceeded { cap: usize, basis_len: usize },

    #[error("input is not a Groebner basis: an S-polynomial has nonzero remainder")]
    NotGroebner,

    #[error("minimization requires homogeneous input")]
    NonHomogeneous,

    #[error("invalid complex description: {0}")]
    InvalidDescription(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
