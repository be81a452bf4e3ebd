use thiserror::Error;

/// Errors raised by ring construction, module computations and the script front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2 < p < 2^31")]
    NotPrime(u64),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("ring declaration is malformed: {0}")]
    BadRing(String),
    #[error("defining ideal generator `{0}` is not homogeneous")]
    NonHomogeneousIdeal(String),
    #[error("objects live over different rings")]
    RingMismatch,
    #[error("module mismatch: {0}")]
    ModuleMismatch(String),
    #[error("generator is not homogeneous")]
    InhomogeneousGenerator,
    #[error("element is not homogeneous")]
    InhomogeneousElement,
    #[error("matrix is not homogeneous: {0}")]
    InhomogeneousMatrix(String),
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("resolution must reach step {needed} but the cap is {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("the zero module is not allowed here")]
    ZeroModule,
    #[error("grade search exhausted without a nonvanishing Ext (defect)")]
    GradeSearchExhausted,
    #[error("not a matrix factorization: {0}")]
    NotAFactorization(String),
    #[error("module is not certified G-perfect: {0}")]
    NotCertified(String),
    #[error("{line}:{col}: syntax error, expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An error tagged with the script position of the statement that raised it.
    #[error("{line}:{col}: {inner}")]
    Located {
        line: usize,
        col: usize,
        inner: Box<Error>,
    },
}

impl Error {
    /// Strip any position tags.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { inner, .. } => inner.root(),
            e => e,
        }
    }

    pub(crate) fn at(self, line: usize, col: usize) -> Error {
        match self {
            e @ (Error::Syntax { .. } | Error::Located { .. }) => e,
            e => Error::Located {
                line,
                col,
                inner: Box::new(e),
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
