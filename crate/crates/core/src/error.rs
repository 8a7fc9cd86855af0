use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the library.
///
/// Variants fall into three families that the CLI maps onto exit codes:
/// numerical preconditions (2), input/output problems (3), and usage or
/// configuration mistakes (1). See [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma undefined: n*u = {n}*{u:e} is not below 1")]
    GammaUndefined { n: usize, u: f64 },

    #[error("series not normalized: constant term is {0}, expected exactly 1")]
    NotNormalized(String),

    #[error("requested order {requested} exceeds available order {available}")]
    OrderTooLarge { requested: usize, available: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),

    #[error("scale factor must be nonzero")]
    ZeroScale,

    #[error("growth rate inconclusive: zero coefficient at index {0}")]
    Inconclusive(usize),

    #[error("invalid window {window} for series of order {order}")]
    InvalidWindow { window: usize, order: usize },

    #[error("complex root {0} is not followed by its conjugate")]
    NonConjugateRoots(usize),

    #[error("coefficient overflows the working precision")]
    Overflow,

    #[error("polynomial must be monic with degree >= 1")]
    NotMonic,

    #[error("deflation by a zero root in forward order divides by zero")]
    ZeroRootDivision,

    #[error("b = {0} gives repeated roots; closed form excluded")]
    RepeatedRoots(f64),

    #[error("F_{0}(b) = 0: relative bound is infinite")]
    InfiniteRelativeBound(usize),

    #[error("norm bound vacuous: ||abs(T^-1) E||_inf = {0:e} >= 1")]
    NormBoundVacuous(f64),

    #[error("least singular value estimate unconverged after {iterations} iterations (last {last:e})")]
    Unconverged { iterations: usize, last: f64 },

    #[error("stability bound needs (n+1)u < 1/2, got n = {0}")]
    StabilityPrecondition(usize),

    #[error("roots {0} and {1} coincide")]
    CoincidentRoots(usize, usize),

    #[error("root {0} is zero")]
    ZeroRoot(usize),

    #[error("root is (numerically) multiple: |p'(a)| = {0:e}")]
    NearMultipleRoot(f64),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("unknown series '{0}'")]
    UnknownSeries(String),

    #[error("extended precision needs at least 100 decimal digits, got {0}")]
    PrecisionTooLow(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit status for this error: 1 usage, 2 numerical precondition, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionTooLow(_) | Error::InvalidArgument(_) | Error::UnknownSeries(_) => 1,
            Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::Parse(_) => 3,
            _ => 2,
        }
    }
}
