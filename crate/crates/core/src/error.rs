use thiserror::Error;

/// Errors raised across the library.
///
/// Variants are grouped by the layer that raises them; [`Error::kind`] maps
/// each one onto the coarse categories the command-line front end reports.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    // group construction and lookup
    #[error("table has {rows} rows (or a row of wrong length) for declared order {order}")]
    DimensionMismatch { order: usize, rows: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("table is not a Latin square: {axis} {index} repeats element {element}")]
    NotLatinSquare {
        axis: &'static str,
        index: usize,
        element: usize,
    },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("closure exceeds the configured maximum order {max_order}")]
    ClosureTooLarge { max_order: usize },
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("{what}: order {order} exceeds the bound {bound}")]
    OrderBoundExceeded {
        what: &'static str,
        order: usize,
        bound: usize,
    },
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("K is not normal in H")]
    NotNormalInH,
    #[error("group is not abelian")]
    NotAbelian,

    // exact arithmetic
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois index {r} is not a unit modulo {n}")]
    BadGaloisIndex { r: i64, n: u64 },
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("cyclotomic conductors {0} and {1} differ")]
    ConductorMismatch(u64, u64),

    // group ring
    #[error("group ring operands live in different rings")]
    RingMismatch,
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("element is not a unit (supplied inverse does not verify)")]
    NotAUnit,
    #[error("coefficient {0} is not integral")]
    NotIntegral(String),

    // idempotents and components
    #[error("({h}, {k}) is not a strong Shoda pair")]
    NotStrongPair { h: String, k: String },
    #[error("primitive central idempotent set is incomplete ({found} of {expected})")]
    IncompletePci { found: usize, expected: usize },

    // units
    #[error("bad unit parameters: {0}")]
    BadParameters(String),
    #[error("alternating units need a base element of odd order (got {0})")]
    EvenOrder(usize),
    #[error("element does not square to zero")]
    NotSquareZero,
    #[error("|T(ab)| = {value} is below the threshold {threshold}")]
    TraceBelowThreshold { value: String, threshold: String },
    #[error("bicyclic unit is trivial")]
    TrivialBicyclic,
    #[error("precondition violated: {0}")]
    Precondition(String),

    // central units
    #[error("invalid subnormal series: {0}")]
    InvalidSeries(String),
    #[error("group fails the subnormality hypothesis at an element of order {order}")]
    NotEligible { order: usize },

    // catch-all for violated internal invariants
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Coarse error category, used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Bound,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            ClosureTooLarge { .. } | OrderBoundExceeded { .. } => ErrorKind::Bound,
            Invariant(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
