use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [5, 2^31)")]
    NonPrimeField(u64),
    #[error("operands belong to different fields (F_{left} vs F_{right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("matrix row {row} has {len} entries, expected {expected}")]
    DimensionMismatch { row: usize, len: usize, expected: usize },

    #[error("plane normal (a, b, c) is zero")]
    ZeroNormal,
    #[error("line direction is zero")]
    ZeroDirection,
    #[error("points coincide")]
    EqualPoints,
    #[error("lines coincide")]
    EqualLines,
    #[error("planes coincide")]
    EqualPlanes,
    #[error("linear part of the affine map is singular")]
    SingularMap,

    #[error("line does not meet the z-axis in a single affine point")]
    NoLambdaIntersection,
    #[error("line does not meet the plane x = 1 in a single affine point")]
    NoPiIntersection,
    #[error("point lies on the yz-plane")]
    PointOnYZPlane,
    #[error("plane has zero z-coefficient")]
    PlaneDegenerateForPsi,
    #[error("no generic position found after {attempts} affine maps")]
    GenericPositionFailure { attempts: usize },

    #[error("field F_{modulus} has too few elements for degree {degree}")]
    FieldTooSmallForDegree { modulus: u64, degree: usize },
    #[error("line set is empty")]
    EmptyLineSet,
    #[error("polynomial has no nonzero coefficient")]
    ZeroPolynomial,

    #[error("|P| = {points} exceeds |Q| = {planes}")]
    SizeOrderViolation { points: usize, planes: usize },
    #[error("I(P,Q) = {incidences} but I(L,M) = {intersections}")]
    TransferIdentityViolated { incidences: usize, intersections: usize },

    #[error("parameter {name} = {value} exceeds what F_{modulus} can hold")]
    ParameterExceedsField { name: &'static str, value: u64, modulus: u64 },

    #[error("{0}")]
    Io(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code used by the command-line harness.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Parse { .. } | Error::NonPrimeField(_) => 2,
            Error::GenericPositionFailure { .. } => 4,
            Error::TransferIdentityViolated { .. } => 5,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
