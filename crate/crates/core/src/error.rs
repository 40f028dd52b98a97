use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("subspace is not an eigensubspace of the automorphism")]
    NotEigensubspace,
    #[error("invalid antiautomorphism: {0}")]
    InvalidAntiautomorphism(String),
    #[error("bracket of parts {0} and {1} meets more than one part")]
    NotAGrading(usize, usize),
    #[error("parts {0} and {1} carry identical eigenvalue labels")]
    CollidingLabels(usize, usize),
    #[error("part {0} is split by the form condition")]
    PartSplitByForm(usize),
    #[error("part {0} is not invariant under the automorphism")]
    NotInvariant(usize),
    #[error("fixed-point set has real dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("eigenvalue {0} is not of unit modulus")]
    NonUnitEigenvalue(String),
    #[error("generator {0} does not have real spectrum")]
    NotRealSpectrum(usize),
    #[error("multiplier for part {0} is invalid")]
    MultiplierInvalid(usize),
    #[error("invalid bilinear form matrix: {0}")]
    InvalidForm(String),
    #[error("grading basis is not real")]
    NonRealBasis,
    #[error("catalog corrupt: {0}")]
    CatalogCorrupt(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
}
