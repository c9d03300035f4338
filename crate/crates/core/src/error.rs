use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid abelian group: {0}")]
    InvalidGroup(String),
    #[error("element {coords:?} does not belong to a group with invariant factors {factors:?}")]
    ElementOutOfRange { coords: Vec<i64>, factors: Vec<u64> },
    #[error("homomorphism matrix is not well defined: entry ({row},{col})")]
    IllDefinedHom { row: usize, col: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidCayleyTable(String),
    #[error("unknown group name `{0}`")]
    UnknownGroupName(String),
    #[error("action of element {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("action is not a homomorphism at ({0},{1})")]
    ActionNotHomomorphism(usize, usize),
    #[error("2-cocycle is not normalized at ({0},{1})")]
    NotNormalized(usize, usize),
    #[error("cocycle identity fails at triple ({0},{1},{2})")]
    CocycleViolation(usize, usize, usize),
    #[error("invalid bicharacter: {0}")]
    InvalidBicharacter(String),
    #[error("bicharacter is not invariant: {0}")]
    NotInvariant(String),
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("algebra axiom fails: {0}")]
    AlgebraAxiom(String),
    #[error("{0}")]
    NotPerfectSquare(String),
    #[error("center is not graded: {0}")]
    CenterNotGraded(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
