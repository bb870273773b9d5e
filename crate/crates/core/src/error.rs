use thiserror::Error;

/// Errors raised by the engine. Parse-level problems are separated from
/// domain-level ones so that front ends can map them to distinct exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("non-crystallographic Cartan matrix: {0}")]
    NonCrystallographic(String),

    #[error("root generation did not terminate within {0} positive roots")]
    RootGenerationDiverged(usize),

    #[error("multiplicity not Weyl-invariant: {0}")]
    MultiplicityNotInvariant(String),

    #[error("gl lattice requested for non-type-A component {0}")]
    GlNonTypeA(String),

    #[error("unknown preset type {0}")]
    UnknownType(String),

    #[error("unknown lattice {0}")]
    UnknownLattice(String),

    #[error("subset {0:#b} is not contained in the simple roots")]
    InvalidSubset(u32),

    #[error("unknown simple-root label {0}")]
    UnknownLabel(String),

    #[error("Weyl group exceeds the cap of {0} elements")]
    GroupTooLarge(usize),

    #[error("element {0} is not a minimal coset representative for the given subset")]
    NotMinimalRep(String),

    #[error("element {0} is not in the parabolic subgroup")]
    NotInParabolic(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("poset has {0} elements, above the cap")]
    PosetTooLarge(usize),

    #[error("element index {0} not in poset")]
    NotInPoset(usize),

    #[error("set is not downward closed")]
    NotLowerSet,

    #[error("lower sets belong to different posets")]
    MismatchedPosets,

    #[error("function is not strictly monotonic")]
    NotStrictlyMonotonic,

    #[error("field degree e must be at least 1")]
    InvalidDegree,

    #[error("inconsistent scenario: {0}")]
    InconsistentScenario(String),

    #[error("missing flag {0}")]
    MissingFlag(&'static str),

    #[error("scenario requires I = J")]
    RequiresEqualLevis,

    #[error("oracle fault: {0}")]
    OracleFault(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
