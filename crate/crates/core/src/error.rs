use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("first space is not contained in the second")]
    NotASubspace,
    #[error("dimension {dim} exceeds configured cap {cap}")]
    DimCapExceeded { dim: usize, cap: usize },
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("the given identity is not a two-sided identity")]
    NoIdentity,
    #[error("group closure exceeded the order cap {0}")]
    GroupClosureOverflow(usize),
    #[error("F_p is not a splitting field: {0}")]
    NotSplit(String),
    #[error("decomposition undecided after {tries} attempts: {partial}")]
    Undecided { tries: usize, partial: String },
    #[error("subspace is not invariant under the algebra action")]
    NotInvariant,
    #[error("bottom of a section must be contained in its top")]
    NotNested,
    #[error("algebra is not self-injective; negative Heller shifts are unavailable")]
    NotSelfInjective,
    #[error("algebra has no anti-automorphism, so dual modules are unavailable")]
    NoDuality,
    #[error("module head is not simple")]
    HeadNotSimple,
    #[error("slot does not belong to the requested layer or class")]
    SlotMismatch,
    #[error("extensions do not share one (top, target) profile")]
    MixedProfiles,
    #[error("extension classes are linearly dependent")]
    NotIndependent,
    #[error("object is not a submodule")]
    NotSubmodule,
    #[error("object is not a quotient")]
    NotQuotient,
    #[error("sections are not nested")]
    NotNestedSections,
    #[error("section is not visible")]
    NotVisible,
    #[error("inputs have no common section")]
    NoCommonSection,
    #[error("tuning conflict: {0}")]
    TuningConflict(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("action relations violated: {0}")]
    BadAction(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
