use thiserror::Error;

/// Errors raised by the exact-arithmetic kernel and the group computations built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("points or maps belong to different Lie algebras")]
    AlgebraMismatch,

    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid affine transformation: {0}")]
    InvalidTransformation(String),

    #[error("generators do not span the source algebra (rank {rank} < {dim})")]
    Underdetermined { rank: usize, dim: usize },

    #[error("no solution: {0}")]
    Inconsistent(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("outside quasi-unipotent scope: {0}")]
    ScopeViolation(String),

    #[error("Hirsch length undetermined: {0}")]
    HirschUndetermined(String),

    #[error("coset is not invariant: {0}")]
    NotInvariant(String),

    #[error("group morphism violates relator {0}")]
    RelatorViolated(String),

    #[error("surjectivity certificate required")]
    CertificateRequired,

    #[error("invalid surjectivity certificate: {0}")]
    InvalidCertificate(String),

    #[error("no extension to the algebraic hulls: {0}")]
    NoExtension(String),

    #[error("source action not translation-like: {0}")]
    NotTranslationLike(String),

    #[error("target action not translation-like: {0}")]
    TargetNotTranslationLike(String),

    #[error("action not crystallographic: {0}")]
    NotCrystallographic(String),

    #[error("hull axioms fail: {0}")]
    HullAxiomsFailed(String),

    #[error("polynomial degree {degree} exceeds bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },

    #[error("missing inverse: {0}")]
    MissingInverse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
