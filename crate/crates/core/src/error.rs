use crate::exactnum::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. `code()` gives a stable identifier
/// for machine-readable output and `category()` decides the CLI exit status.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidCoxeterMatrix(String),
    #[error("unsupported irrationality: {0}")]
    UnsupportedIrrationality(String),
    #[error("not crystallographic: {0}")]
    NotCrystallographic(String),
    #[error("realization is not balanced: {0}")]
    UnbalancedRealization(String),
    #[error("generator {gen} out of range for rank {rank}")]
    GeneratorOutOfRange { gen: usize, rank: usize },
    #[error("operation requires a finite Coxeter group")]
    InfiniteGroup,
    #[error("group exceeds the element bound of {bound}")]
    GroupTooLarge { bound: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("word is not reduced: {0}")]
    WordNotReduced(String),
    #[error("element is not self-dual")]
    NotSelfDual,
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("elements are not in a common two-sided cell")]
    NotSameCell,
    #[error("triple is not recursible: {0}")]
    NotRecursible(String),
    #[error("branching graph is not linear: {0}")]
    NotLinear(String),
    #[error("Cartan matrix is singular")]
    SingularCartan,
    #[error("element is not dominant regular")]
    NotDominantRegular,
    #[error("io error: {0}")]
    Io(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Usage,
    Domain,
    Resource,
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::Parse(_) => "parse",
            Error::InvalidCoxeterMatrix(_) => "invalid_coxeter_matrix",
            Error::UnsupportedIrrationality(_) => "unsupported_irrationality",
            Error::NotCrystallographic(_) => "not_crystallographic",
            Error::UnbalancedRealization(_) => "unbalanced_realization",
            Error::GeneratorOutOfRange { .. } => "generator_out_of_range",
            Error::InfiniteGroup => "infinite_group",
            Error::GroupTooLarge { .. } => "group_too_large",
            Error::Precondition(_) => "precondition",
            Error::WordNotReduced(_) => "word_not_reduced",
            Error::NotSelfDual => "not_self_dual",
            Error::InvalidDecomposition(_) => "invalid_decomposition",
            Error::NotSameCell => "not_same_cell",
            Error::NotRecursible(_) => "not_recursible",
            Error::NotLinear(_) => "not_linear",
            Error::SingularCartan => "singular_cartan",
            Error::NotDominantRegular => "not_dominant_regular",
            Error::Io(_) => "io",
        }
    }

    pub fn category(&self) -> Category {
        match self {
            Error::Parse(_) | Error::GeneratorOutOfRange { .. } => Category::Usage,
            Error::GroupTooLarge { .. } => Category::Resource,
            _ => Category::Domain,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
