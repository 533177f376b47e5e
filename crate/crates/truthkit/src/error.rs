use thiserror::Error;

/// Every failure an operation in this crate can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dangling reference: {0}")]
    DanglingReference(String),
    #[error("duplicate id: {0}")]
    DuplicateId(String),
    #[error("unknown instance: {0}")]
    UnknownInstance(String),
    #[error("size cap exceeded: {what} ({size} > {cap})")]
    SizeCapExceeded { what: String, size: u128, cap: u128 },
    #[error("classification is not a model of the theory")]
    NotAModel,
    #[error("tag mismatch: expected {expected}, found {found}")]
    TagMismatch { expected: String, found: String },
    #[error("morphisms are not composable: {0}")]
    NonComposable(String),
    #[error("unknown law: {0}")]
    UnknownLaw(String),
    #[error("unknown adjunction: {0}")]
    UnknownAdjunction(String),
    #[error("path space is infinite: {0}")]
    PathSpaceInfinite(String),
    #[error("ill-formed path: {0}")]
    IllFormedPath(String),
    #[error("ill-formed morphism: {0}")]
    IllFormedMorphism(String),
    #[error("diagram does not satisfy equation: {0}")]
    DoesNotSatisfy(String),
    #[error("duplicate frame id: {0}")]
    DuplicateFrameId(String),
    #[error("unknown id: {0}")]
    UnknownId(String),
    #[error("structure is not unified")]
    NotUnified,
    #[error("structure is not trim: {0}")]
    NotTrim(String),
    #[error("ambiguous row type for tuple {0}")]
    AmbiguousRowType(String),
    #[error("invalid schema: {0}")]
    InvalidSchema(String),
    #[error("dataset state is not functorial: {0}")]
    NonFunctorial(String),
    #[error("ill-formed functor: {0}")]
    IllFormedFunctor(String),
    #[error("ill-formed category: {0}")]
    IllFormedCategory(String),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("validation error at {path}: {message}")]
    ValidationError { path: String, message: String },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DanglingReference(_) => "DanglingReference",
            Error::DuplicateId(_) => "DuplicateId",
            Error::UnknownInstance(_) => "UnknownInstance",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::NotAModel => "NotAModel",
            Error::TagMismatch { .. } => "TagMismatch",
            Error::NonComposable(_) => "NonComposable",
            Error::UnknownLaw(_) => "UnknownLaw",
            Error::UnknownAdjunction(_) => "UnknownAdjunction",
            Error::PathSpaceInfinite(_) => "PathSpaceInfinite",
            Error::IllFormedPath(_) => "IllFormedPath",
            Error::IllFormedMorphism(_) => "IllFormedMorphism",
            Error::DoesNotSatisfy(_) => "DoesNotSatisfy",
            Error::DuplicateFrameId(_) => "DuplicateFrameId",
            Error::UnknownId(_) => "UnknownId",
            Error::NotUnified => "NotUnified",
            Error::NotTrim(_) => "NotTrim",
            Error::AmbiguousRowType(_) => "AmbiguousRowType",
            Error::InvalidSchema(_) => "InvalidSchema",
            Error::NonFunctorial(_) => "NonFunctorial",
            Error::IllFormedFunctor(_) => "IllFormedFunctor",
            Error::IllFormedCategory(_) => "IllFormedCategory",
            Error::ParseError(_) => "ParseError",
            Error::ValidationError { .. } => "ValidationError",
        }
    }

    pub(crate) fn cap(what: impl Into<String>, size: u128, cap: u128) -> Self {
        Error::SizeCapExceeded { what: what.into(), size, cap }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
