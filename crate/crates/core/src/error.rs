use thiserror::Error;

/// Errors raised by loaders, constructors and the bounded searches.
#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplication is not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NonAssociative { a: String, b: String, c: String },

    #[error("{element} is not a two-sided identity")]
    BadIdentity { element: String },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("{0} is not idempotent")]
    NotIdempotent(String),

    #[error("map is not multiplicative: f({x}·{y}) ≠ f({x})·f({y})")]
    NotMultiplicative { x: String, y: String },

    #[error("congruence has the wrong sidedness for this operation: {0}")]
    WrongSidedness(String),

    #[error("monoid mismatch: {0}")]
    MonoidMismatch(String),

    #[error("action axiom fails: {0}")]
    ActionAxiom(String),

    #[error("left action is not flat: {0}")]
    NotFlat(String),

    #[error("{0} is not a group")]
    NotAGroup(String),

    #[error("category axiom fails: {0}")]
    CategoryAxiom(String),

    #[error("functor law fails: {0}")]
    FunctorLaw(String),

    #[error("size cap exceeded for {what}: {actual} > {limit}")]
    SizeCap {
        what: String,
        limit: usize,
        actual: usize,
    },

    #[error("enumeration exceeded {0} elements")]
    CapExceeded(usize),

    #[error("parse error at position {position}: expected {expected}")]
    Parse { position: usize, expected: String },

    #[error("unresolved reference `{0}`")]
    UnresolvedReference(String),

    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonAssociative { .. } => "non_associative",
            Error::BadIdentity { .. } => "bad_identity",
            Error::UnknownLabel(_) => "unknown_label",
            Error::DuplicateLabel(_) => "duplicate_label",
            Error::MalformedTable(_) => "malformed_table",
            Error::NotIdempotent(_) => "not_idempotent",
            Error::NotMultiplicative { .. } => "not_multiplicative",
            Error::WrongSidedness(_) => "wrong_sidedness",
            Error::MonoidMismatch(_) => "monoid_mismatch",
            Error::ActionAxiom(_) => "action_axiom",
            Error::NotFlat(_) => "not_flat",
            Error::NotAGroup(_) => "not_a_group",
            Error::CategoryAxiom(_) => "category_axiom",
            Error::FunctorLaw(_) => "functor_law",
            Error::SizeCap { .. } => "size_cap",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::Parse { .. } => "parse_error",
            Error::UnresolvedReference(_) => "unresolved_reference",
            Error::UnsupportedFormat(_) => "unsupported_format",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }

    /// Cap and size-bound failures, as opposed to invalid input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::SizeCap { .. } | Error::CapExceeded(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
