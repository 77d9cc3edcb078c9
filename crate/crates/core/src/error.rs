use alloc::string::String;

/// Whether a name or index refers to the object side or the attribute side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NameKind {
    Object,
    Attribute,
}

impl core::fmt::Display for NameKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NameKind::Object => f.write_str("object"),
            NameKind::Attribute => f.write_str("attribute"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("duplicate {kind} name `{name}`")]
    NameCollision { kind: NameKind, name: String },

    #[error("unknown {kind} name `{name}`")]
    UnknownName { kind: NameKind, name: String },

    #[error("empty {kind} name")]
    EmptyName { kind: NameKind },

    #[error("{kind} name `{name}` contains a line break")]
    InvalidName { kind: NameKind, name: String },

    #[error("relation shape does not match the declared names")]
    ShapeMismatch,

    #[error("{kind} set drawn from a universe of {found}, context has {expected}")]
    InvalidSet {
        kind: NameKind,
        expected: usize,
        found: usize,
    },

    #[error("the pair is not a preconcept: some listed object lacks a listed attribute")]
    InvalidPreconcept,

    #[error("operands belong to contexts of different shapes")]
    ContextMismatch,

    #[error("enumeration cap exceeded after {emitted} results")]
    CapExceeded { emitted: usize },

    #[error("base {kind} `{name}` does not occur in the extended context")]
    MissingEmbedding { kind: NameKind, name: String },

    #[error("{count} relationship(s) of the base context are absent from the extension")]
    RemovalsRejected { count: usize },

    #[error("{objects} objects exceed the brute-force oracle limit of {limit}")]
    TooLargeForOracle { objects: usize, limit: usize },

    #[error("density {value} is outside [0, 1]")]
    InvalidDensity { value: f64 },
}
