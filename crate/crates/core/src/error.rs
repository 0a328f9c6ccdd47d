use thiserror::Error;

/// Errors raised by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("category exceeds size caps ({objects} objects, {morphisms} morphisms; caps {max_objects}/{max_morphisms})")]
    CategoryTooLarge {
        objects: usize,
        morphisms: usize,
        max_objects: usize,
        max_morphisms: usize,
    },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("not a category: {count} law violation(s), first: {first}")]
    InvalidCategory { count: usize, first: String },
    #[error("index category is not filtering: {0}")]
    NonFilteringIndex(String),
    #[error("diagram is not functorial: {0}")]
    NonFunctorial(String),
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("limit enumeration exceeded {0} families")]
    TooManyFamilies(usize),
    #[error("incompatible morphisms: {0}")]
    IncompatibleMorphisms(String),
    #[error("f_0 . g is not the identity on the target")]
    SectionMismatch,
    #[error("isomorphism condition fails at index object {index}: {detail}")]
    ConditionFails { index: usize, detail: String },
    #[error("no system morphism witnesses the condition at index object {0}")]
    NoWitness(usize),
    #[error("induced map on points is not bijective: {0}")]
    NotBijective(String),
    #[error("relation is not a function on points: {0}")]
    NotAFunction(String),
    #[error("arity {requested} exceeds cap {cap}")]
    ArityCapExceeded { requested: usize, cap: usize },
    #[error("{what} exceeds cap {cap}")]
    SizeCapExceeded { what: String, cap: usize },
    #[error("set is not invariant under automorphisms: {0}")]
    NotInvariant(String),
    #[error("map is not definable: {0}")]
    NotDefinable(String),
    #[error("family is not directed: {0}")]
    NotDirected(String),
    #[error("chain is not ascending at step {0}")]
    NotAscending(usize),
    #[error("relation chain is not coarsening at step {0}")]
    NotCoarsening(usize),
    #[error("level {0} is not an equivalence relation")]
    NotEquivalence(usize),
    #[error("arity bound too small: {0}")]
    BoundTooSmall(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown definable set id `{0}`")]
    UnknownSetId(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
