use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("letter index {index} out of range for alphabet {alphabet}")]
    LetterOutOfRange { alphabet: char, index: u32 },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("mixed alphabets in one operation")]
    MixedAlphabets,
    #[error("operation requires alphabet {0}")]
    WrongAlphabet(char),
    #[error("{0} has no standard factorization")]
    NoFactorization(String),
    #[error("{0} is not a Lyndon word")]
    NotLyndon(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("series is not group-like: <S|{0} * {1}> != <S|{0}><S|{1}>")]
    NotGroupLike(String, String),
    #[error("divergent composition ({0})")]
    Divergent(String),
    #[error("relation table only reaches weight {have}, need {need}")]
    TableTooShallow { have: usize, need: usize },
    #[error("inconsistent relation from {provenance}: {poly} = 0")]
    Inconsistent { provenance: String, poly: String },
    #[error("relation from {provenance} is an algebraic dependence among irreducibles: {poly} = 0")]
    DependentIrreducibles { provenance: String, poly: String },
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
