use thiserror::Error;

/// Errors raised while parsing or validating a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown symbol `{symbol}`")]
    UnknownSymbol {
        line: usize,
        column: usize,
        symbol: String,
    },
    #[error("line {line}: relation sides have different lengths ({lhs} vs {rhs})")]
    Inhomogeneous { line: usize, lhs: usize, rhs: usize },
    #[error("line {line}, column {column}: duplicate symbol `{symbol}`")]
    DuplicateSymbol {
        line: usize,
        column: usize,
        symbol: String,
    },
    #[error("line {line}: relation sides are letterwise identical")]
    TrivialRelation { line: usize },
    #[error("line {line}: empty relation side")]
    EmptyRelationSide { line: usize },
    #[error("alphabet has {count} symbols; at most {max} are supported")]
    AlphabetTooLarge { count: usize, max: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("preset `{preset}`: {message}")]
    ParamOutOfRange { preset: String, message: String },
    #[error("letter id {id} out of range for alphabet of size {rank}")]
    LetterOutOfRange { id: usize, rank: usize },
}

/// Errors raised by the enumeration, divisibility, tower and series engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("degree {requested} exceeds the configured degree cap {cap}")]
    DegreeCapExceeded { requested: usize, cap: usize },
    #[error(
        "degree {degree} holds {words} words, over the word budget {budget}; \
         raise the budget or lower the degree"
    )]
    WordBudgetExceeded {
        degree: usize,
        words: u64,
        budget: u64,
    },
    #[error("tower enumeration expanded {expanded} stage subsets, over the budget {budget}")]
    TowerBudgetExceeded { expanded: u64, budget: u64 },
    #[error("integer overflow in exact coefficient arithmetic")]
    Overflow,
    #[error("series constant term {0} is not a unit (must be 1 or -1)")]
    NonUnitConstantTerm(i64),
    #[error("denominator constant term must be nonzero")]
    ZeroDenominatorConstant,
    #[error("element `{0}` does not belong to this presentation's tables")]
    ForeignElement(String),
    #[error("table only covers degrees up to {built}, but degree {requested} was requested")]
    DegreeNotBuilt { built: usize, requested: usize },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}
