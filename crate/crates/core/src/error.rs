use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("magma order must be at least 1")]
    EmptyMagma,

    #[error("table has {found} entries, expected {expected} for order {order}")]
    TableShape {
        order: usize,
        expected: usize,
        found: usize,
    },

    #[error("entry {value} at cell ({row}, {col}) is outside [0, {order})")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what}: order {order} exceeds the bound {bound}{hint}")]
    BoundExceeded {
        what: &'static str,
        order: usize,
        bound: usize,
        hint: &'static str,
    },

    #[error("magmas have different orders ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("axiom set must not be empty")]
    EmptyAxiomSet,

    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),

    #[error(
        "congruence closure is not stable at max_len {max_len} ({classes} classes, {next_classes} at max_len {next}); retry with a larger max_len"
    )]
    Unstable {
        max_len: usize,
        classes: usize,
        next: usize,
        next_classes: usize,
    },

    #[error("max_len must be at least {min}, got {got}")]
    MaxLenTooSmall { min: usize, got: usize },

    #[error("empty word")]
    EmptyWord,

    #[error("letter {letter} is outside the alphabet of size {alphabet}")]
    LetterOutOfRange { letter: usize, alphabet: usize },

    #[error("letter {0} is repeated in a word that must be repeat-free")]
    RepeatedLetter(usize),

    #[error("input is not a shelf: ({a}*{b})*{c} != ({a}*{c})*({b}*{c})")]
    NotShelf { a: usize, b: usize, c: usize },

    #[error("input is not an associative shelf")]
    NotAssociativeShelf,

    #[error("chain module of degree {degree} has {columns} basis tuples, above the cap {cap}")]
    CapExceeded {
        degree: usize,
        columns: usize,
        cap: usize,
    },

    #[error("({r}, {c}) is not a right-fixed pair: {x}*{r} = {got}")]
    NotRightFixed {
        r: usize,
        c: usize,
        x: usize,
        got: usize,
    },

    #[error("reduced homology is only defined for the one-term theory")]
    ReducedTwoTerm,

    #[error("laver table invariant failed: {0}")]
    LaverInvariant(String),

    #[error("block {block}: f({offset}) = {value} is outside the block of size {size}")]
    BlockFunction {
        block: usize,
        offset: usize,
        value: usize,
        size: usize,
    },

    #[error("block spec must contain at least one block of positive size")]
    EmptyBlockSpec,

    #[error("{0}")]
    Invalid(String),
}
