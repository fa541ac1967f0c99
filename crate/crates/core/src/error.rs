use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("alphabet has {0} letters, at most 32 are supported")]
    AlphabetTooLarge(usize),

    #[error("alphabet is empty")]
    EmptyAlphabet,

    #[error("duplicate symbol '{0}'")]
    DuplicateSymbol(char),

    #[error("match letter '{0}' is not in the alignment alphabet")]
    MissingMatchLetter(char),

    #[error("unknown alignment letter '{0}'")]
    UnknownLetter(char),

    #[error("seed letter '{0}' denotes a subset without the match letter")]
    SubsetLacksMatch(char),

    #[error("hash symbol '{0}' has no seed alphabet entry")]
    MissingHash(char),

    #[error("hash symbol '{0}' must denote exactly the match letter")]
    HashNotMatchOnly(char),

    #[error("letter index {0} is outside the alphabet")]
    LetterOutOfRange(usize),

    #[error("unknown seed symbol '{0}'")]
    UnknownSeedSymbol(char),

    #[error("seed is empty")]
    EmptySeed,

    #[error("seed has {0} non-hash positions, at most 64 are supported")]
    TooManyPositions(usize),

    #[error("text letter '{ch}' at position {pos} is not in the alphabet")]
    TextLetter { pos: usize, ch: char },

    #[error("no seeds given")]
    NoSeeds,

    #[error("seeds are defined over different alphabets")]
    MixedAlphabets,

    #[error("automata have different alphabet sizes ({0} vs {1})")]
    AlphabetMismatch(usize, usize),

    #[error("malformed automaton: {0}")]
    MalformedDfa(String),

    #[error("pattern position {0} matches no text letter")]
    VacuousPosition(usize),

    #[error("unknown pattern letter '{0}'")]
    UnknownPatternLetter(char),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
