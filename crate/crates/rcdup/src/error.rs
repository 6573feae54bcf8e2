use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type; variants are grouped by the module that raises them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // --- alphabets and words ---
    #[error("alphabet size {0} must be a positive even number")]
    AlphabetSizeNotEven(usize),
    #[error("alphabet size {0} exceeds the supported maximum of 256")]
    AlphabetTooLarge(usize),
    #[error("complement table has {got} entries, expected {expected}")]
    ComplementTableLength { expected: usize, got: usize },
    #[error("complement table is not an involution at symbol {symbol}")]
    ComplementNotInvolution { symbol: u8 },
    #[error("complement table maps symbol {0} to itself")]
    ComplementFixedPoint(u8),
    #[error("symbol {symbol} is out of range for an alphabet of size {q}")]
    SymbolOutOfRange { symbol: u32, q: usize },
    #[error("cannot parse word {input:?}: {reason}")]
    WordParse { input: String, reason: String },
    #[error("operation requires a non-empty word")]
    EmptyWord,
    #[error("operation requires a binary alphabet, got q={0}")]
    NotBinary(usize),

    // --- duplication events and cones ---
    #[error(
        "duplication window [{position}, {position}+{length}) does not fit in a word of length {word_len}"
    )]
    EventOutOfRange {
        position: usize,
        length: usize,
        word_len: usize,
    },
    #[error("duplication length must be positive")]
    ZeroDuplicationLength,
    #[error(
        "enumeration cap of {cap} words exceeded after completing {completed_levels} level(s)"
    )]
    EnumerationCapExceeded { cap: usize, completed_levels: usize },

    // --- factor statistics ---
    #[error("frequency vector over q={q} of factor length {factor_len} needs {expected} entries, got {got}")]
    FrequencyVectorLength {
        q: usize,
        factor_len: usize,
        expected: usize,
        got: usize,
    },
    #[error("frequency vector entry {index} is outside [0, 1]")]
    FrequencyOutOfRange { index: usize },
    #[error("frequency vector is not admissible: {reason}")]
    NotAdmissible { reason: String },

    // --- expressiveness ---
    #[error("seed word of length {len} is shorter than the duplication length k={k}")]
    SeedShorterThanK { len: usize, k: usize },
    #[error("push_letter requires k >= 2, got k={0}")]
    PushRequiresK2(usize),
    #[error("push_letter requires |s| >= k+1 (got |s|={len}, k={k})")]
    PushWordTooShort { len: usize, k: usize },
    #[error("push_letter index must satisfy 2 <= i <= |s|-1 (got i={i}, |s|={len})")]
    PushIndexOutOfRange { i: usize, len: usize },
    #[error("the system is not fully expressive: {reason}")]
    NotExpressive { reason: String },
    #[error("derivation step budget of {budget} events exceeded while building the suffix")]
    DerivationBudgetExceeded { budget: usize },
    #[error("internal invariant lost while deriving a suffix: {detail}")]
    DerivationInvariantLost { detail: String },

    // --- capacity ---
    #[error("word is not irreducible for the binary k=2 system")]
    NotIrreducible,
    #[error("growth counting requires an even n_max, got {0}")]
    GrowthOddLength(usize),

    // --- codes ---
    #[error("default beta map requires the default complement pairing 2i <-> 2i+1; supply an explicit beta table")]
    BetaNeedsDefaultComplement,
    #[error("beta table is not complement preserving at symbol {symbol}")]
    BetaNotComplementPreserving { symbol: u8 },
    #[error("beta table entry for symbol {symbol} is {value}, expected a bit")]
    BetaNotBinary { symbol: u8, value: u8 },
    #[error("operation requires a VT component code")]
    NotAVtComponent,
    #[error("burst length {0} must be at least 3; use a VT component for single insertions")]
    BurstLengthTooSmall(usize),
    #[error("component code length {component} does not match code length n={n}")]
    ComponentLengthMismatch { component: usize, n: usize },
    #[error("duplication length k={0} must be odd for this construction")]
    EvenDuplicationLength(usize),
    #[error("component code of kind {kind} corrects bursts of length {component_k}, but the code uses k={k}")]
    ComponentBurstMismatch {
        kind: &'static str,
        component_k: usize,
        k: usize,
    },
    #[error("word length {got} does not match the expected length {expected}")]
    CodewordLengthMismatch { expected: usize, got: usize },
    #[error("no deletion position restores a component codeword; more than one error occurred")]
    Uncorrectable,
    #[error("decoding is ambiguous: {candidates} distinct restorations survive the duplication filter")]
    AmbiguousDecode { candidates: usize },
    #[error("no surviving duplication site; the channel assumption was violated")]
    NoDuplicationSite,
    #[error("exhaustive construction bound {bound} exceeded (requested n={n})")]
    ExhaustiveBoundExceeded { n: usize, bound: usize },
    #[error("code size would overflow the supported range (q={q}, n={n})")]
    CodeSizeOverflow { q: usize, n: usize },
}
