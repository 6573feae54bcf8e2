//! Reverse-complement string-duplication systems.
//!
//! A duplication step picks a window of `k` consecutive symbols and inserts
//! the reversed, letter-wise complemented copy of the window immediately
//! after it. This crate treats that rule both as a generative system and as
//! a channel:
//!
//! - [`alphabet`] / [`word`]: complemented alphabets and symbol sequences,
//!   with the text formats used by the CLI.
//! - [`dup`]: the duplication rule itself, derivations, descendant and
//!   ancestor cones, irreducibility.
//! - [`freq`]: cyclic factor statistics, the binary cyclic derivative, and
//!   admissible frequency vectors.
//! - [`expressiveness`]: the full-expressiveness classifier for every
//!   alphabet and duplication length, plus constructive suffix derivations.
//! - [`capacity`]: binary `k = 2` irreducible-string machinery, witness
//!   derivations with constant overhead, and exhaustive growth counting.
//! - [`stochastic`]: the uniform random duplication process, derivative
//!   update tables, closed-form frequency dynamics, and the entropy upper
//!   bound.
//! - [`ecc`]: single-duplication-correcting codes for odd `k` built from
//!   binary component codes through complement-preserving mappings, with a
//!   filtering decoder and exhaustive certifiers.

pub mod alphabet;
pub mod capacity;
pub mod dup;
pub mod ecc;
mod error;
pub mod expressiveness;
pub mod freq;
pub mod stochastic;
pub mod word;

pub use alphabet::Alphabet;
pub use dup::{Derivation, DuplicationEvent};
pub use error::{Error, Result};
pub use freq::FrequencyVector;
pub use word::Word;

/// Exact rational type used for all frequency arithmetic.
pub use num_rational::Rational64;
