use std::fmt;
use std::ops::Index;

/// A finite sequence of symbols, the carrier for seeds, descendants and
/// codewords. Symbols are small integers; validity against a particular
/// alphabet is checked by [`crate::Alphabet`] operations.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses a word from its text form without validating against an
    /// alphabet: a contiguous digit string, or comma-separated integers.
    pub fn parse_text(input: &str) -> Result<Self, String> {
        let trimmed = input.trim();
        if trimmed.is_empty() {
            return Ok(Word::empty());
        }
        if trimmed.contains(',') {
            let mut symbols = Vec::new();
            for part in trimmed.split(',') {
                let sym: u16 = part
                    .trim()
                    .parse()
                    .map_err(|_| format!("invalid symbol {:?}", part.trim()))?;
                if sym > 255 {
                    return Err(format!("symbol {sym} exceeds 255"));
                }
                symbols.push(sym as u8);
            }
            Ok(Word(symbols))
        } else {
            trimmed
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| format!("invalid digit {c:?}"))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Word)
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.0.clone();
        symbols.extend_from_slice(&other.0);
        Word(symbols)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Rotates the word left by `amount` positions.
    pub fn rotated_left(&self, amount: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let n = self.len();
        let amount = amount % n;
        let mut symbols = Vec::with_capacity(n);
        symbols.extend_from_slice(&self.0[amount..]);
        symbols.extend_from_slice(&self.0[..amount]);
        Word(symbols)
    }

    /// Plain (non-cyclic) factor containment.
    pub fn contains_factor(&self, needle: &Word) -> bool {
        if needle.is_empty() {
            return true;
        }
        if needle.len() > self.len() {
            return false;
        }
        self.0.windows(needle.len()).any(|w| w == needle.symbols())
    }

    /// Maximum symbol value, or `None` for the empty word.
    pub fn max_symbol(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }
}

impl From<Vec<u8>> for Word {
    fn from(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }
}

impl From<&[u8]> for Word {
    fn from(symbols: &[u8]) -> Self {
        Word(symbols.to_vec())
    }
}

impl FromIterator<u8> for Word {
    fn from_iter<T: IntoIterator<Item = u8>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Index<usize> for Word {
    type Output = u8;

    fn index(&self, index: usize) -> &u8 {
        &self.0[index]
    }
}

impl fmt::Display for Word {
    /// Content-based text form: digits while every symbol is below 10,
    /// comma-separated integers otherwise. Alphabet-aware formatting lives
    /// on [`crate::Alphabet::format_word`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}
