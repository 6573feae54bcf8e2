use crate::error::{Error, Result};
use crate::word::Word;

/// A finite alphabet of even size with a fixed-point-free complement
/// involution. The default pairing is `2i <-> 2i+1`; arbitrary involutions
/// are accepted at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    complement: Vec<u8>,
}

impl Alphabet {
    /// Alphabet `{0, .., q-1}` with the default pairing `2i <-> 2i+1`.
    pub fn with_default_complement(q: usize) -> Result<Self> {
        if q == 0 || !q.is_multiple_of(2) {
            return Err(Error::AlphabetSizeNotEven(q));
        }
        if q > 256 {
            return Err(Error::AlphabetTooLarge(q));
        }
        let complement = (0..q as u32).map(|i| (i ^ 1) as u8).collect();
        Ok(Alphabet { complement })
    }

    /// Alphabet defined by an explicit complement table; entry `i` is the
    /// complement of symbol `i`.
    pub fn with_complement(table: Vec<u8>) -> Result<Self> {
        let q = table.len();
        if q == 0 || !q.is_multiple_of(2) {
            return Err(Error::AlphabetSizeNotEven(q));
        }
        if q > 256 {
            return Err(Error::AlphabetTooLarge(q));
        }
        for (a, &b) in table.iter().enumerate() {
            if b as usize >= q {
                return Err(Error::SymbolOutOfRange {
                    symbol: b as u32,
                    q,
                });
            }
            if b as usize == a {
                return Err(Error::ComplementFixedPoint(a as u8));
            }
            if table[b as usize] as usize != a {
                return Err(Error::ComplementNotInvolution { symbol: a as u8 });
            }
        }
        Ok(Alphabet { complement: table })
    }

    /// The binary alphabet `{0, 1}` with `0 <-> 1`.
    pub fn binary() -> Self {
        Alphabet::with_default_complement(2).expect("binary alphabet is valid")
    }

    pub fn q(&self) -> usize {
        self.complement.len()
    }

    pub fn complement_symbol(&self, a: u8) -> u8 {
        self.complement[a as usize]
    }

    pub fn has_default_complement(&self) -> bool {
        self.complement
            .iter()
            .enumerate()
            .all(|(i, &c)| c as u32 == (i as u32) ^ 1)
    }

    /// Checks every symbol of `u` against this alphabet.
    pub fn validate_word(&self, u: &Word) -> Result<()> {
        for &s in u.symbols() {
            if s as usize >= self.q() {
                return Err(Error::SymbolOutOfRange {
                    symbol: s as u32,
                    q: self.q(),
                });
            }
        }
        Ok(())
    }

    /// Letter-wise complement of `u`; an involution.
    pub fn complement_word(&self, u: &Word) -> Word {
        u.symbols()
            .iter()
            .map(|&s| self.complement_symbol(s))
            .collect()
    }

    /// Reversal of the letter-wise complement. Reversal and complement
    /// commute, so the order does not matter; an involution.
    pub fn reverse_complement(&self, u: &Word) -> Word {
        u.symbols()
            .iter()
            .rev()
            .map(|&s| self.complement_symbol(s))
            .collect()
    }

    /// Parses the text form of a word and validates it: digits for q <= 10,
    /// comma-separated integers otherwise (both accepted on input).
    pub fn parse_word(&self, input: &str) -> Result<Word> {
        let word = Word::parse_text(input).map_err(|reason| Error::WordParse {
            input: input.to_string(),
            reason,
        })?;
        self.validate_word(&word)?;
        Ok(word)
    }

    /// Canonical text form for this alphabet: contiguous digits when
    /// q <= 10, comma-separated integers otherwise.
    pub fn format_word(&self, u: &Word) -> String {
        if self.q() <= 10 {
            u.symbols().iter().map(|s| s.to_string()).collect()
        } else {
            let parts: Vec<String> = u.symbols().iter().map(|s| s.to_string()).collect();
            parts.join(",")
        }
    }
}
