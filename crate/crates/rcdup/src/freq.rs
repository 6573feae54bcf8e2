//! Cyclic factor statistics and admissible frequency vectors.
//!
//! Counts are taken cyclically (indices mod the word length), so the
//! prefix/suffix marginal flow identities hold exactly; everything is kept
//! in exact rational arithmetic, with `f64` views for the stochastic layer.

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::Word;

/// A vector indexed by all factors of a fixed length in lexicographic
/// order, holding exact rational frequencies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencyVector {
    q: usize,
    factor_len: usize,
    entries: Vec<Rational64>,
}

fn table_size(q: usize, factor_len: usize) -> Option<usize> {
    (q as u64).checked_pow(factor_len as u32).and_then(|n| {
        if n <= (1 << 24) {
            Some(n as usize)
        } else {
            None
        }
    })
}

impl FrequencyVector {
    pub fn new(q: usize, factor_len: usize, entries: Vec<Rational64>) -> Result<Self> {
        let expected = table_size(q, factor_len).ok_or(Error::FrequencyVectorLength {
            q,
            factor_len,
            expected: usize::MAX,
            got: entries.len(),
        })?;
        if entries.len() != expected {
            return Err(Error::FrequencyVectorLength {
                q,
                factor_len,
                expected,
                got: entries.len(),
            });
        }
        Ok(FrequencyVector {
            q,
            factor_len,
            entries,
        })
    }

    /// Builds frequencies `count / total` from raw cyclic counts.
    pub fn from_counts(q: usize, factor_len: usize, counts: &[u64], total: u64) -> Result<Self> {
        let entries = counts
            .iter()
            .map(|&c| Rational64::new(c as i64, total as i64))
            .collect();
        FrequencyVector::new(q, factor_len, entries)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn factor_len(&self) -> usize {
        self.factor_len
    }

    pub fn entries(&self) -> &[Rational64] {
        &self.entries
    }

    /// Lexicographic index of a factor: `sum v_j * q^(l-1-j)`.
    pub fn factor_index(q: usize, factor: &[u8]) -> usize {
        factor
            .iter()
            .fold(0usize, |acc, &s| acc * q + s as usize)
    }

    /// The factor at a lexicographic index.
    pub fn factor_at(q: usize, factor_len: usize, mut index: usize) -> Word {
        let mut symbols = vec![0u8; factor_len];
        for j in (0..factor_len).rev() {
            symbols[j] = (index % q) as u8;
            index /= q;
        }
        Word::new(symbols)
    }

    pub fn entry(&self, factor: &[u8]) -> Rational64 {
        self.entries[Self::factor_index(self.q, factor)]
    }

    pub fn sum(&self) -> Rational64 {
        self.entries.iter().sum()
    }

    /// Exact admissibility: entries in [0, 1], total 1, and for every
    /// (l-1)-factor v' the outgoing and incoming marginals agree,
    /// `sum_a f(v'a) = sum_a f(av')`.
    pub fn is_admissible(&self) -> bool {
        self.admissibility_failure().is_none()
    }

    /// The first admissibility violation, as a human-readable reason.
    pub fn admissibility_failure(&self) -> Option<String> {
        let zero = Rational64::zero();
        let one = Rational64::one();
        for (i, e) in self.entries.iter().enumerate() {
            if *e < zero || *e > one {
                return Some(format!("entry {i} is outside [0, 1]"));
            }
        }
        if self.sum() != one {
            return Some(format!("entries sum to {}, not 1", self.sum()));
        }
        if self.factor_len == 0 {
            return None;
        }
        let prefix_count = table_size(self.q, self.factor_len - 1).expect("smaller table fits");
        for vp in 0..prefix_count {
            let outgoing: Rational64 = (0..self.q).map(|a| self.entries[vp * self.q + a]).sum();
            let incoming: Rational64 = (0..self.q)
                .map(|a| self.entries[a * prefix_count + vp])
                .sum();
            if outgoing != incoming {
                let factor = Self::factor_at(self.q, self.factor_len - 1, vp);
                return Some(format!(
                    "marginal flow mismatch at {factor}: outgoing {outgoing} != incoming {incoming}"
                ));
            }
        }
        None
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.entries
            .iter()
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .collect()
    }
}

/// Cyclic occurrence counts of every factor of length `factor_len` in `u`,
/// indexed lexicographically; each of the `|u|` cyclic start positions
/// contributes exactly one occurrence.
pub fn cyclic_factor_counts(alphabet: &Alphabet, u: &Word, factor_len: usize) -> Result<Vec<u64>> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    alphabet.validate_word(u)?;
    let q = alphabet.q();
    let size = table_size(q, factor_len).ok_or(Error::FrequencyVectorLength {
        q,
        factor_len,
        expected: usize::MAX,
        got: 0,
    })?;
    let n = u.len();
    let mut counts = vec![0u64; size];
    for start in 0..n {
        let mut index = 0usize;
        for j in 0..factor_len {
            index = index * q + u[(start + j) % n] as usize;
        }
        counts[index] += 1;
    }
    Ok(counts)
}

/// Cyclic factor frequencies of `u`; always admissible at tolerance zero.
pub fn cyclic_factor_stats(
    alphabet: &Alphabet,
    u: &Word,
    factor_len: usize,
) -> Result<FrequencyVector> {
    let counts = cyclic_factor_counts(alphabet, u, factor_len)?;
    FrequencyVector::from_counts(alphabet.q(), factor_len, &counts, u.len() as u64)
}

/// The binary cyclic derivative: successive differences including the
/// wrap-around one. Two-to-one: a word and its complement share it.
pub fn cyclic_derivative(alphabet: &Alphabet, u: &Word) -> Result<Word> {
    if alphabet.q() != 2 {
        return Err(Error::NotBinary(alphabet.q()));
    }
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    alphabet.validate_word(u)?;
    let n = u.len();
    Ok((0..n).map(|j| u[(j + 1) % n] ^ u[j]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_text(s).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn cyclic_pairs_of_0011() {
        let b = Alphabet::binary();
        let f = cyclic_factor_stats(&b, &w("0011"), 2).unwrap();
        for pair in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
            assert_eq!(f.entry(&pair), rat(1, 4));
        }
        assert!(f.is_admissible());
    }

    #[test]
    fn unit_factors_of_00() {
        let b = Alphabet::binary();
        let f = cyclic_factor_stats(&b, &w("00"), 1).unwrap();
        assert_eq!(f.entry(&[0]), rat(1, 1));
        assert_eq!(f.entry(&[1]), rat(0, 1));
    }

    #[test]
    fn alternation_symmetry() {
        let b = Alphabet::binary();
        for s in ["0", "01", "0010110", "111010010"] {
            let f = cyclic_factor_stats(&b, &w(s), 2).unwrap();
            assert_eq!(f.entry(&[0, 1]), f.entry(&[1, 0]), "word {s}");
            assert!(f.is_admissible(), "word {s}");
        }
    }

    #[test]
    fn stats_reject_empty_word() {
        let b = Alphabet::binary();
        assert_eq!(
            cyclic_factor_stats(&b, &Word::empty(), 1).unwrap_err(),
            Error::EmptyWord
        );
    }

    #[test]
    fn admissibility_judgements() {
        let mk = |vals: [(i64, i64); 4]| {
            FrequencyVector::new(2, 2, vals.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
        };
        // the limit vector (0, 1/2, 1/2, 0)
        assert!(mk([(0, 1), (1, 2), (1, 2), (0, 1)]).is_admissible());
        // point mass on 00
        assert!(mk([(1, 1), (0, 1), (0, 1), (0, 1)]).is_admissible());
        // outgoing marginal of "0" is 1, incoming is 1/2
        let bad = mk([(1, 2), (1, 2), (0, 1), (0, 1)]);
        assert!(!bad.is_admissible());
        assert!(bad
            .admissibility_failure()
            .unwrap()
            .contains("marginal flow mismatch"));
    }

    #[test]
    fn derivative_cases() {
        let b = Alphabet::binary();
        assert_eq!(cyclic_derivative(&b, &w("00")).unwrap().to_string(), "00");
        assert_eq!(
            cyclic_derivative(&b, &w("0011")).unwrap().to_string(),
            "0101"
        );
        assert_eq!(cyclic_derivative(&b, &w("01")).unwrap().to_string(), "11");
    }

    #[test]
    fn derivative_is_two_to_one() {
        let b = Alphabet::binary();
        for s in ["0", "01", "0011", "0110100", "10101"] {
            let u = w(s);
            let v = b.complement_word(&u);
            assert_eq!(
                cyclic_derivative(&b, &u).unwrap(),
                cyclic_derivative(&b, &v).unwrap()
            );
        }
    }

    #[test]
    fn derivative_requires_binary() {
        let q4 = Alphabet::with_default_complement(4).unwrap();
        assert_eq!(
            cyclic_derivative(&q4, &w("0123")).unwrap_err(),
            Error::NotBinary(4)
        );
    }

    #[test]
    fn factor_indexing_roundtrip() {
        for idx in 0..64usize {
            let f = FrequencyVector::factor_at(4, 3, idx);
            assert_eq!(FrequencyVector::factor_index(4, f.symbols()), idx);
        }
    }
}
