//! Full-expressiveness classification and constructive suffix derivations.
//!
//! For `k >= 2` the system generated by a seed `s` is fully expressive iff
//! `delta(s) = Sigma` (k even) or `delta(s) u delta(comp(s)) = Sigma`
//! (k odd), where `delta(s)` collects the letters at even positions of `s`
//! and the letters at odd positions of its complement. For `k = 1` only the
//! binary alphabet is fully expressive. The positive side is constructive:
//! [`derive_with_suffix`] emits a replayable derivation ending in any
//! requested suffix, built right to left by pushing letters towards the end
//! two positions at a time ([`push_letter`]).

use std::collections::BTreeSet;

use crate::alphabet::Alphabet;
use crate::dup::{apply_duplication, Derivation, DuplicationEvent};
use crate::error::{Error, Result};
use crate::word::Word;

/// Default cap on the number of events a suffix derivation may emit.
pub const DEFAULT_STEP_BUDGET: usize = 10_000;

/// The letter sets classifying expressiveness of a seed word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSets {
    /// Letters at even positions of `s` (0-based).
    pub sigma0: BTreeSet<u8>,
    /// Letters at odd positions of the complement of `s`.
    pub sigma1_comp: BTreeSet<u8>,
    /// `sigma0 u sigma1_comp`.
    pub delta: BTreeSet<u8>,
}

/// Which classification rule applied, given `(k, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpressivenessRule {
    K1Binary,
    K1LargeAlphabet,
    OddK,
    EvenK,
}

impl ExpressivenessRule {
    pub fn as_str(self) -> &'static str {
        match self {
            ExpressivenessRule::K1Binary => "k1-binary",
            ExpressivenessRule::K1LargeAlphabet => "k1-large-alphabet",
            ExpressivenessRule::OddK => "odd-k",
            ExpressivenessRule::EvenK => "even-k",
        }
    }
}

/// Outcome of the classifier, with the delta sets of the seed and of its
/// complement as witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpressivenessVerdict {
    pub expressive: bool,
    pub rule: ExpressivenessRule,
    pub seed_sets: DeltaSets,
    pub complement_seed_sets: DeltaSets,
}

/// The sets `Sigma_0(s)`, `Sigma_1(comp(s))` and their union `delta(s)`,
/// under 0-based positions (even positions are indices 0, 2, 4, ...).
pub fn delta_sets(alphabet: &Alphabet, s: &Word) -> Result<DeltaSets> {
    if s.is_empty() {
        return Err(Error::EmptyWord);
    }
    alphabet.validate_word(s)?;
    let mut sigma0 = BTreeSet::new();
    let mut sigma1_comp = BTreeSet::new();
    for (i, &letter) in s.symbols().iter().enumerate() {
        if i % 2 == 0 {
            sigma0.insert(letter);
        } else {
            sigma1_comp.insert(alphabet.complement_symbol(letter));
        }
    }
    let delta = sigma0.union(&sigma1_comp).copied().collect();
    Ok(DeltaSets {
        sigma0,
        sigma1_comp,
        delta,
    })
}

fn full_sigma(alphabet: &Alphabet) -> BTreeSet<u8> {
    (0..alphabet.q() as u32).map(|a| a as u8).collect()
}

/// Classifies the system seeded by `s` with duplication length `k`.
pub fn classify_expressive(
    alphabet: &Alphabet,
    k: usize,
    s: &Word,
) -> Result<ExpressivenessVerdict> {
    if k == 0 {
        return Err(Error::ZeroDuplicationLength);
    }
    if s.len() < k {
        return Err(Error::SeedShorterThanK { len: s.len(), k });
    }
    let seed_sets = delta_sets(alphabet, s)?;
    let complement_seed_sets = delta_sets(alphabet, &alphabet.complement_word(s))?;
    let sigma = full_sigma(alphabet);
    let (rule, expressive) = if k == 1 {
        if alphabet.q() == 2 {
            (ExpressivenessRule::K1Binary, true)
        } else {
            (ExpressivenessRule::K1LargeAlphabet, false)
        }
    } else if k % 2 == 1 {
        let union: BTreeSet<u8> = seed_sets
            .delta
            .union(&complement_seed_sets.delta)
            .copied()
            .collect();
        (ExpressivenessRule::OddK, union == sigma)
    } else {
        (ExpressivenessRule::EvenK, seed_sets.delta == sigma)
    };
    Ok(ExpressivenessVerdict {
        expressive,
        rule,
        seed_sets,
        complement_seed_sets,
    })
}

/// Moves the letter that is `i`-th from the end of `s` (0-based: `i`
/// letters follow it) to the `(i-2)`-nd position from the end, using
/// exactly two duplications. Writing `s = u v b c w` with `|v| = k-1` and
/// the letter inside `v`, the two events duplicate the k-window ending at
/// `b` and then the k-window ending at `c`.
pub fn push_letter(
    alphabet: &Alphabet,
    s: &Word,
    k: usize,
    i: usize,
) -> Result<(Word, Derivation)> {
    if k < 2 {
        return Err(Error::PushRequiresK2(k));
    }
    if s.len() < k + 1 {
        return Err(Error::PushWordTooShort { len: s.len(), k });
    }
    if i < 2 || i + 1 > s.len() {
        return Err(Error::PushIndexOutOfRange { i, len: s.len() });
    }
    alphabet.validate_word(s)?;
    let position = s.len() - 1 - i;
    let (first, second) = push_events(position, k);
    debug_assert!(first + k < s.len());
    let derivation = Derivation {
        seed: s.clone(),
        k,
        positions: vec![first, second],
    };
    let pushed = derivation.replay(alphabet)?;
    debug_assert_eq!(pushed.len(), s.len() + 2 * k);
    debug_assert_eq!(pushed[pushed.len() - 1 - (i - 2)], s[position]);
    Ok((pushed, derivation))
}

/// Event positions realizing one push of the letter at `position`: the
/// leftmost split `s = u v b c w` with the letter inside `v` gives
/// `|u| = max(0, position - k + 2)`; the second window ends one past the
/// inserted copy.
fn push_events(position: usize, k: usize) -> (usize, usize) {
    let u_len = position.saturating_sub(k - 2);
    (u_len, u_len + k + 1)
}

/// Derives, from an expressive seed, a word whose suffix equals `target`,
/// using the default step budget.
pub fn derive_with_suffix(
    alphabet: &Alphabet,
    s: &Word,
    k: usize,
    target: &Word,
) -> Result<Derivation> {
    derive_with_suffix_budgeted(alphabet, s, k, target, DEFAULT_STEP_BUDGET)
}

/// As [`derive_with_suffix`], with an explicit event budget.
pub fn derive_with_suffix_budgeted(
    alphabet: &Alphabet,
    s: &Word,
    k: usize,
    target: &Word,
    budget: usize,
) -> Result<Derivation> {
    let verdict = classify_expressive(alphabet, k, s)?;
    if !verdict.expressive {
        return Err(Error::NotExpressive {
            reason: format!(
                "classifier rule {} rejects seed {s} over q={}",
                verdict.rule.as_str(),
                alphabet.q()
            ),
        });
    }
    alphabet.validate_word(target)?;

    let derivation = if k == 1 {
        derive_suffix_unit(alphabet, s, target, budget)?
    } else {
        derive_suffix_general(alphabet, s, k, target, budget)?
    };

    // Replay once more against the requested suffix; a mismatch means the
    // construction itself is broken, not the caller.
    let result = derivation.replay(alphabet)?;
    let n = result.len();
    if n < target.len() || result.symbols()[n - target.len()..] != *target.symbols() {
        return Err(Error::DerivationInvariantLost {
            detail: format!("replayed word {result} does not end with {target}"),
        });
    }
    Ok(derivation)
}

/// Builder state shared by the suffix constructions: the evolving word, the
/// derivation so far, and the number of trailing letters already fixed.
struct SuffixBuilder<'a> {
    alphabet: &'a Alphabet,
    k: usize,
    word: Word,
    positions: Vec<usize>,
    fixed: usize,
    budget: usize,
}

impl<'a> SuffixBuilder<'a> {
    fn prefix_len(&self) -> usize {
        self.word.len() - self.fixed
    }

    fn emit(&mut self, position: usize) -> Result<()> {
        if self.positions.len() >= self.budget {
            return Err(Error::DerivationBudgetExceeded {
                budget: self.budget,
            });
        }
        debug_assert!(position + self.k <= self.prefix_len());
        self.word = apply_duplication(
            self.alphabet,
            &self.word,
            DuplicationEvent::new(position, self.k),
        )?;
        self.positions.push(position);
        Ok(())
    }

    /// Distances from the prefix end (0 = last prefix letter) of all
    /// occurrences of `letter` inside the prefix, ascending.
    fn distances_of(&self, letter: u8) -> Vec<usize> {
        let plen = self.prefix_len();
        (0..plen)
            .rev()
            .filter(|&pos| self.word[pos] == letter)
            .map(|pos| plen - 1 - pos)
            .collect()
    }

    fn suffix_duplication(&mut self) -> Result<()> {
        let plen = self.prefix_len();
        self.emit(plen - self.k)
    }

    /// Duplicates the leftmost window covering the occurrence of a letter
    /// at distance `d` from the prefix end.
    fn duplicate_over(&mut self, d: usize) -> Result<()> {
        let plen = self.prefix_len();
        let position = plen - 1 - d;
        self.emit(position.saturating_sub(self.k - 1))
    }

    /// One application of the push lemma on the occurrence at even
    /// distance `d >= 2`; afterwards the letter sits at distance `d - 2`.
    fn push_once(&mut self, d: usize) -> Result<()> {
        let plen = self.prefix_len();
        debug_assert!(d >= 2 && d < plen);
        let position = plen - 1 - d;
        let (first, second) = push_events(position, self.k);
        debug_assert!(first + self.k < plen);
        self.emit(first)?;
        self.emit(second)
    }

    /// Makes the prefix end with `letter`, running at least one push so the
    /// delta invariant survives into the next round.
    fn push_to_end(&mut self, letter: u8) -> Result<()> {
        let k = self.k;
        // A seed of length exactly k first grows to u rc(u) u.
        if self.prefix_len() == k {
            self.emit(0)?;
            self.emit(k)?;
        }
        loop {
            let distances = self.distances_of(letter);
            if let Some(&d) = distances.iter().find(|&&d| d >= 2 && d % 2 == 0) {
                let mut d = d;
                while d >= 2 {
                    self.push_once(d)?;
                    d -= 2;
                }
                return Ok(());
            }
            if distances.first() == Some(&0) {
                // Already the last letter; lift it to an even distance >= 2
                // with k-suffix duplications (one for even k, two for odd)
                // and push it back down.
                self.suffix_duplication()?;
                if k % 2 == 1 {
                    self.suffix_duplication()?;
                }
                continue;
            }
            if k % 2 == 1 {
                if let Some(&d) = distances.first() {
                    // Odd distance: one suffix duplication makes it even.
                    debug_assert!(d % 2 == 1);
                    self.suffix_duplication()?;
                    continue;
                }
                // The letter is absent; duplicate over its complement to
                // create an occurrence.
                let comp = self.alphabet.complement_symbol(letter);
                match self.distances_of(comp).first() {
                    Some(&d) => {
                        self.duplicate_over(d)?;
                        continue;
                    }
                    None => {
                        return Err(Error::DerivationInvariantLost {
                            detail: format!(
                                "neither {letter} nor its complement occurs in the prefix"
                            ),
                        })
                    }
                }
            } else {
                // Even k: every occurrence of the letter keeps its distance
                // parity, so manufacture one at even distance by duplicating
                // over the complement at an odd distance.
                let comp = self.alphabet.complement_symbol(letter);
                match self
                    .distances_of(comp)
                    .iter()
                    .find(|&&d| d % 2 == 1)
                    .copied()
                {
                    Some(d) => {
                        self.duplicate_over(d)?;
                        continue;
                    }
                    None => {
                        return Err(Error::DerivationInvariantLost {
                            detail: format!(
                                "letter {letter} has no even-distance occurrence and its \
                                 complement none at odd distance"
                            ),
                        })
                    }
                }
            }
        }
    }
}

/// Suffix construction for `k >= 2`: fix the target letters right to left,
/// each round operating only on the prefix before the fixed suffix.
fn derive_suffix_general(
    alphabet: &Alphabet,
    s: &Word,
    k: usize,
    target: &Word,
    budget: usize,
) -> Result<Derivation> {
    let mut builder = SuffixBuilder {
        alphabet,
        k,
        word: s.clone(),
        positions: Vec::new(),
        fixed: 0,
        budget,
    };
    for &letter in target.symbols().iter().rev() {
        builder.push_to_end(letter)?;
        builder.fixed += 1;
    }
    Ok(Derivation {
        seed: s.clone(),
        k,
        positions: builder.positions,
    })
}

/// Suffix construction for `k = 1` over the binary alphabet. The last seed
/// letter evolves into `l comp(l) target`: appending a letter that differs
/// from the current last one duplicates the last letter, while extending a
/// run duplicates the last letter of the preceding run.
fn derive_suffix_unit(
    alphabet: &Alphabet,
    s: &Word,
    target: &Word,
    budget: usize,
) -> Result<Derivation> {
    let mut derivation = Derivation::new(s.clone(), 1);
    if target.is_empty() {
        return Ok(derivation);
    }
    let mut word = s.clone();
    let mut final_run_start = s.len() - 1;
    let last = word[word.len() - 1];
    let to_append: Vec<u8> = std::iter::once(alphabet.complement_symbol(last))
        .chain(target.symbols().iter().copied())
        .collect();
    for letter in to_append {
        if derivation.positions.len() >= budget {
            return Err(Error::DerivationBudgetExceeded { budget });
        }
        let position = if word[word.len() - 1] != letter {
            // run change: duplicating the last letter appends its complement
            let p = word.len() - 1;
            final_run_start = word.len();
            p
        } else {
            // run extension: duplicate the last letter of the preceding run
            final_run_start - 1
        };
        word = apply_duplication(alphabet, &word, DuplicationEvent::new(position, 1))?;
        derivation.positions.push(position);
    }
    Ok(derivation)
}
