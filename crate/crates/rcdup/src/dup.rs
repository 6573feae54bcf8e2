//! The reverse-complement duplication rule and the cones it generates.
//!
//! A duplication event on `x = uvw` with `|u| = i`, `|v| = k` produces
//! `u v rc(v) w`: the reverse-complement copy of the window is inserted
//! immediately after it. Out-of-range events are errors rather than
//! identities, so replay bugs surface instead of silently no-opping.

use std::collections::HashSet;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::Word;

/// Default cap on the number of distinct words an enumeration may hold.
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

/// One duplication: the window `[position, position + length)` is copied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DuplicationEvent {
    pub position: usize,
    pub length: usize,
}

impl DuplicationEvent {
    pub fn new(position: usize, length: usize) -> Self {
        DuplicationEvent { position, length }
    }
}

/// An ordered list of duplication events replayable from a seed; the witness
/// object returned by every constructive derivation in this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub seed: Word,
    pub k: usize,
    pub positions: Vec<usize>,
}

impl Derivation {
    pub fn new(seed: Word, k: usize) -> Self {
        Derivation {
            seed,
            k,
            positions: Vec::new(),
        }
    }

    pub fn events(&self) -> impl Iterator<Item = DuplicationEvent> + '_ {
        let k = self.k;
        self.positions
            .iter()
            .map(move |&position| DuplicationEvent::new(position, k))
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Replays every event from the seed, validating bounds and the final
    /// length `|seed| + k * events`.
    pub fn replay(&self, alphabet: &Alphabet) -> Result<Word> {
        let mut word = self.seed.clone();
        for event in self.events() {
            word = apply_duplication(alphabet, &word, event)?;
        }
        debug_assert_eq!(word.len(), self.seed.len() + self.k * self.positions.len());
        Ok(word)
    }
}

/// Applies one duplication event: `u v w -> u v rc(v) w`.
pub fn apply_duplication(alphabet: &Alphabet, u: &Word, event: DuplicationEvent) -> Result<Word> {
    if event.length == 0 {
        return Err(Error::ZeroDuplicationLength);
    }
    let end = event.position.checked_add(event.length);
    match end {
        Some(end) if end <= u.len() => {}
        _ => {
            return Err(Error::EventOutOfRange {
                position: event.position,
                length: event.length,
                word_len: u.len(),
            })
        }
    }
    let end = event.position + event.length;
    let mut symbols = Vec::with_capacity(u.len() + event.length);
    symbols.extend_from_slice(&u.symbols()[..end]);
    symbols.extend(
        u.symbols()[event.position..end]
            .iter()
            .rev()
            .map(|&s| alphabet.complement_symbol(s)),
    );
    symbols.extend_from_slice(&u.symbols()[end..]);
    Ok(Word::new(symbols))
}

/// All words one duplication step away from `u`.
pub fn descendants_one(alphabet: &Alphabet, u: &Word, k: usize) -> HashSet<Word> {
    let mut out = HashSet::new();
    if k == 0 || u.len() < k {
        return out;
    }
    for i in 0..=u.len() - k {
        let child = apply_duplication(alphabet, u, DuplicationEvent::new(i, k))
            .expect("window is in range");
        out.insert(child);
    }
    out
}

/// The exact descendant set `D^levels(u)`, deduplicated. `levels = 0` yields
/// `{u}`. The `cap` bounds the total number of distinct words held at any
/// level; exceeding it reports how many levels completed.
pub fn descendants(
    alphabet: &Alphabet,
    u: &Word,
    k: usize,
    levels: usize,
    cap: usize,
) -> Result<HashSet<Word>> {
    let mut current: HashSet<Word> = HashSet::new();
    current.insert(u.clone());
    for level in 0..levels {
        let mut next = HashSet::new();
        for word in &current {
            for child in descendants_one(alphabet, word, k) {
                next.insert(child);
                if next.len() > cap {
                    return Err(Error::EnumerationCapExceeded {
                        cap,
                        completed_levels: level,
                    });
                }
            }
        }
        current = next;
    }
    Ok(current)
}

/// Positions `p >= k` where `u[p..p+k)` is the reverse-complement copy of
/// the window `u[p-k..p)` immediately before it, i.e. the sites where one
/// deduplication step may delete `u[p..p+k)`.
pub fn dedup_sites(alphabet: &Alphabet, u: &Word, k: usize) -> Vec<usize> {
    let mut sites = Vec::new();
    if k == 0 || u.len() < 2 * k {
        return sites;
    }
    for p in k..=u.len() - k {
        let is_site = (0..k).all(|j| {
            u[p + j] == alphabet.complement_symbol(u[p - 1 - j]) // rc of the preceding window
        });
        if is_site {
            sites.push(p);
        }
    }
    sites
}

/// The one-step ancestor set `A^1(u)`: every word obtained by deleting the
/// copied window of a deduplication site. Empty iff `u` is irreducible.
pub fn ancestors_one(alphabet: &Alphabet, u: &Word, k: usize) -> HashSet<Word> {
    dedup_sites(alphabet, u, k)
        .into_iter()
        .map(|p| {
            let mut symbols = Vec::with_capacity(u.len() - k);
            symbols.extend_from_slice(&u.symbols()[..p]);
            symbols.extend_from_slice(&u.symbols()[p + k..]);
            Word::new(symbols)
        })
        .collect()
}

/// The exactly-t-step ancestor set `A^t(u)`, deduplicated per level.
pub fn ancestors(alphabet: &Alphabet, u: &Word, k: usize, t: usize) -> HashSet<Word> {
    let mut current: HashSet<Word> = HashSet::new();
    current.insert(u.clone());
    for _ in 0..t {
        let mut next = HashSet::new();
        for word in &current {
            next.extend(ancestors_one(alphabet, word, k));
        }
        current = next;
    }
    current
}

/// A word is irreducible when no deduplication site exists.
pub fn is_irreducible(alphabet: &Alphabet, u: &Word, k: usize) -> bool {
    dedup_sites(alphabet, u, k).is_empty()
}
