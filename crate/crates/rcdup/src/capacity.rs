//! Binary `k = 2` irreducible-string machinery and exhaustive growth
//! counting.
//!
//! Irreducible binary words for the length-2 rule are exactly the words
//! avoiding the factors 0011, 0101, 1010, 1100; equivalently the factors of
//! `(0^2 0^* 1)^*` together with the factors of `(1^2 1^* 0)^*`. The
//! recognizer here is the order-3 De Bruijn graph with those four edges
//! removed and follower-equivalent states merged. Any irreducible word can
//! be reached from the seed 00 inside a word at most 11 (zero-run family)
//! or 13 (one-run family) symbols longer; [`derive_irreducible_witness`]
//! replays that construction event by event.

use std::collections::HashSet;

use crate::alphabet::Alphabet;
use crate::dup::{is_irreducible, Derivation};
use crate::error::{Error, Result};
use crate::word::Word;

/// Default cap on the number of distinct words a growth level may hold.
pub use crate::dup::DEFAULT_ENUMERATION_CAP;

const STATES: usize = 6;
const DEAD: u8 = u8::MAX;

/// Recognizer for the binary irreducible words of the length-2 rule: the
/// pruned order-3 De Bruijn graph after merging follower-equivalent
/// vertices, read with every state both initial and accepting.
///
/// States 0..3 carry the zero-heavy component (merged {000, 100}, then
/// contexts 001 and 010), states 3..6 the one-heavy component (merged
/// {011, 111}, then 110 and 101).
#[derive(Clone, Debug)]
pub struct IrreducibleAutomaton {
    transitions: [[u8; STATES]; 2],
}

impl Default for IrreducibleAutomaton {
    fn default() -> Self {
        Self::new()
    }
}

impl IrreducibleAutomaton {
    pub fn new() -> Self {
        // state indices: 0 = {000,100}, 1 = 001, 2 = 010,
        //                3 = {011,111}, 4 = 110, 5 = 101
        let on_zero = [0, 2, 0, 4, DEAD, DEAD];
        let on_one = [1, DEAD, DEAD, 3, 5, 3];
        IrreducibleAutomaton {
            transitions: [on_zero, on_one],
        }
    }

    pub fn state_count(&self) -> usize {
        STATES
    }

    fn step(&self, alive: u8, symbol: u8) -> u8 {
        let row = &self.transitions[symbol as usize];
        let mut next = 0u8;
        for (state, &target) in row.iter().enumerate() {
            if alive & (1 << state) != 0 && target != DEAD {
                next |= 1 << target;
            }
        }
        next
    }

    /// Membership: some path in the graph reads `u`.
    pub fn contains(&self, u: &Word) -> bool {
        let mut alive: u8 = (1 << STATES) - 1;
        for &symbol in u.symbols() {
            debug_assert!(symbol < 2);
            alive = self.step(alive, symbol);
            if alive == 0 {
                return false;
            }
        }
        true
    }

    /// Exactly the irreducible words of length `n`, in lexicographic order,
    /// generated by walking paths of the recognizer.
    pub fn enumerate(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(n);
        self.walk((1 << STATES) - 1, n, &mut prefix, &mut out);
        out
    }

    fn walk(&self, alive: u8, remaining: usize, prefix: &mut Vec<u8>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word::new(prefix.clone()));
            return;
        }
        for symbol in 0..2u8 {
            let next = self.step(alive, symbol);
            if next != 0 {
                prefix.push(symbol);
                self.walk(next, remaining - 1, prefix, out);
                prefix.pop();
            }
        }
    }
}

/// All binary irreducible words of length `n` for the length-2 rule.
pub fn enumerate_irreducible(n: usize) -> Vec<Word> {
    IrreducibleAutomaton::new().enumerate(n)
}

/// The two families of Lemma-style irreducible words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrrFamily {
    /// Factors of `(0^2 0^* 1)^*`: isolated ones, interior zero-runs >= 2.
    ZeroRuns,
    /// Factors of `(1^2 1^* 0)^*`.
    OneRuns,
}

impl IrrFamily {
    /// The run letter of the family.
    fn run_symbol(self) -> u8 {
        match self {
            IrrFamily::ZeroRuns => 0,
            IrrFamily::OneRuns => 1,
        }
    }

    /// Guaranteed overhead bound `|w| - |u|` of the witness construction.
    pub fn overhead_bound(self) -> usize {
        match self {
            IrrFamily::ZeroRuns => 11,
            IrrFamily::OneRuns => 13,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IrrFamily::ZeroRuns => "zero-runs",
            IrrFamily::OneRuns => "one-runs",
        }
    }
}

fn avoids(u: &Word, a: &[u8], b: &[u8]) -> bool {
    !u.contains_factor(&Word::from(a)) && !u.contains_factor(&Word::from(b))
}

/// Family membership of a binary word; irreducible words fall in at least
/// one family, and words like `10` in both (the zero-run family wins).
pub fn classify_family(u: &Word) -> Option<IrrFamily> {
    if avoids(u, &[1, 1], &[1, 0, 1]) {
        Some(IrrFamily::ZeroRuns)
    } else if avoids(u, &[0, 0], &[0, 1, 0]) {
        Some(IrrFamily::OneRuns)
    } else {
        None
    }
}

/// A replayable construction putting an irreducible word inside a
/// descendant of the seed 00 with constant overhead.
#[derive(Clone, Debug)]
pub struct IrreducibleWitness {
    /// The containing word, a descendant of 00.
    pub word: Word,
    pub derivation: Derivation,
    pub family: IrrFamily,
}

/// Embeds the irreducible word `u` into `b^{l_1} o b^{l_2} o ... b^{l_m} o`
/// with every `l_i >= 2`, adding at most 4 symbols; returns the run
/// lengths.
fn block_extension(u: &Word, family: IrrFamily) -> Vec<usize> {
    let b = family.run_symbol();
    let lead = u.symbols().iter().take_while(|&&s| s == b).count();

    let mut extended: Vec<u8> = Vec::with_capacity(u.len() + 4);
    if lead == u.len() {
        // a pure run of the family letter
        extended.extend(std::iter::repeat_n(b, lead.max(2)));
    } else {
        if lead < 2 {
            extended.extend(std::iter::repeat_n(b, 2 - lead));
        }
        extended.extend_from_slice(u.symbols());
        let trail = u
            .symbols()
            .iter()
            .rev()
            .take_while(|&&s| s == b)
            .count();
        if trail == 1 {
            extended.push(b);
        }
    }
    if *extended.last().expect("nonempty") == b {
        extended.push(1 - b);
    }
    debug_assert!(extended.len() <= u.len() + 4);
    debug_assert!(Word::new(extended.clone()).contains_factor(u));

    // parse the run lengths; every terminator is a single opposite letter
    let mut blocks = Vec::new();
    let mut run = 0usize;
    for &s in &extended {
        if s == b {
            run += 1;
        } else {
            debug_assert!(run >= 2);
            blocks.push(run);
            run = 0;
        }
    }
    debug_assert_eq!(run, 0);
    blocks
}

/// Derives, from the seed 00, a word containing the irreducible `u` as a
/// factor with overhead at most 11 (zero-run family) or 13 (one-run
/// family). The blocks of `u` are emitted right to left between a shrinking
/// reservoir of repeated letters and the already-emitted tail.
pub fn derive_irreducible_witness(u: &Word) -> Result<IrreducibleWitness> {
    let binary = Alphabet::binary();
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    binary.validate_word(u)?;
    if !is_irreducible(&binary, u, 2) {
        return Err(Error::NotIrreducible);
    }

    let seed = Word::new(vec![0, 0]);
    if *u == seed {
        let derivation = Derivation::new(seed.clone(), 2);
        return Ok(IrreducibleWitness {
            word: seed,
            derivation,
            family: IrrFamily::ZeroRuns,
        });
    }

    let family = classify_family(u).ok_or(Error::NotIrreducible)?;
    let blocks = block_extension(u, family);
    let t = blocks.iter().filter(|&&l| l % 2 == 0).count();
    let reservoir = 2 + 2 * t.div_ceil(2);

    // Event positions are laid out against the evolving word
    //   family 0:  00 1^i [blocks...] 00        (offset 0)
    //   family 1:  00 11 0^i [blocks...] 11     (offset 2)
    let offset = match family {
        IrrFamily::ZeroRuns => 0,
        IrrFamily::OneRuns => 2,
    };
    let mut positions = Vec::new();
    if family == IrrFamily::OneRuns {
        positions.push(0); // 00 -> 0011
    }
    for _ in 0..reservoir / 2 {
        positions.push(offset); // each event grows the reservoir run by two
    }
    positions.push(reservoir + offset); // append the closing pair

    let mut i = reservoir;
    for &l in blocks.iter().rev() {
        if l % 2 == 0 {
            debug_assert!(i >= 3);
            for _ in 0..l / 2 {
                positions.push(i - 1 + offset);
            }
            i -= 1;
        } else {
            debug_assert!(i >= 2);
            positions.push(i + 1 + offset);
            for _ in 0..(l - 1) / 2 {
                positions.push(i + offset);
            }
        }
    }

    let derivation = Derivation {
        seed,
        k: 2,
        positions,
    };
    let word = derivation.replay(&binary)?;
    if !word.contains_factor(u) {
        return Err(Error::DerivationInvariantLost {
            detail: format!("witness {word} does not contain {u}"),
        });
    }
    if word.len() > u.len() + family.overhead_bound() {
        return Err(Error::DerivationInvariantLost {
            detail: format!(
                "witness length {} exceeds |u| + {} for {u}",
                word.len(),
                family.overhead_bound()
            ),
        });
    }
    Ok(IrreducibleWitness {
        word,
        derivation,
        family,
    })
}

/// One row of the exhaustive growth table of the system seeded by 00.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthRow {
    pub n: usize,
    pub count: u64,
    /// `log2(count) / n`; at most 1.
    pub rate: f64,
}

/// Exact per-length descendant counts; `truncated_at` marks the first
/// length whose level blew past the cap, if any.
#[derive(Clone, Debug)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    pub truncated_at: Option<usize>,
}

fn expand_packed(word: u64, len: usize, out: &mut HashSet<u64>) {
    for i in 0..=len - 2 {
        let a = (word >> i) & 1;
        let b = (word >> (i + 1)) & 1;
        let insert = (b ^ 1) | ((a ^ 1) << 1);
        let low = word & ((1u64 << (i + 2)) - 1);
        let high = word >> (i + 2);
        out.insert(low | (insert << (i + 2)) | (high << (i + 4)));
    }
}

/// Counts `|D^l(00)|` for every level, reported by word length
/// `n = 2l + 2` up to `n_max`, by level-order BFS with per-level
/// deduplication (levels never share lengths, so this is a global dedup).
pub fn count_descendants_by_length(n_max: usize, cap: usize) -> Result<GrowthTable> {
    if !n_max.is_multiple_of(2) {
        return Err(Error::GrowthOddLength(n_max));
    }
    if n_max > 60 {
        return Err(Error::ExhaustiveBoundExceeded { n: n_max, bound: 60 });
    }
    let mut rows = Vec::new();
    let mut truncated_at = None;
    let mut level: HashSet<u64> = HashSet::new();
    level.insert(0b00);
    let mut len = 2usize;
    if n_max >= 2 {
        rows.push(GrowthRow {
            n: 2,
            count: 1,
            rate: 0.0,
        });
    }
    'outer: while len + 2 <= n_max {
        let mut next = HashSet::new();
        for &word in &level {
            expand_packed(word, len, &mut next);
            if next.len() > cap {
                truncated_at = Some(len + 2);
                break 'outer;
            }
        }
        len += 2;
        let count = next.len() as u64;
        rows.push(GrowthRow {
            n: len,
            count,
            rate: (count as f64).log2() / len as f64,
        });
        level = next;
    }
    Ok(GrowthTable { rows, truncated_at })
}
