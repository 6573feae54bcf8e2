//! Codes correcting a single reverse-complement duplication of odd length.
//!
//! A binary component code correcting one burst insertion of length `k` is
//! lifted to any even-size alphabet through a complement-preserving mapping
//! `beta`: the q-ary code is the `beta`-preimage of the component code. The
//! decoder maps the received word to binary, asks the component code for
//! every window whose removal restores a codeword, and then filters those
//! positions on the q-ary word: only a window preceded by its own reverse
//! complement can be the inserted copy, and for odd `k` exactly one
//! restoration survives.
//!
//! Two component codes are provided: the Varshamov-Tenengolts code for
//! `k = 1`, and an exhaustively certified greedy code for odd `k >= 3`.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::alphabet::Alphabet;
use crate::dup::{ancestors, dedup_sites, descendants, Derivation};
use crate::error::{Error, Result};
use crate::word::Word;

/// Largest length for which brute-force burst codes are built and code
/// enumeration stays exhaustive.
pub const EXHAUSTIVE_LENGTH_BOUND: usize = 12;

/// A complement-preserving mapping from an alphabet to bits:
/// `beta(comp(a)) = 1 - beta(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaMap {
    table: Vec<u8>,
}

impl BetaMap {
    /// The canonical map `beta(a) = a mod 2`, valid for the default
    /// complement pairing only.
    pub fn default_for(alphabet: &Alphabet) -> Result<Self> {
        if !alphabet.has_default_complement() {
            return Err(Error::BetaNeedsDefaultComplement);
        }
        Ok(BetaMap {
            table: (0..alphabet.q()).map(|a| (a % 2) as u8).collect(),
        })
    }

    /// An explicit table, validated to be bit-valued and complement
    /// preserving for `alphabet`.
    pub fn from_table(alphabet: &Alphabet, table: Vec<u8>) -> Result<Self> {
        if table.len() != alphabet.q() {
            return Err(Error::ComplementTableLength {
                expected: alphabet.q(),
                got: table.len(),
            });
        }
        for (a, &bit) in table.iter().enumerate() {
            if bit > 1 {
                return Err(Error::BetaNotBinary {
                    symbol: a as u8,
                    value: bit,
                });
            }
            let comp = alphabet.complement_symbol(a as u8) as usize;
            if table[comp] != 1 - bit {
                return Err(Error::BetaNotComplementPreserving { symbol: a as u8 });
            }
        }
        Ok(BetaMap { table })
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn of_symbol(&self, a: u8) -> u8 {
        self.table[a as usize]
    }

    /// Letter-wise image; commutes with reverse complement.
    pub fn map_word(&self, u: &Word) -> Word {
        u.symbols().iter().map(|&a| self.of_symbol(a)).collect()
    }
}

/// VT syndrome `sum_{i=1..n} i * x_i mod (n + 1)` over 1-based positions.
pub fn vt_syndrome(x: &Word) -> usize {
    let modulus = x.len() + 1;
    x.symbols()
        .iter()
        .enumerate()
        .map(|(i, &bit)| (i + 1) * bit as usize)
        .sum::<usize>()
        % modulus
}

/// The binary component code of a construction: either a VT code (single
/// insertion, `k = 1`) or an explicit exhaustively-certified list for a
/// burst of odd length `k >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Vt { residue: usize },
    BruteBurst { burst: usize, codewords: Vec<Word> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryComponentCode {
    length: usize,
    kind: ComponentKind,
}

impl BinaryComponentCode {
    /// The VT code of the given length and syndrome residue.
    pub fn vt(length: usize, residue: usize) -> Self {
        BinaryComponentCode {
            length,
            kind: ComponentKind::Vt {
                residue: residue % (length + 1),
            },
        }
    }

    /// Greedy lexicographic code whose single-burst-insertion balls of
    /// length `burst` are pairwise disjoint, certified before return.
    pub fn brute_burst(length: usize, burst: usize) -> Result<Self> {
        let codewords = build_burst_codewords(length, burst)?;
        BinaryComponentCode::from_burst_list(length, burst, codewords)
    }

    /// Wraps an explicit codeword list, re-certifying disjointness of the
    /// burst-insertion balls.
    pub fn from_burst_list(length: usize, burst: usize, codewords: Vec<Word>) -> Result<Self> {
        check_burst_shape(length, burst)?;
        let binary = Alphabet::binary();
        for c in &codewords {
            binary.validate_word(c)?;
            if c.len() != length {
                return Err(Error::CodewordLengthMismatch {
                    expected: length,
                    got: c.len(),
                });
            }
        }
        if let Some((i, j)) = burst_ball_collision(&codewords, burst) {
            return Err(Error::NotAdmissible {
                reason: format!(
                    "burst-insertion balls of codewords {} and {} intersect",
                    codewords[i], codewords[j]
                ),
            });
        }
        Ok(BinaryComponentCode {
            length,
            kind: ComponentKind::BruteBurst { burst, codewords },
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// The burst length this component corrects; 1 for VT.
    pub fn burst_len(&self) -> usize {
        match &self.kind {
            ComponentKind::Vt { .. } => 1,
            ComponentKind::BruteBurst { burst, .. } => *burst,
        }
    }

    pub fn kind(&self) -> &ComponentKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            ComponentKind::Vt { .. } => "vt",
            ComponentKind::BruteBurst { .. } => "brute-burst",
        }
    }

    pub fn contains(&self, x: &Word) -> bool {
        if x.len() != self.length || x.symbols().iter().any(|&s| s > 1) {
            return false;
        }
        match &self.kind {
            ComponentKind::Vt { residue } => vt_syndrome(x) == *residue,
            ComponentKind::BruteBurst { codewords, .. } => codewords.contains(x),
        }
    }

    /// All positions `p` such that removing `y[p .. p+burst)` yields a
    /// codeword; `y` must be one burst longer than the code length.
    pub fn removal_candidates(&self, y: &Word) -> Result<Vec<usize>> {
        let burst = self.burst_len();
        if y.len() != self.length + burst {
            return Err(Error::CodewordLengthMismatch {
                expected: self.length + burst,
                got: y.len(),
            });
        }
        let mut candidates = Vec::new();
        for p in 0..=y.len() - burst {
            let mut restored = Vec::with_capacity(self.length);
            restored.extend_from_slice(&y.symbols()[..p]);
            restored.extend_from_slice(&y.symbols()[p + burst..]);
            if self.contains(&Word::new(restored)) {
                candidates.push(p);
            }
        }
        Ok(candidates)
    }

    /// Every codeword, in lexicographic order.
    pub fn enumerate(&self) -> Result<Vec<Word>> {
        match &self.kind {
            ComponentKind::BruteBurst { codewords, .. } => Ok(codewords.clone()),
            ComponentKind::Vt { .. } => {
                if self.length > 24 {
                    return Err(Error::ExhaustiveBoundExceeded {
                        n: self.length,
                        bound: 24,
                    });
                }
                Ok(binary_words_lex(self.length)
                    .filter(|x| self.contains(x))
                    .collect())
            }
        }
    }

    pub fn size(&self) -> Result<u64> {
        match &self.kind {
            ComponentKind::BruteBurst { codewords, .. } => Ok(codewords.len() as u64),
            ComponentKind::Vt { .. } => Ok(self.enumerate()?.len() as u64),
        }
    }
}

/// All deletion positions of a received VT word `y` (one symbol too long)
/// whose removal restores the code's syndrome. Positions inside a run of
/// equal bits restore the same word; callers collapse them as one logical
/// candidate. Empty means more than one error occurred.
pub fn vt_decode_candidates(y: &Word, code: &BinaryComponentCode) -> Result<Vec<usize>> {
    match code.kind() {
        ComponentKind::Vt { .. } => {
            let candidates = code.removal_candidates(y)?;
            if candidates.is_empty() {
                return Err(Error::Uncorrectable);
            }
            Ok(candidates)
        }
        ComponentKind::BruteBurst { .. } => Err(Error::NotAVtComponent),
    }
}

fn check_burst_shape(length: usize, burst: usize) -> Result<()> {
    if burst.is_multiple_of(2) {
        return Err(Error::EvenDuplicationLength(burst));
    }
    if burst < 3 {
        return Err(Error::BurstLengthTooSmall(burst));
    }
    if length > EXHAUSTIVE_LENGTH_BOUND {
        return Err(Error::ExhaustiveBoundExceeded {
            n: length,
            bound: EXHAUSTIVE_LENGTH_BOUND,
        });
    }
    Ok(())
}

fn binary_words_lex(length: usize) -> impl Iterator<Item = Word> {
    (0u64..(1u64 << length)).map(move |bits| {
        (0..length)
            .map(|j| ((bits >> (length - 1 - j)) & 1) as u8)
            .collect()
    })
}

/// The single-burst-insertion ball: all words obtained by inserting any
/// `burst`-length binary string at any position.
fn burst_insertion_ball(c: &Word, burst: usize) -> HashSet<Word> {
    let mut ball = HashSet::new();
    for p in 0..=c.len() {
        for content in 0u64..(1u64 << burst) {
            let mut symbols = Vec::with_capacity(c.len() + burst);
            symbols.extend_from_slice(&c.symbols()[..p]);
            symbols.extend((0..burst).map(|j| ((content >> (burst - 1 - j)) & 1) as u8));
            symbols.extend_from_slice(&c.symbols()[p..]);
            ball.insert(Word::new(symbols));
        }
    }
    ball
}

fn burst_ball_collision(codewords: &[Word], burst: usize) -> Option<(usize, usize)> {
    let balls: Vec<HashSet<Word>> = codewords
        .par_iter()
        .map(|c| burst_insertion_ball(c, burst))
        .collect();
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            if !balls[i].is_disjoint(&balls[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

fn build_burst_codewords(length: usize, burst: usize) -> Result<Vec<Word>> {
    check_burst_shape(length, burst)?;
    let mut covered: HashSet<Word> = HashSet::new();
    let mut codewords = Vec::new();
    for candidate in binary_words_lex(length) {
        let ball = burst_insertion_ball(&candidate, burst);
        if ball.iter().all(|w| !covered.contains(w)) {
            covered.extend(ball);
            codewords.push(candidate);
        }
    }
    Ok(codewords)
}

/// A lifted code: the `beta`-preimage of a binary component code, over an
/// even-size alphabet, correcting one reverse-complement duplication of odd
/// length `k`.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    alphabet: Alphabet,
    n: usize,
    k: usize,
    component: BinaryComponentCode,
    beta: BetaMap,
}

impl CodeSpec {
    pub fn new(
        alphabet: Alphabet,
        n: usize,
        k: usize,
        component: BinaryComponentCode,
        beta: BetaMap,
    ) -> Result<Self> {
        if k.is_multiple_of(2) {
            return Err(Error::EvenDuplicationLength(k));
        }
        if component.length() != n {
            return Err(Error::ComponentLengthMismatch {
                component: component.length(),
                n,
            });
        }
        if component.burst_len() != k {
            return Err(Error::ComponentBurstMismatch {
                kind: component.kind_name(),
                component_k: component.burst_len(),
                k,
            });
        }
        if beta.table().len() != alphabet.q() {
            return Err(Error::ComplementTableLength {
                expected: alphabet.q(),
                got: beta.table().len(),
            });
        }
        Ok(CodeSpec {
            alphabet,
            n,
            k,
            component,
            beta,
        })
    }

    /// Convenience constructor: VT component with the default beta, `k = 1`.
    pub fn vt_code(alphabet: Alphabet, n: usize, residue: usize) -> Result<Self> {
        let beta = BetaMap::default_for(&alphabet)?;
        CodeSpec::new(alphabet, n, 1, BinaryComponentCode::vt(n, residue), beta)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn component(&self) -> &BinaryComponentCode {
        &self.component
    }

    pub fn beta(&self) -> &BetaMap {
        &self.beta
    }

    /// Membership: `c` is a codeword iff `beta(c)` is a component codeword.
    pub fn contains(&self, c: &Word) -> Result<bool> {
        if c.len() != self.n {
            return Err(Error::CodewordLengthMismatch {
                expected: self.n,
                got: c.len(),
            });
        }
        self.alphabet.validate_word(c)?;
        Ok(self.component.contains(&self.beta.map_word(c)))
    }

    /// Every codeword; exhaustive over `q^n`, so guarded.
    pub fn enumerate_codewords(&self) -> Result<Vec<Word>> {
        let total = (self.alphabet.q() as u128)
            .checked_pow(self.n as u32)
            .ok_or(Error::CodeSizeOverflow {
                q: self.alphabet.q(),
                n: self.n,
            })?;
        if total > 1 << 24 {
            return Err(Error::ExhaustiveBoundExceeded {
                n: self.n,
                bound: EXHAUSTIVE_LENGTH_BOUND,
            });
        }
        let q = self.alphabet.q() as u128;
        let mut out = Vec::new();
        for index in 0..total {
            let mut symbols = vec![0u8; self.n];
            let mut rest = index;
            for j in (0..self.n).rev() {
                symbols[j] = (rest % q) as u8;
                rest /= q;
            }
            let word = Word::new(symbols);
            if self.contains(&word)? {
                out.push(word);
            }
        }
        Ok(out)
    }

    /// `|C| = |C'| * (q/2)^n`: under any complement-preserving beta each
    /// bit has exactly `q/2` preimages, one from every complement pair.
    pub fn size(&self) -> Result<u128> {
        let per_symbol = (self.alphabet.q() / 2) as u128;
        let preimages = per_symbol
            .checked_pow(self.n as u32)
            .ok_or(Error::CodeSizeOverflow {
                q: self.alphabet.q(),
                n: self.n,
            })?;
        preimages
            .checked_mul(self.component.size()? as u128)
            .ok_or(Error::CodeSizeOverflow {
                q: self.alphabet.q(),
                n: self.n,
            })
    }

    /// `log2(q^n / |C|)` in bits; exact in the sense that equal rational
    /// ratios give bit-identical results across alphabets.
    pub fn redundancy_bits(&self) -> Result<f64> {
        let total = (self.alphabet.q() as u128)
            .checked_pow(self.n as u32)
            .filter(|&t| t <= 1 << 53)
            .ok_or(Error::CodeSizeOverflow {
                q: self.alphabet.q(),
                n: self.n,
            })?;
        let size = self.size()?;
        Ok(((total as f64) / (size as f64)).log2())
    }

    /// Decodes a received word carrying exactly one reverse-complement
    /// duplication of length `k`: component candidates are filtered on the
    /// q-ary word by the duplication-site condition
    /// `w[p..p+k) = rc(w[p-k..p))`, and the surviving window is removed.
    pub fn decode_duplication(&self, w: &Word) -> Result<Word> {
        if w.len() != self.n + self.k {
            return Err(Error::CodewordLengthMismatch {
                expected: self.n + self.k,
                got: w.len(),
            });
        }
        self.alphabet.validate_word(w)?;
        let image = self.beta.map_word(w);
        let candidates = self.component.removal_candidates(&image)?;
        if candidates.is_empty() {
            return Err(Error::Uncorrectable);
        }
        let sites = dedup_sites(&self.alphabet, w, self.k);
        let restorations: BTreeSet<Word> = candidates
            .iter()
            .filter(|p| sites.contains(p))
            .map(|&p| {
                let mut symbols = Vec::with_capacity(self.n);
                symbols.extend_from_slice(&w.symbols()[..p]);
                symbols.extend_from_slice(&w.symbols()[p + self.k..]);
                Word::new(symbols)
            })
            .collect();
        match restorations.len() {
            0 => Err(Error::NoDuplicationSite),
            1 => {
                let restored = restorations.into_iter().next().expect("one element");
                debug_assert!(matches!(self.contains(&restored), Ok(true)));
                Ok(restored)
            }
            m => Err(Error::AmbiguousDecode { candidates: m }),
        }
    }
}

/// Which disjointness property a certification checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertProperty {
    Duplication,
    Deduplication,
}

impl CertProperty {
    pub fn as_str(self) -> &'static str {
        match self {
            CertProperty::Duplication => "duplication-correcting",
            CertProperty::Deduplication => "deduplication-correcting",
        }
    }
}

/// A violating pair and a word in both of their cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub c1: Word,
    pub c2: Word,
    pub common: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificationReport {
    pub property: CertProperty,
    pub k: usize,
    pub t: usize,
    pub result: bool,
    pub counterexample: Option<Counterexample>,
}

fn certify_cones<F>(
    property: CertProperty,
    codewords: &[Word],
    k: usize,
    t: usize,
    cones: F,
) -> Result<CertificationReport>
where
    F: Fn(&Word) -> Result<HashSet<Word>> + Sync,
{
    let cones: Vec<HashSet<Word>> = codewords
        .par_iter()
        .map(&cones)
        .collect::<Result<Vec<_>>>()?;
    for i in 0..codewords.len() {
        for j in i + 1..codewords.len() {
            // deterministic counterexample: the smallest common word
            if let Some(common) = cones[i].intersection(&cones[j]).min() {
                return Ok(CertificationReport {
                    property,
                    k,
                    t,
                    result: false,
                    counterexample: Some(Counterexample {
                        c1: codewords[i].clone(),
                        c2: codewords[j].clone(),
                        common: common.clone(),
                    }),
                });
            }
        }
    }
    Ok(CertificationReport {
        property,
        k,
        t,
        result: true,
        counterexample: None,
    })
}

/// Exhaustively certifies `D^t(c1) ^ D^t(c2) = {}` for all pairs.
pub fn certify_duplication_code(
    alphabet: &Alphabet,
    codewords: &[Word],
    k: usize,
    t: usize,
    cap: usize,
) -> Result<CertificationReport> {
    for c in codewords {
        alphabet.validate_word(c)?;
    }
    certify_cones(CertProperty::Duplication, codewords, k, t, |c| {
        descendants(alphabet, c, k, t, cap)
    })
}

/// Exhaustively certifies `A^t(c1) ^ A^t(c2) = {}` for all pairs.
pub fn certify_deduplication_code(
    alphabet: &Alphabet,
    codewords: &[Word],
    k: usize,
    t: usize,
    cap: usize,
) -> Result<CertificationReport> {
    for c in codewords {
        alphabet.validate_word(c)?;
    }
    certify_cones(CertProperty::Deduplication, codewords, k, t, |c| {
        let cone = ancestors(alphabet, c, k, t);
        if cone.len() > cap {
            return Err(Error::EnumerationCapExceeded {
                cap,
                completed_levels: 0,
            });
        }
        Ok(cone)
    })
}

/// Replays a duplication channel transcript: codeword plus one event.
pub fn duplication_channel(alphabet: &Alphabet, c: &Word, position: usize, k: usize) -> Result<Word> {
    Derivation {
        seed: c.clone(),
        k,
        positions: vec![position],
    }
    .replay(alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dup::DEFAULT_ENUMERATION_CAP;

    fn w(s: &str) -> Word {
        Word::parse_text(s).unwrap()
    }

    fn q4() -> Alphabet {
        Alphabet::with_default_complement(4).unwrap()
    }

    #[test]
    fn default_beta_tables() {
        let beta = BetaMap::default_for(&q4()).unwrap();
        assert_eq!(beta.table(), &[0, 1, 0, 1]);
        let beta2 = BetaMap::default_for(&Alphabet::binary()).unwrap();
        assert_eq!(beta2.table(), &[0, 1]);
        assert_eq!(
            beta.map_word(&w("1332202221")).to_string(),
            "1110000001"
        );
    }

    #[test]
    fn default_beta_requires_default_pairing() {
        let other = Alphabet::with_complement(vec![2, 3, 0, 1]).unwrap();
        assert_eq!(
            BetaMap::default_for(&other).unwrap_err(),
            Error::BetaNeedsDefaultComplement
        );
        // an explicit table works: pairs {0,2} and {1,3} must map oppositely
        let beta = BetaMap::from_table(&other, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(beta.of_symbol(2), 1);
        assert!(BetaMap::from_table(&other, vec![0, 0, 0, 1]).is_err());
    }

    #[test]
    fn beta_commutes_with_reverse_complement() {
        let alphabet = q4();
        let beta = BetaMap::default_for(&alphabet).unwrap();
        let binary = Alphabet::binary();
        for s in ["", "0", "13", "0123", "2031312"] {
            let u = w(s);
            assert_eq!(
                beta.map_word(&alphabet.reverse_complement(&u)),
                binary.reverse_complement(&beta.map_word(&u)),
                "word {s}"
            );
        }
    }

    #[test]
    fn vt_syndromes() {
        assert_eq!(vt_syndrome(&w("0000")), 0);
        assert_eq!(vt_syndrome(&w("1001")), 0);
        assert_eq!(vt_syndrome(&w("0110")), 0);
        assert_eq!(vt_syndrome(&w("0101")), 1);
    }

    #[test]
    fn vt_candidates_single_position() {
        let code = BinaryComponentCode::vt(4, 0);
        let candidates = vt_decode_candidates(&w("10010"), &code).unwrap();
        assert_eq!(candidates, vec![4]);
    }

    #[test]
    fn vt_candidates_collapse_runs() {
        let code = BinaryComponentCode::vt(4, 0);
        let all = vt_decode_candidates(&w("00000"), &code).unwrap();
        assert_eq!(all, vec![0, 1, 2, 3, 4]);
        let ones = vt_decode_candidates(&w("11111"), &code).unwrap();
        assert_eq!(ones, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn vt_candidates_error_when_uncorrectable() {
        let code = BinaryComponentCode::vt(4, 0);
        // the deletion ball of 01011 hits syndromes {1, 2, 3, 4} only
        assert_eq!(
            vt_decode_candidates(&w("01011"), &code).unwrap_err(),
            Error::Uncorrectable
        );
    }

    #[test]
    fn burst_code_construction() {
        let code = BinaryComponentCode::brute_burst(4, 3).unwrap();
        let codewords = code.enumerate().unwrap();
        assert!(!codewords.is_empty());
        assert_eq!(codewords[0], w("0000"));
        // certified: rebuild from the list succeeds
        assert!(BinaryComponentCode::from_burst_list(4, 3, codewords.clone()).is_ok());
        // and a deliberately bad list fails certification
        assert!(matches!(
            BinaryComponentCode::from_burst_list(4, 3, vec![w("0000"), w("0001")]),
            Err(Error::NotAdmissible { .. })
        ));
    }

    #[test]
    fn burst_code_shape_checks() {
        assert!(matches!(
            BinaryComponentCode::brute_burst(4, 2),
            Err(Error::EvenDuplicationLength(2))
        ));
        assert!(matches!(
            BinaryComponentCode::brute_burst(4, 1),
            Err(Error::BurstLengthTooSmall(1))
        ));
        assert!(matches!(
            BinaryComponentCode::brute_burst(40, 3),
            Err(Error::ExhaustiveBoundExceeded { .. })
        ));
    }

    #[test]
    fn membership_matches_worked_examples() {
        let spec = CodeSpec::vt_code(q4(), 4, 0).unwrap();
        assert!(spec.contains(&w("2130")).unwrap());
        assert!(!spec.contains(&w("2301")).unwrap());
        let binary_spec = CodeSpec::vt_code(Alphabet::binary(), 4, 0).unwrap();
        for word in super::binary_words_lex(4) {
            assert_eq!(
                binary_spec.contains(&word).unwrap(),
                binary_spec.component().contains(&word)
            );
        }
    }

    #[test]
    fn decode_single_letter_duplication() {
        let spec = CodeSpec::vt_code(q4(), 4, 0).unwrap();
        assert_eq!(spec.decode_duplication(&w("21030")).unwrap(), w("2130"));

        let binary_spec = CodeSpec::vt_code(Alphabet::binary(), 4, 0).unwrap();
        let received = duplication_channel(&Alphabet::binary(), &w("0110"), 2, 1).unwrap();
        assert_eq!(received, w("01100"));
        assert_eq!(binary_spec.decode_duplication(&received).unwrap(), w("0110"));
    }

    #[test]
    fn decode_rejects_wrong_lengths() {
        let spec = CodeSpec::vt_code(q4(), 4, 0).unwrap();
        assert!(matches!(
            spec.decode_duplication(&w("2130")),
            Err(Error::CodewordLengthMismatch {
                expected: 5,
                got: 4
            })
        ));
    }

    #[test]
    fn duplication_site_filter_disambiguates() {
        // received 1332202221 with k = 3: the component decoder may offer
        // the removal of any of the 000-factors of the image 1110000001;
        // only the window 220, preceded by 133, is an actual duplication.
        let alphabet = q4();
        let received = w("1332202221");
        let beta = BetaMap::default_for(&alphabet).unwrap();
        assert_eq!(beta.map_word(&received).to_string(), "1110000001");
        let sites = dedup_sites(&alphabet, &received, 3);
        assert!(sites.contains(&3));
        for p in [4, 5, 6] {
            assert!(!sites.contains(&p), "position {p} wrongly passes");
        }
        assert_eq!(received.factor(3, 6), w("220"));
    }

    #[test]
    fn certify_duplication_examples() {
        let binary = Alphabet::binary();
        let report = certify_duplication_code(
            &binary,
            &[w("00110"), w("00011")],
            2,
            1,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        assert!(report.result);

        let report = certify_duplication_code(
            &binary,
            &[w("1100"), w("1111")],
            2,
            1,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        assert!(!report.result);
        let ce = report.counterexample.unwrap();
        assert_eq!(ce.common, w("110011"));
    }

    #[test]
    fn certify_deduplication_examples() {
        let binary = Alphabet::binary();
        let report = certify_deduplication_code(
            &binary,
            &[w("1100"), w("1111")],
            2,
            1,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        assert!(report.result);

        let report = certify_deduplication_code(
            &binary,
            &[w("00110"), w("00011")],
            2,
            1,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        assert!(!report.result);
        let ce = report.counterexample.unwrap();
        assert_eq!(ce.common, w("000"));
    }

    #[test]
    fn certify_singleton_is_trivially_true() {
        let binary = Alphabet::binary();
        let report =
            certify_duplication_code(&binary, &[w("0011")], 2, 1, DEFAULT_ENUMERATION_CAP)
                .unwrap();
        assert!(report.result);
        assert!(report.counterexample.is_none());
    }

    #[test]
    fn redundancy_examples() {
        let binary_spec = CodeSpec::vt_code(Alphabet::binary(), 4, 0).unwrap();
        assert_eq!(binary_spec.size().unwrap(), 4);
        assert_eq!(binary_spec.redundancy_bits().unwrap(), 2.0);

        let q4_spec = CodeSpec::vt_code(q4(), 4, 0).unwrap();
        assert_eq!(q4_spec.size().unwrap(), 64);
        assert_eq!(q4_spec.redundancy_bits().unwrap(), 2.0);
    }

    #[test]
    fn size_formula_matches_enumeration() {
        for q in [2usize, 4] {
            let alphabet = Alphabet::with_default_complement(q).unwrap();
            for n in 4..=6usize {
                let spec = CodeSpec::vt_code(alphabet.clone(), n, 0).unwrap();
                let listed = spec.enumerate_codewords().unwrap();
                assert_eq!(listed.len() as u128, spec.size().unwrap(), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn spec_shape_checks() {
        let alphabet = q4();
        let beta = BetaMap::default_for(&alphabet).unwrap();
        assert!(matches!(
            CodeSpec::new(
                alphabet.clone(),
                4,
                2,
                BinaryComponentCode::vt(4, 0),
                beta.clone()
            ),
            Err(Error::EvenDuplicationLength(2))
        ));
        assert!(matches!(
            CodeSpec::new(
                alphabet.clone(),
                5,
                1,
                BinaryComponentCode::vt(4, 0),
                beta.clone()
            ),
            Err(Error::ComponentLengthMismatch { component: 4, n: 5 })
        ));
        assert!(matches!(
            CodeSpec::new(alphabet, 4, 3, BinaryComponentCode::vt(4, 0), beta),
            Err(Error::ComponentBurstMismatch { .. })
        ));
    }

    #[test]
    fn construction_codes_certify_as_duplication_correcting() {
        // the definition-level restatement of decoder correctness: all
        // pairwise 1-descendant cones of a lifted code are disjoint
        for q in [2usize, 4] {
            let alphabet = Alphabet::with_default_complement(q).unwrap();
            for n in 4..=5usize {
                let spec = CodeSpec::vt_code(alphabet.clone(), n, 0).unwrap();
                let codewords = spec.enumerate_codewords().unwrap();
                let report = certify_duplication_code(
                    &alphabet,
                    &codewords,
                    1,
                    1,
                    DEFAULT_ENUMERATION_CAP,
                )
                .unwrap();
                assert!(report.result, "q={q}, n={n}, k=1");
            }
        }
        let binary = Alphabet::binary();
        let component = BinaryComponentCode::brute_burst(6, 3).unwrap();
        let beta = BetaMap::default_for(&binary).unwrap();
        let spec = CodeSpec::new(binary.clone(), 6, 3, component, beta).unwrap();
        let codewords = spec.enumerate_codewords().unwrap();
        let report =
            certify_duplication_code(&binary, &codewords, 3, 1, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(report.result, "binary n=6, k=3");
    }

    #[test]
    fn no_odd_length_word_is_its_own_reverse_complement() {
        let binary = Alphabet::binary();
        for len in (1..=9usize).step_by(2) {
            for bits in 0u32..(1 << len) {
                let u: Word = (0..len).map(|j| ((bits >> j) & 1) as u8).collect();
                assert_ne!(binary.reverse_complement(&u), u, "word {u}");
            }
        }
    }
}
