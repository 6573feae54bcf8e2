//! The uniform random duplication process seeded at 00 and the frequency
//! dynamics of its binary cyclic derivative.
//!
//! Each step draws one of the `|S(n)|` cyclic positions uniformly and
//! applies a length-2 reverse-complement duplication there; a window that
//! would wrap the end is handled by rotating the word first, which leaves
//! every recorded (cyclic) statistic unchanged. In the derivative domain a
//! duplication rewrites one local 3-factor into a 5-factor; the eight
//! rewrite rows drive the drift of the frequencies of 0, 10 and 11, whose
//! closed-form solutions and limits are evaluated by [`ode_solution`].

use num_rational::Rational64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::freq::{cyclic_derivative, cyclic_factor_stats, FrequencyVector};
use crate::word::Word;

/// Identifier of the generator backing [`simulate`], recorded in every
/// trajectory for reproducibility.
pub const RNG_ALGORITHM: &str = "chacha8";

/// How duplication positions are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositionMode {
    /// Uniform over all `|S(n)|` cyclic positions (the default; matches the
    /// cyclic statistics).
    Cyclic,
    /// Uniform over the `|S(n)| - 1` interior windows only, for
    /// sensitivity checks.
    Linear,
}

impl PositionMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PositionMode::Cyclic => "cyclic",
            PositionMode::Linear => "linear",
        }
    }
}

/// Configuration of one simulated trajectory.
#[derive(Clone, Debug)]
pub struct SimConfig {
    pub steps: usize,
    pub seed: u64,
    /// Step indices at which to record statistics; entries outside
    /// `[0, steps]` are ignored.
    pub schedule: Vec<usize>,
    pub mode: PositionMode,
}

impl SimConfig {
    pub fn new(steps: usize, seed: u64, schedule: Vec<usize>) -> Self {
        SimConfig {
            steps,
            seed,
            schedule,
            mode: PositionMode::Cyclic,
        }
    }
}

/// Statistics of `S(n)` at one recorded step: the cyclic 2-factor
/// frequencies of the word and the 1-factor frequencies of its derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRecord {
    pub step: usize,
    pub word_len: usize,
    pub pair_frequencies: FrequencyVector,
    pub derivative_frequencies: FrequencyVector,
}

impl TrajectoryRecord {
    /// `fr_1(D(S(n)))`, the quantity that tends to 1.
    pub fn derivative_one_frequency(&self) -> Rational64 {
        self.derivative_frequencies.entry(&[1])
    }
}

/// A recorded trajectory of the random duplication process.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub seed: u64,
    pub rng_algorithm: &'static str,
    pub mode: PositionMode,
    pub steps: usize,
    pub records: Vec<TrajectoryRecord>,
}

fn make_record(binary: &Alphabet, step: usize, word: &[u8]) -> TrajectoryRecord {
    let word = Word::from(word);
    let pair_frequencies = cyclic_factor_stats(binary, &word, 2).expect("word is nonempty binary");
    let derivative = cyclic_derivative(binary, &word).expect("word is nonempty binary");
    let derivative_frequencies =
        cyclic_factor_stats(binary, &derivative, 1).expect("derivative is nonempty");
    // recorded invariants: frequencies sum to 1, fr_01 = fr_10, and the
    // derivative ones are exactly the alternations of the word
    debug_assert_eq!(
        pair_frequencies.entry(&[0, 1]),
        pair_frequencies.entry(&[1, 0])
    );
    debug_assert_eq!(
        derivative_frequencies.entry(&[1]),
        pair_frequencies.entry(&[0, 1]) + pair_frequencies.entry(&[1, 0])
    );
    TrajectoryRecord {
        step,
        word_len: word.len(),
        pair_frequencies,
        derivative_frequencies,
    }
}

/// Runs the process `S(0) = 00 -> S(1) -> ...` for `config.steps` steps,
/// deterministically in the seed, recording at each scheduled step.
pub fn simulate(config: &SimConfig) -> Trajectory {
    let binary = Alphabet::binary();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut schedule: Vec<usize> = config
        .schedule
        .iter()
        .copied()
        .filter(|&s| s <= config.steps)
        .collect();
    schedule.sort_unstable();
    schedule.dedup();

    let mut word: Vec<u8> = vec![0, 0];
    let mut records = Vec::with_capacity(schedule.len());
    let mut next_record = schedule.iter().copied().peekable();
    if next_record.peek() == Some(&0) {
        records.push(make_record(&binary, 0, &word));
        next_record.next();
    }

    for step in 1..=config.steps {
        let len = word.len();
        let position = match config.mode {
            PositionMode::Cyclic => {
                let j = rng.random_range(0..len);
                if j + 2 <= len {
                    j
                } else {
                    // wrapping window: rotate so it becomes interior
                    word.rotate_left(1);
                    len - 2
                }
            }
            PositionMode::Linear => rng.random_range(0..len - 1),
        };
        let a = word[position];
        let b = word[position + 1];
        word.splice(position + 2..position + 2, [b ^ 1, a ^ 1]);
        debug_assert_eq!(word.len(), 2 * step + 2);

        if next_record.peek() == Some(&step) {
            records.push(make_record(&binary, step, &word));
            next_record.next();
        }
    }

    Trajectory {
        seed: config.seed,
        rng_algorithm: RNG_ALGORITHM,
        mode: config.mode,
        steps: config.steps,
        records,
    }
}

/// Runs independent trajectories in parallel; the output order matches the
/// input order and each trajectory depends only on its own config.
pub fn simulate_many(configs: &[SimConfig]) -> Vec<Trajectory> {
    configs.par_iter().map(simulate).collect()
}

/// One rewrite row of the derivative domain: a duplication replaces the
/// middle letter of a local 3-factor by three letters, and `xi` is the
/// resulting change in the counts of 0, 10 and 11.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivativeUpdateRow {
    pub before: [u8; 3],
    pub after: [u8; 5],
    /// Change in the counts of (0, 10, 11); the entries sum to 2.
    pub xi: [i64; 3],
}

/// The rewrite row for a 3-factor of the derivative: a duplication on the
/// middle position turns `(d0, d1, d2)` into `(d0, 1, d0, d0+d1+1, d2)`.
pub fn derivative_update_row(before: [u8; 3]) -> DerivativeUpdateRow {
    assert!(
        before.iter().all(|&b| b < 2),
        "derivative factors are binary"
    );
    let [d0, d1, d2] = before;
    let after = [d0, 1, d0, d0 ^ d1 ^ 1, d2];

    let zeros = |window: &[u8]| window.iter().filter(|&&s| s == 0).count() as i64;
    let pairs = |window: &[u8]| {
        let mut n10 = 0i64;
        let mut n11 = 0i64;
        for pair in window.windows(2) {
            match pair {
                [1, 0] => n10 += 1,
                [1, 1] => n11 += 1,
                _ => {}
            }
        }
        (n10, n11)
    };
    // the endpoints are unchanged, so boundary pairs cancel and the local
    // windows account for the whole cyclic difference
    let (before10, before11) = pairs(&before);
    let (after10, after11) = pairs(&after);
    let xi = [
        zeros(&after[1..4]) - zeros(&before[1..2]),
        after10 - before10,
        after11 - before11,
    ];
    debug_assert_eq!(xi.iter().sum::<i64>(), 2);
    DerivativeUpdateRow { before, after, xi }
}

/// The free parameters of the frequency dynamics: the expected frequencies
/// of the derivative 3-factors starting with 0, constrained to extend to an
/// admissible vector over all 3-factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeParameters {
    pub alpha000: f64,
    pub alpha001: f64,
    pub alpha010: f64,
    pub alpha011: f64,
}

const ADMISSIBLE_TOL: f64 = 1e-9;

impl OdeParameters {
    /// Validates that the four parameters extend to an admissible vector
    /// over the binary 3-factors.
    pub fn new(alpha000: f64, alpha001: f64, alpha010: f64, alpha011: f64) -> Result<Self> {
        let p = OdeParameters {
            alpha000,
            alpha001,
            alpha010,
            alpha011,
        };
        let completion = p.completion();
        for (i, value) in completion.iter().enumerate() {
            if !value.is_finite() || *value < -ADMISSIBLE_TOL || *value > 1.0 + ADMISSIBLE_TOL {
                return Err(Error::NotAdmissible {
                    reason: format!(
                        "completed entry {i} is {value}, outside [0, 1]"
                    ),
                });
            }
        }
        Ok(p)
    }

    pub fn zeros() -> Self {
        OdeParameters {
            alpha000: 0.0,
            alpha001: 0.0,
            alpha010: 0.0,
            alpha011: 0.0,
        }
    }

    /// The unique completion to a full vector over the 3-factors satisfying
    /// the sum and marginal-flow constraints, in lexicographic order.
    pub fn completion(&self) -> [f64; 8] {
        let alpha100 = self.alpha001;
        let alpha110 = self.alpha011;
        let alpha101 = self.alpha010 + self.alpha011 - self.alpha001;
        let head = self.alpha000 + self.alpha001 + self.alpha010 + self.alpha011;
        let alpha111 = 1.0 - head - self.alpha010 - 2.0 * self.alpha011;
        [
            self.alpha000,
            self.alpha001,
            self.alpha010,
            self.alpha011,
            alpha100,
            alpha101,
            alpha110,
            alpha111,
        ]
    }
}

/// Evaluation point for the closed-form solutions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EvalTime {
    At(f64),
    /// The `t -> infinity` limit, evaluated symbolically rather than at a
    /// huge `t`, so the vanishing `t e^{-2t}` term cannot underflow oddly.
    Limit,
}

/// Right-hand side of the drift system for `(z0, z10, z11)`.
pub fn ode_rhs(p: &OdeParameters, z: [f64; 3]) -> [f64; 3] {
    [
        -2.0 * z[0] + 2.0 * p.alpha010 + 2.0 * p.alpha011,
        -2.0 * z[1] + 2.0 * p.alpha000 + p.alpha001 + p.alpha011,
        -2.0 * z[0] - 2.0 * z[2] + 2.0 + p.alpha001 - p.alpha011,
    ]
}

/// Closed-form solution of the drift system with `z(0) = (1, 0, 0)`.
///
/// The resonant term of `z11` carries the coefficient `2t e^{-2t}`; that is
/// the unique coefficient for which the expression solves the system, as
/// the finite-difference residual tests pin down.
pub fn ode_solution(p: &OdeParameters, time: EvalTime) -> [f64; 3] {
    let s = p.alpha010 + p.alpha011;
    let z10_inf = p.alpha000 + 0.5 * p.alpha001 + 0.5 * p.alpha011;
    let z11_inf = 1.0 + 0.5 * p.alpha001 - p.alpha010 - 1.5 * p.alpha011;
    match time {
        EvalTime::Limit => [s, z10_inf, z11_inf],
        EvalTime::At(t) => {
            let e = (-2.0 * t).exp();
            [
                s * (1.0 - e) + e,
                z10_inf * (1.0 - e),
                z11_inf * (1.0 - e) + 2.0 * t * e * (s - 1.0),
            ]
        }
    }
}

/// Upper bound on the entropy rate from a limiting admissible frequency
/// vector: `-sum_v alpha^v log2(alpha^v / mu^v)` with `mu^v` the marginal
/// over the last coordinate, and `0 log 0 = 0`.
pub fn entropy_upper_bound(f: &FrequencyVector) -> Result<f64> {
    if f.factor_len() == 0 {
        return Err(Error::NotAdmissible {
            reason: "factor length must be at least 1".to_string(),
        });
    }
    if let Some(reason) = f.admissibility_failure() {
        return Err(Error::NotAdmissible { reason });
    }
    let q = f.q();
    let entries = f.to_f64s();
    let prefixes = entries.len() / q;
    let mut bound = 0.0;
    for prefix in 0..prefixes {
        let mu: f64 = (0..q).map(|a| entries[prefix * q + a]).sum();
        for a in 0..q {
            let alpha = entries[prefix * q + a];
            if alpha > 0.0 {
                bound -= alpha * (alpha / mu).log2();
            }
        }
    }
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dup::{apply_duplication, DuplicationEvent};
    use crate::freq::cyclic_factor_counts;

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn first_step_is_a_rotation_of_0011() {
        for seed in 0..20u64 {
            let config = SimConfig::new(1, seed, vec![1]);
            let t = simulate(&config);
            let record = &t.records[0];
            assert_eq!(record.word_len, 4);
            for pair in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
                assert_eq!(record.pair_frequencies.entry(&pair), rat(1, 4));
            }
        }
    }

    #[test]
    fn trajectories_are_deterministic_in_the_seed() {
        let config = SimConfig::new(500, 42, vec![0, 1, 10, 100, 500]);
        let a = simulate(&config);
        let b = simulate(&config);
        assert_eq!(a, b);
        let c = simulate(&SimConfig::new(500, 43, vec![0, 1, 10, 100, 500]));
        assert_ne!(a, c);
    }

    #[test]
    fn record_invariants_hold() {
        let config = SimConfig::new(300, 7, (0..=300).step_by(50).collect());
        let t = simulate(&config);
        assert_eq!(t.records.len(), 7);
        for r in &t.records {
            assert_eq!(r.word_len, 2 * r.step + 2);
            assert_eq!(r.pair_frequencies.sum(), rat(1, 1));
            assert_eq!(
                r.pair_frequencies.entry(&[0, 1]),
                r.pair_frequencies.entry(&[1, 0])
            );
            assert_eq!(
                r.derivative_one_frequency(),
                r.pair_frequencies.entry(&[0, 1]) + r.pair_frequencies.entry(&[1, 0])
            );
        }
    }

    #[test]
    fn linear_mode_runs() {
        let config = SimConfig {
            steps: 100,
            seed: 5,
            schedule: vec![100],
            mode: PositionMode::Linear,
        };
        let t = simulate(&config);
        assert_eq!(t.records[0].word_len, 202);
    }

    #[test]
    fn update_rows_match_the_tabulated_values() {
        let expected: [(&[u8; 3], [u8; 5], [i64; 3]); 8] = [
            (&[0, 0, 0], [0, 1, 0, 1, 0], [0, 2, 0]),
            (&[0, 0, 1], [0, 1, 0, 1, 1], [0, 1, 1]),
            (&[0, 1, 0], [0, 1, 0, 0, 0], [2, 0, 0]),
            (&[0, 1, 1], [0, 1, 0, 0, 1], [2, 1, -1]),
            (&[1, 0, 0], [1, 1, 1, 0, 0], [0, 0, 2]),
            (&[1, 0, 1], [1, 1, 1, 0, 1], [0, 0, 2]),
            (&[1, 1, 0], [1, 1, 1, 1, 0], [0, 0, 2]),
            (&[1, 1, 1], [1, 1, 1, 1, 1], [0, 0, 2]),
        ];
        for (before, after, xi) in expected {
            let row = derivative_update_row(*before);
            assert_eq!(row.after, after, "before {before:?}");
            assert_eq!(row.xi, xi, "before {before:?}");
        }
    }

    /// Duplicate-then-differentiate oracle for the update rows.
    fn check_row_against_duplication(word: &Word, position: usize) {
        let binary = Alphabet::binary();
        let before_word = word.clone();
        let after_word =
            apply_duplication(&binary, &before_word, DuplicationEvent::new(position, 2)).unwrap();
        let d_before = cyclic_derivative(&binary, &before_word).unwrap();
        let d_after = cyclic_derivative(&binary, &after_word).unwrap();

        let local = [
            d_before[position],
            d_before[position + 1],
            d_before[position + 2],
        ];
        let row = derivative_update_row(local);

        // the derivative changes exactly by the local rewrite
        let mut expected: Vec<u8> = d_before.symbols()[..position].to_vec();
        expected.extend_from_slice(&row.after);
        expected.extend_from_slice(&d_before.symbols()[position + 3..]);
        assert_eq!(d_after.symbols(), &expected[..]);

        // and the counted deltas of (0, 10, 11) equal xi
        let ones_before = cyclic_factor_counts(&binary, &d_before, 1).unwrap();
        let ones_after = cyclic_factor_counts(&binary, &d_after, 1).unwrap();
        let pairs_before = cyclic_factor_counts(&binary, &d_before, 2).unwrap();
        let pairs_after = cyclic_factor_counts(&binary, &d_after, 2).unwrap();
        let delta = [
            ones_after[0] as i64 - ones_before[0] as i64,
            pairs_after[2] as i64 - pairs_before[2] as i64,
            pairs_after[3] as i64 - pairs_before[3] as i64,
        ];
        assert_eq!(delta, row.xi, "word {word}, position {position}");
    }

    #[test]
    fn update_rows_agree_with_duplication_small() {
        for len in 4..=6usize {
            for bits in 0u32..(1 << len) {
                let word: Word = (0..len).map(|j| ((bits >> j) & 1) as u8).collect();
                for position in 0..=len - 3 {
                    check_row_against_duplication(&word, position);
                }
            }
        }
    }

    #[test]
    fn ode_initial_condition() {
        let p = OdeParameters::new(0.1, 0.0, 0.2, 0.1).unwrap();
        let z = ode_solution(&p, EvalTime::At(0.0));
        assert_eq!(z, [1.0, 0.0, 0.0]);
    }

    #[test]
    fn ode_limits() {
        let p = OdeParameters::zeros();
        assert_eq!(ode_solution(&p, EvalTime::Limit), [0.0, 0.0, 1.0]);
        let p = OdeParameters::new(0.0, 0.0, 0.25, 0.0).unwrap();
        let z = ode_solution(&p, EvalTime::Limit);
        assert!((z[0] - 0.25).abs() < 1e-12);
        assert!(z[1].abs() < 1e-12);
        assert!((z[2] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn ode_solution_satisfies_the_system() {
        let params = [
            OdeParameters::zeros(),
            OdeParameters::new(0.125, 0.125, 0.125, 0.125).unwrap(),
            OdeParameters::new(0.1, 0.1, 0.2, 0.1).unwrap(),
        ];
        let h = 1e-5;
        for p in params {
            for j in 1..=50 {
                let t = 0.1 * j as f64;
                let plus = ode_solution(&p, EvalTime::At(t + h));
                let minus = ode_solution(&p, EvalTime::At(t - h));
                let rhs = ode_rhs(&p, ode_solution(&p, EvalTime::At(t)));
                for c in 0..3 {
                    let fd = (plus[c] - minus[c]) / (2.0 * h);
                    assert!(
                        (fd - rhs[c]).abs() < 1e-6,
                        "component {c} at t={t}: fd={fd}, rhs={}",
                        rhs[c]
                    );
                }
            }
        }
    }

    #[test]
    fn parameter_completion_is_admissible() {
        let p = OdeParameters::new(0.125, 0.125, 0.125, 0.125).unwrap();
        assert_eq!(p.completion(), [0.125; 8]);
        let z = OdeParameters::zeros();
        assert_eq!(z.completion(), [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        // alpha101 would be negative
        assert!(OdeParameters::new(0.0, 0.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn entropy_bound_examples() {
        let limit =
            FrequencyVector::new(2, 2, vec![rat(0, 1), rat(1, 2), rat(1, 2), rat(0, 1)]).unwrap();
        assert_eq!(entropy_upper_bound(&limit).unwrap(), 0.0);

        let uniform =
            FrequencyVector::new(2, 2, vec![rat(1, 4); 4]).unwrap();
        assert_eq!(entropy_upper_bound(&uniform).unwrap(), 1.0);

        let point =
            FrequencyVector::new(2, 2, vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(entropy_upper_bound(&point).unwrap(), 0.0);

        let inadmissible =
            FrequencyVector::new(2, 2, vec![rat(1, 2), rat(1, 2), rat(0, 1), rat(0, 1)]).unwrap();
        assert!(matches!(
            entropy_upper_bound(&inadmissible),
            Err(Error::NotAdmissible { .. })
        ));
    }
}
