//! Monte Carlo demonstration of the noisy channel coding theorem on a binary
//! symmetric channel.
//!
//! For each block length `n` the harness draws random codes of
//! `M = ⌊2^(R·n)⌋` codewords, sends uniformly chosen codewords through the
//! channel, decodes to the nearest codeword and counts successes. At rates
//! below capacity the success probability climbs towards one as `n` grows.
//!
//! Every random draw comes from a ChaCha8 stream keyed on
//! `(seed, n, code index, purpose)`; trials are grouped into fixed blocks of
//! [`TRIAL_BLOCK`], each on its own stream. Success counts are summed as
//! integers, so results do not depend on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coding::{random_code_with, BlockCode, Codeword, MAX_LENGTH};
use crate::error::{check_probability, Error, Result};

/// Default cap on `Σ_n M · n · trials · codes`.
pub const DEFAULT_COMPUTE_BUDGET: u128 = 1_000_000_000;

/// Trials per independently seeded stream.
pub const TRIAL_BLOCK: u64 = 4096;

const PURPOSE_CODE: u64 = 0;
const PURPOSE_TRIALS: u64 = 1;

fn keyed_rng(key: [u64; 4]) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    for (chunk, k) in seed.chunks_exact_mut(8).zip(key) {
        chunk.copy_from_slice(&k.to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}

/// Sends `word` through a BSC: each symbol flips independently with
/// probability `p`.
pub fn transmit<R: Rng + ?Sized>(word: &Codeword, p: f64, rng: &mut R) -> Result<Codeword> {
    check_probability("crossover probability", p)?;
    let mut pattern = 0u64;
    for k in 0..word.length() {
        if rng.random_bool(p) {
            pattern |= 1 << k;
        }
    }
    Ok(word.flip(pattern))
}

/// A Monte Carlo estimate of a success probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    /// Binomial standard error `√(p̂(1 − p̂)/trials)`.
    pub standard_error: f64,
}

impl Estimate {
    fn from_counts(successes: u64, trials: u64) -> Self {
        let estimate = successes as f64 / trials as f64;
        Estimate {
            successes,
            trials,
            estimate,
            standard_error: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        }
    }
}

fn count_successes(code: &BlockCode, p: f64, trials: u64, key: [u64; 4]) -> u64 {
    let m = code.size();
    let blocks = trials.div_ceil(TRIAL_BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = keyed_rng(key);
            rng.set_stream(b);
            let len = TRIAL_BLOCK.min(trials - b * TRIAL_BLOCK);
            let mut hits = 0u64;
            for _ in 0..len {
                let sent = rng.random_range(0..m);
                let received = transmit(&code.codeword(sent), p, &mut rng)
                    .expect("crossover probability validated by caller");
                if code.nearest(received.bits()).0 == sent {
                    hits += 1;
                }
            }
            hits
        })
        .sum()
}

/// Estimates the probability of correct nearest-codeword decoding of `code`
/// over a BSC with crossover `p`, messages chosen uniformly.
pub fn estimate_correct_probability(
    code: &BlockCode,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    check_probability("crossover probability", p)?;
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let key = [seed, code.length() as u64, 0, PURPOSE_TRIALS];
    Ok(Estimate::from_counts(
        count_successes(code, p, trials, key),
        trials,
    ))
}

/// Parameters of a coding-theorem experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// BSC crossover probability.
    pub p: f64,
    /// Target rate `R` in bits per channel use.
    pub rate: f64,
    pub block_lengths: Vec<u32>,
    pub trials_per_n: u64,
    pub codes_per_n: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        check_probability("p", self.p)?;
        if !(self.rate > 0.0 && self.rate.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "rate {} must be positive",
                self.rate
            )));
        }
        if self.block_lengths.is_empty() {
            return Err(Error::InvalidConfig("no block lengths given".into()));
        }
        if self.trials_per_n == 0 {
            return Err(Error::InvalidConfig(
                "trials_per_n must be at least 1".into(),
            ));
        }
        if self.codes_per_n == 0 {
            return Err(Error::InvalidConfig(
                "codes_per_n must be at least 1".into(),
            ));
        }
        for &n in &self.block_lengths {
            self.code_size(n)?;
        }
        Ok(())
    }

    /// `M = max(1, ⌊2^(R·n)⌋)`, which must not exceed `2^n`.
    pub fn code_size(&self, n: u32) -> Result<u64> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::InvalidConfig(format!(
                "block length {n} outside 1..={MAX_LENGTH}"
            )));
        }
        let m = (self.rate * n as f64).exp2().floor();
        if m > (1u64 << n) as f64 {
            return Err(Error::InvalidConfig(format!(
                "rate {} at n = {n} asks for more than 2^{n} codewords",
                self.rate
            )));
        }
        Ok((m as u64).max(1))
    }

    /// `Σ_n M · n · trials_per_n · codes_per_n`.
    pub fn required_budget(&self) -> Result<u128> {
        self.block_lengths.iter().try_fold(0u128, |acc, &n| {
            let per_n = (self.code_size(n)? as u128)
                .saturating_mul(n as u128)
                .saturating_mul(self.trials_per_n as u128)
                .saturating_mul(self.codes_per_n as u128);
            Ok(acc.saturating_add(per_n))
        })
    }

    /// The `index`-th random code drawn for block length `n`.
    pub fn code(&self, n: u32, index: u64) -> Result<BlockCode> {
        let m = self.code_size(n)?;
        random_code_with(
            n,
            m,
            &mut keyed_rng([self.seed, n as u64, index, PURPOSE_CODE]),
        )
    }
}

/// Aggregated statistics for one block length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockLengthRecord {
    pub n: u32,
    #[serde(rename = "M")]
    pub codewords: u64,
    pub achieved_rate: f64,
    /// Mean over codes of the estimated correct-decoding probability.
    pub mean_correct_probability: f64,
    /// Binomial standard error of the mean, from the pooled trials.
    pub standard_error: f64,
    pub min_correct_probability: f64,
    pub max_correct_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub per_n: Vec<BlockLengthRecord>,
}

/// Runs the experiment with the default compute budget.
pub fn run_shannon_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    run_shannon_experiment_with_budget(config, DEFAULT_COMPUTE_BUDGET)
}

pub fn run_shannon_experiment_with_budget(
    config: &ExperimentConfig,
    budget: u128,
) -> Result<ExperimentResult> {
    config.validate()?;
    let required = config.required_budget()?;
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let per_n = config
        .block_lengths
        .iter()
        .map(|&n| run_block_length(config, n))
        .collect::<Result<_>>()?;
    Ok(ExperimentResult {
        config: config.clone(),
        per_n,
    })
}

fn run_block_length(config: &ExperimentConfig, n: u32) -> Result<BlockLengthRecord> {
    let trials = config.trials_per_n;
    let successes: Vec<u64> = (0..config.codes_per_n)
        .into_par_iter()
        .map(|index| {
            let code = config.code(n, index)?;
            let key = [config.seed, n as u64, index, PURPOSE_TRIALS];
            Ok(count_successes(&code, config.p, trials, key))
        })
        .collect::<Result<_>>()?;
    let m = config.code_size(n)?;
    let pooled = Estimate::from_counts(successes.iter().sum(), trials * config.codes_per_n);
    let fraction = |s: u64| s as f64 / trials as f64;
    Ok(BlockLengthRecord {
        n,
        codewords: m,
        achieved_rate: (m as f64).log2() / n as f64,
        mean_correct_probability: pooled.estimate,
        standard_error: pooled.standard_error,
        min_correct_probability: fraction(*successes.iter().min().expect("codes_per_n >= 1")),
        max_correct_probability: fraction(*successes.iter().max().expect("codes_per_n >= 1")),
    })
}
