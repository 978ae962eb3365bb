//! Binary block codes and their decoders.
//!
//! Codewords are packed into a `u64`: the `k`-th symbol of the textual form
//! (`"0110"`) is bit `k`. Lengths from 1 to 63 are supported, so Hamming
//! distance is a single popcount.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::Channel;
use crate::error::{check_probability, Error, Result};
use crate::prob::Distribution;

pub const MAX_LENGTH: u32 = 63;

/// Received words per codeword that [`exact_block_correct_probability`]
/// may enumerate; its budget is this times `M` codeword comparisons.
pub const DEFAULT_ENUMERATION_WORDS: u128 = 1 << 24;

/// Chunk size for parallel enumeration of received words.
const ENUMERATION_CHUNK: u64 = 1 << 14;

/// A word of `len` binary symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Codeword {
    bits: u64,
    len: u32,
}

impl Codeword {
    pub fn new(bits: u64, len: u32) -> Result<Self> {
        if len == 0 || len > MAX_LENGTH {
            return Err(Error::InvalidCode(format!(
                "word length {len} outside 1..={MAX_LENGTH}"
            )));
        }
        if bits >> len != 0 {
            return Err(Error::InvalidCode(format!(
                "bits {bits:#x} do not fit in {len} symbols"
            )));
        }
        Ok(Codeword { bits, len })
    }

    pub fn zeros(len: u32) -> Result<Self> {
        Codeword::new(0, len)
    }

    pub fn ones(len: u32) -> Result<Self> {
        Codeword::new(0, len).map(|w| Codeword {
            bits: w.mask(),
            ..w
        })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of symbols.
    pub fn length(&self) -> u32 {
        self.len
    }

    pub fn bit(&self, k: u32) -> bool {
        (self.bits >> k) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    fn mask(&self) -> u64 {
        (1u64 << self.len) - 1
    }

    /// Flips the symbols selected by `pattern` (bit `k` set flips symbol `k`).
    pub fn flip(&self, pattern: u64) -> Codeword {
        Codeword {
            bits: (self.bits ^ pattern) & self.mask(),
            len: self.len,
        }
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len {
            f.write_str(if self.bit(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let len = s.len();
        if len == 0 || len > MAX_LENGTH as usize {
            return Err(Error::InvalidCode(format!(
                "word length {len} outside 1..={MAX_LENGTH}"
            )));
        }
        let mut bits = 0u64;
        for (k, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << k,
                other => {
                    return Err(Error::InvalidCode(format!(
                        "unexpected symbol {other:?} at position {k}"
                    )))
                }
            }
        }
        Codeword::new(bits, len as u32)
    }
}

impl Serialize for Codeword {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Codeword {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of positions in which `u` and `v` differ.
pub fn hamming_distance(u: &Codeword, v: &Codeword) -> Result<u32> {
    if u.len != v.len {
        return Err(Error::LengthMismatch {
            left: u.len as usize,
            right: v.len as usize,
        });
    }
    Ok((u.bits ^ v.bits).count_ones())
}

/// An ordered list of distinct codewords of a common length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCode {
    length: u32,
    codewords: Vec<Codeword>,
}

impl BlockCode {
    pub fn new(codewords: Vec<Codeword>) -> Result<Self> {
        let first = codewords
            .first()
            .ok_or_else(|| Error::InvalidCode("a code needs at least one codeword".into()))?;
        let length = first.len;
        if let Some(w) = codewords.iter().find(|w| w.len != length) {
            return Err(Error::LengthMismatch {
                left: length as usize,
                right: w.len as usize,
            });
        }
        let mut seen: Vec<u64> = codewords.iter().map(|w| w.bits).collect();
        seen.sort_unstable();
        if let Some(pair) = seen.windows(2).find(|p| p[0] == p[1]) {
            let dup = Codeword {
                bits: pair[0],
                len: length,
            };
            return Err(Error::InvalidCode(format!("duplicate codeword {dup}")));
        }
        Ok(BlockCode { length, codewords })
    }

    /// Block length `n`.
    pub fn length(&self) -> u32 {
        self.length
    }

    /// Number of codewords `M`.
    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    pub fn codewords(&self) -> &[Codeword] {
        &self.codewords
    }

    pub fn codeword(&self, index: usize) -> Codeword {
        self.codewords[index]
    }

    /// `log₂(M) / n`.
    pub fn rate(&self) -> f64 {
        (self.size() as f64).log2() / self.length as f64
    }

    fn check_received(&self, received: &Codeword) -> Result<()> {
        if received.len != self.length {
            return Err(Error::LengthMismatch {
                left: self.length as usize,
                right: received.len as usize,
            });
        }
        Ok(())
    }

    /// Index and distance of the nearest codeword, lowest index on ties.
    pub(crate) fn nearest(&self, received: u64) -> (usize, u32) {
        let mut best = (0, u32::MAX);
        for (i, w) in self.codewords.iter().enumerate() {
            let d = (w.bits ^ received).count_ones();
            if d < best.1 {
                best = (i, d);
                if d == 0 {
                    break;
                }
            }
        }
        best
    }
}

impl<'de> Deserialize<'de> for BlockCode {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            codewords: Vec<Codeword>,
        }
        let raw = Raw::deserialize(deserializer)?;
        BlockCode::new(raw.codewords).map_err(serde::de::Error::custom)
    }
}

/// Nearest-codeword decoding: the smallest index whose codeword has minimal
/// Hamming distance to `received`.
///
/// On a binary symmetric channel with crossover probability below one half
/// this is the maximum-likelihood decision.
pub fn min_distance_decode(code: &BlockCode, received: &Codeword) -> Result<usize> {
    code.check_received(received)?;
    Ok(code.nearest(received.bits).0)
}

/// Maximum-likelihood decoding computed directly from the BSC likelihoods
/// `p^d (1 − p)^(n − d)`; smallest index on ties.
pub fn likelihood_decode_oracle(code: &BlockCode, received: &Codeword, p: f64) -> Result<usize> {
    code.check_received(received)?;
    check_probability("crossover probability", p)?;
    let n = code.length as i32;
    let mut best = (0, f64::NEG_INFINITY);
    for (i, w) in code.codewords.iter().enumerate() {
        let d = hamming_distance(w, received)? as i32;
        let likelihood = p.powi(d) * (1.0 - p).powi(n - d);
        if likelihood > best.1 {
            best = (i, likelihood);
        }
    }
    Ok(best.0)
}

/// A total map `σ` from output symbols to input symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodingRule {
    sigma: Vec<usize>,
}

impl DecodingRule {
    /// `sigma[j]` is the input chosen when output `j` is observed.
    pub fn new(sigma: Vec<usize>, inputs: usize) -> Result<Self> {
        if sigma.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(&bad) = sigma.iter().find(|&&s| s >= inputs) {
            return Err(Error::DimensionMismatch {
                expected: inputs,
                actual: bad + 1,
            });
        }
        Ok(DecodingRule { sigma })
    }

    pub fn decide(&self, output: usize) -> usize {
        self.sigma[output]
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn outputs(&self) -> usize {
        self.sigma.len()
    }
}

fn argmax_lowest(values: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in values.enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// The rule that picks, for every output, the input with the largest
/// backward probability `P(S = s_i | R = r_j)`.
///
/// Outputs that never occur fall back to the largest forward probability in
/// their column so that the rule stays total.
pub fn map_rule(channel: &Channel, input: &Distribution) -> Result<DecodingRule> {
    let bw = channel.backward(input)?;
    let sigma = (0..channel.outputs())
        .map(|j| match bw.column(j) {
            Some(col) => argmax_lowest(col.into_iter()),
            None => argmax_lowest((0..channel.inputs()).map(|i| channel.forward(i, j))),
        })
        .collect();
    DecodingRule::new(sigma, channel.inputs())
}

/// Probability of correct decoding under `rule`:
/// `Σ_j P(R = r_j) · P(S = s_σ(j) | R = r_j)`.
pub fn rule_correct_probability(
    channel: &Channel,
    input: &Distribution,
    rule: &DecodingRule,
) -> Result<f64> {
    if rule.outputs() != channel.outputs() {
        return Err(Error::DimensionMismatch {
            expected: channel.outputs(),
            actual: rule.outputs(),
        });
    }
    if let Some(&bad) = rule.sigma.iter().find(|&&s| s >= channel.inputs()) {
        return Err(Error::DimensionMismatch {
            expected: channel.inputs(),
            actual: bad + 1,
        });
    }
    let bw = channel.backward(input)?;
    let q = bw.output_marginal();
    Ok((0..channel.outputs())
        .filter_map(|j| bw.get(rule.decide(j), j).map(|phi| q[j] * phi))
        .sum())
}

/// Default enumeration budget for `code`: `2^24 · M` codeword comparisons.
pub fn default_enumeration_budget(code: &BlockCode) -> u128 {
    DEFAULT_ENUMERATION_WORDS * code.size() as u128
}

/// For each distance `d`, how many received words decode to a codeword at
/// distance `d` from them. Sums to `2^n`.
///
/// Fails with [`Error::TooLarge`] when `2^n · M` exceeds `budget`.
pub fn decoded_distance_counts(code: &BlockCode, budget: u128) -> Result<Vec<u64>> {
    let n = code.length;
    let required = (1u128 << n) * code.size() as u128;
    if required > budget {
        return Err(Error::TooLarge { required, budget });
    }
    let total = 1u64 << n;
    let chunks = total.div_ceil(ENUMERATION_CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = vec![0u64; n as usize + 1];
            let end = ((c + 1) * ENUMERATION_CHUNK).min(total);
            for v in c * ENUMERATION_CHUNK..end {
                local[code.nearest(v).1 as usize] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; n as usize + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(counts)
}

/// Exact probability of correct nearest-codeword decoding over a BSC with
/// crossover `p`, for equiprobable codewords:
/// `(1/M) Σ_v p^d(v) (1 − p)^(n − d(v))` where `d(v)` is the distance from `v`
/// to the codeword it decodes to.
pub fn exact_block_correct_probability(code: &BlockCode, p: f64) -> Result<f64> {
    exact_block_correct_probability_with_budget(code, p, default_enumeration_budget(code))
}

/// As [`exact_block_correct_probability`] with an explicit budget on
/// `2^n · M` codeword comparisons.
pub fn exact_block_correct_probability_with_budget(
    code: &BlockCode,
    p: f64,
    budget: u128,
) -> Result<f64> {
    check_probability("crossover probability", p)?;
    let counts = decoded_distance_counts(code, budget)?;
    Ok(correct_probability_from_counts(&counts, p) / code.size() as f64)
}

pub(crate) fn correct_probability_from_counts(counts: &[u64], p: f64) -> f64 {
    let n = counts.len() as i32 - 1;
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(d, &c)| c as f64 * p.powi(d as i32) * (1.0 - p).powi(n - d as i32))
        .sum()
}

/// `{0ⁿ, 1ⁿ}`.
pub fn repetition_code(n: u32) -> Result<BlockCode> {
    BlockCode::new(vec![Codeword::zeros(n)?, Codeword::ones(n)?])
}

/// `m` distinct words drawn uniformly without replacement from `{0,1}^n`,
/// determined by `seed`.
pub fn random_code(n: u32, m: u64, seed: u64) -> Result<BlockCode> {
    random_code_with(n, m, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub(crate) fn random_code_with(n: u32, m: u64, rng: &mut ChaCha8Rng) -> Result<BlockCode> {
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::InvalidCode(format!(
            "word length {n} outside 1..={MAX_LENGTH}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidCode(
            "a code needs at least one codeword".into(),
        ));
    }
    if m > 1u64 << n {
        return Err(Error::TooMany {
            requested: m,
            length: n,
        });
    }
    let words = index::sample(rng, 1usize << n, m as usize);
    BlockCode::new(
        words
            .into_iter()
            .map(|w| Codeword {
                bits: w as u64,
                len: n,
            })
            .collect(),
    )
}
