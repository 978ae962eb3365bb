//! Finite probability distributions and their entropy.
//!
//! Logarithms are taken in a caller-chosen base `r > 1` ([`LogBase`]); bits
//! (`r = 2`) are the default everywhere in the crate. Zero probabilities are
//! admitted and contribute nothing to entropy sums (`0 · log 0 = 0`).

use serde::{Deserialize, Serialize};

use crate::error::{check_probability, Error, Result};

/// Tolerance on `|Σ p_i − 1|` accepted by [`Distribution::new`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Base of the logarithm used to measure information.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct LogBase(f64);

impl LogBase {
    /// Bits.
    pub const BITS: LogBase = LogBase(2.0);
    /// Nats.
    pub const NATS: LogBase = LogBase(std::f64::consts::E);

    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() && r > 1.0 {
            Ok(LogBase(r))
        } else {
            Err(Error::Domain {
                what: "log base",
                value: r,
                domain: "(1, inf)",
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `log_r(x)`.
    ///
    /// Bases 2 and 10 go through the dedicated intrinsics so that exact
    /// powers of the base produce exact results.
    pub fn log(self, x: f64) -> f64 {
        if self.0 == 2.0 {
            x.log2()
        } else if self.0 == 10.0 {
            x.log10()
        } else {
            x.ln() / self.0.ln()
        }
    }

    /// Converts a quantity measured in nats into this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        if self.0 == std::f64::consts::E {
            nats
        } else {
            nats / self.0.ln()
        }
    }
}

impl Default for LogBase {
    fn default() -> Self {
        LogBase::BITS
    }
}

impl TryFrom<f64> for LogBase {
    type Error = Error;

    fn try_from(r: f64) -> Result<Self> {
        LogBase::new(r)
    }
}

impl From<LogBase> for f64 {
    fn from(b: LogBase) -> f64 {
        b.0
    }
}

/// A validated probability vector over `N >= 1` symbols.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    probs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Distribution {
    /// Validates `weights` as a probability vector. Entries are kept as given;
    /// nothing is renormalized.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        validate(&weights)?;
        Ok(Distribution {
            probs: weights,
            labels: None,
        })
    }

    /// Scales nonnegative `weights` so that they sum to one.
    pub fn normalize(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty);
        }
        check_entries(weights)?;
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::NotNormalized {
                sum: total,
                tolerance: NORMALIZATION_TOLERANCE,
            });
        }
        Distribution::new(weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(Distribution {
            probs: vec![1.0 / n as f64; n],
            labels: None,
        })
    }

    pub fn point_mass(n: usize, at: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if at >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: at + 1,
            });
        }
        let mut probs = vec![0.0; n];
        probs[at] = 1.0;
        Ok(Distribution {
            probs,
            labels: None,
        })
    }

    /// Attaches symbol names.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.probs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.probs.len(),
                actual: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Builds a distribution from values already known to be valid up to
    /// accumulated rounding (marginals of valid inputs).
    pub(crate) fn from_trusted(probs: Vec<f64>) -> Self {
        debug_assert!(
            validate(&probs).is_ok(),
            "untrusted probabilities {probs:?}"
        );
        Distribution {
            probs,
            labels: None,
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn entropy(&self, base: LogBase) -> f64 {
        entropy(self, base)
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            probs: Vec<f64>,
            #[serde(default)]
            labels: Option<Vec<String>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut d = Distribution::new(raw.probs).map_err(serde::de::Error::custom)?;
        if let Some(labels) = raw.labels {
            d = d.with_labels(labels).map_err(serde::de::Error::custom)?;
        }
        Ok(d)
    }
}

fn check_entries(weights: &[f64]) -> Result<()> {
    for (index, &w) in weights.iter().enumerate() {
        if !w.is_finite() {
            return Err(Error::NonFinite { index });
        }
        if w < 0.0 {
            return Err(Error::NegativeEntry { index, value: w });
        }
    }
    Ok(())
}

pub(crate) fn validate(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::Empty);
    }
    check_entries(weights)?;
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized {
            sum,
            tolerance: NORMALIZATION_TOLERANCE,
        });
    }
    Ok(())
}

/// Information carried by an event of probability `u`: `−log_r(u)`.
pub fn pointwise_information(u: f64, base: LogBase) -> Result<f64> {
    if !(u > 0.0 && u <= 1.0) {
        return Err(Error::Domain {
            what: "probability",
            value: u,
            domain: "(0, 1]",
        });
    }
    // -log(1) would be -0.0
    Ok(if u == 1.0 { 0.0 } else { -base.log(u) })
}

/// `−p log_r p` with the `0 log 0 = 0` convention.
pub(crate) fn plogp(p: f64, base: LogBase) -> f64 {
    if p > 0.0 {
        -p * base.log(p)
    } else {
        0.0
    }
}

/// Entropy of a probability vector given as a raw slice, in base `base`.
///
/// Terms are accumulated in ascending order of probability, so the result does
/// not depend on the order of `probs`.
pub(crate) fn entropy_of(probs: &[f64], base: LogBase) -> f64 {
    let mut sorted: Vec<f64> = probs.iter().copied().filter(|&p| p > 0.0).collect();
    sorted.sort_by(f64::total_cmp);
    let h: f64 = sorted.iter().map(|&p| plogp(p, base)).sum();
    h.max(0.0)
}

/// Shannon entropy `H_r(X) = −Σ p_i log_r p_i`.
pub fn entropy(d: &Distribution, base: LogBase) -> f64 {
    entropy_of(&d.probs, base)
}

/// The Shannon function `H₂(p) = −p log₂ p − (1−p) log₂(1−p)`.
///
/// Evaluated from the larger of `p` and `1 − p` so that `H₂(p)` and
/// `H₂(1 − p)` are bitwise equal.
pub fn binary_entropy(p: f64) -> Result<f64> {
    check_probability("p", p)?;
    let large = if p >= 0.5 { p } else { 1.0 - p };
    // exact for large in [0.5, 1]
    let small = 1.0 - large;
    Ok(plogp(small, LogBase::BITS) + plogp(large, LogBase::BITS))
}
