//! Channel capacity `C = max_p I(S;R)`.
//!
//! [`blahut_arimoto`] maximizes mutual information over the input distribution
//! of an arbitrary discrete memoryless channel. [`capacity_grid_oracle`] is a
//! brute-force search over binary input distributions, kept deliberately
//! independent of the iteration so the two can check each other.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::prob::{binary_entropy, Distribution, LogBase};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

/// Capacity of the binary symmetric channel, `1 − H₂(p)` bits, expressed in
/// `base`.
pub fn bsc_capacity(p: f64, base: LogBase) -> Result<f64> {
    let bits = 1.0 - binary_entropy(p)?;
    Ok(if base == LogBase::BITS {
        bits
    } else {
        bits * base.log(2.0)
    })
}

/// Outcome of a capacity computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityResult {
    /// Mutual information achieved by `optimal_input`; a lower bound on the
    /// capacity.
    pub capacity: f64,
    /// Upper bound `max_i D(φ_i ‖ q)` at the final iterate.
    pub upper_bound: f64,
    pub optimal_input: Distribution,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub base: LogBase,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tolerance: DEFAULT_TOLERANCE,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            base: LogBase::BITS,
        }
    }
}

impl SolverOptions {
    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Domain {
                what: "tolerance",
                value: self.tolerance,
                domain: "(0, inf)",
            });
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Bounds on the capacity at one Blahut–Arimoto iterate, in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    /// `I(p) = Σ_i p_i D_i`.
    pub lower: f64,
    /// `max_i D_i`.
    pub upper: f64,
}

impl Bounds {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Blahut–Arimoto iteration state.
///
/// Each call to [`BlahutArimoto::step`] reweights the input distribution by
/// `p_i ← p_i exp(D_i) / Σ_k p_k exp(D_k)` with
/// `D_i = Σ_j φ_{i,j} ln(φ_{i,j} / q_j)`. The mutual information of the
/// iterates never decreases.
#[derive(Debug, Clone)]
pub struct BlahutArimoto<'a> {
    channel: &'a Channel,
    input: Vec<f64>,
    divergences: Vec<f64>,
    bounds: Bounds,
}

impl<'a> BlahutArimoto<'a> {
    /// Starts from the uniform input distribution.
    pub fn new(channel: &'a Channel) -> Self {
        let m = channel.inputs();
        let mut state = BlahutArimoto {
            channel,
            input: vec![1.0 / m as f64; m],
            divergences: vec![0.0; m],
            bounds: Bounds {
                lower: 0.0,
                upper: 0.0,
            },
        };
        state.evaluate();
        state
    }

    fn evaluate(&mut self) {
        let q = self.channel.output_marginal(&self.input);
        for (d, row) in self.divergences.iter_mut().zip(self.channel.rows()) {
            *d = row
                .iter()
                .zip(&q)
                .filter(|(&phi, _)| phi > 0.0)
                .map(|(&phi, &qj)| phi * (phi / qj).ln())
                .sum();
        }
        let lower = self
            .input
            .iter()
            .zip(&self.divergences)
            .map(|(p, d)| p * d)
            .sum::<f64>();
        let upper = self
            .divergences
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        self.bounds = Bounds { lower, upper };
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn input(&self) -> &[f64] {
        &self.input
    }

    /// Performs one update and returns the bounds at the new iterate.
    pub fn step(&mut self) -> Bounds {
        let shift = self.bounds.upper;
        for (p, d) in self.input.iter_mut().zip(&self.divergences) {
            *p *= (d - shift).exp();
        }
        let total: f64 = self.input.iter().sum();
        for p in &mut self.input {
            *p /= total;
        }
        self.evaluate();
        self.bounds
    }
}

/// Capacity of an arbitrary discrete memoryless channel by Blahut–Arimoto.
///
/// Iterates until `max_i D_i − Σ_i p_i D_i` drops below `options.tolerance`
/// (measured in `options.base`). Hitting the iteration cap is not an error:
/// the best iterate is returned with `converged = false`.
pub fn blahut_arimoto(channel: &Channel, options: SolverOptions) -> Result<CapacityResult> {
    options.validate()?;
    let base = options.base;
    let mut state = BlahutArimoto::new(channel);
    let mut iterations = 0;
    let mut converged = base.from_nats(state.bounds().gap()) < options.tolerance;
    while !converged && iterations < options.max_iterations {
        state.step();
        iterations += 1;
        converged = base.from_nats(state.bounds().gap()) < options.tolerance;
    }
    let bounds = state.bounds();
    // iterates stay strictly positive but may drift from unit sum by rounding
    let optimal_input = Distribution::normalize(state.input())?;
    Ok(CapacityResult {
        capacity: base.from_nats(bounds.lower).max(0.0),
        upper_bound: base.from_nats(bounds.upper).max(0.0),
        optimal_input,
        iterations,
        converged,
    })
}

/// Brute-force capacity of a binary-input channel: the largest mutual
/// information over inputs `(q, 1 − q)` with `q` on a uniform grid of
/// `resolution` points spanning `[0, 1]`. Result in bits.
pub fn capacity_grid_oracle(channel: &Channel, resolution: usize) -> Result<f64> {
    if channel.inputs() != 2 {
        return Err(Error::UnsupportedShape(format!(
            "grid oracle needs a binary-input channel, got {} inputs",
            channel.inputs()
        )));
    }
    if resolution < 2 {
        return Err(Error::InvalidConfig(
            "grid resolution must be at least 2".into(),
        ));
    }
    let last = (resolution - 1) as f64;
    (0..resolution)
        .into_par_iter()
        .map(|k| {
            let q = k as f64 / last;
            let input = Distribution::new(vec![q, 1.0 - q])?;
            channel.mutual_information(&input, LogBase::BITS)
        })
        .try_reduce(|| f64::NEG_INFINITY, |a, b| Ok(a.max(b)))
}
