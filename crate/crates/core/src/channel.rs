//! Discrete memoryless channels.
//!
//! A [`Channel`] stores the forward probabilities `P(R = r_j | S = s_i)` as a
//! row-stochastic matrix: row `i` belongs to input symbol `s_i`, column `j` to
//! output symbol `r_j`. Given an input distribution the channel induces the
//! joint matrix `ρ_{i,j} = P(S = s_i, R = r_j)`, the output marginal and the
//! backward probabilities `P(S = s_i | R = r_j)`.

use serde::{Deserialize, Serialize};

use crate::error::{check_probability, Error, Result};
use crate::prob::{entropy_of, Distribution, LogBase, NORMALIZATION_TOLERANCE};

/// Row-stochastic forward-probability matrix with symbol names.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    inputs: usize,
    outputs: usize,
    forward: Vec<f64>,
    input_labels: Vec<String>,
    output_labels: Vec<String>,
}

impl Channel {
    /// Builds a channel from its rows. Symbols are labelled `s0, s1, …` and
    /// `r0, r1, …`.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let inputs = rows.len();
        if inputs == 0 {
            return Err(Error::Empty);
        }
        let outputs = rows[0].len();
        if outputs == 0 {
            return Err(Error::Empty);
        }
        let mut forward = Vec::with_capacity(inputs * outputs);
        for row in rows {
            if row.len() != outputs {
                return Err(Error::DimensionMismatch {
                    expected: outputs,
                    actual: row.len(),
                });
            }
            check_row(&row)?;
            forward.extend(row);
        }
        Ok(Channel {
            inputs,
            outputs,
            forward,
            input_labels: (0..inputs).map(|i| format!("s{i}")).collect(),
            output_labels: (0..outputs).map(|j| format!("r{j}")).collect(),
        })
    }

    pub fn with_labels(mut self, inputs: Vec<String>, outputs: Vec<String>) -> Result<Self> {
        if inputs.len() != self.inputs {
            return Err(Error::DimensionMismatch {
                expected: self.inputs,
                actual: inputs.len(),
            });
        }
        if outputs.len() != self.outputs {
            return Err(Error::DimensionMismatch {
                expected: self.outputs,
                actual: outputs.len(),
            });
        }
        self.input_labels = inputs;
        self.output_labels = outputs;
        Ok(self)
    }

    /// Binary symmetric channel with crossover (bit error) probability `p`.
    pub fn bsc(p: f64) -> Result<Self> {
        check_probability("crossover probability", p)?;
        Channel::new(vec![vec![1.0 - p, p], vec![p, 1.0 - p]])
    }

    /// Binary erasure channel; outputs are `0, 1, e`.
    pub fn binary_erasure(epsilon: f64) -> Result<Self> {
        check_probability("erasure probability", epsilon)?;
        Channel::new(vec![
            vec![1.0 - epsilon, 0.0, epsilon],
            vec![0.0, 1.0 - epsilon, epsilon],
        ])
    }

    /// Noiseless channel over `m` symbols.
    pub fn identity(m: usize) -> Result<Self> {
        Channel::new(
            (0..m)
                .map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
    }

    /// Number of input symbols `M`.
    pub fn inputs(&self) -> usize {
        self.inputs
    }

    /// Number of output symbols `N`.
    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn input_labels(&self) -> &[String] {
        &self.input_labels
    }

    pub fn output_labels(&self) -> &[String] {
        &self.output_labels
    }

    /// `P(R = r_j | S = s_i)`.
    pub fn forward(&self, i: usize, j: usize) -> f64 {
        self.forward[i * self.outputs + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.forward[i * self.outputs..(i + 1) * self.outputs]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.forward.chunks_exact(self.outputs)
    }

    fn check_input(&self, input: &Distribution) -> Result<()> {
        if input.len() != self.inputs {
            return Err(Error::DimensionMismatch {
                expected: self.inputs,
                actual: input.len(),
            });
        }
        Ok(())
    }

    /// Output marginal `q_j = Σ_i p_i φ_{i,j}`.
    pub fn output_distribution(&self, input: &Distribution) -> Result<Distribution> {
        self.check_input(input)?;
        Ok(Distribution::from_trusted(
            self.output_marginal(input.probs()),
        ))
    }

    pub(crate) fn output_marginal(&self, input: &[f64]) -> Vec<f64> {
        let mut q = vec![0.0; self.outputs];
        for (row, &p) in self.rows().zip(input) {
            for (qj, &phi) in q.iter_mut().zip(row) {
                *qj += p * phi;
            }
        }
        q
    }

    /// Joint probabilities `ρ_{i,j} = p_i φ_{i,j}`.
    pub fn joint(&self, input: &Distribution) -> Result<JointDistribution> {
        self.check_input(input)?;
        let joint = self
            .rows()
            .zip(input.probs())
            .flat_map(|(row, &p)| row.iter().map(move |&phi| p * phi))
            .collect();
        Ok(JointDistribution {
            inputs: self.inputs,
            outputs: self.outputs,
            joint,
        })
    }

    /// Backward probabilities `P(S = s_i | R = r_j)` by Bayes' rule.
    pub fn backward(&self, input: &Distribution) -> Result<BackwardMatrix> {
        let joint = self.joint(input)?;
        let q = joint.column_sums();
        let mut backward = vec![0.0; self.inputs * self.outputs];
        let defined: Vec<bool> = q.iter().map(|&qj| qj > 0.0).collect();
        for i in 0..self.inputs {
            for j in 0..self.outputs {
                if defined[j] {
                    backward[i * self.outputs + j] = joint.get(i, j) / q[j];
                }
            }
        }
        Ok(BackwardMatrix {
            inputs: self.inputs,
            outputs: self.outputs,
            backward,
            defined,
            output_marginal: q,
        })
    }

    pub fn conditional_entropy(
        &self,
        input: &Distribution,
        direction: Conditioning,
        base: LogBase,
    ) -> Result<f64> {
        self.check_input(input)?;
        Ok(match direction {
            Conditioning::OutputGivenInput => self.noise_entropy(input.probs(), base),
            Conditioning::InputGivenOutput => {
                let bw = self.backward(input)?;
                equivocation(&bw, base)
            }
        })
    }

    /// `H(R|S) = Σ_i p_i H(φ_{i,·})`.
    fn noise_entropy(&self, input: &[f64], base: LogBase) -> f64 {
        self.rows()
            .zip(input)
            .filter(|(_, &p)| p > 0.0)
            .map(|(row, &p)| p * entropy_of(row, base))
            .sum()
    }

    /// All four entropies of the source/channel pair.
    pub fn entropies(&self, input: &Distribution, base: LogBase) -> Result<ChannelEntropies> {
        self.check_input(input)?;
        let bw = self.backward(input)?;
        Ok(ChannelEntropies {
            input: entropy_of(input.probs(), base),
            output: entropy_of(bw.output_marginal(), base),
            output_given_input: self.noise_entropy(input.probs(), base),
            input_given_output: equivocation(&bw, base),
        })
    }

    /// `I(S;R) = H(R) − H(R|S)`.
    pub fn mutual_information(&self, input: &Distribution, base: LogBase) -> Result<f64> {
        self.check_input(input)?;
        let q = self.output_marginal(input.probs());
        Ok(entropy_of(&q, base) - self.noise_entropy(input.probs(), base))
    }
}

impl Serialize for Channel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            forward: Vec<&'a [f64]>,
            input_labels: &'a [String],
            output_labels: &'a [String],
        }
        Raw {
            forward: self.rows().collect(),
            input_labels: &self.input_labels,
            output_labels: &self.output_labels,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Channel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            forward: Vec<Vec<f64>>,
            #[serde(default)]
            input_labels: Option<Vec<String>>,
            #[serde(default)]
            output_labels: Option<Vec<String>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut ch = Channel::new(raw.forward).map_err(serde::de::Error::custom)?;
        if raw.input_labels.is_some() || raw.output_labels.is_some() {
            let inputs = raw.input_labels.unwrap_or_else(|| ch.input_labels.clone());
            let outputs = raw
                .output_labels
                .unwrap_or_else(|| ch.output_labels.clone());
            ch = ch
                .with_labels(inputs, outputs)
                .map_err(serde::de::Error::custom)?;
        }
        Ok(ch)
    }
}

fn check_row(row: &[f64]) -> Result<()> {
    for (j, &x) in row.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFinite { index: j });
        }
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain {
                what: "forward probability",
                value: x,
                domain: "[0, 1]",
            });
        }
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized {
            sum,
            tolerance: NORMALIZATION_TOLERANCE,
        });
    }
    Ok(())
}

/// `H(S|R) = Σ_j q_j H(S | R = r_j)`; columns with `q_j = 0` carry no weight.
fn equivocation(bw: &BackwardMatrix, base: LogBase) -> f64 {
    (0..bw.outputs)
        .filter_map(|j| {
            bw.column(j)
                .map(|col| bw.output_marginal[j] * entropy_of(&col, base))
        })
        .sum()
}

/// Which conditional entropy to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conditioning {
    /// `H(S|R)`: uncertainty about the input left after seeing the output.
    InputGivenOutput,
    /// `H(R|S)`: the noise entropy of the channel.
    OutputGivenInput,
}

/// `H(S)`, `H(R)`, `H(R|S)` and `H(S|R)` for one channel and input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelEntropies {
    pub input: f64,
    pub output: f64,
    pub output_given_input: f64,
    pub input_given_output: f64,
}

impl ChannelEntropies {
    /// `H(R) − H(R|S)`.
    pub fn mutual_information(&self) -> f64 {
        self.output - self.output_given_input
    }

    /// `H(S) − H(S|R)`.
    pub fn mutual_information_from_input(&self) -> f64 {
        self.input - self.input_given_output
    }
}

/// Joint probabilities `ρ_{i,j}`, rows indexed by input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    inputs: usize,
    outputs: usize,
    joint: Vec<f64>,
}

impl JointDistribution {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.joint[i * self.outputs + j]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.inputs, self.outputs)
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.joint
            .chunks_exact(self.outputs)
            .map(|r| r.iter().sum())
            .collect()
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let mut q = vec![0.0; self.outputs];
        for row in self.joint.chunks_exact(self.outputs) {
            for (qj, &x) in q.iter_mut().zip(row) {
                *qj += x;
            }
        }
        q
    }

    pub fn total(&self) -> f64 {
        self.joint.iter().sum()
    }
}

/// Backward probabilities `P(S = s_i | R = r_j)`.
///
/// Columns of outputs that occur with probability zero have no conditional
/// distribution; they are flagged and [`BackwardMatrix::get`] returns `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackwardMatrix {
    inputs: usize,
    outputs: usize,
    backward: Vec<f64>,
    defined: Vec<bool>,
    output_marginal: Vec<f64>,
}

impl BackwardMatrix {
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.defined[j].then(|| self.backward[i * self.outputs + j])
    }

    pub fn column(&self, j: usize) -> Option<Vec<f64>> {
        self.defined[j].then(|| {
            (0..self.inputs)
                .map(|i| self.backward[i * self.outputs + j])
                .collect()
        })
    }

    pub fn is_defined(&self, j: usize) -> bool {
        self.defined[j]
    }

    pub fn defined_columns(&self) -> &[bool] {
        &self.defined
    }

    /// The output marginal `q_j` the backward columns were normalized by.
    pub fn output_marginal(&self) -> &[f64] {
        &self.output_marginal
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.inputs, self.outputs)
    }
}
