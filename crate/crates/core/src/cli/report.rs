//! Report documents emitted by the command-line tool.
//!
//! Text output prints decimals with [`SIGNIFICANT_DIGITS`] significant digits
//! in plain positional notation. JSON output carries full-precision numbers so
//! that it parses back to the identical value.

use serde::{Deserialize, Serialize};

use crate::capacity::CapacityResult;
use crate::experiment::ExperimentResult;

pub const SIGNIFICANT_DIGITS: usize = 9;

/// Header of the per-block-length experiment CSV.
pub const EXPERIMENT_CSV_HEADER: [&str; 7] = [
    "n",
    "M",
    "rate",
    "mean_correct",
    "stderr",
    "min_correct",
    "max_correct",
];

/// Formats `x` with [`SIGNIFICANT_DIGITS`] significant digits, never in
/// exponent notation.
pub fn format_decimal(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.*}", SIGNIFICANT_DIGITS - 1, 0.0);
    }
    // position of the leading digit, taken from the rounded scientific form
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let exponent: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub entropy: f64,
    pub base: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub capacity: f64,
    pub upper_bound: f64,
    pub optimal_input: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub base: f64,
    /// `1 − H₂(p)` when the channel was given as `--bsc p`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<f64>,
}

impl CapacityReport {
    pub fn new(result: &CapacityResult, base: f64, closed_form: Option<f64>) -> Self {
        CapacityReport {
            capacity: result.capacity,
            upper_bound: result.upper_bound,
            optimal_input: result.optimal_input.probs().to_vec(),
            iterations: result.iterations,
            converged: result.converged,
            base,
            closed_form,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("capacity {}\n", format_decimal(self.capacity));
        if let Some(c) = self.closed_form {
            out += &format!("closed_form {}\n", format_decimal(c));
        }
        out += &format!("upper_bound {}\n", format_decimal(self.upper_bound));
        out += &format!("optimal_input {}\n", join(&self.optimal_input));
        out += &format!("iterations {}\n", self.iterations);
        out += &format!("converged {}\n", self.converged);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MutualInformationReport {
    pub mutual_information: f64,
    pub input_entropy: f64,
    pub output_entropy: f64,
    pub output_given_input: f64,
    pub input_given_output: f64,
    pub base: f64,
}

impl MutualInformationReport {
    pub fn to_text(&self) -> String {
        format!(
            "mutual_information {}\ninput_entropy {}\noutput_entropy {}\noutput_given_input {}\ninput_given_output {}\n",
            format_decimal(self.mutual_information),
            format_decimal(self.input_entropy),
            format_decimal(self.output_entropy),
            format_decimal(self.output_given_input),
            format_decimal(self.input_given_output),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodeReport {
    pub index: usize,
    pub codeword: String,
    pub distance: u32,
}

impl DecodeReport {
    pub fn to_text(&self) -> String {
        format!(
            "index {}\ncodeword {}\ndistance {}\n",
            self.index, self.codeword, self.distance
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectProbabilityReport {
    pub p: f64,
    pub n: u32,
    #[serde(rename = "M")]
    pub codewords: usize,
    pub rate: f64,
    pub correct_probability: f64,
}

impl CorrectProbabilityReport {
    pub fn to_text(&self) -> String {
        format!(
            "n {}\nM {}\nrate {}\ncorrect_probability {}\n",
            self.n,
            self.codewords,
            format_decimal(self.rate),
            format_decimal(self.correct_probability),
        )
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter()
        .map(|&x| format_decimal(x))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Per-block-length rows as CSV with the [`EXPERIMENT_CSV_HEADER`] columns.
pub fn experiment_csv(result: &ExperimentResult) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(EXPERIMENT_CSV_HEADER)?;
    for r in &result.per_n {
        w.write_record([
            r.n.to_string(),
            r.codewords.to_string(),
            format_decimal(r.achieved_rate),
            format_decimal(r.mean_correct_probability),
            format_decimal(r.standard_error),
            format_decimal(r.min_correct_probability),
            format_decimal(r.max_correct_probability),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}
