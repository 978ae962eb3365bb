//! Information-theoretic building blocks for discrete channels and binary
//! block codes.
//!
//! - [`prob`]: distributions, pointwise information, entropy, the Shannon
//!   function `H₂`.
//! - [`channel`]: discrete memoryless channels with their joint, backward and
//!   marginal probabilities, conditional entropies and mutual information.
//! - [`capacity`]: BSC closed form, Blahut–Arimoto, and a grid oracle.
//! - [`coding`]: binary block codes, nearest-codeword and likelihood decoders,
//!   MAP decoding rules and exact correct-decoding probabilities.
//! - [`experiment`]: seeded Monte Carlo random-coding experiments over a BSC.
//! - [`cli`]: the `shannon` command line and its file formats.
//!
//! ```
//! use shannon::{capacity::bsc_capacity, prob::LogBase};
//!
//! let c = bsc_capacity(0.1, LogBase::BITS).unwrap();
//! assert!((c - 0.531004).abs() < 1e-6);
//! ```

pub mod capacity;
pub mod channel;
pub mod cli;
pub mod coding;
mod error;
pub mod experiment;
pub mod prob;

pub use error::{Error, ErrorClass, Result};
