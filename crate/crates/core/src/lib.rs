//! Seed-based gene prioritization on weighted protein interaction networks.
//!
//! Candidate genes are scored four ways against a seed set — network
//! propagation and random walk with restart on the normalized network,
//! a shortest-path statistic, and a disease-similarity evidence count —
//! then the scores are fused by a weighted summation whose weights come
//! from multi-criteria decision analysis (AHP/ANP criterion weights fed
//! into TOPSIS over per-scorer cross-validation metrics). A leave-one-out
//! cross-validation harness over artificial linkage intervals produces
//! ROC/AUC, MRR, average-rank, and top-k% reports.
//!
//! Modules follow the processing stages:
//!
//! * [`graph`] — load, validate, prune, and index the weighted network.
//! * [`diffusion`] — RWR and network-propagation score vectors.
//! * [`shortest_path`] — Dijkstra-based path statistics and scoring.
//! * [`evidence`] — scores from symptom-similar diseases' gene sets.
//! * [`madm`] — AHP / ANP criterion weights and TOPSIS ranking.
//! * [`fusion`] — score normalization, weighted summation, and the
//!   WDRS / order-statistics rank-combination baselines.
//! * [`evaluation`] — LOOCV harness and all performance metrics.
//! * [`pipeline`] — end-to-end wiring, including the self-weighting loop.

pub mod diffusion;
pub mod error;
pub mod evaluation;
pub mod evidence;
pub mod fusion;
pub mod graph;
pub mod madm;
mod parse;
pub mod pipeline;
pub mod score;
pub mod shortest_path;

pub use error::Error;
pub use score::{Provenance, ScoreVector};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
