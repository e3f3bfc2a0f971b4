//! Multi-scale trust quantification for binary classifiers.
//!
//! The crate has two halves:
//!
//! * a desk-scale training pipeline for a credit-card-default MLP
//!   ([`dataset`], [`model`]): CSV ingestion, class balancing, stratified
//!   splitting, z-scoring, from-scratch backprop with Adam, and JSON model
//!   persistence;
//! * a model-agnostic trust audit ([`trust`], [`density`], [`report`]) over
//!   any predictions CSV with demographic attributes: question-answer trust,
//!   trust densities with conditional decomposition, the trust matrix, trust
//!   and demographic trust spectra, NetTrustScore and its conditionals, and
//!   per-axis trust gaps.
//!
//! See the crate examples for runnable walkthroughs of each capability, and
//! [`pipeline`] for the train/predict/audit/run-all orchestration behind the
//! `trustquant` binary.

pub mod dataset;
pub mod density;
pub mod error;
pub mod model;
pub mod pipeline;
pub mod predictions;
pub mod report;
pub mod synth;
pub mod trust;

pub use error::{Error, Result};
