//! Core library for the box-scene hierarchical disentanglement toolkit:
//! factor sampling, deterministic rendering, dataset materialization, a
//! reverse-mode tensor engine, the four VAE variants with their training
//! schedules, gradient-boosted trees, and the DCI evaluation pipeline.

pub mod dataset;
pub mod engine;
pub mod error;
pub mod factors;
pub mod gbt;
pub mod metrics;
pub mod models;
pub mod renderer;
pub mod rng;
pub mod trainer;

pub use error::{Error, Result};
