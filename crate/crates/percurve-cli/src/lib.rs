//! Command-line companion to the `percurve` library: image ingestion,
//! feature extraction, classification, noise injection, diagram and
//! feature serialization, and a timing harness.

pub mod bench;
pub mod config;
pub mod diagram_io;
pub mod features;
pub mod knn;
pub mod noise;
pub mod pgm;
pub mod synthetic;
