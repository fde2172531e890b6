//! Cubical persistent homology for raster images and the persistence-curve
//! family of diagram vectorizations.
//!
//! The crate is organized bottom-up:
//!
//! * [`cubical`]: grayscale images as filtered cubical complexes, plus a
//!   brute-force Betti oracle on binary images (union-find + Euler
//!   characteristic, independent of the reduction engine).
//! * [`persistence`]: persistence diagrams via mod-2 boundary-matrix
//!   reduction under the elder rule.
//! * [`curves`]: the persistence-curve framework `P(D, psi, T)` and its
//!   named instances (Betti, life, midlife, multiplicative life, the three
//!   entropy curves, landscapes, ECC, the thresholding objective), plus
//!   persistence statistics.
//! * [`metrics`]: exact bottleneck and Wasserstein-p distances between
//!   desk-scale diagrams, and L1 distances between curves.
//! * [`stability`]: executable stability bounds for sum-statistic curves
//!   and the entropy-curve bound.
//!
//! Connectivity convention: pixels are closed unit squares, so white pixels
//! touching only at a corner are connected (8-connectivity for foreground,
//! 4-connectivity for holes). Images are not padded with a white boundary.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `percurve-cli` crate.

#![no_std]

extern crate alloc;

pub mod cubical;
pub mod curves;
pub mod metrics;
pub mod persistence;
pub mod stability;

pub use cubical::{BinaryImage, Cell, FilteredComplex, GrayscaleImage};
pub use curves::{DiagramContext, PersistenceCurve, Psi, Statistic};
pub use persistence::{PersistenceDiagram, PersistencePair};
