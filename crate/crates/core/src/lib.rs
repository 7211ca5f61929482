//! Degree-Rips region diagrams of the weighted annulus.
//!
//! The analytic side ([`geom`], [`annulus`], [`curves`]) computes the curves
//! `φ_ℓ` that split the `(s, k)` plane into regions where the degree-Rips
//! complex of the weighted annulus is empty, an odd sphere, or contractible.
//! The empirical side ([`sampler`], [`degree_rips`]) samples finite clouds,
//! builds their degree-Rips complexes and computes `H₀`/`H₁` Hilbert
//! functions to compare against the diagram.

pub mod annulus;
pub mod cli;
pub mod curves;
pub mod degree_rips;
pub mod error;
pub mod geom;
pub mod io;
pub mod roots;
pub mod sampler;

pub use annulus::{AnnulusModel, BallMeasureProfile, PeakLocus, PeakRegime};
pub use curves::{Classifier, RegionLabel, SphereIndex};
pub use error::{Error, Result};
pub use sampler::PointCloud;
