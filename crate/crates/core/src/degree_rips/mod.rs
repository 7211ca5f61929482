//! Degree-Rips bifiltrations of finite planar clouds.
//!
//! The normalised convention is used throughout: a point survives at
//! `(s, k)` when its open `s`-ball, counting the point itself, holds at least
//! `k·n` of the `n` points. The count-based convention "degree at least
//! `d − 1` in the 1-skeleton" corresponds to `k = d / n`.

pub mod agreement;
pub mod frame;
pub mod grid;
pub mod homology;
pub mod index;

pub use agreement::{region_agreement, AgreementReport};
pub use frame::{build_frame, min_count, DegreeRipsFrame};
pub use grid::{hilbert_grid, hilbert_grid_naive, HilbertGrid};
pub use homology::{homology_ranks, z2_rank};
pub use index::DistanceIndex;
