//! Seeded samples from the weighted annulus.
//!
//! Point `i` is drawn from its own ChaCha20 stream: the key comes from
//! `seed_from_u64(seed)` and the stream number is `i`. Each point consumes
//! three `f64` draws in order: the mixture branch, the radius, the angle.
//! Points are therefore independent of `n` and of the thread layout, and a
//! cloud of `n` points is a prefix of any larger cloud with the same seed.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::annulus::AnnulusModel;
use crate::error::{domain, Result};

/// Identifier recorded in output metadata.
pub const PRNG_ID: &str = "chacha20/rand_chacha-0.3/seed_from_u64+stream=index/draws=branch,radius,angle";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointCloud {
    pub points: Vec<[f64; 2]>,
    pub seed: Option<u64>,
    pub model: Option<AnnulusModel>,
}

impl PointCloud {
    /// A cloud without sampling provenance, e.g. read from a file.
    pub fn from_points(points: Vec<[f64; 2]>) -> Self {
        PointCloud { points, seed: None, model: None }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Draws point `index` of the cloud with the given seed.
pub fn sample_point(model: &AnnulusModel, seed: u64, index: u64) -> [f64; 2] {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let branch: f64 = rng.gen();
    let u: f64 = rng.gen();
    let theta = 2.0 * PI * rng.gen::<f64>();
    let (r, q) = (model.inner_radius, model.outer_radius);
    let radius = if branch < model.inner_mass {
        r * u.sqrt()
    } else {
        (r * r + u * (q * q - r * r)).sqrt()
    };
    [radius * theta.cos(), radius * theta.sin()]
}

pub fn sample(model: &AnnulusModel, n: usize, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    let points = (0..n as u64)
        .into_par_iter()
        .map(|i| sample_point(model, seed, i))
        .collect();
    Ok(PointCloud { points, seed: Some(seed), model: Some(*model) })
}
