//! Boundary curves `φ_ℓ` in the `(s, k)` plane and the homotopy-type
//! classifier built on them.
//!
//! A superlevel set of the ball-measure function is an annulus with inner
//! radius `P`, and its Rips complex at scale `s` is that of the circle of
//! radius `P`. On a circle of radius `r` the Euclidean scale `s` corresponds
//! to the geodesic scale `2r·asin(s / 2r)`; normalised by the circumference
//! this lands in one of the intervals `(ℓ/(2ℓ+1), (ℓ+1)/(2ℓ+3)]` on which the
//! complex is an odd sphere `S^{2ℓ+1}`. The radius at which the left end of
//! the `ℓ`-th interval is hit is `ρ_ℓ(s) = s / (2·sin(πℓ/(2ℓ+1)))`, and the
//! curves are `φ_ℓ(s) = ν_s(min(ρ_ℓ(s), ω(s)))`.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::annulus::{AnnulusModel, BallMeasureProfile, PeakLocus};
use crate::error::{domain, Result};

pub const DEFAULT_ELL_MAX: u32 = 64;

/// Default width, in `k` units, of the band around each curve reported as
/// [`RegionLabel::Boundary`].
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SphereIndex {
    Finite(u32),
    Infinite,
}

impl fmt::Display for SphereIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphereIndex::Finite(l) => write!(f, "{l}"),
            SphereIndex::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for SphereIndex {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(SphereIndex::Infinite),
            t => t
                .parse::<u32>()
                .map(SphereIndex::Finite)
                .map_err(|_| format!("invalid sphere index `{t}`")),
        }
    }
}

/// Homotopy type of a degree-Rips complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    Empty,
    /// The odd sphere `S^{2ℓ+1}`.
    Sphere(u32),
    /// Contractible.
    Point,
    /// On (or within tolerance of) a curve, or beyond the `ℓ` cap.
    Boundary,
}

impl RegionLabel {
    pub fn name(&self) -> &'static str {
        match self {
            RegionLabel::Empty => "empty",
            RegionLabel::Sphere(_) => "sphere",
            RegionLabel::Point => "point",
            RegionLabel::Boundary => "boundary",
        }
    }

    pub fn ell(&self) -> Option<u32> {
        match self {
            RegionLabel::Sphere(l) => Some(*l),
            _ => None,
        }
    }
}

/// Settings shared by both classification paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classifier {
    pub ell_max: u32,
    pub tol: f64,
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier { ell_max: DEFAULT_ELL_MAX, tol: DEFAULT_TOL }
    }
}

/// `ρ_ℓ(s)`; `ρ_0` does not exist.
pub fn rho(ell: SphereIndex, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(domain(format!("scale must be positive, got {s}")));
    }
    match ell {
        SphereIndex::Finite(0) => Err(domain("rho is undefined for ell = 0")),
        SphereIndex::Finite(l) => {
            let l = f64::from(l);
            Ok(s / (2.0 * (PI * l / (2.0 * l + 1.0)).sin()))
        }
        SphereIndex::Infinite => Ok(s / 2.0),
    }
}

/// Geodesic scale on a circle of radius `r`, as a fraction of its circumference.
pub fn geodesic_ratio(r: f64, s: f64) -> f64 {
    (s / (2.0 * r)).min(1.0).asin() / PI
}

fn lower_threshold(ell: u64) -> f64 {
    ell as f64 / (2 * ell + 1) as f64
}

/// Homotopy type of the Euclidean Rips complex of the circle of radius `r`
/// at scale `s` (strict `<` on distances).
pub fn circle_vr_homotopy_type(r: f64, s: f64, ell_max: u32) -> RegionLabel {
    if 2.0 * r < s {
        return RegionLabel::Point;
    }
    let ratio = geodesic_ratio(r, s);
    if ratio >= 0.5 {
        return RegionLabel::Boundary;
    }
    // smallest ℓ with ratio ≤ (ℓ+1)/(2ℓ+3)
    let cap = u64::from(ell_max) + 2;
    let guess = ((3.0 * ratio - 1.0) / (1.0 - 2.0 * ratio)).ceil().max(0.0);
    let mut ell = if guess >= cap as f64 { cap } else { guess as u64 };
    while ell > 0 && ratio <= lower_threshold(ell) {
        ell -= 1;
    }
    while ell <= cap && ratio > lower_threshold(ell + 1) {
        ell += 1;
    }
    if ell > u64::from(ell_max) {
        RegionLabel::Boundary
    } else {
        RegionLabel::Sphere(ell as u32)
    }
}

/// `φ_ℓ(s)` (or its punctured variant when `w = 0`).
pub fn phi(model: &AnnulusModel, ell: SphereIndex, s: f64) -> Result<f64> {
    let profile = model.profile(s)?;
    let peak = profile.peak()?;
    phi_with_peak(&profile, &peak, ell)
}

fn phi_with_peak(profile: &BallMeasureProfile, peak: &PeakLocus, ell: SphereIndex) -> Result<f64> {
    if ell == SphereIndex::Finite(0) {
        return Ok(peak.peak);
    }
    let r = rho(ell, profile.s)?;
    let model = &profile.model;
    if model.is_punctured() && r <= model.inner_radius {
        return Ok(0.0);
    }
    profile.nu(r.min(peak.omega))
}

/// All curves at one Rips radius: `φ_0 … φ_{ell_max+1}` and `φ_∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleCurves {
    pub s: f64,
    pub peak: PeakLocus,
    pub finite: Vec<f64>,
    pub infinite: f64,
}

impl ScaleCurves {
    pub fn new(model: &AnnulusModel, s: f64, ell_max: u32) -> Result<Self> {
        let profile = model.profile(s)?;
        let peak = profile.peak()?;
        let finite = (0..=ell_max + 1)
            .map(|l| phi_with_peak(&profile, &peak, SphereIndex::Finite(l)))
            .collect::<Result<Vec<_>>>()?;
        let infinite = phi_with_peak(&profile, &peak, SphereIndex::Infinite)?;
        Ok(ScaleCurves { s, peak, finite, infinite })
    }

    pub fn ell_max(&self) -> u32 {
        (self.finite.len() - 2) as u32
    }

    pub fn phi(&self, ell: SphereIndex) -> Option<f64> {
        match ell {
            SphereIndex::Finite(l) => self.finite.get(l as usize).copied(),
            SphereIndex::Infinite => Some(self.infinite),
        }
    }

    /// Classifies `k` against the curves, leaving a band of width `tol`
    /// around each curve unclassified.
    pub fn classify(&self, k: f64, tol: f64) -> RegionLabel {
        if k > self.finite[0] + tol {
            return RegionLabel::Empty;
        }
        if k >= self.finite[0] - tol {
            return RegionLabel::Boundary;
        }
        // invariant: k < φ_{ℓ-1} − tol
        for (ell, &phi) in self.finite.iter().enumerate().skip(1) {
            if k > phi + tol {
                return RegionLabel::Sphere(ell as u32 - 1);
            }
            if k >= phi - tol {
                return RegionLabel::Boundary;
            }
        }
        if k < self.infinite - tol {
            RegionLabel::Point
        } else {
            RegionLabel::Boundary
        }
    }

    /// The pair of curves enclosing `k`, as `(upper, lower)` labels.
    pub fn bracket(&self, k: f64) -> (Option<(SphereIndex, f64)>, Option<(SphereIndex, f64)>) {
        let mut upper = None;
        let all = self
            .finite
            .iter()
            .enumerate()
            .map(|(l, &v)| (SphereIndex::Finite(l as u32), v))
            .chain(std::iter::once((SphereIndex::Infinite, self.infinite)));
        for (ell, v) in all {
            if v >= k {
                upper = Some((ell, v));
            } else {
                return (upper, Some((ell, v)));
            }
        }
        (upper, None)
    }
}

/// Curve-based classification of `DR(A)(s, k)`.
pub fn classify(model: &AnnulusModel, s: f64, k: f64, cfg: &Classifier) -> Result<RegionLabel> {
    Ok(ScaleCurves::new(model, s, cfg.ell_max)?.classify(k, cfg.tol))
}

/// Result of classifying through the inner radius of the superlevel annulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusClassification {
    pub label: RegionLabel,
    pub inner_radius: Option<f64>,
}

/// Classification through the superlevel inner radius `P` and the circle lookup.
pub fn classify_via_radius(
    model: &AnnulusModel,
    s: f64,
    k: f64,
    ell_max: u32,
) -> Result<RadiusClassification> {
    let profile = model.profile(s)?;
    let peak = profile.peak()?;
    classify_via_radius_with_peak(&profile, &peak, k, ell_max)
}

pub fn classify_via_radius_with_peak(
    profile: &BallMeasureProfile,
    peak: &PeakLocus,
    k: f64,
    ell_max: u32,
) -> Result<RadiusClassification> {
    let p = profile.superlevel_inner_radius(peak, k)?;
    let label = match p {
        None => RegionLabel::Empty,
        Some(p) => circle_vr_homotopy_type(p, profile.s, ell_max),
    };
    Ok(RadiusClassification { label, inner_radius: p })
}

/// Curve values over an `s` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    pub model: AnnulusModel,
    pub s_grid: Vec<f64>,
    pub ells: Vec<SphereIndex>,
    /// `values[i][j]` is `φ_{ells[i]}(s_grid[j])`.
    pub values: Vec<Vec<f64>>,
}

impl CurveTable {
    pub fn build(model: &AnnulusModel, s_grid: &[f64], ells: &[SphereIndex]) -> Result<Self> {
        let columns = s_grid
            .par_iter()
            .map(|&s| {
                let profile = model.profile(s)?;
                let peak = profile.peak()?;
                ells.iter()
                    .map(|&ell| phi_with_peak(&profile, &peak, ell))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let values = (0..ells.len())
            .map(|i| columns.iter().map(|col| col[i]).collect())
            .collect();
        Ok(CurveTable {
            model: *model,
            s_grid: s_grid.to_vec(),
            ells: ells.to_vec(),
            values,
        })
    }
}

impl Serialize for SphereIndex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SphereIndex::Finite(l) => serializer.serialize_u32(*l),
            SphereIndex::Infinite => serializer.serialize_str("inf"),
        }
    }
}
