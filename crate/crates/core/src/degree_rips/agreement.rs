//! Comparison of a sampled Hilbert grid with the analytic region diagram.
//!
//! At each scale `s` the local band width is `W(s) = φ_0(s) − φ_∞(s)`, the
//! vertical extent of the non-trivial part of the diagram. A grid point is
//! checked only if its `k` is farther than `margin · W(s)` from every curve,
//! so `margin` is a dimensionless fraction (e.g. `0.2`).

use rayon::prelude::*;
use serde::Serialize;

use super::grid::HilbertGrid;
use crate::annulus::AnnulusModel;
use crate::curves::{RegionLabel, ScaleCurves};
use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl AxisSpec {
    fn of(values: &[f64]) -> Self {
        AxisSpec {
            min: values.first().copied().unwrap_or(f64::NAN),
            max: values.last().copied().unwrap_or(f64::NAN),
            steps: values.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub s: AxisSpec,
    pub k: AxisSpec,
}

/// Agreement counts over one class of grid points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tally {
    pub n_checked: usize,
    pub n_agree: usize,
    /// `1.0` when nothing was checked.
    pub fraction: f64,
    pub vacuous: bool,
}

impl Tally {
    fn new(n_checked: usize, n_agree: usize) -> Self {
        let vacuous = n_checked == 0;
        let fraction = if vacuous { 1.0 } else { n_agree as f64 / n_checked as f64 };
        Tally { n_checked, n_agree, fraction, vacuous }
    }
}

/// `n_checked`/`n_agree`/`fraction` refer to `S¹` points with `h1 = 1`;
/// `trivial` to empty or contractible points with `h1 = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub n_checked: usize,
    pub n_agree: usize,
    pub fraction: f64,
    pub vacuous: bool,
    pub margin: f64,
    pub grid_spec: GridSpec,
    pub trivial: Tally,
}

/// Label of a grid point if it sits at least `margin · W(s)` from every curve.
pub fn interior_label(curves: &ScaleCurves, k: f64, margin: f64) -> Option<RegionLabel> {
    let width = (curves.finite[0] - curves.infinite).max(0.0);
    let clearance = margin * width;
    let near_curve = curves
        .finite
        .iter()
        .chain(std::iter::once(&curves.infinite))
        .any(|&phi| (k - phi).abs() <= clearance);
    if near_curve {
        return None;
    }
    match curves.classify(k, 0.0) {
        RegionLabel::Boundary => None,
        label => Some(label),
    }
}

pub fn region_agreement(grid: &HilbertGrid, model: &AnnulusModel, margin: f64) -> Result<AgreementReport> {
    if !(margin >= 0.0 && margin.is_finite()) {
        return Err(domain(format!("margin must be a non-negative fraction, got {margin}")));
    }
    let curves = grid
        .s_values
        .par_iter()
        .map(|&s| ScaleCurves::new(model, s, 1))
        .collect::<Result<Vec<_>>>()?;
    let (mut sphere, mut sphere_ok, mut trivial, mut trivial_ok) = (0, 0, 0, 0);
    for (si, c) in curves.iter().enumerate() {
        for (ki, &k) in grid.k_values.iter().enumerate() {
            let h1 = grid.h1[si][ki];
            match interior_label(c, k, margin) {
                Some(RegionLabel::Sphere(0)) => {
                    sphere += 1;
                    sphere_ok += usize::from(h1 == 1);
                }
                Some(RegionLabel::Empty) | Some(RegionLabel::Point) => {
                    trivial += 1;
                    trivial_ok += usize::from(h1 == 0);
                }
                _ => {}
            }
        }
    }
    let main = Tally::new(sphere, sphere_ok);
    Ok(AgreementReport {
        n_checked: main.n_checked,
        n_agree: main.n_agree,
        fraction: main.fraction,
        vacuous: main.vacuous,
        margin,
        grid_spec: GridSpec { s: AxisSpec::of(&grid.s_values), k: AxisSpec::of(&grid.k_values) },
        trivial: Tally::new(trivial, trivial_ok),
    })
}
