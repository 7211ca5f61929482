//! The weighted annulus and the measure of its balls.
//!
//! The model is the disc of radius `Q` with a two-step radial density: `a`
//! on the open inner disc of radius `R` and `b` on the closed annulus
//! `R ≤ ‖p‖ ≤ Q`, normalised so the inner disc carries mass `w`. With
//! `w = 0` the underlying space is the annulus alone and ball centres are
//! restricted to `[R, Q]`.
//!
//! For a ball `B((c, 0), s)` the measure is
//! `ν_s(c) = a·α_R(c) + b·(α_Q(c) − α_R(c))`, with `α_r` the lens area of
//! [`crate::geom`]. Its derivative in `c` is
//! `2·((b − a)·y_R(c) − b·y_Q(c))`, which is what the peak search solves.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, inconsistency, Result};
use crate::geom::{chord_half_height, lens_area, CirclePair};
use crate::roots::{bisect_predicate, bisect_root};

/// How far a centre may stray outside the profile domain before it is an
/// error rather than rounding noise.
const DOMAIN_SLACK: f64 = 1e-12;

/// Tolerance on the total mass of a model.
const MASS_TOL: f64 = 1e-12;

/// Tolerance for `ν` leaving `[0, 1]` through rounding.
const MEASURE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnulusModel {
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub inner_mass: f64,
    /// Density `a = w / πR²` on the inner disc.
    pub inner_density: f64,
    /// Density `b = (1 − w) / (πQ² − πR²)` on the annulus.
    pub annulus_density: f64,
}

impl AnnulusModel {
    pub fn new(inner_radius: f64, outer_radius: f64, inner_mass: f64) -> Result<Self> {
        let (r, q, w) = (inner_radius, outer_radius, inner_mass);
        if !(r > 0.0 && r.is_finite()) {
            return Err(domain(format!("R must be positive, got {r}")));
        }
        if !(q > r && q.is_finite()) {
            return Err(domain(format!("Q must exceed R = {r}, got {q}")));
        }
        if !((0.0..1.0).contains(&w)) {
            return Err(domain(format!("w must lie in [0, 1), got {w}")));
        }
        let a = w / (PI * r * r);
        let b = (1.0 - w) / (PI * q * q - PI * r * r);
        if a >= b {
            return Err(domain(format!(
                "not a weighted annulus: inner density {a} is not below annulus density {b}"
            )));
        }
        let total = a * PI * r * r + b * (PI * q * q - PI * r * r);
        if (total - 1.0).abs() > MASS_TOL {
            return Err(inconsistency(format!("total mass {total} differs from 1")));
        }
        Ok(AnnulusModel {
            inner_radius: r,
            outer_radius: q,
            inner_mass: w,
            inner_density: a,
            annulus_density: b,
        })
    }

    /// `true` when the inner disc carries no mass and is removed from the space.
    pub fn is_punctured(&self) -> bool {
        self.inner_mass == 0.0
    }

    /// Admissible ball centres: `[0, Q]`, or `[R, Q]` when punctured.
    pub fn domain(&self) -> (f64, f64) {
        let left = if self.is_punctured() { self.inner_radius } else { 0.0 };
        (left, self.outer_radius)
    }

    pub fn profile(&self, s: f64) -> Result<BallMeasureProfile> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(domain(format!("Rips radius must be positive, got {s}")));
        }
        Ok(BallMeasureProfile { model: *self, s })
    }

    /// `ν_s(c)`: the measure of the open ball of radius `s` centred at distance `c`.
    pub fn nu(&self, s: f64, c: f64) -> Result<f64> {
        self.profile(s)?.nu(c)
    }

    pub fn omega(&self, s: f64) -> Result<PeakLocus> {
        self.profile(s)?.peak()
    }

    pub fn superlevel_inner_radius(&self, s: f64, k: f64) -> Result<Option<f64>> {
        let profile = self.profile(s)?;
        let peak = profile.peak()?;
        profile.superlevel_inner_radius(&peak, k)
    }
}

/// Which closed form governs the peak of `ν_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeakRegime {
    /// `s ≤ (Q − R)/2`: the ball fits in the annulus; peak at `R + s`.
    SmallS,
    /// `(Q − R)/2 < s < (Q + R)/2`: peak solves `(b − a)·y_R = b·y_Q`.
    MiddleS,
    /// `s ≥ (Q + R)/2`: peak at the left end of the domain.
    LargeS,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakLocus {
    pub s: f64,
    /// Leftmost maximiser `ω(s)` within the profile domain.
    pub omega: f64,
    /// Peak value `M_s = ν_s(ω(s))`.
    pub peak: f64,
    pub regime: PeakRegime,
    /// Middle-regime root before clamping to the domain.
    pub unclamped_root: Option<f64>,
}

/// The function `c ↦ ν_s(c)` for one Rips radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallMeasureProfile {
    pub model: AnnulusModel,
    pub s: f64,
}

impl BallMeasureProfile {
    pub fn domain(&self) -> (f64, f64) {
        self.model.domain()
    }

    fn check_centre(&self, c: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        if !(c >= lo - DOMAIN_SLACK && c <= hi + DOMAIN_SLACK) {
            return Err(domain(format!("centre {c} outside [{lo}, {hi}]")));
        }
        Ok(c.clamp(lo, hi))
    }

    fn pairs(&self, c: f64) -> Result<(CirclePair, CirclePair)> {
        let m = &self.model;
        Ok((
            CirclePair::new(m.inner_radius, self.s, c)?,
            CirclePair::new(m.outer_radius, self.s, c)?,
        ))
    }

    pub fn nu(&self, c: f64) -> Result<f64> {
        let c = self.check_centre(c)?;
        let (inner, outer) = self.pairs(c)?;
        let a = self.model.inner_density;
        let b = self.model.annulus_density;
        let alpha_r = lens_area(&inner)?;
        let alpha_q = lens_area(&outer)?;
        let v = a * alpha_r + b * (alpha_q - alpha_r);
        if !(-MEASURE_SLACK..=1.0 + MEASURE_SLACK).contains(&v) {
            return Err(inconsistency(format!("ball measure {v} outside [0, 1] at c = {c}")));
        }
        Ok(v.clamp(0.0, 1.0))
    }

    /// Half the derivative of `ν_s` at `c`: `(b − a)·y_R(c) − b·y_Q(c)`.
    pub fn peak_equation_residual(&self, c: f64) -> Result<f64> {
        let (inner, outer) = self.pairs(c)?;
        let a = self.model.inner_density;
        let b = self.model.annulus_density;
        Ok((b - a) * chord_half_height(&inner)? - b * chord_half_height(&outer)?)
    }

    pub fn regime(&self) -> PeakRegime {
        let (r, q) = (self.model.inner_radius, self.model.outer_radius);
        if self.s <= 0.5 * (q - r) {
            PeakRegime::SmallS
        } else if self.s < 0.5 * (q + r) {
            PeakRegime::MiddleS
        } else {
            PeakRegime::LargeS
        }
    }

    /// Locates the leftmost maximiser of `ν_s` on the profile domain.
    ///
    /// `ν_s` is unimodal, so the three regimes have direct answers except the
    /// middle one, which is a bisection on the derivative. With `w = 0` the
    /// derivative vanishes exactly at `z = √(½(R² + Q²) − s²)`, so the bracket
    /// is widened to `[Q − s, Q]`; the root is then clamped into `[R, Q]`.
    pub fn peak(&self) -> Result<PeakLocus> {
        let (r, q) = (self.model.inner_radius, self.model.outer_radius);
        let (left, _) = self.domain();
        let s = self.s;
        let regime = self.regime();
        let (omega, unclamped_root) = match regime {
            PeakRegime::SmallS => (r + s, None),
            PeakRegime::MiddleS => {
                let lo = q - s;
                let hi = if self.model.is_punctured() {
                    q
                } else {
                    (0.5 * (r * r + q * q) - s * s).sqrt()
                };
                let root = bisect_root(lo, hi, |c| self.peak_equation_residual(c))?;
                (root.max(left), Some(root))
            }
            PeakRegime::LargeS => (left, None),
        };
        let peak = self.nu(omega)?;
        Ok(PeakLocus { s, omega, peak, regime, unclamped_root })
    }

    /// Left endpoint `P` of `{c : ν_s(c) ≥ k}`, or `None` when `k > M_s`.
    ///
    /// The returned point always satisfies `ν_s(P) ≥ k`.
    pub fn superlevel_inner_radius(&self, peak: &PeakLocus, k: f64) -> Result<Option<f64>> {
        if k.is_nan() {
            return Err(domain("threshold k is NaN"));
        }
        if k > peak.peak {
            return Ok(None);
        }
        if k == peak.peak {
            return Ok(Some(peak.omega));
        }
        let (left, _) = self.domain();
        if self.nu(left)? >= k {
            return Ok(Some(left));
        }
        let (_, hi) = bisect_predicate(left, peak.omega, |c| Ok(self.nu(c)? >= k))?;
        Ok(Some(hi))
    }
}
