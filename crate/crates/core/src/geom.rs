//! Intersections of an origin-centred disc with an offset disc.
//!
//! Throughout, `B(O, R)` is the disc of radius `R` at the origin and
//! `B((c, 0), s)` the disc of radius `s` whose centre sits at distance `c`
//! along the positive x-axis. Rotational symmetry reduces every two-disc
//! configuration used by the annulus model to this one.
//!
//! ## Case grid
//!
//! In the `(c, s)` plane five curves separate the ways the two boundary
//! circles can meet:
//!
//! ```text
//! (1) c + s = R      ball touches the disc boundary from inside
//! (2) s - c = R      disc touches the ball boundary from inside
//! (3) c - s = R      external tangency
//! (4) c² + s² = R²   ball centre lies on the common chord
//! (5) s² - c² = R²   origin lies on the common chord
//! ```
//!
//! Outside the wedge bounded by (1), (2), (3) the circles do not cross and
//! the area is `0`, `πs²` or `πR²`. Inside it they cross in two points on the
//! vertical chord `x = x_R(c) = (c² + R² − s²) / 2c`, and
//!
//! ```text
//! area = |B(O, R) ∩ {x ≥ x_R}| + |B((c,0), s) ∩ {x ≤ x_R}|
//! ```
//!
//! Each term is a circular segment cut off at distance `h` from its centre,
//! `seg(r, h) = r²·acos(h/r) − h·√(r² − h²)`, or the complement
//! `πr² − seg(r, h)` when the centre lies on the kept side of the chord:
//!
//! | case                          | disc term            | ball term                |
//! |-------------------------------|----------------------|--------------------------|
//! | centre right, origin left     | `seg(R, x)`          | `seg(s, c − x)`          |
//! | centre right, origin right    | `πR² − seg(R, −x)`   | `seg(s, c − x)`          |
//! | centre left,  origin left     | `seg(R, x)`          | `πs² − seg(s, x − c)`    |
//! | centre left,  origin right    | `πR² − seg(R, −x)`   | `πs² − seg(s, x − c)`    |
//!
//! "Centre right" means `c ≥ x_R`, i.e. `(c, s)` is on or outside curve (4);
//! "origin left" means `x_R ≥ 0`, i.e. `(c, s)` is on or right of curve (5).
//! Points on a curve are dispatched to the closed side named here; both
//! formulas agree there since `seg(r, 0) = πr²/2`. The last row is empty for
//! `c > 0` (curves (4) and (5) only meet at `c = 0`).
//!
//! The derivative of the area in `c` is `−2·y(c)` where `y(c)` is the half
//! length of the common chord.

use std::f64::consts::PI;

use crate::error::{domain, inconsistency, Result};

/// Offsets below this are treated as concentric discs.
pub const CONCENTRIC_EPS: f64 = 1e-12;

/// Arguments of `√` and `acos` may leave their domain by at most this much
/// before being reported as an internal inconsistency.
pub const CLAMP_TOL: f64 = 1e-9;

/// Tolerance for the debug-build agreement of adjacent case formulas.
const ADJACENT_AGREEMENT_TOL: f64 = 1e-9;

/// Radii and centre offset of the two discs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePair {
    /// Radius `R` of the disc centred at the origin.
    pub disc_radius: f64,
    /// Radius `s` of the offset disc.
    pub ball_radius: f64,
    /// Distance `c` of the offset centre from the origin.
    pub offset: f64,
}

impl CirclePair {
    pub fn new(disc_radius: f64, ball_radius: f64, offset: f64) -> Result<Self> {
        if !(disc_radius > 0.0 && disc_radius.is_finite()) {
            return Err(domain(format!("disc radius must be positive, got {disc_radius}")));
        }
        if !(ball_radius > 0.0 && ball_radius.is_finite()) {
            return Err(domain(format!("ball radius must be positive, got {ball_radius}")));
        }
        if !(offset >= 0.0 && offset.is_finite()) {
            return Err(domain(format!("offset must be non-negative, got {offset}")));
        }
        Ok(CirclePair { disc_radius, ball_radius, offset })
    }

    /// Abscissa of the common chord, `(c² + R² − s²) / 2c`.
    ///
    /// Written as `c/2 + (R − s)(R + s)/2c` so that nearly equal radii do not
    /// lose precision to cancellation.
    fn chord_abscissa(&self) -> f64 {
        let (r, s, c) = (self.disc_radius, self.ball_radius, self.offset);
        0.5 * c + (r - s) * (r + s) / (2.0 * c)
    }
}

/// Position of the pair in the case grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LensCase {
    /// `c ≥ R + s`: the discs do not overlap.
    Disjoint,
    /// `c + s ≤ R`: the offset ball lies inside the disc.
    SmallBallInside,
    /// `s − c ≥ R`: the disc lies inside the offset ball.
    DiscInsideBall,
    /// Unreachable for `c > 0`; listed to complete the grid.
    TwoPointsCentreLeftOriginRight,
    TwoPointsCentreRightOriginRight,
    TwoPointsCentreLeftOriginLeft,
    TwoPointsCentreRightOriginLeft,
}

impl LensCase {
    pub fn circles_cross(self) -> bool {
        !matches!(self, LensCase::Disjoint | LensCase::SmallBallInside | LensCase::DiscInsideBall)
    }

    fn centre_right(self) -> bool {
        matches!(
            self,
            LensCase::TwoPointsCentreRightOriginLeft | LensCase::TwoPointsCentreRightOriginRight
        )
    }

    fn origin_left(self) -> bool {
        matches!(
            self,
            LensCase::TwoPointsCentreRightOriginLeft | LensCase::TwoPointsCentreLeftOriginLeft
        )
    }

    fn crossing(centre_right: bool, origin_left: bool) -> Self {
        match (centre_right, origin_left) {
            (true, true) => LensCase::TwoPointsCentreRightOriginLeft,
            (true, false) => LensCase::TwoPointsCentreRightOriginRight,
            (false, true) => LensCase::TwoPointsCentreLeftOriginLeft,
            (false, false) => LensCase::TwoPointsCentreLeftOriginRight,
        }
    }
}

pub fn classify_lens(pair: &CirclePair) -> LensCase {
    let (r, s, c) = (pair.disc_radius, pair.ball_radius, pair.offset);
    if c < CONCENTRIC_EPS {
        return if s <= r { LensCase::SmallBallInside } else { LensCase::DiscInsideBall };
    }
    if c >= r + s {
        LensCase::Disjoint
    } else if c + s <= r {
        LensCase::SmallBallInside
    } else if s - c >= r {
        LensCase::DiscInsideBall
    } else {
        let centre_right = c * c + s * s >= r * r;
        let origin_left = s * s - c * c <= r * r;
        LensCase::crossing(centre_right, origin_left)
    }
}

/// Clamps `v` into `[lo, hi]` if it is within [`CLAMP_TOL`] of the interval.
fn clamp_checked(v: f64, lo: f64, hi: f64, what: &str) -> Result<f64> {
    if v < lo - CLAMP_TOL || v > hi + CLAMP_TOL || v.is_nan() {
        return Err(inconsistency(format!("{what} = {v} outside [{lo}, {hi}]")));
    }
    Ok(v.clamp(lo, hi))
}

/// Area of the part of a disc of radius `r` beyond a chord at distance
/// `h ∈ [0, r]` from its centre.
fn segment(r: f64, h: f64) -> Result<f64> {
    let t = clamp_checked(h / r, -1.0, 1.0, "segment cosine")?;
    let h = t * r;
    let sin = clamp_checked(1.0 - t * t, 0.0, 1.0, "segment sine²")?.sqrt();
    Ok(r * r * t.acos() - h * r * sin)
}

/// Area of the part of a disc of radius `r` on one side of a chord at signed
/// distance `h` (positive when the centre is on the other side).
fn cap(r: f64, h: f64, centre_excluded: bool) -> Result<f64> {
    if centre_excluded {
        segment(r, h)
    } else {
        Ok(PI * r * r - segment(r, -h)?)
    }
}

fn crossing_area(pair: &CirclePair, case: LensCase) -> Result<f64> {
    let (r, s, c) = (pair.disc_radius, pair.ball_radius, pair.offset);
    let x = pair.chord_abscissa();
    let disc_part = cap(r, x, case.origin_left())?;
    let ball_part = cap(s, c - x, case.centre_right())?;
    Ok(disc_part + ball_part)
}

/// Area `α_R(c)` of `B(O, R) ∩ B((c, 0), s)`.
pub fn lens_area(pair: &CirclePair) -> Result<f64> {
    let (r, s) = (pair.disc_radius, pair.ball_radius);
    let case = classify_lens(pair);
    let area = match case {
        LensCase::Disjoint => 0.0,
        LensCase::SmallBallInside => PI * s * s,
        LensCase::DiscInsideBall => PI * r * r,
        _ => {
            let area = crossing_area(pair, case)?;
            if cfg!(debug_assertions) {
                check_adjacent_formulas(pair, case, area)?;
            }
            area
        }
    };
    let cap = PI * r.min(s).powi(2);
    Ok(area.clamp(0.0, cap))
}

/// On curves (4) and (5) both neighbouring formulas apply; they must agree.
fn check_adjacent_formulas(pair: &CirclePair, case: LensCase, area: f64) -> Result<()> {
    let (r, s, c) = (pair.disc_radius, pair.ball_radius, pair.offset);
    let on_centre_curve = c * c + s * s == r * r;
    let on_origin_curve = s * s - c * c == r * r;
    let mut alternatives = Vec::new();
    if on_centre_curve {
        alternatives.push(LensCase::crossing(!case.centre_right(), case.origin_left()));
    }
    if on_origin_curve {
        alternatives.push(LensCase::crossing(case.centre_right(), !case.origin_left()));
    }
    for alt in alternatives {
        let other = crossing_area(pair, alt)?;
        if (other - area).abs() >= ADJACENT_AGREEMENT_TOL {
            return Err(inconsistency(format!(
                "adjacent formulas disagree at {pair:?}: {area} vs {other}"
            )));
        }
    }
    Ok(())
}

/// Half-length `y(c)` of the common chord, or `0` when the circles do not
/// meet.
///
/// For concentric circles of equal radius the circles coincide and the
/// maximal height is the radius itself.
pub fn chord_half_height(pair: &CirclePair) -> Result<f64> {
    let (r, s, c) = (pair.disc_radius, pair.ball_radius, pair.offset);
    if c < CONCENTRIC_EPS {
        return Ok(if r == s { r } else { 0.0 });
    }
    if !classify_lens(pair).circles_cross() {
        return Ok(0.0);
    }
    let x = pair.chord_abscissa();
    let h2 = clamp_checked(r * r - x * x, 0.0, f64::INFINITY, "chord height²")?;
    Ok(h2.sqrt())
}

/// `∂α/∂c = −2·y(c)`.
pub fn lens_area_derivative(pair: &CirclePair) -> Result<f64> {
    Ok(-2.0 * chord_half_height(pair)?)
}
