mod common;

use dra_core::{AnnulusModel, PeakRegime};
use proptest::prelude::*;
use rand::Rng;

fn empirical_nu(points: &[[f64; 2]], s: f64, c: f64) -> f64 {
    let hits = points
        .iter()
        .filter(|p| (p[0] - c) * (p[0] - c) + p[1] * p[1] < s * s)
        .count();
    hits as f64 / points.len() as f64
}

#[test]
fn monte_carlo_ball_measure() {
    for (m_idx, model) in common::reference_models().iter().enumerate() {
        let n = 400_000;
        let points = common::rejection_sample(model, n, 11 + m_idx as u64);
        let mut g = common::rng(23 + m_idx as u64);
        let (lo, hi) = model.domain();
        for _ in 0..20 {
            let s = g.gen_range(0.01..1.0);
            let c = g.gen_range(lo..hi);
            let exact = model.nu(s, c).unwrap();
            let est = empirical_nu(&points, s, c);
            let sigma = (exact * (1.0 - exact) / n as f64).sqrt();
            assert!(
                (exact - est).abs() <= 4.0 * sigma + 1e-12,
                "w = {}, s = {s}, c = {c}: {exact} vs {est} (σ = {sigma})",
                model.inner_mass
            );
        }
    }
}

#[test]
fn full_mass_once_the_ball_covers_the_disc() {
    for model in common::reference_models() {
        let q = model.outer_radius;
        let (lo, hi) = model.domain();
        for c in common::linspace(lo, hi, 11) {
            assert!((model.nu(2.0 * q, c).unwrap() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn unimodal_on_a_dense_grid() {
    for model in common::reference_models() {
        let (lo, hi) = model.domain();
        for s in [0.01, 0.03, 0.05, 0.07, 0.1, 0.2, 0.3, 0.45, 0.6, 0.9] {
            let peak = model.omega(s).unwrap();
            let values: Vec<(f64, f64)> = common::linspace(lo, hi, 1000)
                .into_iter()
                .map(|c| (c, model.nu(s, c).unwrap()))
                .collect();
            for w in values.windows(2) {
                let ((c0, v0), (c1, v1)) = (w[0], w[1]);
                if c1 <= peak.omega {
                    assert!(v1 >= v0 - 1e-12, "s = {s}: falls before ω at c = {c0}");
                } else if c0 >= peak.omega {
                    assert!(v1 <= v0 + 1e-12, "s = {s}: rises after ω at c = {c0}");
                }
            }
            let best = values.iter().map(|v| v.1).fold(f64::MIN, f64::max);
            assert!(peak.peak >= best - 1e-12, "s = {s}: grid max {best} above peak {}", peak.peak);
        }
    }
}

#[test]
fn punctured_peak_matches_grid_search() {
    let model = AnnulusModel::new(0.4, 0.5, 0.0).unwrap();
    let (r, q) = (model.inner_radius, model.outer_radius);
    for s in common::linspace(0.01, 0.6, 40) {
        let peak = model.omega(s).unwrap();
        let grid = common::linspace(r, q, 100_001);
        let (arg, best) = grid
            .iter()
            .map(|&c| (c, model.nu(s, c).unwrap()))
            .fold((f64::NAN, f64::MIN), |acc, v| if v.1 > acc.1 { v } else { acc });
        assert!((peak.peak - best).abs() < 1e-9, "s = {s}");
        if peak.regime == PeakRegime::MiddleS {
            let root = peak.unclamped_root.unwrap();
            assert!((root * root + s * s - 0.5 * (r * r + q * q)).abs() < 1e-9);
            // the plateau of ν may be flat to rounding, so compare loosely
            assert!((arg - peak.omega).abs() < 1e-2, "s = {s}: grid {arg} vs ω {}", peak.omega);
        }
    }
}

#[test]
fn peak_regimes() {
    for model in common::reference_models() {
        let (r, q) = (model.inner_radius, model.outer_radius);
        for s in common::linspace(1e-3, (q - r) / 2.0, 20) {
            let p = model.omega(s).unwrap();
            assert_eq!(p.regime, PeakRegime::SmallS);
            assert_eq!(p.omega, r + s);
        }
        for s in common::linspace((q + r) / 2.0, 2.0 * q, 20) {
            let p = model.omega(s).unwrap();
            assert_eq!(p.regime, PeakRegime::LargeS);
            assert_eq!(p.omega, model.domain().0);
        }
        for s in common::linspace((q - r) / 2.0 + 1e-3, (q + r) / 2.0 - 1e-3, 40) {
            let p = model.omega(s).unwrap();
            assert_eq!(p.regime, PeakRegime::MiddleS);
            if !model.is_punctured() {
                let res = model.profile(s).unwrap().peak_equation_residual(p.omega).unwrap();
                assert!(res.abs() < 1e-10, "s = {s}: residual {res}");
            }
        }
    }
}

#[test]
fn superlevel_radius_solves_the_level_equation() {
    for model in common::reference_models() {
        for s in [0.02, 0.08, 0.15, 0.3] {
            let peak = model.omega(s).unwrap();
            let profile = model.profile(s).unwrap();
            for frac in [0.1, 0.5, 0.9, 0.999] {
                let k = frac * peak.peak;
                let p = profile.superlevel_inner_radius(&peak, k).unwrap().unwrap();
                assert!(p <= peak.omega);
                assert!(profile.nu(p).unwrap() >= k - 1e-12);
                let lo = model.domain().0;
                if p > lo + 1e-9 {
                    assert!(profile.nu(p - 1e-9).unwrap() < k + 1e-9);
                }
            }
            assert_eq!(profile.superlevel_inner_radius(&peak, peak.peak * 1.01).unwrap(), None);
        }
    }
}

proptest! {
    #[test]
    fn measure_stays_in_unit_interval(s in 1e-3f64..1.2, t in 0.0f64..=1.0, w in 0.0f64..0.3) {
        let model = AnnulusModel::new(0.4, 0.5, w).unwrap();
        let (lo, hi) = model.domain();
        let v = model.nu(s, lo + t * (hi - lo)).unwrap();
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn measure_grows_with_radius(s in 1e-3f64..1.0, ds in 0.0f64..0.2, t in 0.0f64..=1.0) {
        for model in common::reference_models() {
            let (lo, hi) = model.domain();
            let c = lo + t * (hi - lo);
            prop_assert!(model.nu(s + ds, c).unwrap() >= model.nu(s, c).unwrap() - 1e-12);
        }
    }

    #[test]
    fn peak_grows_with_radius(s in 1e-3f64..1.0, ds in 0.0f64..0.2) {
        for model in common::reference_models() {
            prop_assert!(model.omega(s + ds).unwrap().peak >= model.omega(s).unwrap().peak - 1e-12);
        }
    }
}
