//! Hilbert-Schmidt and Bures geometry of the evolving two-spin state.
//!
//! Each printed closed form lives next to a first-principles route it can be
//! checked against:
//!
//! | quantity | closed form | independent route |
//! |---|---|---|
//! | HS rate `‖dD/dt‖` | [`hs_rate_closed_form`] | [`hs_rate_numeric`] (central difference) |
//! | HS speed | [`hs_speed`] | finite difference of the HS rate in η |
//! | fidelity of separability | [`fidelity_of_separability`] | [`separable_fidelity_search`] (lower bound) |
//!
//! The printed "Hilbert-Schmidt distance" between `D(t)` and `D(t+dt)` is an
//! instantaneous rate with respect to laboratory time `t`, not a finite
//! distance; it is exposed under that name. The finite distance between two
//! states is [`hs_distance`].
//!
//! Fidelities use the squared-trace convention `F = [Tr √(√a b √a)]²`, which
//! is the one under which a separable state has fidelity of separability 1.

use std::f64::consts::SQRT_2;

use crate::dynamics::{propagate_analytic, DensityMatrix};
use crate::entanglement::concurrence_wootters;
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, hs_inner, sqrt_psd};
use crate::model::{t_of_eta, ModelParams};

pub use crate::separable::{separable_fidelity_running_max, separable_fidelity_search};

/// All per-point geometric quantities for one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometrySample {
    pub eta: f64,
    pub concurrence: f64,
    pub hs_rate: f64,
    pub hs_speed: f64,
    pub fidelity_sep: f64,
    pub bures_distance: f64,
    pub bures_speed: f64,
}

fn check_unit(x: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(Error::OutOfDomain(x))
    }
}

/// Clamps values within `1e-12` of `[0, 1]` back onto it; numerical
/// concurrences land a few ulps outside.
fn snap_unit(x: f64) -> f64 {
    if (-1e-12..0.0).contains(&x) {
        0.0
    } else if x > 1.0 && x <= 1.0 + 1e-12 {
        1.0
    } else {
        x
    }
}

/// `√Tr[(d2 − d1)²]`
pub fn hs_distance(d1: &DensityMatrix, d2: &DensityMatrix) -> f64 {
    let diff = *d2.mat() - *d1.mat();
    hs_inner(&diff, &diff).expect("4x4").re.max(0.0).sqrt()
}

fn hs_amplitude(p: &ModelParams) -> f64 {
    let j = p.coupling_j;
    let a = p.noise_alpha;
    (j * j * (4.0 * a * a * j * j + 1.0)).sqrt()
}

/// `2√2 e^{-4αJη} √(J²(4α²J² + 1))`, the HS rate with respect to `t`.
pub fn hs_rate_closed_form(p: &ModelParams, eta: f64) -> f64 {
    2.0 * SQRT_2 * (-4.0 * p.noise_alpha * p.coupling_j * eta).exp() * hs_amplitude(p)
}

/// The same rate written through the concurrence, `2√2 C / |sin 2η| · √(J²(4α²J²+1))`.
/// Undefined where `sin 2η = 0`.
pub fn hs_rate_from_concurrence(p: &ModelParams, c: f64, eta: f64) -> f64 {
    2.0 * SQRT_2 * c / (2.0 * eta).sin().abs() * hs_amplitude(p)
}

/// `‖D(t+δ) − D(t−δ)‖_HS / 2δ` from the analytic propagator; a second-order
/// forward difference replaces the central one when `t < δ`.
pub fn hs_rate_numeric(p: &ModelParams, eta: f64, delta_t: f64) -> Result<f64> {
    if delta_t.is_nan() || delta_t <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "delta_t must be positive, got {delta_t}"
        )));
    }
    let d0 = DensityMatrix::initial();
    let t = t_of_eta(p, eta)?;
    let at = |s: f64| propagate_analytic(p, &d0, s).map(|d| *d.mat());
    let deriv = if t >= delta_t {
        (at(t + delta_t)? - at(t - delta_t)?) * (0.5 / delta_t)
    } else {
        (at(t)? * -3.0 + at(t + delta_t)? * 4.0 - at(t + 2.0 * delta_t)?) * (0.5 / delta_t)
    };
    Ok(deriv.norm())
}

/// `|d/dη|` of the HS rate: `8√2 αJ e^{-4αJη} √(J²(4α²J²+1))`.
pub fn hs_speed(p: &ModelParams, eta: f64) -> f64 {
    8.0 * SQRT_2
        * (p.noise_alpha * p.coupling_j).abs()
        * (-4.0 * p.noise_alpha * p.coupling_j * eta).exp()
        * hs_amplitude(p)
}

/// HS speed through the concurrence, `8√2 αJ C / |sin 2η| · √(J²(4α²J²+1))`.
pub fn hs_speed_from_concurrence(p: &ModelParams, c: f64, eta: f64) -> f64 {
    8.0 * SQRT_2 * (p.noise_alpha * p.coupling_j).abs() * c / (2.0 * eta).sin().abs()
        * hs_amplitude(p)
}

/// Uhlmann fidelity `[Tr √(√a b √a)]²`.
pub fn fidelity_uhlmann(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    let ra = sqrt_psd(a.mat())?;
    let inner = (ra * *b.mat() * ra).hermitize();
    let eig = eig_hermitian(&inner)?;
    let tr: f64 = eig.values.iter().map(|&v| v.max(0.0).sqrt()).sum();
    Ok((tr * tr).min(1.0))
}

/// Maximal fidelity with the separable set, `½(1 + √(1 − C²))`.
pub fn fidelity_of_separability(c: f64) -> Result<f64> {
    let c = check_unit(c)?;
    Ok(0.5 * (1.0 + (1.0 - c * c).sqrt()))
}

/// Bures distance from a fidelity, `√(2 − 2√F)`.
pub fn bures_distance_raw(f: f64) -> Result<f64> {
    let f = check_unit(f)?;
    Ok((2.0 - 2.0 * f.sqrt()).max(0.0).sqrt())
}

/// Bures distance to the separable set, normalized to `[0, 1]`:
/// `√(2 − √(2 + 2√(1 − C²))) / √(2 − √2)`.
pub fn bures_distance_normalized(c: f64) -> Result<f64> {
    let c = check_unit(c)?;
    let inner = (2.0 + 2.0 * (1.0 - c * c).sqrt()).sqrt();
    Ok((2.0 - inner).max(0.0).sqrt() / (2.0 - SQRT_2).sqrt())
}

/// Normalized Bures distance as a function of the noise rate, via
/// `C = e^{-4αJη}|sin 2η|`.
pub fn bures_distance_from_noise(p: &ModelParams, eta: f64) -> f64 {
    let c = crate::entanglement::concurrence_closed_form(p, eta);
    bures_distance_normalized(c.min(1.0)).expect("closed-form concurrence lies in [0, 1]")
}

/// Bures speed `¼ √(1 + √(1 − C²))`, identical to `√(F/8)`.
pub fn bures_speed(c: f64) -> Result<f64> {
    let c = check_unit(c)?;
    Ok(0.25 * (1.0 + (1.0 - c * c).sqrt()).sqrt())
}

/// Bundles every geometric quantity at one trajectory point. The concurrence
/// is measured on `state`; the rates use their closed forms at `eta`.
pub fn geometry_sample(p: &ModelParams, eta: f64, state: &DensityMatrix) -> Result<GeometrySample> {
    let concurrence = snap_unit(concurrence_wootters(state)?.value);
    Ok(GeometrySample {
        eta,
        concurrence,
        hs_rate: hs_rate_closed_form(p, eta),
        hs_speed: hs_speed(p, eta),
        fidelity_sep: fidelity_of_separability(concurrence)?,
        bures_distance: bures_distance_normalized(concurrence)?,
        bures_speed: bures_speed(concurrence)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::evolved_state_closed_form;
    use crate::linalg::CMat;
    use num_complex::Complex64 as C64;

    fn params(j: f64, alpha: f64) -> ModelParams {
        ModelParams::new(j, 1.0, 0.5, alpha).unwrap()
    }

    fn basis_state(k: usize) -> DensityMatrix {
        let mut v = [C64::new(0.0, 0.0); 4];
        v[k] = C64::new(1.0, 0.0);
        DensityMatrix::pure(&v).unwrap()
    }

    #[test]
    fn hs_distance_cases() {
        let a = evolved_state_closed_form(&params(0.3, 0.1), 0.7);
        let b = evolved_state_closed_form(&params(0.3, 0.1), 2.1);
        assert_eq!(hs_distance(&a, &a), 0.0);
        assert!((hs_distance(&basis_state(0), &basis_state(3)) - SQRT_2).abs() < 1e-15);
        assert_eq!(hs_distance(&a, &b), hs_distance(&b, &a));
    }

    #[test]
    fn hs_rate_closed_form_values() {
        let p = params(0.5, 0.05);
        // 2√2 e^{-0.1} · 0.5 · √1.0025
        assert!((hs_rate_closed_form(&p, 1.0) - 1.281_231_891_548_658_7).abs() < 1e-12);
        let p0 = params(0.7, 0.0);
        for &eta in &[0.0, 1.0, 4.0] {
            assert!((hs_rate_closed_form(&p0, eta) - 2.0 * SQRT_2 * 0.7).abs() < 1e-15);
        }
        // concurrence form agrees at eta=1 with C taken from the closed form
        let c = crate::entanglement::concurrence_closed_form(&p, 1.0);
        let via_c = hs_rate_from_concurrence(&p, c, 1.0);
        assert!((via_c - hs_rate_closed_form(&p, 1.0)).abs() < 1e-14);
    }

    #[test]
    fn hs_rate_numeric_matches() {
        let p = params(0.5, 0.05);
        let num = hs_rate_numeric(&p, 1.0, 1e-6).unwrap();
        let cf = hs_rate_closed_form(&p, 1.0);
        assert!(((num - cf) / cf).abs() < 1e-6);
        // forward branch at the origin
        let num0 = hs_rate_numeric(&p, 0.0, 1e-6).unwrap();
        let cf0 = hs_rate_closed_form(&p, 0.0);
        assert!(((num0 - cf0) / cf0).abs() < 1e-6);
        assert!(hs_rate_numeric(&p, 1.0, 0.0).is_err());
    }

    #[test]
    fn hs_rate_numeric_unitary_sweeps() {
        let etas = [0.3, 1.1, 2.0, 3.3, 5.0];
        for &j in &[0.2, 0.5, 1.3] {
            let p = params(j, 0.0);
            let first = hs_rate_numeric(&p, etas[0], 1e-6).unwrap();
            for &eta in &etas {
                let r = hs_rate_numeric(&p, eta, 1e-6).unwrap();
                assert!(((r - first) / first).abs() < 1e-6);
                assert!(((r / j - 2.0 * SQRT_2) / (2.0 * SQRT_2)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn hs_speed_values() {
        let p = params(0.5, 0.05);
        assert!((hs_speed(&p, 1.0) - 0.128_123_189_154_865_9).abs() < 1e-13);
        assert_eq!(hs_speed(&params(0.5, 0.0), 2.0), 0.0);
        let h = 1e-4;
        let fd = (hs_rate_closed_form(&p, 1.0 + h) - hs_rate_closed_form(&p, 1.0 - h)) / (2.0 * h);
        assert!(((fd.abs() - hs_speed(&p, 1.0)) / hs_speed(&p, 1.0)).abs() < 1e-8);
        let c = crate::entanglement::concurrence_closed_form(&p, 1.0);
        assert!((hs_speed_from_concurrence(&p, c, 1.0) - hs_speed(&p, 1.0)).abs() < 1e-14);
    }

    #[test]
    fn uhlmann_fidelity_cases() {
        let a = evolved_state_closed_form(&params(0.3, 0.1), 0.9);
        let b = evolved_state_closed_form(&params(0.3, 0.1), 2.4);
        assert!((fidelity_uhlmann(&a, &a).unwrap() - 1.0).abs() < 1e-10);
        assert!(fidelity_uhlmann(&basis_state(1), &basis_state(2)).unwrap() < 1e-15);
        let ab = fidelity_uhlmann(&a, &b).unwrap();
        let ba = fidelity_uhlmann(&b, &a).unwrap();
        assert!((ab - ba).abs() < 1e-10);
        // pure-state check: F = |⟨ψ|φ⟩|²
        let m = DensityMatrix::maximally_mixed();
        assert!((fidelity_uhlmann(&m, &basis_state(0)).unwrap() - 0.25).abs() < 1e-12);
        let _ = CMat::zeros(4);
    }

    #[test]
    fn fidelity_of_separability_values() {
        assert_eq!(fidelity_of_separability(0.0).unwrap(), 1.0);
        assert_eq!(fidelity_of_separability(1.0).unwrap(), 0.5);
        let f = fidelity_of_separability(0.806475).unwrap();
        assert!((f - 0.795_634_1).abs() < 1e-6);
        assert!(fidelity_of_separability(1.2).is_err());
        assert!(fidelity_of_separability(-0.1).is_err());
    }

    #[test]
    fn bures_values() {
        assert_eq!(bures_distance_raw(1.0).unwrap(), 0.0);
        assert!((bures_distance_raw(0.0).unwrap() - SQRT_2).abs() < 1e-15);
        assert!((bures_distance_raw(0.5).unwrap() - (2.0 - SQRT_2).sqrt()).abs() < 1e-15);
        assert!((bures_distance_raw(0.5).unwrap() - 0.765_366_864_730_179_5).abs() < 1e-15);
        assert!(bures_distance_raw(1.5).is_err());

        assert_eq!(bures_distance_normalized(0.0).unwrap(), 0.0);
        assert!((bures_distance_normalized(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((bures_distance_normalized(0.5).unwrap() - 0.341_081_377_402_108_8).abs() < 1e-12);
        assert!(bures_distance_normalized(f64::NAN).is_err());
    }

    #[test]
    fn bures_speed_values() {
        assert!((bures_speed(0.0).unwrap() - SQRT_2 / 4.0).abs() < 1e-16);
        assert_eq!(bures_speed(1.0).unwrap(), 0.25);
        let v = bures_speed(0.806475).unwrap();
        assert!((v - 0.315_363_7).abs() < 1e-6);
        let f = fidelity_of_separability(0.806475).unwrap();
        assert!((v - (f / 8.0).sqrt()).abs() < 1e-16);
    }

    #[test]
    fn sample_bundle() {
        let p = params(0.3, 0.1);
        let s = geometry_sample(&p, 1.0, &evolved_state_closed_form(&p, 1.0)).unwrap();
        assert!((s.concurrence - 0.806_474_470_906_021_2).abs() < 1e-10);
        assert!(s.fidelity_sep >= 0.5 && s.fidelity_sep <= 1.0);
        assert!(s.bures_speed >= 0.25 && s.bures_speed <= SQRT_2 / 4.0);
        assert!((s.hs_speed - 4.0 * 0.1 * 0.3 * s.hs_rate).abs() < 1e-14);
    }
}
