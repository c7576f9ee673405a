//! Brachistochrone construction: the HS rate at maximal entanglement divided
//! by the maximal HS speed gives `t_min = 1/(4Jα)`.
//!
//! The ratio divides a rate in `t` by a speed in `η`, so `t_min` is not a
//! dimensionally clean time. What can be checked physically is that the
//! propagated state at `t_min` matches the printed optimal state and that it
//! satisfies the master equation; both are exposed here.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use num_complex::Complex64 as C64;

use crate::dynamics::{decoherence_rate, milburn_rhs, propagate_analytic, DensityMatrix};
use crate::error::{Error, Result};
use crate::geometry::hs_speed;
use crate::linalg::CMat;
use crate::model::{build_hamiltonian, eta_of_t, ModelParams};

/// Central-difference step used for the master-equation residual.
pub const RESIDUAL_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrachistochroneResult {
    pub v_hs_max: f64,
    pub l_hs_at_c1: f64,
    pub t_min: f64,
    pub eta_at_t_min: f64,
    pub optimal_state: DensityMatrix,
    pub milburn_residual: f64,
    /// Largest closed-form HS speed found by a dense scan of `η ∈ (0, π/2]`,
    /// and where it was found.
    pub scan_sup_v_hs: f64,
    pub scan_sup_eta: f64,
}

fn amplitude(p: &ModelParams) -> f64 {
    let (j, a) = (p.coupling_j, p.noise_alpha);
    (4.0 * a * a * j * j + 1.0).sqrt()
}

/// `8J²√2 α √(4α²J² + 1)`
pub fn v_hs_max(p: &ModelParams) -> f64 {
    let j = p.coupling_j;
    8.0 * j * j * SQRT_2 * p.noise_alpha * amplitude(p)
}

/// `2J√2 √(4α²J² + 1)`
pub fn l_hs_at_c1(p: &ModelParams) -> f64 {
    2.0 * p.coupling_j * SQRT_2 * amplitude(p)
}

/// `1/(4Jα)`
pub fn t_min(p: &ModelParams) -> Result<f64> {
    if p.noise_alpha <= 0.0 {
        return Err(Error::NoFiniteOptimum);
    }
    if p.coupling_j == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    Ok(1.0 / (4.0 * p.coupling_j * p.noise_alpha))
}

/// The optimal state exactly as printed: central block
/// `½(1 + e^{-2J} cos(1/α))`, `½(1 − e^{-2J} cos(1/α))` on the diagonal and
/// `∓(i/2) e^{-2J} sin(1/α)` off it.
///
/// Its diagonal is the swap of what [`propagate_analytic`] yields at `t_min`
/// from `|↓↑⟩⟨↓↑|`; the off-diagonal agrees.
pub fn optimal_state(p: &ModelParams) -> Result<DensityMatrix> {
    if p.noise_alpha <= 0.0 {
        return Err(Error::NoFiniteOptimum);
    }
    let decay = (-2.0 * p.coupling_j).exp();
    let (s, c) = (1.0 / p.noise_alpha).sin_cos();
    let mut m = CMat::zeros(4);
    m.set(1, 1, C64::new(0.5 * (1.0 + decay * c), 0.0));
    m.set(2, 2, C64::new(0.5 * (1.0 - decay * c), 0.0));
    m.set(1, 2, C64::new(0.0, -0.5 * decay * s));
    m.set(2, 1, C64::new(0.0, 0.5 * decay * s));
    Ok(DensityMatrix::from_mat_unchecked(m))
}

/// `‖dD/dt − RHS(D)‖_HS` at time `t` along the analytic trajectory from
/// `|↓↑⟩⟨↓↑|`, with `dD/dt` by central difference.
pub fn milburn_residual(p: &ModelParams, t: f64) -> Result<f64> {
    let kappa = decoherence_rate(p)?;
    let d0 = DensityMatrix::initial();
    let at = |s: f64| propagate_analytic(p, &d0, s).map(|d| *d.mat());
    let h = RESIDUAL_STEP;
    let deriv = if t >= h {
        (at(t + h)? - at(t - h)?) * (0.5 / h)
    } else {
        (at(t)? * -3.0 + at(t + h)? * 4.0 - at(t + 2.0 * h)?) * (0.5 / h)
    };
    let rhs = milburn_rhs(&build_hamiltonian(p), kappa, &at(t)?);
    Ok((deriv - rhs).norm())
}

/// Supremum of the closed-form HS speed on a uniform grid over `(0, π/2]`.
pub fn scan_v_hs(p: &ModelParams, n: usize) -> (f64, f64) {
    (1..=n.max(1))
        .map(|k| {
            let eta = FRAC_PI_2 * k as f64 / n.max(1) as f64;
            (eta, hs_speed(p, eta))
        })
        .fold((0.0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
}

pub fn solve(p: &ModelParams) -> Result<BrachistochroneResult> {
    let t = t_min(p)?;
    let (scan_sup_eta, scan_sup_v_hs) = scan_v_hs(p, 20_000);
    Ok(BrachistochroneResult {
        v_hs_max: v_hs_max(p),
        l_hs_at_c1: l_hs_at_c1(p),
        t_min: t,
        eta_at_t_min: eta_of_t(p, t),
        optimal_state: optimal_state(p)?,
        milburn_residual: milburn_residual(p, t)?,
        scan_sup_v_hs,
        scan_sup_eta,
    })
}
