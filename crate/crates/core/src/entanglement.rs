//! Wootters concurrence for two qubits.

use crate::dynamics::DensityMatrix;
use crate::error::Result;
use crate::linalg::{kron, singular_values, sqrt_psd, CMat};
use crate::model::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceBreakdown {
    /// Square roots of the spin-flip spectrum, descending.
    pub lambdas: [f64; 4],
    pub value: f64,
}

fn sigma_yy() -> CMat {
    kron(&CMat::pauli_y(), &CMat::pauli_y()).expect("2x2 ⊗ 2x2")
}

/// `T = D (σy⊗σy) D* (σy⊗σy)`. Not Hermitian in general.
pub fn spin_flip(d: &DensityMatrix) -> CMat {
    let yy = sigma_yy();
    *d.mat() * yy * d.mat().conj() * yy
}

/// Concurrence `max(0, λ1 − λ2 − λ3 − λ4)`.
///
/// The λ² are the eigenvalues of `R = √D (σy⊗σy) D* (σy⊗σy) √D`, which is
/// isospectral with [`spin_flip`]. Since `R = A A†` with
/// `A = √D (σy⊗σy) conj(√D)`, the λ are taken directly as the singular
/// values of `A`.
pub fn concurrence_wootters(d: &DensityMatrix) -> Result<ConcurrenceBreakdown> {
    let root = sqrt_psd(d.mat())?;
    let a = root * sigma_yy() * root.conj();
    let mut lambdas = [0.0; 4];
    for (k, v) in singular_values(&a).into_iter().enumerate() {
        lambdas[k] = v;
    }
    let value = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
    Ok(ConcurrenceBreakdown { lambdas, value })
}

/// `C = e^{-4αJη} |sin 2η|` for the standard initial state.
pub fn concurrence_closed_form(p: &ModelParams, eta: f64) -> f64 {
    (-4.0 * p.noise_alpha * p.coupling_j * eta).exp() * (2.0 * eta).sin().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::evolved_state_closed_form;
    use num_complex::Complex64 as C64;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn bell() -> DensityMatrix {
        let z = C64::new(0.0, 0.0);
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        DensityMatrix::pure(&[z, h, h, z]).unwrap()
    }

    #[test]
    fn spin_flip_of_maximally_mixed() {
        let t = spin_flip(&DensityMatrix::maximally_mixed());
        assert!(t.max_abs_diff(&(CMat::identity(4) * (1.0 / 16.0))) < 1e-16);
    }

    #[test]
    fn spin_flip_of_bell_is_its_projector() {
        // entrywise: the Bell projector has 1/2 on the four central entries
        let mut expect = CMat::zeros(4);
        for i in 1..=2 {
            for j in 1..=2 {
                expect.set(i, j, C64::new(0.5, 0.0));
            }
        }
        assert!(spin_flip(&bell()).max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn spin_flip_of_product_vanishes() {
        // σy⊗σy maps |↓↑⟩ to |↑↓⟩, orthogonal to the support
        assert!(spin_flip(&DensityMatrix::initial()).max_abs() < 1e-16);
    }

    #[test]
    fn wootters_reference_states() {
        let c = concurrence_wootters(&bell()).unwrap();
        assert!((c.value - 1.0).abs() < 1e-12);
        assert_eq!(
            concurrence_wootters(&DensityMatrix::initial())
                .unwrap()
                .value,
            0.0
        );
        assert!(
            concurrence_wootters(&DensityMatrix::maximally_mixed())
                .unwrap()
                .value
                .abs()
                < 1e-15
        );

        let p = ModelParams::new(0.3, 1.0, 0.5, 0.1).unwrap();
        let c = concurrence_wootters(&evolved_state_closed_form(&p, 1.0)).unwrap();
        // e^{-0.12} |sin 2|
        assert!((c.value - 0.806_474_470_906_021_2).abs() < 1e-10);
        assert!(c.lambdas.windows(2).all(|w| w[0] >= w[1]));
        assert!(c.lambdas.iter().all(|&l| l >= 0.0));
    }

    #[test]
    fn closed_form_cases() {
        let pure = ModelParams::new(0.3, 0.0, 0.0, 0.0).unwrap();
        assert!((concurrence_closed_form(&pure, FRAC_PI_4) - 1.0).abs() < 1e-15);
        let noisy = ModelParams::new(0.3, 0.0, 0.0, 0.1).unwrap();
        assert!(concurrence_closed_form(&noisy, FRAC_PI_2) < 1e-15);
        assert!(
            (concurrence_closed_form(&noisy, FRAC_PI_4) - 0.910_057_240_676_024_8).abs() < 1e-12
        );
    }
}
