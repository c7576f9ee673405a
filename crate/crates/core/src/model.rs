//! Two-spin XXZ Hamiltonian with a uniform z-field.
//!
//! `H = J(σx⊗σx + σy⊗σy) + γ σz⊗σz + B(σz⊗1 + 1⊗σz)` in the basis
//! `{|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩}`, with ħ = 1.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::CMat;

/// How the noise rate enters the double-commutator term of the master equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RateConvention {
    /// Coefficient `α/2`; reproduces the `e^{-4αJη}` decay of the closed-form state.
    #[default]
    PaperConsistent,
    /// Coefficient `1/(2α)` exactly as the master equation is typeset.
    LiteralEq6,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub coupling_j: f64,
    pub anisotropy_gamma: f64,
    pub field_b: f64,
    pub noise_alpha: f64,
    pub convention: RateConvention,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            coupling_j: 0.3,
            anisotropy_gamma: 1.0,
            field_b: 0.5,
            noise_alpha: 0.1,
            convention: RateConvention::PaperConsistent,
        }
    }
}

impl ModelParams {
    pub fn new(
        coupling_j: f64,
        anisotropy_gamma: f64,
        field_b: f64,
        noise_alpha: f64,
    ) -> Result<Self> {
        let p = ModelParams {
            coupling_j,
            anisotropy_gamma,
            field_b,
            noise_alpha,
            convention: RateConvention::PaperConsistent,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.coupling_j,
            self.anisotropy_gamma,
            self.field_b,
            self.noise_alpha,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "model parameters must be finite".into(),
            ));
        }
        if self.noise_alpha < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "noise rate alpha must be >= 0, got {}",
                self.noise_alpha
            )));
        }
        Ok(())
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.noise_alpha = alpha;
        self
    }

    pub fn with_field(mut self, gamma: f64, b: f64) -> Self {
        self.anisotropy_gamma = gamma;
        self.field_b = b;
        self
    }

    pub fn with_convention(mut self, convention: RateConvention) -> Self {
        self.convention = convention;
        self
    }
}

/// Exact eigenpairs of the Hamiltonian, in the fixed order
/// `|↑↑⟩, (|↑↓⟩+|↓↑⟩)/√2, (|↑↓⟩−|↓↑⟩)/√2, |↓↓⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub energies: [f64; 4],
    pub states: [[C64; 4]; 4],
}

pub fn build_hamiltonian(p: &ModelParams) -> CMat {
    let (j, g, b) = (p.coupling_j, p.anisotropy_gamma, p.field_b);
    CMat::from_real_rows(
        4,
        &[
            g + 2.0 * b,
            0.0,
            0.0,
            0.0,
            0.0,
            -g,
            2.0 * j,
            0.0,
            0.0,
            2.0 * j,
            -g,
            0.0,
            0.0,
            0.0,
            0.0,
            g - 2.0 * b,
        ],
    )
    .expect("4x4 literal")
}

pub fn spectrum(p: &ModelParams) -> Spectrum {
    let (j, g, b) = (p.coupling_j, p.anisotropy_gamma, p.field_b);
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Spectrum {
        energies: [g + 2.0 * b, -g + 2.0 * j, -g - 2.0 * j, g - 2.0 * b],
        states: [[one, z, z, z], [z, h, h, z], [z, h, -h, z], [z, z, z, one]],
    }
}

/// Dimensionless time `η = 2Jt`.
pub fn eta_of_t(p: &ModelParams, t: f64) -> f64 {
    2.0 * p.coupling_j * t
}

pub fn t_of_eta(p: &ModelParams, eta: f64) -> Result<f64> {
    if p.coupling_j == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    Ok(eta / (2.0 * p.coupling_j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, kron};

    fn params(j: f64, g: f64, b: f64) -> ModelParams {
        ModelParams::new(j, g, b, 0.0).unwrap()
    }

    #[test]
    fn hamiltonian_literal_entries() {
        let h = build_hamiltonian(&params(0.3, 1.0, 0.5));
        let diag: Vec<f64> = (0..4).map(|i| h.get(i, i).re).collect();
        assert_eq!(diag, vec![2.0, -1.0, -1.0, 0.0]);
        assert_eq!(h.get(1, 2), C64::new(0.6, 0.0));
        assert_eq!(h.get(2, 1), C64::new(0.6, 0.0));
        assert_eq!(build_hamiltonian(&params(0.0, 0.0, 0.0)), CMat::zeros(4));
    }

    #[test]
    fn hamiltonian_matches_kron_assembly() {
        let (x, y, z, i2) = (
            CMat::pauli_x(),
            CMat::pauli_y(),
            CMat::pauli_z(),
            CMat::identity(2),
        );
        for &(j, g, b) in &[(1.0, 0.0, 0.0), (0.3, 1.0, 0.5), (-0.7, 2.0, -1.25)] {
            let hxx = (kron(&x, &x).unwrap() + kron(&y, &y).unwrap()) * j;
            let hz = kron(&z, &z).unwrap() * g;
            let hb = (kron(&z, &i2).unwrap() + kron(&i2, &z).unwrap()) * b;
            let built = build_hamiltonian(&params(j, g, b));
            assert!(built.max_abs_diff(&(hxx + hz + hb)) < 1e-15);
        }
    }

    #[test]
    fn spectrum_values_and_residuals() {
        let p = params(0.3, 1.0, 0.5);
        let s = spectrum(&p);
        let expect = [2.0, -0.4, -1.6, 0.0];
        for (e, x) in s.energies.iter().zip(expect) {
            assert!((e - x).abs() < 1e-15);
        }
        assert_eq!(spectrum(&params(0.0, 0.0, 0.0)).energies, [0.0; 4]);

        for &(j, g, b) in &[(0.3, 1.0, 0.5), (-1.1, 0.2, 3.0), (2.0, -2.0, 0.0)] {
            let p = params(j, g, b);
            let h = build_hamiltonian(&p);
            let s = spectrum(&p);
            for k in 0..4 {
                let hv = h.apply(&s.states[k]);
                let res: f64 = hv
                    .iter()
                    .zip(&s.states[k])
                    .map(|(a, v)| (a - v * s.energies[k]).norm())
                    .fold(0.0, f64::max);
                assert!(res <= 1e-12);
            }
            assert!(h.trace().norm() < 1e-15);
            let mut numeric = eig_hermitian(&h).unwrap().values;
            let mut exact = s.energies.to_vec();
            numeric.sort_by(f64::total_cmp);
            exact.sort_by(f64::total_cmp);
            for (a, b) in numeric.iter().zip(&exact) {
                assert!((a - b).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn eta_conversions() {
        let p = params(0.5, 0.0, 0.0);
        assert_eq!(eta_of_t(&p, 1.0), 1.0);
        let p = params(0.3, 0.0, 0.0);
        let t = t_of_eta(&p, 2.0 * std::f64::consts::PI).unwrap();
        assert!((t - 10.471975511965978).abs() < 1e-12);
        let t0 = 3.7;
        assert!((t_of_eta(&p, eta_of_t(&p, t0)).unwrap() - t0).abs() <= 1e-15 * t0);
        assert_eq!(
            t_of_eta(&params(0.0, 1.0, 1.0), 1.0),
            Err(Error::ZeroCoupling)
        );
    }

    #[test]
    fn negative_alpha_rejected() {
        assert!(ModelParams::new(0.3, 0.0, 0.0, -0.1).is_err());
    }
}
