//! Seeded search over separable states for the largest Uhlmann fidelity with
//! a given state. Any separable state gives a lower bound on the fidelity of
//! separability, so the search can only under-estimate it.
//!
//! Sample `k` is a convex mixture of one to four random product states (each
//! qubit uniform on its Bloch sphere, flat simplex weights) followed by a
//! short seeded hill-climb in the mixture parameters. Sample `k` draws from
//! its own ChaCha stream, so results are independent of thread count and the
//! running maximum is monotone in the number of samples.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dynamics::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, inner, CMat};

const MAX_COMPONENTS: usize = 4;
const REFINE_STEPS: usize = 256;
const SUPPORT_TOL: f64 = 1e-14;

/// Fidelity against a fixed state, restricted to that state's support:
/// `√D σ √D` has the same nonzero spectrum as `Λ^{½} V† σ V Λ^{½}` where
/// `V` holds the eigenvectors with nonzero weight.
struct FidelityProbe {
    roots: Vec<f64>,
    vecs: Vec<Vec<C64>>,
}

#[derive(Clone, Copy)]
struct Component {
    theta_a: f64,
    phi_a: f64,
    theta_b: f64,
    phi_b: f64,
    log_w: f64,
}

impl Component {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        let polar = |r: &mut ChaCha8Rng| r.gen_range(-1.0f64..=1.0).acos();
        Component {
            theta_a: polar(rng),
            phi_a: rng.gen_range(0.0..2.0 * PI),
            theta_b: polar(rng),
            phi_b: rng.gen_range(0.0..2.0 * PI),
            // -ln U is Exp(1); normalized exponentials are flat on the simplex
            log_w: (-(1.0 - rng.gen::<f64>()).ln()).ln(),
        }
    }

    fn product_state(&self) -> [C64; 4] {
        let qubit = |theta: f64, phi: f64| {
            let (s, c) = (0.5 * theta).sin_cos();
            [C64::new(c, 0.0), C64::from_polar(s, phi)]
        };
        let a = qubit(self.theta_a, self.phi_a);
        let b = qubit(self.theta_b, self.phi_b);
        [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    }

    fn perturbed(&self, rng: &mut ChaCha8Rng, step: f64) -> Self {
        let mut j = || rng.gen_range(-step..=step);
        Component {
            theta_a: self.theta_a + j(),
            phi_a: self.phi_a + j(),
            theta_b: self.theta_b + j(),
            phi_b: self.phi_b + j(),
            log_w: self.log_w + j(),
        }
    }
}

impl FidelityProbe {
    fn new(d: &DensityMatrix) -> Result<Self> {
        let eig = eig_hermitian(d.mat())?;
        let mut roots = Vec::new();
        let mut vecs = Vec::new();
        for (v, vec) in eig.values.iter().zip(eig.vectors) {
            if *v > SUPPORT_TOL {
                roots.push(v.sqrt());
                vecs.push(vec);
            }
        }
        if roots.is_empty() {
            return Err(Error::InvalidArgument("state has no support".into()));
        }
        Ok(FidelityProbe { roots, vecs })
    }

    fn fidelity(&self, mix: &[Component]) -> f64 {
        let r = self.roots.len();
        let wmax = mix
            .iter()
            .map(|c| c.log_w)
            .fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = mix.iter().map(|c| (c.log_w - wmax).exp()).collect();
        let total: f64 = weights.iter().sum();

        // amplitudes ⟨v_i|x_k⟩
        let amps: Vec<Vec<C64>> = mix
            .iter()
            .map(|c| {
                let x = c.product_state();
                self.vecs.iter().map(|v| inner(v, &x)).collect()
            })
            .collect();
        let entry = |i: usize, j: usize| -> C64 {
            let s: C64 = amps
                .iter()
                .zip(&weights)
                .map(|(a, w)| a[i] * a[j].conj() * *w)
                .sum();
            s * (self.roots[i] * self.roots[j] / total)
        };

        let trace_sqrt = match r {
            1 => entry(0, 0).re.max(0.0).sqrt(),
            2 => {
                let (a, d, b) = (entry(0, 0).re, entry(1, 1).re, entry(0, 1));
                let mean = 0.5 * (a + d);
                let half = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
                (mean + half).max(0.0).sqrt() + (mean - half).max(0.0).sqrt()
            }
            _ => {
                let m = CMat::from_fn(4, |i, j| {
                    if i < r && j < r {
                        entry(i, j)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                });
                eig_hermitian(&m.hermitize())
                    .expect("hermitized")
                    .values
                    .iter()
                    .map(|&v| v.max(0.0).sqrt())
                    .sum()
            }
        };
        (trace_sqrt * trace_sqrt).min(1.0)
    }
}

fn sample_value(probe: &FidelityProbe, seed: u64, k: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    let n = rng.gen_range(1..=MAX_COMPONENTS);
    let mut mix: Vec<Component> = (0..n).map(|_| Component::random(&mut rng)).collect();
    let mut best = probe.fidelity(&mix);
    let mut step = 0.5;
    for _ in 0..REFINE_STEPS {
        let idx = rng.gen_range(0..n);
        let old = mix[idx];
        mix[idx] = old.perturbed(&mut rng, step);
        let f = probe.fidelity(&mix);
        if f > best {
            best = f;
            step = (step * 1.5).min(1.0);
        } else {
            mix[idx] = old;
            step = (step * 0.8).max(1e-4);
        }
    }
    best
}

/// Largest fidelity between `d` and `n_samples` seeded separable states.
pub fn separable_fidelity_search(d: &DensityMatrix, n_samples: usize, seed: u64) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be >= 1".into()));
    }
    let probe = FidelityProbe::new(d)?;
    Ok((0..n_samples)
        .into_par_iter()
        .map(|k| sample_value(&probe, seed, k))
        .reduce(|| 0.0, f64::max))
}

/// Running maximum after each sample; entry `n - 1` equals
/// `separable_fidelity_search(d, n, seed)`.
pub fn separable_fidelity_running_max(
    d: &DensityMatrix,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let probe = FidelityProbe::new(d)?;
    let values: Vec<f64> = (0..n_samples)
        .into_par_iter()
        .map(|k| sample_value(&probe, seed, k))
        .collect();
    let mut best = 0.0f64;
    Ok(values
        .into_iter()
        .map(|v| {
            best = best.max(v);
            best
        })
        .collect())
}
