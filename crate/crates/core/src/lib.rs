//! Two-spin XXZ dynamics under intrinsic (Milburn) decoherence.
//!
//! The model is `H = J(σxσx + σyσy) + γσzσz + B(σz⊗I + I⊗σz)` on the basis
//! `{|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩}`, evolved from `|↓↑⟩` under
//! `dD/dt = −i[H, D] − κ[H, [H, D]]`. On top of the dynamics the crate
//! provides Wootters concurrence, Hilbert-Schmidt and Bures geometry of the
//! trajectory, the brachistochrone construction and the kinematic geometric
//! phase, each with its closed form next to an independent numerical route.
//!
//! ```
//! use xxzgeom::{dynamics, entanglement, model::ModelParams};
//!
//! let p = ModelParams::new(0.3, 1.0, 0.5, 0.1).unwrap();
//! let d = dynamics::evolved_state_closed_form(&p, 1.0);
//! let c = entanglement::concurrence_wootters(&d).unwrap().value;
//! assert!((c - entanglement::concurrence_closed_form(&p, 1.0)).abs() < 1e-10);
//! ```

pub mod brachistochrone;
pub mod cli;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod model;
pub mod phase;
pub mod separable;

pub use dynamics::{DensityMatrix, Method, Trajectory};
pub use error::{Error, Result};
pub use model::{ModelParams, RateConvention};
