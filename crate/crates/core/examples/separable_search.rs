//! Random search for the closest product state, against the concurrence bound.

use xxzgeom::dynamics::propagate_analytic;
use xxzgeom::entanglement::concurrence_wootters;
use xxzgeom::geometry::{fidelity_of_separability, separable_fidelity_search};
use xxzgeom::model::t_of_eta;
use xxzgeom::{DensityMatrix, ModelParams};

fn main() -> xxzgeom::Result<()> {
    let p = ModelParams::new(0.3, 1.0, 0.5, 0.1)?;
    for eta in [0.2, 0.6, 1.5, 3.0] {
        let d = propagate_analytic(&p, &DensityMatrix::initial(), t_of_eta(&p, eta)?)?;
        let c = concurrence_wootters(&d)?.value.clamp(0.0, 1.0);
        let bound = fidelity_of_separability(c)?;
        let found = separable_fidelity_search(&d, 2000, 11)?;
        println!("eta={eta:<4} C={c:.4} bound={bound:.6} found={found:.6}");
    }
    Ok(())
}
