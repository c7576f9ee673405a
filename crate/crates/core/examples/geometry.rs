//! Hilbert-Schmidt and Bures quantities at a few points of one trajectory.

use xxzgeom::dynamics::propagate_analytic;
use xxzgeom::geometry::{geometry_sample, hs_rate_numeric};
use xxzgeom::model::t_of_eta;
use xxzgeom::{DensityMatrix, ModelParams};

fn main() -> xxzgeom::Result<()> {
    let p = ModelParams::new(0.5, 1.0, 0.5, 0.05)?;
    println!("eta     C        L_HS     (numeric)  V_HS     F_sep    L_B      V_B");
    for eta in [0.3, 0.8, 1.2, 2.0, 3.0] {
        let d = propagate_analytic(&p, &DensityMatrix::initial(), t_of_eta(&p, eta)?)?;
        let s = geometry_sample(&p, eta, &d)?;
        println!(
            "{eta:<7} {:.5}  {:.5}  {:.5}    {:.5}  {:.5}  {:.5}  {:.5}",
            s.concurrence,
            s.hs_rate,
            hs_rate_numeric(&p, eta, 1e-6)?,
            s.hs_speed,
            s.fidelity_sep,
            s.bures_distance,
            s.bures_speed
        );
    }
    Ok(())
}
