//! Mixed-state geometric phase along open trajectories, with the pure-state limit.

use xxzgeom::dynamics::make_trajectory;
use xxzgeom::phase::{pure_state_phase_oracle, tong_phase, DEFAULT_EPS_P};
use xxzgeom::{Method, ModelParams};

fn main() -> xxzgeom::Result<()> {
    for alpha in [0.0, 0.05, 0.2] {
        let p = ModelParams::new(0.3, 1.0, 0.5, alpha)?;
        for eta_end in [1.0, 2.0, 4.0] {
            let traj = make_trajectory(&p, eta_end, 4001, Method::Analytic)?;
            let r = tong_phase(&traj, DEFAULT_EPS_P)?;
            let oracle = if alpha == 0.0 {
                format!(" pure={:+.6}", pure_state_phase_oracle(&p, eta_end)?)
            } else {
                String::new()
            };
            println!(
                "alpha={alpha:<5} eta={eta_end:<4} phase={:+.6} bargmann={:+.6} |sum|={:.4} converged={}{oracle}",
                r.phase, r.bargmann_phase, r.amplitude, r.converged
            );
        }
    }
    Ok(())
}
