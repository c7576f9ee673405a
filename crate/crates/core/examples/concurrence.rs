//! Concurrence along a decohering trajectory.

use std::f64::consts::PI;

use xxzgeom::dynamics::make_trajectory;
use xxzgeom::entanglement::{concurrence_closed_form, concurrence_wootters};
use xxzgeom::{Method, ModelParams};

fn main() -> xxzgeom::Result<()> {
    for alpha in [0.0, 0.05, 0.2] {
        let p = ModelParams::new(0.3, 1.0, 0.5, alpha)?;
        let t = make_trajectory(&p, 2.0 * PI, 9, Method::Analytic)?;
        print!("alpha={alpha:<5}");
        for (&eta, d) in t.etas.iter().zip(&t.states) {
            let c = concurrence_wootters(d)?.value;
            debug_assert!((c - concurrence_closed_form(&p, eta)).abs() < 1e-10);
            print!(" {c:.3}");
        }
        println!();
    }
    Ok(())
}
