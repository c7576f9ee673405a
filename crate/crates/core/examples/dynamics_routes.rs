//! Propagates the same initial state three ways and compares them.

use std::f64::consts::PI;

use xxzgeom::dynamics::make_trajectory;
use xxzgeom::{Method, ModelParams};

fn main() -> xxzgeom::Result<()> {
    let p = ModelParams::new(0.3, 1.0, 0.5, 0.1)?;
    let analytic = make_trajectory(&p, 2.0 * PI, 401, Method::Analytic)?;
    for method in [Method::ClosedForm, Method::Rk4] {
        let other = make_trajectory(&p, 2.0 * PI, 401, method)?;
        let gap = analytic
            .states
            .iter()
            .zip(&other.states)
            .map(|(a, b)| a.mat().max_abs_diff(b.mat()))
            .fold(0.0, f64::max);
        println!("{method:?} vs analytic: max entry difference {gap:.2e}");
    }
    let last = analytic.states.last().unwrap();
    println!("purity at eta = 2pi: {:.6}", last.purity());
    Ok(())
}
