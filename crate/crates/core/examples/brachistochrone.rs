//! Minimal evolution time under the Hilbert-Schmidt speed limit.

use xxzgeom::brachistochrone::solve;
use xxzgeom::ModelParams;

fn main() -> xxzgeom::Result<()> {
    let p = ModelParams::new(0.65, 1.0, 0.5, 0.2)?;
    let r = solve(&p)?;
    println!("t_min          {:.6}", r.t_min);
    println!("eta(t_min)     {:.6}", r.eta_at_t_min);
    println!(
        "max V_HS       {:.6} (scan {:.6} at eta={:.4})",
        r.v_hs_max, r.scan_sup_v_hs, r.scan_sup_eta
    );
    println!("L_HS at C=1    {:.6}", r.l_hs_at_c1);
    println!("residual       {:.3e}", r.milburn_residual);
    let m = r.optimal_state.mat();
    for i in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|j| format!("{:+.4}{:+.4}i", m.get(i, j).re, m.get(i, j).im))
            .collect();
        println!("  {}", row.join("  "));
    }
    Ok(())
}
