//! Eigenvalues and eigenvectors of the two-spin Hamiltonian.

use xxzgeom::model::{build_hamiltonian, spectrum};
use xxzgeom::ModelParams;

fn main() -> xxzgeom::Result<()> {
    let p = ModelParams::new(0.5, 1.0, 0.2, 0.0)?;
    let h = build_hamiltonian(&p);
    let s = spectrum(&p);
    println!(
        "H diagonal: {:?}",
        (0..4).map(|i| h.get(i, i).re).collect::<Vec<_>>()
    );
    for (e, v) in s.energies.iter().zip(&s.states) {
        let comps: Vec<String> = v.iter().map(|z| format!("{:+.4}", z.re)).collect();
        println!("E = {e:+.4}  |{}>", comps.join(", "));
    }
    Ok(())
}
