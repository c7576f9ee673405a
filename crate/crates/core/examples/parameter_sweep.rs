//! Parallel sweep over the noise strength, configured with the same
//! `key = value` text the CLI reads, written as CSV to stdout.

use xxzgeom::cli::commands::scan_table;
use xxzgeom::cli::config::{parse_config, SweepSpec, DEFAULT_SCAN_POINTS};

const CONFIG: &str = "
J = 0.3
alphas = 0, 0.02, 0.05, 0.1
n_points = 9
quantities = C, L_HS, L_B
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let overrides = parse_config(CONFIG).map_err(|e| e.to_string())?;
    let spec = SweepSpec::resolve(overrides, DEFAULT_SCAN_POINTS)?;
    print!("{}", scan_table(&spec)?.render());
    Ok(())
}
