//! Runs the built-in self-checks and prints the report.

use xxzgeom::cli::verify::{run_verify, Status, VerifyOptions};

fn main() -> xxzgeom::Result<()> {
    let report = run_verify(&VerifyOptions::default())?;
    print!("{}", report.render());
    println!(
        "{} passed, {} failed, {} known discrepancies",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::KnownDiscrepancy)
    );
    Ok(())
}
