//! Weak/strong Anti-Unruh classification of a small accelerated grid,
//! written as the scan CSV.

use unruh_lab::antiunruh::{self, Label, ScanSpec};
use unruh_lab::cli;
use unruh_lab::response::Sigma;
use unruh_lab::scenarios::Motion;
use unruh_lab::switching::SwitchingFunction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut spec = ScanSpec::new(Motion::AcceleratedVacuum, 1, 0.0, SwitchingFunction::gaussian());
    spec.omega = vec![1.0, 2.0];
    spec.sigma = vec![Sigma::Finite(0.04), Sigma::Infinite];
    spec.t_kms = vec![0.5, 1.0, 4.0];
    spec.mass = vec![1.0];
    let scan = antiunruh::classify(&spec)?;
    for label in [Label::Weak, Label::Strong, Label::Both, Label::Neither, Label::Unresolved] {
        println!("{label}: {}", scan.count(|c| c.label == label));
    }
    cli::write_scan_csv(&scan, std::io::stdout())?;
    Ok(())
}
