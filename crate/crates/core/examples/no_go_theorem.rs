//! Inertial thermal detectors and accelerated detectors in the massless
//! vacuum never show Anti-Unruh behaviour; unresolved cells are listed with
//! their reason.

use std::collections::BTreeMap;

use unruh_lab::antiunruh::{self, ScanSpec};
use unruh_lab::response::Sigma;
use unruh_lab::scenarios::Motion;
use unruh_lab::switching::SwitchingFunction;

fn main() -> unruh_lab::Result<()> {
    for (motion, d, m, lam) in [
        (Motion::InertialThermal, 3, 0.0, 0.0),
        (Motion::InertialThermal, 1, 1.0, 0.0),
        (Motion::InertialThermal, 3, 1.0, 1.0),
        (Motion::AcceleratedVacuum, 3, 0.0, 0.0),
        (Motion::AcceleratedVacuum, 1, 0.0, 0.0),
    ] {
        let mut spec = ScanSpec::new(motion, d, lam, SwitchingFunction::gaussian());
        spec.omega = vec![0.5, 2.0, 5.0, 15.0];
        spec.sigma = vec![Sigma::Finite(0.04), Sigma::Finite(1.0), Sigma::Infinite];
        spec.t_kms = vec![0.1, 1.0, 5.0, 20.0];
        spec.mass = vec![m];
        let scan = antiunruh::classify(&spec)?;
        let mut labels: BTreeMap<String, usize> = BTreeMap::new();
        let mut notes: BTreeMap<String, usize> = BTreeMap::new();
        for c in &scan.cells {
            *labels.entry(c.label.to_string()).or_default() += 1;
            if let Some(n) = &c.note {
                *notes.entry(n.split(':').next().unwrap_or(n).to_string()).or_default() += 1;
            }
        }
        println!("{motion:?} d={d} m={m} Λ={lam}: {labels:?}");
        for (n, k) in notes {
            println!("    {k} × {n}");
        }
    }
    Ok(())
}
