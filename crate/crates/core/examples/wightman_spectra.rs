//! Fourier-space Wightman functions and commutators for inertial thermal
//! and accelerated vacuum detectors, with their detailed-balance residuals.

use unruh_lab::scenarios::{self, Scenario};

fn main() -> unruh_lab::Result<()> {
    let beta = 1.0;
    let cases = [
        ("inertial d=3 m=0", Scenario::inertial(3, 0.0, 0.0, beta)?),
        ("inertial d=1 m=1", Scenario::inertial(1, 1.0, 0.0, beta)?),
        ("inertial d=3 m=1 Λ=2", Scenario::inertial(3, 1.0, 2.0, beta)?),
        ("accelerated d=1 m=1", Scenario::accelerated(1, 1.0, beta)?),
        ("accelerated d=3 m=0.1", Scenario::accelerated(3, 0.1, beta)?),
    ];
    for (name, s) in &cases {
        println!("{name}");
        for w in [0.5, 1.5, 3.0] {
            let sd = scenarios::spectral_density(s, w)?;
            let res = scenarios::detailed_balance_residual(s, w)?;
            println!(
                "  ω={w:<4} W(ω)={:.6e} W(-ω)={:.6e} C(ω)={:.6e} balance residual {res:.1e}",
                sd.wightman_plus, sd.wightman_minus, sd.commutator
            );
        }
    }

    // an IR cutoff breaks stationarity only when the detector accelerates
    for (lam, a) in [(0.0, 1.0), (0.5, 0.0), (0.5, 1.0)] {
        let d = scenarios::stationarity_defect(lam, a, 1.0, 1.0, 0.0, 2.0)?;
        println!("Λ={lam} a={a}: stationarity defect {d:.3e}");
    }
    println!(
        "accelerated with Λ>0 rejected: {}",
        scenarios::wightman_ft(&Scenario::new(scenarios::Motion::AcceleratedVacuum, 1, 1.0, 0.5, 1.0)?, 1.0).is_err()
    );
    Ok(())
}
