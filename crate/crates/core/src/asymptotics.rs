//! Large- and small-mass asymptotes of the eternal-switching response of an
//! accelerated detector in the massive 1+1 vacuum, `F = W̃₁(Ω)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun;

/// Margin turning `(βΩ/2π)² + 1/4 ≪ βm/2π` into an inequality.
pub const LARGE_MASS_MARGIN: f64 = 0.1;
/// Margin turning `(βΩ/2π)² + 1 ≫ (βm/2π)⁴` into `M (βm/2π)⁴ ≤ (βΩ/2π)² + 1`.
pub const SMALL_MASS_MARGIN: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Validity {
    LargeMass,
    SmallMass,
    Neither,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Asymptote {
    pub value: f64,
    /// The regime predicate for this asymptote failed.
    pub validity_warning: bool,
}

fn check(omega: f64, beta: f64, m: f64) -> Result<()> {
    if !(beta > 0.0) || !(m > 0.0) || !omega.is_finite() || !beta.is_finite() || !m.is_finite() {
        return Err(Error::Domain(format!(
            "asymptotes need finite Ω and β, m > 0 (Ω={omega}, β={beta}, m={m})"
        )));
    }
    Ok(())
}

pub fn large_mass_valid(omega: f64, beta: f64, m: f64) -> bool {
    let z = beta * omega / (2.0 * PI);
    z * z + 0.25 <= LARGE_MASS_MARGIN * beta * m / (2.0 * PI)
}

pub fn small_mass_valid(omega: f64, beta: f64, m: f64) -> bool {
    let z = beta * omega / (2.0 * PI);
    SMALL_MASS_MARGIN * (beta * m / (2.0 * PI)).powi(4) <= z * z + 1.0
}

/// `F ≈ e^{-β(Ω/2 + m/π)} / (2m)`, from `K_{iν}(x) ≈ √(π/2x) e^{-x}`.
pub fn response_large_mass(omega: f64, beta: f64, m: f64) -> Result<Asymptote> {
    check(omega, beta, m)?;
    Ok(Asymptote {
        value: (-beta * (0.5 * omega + m / PI)).exp() / (2.0 * m),
        validity_warning: !large_mass_valid(omega, beta, m),
    })
}

/// `F ≈ [1 + cos((βΩ/π) ln(βm/4π) - φ(βΩ/2π))] / (Ω(e^{βΩ} - 1))`,
/// `φ(z) = 2 Arg Γ(iz)`.
pub fn response_small_mass(omega: f64, beta: f64, m: f64) -> Result<Asymptote> {
    check(omega, beta, m)?;
    if omega == 0.0 {
        return Err(Error::Singular("small-mass asymptote at Ω = 0".into()));
    }
    let bo = beta * omega;
    let z = bo / (2.0 * PI);
    // φ is odd in z under Γ(-iz) = conj Γ(iz)
    let phi = specfun::gamma_arg_phase(z.abs())? * z.signum();
    let phase = bo / PI * (beta * m / (4.0 * PI)).ln() - phi;
    let planck = specfun::planck(omega, beta)?;
    Ok(Asymptote {
        value: (1.0 + phase.cos()) * planck / omega,
        validity_warning: !small_mass_valid(omega, beta, m),
    })
}

pub fn validity_region(omega: f64, beta: f64, m: f64) -> Validity {
    match (large_mass_valid(omega, beta, m), small_mass_valid(omega, beta, m)) {
        (true, true) => Validity::Both,
        (true, false) => Validity::LargeMass,
        (false, true) => Validity::SmallMass,
        (false, false) => Validity::Neither,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{wightman_ft, Scenario};

    fn exact(omega: f64, beta: f64, m: f64) -> f64 {
        wightman_ft(&Scenario::accelerated(1, m, beta).unwrap(), omega).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn large_mass_against_exact() {
        let e100 = rel(response_large_mass(1.0, 1.0, 100.0).unwrap().value, exact(1.0, 1.0, 100.0));
        let e200 = rel(response_large_mass(1.0, 1.0, 200.0).unwrap().value, exact(1.0, 1.0, 200.0));
        assert!(e100 < 0.1 && e200 < e100, "{e100} {e200}");
        assert!(!response_large_mass(1.0, 1.0, 100.0).unwrap().validity_warning);
        let a = response_large_mass(1.0, 1.0, 50.0).unwrap().value;
        let b = response_large_mass(1.0, 1.0, 100.0).unwrap().value;
        assert!(b < a);
    }

    #[test]
    fn small_mass_against_exact() {
        let errs: Vec<f64> = [1e-3, 1e-4, 1e-5]
            .iter()
            .map(|&m| rel(response_small_mass(1.0, 1.0, m).unwrap().value, exact(1.0, 1.0, m)))
            .collect();
        assert!(errs[1] < 0.15);
        assert!(errs[2] < errs[0]);
    }

    #[test]
    fn small_mass_envelope() {
        for i in 0..50 {
            let m = 10f64.powf(-6.0 + 0.1 * i as f64);
            for &(om, beta) in &[(1.0, 1.0), (0.5, 3.0), (4.0, 0.2)] {
                let v = response_small_mass(om, beta, m).unwrap().value;
                let env = 2.0 / (om * (beta * om).exp_m1());
                assert!(v >= 0.0 && v <= env * (1.0 + 1e-14));
            }
        }
    }

    #[test]
    fn regions() {
        assert_eq!(validity_region(1.0, 1.0, 100.0), Validity::LargeMass);
        assert_eq!(validity_region(1.0, 1.0, 1e-4), Validity::SmallMass);
        assert_eq!(validity_region(1.0, 1.0, 1.0), Validity::Neither);
    }
}
