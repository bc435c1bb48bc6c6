//! Fourier-space Wightman functions and commutators for the supported
//! field-state / trajectory combinations.
//!
//! Inertial detectors in a thermal state and accelerated detectors in the
//! massless vacuum share the closed form `W̃ = -C̃·P` with a
//! temperature-independent commutator. Accelerated detectors in a massive
//! vacuum get their temperature dependence through both the Bose-like
//! prefactor and the Bessel order/argument.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, QuadConfig};
use crate::specfun::{self, BesselEvalConfig};

/// How the detector moves and which field state it sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Motion {
    /// Inertial detector, field in a thermal state at inverse temperature β.
    InertialThermal,
    /// Uniformly accelerated detector in the Minkowski vacuum, β = 2π/a.
    AcceleratedVacuum,
}

/// One physical setup. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub motion: Motion,
    /// Number of spatial dimensions, 1 to 3.
    pub d: u8,
    pub mass: f64,
    /// IR momentum cutoff Λ.
    pub ir_cutoff: f64,
    pub beta: f64,
}

impl Scenario {
    pub fn new(motion: Motion, d: u8, mass: f64, ir_cutoff: f64, beta: f64) -> Result<Self> {
        let s = Self {
            motion,
            d,
            mass,
            ir_cutoff,
            beta,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn inertial(d: u8, mass: f64, ir_cutoff: f64, beta: f64) -> Result<Self> {
        Self::new(Motion::InertialThermal, d, mass, ir_cutoff, beta)
    }

    pub fn accelerated(d: u8, mass: f64, beta: f64) -> Result<Self> {
        Self::new(Motion::AcceleratedVacuum, d, mass, 0.0, beta)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.d) {
            return Err(Error::Domain(format!("spatial dimension {} not in 1..=3", self.d)));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::Domain(format!("β must be positive, got {}", self.beta)));
        }
        if !(self.mass >= 0.0) || !self.mass.is_finite() {
            return Err(Error::Domain(format!("mass must be ≥ 0, got {}", self.mass)));
        }
        if !(self.ir_cutoff >= 0.0) || !self.ir_cutoff.is_finite() {
            return Err(Error::Domain(format!("IR cutoff must be ≥ 0, got {}", self.ir_cutoff)));
        }
        Ok(())
    }

    /// Copy with a different inverse temperature.
    pub fn with_beta(&self, beta: f64) -> Self {
        Self { beta, ..*self }
    }

    pub fn t_kms(&self) -> f64 {
        1.0 / self.beta
    }

    /// Whether detailed balance is expected. An IR cutoff on an accelerated
    /// trajectory breaks stationarity, see [`stationarity_defect`].
    pub fn kms(&self) -> bool {
        !(self.motion == Motion::AcceleratedVacuum && self.ir_cutoff > 0.0)
    }

    /// True when `W̃ = -C̃ P` with a commutator that does not depend on β:
    /// every inertial case, and the accelerated massless vacuum in d = 1, 3.
    pub fn beta_independent_commutator(&self) -> bool {
        match self.motion {
            Motion::InertialThermal => true,
            Motion::AcceleratedVacuum => {
                self.mass == 0.0 && self.ir_cutoff == 0.0 && self.d != 2
            }
        }
    }

    /// `W̃` has a non-integrable singularity at ω = 0 (massless, no cutoff, d < 3).
    pub fn infrared_divergent(&self) -> bool {
        self.mass == 0.0 && self.ir_cutoff == 0.0 && self.d < 3
    }
}

/// `W̃(±ω)` and `C̃(ω)` evaluated together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralDensity {
    pub wightman_plus: f64,
    pub wightman_minus: f64,
    pub commutator: f64,
    pub kms_flag: bool,
}

/// Closed-form commutator of the inertial thermal case,
/// `-π^{(2-d)/2} sgn ω (ω²-m²)^{(d-2)/2} Θ(|ω|-m) Θ(|ω|-Λ) / (2^{d-1} Γ(d/2))`.
pub fn commutator_ft_inertial_closed(omega: f64, d: u8, mass: f64, ir_cutoff: f64) -> f64 {
    let w = omega.abs();
    if w <= mass || w < ir_cutoff || omega == 0.0 {
        return 0.0;
    }
    let q = w * w - mass * mass;
    // π^{(2-d)/2} / (2^{d-1} Γ(d/2)) for d = 1, 2, 3
    let (norm, power) = match d {
        1 => (1.0, q.sqrt().recip()),
        2 => (0.5, 1.0),
        3 => (1.0 / (2.0 * PI), q.sqrt()),
        _ => return f64::NAN,
    };
    -omega.signum() * norm * power
}

/// Spectral integral of the massive accelerated Wightman function without
/// its `e^{-βω/2}` prefactor: `W̃ = prefactor(β, ω) · bessel_part(β, |ω|)`.
fn accelerated_bessel_part(s: &Scenario, omega_abs: f64) -> Result<f64> {
    let beta = s.beta;
    let nu = beta * omega_abs / (2.0 * PI);
    let kcfg = BesselEvalConfig::default();
    let scale = beta / (2.0 * PI);
    if s.d == 1 {
        let k = specfun::bessel_k_imag_order_scaled(nu, scale * s.mass, &kcfg)?.value;
        return Ok(beta / (2.0 * PI * PI) * k * k);
    }
    // d ≥ 2: radial integral over |k| in units where y = (β/2π)√(m²+k²)
    let d = s.d as i32;
    let gamma_half = match s.d {
        2 => PI.sqrt(), // Γ(1/2)
        _ => 1.0,       // Γ(1)
    };
    let norm = beta / (2f64.powi(d - 1) * PI.powf((d as f64 + 3.0) / 2.0) * gamma_half);
    let m = s.mass;
    let integrand = |k: f64| -> f64 {
        let y = scale * (m * m + k * k).sqrt();
        match specfun::bessel_k_imag_order_scaled(nu, y, &kcfg) {
            Ok(v) => k.powi(d - 2) * v.value * v.value,
            Err(_) => f64::NAN,
        }
    };
    // the integrand dies like e^{-2(y - ν)} once y exceeds the order
    let y_max = nu.max(scale * m) + 40.0;
    let k_max = ((y_max / scale).powi(2) - m * m).max(0.0).sqrt();
    let k_lo = if m > 0.0 { 0.0 } else { 1e-12 * k_max };
    let mut breaks = vec![];
    let k_turn = ((nu / scale).powi(2) - m * m).max(0.0).sqrt();
    if k_turn > k_lo && k_turn < k_max {
        breaks.push(k_turn);
    }
    let qc = QuadConfig {
        rel_tol: 1e-10,
        abs_tol: 0.0,
        max_subdivisions: 4000,
    };
    let r = quad::adaptive(integrand, k_lo, k_max, &breaks, &qc)?;
    Ok(norm * r.value)
}

/// Fourier transform of the pulled-back Wightman function, `W̃(ω, β)`.
pub fn wightman_ft(s: &Scenario, omega: f64) -> Result<f64> {
    s.validate()?;
    if !omega.is_finite() {
        return Err(Error::Domain(format!("ω must be finite, got {omega}")));
    }
    if !s.kms() {
        return Err(Error::Unsupported(
            "accelerated trajectory with an IR cutoff is not stationary".into(),
        ));
    }
    let beta = s.beta;
    if s.beta_independent_commutator() {
        if s.mass == 0.0 && s.ir_cutoff == 0.0 && s.d == 3 && (beta * omega).abs() < 1e-10 {
            // removable point of ω/(2π(e^{βω}-1))
            return Ok(1.0 / (2.0 * PI * beta));
        }
        let c = commutator_ft_inertial_closed(omega, s.d, s.mass, s.ir_cutoff);
        if c == 0.0 {
            if omega == 0.0 && s.infrared_divergent() {
                return Err(Error::Singular("massless W̃ at ω = 0".into()));
            }
            return Ok(0.0);
        }
        let p = specfun::planck(omega, beta)?;
        return Ok(-c * p);
    }
    // accelerated vacuum, massive (or massless d = 2): Bessel representation
    if omega == 0.0 && s.mass == 0.0 {
        return Err(Error::Singular("massless W̃ at ω = 0".into()));
    }
    let part = accelerated_bessel_part(s, omega.abs())?;
    // e^{-βω/2} times the e^{-πν} removed from the scaled K²
    let expo = if omega > 0.0 { -beta * omega } else { 0.0 };
    Ok(part * expo.exp())
}

/// `C̃(ω) = W̃(ω) - W̃(-ω)`.
pub fn commutator_ft(s: &Scenario, omega: f64) -> Result<f64> {
    Ok(wightman_ft(s, omega)? - wightman_ft(s, -omega)?)
}

/// Both Wightman values and the commutator at once.
pub fn spectral_density(s: &Scenario, omega: f64) -> Result<SpectralDensity> {
    let plus = wightman_ft(s, omega)?;
    let minus = wightman_ft(s, -omega)?;
    Ok(SpectralDensity {
        wightman_plus: plus,
        wightman_minus: minus,
        commutator: plus - minus,
        kms_flag: s.kms(),
    })
}

/// `|W̃(-ω) - e^{βω} W̃(ω)| / max(W̃(-ω), tiny)`.
pub fn detailed_balance_residual(s: &Scenario, omega: f64) -> Result<f64> {
    if !s.kms() {
        return Err(Error::Unsupported("detailed balance requires a KMS scenario".into()));
    }
    let sd = spectral_density(s, omega)?;
    let lhs = sd.wightman_minus;
    let rhs = (s.beta * omega).exp() * sd.wightman_plus;
    Ok((lhs - rhs).abs() / lhs.abs().max(f64::MIN_POSITIVE))
}

/// Hyperbolic (or inertial, `a = 0`) trajectory in 1+1 dimensions.
fn trajectory(a: f64, tau: f64) -> (f64, f64) {
    if a == 0.0 {
        (tau, 0.0)
    } else {
        ((a * tau).sinh() / a, (a * tau).cosh() / a)
    }
}

fn separation(a: f64, delta_tau: f64, tau_mid: f64) -> (f64, f64) {
    let (t1, x1) = trajectory(a, tau_mid + 0.5 * delta_tau);
    let (t2, x2) = trajectory(a, tau_mid - 0.5 * delta_tau);
    (t1 - t2, x1 - x2)
}

/// Mode integral `∫_{|k|<Λ} dk e^{-i(ω_k Δt - k Δx)} / (4π ω_k)` with the
/// value at a second separation subtracted under the integral sign, so the
/// massless `1/|k|` endpoint cancels.
fn ir_band_difference(
    cutoff: f64,
    mass: f64,
    sep1: (f64, f64),
    sep2: (f64, f64),
) -> Result<Complex64> {
    let qc = QuadConfig {
        rel_tol: 1e-12,
        abs_tol: 1e-15,
        max_subdivisions: 4000,
    };
    let mode = |k: f64, (dt, dx): (f64, f64)| -> Complex64 {
        let wk = (k * k + mass * mass).sqrt();
        // k and -k combined: 2 cos(k Δx) e^{-i ω_k Δt}
        Complex64::from_polar(1.0, -wk * dt) * (2.0 * (k * dx).cos())
    };
    let f = |k: f64, part: fn(Complex64) -> f64| -> f64 {
        let wk = (k * k + mass * mass).sqrt();
        part((mode(k, sep1) - mode(k, sep2)) / (4.0 * PI * wk))
    };
    let re = quad::adaptive(|k| f(k, |z| z.re), 0.0, cutoff, &[], &qc)?;
    let im = quad::adaptive(|k| f(k, |z| z.im), 0.0, cutoff, &[], &qc)?;
    Ok(Complex64::new(re.value, im.value))
}

/// Difference between the 1+1D cutoff Wightman function at two midpoints
/// with the same proper-time separation, `|W(τ_mid1) - W(τ_mid2)|`.
///
/// The full-band (`Λ = 0`) function is Lorentz invariant and depends only on
/// the proper interval, which is the same at both midpoints, so the
/// difference reduces to the removed band `|k| < Λ`: a finite integral that
/// needs no UV regulator.
pub fn stationarity_defect(
    ir_cutoff: f64,
    accel: f64,
    mass: f64,
    delta_tau: f64,
    tau_mid_1: f64,
    tau_mid_2: f64,
) -> Result<f64> {
    if !(ir_cutoff >= 0.0) || !(accel >= 0.0) || !(mass >= 0.0) {
        return Err(Error::Domain("Λ, a, m must be non-negative".into()));
    }
    if ir_cutoff == 0.0 {
        return Ok(0.0);
    }
    let s1 = separation(accel, delta_tau, tau_mid_1);
    let s2 = separation(accel, delta_tau, tau_mid_2);
    Ok(ir_band_difference(ir_cutoff, mass, s1, s2)?.norm())
}

/// The cutoff Wightman function `∫_{|k|≥Λ}` along the trajectory with the
/// damping `e^{-ε ω_k}`. Requires `m > 0` or `Λ > 0`.
pub fn regulated_wightman_pullback(
    ir_cutoff: f64,
    accel: f64,
    mass: f64,
    delta_tau: f64,
    tau_mid: f64,
    eps: f64,
) -> Result<Complex64> {
    if !(eps > 0.0) {
        return Err(Error::Domain("regulator ε must be positive".into()));
    }
    if mass == 0.0 && ir_cutoff == 0.0 {
        return Err(Error::InfraredDivergence("massless 1+1D mode integral".into()));
    }
    let (dt, dx) = separation(accel, delta_tau, tau_mid);
    let qc = QuadConfig {
        rel_tol: 1e-11,
        abs_tol: 1e-14,
        max_subdivisions: 20000,
    };
    let k_max = 45.0 / eps;
    let integrand = |k: f64| -> Complex64 {
        let wk = (k * k + mass * mass).sqrt();
        Complex64::from_polar((-eps * wk).exp(), -wk * dt) * (2.0 * (k * dx).cos()) / (4.0 * PI * wk)
    };
    // panels of a few oscillations keep the adaptive driver on track
    let period = 2.0 * PI / (dt.abs() + dx.abs()).max(1e-3);
    let mut breaks = vec![];
    let mut k = ir_cutoff + period;
    while k < k_max && breaks.len() < 5000 {
        breaks.push(k);
        k += 4.0 * period;
    }
    let re = quad::adaptive(|k| integrand(k).re, ir_cutoff, k_max, &breaks, &qc)?;
    let im = quad::adaptive(|k| integrand(k).im, ir_cutoff, k_max, &breaks, &qc)?;
    Ok(Complex64::new(re.value, im.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn massless3(beta: f64, w: f64) -> f64 {
        w / (2.0 * PI * (beta * w).exp_m1())
    }

    #[test]
    fn inertial_massless_closed_form() {
        let s = Scenario::inertial(3, 0.0, 0.0, 1.0).unwrap();
        let w = wightman_ft(&s, 1.0).unwrap();
        let expect = 1.0 / (2.0 * PI * (1f64.exp() - 1.0));
        assert!((w - expect).abs() < 1e-15);
        assert!((w - 0.0926245).abs() < 1e-7);
        // -C̃·P assembled by hand
        let c = commutator_ft_inertial_closed(1.0, 3, 0.0, 0.0);
        assert!((w + c * specfun::planck(1.0, 1.0).unwrap()).abs() < 1e-16);
    }

    #[test]
    fn commutator_closed_form_cases() {
        assert!((commutator_ft_inertial_closed(1.0, 3, 0.0, 0.0) + 1.0 / (2.0 * PI)).abs() < 1e-16);
        for d in 1..=3 {
            assert_eq!(commutator_ft_inertial_closed(1.0, d, 2.0, 0.0), 0.0);
            assert_eq!(commutator_ft_inertial_closed(3.0, d, 0.0, 5.0), 0.0);
            for &w in &[0.3, 1.7, 6.0] {
                let c = commutator_ft_inertial_closed(w, d, 0.2, 0.1);
                assert_eq!(c, -commutator_ft_inertial_closed(-w, d, 0.2, 0.1));
                assert!(c < 0.0);
            }
        }
    }

    #[test]
    fn commutator_routes_agree() {
        let s = Scenario::inertial(3, 0.0, 0.0, 1.3).unwrap();
        for &w in &[0.2, 1.0, 4.0, -2.5] {
            let via_w = commutator_ft(&s, w).unwrap();
            let closed = commutator_ft_inertial_closed(w, 3, 0.0, 0.0);
            assert!((via_w - closed).abs() <= 1e-12 * closed.abs());
        }
    }

    #[test]
    fn massless_limit_branch() {
        let s = Scenario::inertial(3, 0.0, 0.0, 2.0).unwrap();
        assert!((wightman_ft(&s, 0.0).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-16);
        assert!((wightman_ft(&s, 1e-12).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-12);
        let s1 = Scenario::inertial(1, 0.0, 0.0, 2.0).unwrap();
        assert!(matches!(wightman_ft(&s1, 0.0), Err(Error::Singular(_))));
        // massive: W̃ vanishes below threshold, including ω = 0
        let s2 = Scenario::inertial(1, 1.0, 0.0, 2.0).unwrap();
        assert_eq!(wightman_ft(&s2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn accelerated_cutoff_is_rejected() {
        let s = Scenario::new(Motion::AcceleratedVacuum, 1, 1.0, 0.5, 1.0).unwrap();
        assert!(!s.kms());
        assert!(matches!(wightman_ft(&s, 1.0), Err(Error::Unsupported(_))));
        assert!(detailed_balance_residual(&s, 1.0).is_err());
    }

    #[test]
    fn accelerated_d1_balance_is_exact() {
        let s = Scenario::accelerated(1, 1.0, 2.0 * PI).unwrap();
        for &w in &[0.1, 1.0, 3.0] {
            let plus = wightman_ft(&s, w).unwrap();
            let minus = wightman_ft(&s, -w).unwrap();
            assert!(plus > 0.0);
            assert!((minus / plus / (s.beta * w).exp() - 1.0).abs() < 1e-13);
            assert!(detailed_balance_residual(&s, w).unwrap() < 1e-12);
            assert!(w * commutator_ft(&s, w).unwrap() < 0.0);
        }
    }

    #[test]
    fn accelerated_d3_massless_limit() {
        let s = Scenario::accelerated(3, 1e-6, 1.0).unwrap();
        let w = wightman_ft(&s, 1.0).unwrap();
        let m0 = massless3(1.0, 1.0);
        assert!(((w - m0) / m0).abs() < 1e-3, "{w} vs {m0}");
        assert!(detailed_balance_residual(&s, 1.0).unwrap() < 1e-8);
    }

    #[test]
    fn accelerated_d3_massive_balance() {
        let s = Scenario::accelerated(3, 1.0, 1.0).unwrap();
        for &w in &[0.5, 2.0] {
            assert!(detailed_balance_residual(&s, w).unwrap() < 1e-8);
            assert!(wightman_ft(&s, w).unwrap() > 0.0);
        }
    }

    #[test]
    fn accelerated_d2_is_positive_and_balanced() {
        let s = Scenario::accelerated(2, 0.5, 1.5).unwrap();
        let w = wightman_ft(&s, 1.0).unwrap();
        assert!(w > 0.0);
        assert!(detailed_balance_residual(&s, 1.0).unwrap() < 1e-8);
    }

    #[test]
    fn inertial_balance_with_mass_and_cutoff() {
        for d in [1u8, 2, 3] {
            let s = Scenario::inertial(d, 1.0, 1.5, 0.7).unwrap();
            for &w in &[0.5, 1.2, 2.0, 9.0] {
                assert!(detailed_balance_residual(&s, w).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn stationarity_defect_cases() {
        assert!(stationarity_defect(0.0, 1.0, 1.0, 0.3, 0.0, 1.0).unwrap() < 1e-8);
        assert!(stationarity_defect(0.5, 0.0, 1.0, 0.3, 0.0, 1.0).unwrap() < 1e-8);
        let d = stationarity_defect(0.5, 1.0, 1.0, 0.3, 0.0, 1.0).unwrap();
        assert!(d > 1e-7, "{d}");
        // shrinking the cutoff or the acceleration shrinks the defect
        let small_cut = stationarity_defect(0.05, 1.0, 1.0, 0.3, 0.0, 1.0).unwrap();
        let small_acc = stationarity_defect(0.5, 0.01, 1.0, 0.3, 0.0, 1.0).unwrap();
        assert!(small_cut < d && small_acc < d);
    }

    #[test]
    fn defect_matches_regulated_mode_sums() {
        // independent route: full regulated sums at both midpoints, ε → 0 by
        // Richardson over ε, ε/2, ε/4
        let (cut, a, m, dtau) = (0.5, 1.0, 1.0, 0.3);
        let extrap = |mid: f64| {
            let e = [0.1, 0.05, 0.025]
                .map(|eps| regulated_wightman_pullback(cut, a, m, dtau, mid, eps).unwrap());
            let r1 = [e[1] * 2.0 - e[0], e[2] * 2.0 - e[1]];
            (r1[1] * 4.0 - r1[0]) / 3.0
        };
        let via_sums = (extrap(0.0) - extrap(1.0)).norm();
        let direct = stationarity_defect(cut, a, m, dtau, 0.0, 1.0).unwrap();
        assert!((via_sums - direct).abs() < 0.05 * direct, "{via_sums} vs {direct}");
    }
}
