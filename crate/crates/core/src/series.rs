//! Long-interaction expansion of the response for the massless inertial
//! 3+1 thermal spectrum,
//! `F = Σ_k ‖χ^(k)‖² W̃^(2k)(Ω) σ^{-2k} / (2k)!`,
//! with `W̃` derivatives from a Chebyshev interpolant.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::response::{Method, ResponseResult};
use crate::scenarios::{self, Scenario};
use crate::switching::SwitchingFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivMethod {
    ChebyshevSpectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    pub k_max: u32,
    pub deriv_method: DerivMethod,
    pub cheb_points: usize,
    /// Fraction of the analyticity radius used for the interpolation interval.
    pub radius_safety: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            k_max: 8,
            deriv_method: DerivMethod::ChebyshevSpectral,
            cheb_points: 64,
            radius_safety: 0.5,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius_safety > 0.0 && self.radius_safety < 1.0) {
            return Err(Error::Domain(format!(
                "radius_safety must be in (0, 1), got {}",
                self.radius_safety
            )));
        }
        if self.cheb_points < 8 {
            return Err(Error::Domain("need at least 8 Chebyshev points".into()));
        }
        Ok(())
    }
}

/// `ω̄_c = σΩ √(1 + (2π/βΩ)²)`: the poles of `ω/(e^{βω}-1)` nearest to Ω
/// sit at `±2πi/β`.
pub fn convergence_radius_massless(omega: f64, sigma: f64, beta: f64) -> f64 {
    let x = 2.0 * PI / (beta * omega);
    sigma * omega * (1.0 + x * x).sqrt()
}

/// Chebyshev interpolant of `f` on `[c - r, c + r]`.
struct Chebyshev {
    coeffs: Vec<f64>,
    half_width: f64,
}

impl Chebyshev {
    /// Interpolates at the `n` Chebyshev-Lobatto points.
    fn fit<F: Fn(f64) -> Result<f64>>(f: F, center: f64, half_width: f64, n: usize) -> Result<Self> {
        let m = n - 1;
        let vals = (0..n)
            .map(|j| f(center + half_width * (PI * j as f64 / m as f64).cos()))
            .collect::<Result<Vec<_>>>()?;
        let mut coeffs = vec![0.0; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut s = 0.0;
            for (j, v) in vals.iter().enumerate() {
                let w = if j == 0 || j == m { 0.5 } else { 1.0 };
                s += w * v * (PI * (j * k) as f64 / m as f64).cos();
            }
            *c = 2.0 * s / m as f64;
        }
        coeffs[0] *= 0.5;
        coeffs[m] *= 0.5;
        Ok(Self { coeffs, half_width })
    }

    /// Drops the round-off plateau; fails if the coefficients never reach it.
    fn chop(&mut self) -> Result<()> {
        let scale = self.coeffs.iter().fold(0.0f64, |a, c| a.max(c.abs()));
        let tol = 1e-15 * scale;
        let n = self.coeffs.len();
        let tail = &self.coeffs[n - n / 8..];
        if tail.iter().any(|c| c.abs() > 1e3 * tol) {
            return Err(Error::DerivativeInstability(format!(
                "Chebyshev tail {:e} relative to {:e}",
                tail.iter().fold(0.0f64, |a, c| a.max(c.abs())),
                scale
            )));
        }
        let keep = self.coeffs.iter().rposition(|c| c.abs() > tol).map_or(1, |i| i + 1);
        self.coeffs.truncate(keep);
        Ok(())
    }

    /// Coefficients of the derivative series.
    fn differentiate(&self) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self {
                coeffs: vec![0.0],
                half_width: self.half_width,
            };
        }
        let mut d = vec![0.0; n - 1];
        for k in (1..n).rev() {
            let next = d.get(k + 1).copied().unwrap_or(0.0);
            d[k - 1] = next + 2.0 * k as f64 * self.coeffs[k];
        }
        d[0] *= 0.5;
        let s = 1.0 / self.half_width;
        Self {
            coeffs: d.into_iter().map(|c| c * s).collect(),
            half_width: self.half_width,
        }
    }

    /// Value at the interval centre, where `T_k(0) = cos(kπ/2)`.
    fn at_center(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| match k % 4 {
                0 => *c,
                2 => -*c,
                _ => 0.0,
            })
            .sum()
    }
}

/// `W̃^(j)(Ω)` for `j = 0..=order` of the massless inertial 3+1 spectrum.
pub fn wightman_derivatives(omega: f64, sigma: f64, beta: f64, order: usize, cfg: &SeriesConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let s = Scenario::inertial(3, 0.0, 0.0, beta)?;
    let radius = convergence_radius_massless(omega, sigma, beta) / sigma;
    // W̃ is analytic through ω = 0, so only the complex poles limit r
    let r = cfg.radius_safety * radius;
    let mut cheb = Chebyshev::fit(|w| scenarios::wightman_ft(&s, w), omega, r, cfg.cheb_points)?;
    cheb.chop()?;
    let mut out = Vec::with_capacity(order + 1);
    out.push(cheb.at_center());
    for _ in 0..order {
        cheb = cheb.differentiate();
        out.push(cheb.at_center());
    }
    Ok(out)
}

fn check_gate(omega: f64, sigma: f64, beta: f64, sw: &SwitchingFunction) -> Result<f64> {
    let a = match sw.support() {
        Some(a) => a,
        None => {
            return Err(Error::Unsupported(
                "the series needs a band-limited switching".into(),
            ))
        }
    };
    if a > 1.0 {
        return Err(Error::Unsupported(format!(
            "series convergence is only established for A ≤ 1, got A = {a}"
        )));
    }
    let radius = convergence_radius_massless(omega, sigma, beta);
    if radius <= a {
        return Err(Error::ConvergenceGate { radius, support: a });
    }
    Ok(radius)
}

fn validate_inputs(omega: f64, sigma: f64, beta: f64) -> Result<()> {
    if !(omega > 0.0) || !(sigma > 0.0) || !(beta > 0.0) {
        return Err(Error::Domain("series needs Ω, σ, β > 0".into()));
    }
    if !omega.is_finite() || !sigma.is_finite() || !beta.is_finite() {
        return Err(Error::Domain("series needs finite Ω, σ, β".into()));
    }
    Ok(())
}

/// Truncated long-interaction series, gated on `ω̄_c > A` with `A ≤ 1`.
pub fn response_series(
    omega: f64,
    sigma: f64,
    beta: f64,
    sw: &SwitchingFunction,
    cfg: &SeriesConfig,
) -> Result<ResponseResult> {
    validate_inputs(omega, sigma, beta)?;
    check_gate(omega, sigma, beta, sw)?;
    response_series_ungated(omega, sigma, beta, sw, cfg)
}

/// The same sum without the convergence gate, for demonstrating what goes
/// wrong outside it.
pub fn response_series_ungated(
    omega: f64,
    sigma: f64,
    beta: f64,
    sw: &SwitchingFunction,
    cfg: &SeriesConfig,
) -> Result<ResponseResult> {
    validate_inputs(omega, sigma, beta)?;
    if !sw.has_exact_moments() {
        return Err(Error::Unsupported("tabulated switchings have no exact moments".into()));
    }
    let k_max = cfg.k_max as usize;
    let derivs = wightman_derivatives(omega, sigma, beta, 2 * k_max, cfg)?;
    let mut total = derivs[0];
    let mut fact = 1.0;
    let mut last = 0.0;
    for k in 1..=k_max {
        let j = 2 * k;
        fact *= ((j - 1) * j) as f64;
        last = sw.derivative_norm(k as u32)? * derivs[j] * sigma.powi(-(j as i32)) / fact;
        total += last;
    }
    Ok(ResponseResult {
        value: total,
        error_estimate: last.abs(),
        method: Method::Series,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaEdrExpansion {
    pub value: f64,
    /// Set outside `(β/σ)² ≤ 0.1`, `βΩ ≤ 1`.
    pub validity_warning: bool,
}

/// `β[1 - (‖χ′‖²/12)(1 - (βΩ)²/60)(β/σ)²]`. Pass `f64::INFINITY` for σ = ∞.
pub fn beta_edr_expansion(omega: f64, sigma: f64, beta: f64, sw: &SwitchingFunction) -> Result<BetaEdrExpansion> {
    if !(beta > 0.0) || !(sigma > 0.0) {
        return Err(Error::Domain("expansion needs β, σ > 0".into()));
    }
    let ratio2 = (beta / sigma).powi(2);
    let bo2 = (beta * omega).powi(2);
    let n1 = sw.derivative_norm(1)?;
    Ok(BetaEdrExpansion {
        value: beta * (1.0 - n1 / 12.0 * (1.0 - bo2 / 60.0) * ratio2),
        validity_warning: ratio2 > 0.1 || (beta * omega).abs() > 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::response::{beta_edr, response_function, ResponseQuery, Sigma};

    fn band() -> SwitchingFunction {
        SwitchingFunction::band_limited(1.0).unwrap()
    }

    fn quadrature(omega: f64, sigma: f64, beta: f64, sw: &SwitchingFunction) -> f64 {
        let s = Scenario::inertial(3, 0.0, 0.0, beta).unwrap();
        let mut q = ResponseQuery::new(omega, Sigma::Finite(sigma), s, sw.clone());
        q.quad.rel_tol = 1e-13;
        response_function(&q).unwrap().value
    }

    #[test]
    fn radius_values() {
        assert!((convergence_radius_massless(1.0, 2.0, 2.0 * PI) - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!((convergence_radius_massless(1.0, 3.0, 1e6) - 3.0).abs() < 1e-9);
        for beta in [0.1, 1.0, 10.0] {
            assert!(convergence_radius_massless(1.0, 1.0, beta) >= 1.0);
        }
    }

    #[test]
    fn derivatives_of_planck_spectrum() {
        // W̃ = ω/(2π(e^{βω}-1)); compare low orders with closed forms at β = 1
        let d = wightman_derivatives(1.0, 5.0, 1.0, 2, &SeriesConfig::default()).unwrap();
        let e = 1f64.exp();
        let w = 1.0 / (2.0 * PI * (e - 1.0));
        let w1 = (1.0 / (e - 1.0) - e / (e - 1.0).powi(2)) / (2.0 * PI);
        assert!((d[0] - w).abs() < 1e-14);
        assert!((d[1] - w1).abs() < 1e-12);
    }

    #[test]
    fn leading_term_is_wightman() {
        let cfg = SeriesConfig {
            k_max: 0,
            ..Default::default()
        };
        let r = response_series(1.0, 5.0, 1.0, &band(), &cfg).unwrap();
        let s = Scenario::inertial(3, 0.0, 0.0, 1.0).unwrap();
        let w = scenarios::wightman_ft(&s, 1.0).unwrap();
        assert!((r.value / w - 1.0).abs() < 1e-13, "{} vs {w}", r.value);
        assert_eq!(r.method, Method::Series);
    }

    #[test]
    fn matches_quadrature() {
        let r = response_series(1.0, 5.0, 1.0, &band(), &SeriesConfig::default()).unwrap();
        let q = quadrature(1.0, 5.0, 1.0, &band());
        assert!(((r.value - q) / q).abs() < 1e-6, "{} {q}", r.value);
    }

    #[test]
    fn first_correction_matches_second_difference() {
        let c0 = SeriesConfig { k_max: 0, ..Default::default() };
        let c1 = SeriesConfig { k_max: 1, ..Default::default() };
        let (om, sig, beta) = (1.0, 5.0, 1.0);
        let diff = response_series(om, sig, beta, &band(), &c1).unwrap().value
            - response_series(om, sig, beta, &band(), &c0).unwrap().value;
        let s = Scenario::inertial(3, 0.0, 0.0, beta).unwrap();
        let h = 1e-3;
        let w = |x: f64| scenarios::wightman_ft(&s, x).unwrap();
        let d2 = (w(om + h) - 2.0 * w(om) + w(om - h)) / (h * h);
        let want = band().derivative_norm(1).unwrap() / 2.0 * d2 / (sig * sig);
        assert!(((diff - want) / want).abs() < 1e-4);
    }

    #[test]
    fn gate_and_family_checks() {
        // ω̄_c = 0.1·√(1 + (2π/0.1)²)·... < 1 for tiny σ
        assert!(matches!(
            response_series(1.0, 0.1, 10.0, &band(), &SeriesConfig::default()),
            Err(Error::ConvergenceGate { .. })
        ));
        let wide = SwitchingFunction::band_limited(2.0).unwrap();
        assert!(response_series(1.0, 5.0, 1.0, &wide, &SeriesConfig::default()).is_err());
        assert!(response_series(1.0, 5.0, 1.0, &SwitchingFunction::Gaussian, &SeriesConfig::default()).is_err());
    }

    #[test]
    fn expansion_limits_and_agreement() {
        let sw = band();
        assert_eq!(beta_edr_expansion(0.5, f64::INFINITY, 2.0, &sw).unwrap().value, 2.0);
        let e = beta_edr_expansion(0.1, 10.0, 1.0, &sw).unwrap();
        assert!(!e.validity_warning && e.value < 1.0);
        let s = Scenario::inertial(3, 0.0, 0.0, 1.0).unwrap();
        let mut q = ResponseQuery::new(0.1, Sigma::Finite(10.0), s, sw.clone());
        q.quad.rel_tol = 1e-13;
        let full = beta_edr(&q).unwrap();
        assert!(((e.value - full) / full).abs() < 0.01);
    }
}
