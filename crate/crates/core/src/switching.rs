//! Unit-norm switching functions `χ(u)`, `u = τ/σ`, with their Fourier
//! transforms `χ̃(ω̄) = ∫ χ(u) e^{-iω̄u} du` and the spectral moments
//! `‖χ^(k)‖₂² = (1/2π) ∫ ω̄^{2k} |χ̃(ω̄)|² dω̄`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, QuadConfig};

/// `|χ̃|² = 2√π e^{-ω̄²}` is below 4e-44 past this.
pub const GAUSSIAN_TRUNCATION: f64 = 10.0;

/// Shape of `|χ̃|²` on the band `[-A, A]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BandProfile {
    /// `|χ̃|² = π/A`, so `χ(u) = sin(Au)/(u √(πA))`.
    Flat,
    /// `|χ̃|² = (2π/A)(1 - |ω̄|/A)`.
    Triangular,
}

/// Samples of `χ` on a uniform grid; normalized on construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tabulated {
    pub u0: f64,
    pub du: f64,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SwitchingFunction {
    /// `χ(u) = π^{-1/4} e^{-u²/2}`.
    Gaussian,
    BandLimited { half_width: f64, profile: BandProfile },
    Tabulated(Tabulated),
}

impl SwitchingFunction {
    pub fn gaussian() -> Self {
        Self::Gaussian
    }

    /// Flat band-limited switching with Fourier support `[-A, A]`.
    pub fn band_limited(half_width: f64) -> Result<Self> {
        Self::band_limited_with(half_width, BandProfile::Flat)
    }

    pub fn band_limited_with(half_width: f64, profile: BandProfile) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::Domain(format!("band half-width must be positive, got {half_width}")));
        }
        Ok(Self::BandLimited {
            half_width,
            profile,
        })
    }

    /// Builds a tabulated switching from samples `χ(u0 + i du)`, rescaled to
    /// unit L² norm.
    pub fn tabulated(u0: f64, du: f64, values: Vec<f64>) -> Result<Self> {
        if !(du > 0.0) || values.len() < 4 {
            return Err(Error::Domain("tabulated switching needs du > 0 and ≥ 4 samples".into()));
        }
        let norm2: f64 = values.iter().map(|v| v * v).sum::<f64>() * du;
        if !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(Error::Domain("tabulated switching has zero or infinite norm".into()));
        }
        let s = norm2.sqrt().recip();
        Ok(Self::Tabulated(Tabulated {
            u0,
            du,
            values: values.into_iter().map(|v| v * s).collect(),
        }))
    }

    /// Half-width of the Fourier support, if compact.
    pub fn support(&self) -> Option<f64> {
        match self {
            Self::BandLimited { half_width, .. } => Some(*half_width),
            _ => None,
        }
    }

    /// Range of `ω̄` the response quadrature integrates over.
    pub fn truncation(&self) -> f64 {
        match self {
            Self::Gaussian => GAUSSIAN_TRUNCATION,
            Self::BandLimited { half_width, .. } => *half_width,
            Self::Tabulated(t) => PI / t.du,
        }
    }

    /// Whether exact spectral moments are available (needed by the series).
    pub fn has_exact_moments(&self) -> bool {
        !matches!(self, Self::Tabulated(_))
    }

    /// `χ(u)`.
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Self::Gaussian => PI.powf(-0.25) * (-0.5 * u * u).exp(),
            Self::BandLimited {
                half_width: a,
                profile: BandProfile::Flat,
            } => {
                let x = a * u;
                let sinc = if x.abs() < 1e-8 { 1.0 - x * x / 6.0 } else { x.sin() / x };
                (a / PI).sqrt() * sinc
            }
            Self::BandLimited { half_width: a, .. } => {
                // inverse transform of the real even χ̃
                let qc = QuadConfig::default();
                quad::adaptive(|w| self.fourier(w) * (w * u).cos(), 0.0, *a, &[], &qc)
                    .map(|r| r.value / PI)
                    .unwrap_or(f64::NAN)
            }
            Self::Tabulated(t) => {
                // band-limited (sinc) interpolation of the samples
                t.values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let x = PI * (u - t.u0 - i as f64 * t.du) / t.du;
                        let s = if x.abs() < 1e-12 { 1.0 } else { x.sin() / x };
                        v * s
                    })
                    .sum()
            }
        }
    }

    /// `χ̃(ω̄)` for the real even families; for tabulated data the modulus.
    pub fn fourier(&self, omega_bar: f64) -> f64 {
        match self {
            Self::Gaussian => gaussian_fourier(omega_bar),
            _ => self.fourier_sq(omega_bar).sqrt(),
        }
    }

    /// `|χ̃(ω̄)|²`, the weight in the response integral.
    pub fn fourier_sq(&self, omega_bar: f64) -> f64 {
        match self {
            Self::Gaussian => 2.0 * PI.sqrt() * (-omega_bar * omega_bar).exp(),
            Self::BandLimited { half_width: a, profile } => {
                let w = omega_bar.abs();
                if w > *a {
                    return 0.0;
                }
                match profile {
                    BandProfile::Flat => PI / a,
                    BandProfile::Triangular => 2.0 * PI / a * (1.0 - w / a),
                }
            }
            Self::Tabulated(t) => {
                let (mut re, mut im) = (0.0, 0.0);
                for (i, v) in t.values.iter().enumerate() {
                    let u = t.u0 + i as f64 * t.du;
                    re += v * (omega_bar * u).cos();
                    im -= v * (omega_bar * u).sin();
                }
                (re * re + im * im) * t.du * t.du
            }
        }
    }

    /// `‖χ^(k)‖₂²`.
    pub fn derivative_norm(&self, k: u32) -> Result<f64> {
        let v = match self {
            // (1/√π) Γ(k + 1/2) = (2k-1)!!/2^k
            Self::Gaussian => (1..=k).fold(1.0, |acc, j| acc * (2.0 * j as f64 - 1.0) / 2.0),
            Self::BandLimited { half_width: a, profile } => {
                let k = k as i32;
                match profile {
                    BandProfile::Flat => a.powi(2 * k) / (2 * k + 1) as f64,
                    BandProfile::Triangular => {
                        2.0 * a.powi(2 * k) / ((2 * k + 1) as f64 * (2 * k + 2) as f64)
                    }
                }
            }
            Self::Tabulated(_) => {
                let cut = self.truncation();
                let qc = QuadConfig {
                    rel_tol: 1e-10,
                    abs_tol: 1e-300,
                    max_subdivisions: 4000,
                };
                let r = quad::adaptive(
                    |w| w.powi(2 * k as i32) * self.fourier_sq(w),
                    -cut,
                    cut,
                    &[0.0],
                    &qc,
                )?;
                r.value / (2.0 * PI)
            }
        };
        if !v.is_finite() {
            return Err(Error::Overflow(format!("derivative norm of order {k}")));
        }
        Ok(v)
    }

    /// Bracket `2A^{2k+1} X_inf/(2k+1) ≤ ∫ ω̄^{2k}|χ̃|² ≤ 2A^{2k+1} X_sup/(2k+1)`
    /// on the raw (not 1/2π-normalized) moment. Band-limited families only.
    pub fn moment_bounds(&self, k: u32) -> Result<(f64, f64)> {
        let (a, profile) = match self {
            Self::BandLimited { half_width, profile } => (*half_width, *profile),
            _ => return Err(Error::Unsupported("moment bounds need a band-limited switching".into())),
        };
        let (x_inf, x_sup) = match profile {
            BandProfile::Flat => (PI / a, PI / a),
            BandProfile::Triangular => (0.0, 2.0 * PI / a),
        };
        let c = 2.0 * a.powi(2 * k as i32 + 1) / (2 * k + 1) as f64;
        Ok((c * x_inf, c * x_sup))
    }
}

/// `χ̃(ω̄) = √(2π) π^{-1/4} e^{-ω̄²/2}` of the Gaussian switching.
pub fn gaussian_fourier(omega_bar: f64) -> f64 {
    (2.0 * PI).sqrt() * PI.powf(-0.25) * (-0.5 * omega_bar * omega_bar).exp()
}
