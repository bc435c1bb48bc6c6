//! Detector response `F(Ω, σ) = (1/2π) ∫ |χ̃(ω̄)|² W̃(Ω + ω̄/σ) dω̄`, its
//! adiabatic limit, transition probabilities and the excitation-to-decay
//! ratio.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, QuadConfig};
use crate::scenarios::{self, Motion, Scenario};
use crate::switching::SwitchingFunction;

/// Interaction timescale: finite or the eternal-switching limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sigma {
    Finite(f64),
    Infinite,
}

impl Sigma {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Sigma::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            Sigma::Finite(s) => Some(s),
            Sigma::Infinite => None,
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::Finite(s) => write!(f, "{s}"),
            Sigma::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Sigma {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Sigma::Infinite);
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::Domain(format!("σ must be a number or \"inf\", got {s:?}")))?;
        if v.is_infinite() && v > 0.0 {
            return Ok(Sigma::Infinite);
        }
        if !(v > 0.0) {
            return Err(Error::Domain(format!("σ must be positive, got {v}")));
        }
        Ok(Sigma::Finite(v))
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Quadrature,
    Series,
    Limit,
    Asymptotic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Quadrature => "quadrature",
            Method::Series => "series",
            Method::Limit => "limit",
            Method::Asymptotic => "asymptotic",
        })
    }
}

/// Tolerance for the ω̄ integral. `truncation` overrides the switching's
/// default integration half-range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseQuadConfig {
    pub rel_tol: f64,
    pub truncation: Option<f64>,
    pub max_subdivisions: usize,
}

impl Default for ResponseQuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            truncation: None,
            max_subdivisions: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseQuery {
    pub omega: f64,
    pub sigma: Sigma,
    pub scenario: Scenario,
    pub switching: SwitchingFunction,
    pub quad: ResponseQuadConfig,
}

impl ResponseQuery {
    pub fn new(omega: f64, sigma: Sigma, scenario: Scenario, switching: SwitchingFunction) -> Self {
        Self {
            omega,
            sigma,
            scenario,
            switching,
            quad: ResponseQuadConfig::default(),
        }
    }

    pub fn with_omega(&self, omega: f64) -> Self {
        Self { omega, ..self.clone() }
    }

    pub fn with_beta(&self, beta: f64) -> Self {
        Self {
            scenario: self.scenario.with_beta(beta),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if !self.omega.is_finite() {
            return Err(Error::Domain(format!("Ω must be finite, got {}", self.omega)));
        }
        if let Sigma::Finite(s) = self.sigma {
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::Domain(format!("σ must be positive, got {s}")));
            }
        }
        if !(self.quad.rel_tol > 0.0) {
            return Err(Error::Domain("quadrature rel_tol must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseResult {
    pub value: f64,
    pub error_estimate: f64,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorCoupling {
    pub lambda: f64,
    /// `|⟨e|μ(0)|g⟩|`.
    pub mu_matrix_elem: f64,
}

impl DetectorCoupling {
    pub fn new(lambda: f64, mu_matrix_elem: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !(mu_matrix_elem >= 0.0) {
            return Err(Error::Domain("coupling and matrix element must be ≥ 0".into()));
        }
        Ok(Self {
            lambda,
            mu_matrix_elem,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionProbability {
    pub probability: f64,
    pub response: ResponseResult,
    /// Set when the leading-order probability exceeds 0.1.
    pub perturbative_warning: bool,
}

/// Points where `W̃(ω)` is not smooth: ω = 0 and the inertial thresholds.
fn critical_frequencies(s: &Scenario) -> Vec<f64> {
    let mut pts = vec![0.0];
    if s.motion == Motion::InertialThermal {
        for c in [s.mass, s.ir_cutoff] {
            if c > 0.0 {
                pts.push(c);
                pts.push(-c);
            }
        }
    }
    pts
}

/// The inertial d = 1 massive spectrum has inverse square-root edges.
fn has_edge_singularity(s: &Scenario) -> bool {
    s.motion == Motion::InertialThermal && s.d == 1 && s.mass > 0.0 && s.mass >= s.ir_cutoff
}

/// `∫_a^b f` by adaptive Gauss-Kronrod, optionally through the map
/// `x = a + (b-a)(3t² - 2t³)` which removes inverse square-root end
/// singularities.
fn integrate_segment<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    smooth_ends: bool,
    qc: &QuadConfig,
) -> Result<quad::Integral> {
    if smooth_ends {
        let w = b - a;
        quad::adaptive(
            |t: f64| {
                // measured from the nearer end so the offset from an edge stays exact
                let x = if t <= 0.5 {
                    a + w * t * t * (3.0 - 2.0 * t)
                } else {
                    let s = 1.0 - t;
                    b - w * s * s * (3.0 - 2.0 * s)
                };
                let j = 6.0 * w * t * (1.0 - t);
                if j == 0.0 {
                    0.0
                } else {
                    f(x) * j
                }
            },
            0.0,
            1.0,
            &[],
            qc,
        )
    } else {
        quad::adaptive(f, a, b, &[], qc)
    }
}

/// `F(Ω, σ)`. At σ = ∞ this is `W̃(Ω)`.
pub fn response_function(q: &ResponseQuery) -> Result<ResponseResult> {
    q.validate()?;
    let s = &q.scenario;
    if !s.kms() {
        return Err(Error::Unsupported(
            "response needs a stationary (KMS) scenario; accelerated motion with an IR cutoff is not"
                .into(),
        ));
    }
    let sigma = match q.sigma {
        Sigma::Infinite => {
            let w = scenarios::wightman_ft(s, q.omega)?;
            return Ok(ResponseResult {
                value: w,
                error_estimate: 0.0,
                method: Method::Limit,
            });
        }
        Sigma::Finite(v) => v,
    };
    if s.infrared_divergent() {
        return Err(Error::InfraredDivergence(format!(
            "massless d={} spectrum is not integrable at ω = 0 without an IR cutoff",
            s.d
        )));
    }
    let cut = q.quad.truncation.unwrap_or_else(|| q.switching.truncation());
    let mut edges = vec![-cut];
    for c in critical_frequencies(s) {
        let wb = sigma * (c - q.omega);
        if wb > -cut && wb < cut {
            edges.push(wb);
        }
    }
    edges.push(cut);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |wb: f64| -> f64 {
        let weight = q.switching.fourier_sq(wb);
        if weight == 0.0 {
            return 0.0;
        }
        let omega = q.omega + wb / sigma;
        match scenarios::wightman_ft(s, omega) {
            Ok(w) => weight * w,
            Err(Error::Singular(_)) if s.mass == 0.0 && s.d == 3 => weight / (2.0 * PI * s.beta),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let qc = QuadConfig {
        rel_tol: q.quad.rel_tol,
        abs_tol: 0.0,
        max_subdivisions: q.quad.max_subdivisions,
    };
    let smooth = has_edge_singularity(s);
    let mut value = 0.0;
    let mut err = 0.0;
    for w in edges.windows(2) {
        let r = integrate_segment(&integrand, w[0], w[1], smooth, &qc);
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        let r = r?;
        value += r.value;
        err += r.abs_error;
    }
    let norm = 1.0 / (2.0 * PI);
    Ok(ResponseResult {
        value: value * norm,
        error_estimate: err * norm,
        method: Method::Quadrature,
    })
}

/// `P = λ² |⟨e|μ|g⟩|² σ F(±Ω, σ)`.
pub fn transition_probability(
    q: &ResponseQuery,
    c: &DetectorCoupling,
    excitation: bool,
) -> Result<TransitionProbability> {
    let sigma = q
        .sigma
        .finite()
        .ok_or_else(|| Error::Domain("transition probability needs a finite σ".into()))?;
    let gap = if excitation { q.omega.abs() } else { -q.omega.abs() };
    let r = response_function(&q.with_omega(gap))?;
    let p = c.lambda * c.lambda * c.mu_matrix_elem * c.mu_matrix_elem * sigma * r.value;
    Ok(TransitionProbability {
        probability: p,
        response: r,
        perturbative_warning: p > 0.1,
    })
}

/// Excitation and de-excitation responses `(F(Ω), F(-Ω))`.
pub fn response_pair(q: &ResponseQuery) -> Result<(ResponseResult, ResponseResult)> {
    let up = response_function(q)?;
    let down = response_function(&q.with_omega(-q.omega))?;
    Ok((up, down))
}

fn floor_guard(down: f64) -> Result<()> {
    if !(down > f64::MIN_POSITIVE * 1e10) {
        return Err(Error::BelowFloor(format!("F(-Ω) = {down:e}")));
    }
    Ok(())
}

/// `R = F(Ω)/F(-Ω)`.
pub fn edr_ratio(q: &ResponseQuery) -> Result<f64> {
    if q.omega == 0.0 {
        return Ok(1.0);
    }
    let (up, down) = response_pair(q)?;
    floor_guard(down.value)?;
    Ok(up.value / down.value)
}

/// `β_EDR = -ln R / Ω`, with the propagated quadrature error.
pub fn beta_edr_with_error(q: &ResponseQuery) -> Result<(f64, f64)> {
    if q.omega == 0.0 {
        return Err(Error::Domain("β_EDR is undefined at Ω = 0".into()));
    }
    let (up, down) = response_pair(q)?;
    floor_guard(down.value)?;
    if !(up.value > 0.0) {
        return Err(Error::BelowFloor(format!("F(Ω) = {:e}", up.value)));
    }
    let b = (down.value.ln() - up.value.ln()) / q.omega;
    let e = (up.error_estimate / up.value + down.error_estimate / down.value) / q.omega.abs();
    Ok((b, e))
}

pub fn beta_edr(q: &ResponseQuery) -> Result<f64> {
    beta_edr_with_error(q).map(|(b, _)| b)
}
