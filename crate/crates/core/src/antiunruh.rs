//! β-derivatives of the response and of `β_EDR`, the weak/strong
//! Anti-Unruh predicates, and grid classification.
//!
//! Weak: `∂_β F > 0` (response falls as the KMS temperature rises).
//! Strong: `∂_β β_EDR < 0` (EDR temperature falls as the KMS temperature rises).

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::response::{self, ResponseQuery, Sigma};
use crate::scenarios::{self, Motion, Scenario};
use crate::switching::SwitchingFunction;

/// Environment variable capping the worker count of [`classify`].
pub const THREADS_ENV: &str = "UNRUH_LAB_THREADS";

/// A derivative is trusted only when it exceeds its error this many times.
pub const RESOLUTION_FACTOR: f64 = 10.0;

/// Finite-difference step `h = max(rel_step·β, min_step)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepControl {
    pub rel_step: f64,
    pub min_step: f64,
    /// Tolerance of the response quadratures behind each difference.
    pub quad_rel_tol: f64,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            rel_step: 1e-4,
            min_step: 1e-6,
            quad_rel_tol: 1e-12,
        }
    }
}

impl StepControl {
    pub fn step(&self, beta: f64) -> f64 {
        (self.rel_step * beta).max(self.min_step)
    }

    pub fn halved(&self) -> Self {
        Self {
            rel_step: 0.5 * self.rel_step,
            min_step: 0.5 * self.min_step,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeEstimate {
    pub value: f64,
    pub error: f64,
    pub step: f64,
}

impl DerivativeEstimate {
    pub fn resolved(&self) -> bool {
        self.value.abs() >= RESOLUTION_FACTOR * self.error
    }

    fn scaled(&self, k: f64) -> Self {
        Self {
            value: k * self.value,
            error: k.abs() * self.error,
            step: self.step,
        }
    }
}

/// Central differences at `h` and `h/2` combined by one Richardson level.
/// `f` returns a value and its absolute error.
fn richardson<F: Fn(f64) -> Result<(f64, f64)>>(f: F, beta: f64, h: f64) -> Result<DerivativeEstimate> {
    if h >= beta {
        return Err(Error::Domain(format!("step {h} not below β = {beta}")));
    }
    let (p1, e_p1) = f(beta + h)?;
    let (m1, e_m1) = f(beta - h)?;
    let (p2, e_p2) = f(beta + 0.5 * h)?;
    let (m2, e_m2) = f(beta - 0.5 * h)?;
    let d1 = (p1 - m1) / (2.0 * h);
    let d2 = (p2 - m2) / h;
    let value = (4.0 * d2 - d1) / 3.0;
    let truncation = (d2 - d1).abs() / 3.0;
    let noise = 4.0 / (3.0 * h) * (e_p2 + e_m2) + (e_p1 + e_m1) / (6.0 * h);
    // last-bit rounding of the samples themselves
    let rounding = 8.0 * f64::EPSILON * (p1.abs() + m1.abs() + p2.abs() + m2.abs()) / h;
    Ok(DerivativeEstimate {
        value,
        error: truncation + noise + rounding,
        step: h,
    })
}

fn kms_query(q: &ResponseQuery) -> Result<()> {
    q.validate()?;
    if !q.scenario.kms() {
        return Err(Error::Unsupported("β-derivatives need a KMS scenario".into()));
    }
    Ok(())
}

fn tightened(q: &ResponseQuery, step: &StepControl) -> ResponseQuery {
    let mut q = q.clone();
    q.quad.rel_tol = q.quad.rel_tol.min(step.quad_rel_tol);
    q
}

/// `∂_β F` with no resolution check.
pub fn estimate_d_response_d_beta(q: &ResponseQuery, step: &StepControl) -> Result<DerivativeEstimate> {
    kms_query(q)?;
    let q = tightened(q, step);
    let beta = q.scenario.beta;
    richardson(
        |b| {
            let r = response::response_function(&q.with_beta(b))?;
            Ok((r.value, r.error_estimate))
        },
        beta,
        step.step(beta),
    )
}

/// `∂_β β_EDR` with no resolution check.
pub fn estimate_d_beta_edr_d_beta(q: &ResponseQuery, step: &StepControl) -> Result<DerivativeEstimate> {
    kms_query(q)?;
    let q = tightened(q, step);
    let beta = q.scenario.beta;
    richardson(|b| response::beta_edr_with_error(&q.with_beta(b)), beta, step.step(beta))
}

fn three_digits(d: DerivativeEstimate, what: &str) -> Result<DerivativeEstimate> {
    if d.error > 1e-3 * d.value.abs() {
        return Err(Error::DerivativeUnresolved(format!(
            "{what} = {:e} ± {:e} after step halving",
            d.value, d.error
        )));
    }
    Ok(d)
}

/// `∂_β F`, rejected unless step halving agrees to three digits.
pub fn d_response_d_beta(q: &ResponseQuery, step: &StepControl) -> Result<DerivativeEstimate> {
    three_digits(estimate_d_response_d_beta(q, step)?, "∂β F")
}

/// `∂_β β_EDR`, rejected unless step halving agrees to three digits.
pub fn d_beta_edr_d_beta(q: &ResponseQuery, step: &StepControl) -> Result<DerivativeEstimate> {
    three_digits(estimate_d_beta_edr_d_beta(q, step)?, "∂β β_EDR")
}

/// Necessary condition for weak Anti-Unruh at frequency `ω`:
/// `ω C̃(ω) > 0` when the commutator ignores β, `∂_β(C̃ P) < 0` otherwise.
pub fn weak_necessary_condition(s: &Scenario, omega: f64) -> bool {
    if s.validate().is_err() || !s.kms() || omega == 0.0 {
        return false;
    }
    if s.beta_independent_commutator() {
        let c = scenarios::commutator_ft_inertial_closed(omega, s.d, s.mass, s.ir_cutoff);
        return omega * c > 0.0;
    }
    // C̃ P = -W̃
    let d = richardson(
        |b| {
            let w = scenarios::wightman_ft(&s.with_beta(b), omega)?;
            Ok((-w, 1e-12 * w.abs()))
        },
        s.beta,
        StepControl::default().step(s.beta),
    );
    matches!(d, Ok(d) if d.resolved() && d.value < 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Weak,
    Strong,
    Both,
    Neither,
    Unresolved,
}

impl Label {
    pub fn is_weak(&self) -> bool {
        matches!(self, Label::Weak | Label::Both)
    }

    pub fn is_strong(&self) -> bool {
        matches!(self, Label::Strong | Label::Both)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Weak => "weak",
            Label::Strong => "strong",
            Label::Both => "both",
            Label::Neither => "neither",
            Label::Unresolved => "unresolved",
        })
    }
}

/// Grid to classify. Cells run over `omega × sigma × t_kms × mass` with
/// the last axis fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub motion: Motion,
    pub d: u8,
    pub ir_cutoff: f64,
    pub switching: SwitchingFunction,
    pub omega: Vec<f64>,
    pub sigma: Vec<Sigma>,
    pub t_kms: Vec<f64>,
    pub mass: Vec<f64>,
    pub step: StepControl,
    /// Tolerance of the plain (non-differentiated) response evaluations.
    pub quad_rel_tol: f64,
}

impl ScanSpec {
    pub fn new(motion: Motion, d: u8, ir_cutoff: f64, switching: SwitchingFunction) -> Self {
        Self {
            motion,
            d,
            ir_cutoff,
            switching,
            omega: vec![],
            sigma: vec![],
            t_kms: vec![],
            mass: vec![],
            step: StepControl::default(),
            quad_rel_tol: 1e-10,
        }
    }

    pub fn len(&self) -> usize {
        self.omega.len() * self.sigma.len() * self.t_kms.len() * self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::Domain("scan grid has an empty axis".into()));
        }
        if self.omega.iter().any(|w| !(w.is_finite() && *w != 0.0)) {
            return Err(Error::Domain("Ω axis must be finite and avoid 0".into()));
        }
        if self.t_kms.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
            return Err(Error::Domain("T_KMS axis must be positive".into()));
        }
        if self.mass.iter().any(|m| !(*m >= 0.0 && m.is_finite())) {
            return Err(Error::Domain("mass axis must be ≥ 0".into()));
        }
        if self.sigma.iter().any(|s| matches!(s, Sigma::Finite(v) if !(*v > 0.0))) {
            return Err(Error::Domain("σ axis must be positive".into()));
        }
        Scenario::new(self.motion, self.d, 0.0, self.ir_cutoff, 1.0)?;
        Ok(())
    }

    fn cell_inputs(&self, index: usize) -> (f64, Sigma, f64, f64) {
        let nm = self.mass.len();
        let nt = self.t_kms.len();
        let ns = self.sigma.len();
        let m = self.mass[index % nm];
        let t = self.t_kms[(index / nm) % nt];
        let s = self.sigma[(index / (nm * nt)) % ns];
        let w = self.omega[index / (nm * nt * ns)];
        (w, s, t, m)
    }
}

/// One classified cell; derivatives are with respect to `T_KMS`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub omega: f64,
    pub sigma: Sigma,
    pub t_kms: f64,
    pub mass: f64,
    pub df_dt: f64,
    pub dtedr_dt: f64,
    pub label: Label,
    pub fd_step: f64,
    /// Larger of the two derivative error estimates.
    pub fd_err: f64,
    pub df_dt_err: f64,
    pub dtedr_dt_err: f64,
    /// Why a cell is unresolved, if it is.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionScan {
    pub spec: ScanSpec,
    pub cells: Vec<Cell>,
}

impl RegionScan {
    pub fn count(&self, pred: impl Fn(&Cell) -> bool) -> usize {
        self.cells.iter().filter(|c| pred(c)).count()
    }
}

/// `∂F/∂T` and `∂T_EDR/∂T` for one query.
pub fn temperature_derivatives(
    q: &ResponseQuery,
    step: &StepControl,
) -> Result<(DerivativeEstimate, DerivativeEstimate)> {
    let beta = q.scenario.beta;
    let df = estimate_d_response_d_beta(q, step)?;
    let db = estimate_d_beta_edr_d_beta(q, step)?;
    let b_edr = response::beta_edr(&tightened(q, step))?;
    // ∂/∂T = -β² ∂/∂β; T_EDR = 1/β_EDR
    let df_dt = df.scaled(-beta * beta);
    let dtedr_dt = db.scaled((beta / b_edr).powi(2));
    Ok((df_dt, dtedr_dt))
}

/// `∂F/∂T_KMS = -β² ∂_β F`, unchecked.
pub fn estimate_d_response_d_t(q: &ResponseQuery, step: &StepControl) -> Result<DerivativeEstimate> {
    let beta = q.scenario.beta;
    Ok(estimate_d_response_d_beta(q, step)?.scaled(-beta * beta))
}

pub fn label_from(df_dt: &DerivativeEstimate, dtedr_dt: &DerivativeEstimate) -> Label {
    if !df_dt.resolved() || !dtedr_dt.resolved() {
        return Label::Unresolved;
    }
    match (df_dt.value < 0.0, dtedr_dt.value < 0.0) {
        (true, true) => Label::Both,
        (true, false) => Label::Weak,
        (false, true) => Label::Strong,
        (false, false) => Label::Neither,
    }
}

fn classify_cell(spec: &ScanSpec, index: usize) -> Cell {
    let (omega, sigma, t, m) = spec.cell_inputs(index);
    let mut cell = Cell {
        omega,
        sigma,
        t_kms: t,
        mass: m,
        df_dt: f64::NAN,
        dtedr_dt: f64::NAN,
        label: Label::Unresolved,
        fd_step: spec.step.step(1.0 / t),
        fd_err: f64::NAN,
        df_dt_err: f64::NAN,
        dtedr_dt_err: f64::NAN,
        note: None,
    };
    let scenario = match Scenario::new(spec.motion, spec.d, m, spec.ir_cutoff, 1.0 / t) {
        Ok(s) => s,
        Err(e) => {
            cell.note = Some(e.to_string());
            return cell;
        }
    };
    let mut q = ResponseQuery::new(omega, sigma, scenario, spec.switching.clone());
    q.quad.rel_tol = spec.quad_rel_tol;
    match temperature_derivatives(&q, &spec.step) {
        Ok((df, dt)) => {
            cell.df_dt = df.value;
            cell.dtedr_dt = dt.value;
            cell.df_dt_err = df.error;
            cell.dtedr_dt_err = dt.error;
            cell.fd_err = df.error.max(dt.error);
            cell.fd_step = df.step;
            cell.label = label_from(&df, &dt);
            if cell.label == Label::Unresolved {
                cell.note = Some("derivative within 10× its error estimate".into());
            }
        }
        Err(e) => cell.note = Some(e.to_string()),
    }
    cell
}

/// Worker count from `UNRUH_LAB_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Rayon pool sized by [`thread_cap`], or rayon's default.
pub fn scan_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))
}

/// Labels every cell. Cells are evaluated in parallel and returned in index
/// order; failures become `unresolved` cells carrying a note.
pub fn classify(spec: &ScanSpec) -> Result<RegionScan> {
    spec.validate()?;
    let pool = scan_pool()?;
    let cells = pool.install(|| {
        (0..spec.len())
            .into_par_iter()
            .map(|i| classify_cell(spec, i))
            .collect::<Vec<_>>()
    });
    Ok(RegionScan {
        spec: spec.clone(),
        cells,
    })
}
