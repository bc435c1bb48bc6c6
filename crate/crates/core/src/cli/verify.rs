//! Invariant suite behind `unruh-lab verify`: detailed balance, commutator
//! symmetry, no-go grids and oracle equivalences at desk-scale sizes.

use std::f64::consts::PI;
use std::fmt;

use crate::antiunruh::{self, Label, ScanSpec, StepControl};
use crate::asymptotics;
use crate::error::Result;
use crate::response::{self, ResponseQuery, Sigma};
use crate::scenarios::{self, Motion, Scenario};
use crate::series::{self, SeriesConfig};
use crate::specfun;
use crate::switching::SwitchingFunction;

/// Deliberate defects for exercising the suite itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Fault {
    #[default]
    None,
    /// Flip the sign of every commutator the suite inspects.
    CommutatorSign,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag}  {:width$}  {}", c.name, c.detail)?;
        }
        let n = self.checks.iter().filter(|c| c.passed).count();
        writeln!(f, "{n}/{} checks passed", self.checks.len())
    }
}

struct Suite {
    fault: Fault,
}

impl Suite {
    fn commutator(&self, s: &Scenario, w: f64) -> Result<f64> {
        let c = scenarios::commutator_ft(s, w)?;
        Ok(match self.fault {
            Fault::None => c,
            Fault::CommutatorSign => -c,
        })
    }
}

fn balance_scenarios() -> Vec<Scenario> {
    let mut out = Vec::new();
    for d in [1, 3] {
        for m in [0.0, 1.0] {
            for lam in [0.0, 1.0] {
                out.push(Scenario::inertial(d, m, lam, 1.0).unwrap());
            }
        }
        for m in [0.1, 1.0] {
            out.push(Scenario::accelerated(d, m, 1.0).unwrap());
        }
    }
    out
}

fn outcome(name: &'static str, r: Result<(bool, String)>) -> Check {
    match r {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn detailed_balance() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for s in balance_scenarios() {
        for beta in [0.1, 1.0, 20.0] {
            let s = s.with_beta(beta);
            for w in [0.1, 1.0, 5.0, 20.0] {
                for w in [w, -w] {
                    worst = worst.max(scenarios::detailed_balance_residual(&s, w)?);
                }
            }
        }
    }
    Ok((worst < 1e-8, format!("max residual {worst:.3e} (tol 1e-8)")))
}

fn oddness(suite: &Suite) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for s in balance_scenarios() {
        for w in [0.3, 2.0, 7.0] {
            let a = suite.commutator(&s, w)?;
            let b = suite.commutator(&s, -w)?;
            let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
            worst = worst.max((a + b).abs() / scale);
        }
    }
    Ok((worst < 1e-10, format!("max |C(ω)+C(-ω)|/|C| {worst:.3e}")))
}

fn factorization(suite: &Suite) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for s in balance_scenarios().into_iter().filter(|s| s.beta_independent_commutator()) {
        for w in [0.3, 2.0, 7.0, -0.3, -2.0, -7.0] {
            let c = suite.commutator(&s, w)?;
            if c == 0.0 {
                continue;
            }
            let expected = -c * specfun::planck(w, s.beta)?;
            let got = scenarios::wightman_ft(&s, w)?;
            worst = worst.max(((got - expected) / got).abs());
        }
    }
    Ok((worst < 1e-12, format!("max rel. deviation of W from -C·P {worst:.3e}")))
}

fn commutator_sign(suite: &Suite) -> Result<(bool, String)> {
    let mut bad = 0;
    for s in balance_scenarios() {
        for w in [0.3, 2.0, 7.0] {
            if w * suite.commutator(&s, w)? > 0.0 {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("{bad} samples with ω·C(ω) > 0")))
}

fn closed_form() -> Result<(bool, String)> {
    let s = Scenario::inertial(3, 0.0, 0.0, 1.0)?;
    let q = ResponseQuery::new(1.0, Sigma::Infinite, s, SwitchingFunction::gaussian());
    let got = response::response_function(&q)?.value;
    let want = 1.0 / (2.0 * PI * (1f64.exp() - 1.0));
    let rel = ((got - want) / want).abs();
    Ok((rel < 1e-12, format!("F = {got:.12} vs 1/(2π(e-1)), rel {rel:.1e}")))
}

fn thermalization() -> Result<(bool, String)> {
    let s = Scenario::inertial(3, 0.0, 0.0, 1.0)?;
    let q = ResponseQuery::new(1.0, Sigma::Finite(1e3), s, SwitchingFunction::gaussian());
    let r = response::edr_ratio(&q)?;
    let rel = (r / (-1f64).exp() - 1.0).abs();
    Ok((rel <= 1e-3, format!("σΩ = 1e3: |R/e^(-βΩ) - 1| = {rel:.3e} (tol 1e-3)")))
}

fn series_oracle() -> Result<(bool, String)> {
    let sw = SwitchingFunction::band_limited(1.0)?;
    let (w, sigma, beta) = (1.0, 5.0, 1.0);
    let ser = series::response_series(w, sigma, beta, &sw, &SeriesConfig::default())?.value;
    let s = Scenario::inertial(3, 0.0, 0.0, beta)?;
    let quad = response::response_function(&ResponseQuery::new(w, Sigma::Finite(sigma), s, sw))?.value;
    let rel = ((ser - quad) / quad).abs();
    Ok((rel <= 1e-6, format!("σΩ = 5, βΩ = 1: rel {rel:.3e} (tol 1e-6)")))
}

fn no_go() -> Result<(bool, String)> {
    let mut hits = 0;
    let mut unresolved = 0;
    let mut total = 0;
    let grids = [
        (Motion::InertialThermal, 3, vec![Sigma::Finite(1.0), Sigma::Infinite]),
        (Motion::InertialThermal, 1, vec![Sigma::Infinite]),
        (Motion::AcceleratedVacuum, 3, vec![Sigma::Finite(1.0), Sigma::Infinite]),
    ];
    for (motion, d, sigma) in grids {
        let mut spec = ScanSpec::new(motion, d, 0.0, SwitchingFunction::gaussian());
        spec.omega = vec![0.5, 5.0];
        spec.sigma = sigma;
        spec.t_kms = vec![0.5, 2.0];
        spec.mass = vec![0.0];
        let scan = antiunruh::classify(&spec)?;
        hits += scan.count(|c| c.label.is_weak() || c.label.is_strong());
        unresolved += scan.count(|c| c.label == Label::Unresolved);
        total += scan.cells.len();
    }
    Ok((
        hits == 0,
        format!("{hits} Anti-Unruh cells of {total} ({unresolved} unresolved)"),
    ))
}

fn weak_existence() -> Result<(bool, String)> {
    let s = Scenario::accelerated(1, 1.0, 0.2)?;
    let q = ResponseQuery::new(2.0, Sigma::Infinite, s, SwitchingFunction::gaussian());
    let d = antiunruh::estimate_d_response_d_t(&q, &StepControl::default())?;
    Ok((
        d.value < 0.0 && d.resolved(),
        format!("m = 1, Ω = 2, T = 5, σ = ∞: dF/dT = {:.4e} ± {:.1e}", d.value, d.error),
    ))
}

fn stationarity() -> Result<(bool, String)> {
    let inertial = scenarios::stationarity_defect(0.5, 0.0, 1.0, 1.0, 0.0, 3.0)?;
    let no_cut = scenarios::stationarity_defect(0.0, 1.0, 1.0, 1.0, 0.0, 3.0)?;
    let broken = scenarios::stationarity_defect(0.5, 1.0, 1.0, 1.0, 0.0, 3.0)?;
    Ok((
        inertial < 1e-8 && no_cut < 1e-8 && broken > 1e-7,
        format!("a = 0: {inertial:.1e}, Λ = 0: {no_cut:.1e}, Λ = 0.5 a = 1: {broken:.3e}"),
    ))
}

fn large_mass() -> Result<(bool, String)> {
    let exact = scenarios::wightman_ft(&Scenario::accelerated(1, 100.0, 1.0)?, 1.0)?;
    let approx = asymptotics::response_large_mass(1.0, 1.0, 100.0)?.value;
    let rel = (approx / exact - 1.0).abs();
    Ok((rel < 0.1, format!("m = 100: rel {rel:.3e} (tol 0.1)")))
}

/// Runs every check; `fault` injects a known defect.
pub fn run(fault: Fault) -> Report {
    let suite = Suite { fault };
    let checks = vec![
        outcome("detailed balance", detailed_balance()),
        outcome("commutator oddness", oddness(&suite)),
        outcome("W = -C·P factorization", factorization(&suite)),
        outcome("commutator sign", commutator_sign(&suite)),
        outcome("massless closed form", closed_form()),
        outcome("long-interaction thermalization", thermalization()),
        outcome("series vs quadrature", series_oracle()),
        outcome("no-go grid", no_go()),
        outcome("weak Anti-Unruh point", weak_existence()),
        outcome("stationarity defect", stationarity()),
        outcome("large-mass asymptote", large_mass()),
    ];
    Report { checks }
}
