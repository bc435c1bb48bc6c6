//! Acceptance run: one PASS/FAIL line per criterion, with the measured
//! quantity and wall time. Exits non-zero on any failure not listed as a
//! known deviation.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use unruh_lab::antiunruh::{self, Label, ScanSpec, StepControl};
use unruh_lab::asymptotics;
use unruh_lab::cli::figures::{self, Preset};
use unruh_lab::response::{self, ResponseQuery, Sigma};
use unruh_lab::scenarios::{self, Motion, Scenario};
use unruh_lab::series::{self, SeriesConfig};
use unruh_lab::switching::SwitchingFunction;
use unruh_lab::Result;

struct Criterion {
    name: &'static str,
    budget: Duration,
    /// Why this criterion is expected to fail, if it is.
    known_deviation: Option<&'static str>,
    run: fn() -> Result<(bool, String)>,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn detailed_balance() -> Result<(bool, String)> {
    let mut scen = Vec::new();
    for d in [1, 3] {
        for m in [0.0, 1.0] {
            for lam in [0.0, 1.0] {
                scen.push(Scenario::inertial(d, m, lam, 1.0)?);
            }
        }
        for m in [0.1, 1.0] {
            scen.push(Scenario::accelerated(d, m, 1.0)?);
        }
    }
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for s in &scen {
        for beta in logspace(0.1, 20.0, 7) {
            let s = s.with_beta(beta);
            for w in logspace(0.1, 20.0, 9) {
                for w in [w, -w] {
                    worst = worst.max(scenarios::detailed_balance_residual(&s, w)?);
                    n += 1;
                }
            }
        }
    }
    Ok((worst < 1e-8, format!("max residual {worst:.2e} over {n} points (tol 1e-8)")))
}

fn thermalization() -> Result<(bool, String)> {
    let cases = [
        Scenario::inertial(3, 0.0, 0.0, 1.0)?,
        Scenario::inertial(1, 1.0, 0.0, 1.0)?,
        Scenario::inertial(3, 1.0, 1.0, 1.0)?,
        Scenario::accelerated(1, 1.0, 1.0)?,
        Scenario::accelerated(3, 1.0, 1.0)?,
    ];
    let mut worst: f64 = 0.0;
    for s in cases {
        for (beta, omega) in [(1.0, 2.0), (0.5, 3.0), (2.0, 1.5)] {
            let s = s.with_beta(beta);
            let q = ResponseQuery::new(omega, Sigma::Finite(1e3 / omega), s, SwitchingFunction::gaussian());
            let r = response::edr_ratio(&q)?;
            worst = worst.max((r / (-beta * omega).exp() - 1.0).abs());
        }
    }
    Ok((worst <= 1e-3, format!("max |R/e^(-βΩ) - 1| = {worst:.2e} at σΩ = 1e3 (tol 1e-3)")))
}

fn series_oracle() -> Result<(bool, String)> {
    let sw = SwitchingFunction::band_limited(1.0)?;
    let cfg = SeriesConfig::default();
    let omega = 1.0;
    let mut worst: f64 = 0.0;
    for so in [2.0, 5.0, 10.0] {
        for bo in [0.5, 1.0, 2.0] {
            let (sigma, beta) = (so / omega, bo / omega);
            let ser = series::response_series(omega, sigma, beta, &sw, &cfg)?.value;
            let s = Scenario::inertial(3, 0.0, 0.0, beta)?;
            let q = ResponseQuery::new(omega, Sigma::Finite(sigma), s, sw.clone());
            let quad = response::response_function(&q)?.value;
            worst = worst.max(((ser - quad) / quad).abs());
        }
    }
    Ok((worst <= 1e-6, format!("max rel. difference {worst:.2e}, k_max = 8 (tol 1e-6)")))
}

fn no_go() -> Result<(bool, String)> {
    let omegas = vec![0.5, 2.0, 5.0, 10.0, 15.0];
    let ts = vec![0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0];
    let sigmas = vec![Sigma::Finite(0.04), Sigma::Finite(1.0), Sigma::Infinite];
    let mut setups = Vec::new();
    for d in [1, 3] {
        for m in [0.0, 1.0] {
            for lam in [0.0, 1.0] {
                setups.push((Motion::InertialThermal, d, m, lam));
            }
        }
        setups.push((Motion::AcceleratedVacuum, d, 0.0, 0.0));
    }
    let (mut hits, mut unresolved, mut divergent, mut total) = (0, 0, 0, 0);
    for (motion, d, m, lam) in setups {
        let mut spec = ScanSpec::new(motion, d, lam, SwitchingFunction::gaussian());
        spec.omega = omegas.clone();
        spec.sigma = sigmas.clone();
        spec.t_kms = ts.clone();
        spec.mass = vec![m];
        let scan = antiunruh::classify(&spec)?;
        hits += scan.count(|c| c.label.is_weak() || c.label.is_strong());
        unresolved += scan.count(|c| c.label == Label::Unresolved);
        divergent += scan.count(|c| c.note.as_deref().is_some_and(|n| n.contains("infrared")));
        total += scan.cells.len();
    }
    Ok((
        hits == 0,
        format!(
            "{hits} weak/strong cells of {total}; {unresolved} unresolved, {divergent} of them IR-divergent"
        ),
    ))
}

/// First `T_KMS` on `ts` with a resolved negative `dF/dT`.
fn first_weak(omega: f64, sigma: Sigma, ts: &[f64]) -> Result<Option<(f64, f64, f64)>> {
    let step = StepControl::default();
    for &t in ts {
        let s = Scenario::accelerated(1, 1.0, 1.0 / t)?;
        let q = ResponseQuery::new(omega, sigma, s, SwitchingFunction::gaussian());
        let d = antiunruh::estimate_d_response_d_t(&q, &step)?;
        if d.value < 0.0 && d.resolved() {
            return Ok(Some((t, d.value, d.error)));
        }
    }
    Ok(None)
}

fn weak_existence() -> Result<(bool, String)> {
    let ts: Vec<f64> = (1..=80).map(|i| 0.25 * i as f64).collect();
    let mut ok = true;
    let mut parts = Vec::new();
    for (sigma, tag) in [(Sigma::Finite(1.0), "σ=1"), (Sigma::Infinite, "σ=∞")] {
        let mut found = Vec::new();
        for w in figures::CURVE_OMEGAS {
            match first_weak(w, sigma, &ts)? {
                Some((t, _, _)) => found.push(format!("{w}@T={t}")),
                None => {
                    ok = false;
                    found.push(format!("{w}:none"));
                }
            }
        }
        parts.push(format!("{tag} [{}]", found.join(" ")));
    }
    Ok((ok, parts.join("; ")))
}

fn edr_query(omega: f64, t: f64) -> Result<ResponseQuery> {
    let s = Scenario::accelerated(1, 1.0, 1.0 / t)?;
    Ok(ResponseQuery::new(omega, Sigma::Finite(0.04), s, SwitchingFunction::gaussian()))
}

fn strong_existence() -> Result<(bool, String)> {
    let step = StepControl::default();
    let ts: Vec<f64> = (1..=8).map(|i| 0.25 * i as f64).collect();
    let mut run = 0;
    let mut best_run = 0;
    let mut interval = (f64::NAN, f64::NAN);
    let mut start = f64::NAN;
    for &t in &ts {
        let q = edr_query(1.0, t)?;
        let (_, dt) = antiunruh::temperature_derivatives(&q, &step)?;
        if dt.value < 0.0 && dt.resolved() {
            if run == 0 {
                start = t;
            }
            run += 1;
            if run > best_run {
                best_run = run;
                interval = (start, t);
            }
        } else {
            run = 0;
        }
    }
    let t50 = 1.0 / response::beta_edr(&edr_query(1.0, 50.0)?)?;
    let dev = (t50 / 50.0 - 1.0).abs();
    let interval_ok = best_run >= 2;
    Ok((
        interval_ok && dev <= 0.05,
        format!(
            "dT_EDR/dT < 0 on T ∈ [{}, {}] ({best_run} grid points); T_EDR(50) = {t50:.3}, off by {:.1}% (tol 5%)",
            interval.0,
            interval.1,
            100.0 * dev
        ),
    ))
}

fn gap_independence() -> Result<(bool, String)> {
    let mut betas = Vec::new();
    let mut err: f64 = 0.0;
    for i in 1..=15 {
        let (b, e) = response::beta_edr_with_error(&edr_query(i as f64, figures::EDR_T_KMS)?)?;
        betas.push(b);
        err = err.max(e);
    }
    let lo = betas.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = betas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = betas.iter().sum::<f64>() / betas.len() as f64;
    let var = (hi - lo) / mean;
    Ok((
        var < 0.02 && hi - lo > 10.0 * err,
        format!(
            "β_EDR spread {:.3}% over Ω ∈ [1, 15] (tol 2%); spread/error = {:.1e} (need > 10)",
            100.0 * var,
            (hi - lo) / err.max(f64::MIN_POSITIVE)
        ),
    ))
}

fn mass_threshold() -> Result<(bool, String)> {
    let top = figures::generate(Preset::Fig3Top)?;
    let bottom = figures::generate(Preset::Fig3Bottom)?;
    let light = top.iter().filter(|r| r.y < 0.0).count();
    let heavy_cold = bottom.iter().filter(|r| r.y < 0.0 && 10.0 / r.x >= 1.5).count();
    let heavy_any = bottom.iter().filter(|r| r.y < 0.0).count();
    Ok((
        light > 0 && heavy_cold == 0,
        format!(
            "m=0.1: {light} negative rows; m=10: {heavy_cold} negative rows with βm ≥ 1.5 ({heavy_any} in total, all at βm < 1.5)"
        ),
    ))
}

/// Spacing of successive minima of `W̃₁` in `ln(βm)` at `β = 1`, `Ω = 10`.
fn oscillation_period() -> Result<f64> {
    let (beta, omega) = (1.0, 10.0);
    let xs: Vec<f64> = (0..=600).map(|i| (1e-5f64).ln() + i as f64 * (0.5f64 / 1e-5).ln() / 600.0).collect();
    let mut ys = Vec::with_capacity(xs.len());
    for &x in &xs {
        ys.push(scenarios::wightman_ft(&Scenario::accelerated(1, x.exp() / beta, beta)?, omega)?);
    }
    let h = xs[1] - xs[0];
    let mut minima = Vec::new();
    for i in 1..xs.len() - 1 {
        if ys[i] < ys[i - 1] && ys[i] <= ys[i + 1] {
            // parabolic refinement
            let den = ys[i - 1] - 2.0 * ys[i] + ys[i + 1];
            let shift = if den > 0.0 { 0.5 * (ys[i - 1] - ys[i + 1]) / den } else { 0.0 };
            minima.push(xs[i] + shift * h);
        }
    }
    if minima.len() < 3 {
        return Err(unruh_lab::Error::Domain(format!("{} minima found", minima.len())));
    }
    Ok((minima[minima.len() - 1] - minima[0]) / (minima.len() - 1) as f64)
}

fn asymptotes() -> Result<(bool, String)> {
    let exact = |m: f64| scenarios::wightman_ft(&Scenario::accelerated(1, m, 1.0)?, 1.0);
    let large = (asymptotics::response_large_mass(1.0, 1.0, 100.0)?.value / exact(100.0)? - 1.0).abs();
    let small = (asymptotics::response_small_mass(1.0, 1.0, 1e-4)?.value / exact(1e-4)? - 1.0).abs();
    let period = oscillation_period()?;
    let want = 2.0 * PI * PI / 10.0;
    let pdev = (period / want - 1.0).abs();
    Ok((
        large <= 0.10 && small <= 0.15 && pdev <= 0.05,
        format!(
            "large-mass {:.1}% (tol 10%); small-mass {:.3}% (tol 15%); period {period:.4} vs 2π²/(βΩ) = {want:.4}, {:.2}% (tol 5%)",
            100.0 * large,
            100.0 * small,
            100.0 * pdev
        ),
    ))
}

fn stationarity() -> Result<(bool, String)> {
    let tol = 1e-8;
    let mut worst_ok: f64 = 0.0;
    for (lam, a) in [(0.0, 1.0), (0.5, 0.0), (1.0, 0.0), (0.0, 0.5)] {
        for (t1, t2) in [(0.0, 2.0), (-1.0, 3.0)] {
            worst_ok = worst_ok.max(scenarios::stationarity_defect(lam, a, 1.0, 1.0, t1, t2)?);
        }
    }
    let broken = scenarios::stationarity_defect(0.5, 1.0, 1.0, 1.0, 0.0, 2.0)?;
    Ok((
        worst_ok < tol && broken > 10.0 * tol,
        format!("Λ=0 or a=0: max defect {worst_ok:.1e} (tol 1e-8); Λ=0.5, a=1, m=1: {broken:.3e} (need > 1e-7)"),
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "detailed balance", budget: secs(60), known_deviation: None, run: detailed_balance },
        Criterion { name: "long-interaction thermalization", budget: secs(60), known_deviation: None, run: thermalization },
        Criterion { name: "series vs quadrature", budget: secs(60), known_deviation: None, run: series_oracle },
        Criterion { name: "no-go grids", budget: secs(300), known_deviation: None, run: no_go },
        Criterion { name: "weak Anti-Unruh existence", budget: secs(120), known_deviation: None, run: weak_existence },
        Criterion {
            name: "strong Anti-Unruh existence",
            budget: secs(120),
            known_deviation: Some("T_EDR(50) is 8.4% above T_KMS at m=1, σ=0.04, Ω=1; the gap closes more slowly, 2.5% at T_KMS = 100"),
            run: strong_existence,
        },
        Criterion { name: "gap independence", budget: secs(120), known_deviation: None, run: gap_independence },
        Criterion { name: "mass threshold", budget: secs(120), known_deviation: None, run: mass_threshold },
        Criterion { name: "asymptotics", budget: secs(60), known_deviation: None, run: asymptotes },
        Criterion { name: "stationarity defect", budget: secs(120), known_deviation: None, run: stationarity },
    ];
    let mut unexpected = 0;
    for c in &criteria {
        let t0 = Instant::now();
        let (ok, detail) = match (c.run)() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let dt = t0.elapsed();
        let in_time = dt <= c.budget;
        let passed = ok && in_time;
        let tag = if passed { "PASS" } else { "FAIL" };
        let timing = format!("{:.1}s/{}s", dt.as_secs_f64(), c.budget.as_secs());
        println!("{tag} [PRIMARY] {}: {detail} [{timing}]", c.name);
        if !passed {
            match c.known_deviation {
                Some(why) if in_time => println!("     known deviation: {why}"),
                _ => unexpected += 1,
            }
        }
    }
    println!(
        "{} criteria, {unexpected} unexpected failure(s)",
        criteria.len()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
