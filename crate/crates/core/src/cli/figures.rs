//! Figure presets: CSV tables `(x, series_label, y)` for the derivative
//! curves and EDR temperatures of the accelerated 1+1 massive detector.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::antiunruh::{self, StepControl};
use crate::error::{Error, Result};
use crate::response::{self, ResponseQuery, Sigma};
use crate::scenarios::Scenario;
use crate::switching::SwitchingFunction;

/// Gaps of the derivative-curve presets.
pub const CURVE_OMEGAS: [f64; 5] = [0.5, 2.0, 5.0, 10.0, 15.0];
/// `T_KMS` axis of the derivative-curve presets: `T_MAX · i / T_POINTS`.
pub const T_MAX: f64 = 20.0;
pub const T_POINTS: usize = 200;

pub const EDR_MASS: f64 = 1.0;
pub const EDR_SIGMA: f64 = 0.04;
pub const EDR_OMEGA: f64 = 1.0;
pub const EDR_T_KMS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Preset {
    #[value(name = "fig1-top")]
    Fig1Top,
    #[value(name = "fig1-bottom")]
    Fig1Bottom,
    #[value(name = "fig2a")]
    Fig2a,
    #[value(name = "fig2b")]
    Fig2b,
    #[value(name = "fig2c")]
    Fig2c,
    #[value(name = "fig2d")]
    Fig2d,
    #[value(name = "fig3-top")]
    Fig3Top,
    #[value(name = "fig3-bottom")]
    Fig3Bottom,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Fig1Top,
        Preset::Fig1Bottom,
        Preset::Fig2a,
        Preset::Fig2b,
        Preset::Fig2c,
        Preset::Fig2d,
        Preset::Fig3Top,
        Preset::Fig3Bottom,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fig1Top => "fig1-top",
            Preset::Fig1Bottom => "fig1-bottom",
            Preset::Fig2a => "fig2a",
            Preset::Fig2b => "fig2b",
            Preset::Fig2c => "fig2c",
            Preset::Fig2d => "fig2d",
            Preset::Fig3Top => "fig3-top",
            Preset::Fig3Bottom => "fig3-bottom",
        }
    }

    /// Axis labels `(x, y)`.
    pub fn axes(&self) -> (&'static str, &'static str) {
        match self {
            Preset::Fig1Top | Preset::Fig1Bottom | Preset::Fig3Top | Preset::Fig3Bottom => {
                ("T_KMS", "dF/dT_KMS")
            }
            Preset::Fig2a | Preset::Fig2b => ("T_KMS", "T_EDR"),
            Preset::Fig2c => ("Omega", "Omega/T_EDR"),
            Preset::Fig2d => ("Omega", "T_EDR"),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown figure preset {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureRow {
    pub x: f64,
    pub series: String,
    pub y: f64,
}

pub fn curve_t_grid() -> Vec<f64> {
    (1..=T_POINTS).map(|i| T_MAX * i as f64 / T_POINTS as f64).collect()
}

/// `T_KMS` axis of fig2a: 2 to 200 in steps of 2.
pub fn fig2a_grid() -> Vec<f64> {
    (1..=100).map(|i| 2.0 * i as f64).collect()
}

/// `T_KMS` axis of fig2b: 0.05 to 2 in steps of 0.05.
pub fn fig2b_grid() -> Vec<f64> {
    (1..=40).map(|i| 0.05 * i as f64).collect()
}

/// Ω axis of fig2c/d: 1 to 15 in steps of 0.25.
pub fn gap_grid() -> Vec<f64> {
    (0..=56).map(|i| 1.0 + 0.25 * i as f64).collect()
}

fn omega_label(w: f64) -> String {
    format!("Omega={w}")
}

fn derivative_curves(mass: f64, sigma: Sigma) -> Result<Vec<FigureRow>> {
    let ts = curve_t_grid();
    let points: Vec<(f64, f64)> = CURVE_OMEGAS
        .iter()
        .flat_map(|&w| ts.iter().map(move |&t| (w, t)))
        .collect();
    let step = StepControl::default();
    let pool = antiunruh::scan_pool()?;
    Ok(pool.install(|| {
        points
            .par_iter()
            .map(|&(w, t)| {
                let y = Scenario::accelerated(1, mass, 1.0 / t)
                    .and_then(|s| {
                        let q = ResponseQuery::new(w, sigma, s, SwitchingFunction::gaussian());
                        antiunruh::estimate_d_response_d_t(&q, &step)
                    })
                    .map_or(f64::NAN, |d| d.value);
                FigureRow {
                    x: t,
                    series: omega_label(w),
                    y,
                }
            })
            .collect()
    }))
}

fn edr_query(omega: f64, t: f64) -> Result<ResponseQuery> {
    let s = Scenario::accelerated(1, EDR_MASS, 1.0 / t)?;
    Ok(ResponseQuery::new(
        omega,
        Sigma::Finite(EDR_SIGMA),
        s,
        SwitchingFunction::gaussian(),
    ))
}

/// `T_EDR` at each `(Ω, T_KMS)`, NaN where the evaluation fails.
pub fn edr_temperatures(points: &[(f64, f64)]) -> Result<Vec<f64>> {
    let pool = antiunruh::scan_pool()?;
    Ok(pool.install(|| {
        points
            .par_iter()
            .map(|&(w, t)| {
                edr_query(w, t)
                    .and_then(|q| response::beta_edr(&q))
                    .map_or(f64::NAN, |b| 1.0 / b)
            })
            .collect()
    }))
}

pub fn generate(preset: Preset) -> Result<Vec<FigureRow>> {
    match preset {
        Preset::Fig1Top => derivative_curves(1.0, Sigma::Finite(1.0)),
        Preset::Fig1Bottom => derivative_curves(1.0, Sigma::Infinite),
        Preset::Fig3Top => derivative_curves(0.1, Sigma::Infinite),
        Preset::Fig3Bottom => derivative_curves(10.0, Sigma::Infinite),
        Preset::Fig2a | Preset::Fig2b => {
            let ts = if preset == Preset::Fig2a { fig2a_grid() } else { fig2b_grid() };
            let points: Vec<_> = ts.iter().map(|&t| (EDR_OMEGA, t)).collect();
            let y = edr_temperatures(&points)?;
            Ok(ts
                .into_iter()
                .zip(y)
                .map(|(x, y)| FigureRow {
                    x,
                    series: "T_EDR".into(),
                    y,
                })
                .collect())
        }
        Preset::Fig2c | Preset::Fig2d => {
            let ws = gap_grid();
            let points: Vec<_> = ws.iter().map(|&w| (w, EDR_T_KMS)).collect();
            let y = edr_temperatures(&points)?;
            let (series, ratio) = if preset == Preset::Fig2c {
                ("Omega/T_EDR", true)
            } else {
                ("T_EDR", false)
            };
            Ok(ws
                .into_iter()
                .zip(y)
                .map(|(x, t)| FigureRow {
                    x,
                    series: series.into(),
                    y: if ratio { x / t } else { t },
                })
                .collect())
        }
    }
}

pub fn write_csv<W: Write>(rows: &[FigureRow], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "series_label", "y"])?;
    for r in rows {
        w.write_record([super::fmt_float(r.x), r.series.clone(), super::fmt_float(r.y)])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("fig4".parse::<Preset>().is_err());
    }

    #[test]
    fn grids() {
        let t = curve_t_grid();
        assert_eq!(t.len(), T_POINTS);
        assert!((t[T_POINTS - 1] - T_MAX).abs() < 1e-12 && t[0] > 0.0);
        let g = gap_grid();
        assert_eq!((g[0], g[g.len() - 1]), (1.0, 15.0));
    }

    #[test]
    fn csv_schema() {
        let rows = vec![FigureRow {
            x: 0.1,
            series: "Omega=2".into(),
            y: -1.0 / 3.0,
        }];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "x,series_label,y\n1.0000000000000001e-1,Omega=2,-3.3333333333333331e-1\n");
    }
}
