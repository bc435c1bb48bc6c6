//! Long-interaction expansion of the massless inertial d=3 response against
//! direct quadrature, and the next-to-leading EDR inverse temperature.

use unruh_lab::response::{self, ResponseQuery, Sigma};
use unruh_lab::scenarios::Scenario;
use unruh_lab::series::{self, SeriesConfig};
use unruh_lab::switching::SwitchingFunction;

fn main() -> unruh_lab::Result<()> {
    let sw = SwitchingFunction::band_limited(1.0)?;
    let (omega, beta) = (1.0, 1.0);
    println!("radius of convergence at σ=5: {:.4}", series::convergence_radius_massless(omega, 5.0, beta));
    for sigma in [2.0, 5.0, 10.0] {
        let quad = response::response_function(&ResponseQuery::new(
            omega,
            Sigma::Finite(sigma),
            Scenario::inertial(3, 0.0, 0.0, beta)?,
            sw.clone(),
        ))?
        .value;
        print!("σ={sigma:<4} quadrature {quad:.15e}");
        for k_max in [0, 2, 8] {
            let cfg = SeriesConfig { k_max, ..SeriesConfig::default() };
            let s = series::response_series(omega, sigma, beta, &sw, &cfg)?.value;
            print!("  k≤{k_max}: {:.1e}", ((s - quad) / quad).abs());
        }
        println!();
    }

    // the gate refuses switchings whose spectrum is too wide
    let wide = SwitchingFunction::band_limited(2.0)?;
    println!("A=2: {}", series::response_series(omega, 5.0, beta, &wide, &SeriesConfig::default()).unwrap_err());

    for sigma in [5.0, 20.0, f64::INFINITY] {
        let e = series::beta_edr_expansion(0.5, sigma, beta, &SwitchingFunction::gaussian())?;
        println!("β_EDR ≈ {:.8} at σ={sigma} (warning: {})", e.value, e.validity_warning);
    }
    Ok(())
}
