//! Gaussian, band-limited and tabulated switching functions: spectra,
//! derivative norms and moment bounds.

use unruh_lab::switching::{BandProfile, SwitchingFunction};

fn main() -> unruh_lab::Result<()> {
    let tab: Vec<f64> = (0..161).map(|i| {
        let u = -8.0 + 0.1 * i as f64;
        (-u * u / 2.0).exp()
    }).collect();
    let families = [
        ("gaussian", SwitchingFunction::gaussian()),
        ("flat A=1", SwitchingFunction::band_limited(1.0)?),
        ("triangular A=1", SwitchingFunction::band_limited_with(1.0, BandProfile::Triangular)?),
        ("tabulated gaussian", SwitchingFunction::tabulated(-8.0, 0.1, tab)?),
    ];
    for (name, sw) in &families {
        print!("{name:<20} χ(0)={:.6} |χ̃(0.5)|²={:.6}", sw.eval(0.0), sw.fourier_sq(0.5));
        if sw.has_exact_moments() {
            print!(" ‖χ′‖²={:.6} ‖χ″‖²={:.6}", sw.derivative_norm(1)?, sw.derivative_norm(2)?);
        }
        if let Ok((lo, hi)) = sw.moment_bounds(1) {
            print!(" 2nd moment in [{lo:.4}, {hi:.4}]");
        }
        println!();
    }
    Ok(())
}
