//! Figure-preset tables through the library: a quick summary of fig3 and
//! fig2d, and one preset streamed as CSV.

use unruh_lab::cli::figures::{self, Preset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in [Preset::Fig3Top, Preset::Fig3Bottom] {
        let rows = figures::generate(p)?;
        let neg = rows.iter().filter(|r| r.y < 0.0).count();
        let (x, y) = p.axes();
        println!("{p}: {} rows of {y} vs {x}, {neg} negative", rows.len());
    }
    let rows = figures::generate(Preset::Fig2d)?;
    let lo = rows.iter().map(|r| r.y).fold(f64::INFINITY, f64::min);
    let hi = rows.iter().map(|r| r.y).fold(f64::NEG_INFINITY, f64::max);
    println!("fig2d: T_EDR between {lo:.4} and {hi:.4} for Ω in [1, 15]");

    let name = std::env::args().nth(1).unwrap_or_else(|| "fig1-bottom".into());
    let preset: Preset = name.parse()?;
    figures::write_csv(&figures::generate(preset)?, std::io::stdout())?;
    Ok(())
}
