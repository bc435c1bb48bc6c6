//! Modified Bessel functions of imaginary order, `K_{iν}(x)`, across the
//! oscillatory (`x < ν`) and monotone (`x > ν`) regimes.

use unruh_lab::specfun::{self, BesselEvalConfig};

fn main() -> unruh_lab::Result<()> {
    let cfg = BesselEvalConfig::default();
    println!("{:>8} {:>8} {:>24} {:>24}", "nu", "x", "K_iν(x)", "e^(πν/2) K_iν(x)");
    for &(nu, x) in &[(0.0, 1.0), (0.5, 1.0), (2.88, 1.0), (10.0, 1.0), (10.0, 20.0), (100.0, 50.0), (400.0, 1.0)] {
        let k = specfun::bessel_k_imag_order(nu, x, &cfg)?;
        let s = specfun::bessel_k_imag_order_scaled(nu, x, &cfg)?;
        println!("{nu:>8} {x:>8} {:>24.15e} {:>24.15e}", k.value, s.value);
    }

    // 2 Arg Γ(iz) on the continuous branch
    for z in [0.01, 0.5, 1.0, 5.0, 50.0] {
        println!("φ({z}) = {:.15}", specfun::gamma_arg_phase(z)?);
    }
    Ok(())
}
