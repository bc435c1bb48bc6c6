//! Large- and small-mass asymptotes of the eternal accelerated response
//! against the exact Bessel form.

use unruh_lab::asymptotics;
use unruh_lab::scenarios::{self, Scenario};

fn main() -> unruh_lab::Result<()> {
    let (omega, beta) = (1.0, 1.0);
    println!("{:>10} {:>16} {:>16} {:>16} {:>10}", "m", "exact", "large-mass", "small-mass", "region");
    for m in [1e-6, 1e-4, 1e-2, 1.0, 10.0, 100.0, 300.0] {
        let exact = scenarios::wightman_ft(&Scenario::accelerated(1, m, beta)?, omega)?;
        let large = asymptotics::response_large_mass(omega, beta, m)?;
        let small = asymptotics::response_small_mass(omega, beta, m)?;
        println!(
            "{m:>10.0e} {exact:>16.8e} {:>16.8e} {:>16.8e} {:>10?}",
            large.value,
            small.value,
            asymptotics::validity_region(omega, beta, m)
        );
    }
    Ok(())
}
