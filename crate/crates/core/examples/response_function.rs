//! Finite-time response, excitation-to-decay ratio, EDR temperature and
//! transition probability of an accelerated detector in the massive 1+1
//! vacuum.

use unruh_lab::response::{self, DetectorCoupling, ResponseQuery, Sigma};
use unruh_lab::scenarios::Scenario;
use unruh_lab::switching::SwitchingFunction;

fn main() -> unruh_lab::Result<()> {
    let t_kms = 2.0;
    let s = Scenario::accelerated(1, 1.0, 1.0 / t_kms)?;
    for sigma in [Sigma::Finite(0.04), Sigma::Finite(1.0), Sigma::Finite(100.0), Sigma::Infinite] {
        let q = ResponseQuery::new(1.0, sigma, s, SwitchingFunction::gaussian());
        let (up, down) = response::response_pair(&q)?;
        let (b_edr, err) = response::beta_edr_with_error(&q)?;
        println!(
            "σ={sigma:<5} F(Ω)={:.10e} F(-Ω)={:.10e} [{}] T_EDR={:.6} ± {:.1e}",
            up.value,
            down.value,
            up.method,
            1.0 / b_edr,
            err / (b_edr * b_edr)
        );
    }

    let q = ResponseQuery::new(1.0, Sigma::Finite(1.0), s, SwitchingFunction::gaussian());
    let c = DetectorCoupling::new(0.1, 1.0)?;
    let p = response::transition_probability(&q, &c, true)?;
    println!("excitation probability {:.6e} (perturbative warning: {})", p.probability, p.perturbative_warning);
    Ok(())
}
