//! Special functions behind the Wightman spectral densities.
//!
//! The modified Bessel function of imaginary order is evaluated from
//! `K_{iν}(x) = ∫₀^∞ exp(-x cosh t) cos(ν t) dt`. Along the real axis that
//! integrand has magnitude `e^{-x}` while the result is of order `e^{-πν/2}`,
//! so for large orders the sum cancels to nothing. We instead integrate
//! `½∫ exp(-x cosh t + iνt) dt` along the deformed contour
//! `t = u + i(π/2 - δ(u))`, which runs through the saddle points and keeps
//! the integrand at the scale of the answer. The scaled value
//! `e^{πν/2} K_{iν}(x)` is what the rest of the crate consumes.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::quad;

/// Arguments below this are flagged: the contour gets long and the
/// small-mass asymptotics are the better tool.
pub const SMALL_ARGUMENT: f64 = 1e-6;

/// Below this much phase between the origin and the saddle the direct path
/// is cheaper than the rectangle detour.
const RECTANGLE_MIN_PHASE: f64 = 8.0 * PI;

/// `exp` underflows below this.
const EXP_UNDERFLOW: f64 = 745.0;

/// Controls the Bessel quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEvalConfig {
    pub rel_tol: f64,
    /// Cap on the length of the contour parameter range.
    pub t_max_cap: f64,
    /// Cap on the number of Gauss panels per contour segment.
    pub max_subdivisions: usize,
}

impl Default for BesselEvalConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            t_max_cap: 60.0,
            max_subdivisions: 1 << 16,
        }
    }
}

impl BesselEvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.t_max_cap > 0.0) || self.max_subdivisions < 1 {
            return Err(Error::Domain(format!("invalid Bessel config {self:?}")));
        }
        Ok(())
    }
}

/// A Bessel value with its precision flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KValue {
    pub value: f64,
    /// Set for `x < SMALL_ARGUMENT`.
    pub precision_warning: bool,
}

/// Contour `t = u + i(π/2 - δ(u))` with `δ = c (1 - ν/(x cosh u))` outside
/// the saddle region `x cosh u < ν`, zero inside it.
struct Contour {
    nu: f64,
    x: f64,
    c: f64,
}

impl Contour {
    fn new(nu: f64, x: f64) -> Self {
        let s = nu / x;
        // for ν < x pick c so the path crosses the imaginary axis at the saddle
        // i·arcsin(ν/x); c ≤ 2.4 keeps νδ ≤ x cosh u sin δ along the path
        let c = if s < 1.0 {
            (s.acos() / (1.0 - s)).min(2.4)
        } else {
            1.5
        };
        Self { nu, x, c }
    }

    fn delta(&self, u: f64) -> (f64, f64) {
        let r = self.nu / (self.x * u.cosh());
        if r >= 1.0 {
            (0.0, 0.0)
        } else {
            (self.c * (1.0 - r), self.c * r * u.tanh())
        }
    }

    /// Log-magnitude of the scaled integrand.
    fn log_magnitude(&self, u: f64) -> f64 {
        let (d, _) = self.delta(u);
        -self.x * u.cosh() * d.sin() + self.nu * d
    }

    /// Real part of the scaled integrand times the path Jacobian.
    fn integrand(&self, u: f64) -> f64 {
        let (d, dd) = self.delta(u);
        // cosh(u + iα) with α = π/2 - δ: cos α = sin δ, sin α = cos δ
        let re = -self.x * u.cosh() * d.sin() + self.nu * d;
        let im = -self.x * u.sinh() * d.cos() + self.nu * u;
        let mag = re.exp();
        mag * (im.cos() + dd * im.sin())
    }

    /// Total variation of the integrand phase over `[a, b]`, sampled.
    fn phase_variation(&self, a: f64, b: f64) -> f64 {
        let n = 64;
        let phase = |u: f64| {
            let (d, _) = self.delta(u);
            -self.x * u.sinh() * d.cos() + self.nu * u
        };
        let mut prev = phase(a);
        let mut total = 0.0;
        for i in 1..=n {
            let p = phase(a + (b - a) * i as f64 / n as f64);
            total += (p - prev).abs();
            prev = p;
        }
        total
    }
}

/// Real part of the path piece from `iπ/2` to the saddle `u_s + iπ/2`.
///
/// On that line the integrand oscillates about `ν u_s/π` times. Closing the
/// rectangle through `i(π/2 + W)` and `u_s + i(π/2 + W)` instead: the
/// imaginary-axis side is purely imaginary, the top side is below
/// `e^{-depth}`, and the side through the saddle decays monotonically
/// without oscillating, `∫₀^W e^{ν(sin w - w)} sin(ν u_s - x sinh u_s cos w) dw`.
fn saddle_rectangle(nu: f64, x: f64, saddle: f64, depth: f64, cfg: &BesselEvalConfig) -> Result<f64> {
    let depth = depth + (1.0 + saddle).ln();
    let top_bound = |w: f64| nu * (w - w.sin().max(0.0));
    let mut w_max = 0.25;
    while top_bound(w_max) < depth {
        w_max *= 1.25;
    }
    let xs = x * saddle.sinh();
    let g = |w: f64| (nu * (w.sin() - w)).exp() * (nu * saddle - xs * w.cos()).sin();
    let panels = ((xs * (1.0 - w_max.min(PI).cos()) / PI).ceil() as usize).clamp(4, cfg.max_subdivisions);
    let r = quad::panel_doubling(&g, 0.0, w_max, panels, cfg.rel_tol, cfg.max_subdivisions, 1e-4)?;
    Ok(r.value)
}

/// `e^{π|ν|/2} K_{iν}(x)`, free of the overflow and cancellation that the
/// unscaled value suffers at large order.
pub fn bessel_k_imag_order_scaled(nu: f64, x: f64, cfg: &BesselEvalConfig) -> Result<KValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("K_iν(x) needs x > 0, got {x}")));
    }
    if !nu.is_finite() {
        return Err(Error::Domain(format!("K_iν(x) needs finite ν, got {nu}")));
    }
    cfg.validate()?;
    let nu = nu.abs();
    let path = Contour::new(nu, x);
    let saddle = if nu > x { (nu / x).acosh() } else { 0.0 };

    // walk outward until the integrand is negligible relative to its peak
    let peak = path.log_magnitude(saddle).max(path.log_magnitude(0.0));
    let cutoff = peak - (EXP_UNDERFLOW.min(-cfg.rel_tol.ln() + 25.0));
    let mut upper = saddle + 0.25;
    while path.log_magnitude(upper) > cutoff && upper < saddle + cfg.t_max_cap {
        upper += 0.25;
    }
    let upper = upper.min(saddle + cfg.t_max_cap);

    let f = |u: f64| path.integrand(u);
    let mut total = 0.0;
    let mut segments = Vec::with_capacity(2);
    if nu * saddle > RECTANGLE_MIN_PHASE {
        total += saddle_rectangle(nu, x, saddle, peak - cutoff, cfg)?;
    } else if saddle > 0.0 {
        segments.push((0.0, saddle));
    }
    segments.push((saddle, upper));
    for (a, b) in segments {
        // one 16-point panel per half oscillation of the phase along the path
        let phase = path.phase_variation(a, b);
        let panels = ((phase / PI).ceil() as usize).clamp(2, cfg.max_subdivisions);
        let r = quad::panel_doubling(&f, a, b, panels, cfg.rel_tol, cfg.max_subdivisions, 1e-4)?;
        total += r.value;
    }
    Ok(KValue {
        value: total,
        precision_warning: x < SMALL_ARGUMENT,
    })
}

/// `K_{iν}(x)` for real order `ν` (the function is even in `ν`) and `x > 0`.
pub fn bessel_k_imag_order(nu: f64, x: f64, cfg: &BesselEvalConfig) -> Result<KValue> {
    let s = bessel_k_imag_order_scaled(nu, x, cfg)?;
    Ok(KValue {
        value: s.value * (-FRAC_PI_2 * nu.abs()).exp(),
        ..s
    })
}

const STIRLING_BERNOULLI: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Imaginary part of the continuous log-gamma branch at `iz`, via the
/// recurrence `lnΓ(w) = lnΓ(w+N) - Σ ln(w+k)` and Stirling's series at `w+N`.
fn im_ln_gamma_imag(z: f64) -> f64 {
    use num_complex::Complex64;
    let shift = 16usize;
    let w = Complex64::new(shift as f64, z);
    let ln_w = w.ln();
    let mut s = (w - 0.5) * ln_w - w + 0.5 * (2.0 * PI).ln();
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut term = inv;
    for b in STIRLING_BERNOULLI {
        s += term * b;
        term *= inv2;
    }
    let mut im = s.im;
    for k in 0..shift {
        im -= z.atan2(k as f64);
    }
    im
}

/// `φ(z) = 2 Arg Γ(iz)` on the continuous (log-gamma) branch, so no 2π
/// jumps appear as `z` grows. Tends to `-π` as `z → 0⁺`.
pub fn gamma_arg_phase(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("gamma phase needs z > 0, got {z}")));
    }
    Ok(2.0 * im_ln_gamma_imag(z))
}

/// Bose factor `1/(e^{βω} - 1)`.
pub fn planck(omega: f64, beta: f64) -> Result<f64> {
    let x = beta * omega;
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Singular(format!("Planck factor at βω = {x}")));
    }
    if x > 700.0 {
        return Ok(0.0);
    }
    Ok(1.0 / x.exp_m1())
}

/// `∂P/∂β = -ω e^{βω}/(e^{βω}-1)²`.
pub fn planck_d_beta(omega: f64, beta: f64) -> Result<f64> {
    let x = beta * omega;
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Singular(format!("Planck factor at βω = {x}")));
    }
    if x.abs() > 700.0 {
        return Ok(0.0);
    }
    // e^x/(e^x-1)^2 = 1/(4 sinh²(x/2))
    let s = (0.5 * x).sinh();
    Ok(-omega / (4.0 * s * s))
}
