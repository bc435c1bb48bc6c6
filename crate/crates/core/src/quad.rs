//! Quadrature rules shared by the special functions and the response integrals.
//!
//! Two drivers live here: an adaptive Gauss-Kronrod (10/21) integrator with
//! global bisection, and a composite Gauss-Legendre rule that doubles its panel
//! count until two successive refinements agree. The latter suits integrands
//! whose oscillation count is known up front.

use std::collections::BinaryHeap;
use std::cmp::Ordering;
use std::sync::LazyLock;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525478309,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// 10-point Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// Result of a quadrature: value, absolute error estimate, integrand evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

/// Tolerances for [`adaptive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            max_subdivisions: 2000,
        }
    }
}

/// Single 21-point Kronrod panel with embedded 10-point Gauss estimate.
/// Returns (integral, error estimate, round-off floor of that estimate).
pub fn gauss_kronrod_21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_abs = fc.abs() * WGK[10];
    let mut res_g = 0.0;
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let abs_half = half.abs();
    res_k *= half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    let mut err = (res_k - res_g * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }
    (res_k, err, floor)
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    floor: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive Gauss-Kronrod integration over `[a, b]` with global bisection of
/// the worst segment. Interior `breaks` are honoured as fixed segment edges.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<Integral> {
    let mut edges = vec![a];
    let mut inner: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|&x| x > a.min(b) && x < a.max(b))
        .collect();
    inner.sort_by(f64::total_cmp);
    if b < a {
        inner.reverse();
    }
    edges.extend(inner);
    edges.push(b);
    edges.dedup();

    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut evals = 0;
    for w in edges.windows(2) {
        let (v, e, fl) = gauss_kronrod_21(&f, w[0], w[1]);
        evals += 21;
        total += v;
        total_err += e;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value: v,
            error: e,
            floor: fl,
        });
    }

    let mut subdivisions = heap.len();
    loop {
        let target = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if total_err <= target || !total.is_finite() {
            break;
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                estimate: total,
                error: total_err,
            });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        if mid == worst.a || mid == worst.b || worst.error <= worst.floor {
            // worst segment is at machine resolution; nothing left to refine
            heap.push(worst);
            break;
        }
        let (v1, e1, f1) = gauss_kronrod_21(&f, worst.a, mid);
        let (v2, e2, f2) = gauss_kronrod_21(&f, mid, worst.b);
        evals += 42;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
            floor: f1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
            floor: f2,
        });
        subdivisions += 1;
    }
    // re-sum to shed the drift of the running updates
    let (value, abs_error) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
    if !value.is_finite() {
        return Err(Error::QuadratureNonConvergence {
            estimate: value,
            error: f64::INFINITY,
        });
    }
    Ok(Integral {
        value,
        abs_error,
        evaluations: evals,
    })
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pn1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

static GL16: LazyLock<(Vec<f64>, Vec<f64>)> = LazyLock::new(|| gauss_legendre(16));

/// Composite 16-point Gauss-Legendre sum over `panels` equal panels.
/// Returns (integral, integral of |f|).
pub fn composite_gl16<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> (f64, f64) {
    let (x, w) = &*GL16;
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    let mut abs = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(w) {
            let v = f(mid + 0.5 * h * xi);
            sum += wi * v;
            abs += wi * v.abs();
        }
    }
    (0.5 * h * sum, 0.5 * h * abs)
}

/// Composite Gauss-Legendre with panel doubling: starts at `initial_panels`
/// and doubles until two successive sums agree to `rel_tol` (relative to the
/// larger of the value and `floor_frac` times the L1 norm), or to round-off.
pub fn panel_doubling<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    initial_panels: usize,
    rel_tol: f64,
    max_panels: usize,
    floor_frac: f64,
) -> Result<Integral> {
    let mut panels = initial_panels.max(1);
    let (mut prev, _) = composite_gl16(f, a, b, panels);
    let mut evals = 16 * panels;
    loop {
        panels *= 2;
        let (cur, l1) = composite_gl16(f, a, b, panels);
        evals += 16 * panels;
        let diff = (cur - prev).abs();
        let scale = cur.abs().max(floor_frac * l1);
        // the second test accepts round-off level agreement near a zero of the sum
        if diff <= rel_tol * scale || diff <= 256.0 * f64::EPSILON * l1 {
            return Ok(Integral {
                value: cur,
                abs_error: diff,
                evaluations: evals,
            });
        }
        if panels >= max_panels {
            return Err(Error::QuadratureNonConvergence {
                estimate: cur,
                error: diff,
            });
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_nodes_integrate_polynomials() {
        let (x, w) = gauss_legendre(16);
        // exact for degree <= 31
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((s - 2.0 / 31.0).abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let r = adaptive(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &[], &QuadConfig::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn adaptive_respects_breaks() {
        let f = |x: f64| if x < 0.3 { 1.0 } else { 2.0 };
        let r = adaptive(f, 0.0, 1.0, &[0.3], &QuadConfig::default()).unwrap();
        assert!((r.value - 1.7).abs() < 1e-13);
    }

    #[test]
    fn adaptive_reversed_interval_changes_sign() {
        let cfg = QuadConfig::default();
        let a = adaptive(f64::exp, 0.0, 1.0, &[], &cfg).unwrap().value;
        let b = adaptive(f64::exp, 1.0, 0.0, &[], &cfg).unwrap().value;
        assert!((a + b).abs() < 1e-14);
        assert!((a - (1f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn doubling_converges_on_oscillatory_integrand() {
        let f = |x: f64| (40.0 * x).cos();
        let r = panel_doubling(&f, 0.0, 3.0, 4, 1e-12, 1 << 16, 1e-6).unwrap();
        assert!((r.value - (120f64).sin() / 40.0).abs() < 1e-13);
    }

    #[test]
    fn non_convergence_is_reported() {
        let cfg = QuadConfig {
            rel_tol: 1e-14,
            abs_tol: 0.0,
            max_subdivisions: 3,
        };
        let r = adaptive(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &[], &cfg);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }
}
