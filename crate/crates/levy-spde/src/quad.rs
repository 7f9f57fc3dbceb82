//! Adaptive Gauss–Kronrod quadrature on finite intervals, plus dyadic panel
//! drivers for endpoint singularities and one-sided improper integrals.
//!
//! The panel driver keeps a worst-first heap and bisects until the summed
//! Kronrod error estimate meets the requested tolerance. Integrands are never
//! evaluated at panel endpoints (all K15 abscissae are interior), so kernels
//! singular at an endpoint are safe as long as the integral converges.

use std::collections::BinaryHeap;

/// 7-point Gauss / 15-point Kronrod abscissae on [0, 1] side (symmetric).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// Estimated absolute error (Kronrod minus Gauss based).
    pub abs_error: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOpts {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOpts {
    fn default() -> Self {
        QuadOpts {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_panels: 4096,
        }
    }
}

impl QuadOpts {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadOpts {
            abs_tol,
            ..Default::default()
        }
    }
}

/// One Gauss–Kronrod pass over [a, b]: (kronrod value, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = fc.abs() * WGK[7];
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    // Scaled difference estimate as in QUADPACK's QK15.
    let mean = kronrod * 0.5;
    let mut resasc = WGK[7] * (fv[7] - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }
    resasc *= half.abs();
    let value = kronrod * half;
    let mut err = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let min_err = 50.0 * f64::EPSILON * resabs * half.abs();
    if min_err > err {
        err = min_err;
    }
    (value, err)
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Adaptive integration of `f` over the finite interval [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOpts) -> QuadResult {
    if a == b {
        return QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evals: 0,
        };
    }
    let (value, error) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a,
        b,
        value,
        error,
    });
    let mut evals = 15usize;
    let mut total_value = value;
    let mut total_error = error;
    while total_error > opts.abs_tol.max(opts.rel_tol * total_value.abs())
        && heap.len() < opts.max_panels
    {
        let worst = heap.pop().expect("heap nonempty");
        if worst.b - worst.a < f64::EPSILON * (worst.a.abs() + worst.b.abs() + 1.0) {
            // Panel too narrow to split; keep its estimate.
            total_error -= worst.error * 0.5; // avoid spinning on it
            heap.push(Panel {
                error: worst.error * 0.5,
                ..worst
            });
            if heap.iter().all(|p| {
                p.b - p.a < f64::EPSILON * (p.a.abs() + p.b.abs() + 1.0)
            }) {
                break;
            }
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        evals += 30;
        total_value += v1 + v2 - worst.value;
        total_error += e1 + e2 - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }
    QuadResult {
        value: total_value,
        abs_error: total_error,
        evals,
    }
}

/// Outcome of an improper or endpoint-singular integration.
#[derive(Debug, Clone, Copy)]
pub enum ImproperOutcome {
    Converged(QuadResult),
    /// Panel contributions stopped decaying; the partial sum is a lower bound
    /// on a (likely) divergent integral.
    Diverging { partial: f64, levels: usize },
}

impl ImproperOutcome {
    pub fn converged(&self) -> Option<QuadResult> {
        match self {
            ImproperOutcome::Converged(r) => Some(*r),
            ImproperOutcome::Diverging { .. } => None,
        }
    }
}

/// Shared driver for dyadic panel sequences. Contributions whose magnitudes
/// stop decaying over several consecutive levels flag divergence; geometric
/// decay yields an extrapolated remainder bound.
fn dyadic_drive<F: Fn(f64) -> f64, P: FnMut(usize) -> (f64, f64)>(
    f: F,
    mut panel: P,
    opts: QuadOpts,
) -> ImproperOutcome {
    let panel_opts = QuadOpts {
        abs_tol: opts.abs_tol * 0.1,
        rel_tol: opts.rel_tol * 0.1,
        max_panels: 256,
    };
    let mut total = 0.0;
    let mut err = 0.0;
    let mut prev_mag: Option<f64> = None;
    let mut flat_count = 0usize;
    let mut recent_ratio = 0.0f64;
    for level in 0..2048usize {
        let (lo, hi) = panel(level);
        let r = integrate(&f, lo, hi, panel_opts);
        total += r.value;
        err += r.abs_error;
        let mag = r.value.abs();
        if let Some(p) = prev_mag {
            let ratio = if p > 0.0 { mag / p } else { f64::INFINITY };
            if ratio >= 0.999 && mag > opts.abs_tol {
                flat_count += 1;
                if flat_count >= 8 {
                    return ImproperOutcome::Diverging {
                        partial: total,
                        levels: level,
                    };
                }
            } else {
                flat_count = 0;
            }
            recent_ratio = recent_ratio.max(ratio).min(0.998);
            if ratio < 0.998 {
                let remainder = mag * recent_ratio / (1.0 - recent_ratio);
                if remainder < opts.abs_tol.max(opts.rel_tol * total.abs()) {
                    return ImproperOutcome::Converged(QuadResult {
                        value: total,
                        abs_error: err + remainder,
                        evals: 0,
                    });
                }
            }
        }
        if mag < opts.abs_tol * 1e-3 && level > 4 {
            return ImproperOutcome::Converged(QuadResult {
                value: total,
                abs_error: err + mag,
                evals: 0,
            });
        }
        prev_mag = Some(mag);
    }
    ImproperOutcome::Converged(QuadResult {
        value: total,
        abs_error: err,
        evals: 0,
    })
}

/// ∫_0^b f, allowing an integrable singularity at 0. Dyadic panels
/// [b/2^{k+1}, b/2^k] are accumulated until their contributions are
/// negligible; geometric extrapolation bounds the remainder.
pub fn integrate_to_zero<F: Fn(f64) -> f64>(f: F, b: f64, opts: QuadOpts) -> ImproperOutcome {
    assert!(b > 0.0);
    dyadic_drive(
        f,
        |level| {
            let hi = b / (1u64 << level.min(62)) as f64 * if level > 62 { 0.5f64.powi(level as i32 - 62) } else { 1.0 };
            (hi * 0.5, hi)
        },
        opts,
    )
}

/// ∫_a^∞ f via doubling panels [a·2^k, a·2^{k+1}], with the same geometric
/// remainder/divergence logic as `integrate_to_zero`. Requires a > 0.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    opts: QuadOpts,
) -> ImproperOutcome {
    assert!(a > 0.0);
    dyadic_drive(
        f,
        |level| {
            let lo = a * (1u64 << level.min(62)) as f64 * if level > 62 { 2.0f64.powi(level as i32 - 62) } else { 1.0 };
            (lo, lo * 2.0)
        },
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| 3.0 * x * x, 0.0, 2.0, QuadOpts::default());
        assert_relative_eq!(r.value, 8.0, max_relative = 1e-14);
    }

    #[test]
    fn oscillatory_converges() {
        let r = integrate(|x| (10.0 * x).sin(), 0.0, 1.0, QuadOpts::default());
        let exact = (1.0 - 10.0f64.cos()) / 10.0;
        assert_relative_eq!(r.value, exact, max_relative = 1e-10);
    }

    #[test]
    fn inverse_sqrt_singularity_at_zero() {
        // ∫_0^1 x^{-1/2} dx = 2
        let out = integrate_to_zero(|x| x.powf(-0.5), 1.0, QuadOpts::with_tol(1e-10));
        let r = out.converged().expect("convergent");
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-9);
    }

    #[test]
    fn detects_divergence_at_zero() {
        // ∫_0^1 1/x dx diverges
        let out = integrate_to_zero(|x| 1.0 / x, 1.0, QuadOpts::with_tol(1e-10));
        assert!(matches!(out, ImproperOutcome::Diverging { .. }));
    }

    #[test]
    fn improper_tail_exponential() {
        // ∫_1^∞ e^{-x} dx = e^{-1}
        let out = integrate_to_infinity(|x| (-x).exp(), 1.0, QuadOpts::with_tol(1e-12));
        let r = out.converged().expect("convergent");
        assert_relative_eq!(r.value, (-1.0f64).exp(), max_relative = 1e-10);
    }

    #[test]
    fn improper_tail_divergence() {
        // ∫_1^∞ 1/x dx diverges
        let out = integrate_to_infinity(|x| 1.0 / x, 1.0, QuadOpts::with_tol(1e-10));
        assert!(matches!(out, ImproperOutcome::Diverging { .. }));
    }
}
