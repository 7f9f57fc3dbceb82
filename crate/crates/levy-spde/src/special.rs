//! Small closed-form pieces shared across modules: ball volumes, integer-order
//! incomplete gamma, power/log tail integrals, and the Kolmogorov survival
//! function used by the two-sample KS test.

/// Volume of the unit ball in ℝ^d, via κ_d = κ_{d-2}·2π/d.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(d - 2) * 2.0 * std::f64::consts::PI / d as f64,
    }
}

/// Volume of the radius-r ball in ℝ^d.
pub fn ball_volume(d: usize, r: f64) -> f64 {
    if r <= 0.0 {
        0.0
    } else {
        unit_ball_volume(d) * r.powi(d as i32)
    }
}

/// Surface area of the unit sphere S^{d-1} in ℝ^d.
pub fn unit_sphere_area(d: usize) -> f64 {
    d as f64 * unit_ball_volume(d)
}

/// Upper incomplete gamma Γ(n+1, x) = n! e^{-x} Σ_{j=0}^n x^j/j! for integer
/// order, x ≥ 0.
pub fn upper_gamma_int(n: u32, x: f64) -> f64 {
    let mut term = 1.0; // x^j / j!
    let mut sum = 1.0;
    for j in 1..=n {
        term *= x / j as f64;
        sum += term;
    }
    factorial(n) * (-x).exp() * sum
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// ∫_R^∞ (ln r)^p r^{-1-alpha} dr = alpha^{-(p+1)} Γ(p+1, alpha·ln R), R ≥ 1.
pub fn log_power_tail(p: u32, alpha: f64, big_r: f64) -> f64 {
    assert!(alpha > 0.0 && big_r >= 1.0);
    upper_gamma_int(p, alpha * big_r.ln()) / alpha.powi(p as i32 + 1)
}

/// ∫_R^∞ r^q dr, requiring q < -1.
pub fn power_tail(q: f64, big_r: f64) -> f64 {
    assert!(q < -1.0 && big_r > 0.0);
    big_r.powf(q + 1.0) / (-q - 1.0)
}

/// Survival function of the Kolmogorov distribution,
/// Q(λ) = 2 Σ_{k≥1} (-1)^{k-1} e^{-2 k² λ²}.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..200 {
        let term = (-2.0 * (k as f64) * (k as f64) * lambda * lambda).exp();
        sum += sign * term;
        sign = -sign;
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ball_volumes_match_known_values() {
        assert_relative_eq!(unit_ball_volume(1), 2.0);
        assert_relative_eq!(unit_ball_volume(2), std::f64::consts::PI);
        assert_relative_eq!(
            unit_ball_volume(3),
            4.0 * std::f64::consts::PI / 3.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            unit_ball_volume(5),
            8.0 * std::f64::consts::PI * std::f64::consts::PI / 15.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(unit_sphere_area(3), 4.0 * std::f64::consts::PI, max_relative = 1e-15);
    }

    #[test]
    fn incomplete_gamma_integer_order() {
        // Γ(1, x) = e^{-x}
        assert_relative_eq!(upper_gamma_int(0, 1.3), (-1.3f64).exp(), max_relative = 1e-14);
        // Γ(4, x) against quadrature of ∫_x^∞ t^3 e^{-t} dt
        let q = crate::quad::integrate_to_infinity(
            |t| t.powi(3) * (-t).exp(),
            2.0,
            crate::quad::QuadOpts::with_tol(1e-12),
        )
        .converged()
        .unwrap();
        assert_relative_eq!(upper_gamma_int(3, 2.0), q.value, max_relative = 1e-9);
    }

    #[test]
    fn log_power_tail_matches_quadrature() {
        // ∫_1^∞ ln(r) r^{-2} dr = 1
        assert_relative_eq!(log_power_tail(1, 1.0, 1.0), 1.0, max_relative = 1e-14);
        let q = crate::quad::integrate_to_infinity(
            |r| r.ln().powi(2) * r.powf(-2.5),
            3.0,
            crate::quad::QuadOpts::with_tol(1e-12),
        )
        .converged()
        .unwrap();
        assert_relative_eq!(log_power_tail(2, 1.5, 3.0), q.value, max_relative = 1e-8);
    }

    #[test]
    fn kolmogorov_tail_reference_point() {
        // Q(1.36) ≈ 0.05 (classical 5% critical value)
        let q = kolmogorov_sf(1.3581);
        assert!((q - 0.05).abs() < 2e-3, "q = {q}");
    }
}
