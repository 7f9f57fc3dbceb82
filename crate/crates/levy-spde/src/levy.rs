//! Characteristic triplets (a, γ, ν) and scalar integrals against the jump
//! measure ν: the Lévy exponent ψ, tail moments, log-moments, and the
//! small-jump variance used by the simulator.
//!
//! ν is represented as atoms, a density with power-law hints at 0/∞, or a
//! tabulated symmetric density. Improper pieces are never silently truncated:
//! unbounded-support densities must carry a tail exponent hint, and every
//! finite answer comes with a remainder bound. Conditions that can fail
//! report `Divergent` with a witness instead of panicking.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::quad::{self, ImproperOutcome, QuadOpts};
use crate::special;

/// Result of an integral that may be provably infinite.
#[derive(Debug, Clone)]
pub enum IntegralOutcome {
    Finite { value: f64, bound: f64 },
    Divergent { witness: String },
}

impl IntegralOutcome {
    pub fn finite(value: f64, bound: f64) -> Self {
        IntegralOutcome::Finite { value, bound }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, IntegralOutcome::Finite { .. })
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            IntegralOutcome::Finite { value, .. } => Some(*value),
            IntegralOutcome::Divergent { .. } => None,
        }
    }

    pub fn expect_finite(&self, what: &str) -> f64 {
        match self {
            IntegralOutcome::Finite { value, .. } => *value,
            IntegralOutcome::Divergent { witness } => {
                panic!("{what} diverges: {witness}")
            }
        }
    }
}

impl fmt::Display for IntegralOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralOutcome::Finite { value, bound } => {
                write!(f, "{value:.6e} (±{bound:.1e})")
            }
            IntegralOutcome::Divergent { witness } => write!(f, "divergent ({witness})"),
        }
    }
}

#[derive(Debug, Error)]
pub enum LevyError {
    #[error("invalid Lévy measure: {0}")]
    InvalidMeasure(String),
    #[error("missing tail exponent hint: {0}")]
    MissingTailHint(String),
    #[error("quadrature did not reach the requested tolerance: achieved {achieved:.2e}, requested {requested:.2e}")]
    Accuracy { achieved: f64, requested: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Power-law behaviour c·|r|^{-1-alpha} of the density beyond the working
/// cutoff. Treated as a two-sided asymptotic model: it certifies both
/// finite remainders and divergence.
#[derive(Debug, Clone, Copy)]
pub struct TailHint {
    pub alpha: f64,
}

/// Power-law behaviour c·|r|^{-1-alpha0} of the density as r → 0, with
/// alpha0 < 2. Used to classify small-jump integrals exactly.
#[derive(Debug, Clone, Copy)]
pub struct OriginHint {
    pub alpha0: f64,
}

pub type DensityFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum MeasureKind {
    /// Point masses (position r_j ≠ 0, mass λ_j > 0).
    Atoms(Vec<(f64, f64)>),
    /// Density on ℝ\{0} with support bounds (±∞ allowed) and power hints.
    Density {
        density: DensityFn,
        support: (f64, f64),
        tail: Option<TailHint>,
        origin: Option<OriginHint>,
    },
    /// Symmetric density tabulated on |r| values, linear interpolation,
    /// zero outside the table.
    Tabulated { radii: Vec<f64>, values: Vec<f64> },
}

impl fmt::Debug for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureKind::Atoms(atoms) => write!(f, "Atoms({atoms:?})"),
            MeasureKind::Density { support, tail, origin, .. } => f
                .debug_struct("Density")
                .field("support", support)
                .field("tail", tail)
                .field("origin", origin)
                .finish(),
            MeasureKind::Tabulated { radii, .. } => {
                write!(f, "Tabulated({} points)", radii.len())
            }
        }
    }
}

/// A Lévy measure: no mass at 0 and ∫ min(1, r²) ν(dr) < ∞, the latter
/// verified numerically at construction.
#[derive(Debug, Clone)]
pub struct LevyMeasure {
    kind: MeasureKind,
    /// Working bounds [r_min, r_max] for quadrature truncation; analytic
    /// hint remainders take over outside.
    pub cutoffs: (f64, f64),
}

const LEVY_CHECK_TOL: f64 = 1e-12;

impl LevyMeasure {
    pub fn none() -> Self {
        LevyMeasure {
            kind: MeasureKind::Atoms(Vec::new()),
            cutoffs: (1e-12, 1.0),
        }
    }

    pub fn atoms(atoms: Vec<(f64, f64)>) -> Result<Self, LevyError> {
        for &(r, m) in &atoms {
            if r == 0.0 {
                return Err(LevyError::InvalidMeasure("atom at r = 0".into()));
            }
            if !(m > 0.0) {
                return Err(LevyError::InvalidMeasure(format!(
                    "atom at {r} has nonpositive mass {m}"
                )));
            }
        }
        let r_max = atoms.iter().fold(1.0f64, |a, &(r, _)| a.max(r.abs()));
        Ok(LevyMeasure {
            kind: MeasureKind::Atoms(atoms),
            cutoffs: (1e-12, r_max),
        })
    }

    pub fn density(
        density: DensityFn,
        support: (f64, f64),
        tail: Option<TailHint>,
        origin: Option<OriginHint>,
    ) -> Result<Self, LevyError> {
        if support.0 >= support.1 {
            return Err(LevyError::InvalidMeasure("empty support".into()));
        }
        if let Some(t) = tail {
            if !(t.alpha > 0.0) {
                return Err(LevyError::InvalidMeasure(
                    "tail exponent hint must be positive".into(),
                ));
            }
        }
        if let Some(o) = origin {
            if !(o.alpha0 < 2.0) {
                return Err(LevyError::InvalidMeasure(format!(
                    "origin exponent {} violates small-jump square-integrability",
                    o.alpha0
                )));
            }
        }
        let r_max = if support.0.is_infinite() || support.1.is_infinite() {
            if tail.is_none() {
                // Construction still allowed; tail-dependent integrals refuse.
                200.0
            } else {
                200.0f64.max(support.0.abs().min(1e3)).max(1.0)
            }
        } else {
            support.0.abs().max(support.1.abs())
        };
        let m = LevyMeasure {
            kind: MeasureKind::Density {
                density,
                support,
                tail,
                origin,
            },
            cutoffs: (1e-12, r_max),
        };
        m.validate_levy_property()?;
        Ok(m)
    }

    pub fn tabulated(radii: Vec<f64>, values: Vec<f64>) -> Result<Self, LevyError> {
        if radii.len() != values.len() || radii.len() < 2 {
            return Err(LevyError::InvalidMeasure(
                "tabulated measure needs ≥ 2 matching grid points".into(),
            ));
        }
        if radii[0] <= 0.0 || radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LevyError::InvalidMeasure(
                "tabulated |r| grid must be positive and increasing".into(),
            ));
        }
        if values.iter().any(|&v| v < 0.0) {
            return Err(LevyError::InvalidMeasure("negative tabulated density".into()));
        }
        let r_min = radii[0];
        let r_max = *radii.last().unwrap();
        Ok(LevyMeasure {
            kind: MeasureKind::Tabulated { radii, values },
            cutoffs: (r_min, r_max),
        })
    }

    pub fn kind(&self) -> &MeasureKind {
        &self.kind
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.kind, MeasureKind::Atoms(a) if a.is_empty())
    }

    /// ∫ min(1, r²) ν(dr), the defining integrability condition.
    fn validate_levy_property(&self) -> Result<(), LevyError> {
        let sq = self.integrate_small(2.0, 1.0)?;
        let IntegralOutcome::Finite { .. } = sq else {
            return Err(LevyError::InvalidMeasure(
                "∫_{|r|≤1} r² ν(dr) diverges".into(),
            ));
        };
        let tail = self.mass_above(1.0)?;
        if !tail.is_finite() {
            return Err(LevyError::InvalidMeasure("ν(|r|>1) not finite".into()));
        }
        Ok(())
    }

    fn tabulated_eval(radii: &[f64], values: &[f64], r_abs: f64) -> f64 {
        if r_abs < radii[0] || r_abs > *radii.last().unwrap() {
            return 0.0;
        }
        let idx = radii.partition_point(|&x| x < r_abs).min(radii.len() - 1).max(1);
        let (r0, r1) = (radii[idx - 1], radii[idx]);
        let t = (r_abs - r0) / (r1 - r0);
        values[idx - 1] * (1.0 - t) + values[idx] * t
    }

    /// Fitted per-side tail model constants (c_neg, c_pos) for
    /// density ≈ c·|r|^{-1-alpha} beyond the working cutoff.
    fn tail_model(&self) -> Option<(f64, f64, f64)> {
        if let MeasureKind::Density {
            density,
            support,
            tail: Some(TailHint { alpha }),
            ..
        } = &self.kind
        {
            let r = self.cutoffs.1;
            let scale = r.powf(1.0 + alpha);
            let c_pos = if support.1.is_infinite() { density(r) * scale } else { 0.0 };
            let c_neg = if support.0.is_infinite() { density(-r) * scale } else { 0.0 };
            Some((c_neg, c_pos, *alpha))
        } else {
            None
        }
    }

    fn unbounded_without_hint(&self) -> bool {
        matches!(
            &self.kind,
            MeasureKind::Density { support, tail: None, .. }
                if support.0.is_infinite() || support.1.is_infinite()
        )
    }

    /// ∫_{|r|>threshold} w(|r|) ν(dr) for a nonnegative weight with a known
    /// power envelope `tail_power` (w(r) ≍ r^{tail_power} as r → ∞), used to
    /// decide the analytic remainder. Pass the weight as a function of |r|.
    fn integrate_tail_weight<W: Fn(f64) -> f64>(
        &self,
        threshold: f64,
        w: W,
        tail_power: TailPower,
    ) -> Result<IntegralOutcome, LevyError> {
        assert!(threshold > 0.0);
        match &self.kind {
            MeasureKind::Atoms(atoms) => {
                let value = atoms
                    .iter()
                    .filter(|&&(r, _)| r.abs() > threshold)
                    .map(|&(r, m)| m * w(r.abs()))
                    .sum();
                Ok(IntegralOutcome::finite(value, 0.0))
            }
            MeasureKind::Tabulated { radii, values } => {
                let hi = *radii.last().unwrap();
                if threshold >= hi {
                    return Ok(IntegralOutcome::finite(0.0, 0.0));
                }
                let f = |r: f64| 2.0 * w(r) * Self::tabulated_eval(radii, values, r);
                let q = quad::integrate(f, threshold, hi, QuadOpts::default());
                Ok(IntegralOutcome::finite(q.value, q.abs_error))
            }
            MeasureKind::Density {
                density,
                support,
                tail,
                ..
            } => {
                if self.unbounded_without_hint() {
                    return Err(LevyError::MissingTailHint(
                        "unbounded-support density needs a tail exponent hint; refusing to truncate silently".into(),
                    ));
                }
                let r_work = self.cutoffs.1;
                let mut value = 0.0;
                let mut bound = 0.0;
                // Positive side, clipped to the support so narrow features
                // are not lost in a wide panel.
                let pos_lo = threshold.max(support.0.max(0.0));
                let pos_hi = support.1.min(r_work);
                if pos_hi > pos_lo {
                    let q = quad::integrate(|r| w(r) * density(r), pos_lo, pos_hi, QuadOpts::default());
                    value += q.value;
                    bound += q.abs_error;
                }
                // Negative side.
                let neg_hi = (-threshold).min(support.1.min(0.0));
                let neg_lo = support.0.max(-r_work);
                if neg_hi > neg_lo {
                    let q =
                        quad::integrate(|r| w(-r) * density(r), neg_lo, neg_hi, QuadOpts::default());
                    value += q.value;
                    bound += q.abs_error;
                }
                // Analytic remainder beyond the working cutoff.
                if support.0.is_infinite() || support.1.is_infinite() {
                    let (c_neg, c_pos, alpha) = self
                        .tail_model()
                        .expect("hint present by the check above");
                    let c_total = c_neg + c_pos;
                    if c_total > 0.0 {
                        match tail_power {
                            TailPower::Power(beta) => {
                                if beta >= alpha {
                                    return Ok(IntegralOutcome::Divergent {
                                        witness: format!(
                                            "∫_{{|r|>{r_work:.3}}} |r|^{beta} · c|r|^{{-1-{alpha}}} dr diverges (β ≥ α, hint α = {alpha})",
                                        ),
                                    });
                                }
                                value += c_total * special::power_tail(beta - 1.0 - alpha, r_work);
                                bound += 1e-12 * value.abs();
                            }
                            TailPower::LogPower(p) => {
                                value += c_total * special::log_power_tail(p, alpha, r_work.max(1.0));
                                bound += 1e-12 * value.abs();
                            }
                            TailPower::Bounded(sup_w) => {
                                // w bounded ⇒ remainder ≤ sup_w × model tail mass.
                                let rem = sup_w * c_total * special::power_tail(-1.0 - alpha, r_work);
                                value += 0.0;
                                bound += rem;
                            }
                        }
                    }
                    let _ = tail;
                }
                Ok(IntegralOutcome::finite(value, bound))
            }
        }
    }

    /// ∫_{0<|r|≤threshold} |r|^beta ν(dr); divergence decided by the origin
    /// hint when present, otherwise by dyadic panel growth.
    fn integrate_small(&self, beta: f64, threshold: f64) -> Result<IntegralOutcome, LevyError> {
        assert!(threshold > 0.0);
        match &self.kind {
            MeasureKind::Atoms(atoms) => {
                let value = atoms
                    .iter()
                    .filter(|&&(r, _)| r.abs() <= threshold)
                    .map(|&(r, m)| m * r.abs().powf(beta))
                    .sum();
                Ok(IntegralOutcome::finite(value, 0.0))
            }
            MeasureKind::Tabulated { radii, values } => {
                let lo = radii[0];
                let hi = threshold.min(*radii.last().unwrap());
                if hi <= lo {
                    return Ok(IntegralOutcome::finite(0.0, 0.0));
                }
                let f = |r: f64| 2.0 * r.powf(beta) * Self::tabulated_eval(radii, values, r);
                let q = quad::integrate(f, lo, hi, QuadOpts::default());
                Ok(IntegralOutcome::finite(q.value, q.abs_error))
            }
            MeasureKind::Density {
                density,
                support,
                origin,
                ..
            } => {
                if let Some(OriginHint { alpha0 }) = origin {
                    if beta <= *alpha0 {
                        return Ok(IntegralOutcome::Divergent {
                            witness: format!(
                                "∫_0 |r|^{beta} · |r|^{{-1-{alpha0}}} dr diverges (β ≤ α₀, origin hint α₀ = {alpha0})"
                            ),
                        });
                    }
                }
                let mut value = 0.0;
                let mut bound = 0.0;
                // Each side is clipped to the support; only supports that
                // actually reach 0 need the singular driver.
                let mut one_side = |lo_abs: f64, hi_abs: f64, sign: f64| -> Result<(), String> {
                    if hi_abs <= lo_abs.max(0.0) {
                        return Ok(());
                    }
                    if lo_abs > 0.0 {
                        let q = quad::integrate(
                            |r| r.powf(beta) * density(sign * r),
                            lo_abs,
                            hi_abs,
                            QuadOpts::with_tol(LEVY_CHECK_TOL),
                        );
                        value += q.value;
                        bound += q.abs_error;
                        return Ok(());
                    }
                    match quad::integrate_to_zero(
                        |r| r.powf(beta) * density(sign * r),
                        hi_abs,
                        QuadOpts::with_tol(LEVY_CHECK_TOL),
                    ) {
                        ImproperOutcome::Converged(q) => {
                            value += q.value;
                            bound += q.abs_error;
                            Ok(())
                        }
                        ImproperOutcome::Diverging { partial, .. } => Err(format!(
                            "dyadic panels toward 0 keep growing on the {} side (partial sum {partial:.3e})",
                            if sign > 0.0 { "positive" } else { "negative" }
                        )),
                    }
                };
                let pos = one_side(support.0.max(0.0), support.1.min(threshold), 1.0);
                if let Err(witness) = pos {
                    return Ok(IntegralOutcome::Divergent { witness });
                }
                let neg = one_side((-support.1).max(0.0), (-support.0).min(threshold), -1.0);
                if let Err(witness) = neg {
                    return Ok(IntegralOutcome::Divergent { witness });
                }
                Ok(IntegralOutcome::finite(value, bound))
            }
        }
    }

    /// ν(|r| > threshold). Always finite for a valid Lévy measure.
    pub fn mass_above(&self, threshold: f64) -> Result<f64, LevyError> {
        let out = self.integrate_tail_weight(threshold, |_| 1.0, TailPower::Power(0.0))?;
        Ok(out.expect_finite("ν tail mass"))
    }

    /// σ²(ε) = ∫_{0<|r|≤ε} r² ν(dr).
    pub fn small_jump_variance(&self, eps: f64) -> Result<f64, LevyError> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(LevyError::InvalidArgument(format!(
                "eps must lie in (0, 1], got {eps}"
            )));
        }
        Ok(self
            .integrate_small(2.0, eps)?
            .expect_finite("small-jump variance"))
    }

    /// Signed compensator piece ∫_{eps<|r|≤1} r ν(dr).
    pub fn interval_first_moment(&self, eps: f64) -> Result<f64, LevyError> {
        assert!(eps > 0.0 && eps <= 1.0);
        if eps == 1.0 {
            return Ok(0.0);
        }
        match &self.kind {
            MeasureKind::Atoms(atoms) => Ok(atoms
                .iter()
                .filter(|&&(r, _)| r.abs() > eps && r.abs() <= 1.0)
                .map(|&(r, m)| m * r)
                .sum()),
            MeasureKind::Tabulated { radii, values } => {
                // Symmetric density ⇒ signed moment vanishes.
                let _ = (radii, values);
                Ok(0.0)
            }
            MeasureKind::Density {
                density, support, ..
            } => {
                let mut value = 0.0;
                let (a, b) = (eps.max(support.0.max(0.0)), support.1.min(1.0));
                if b > a {
                    value += quad::integrate(|r| r * density(r), a, b, QuadOpts::default()).value;
                }
                let (a, b) = (support.0.max(-1.0), (-eps).min(support.1.min(0.0)));
                if b > a {
                    value += quad::integrate(|r| r * density(r), a, b, QuadOpts::default()).value;
                }
                Ok(value)
            }
        }
    }

    /// Signed ∫_{|r|>1} r ν(dr); `None` when the first absolute moment is
    /// infinite.
    pub fn signed_tail_first_moment(&self) -> Result<Option<f64>, LevyError> {
        match moment_integral(1.0, self)? {
            IntegralOutcome::Divergent { .. } => Ok(None),
            IntegralOutcome::Finite { .. } => match &self.kind {
                MeasureKind::Atoms(atoms) => Ok(Some(
                    atoms
                        .iter()
                        .filter(|&&(r, _)| r.abs() > 1.0)
                        .map(|&(r, m)| m * r)
                        .sum(),
                )),
                MeasureKind::Tabulated { .. } => Ok(Some(0.0)),
                MeasureKind::Density {
                    density, support, ..
                } => {
                    let r_work = self.cutoffs.1;
                    let mut value = 0.0;
                    let (a, b) = (1.0f64.max(support.0), support.1.min(r_work));
                    if b > a {
                        value += quad::integrate(|r| r * density(r), a, b, QuadOpts::default()).value;
                    }
                    let (a, b) = (support.0.max(-r_work), (-1.0f64).min(support.1));
                    if b > a {
                        value += quad::integrate(|r| r * density(r), a, b, QuadOpts::default()).value;
                    }
                    if let Some((c_neg, c_pos, alpha)) = self.tail_model() {
                        // Signed remainder of the model tails.
                        if c_pos > 0.0 {
                            value += c_pos * special::power_tail(-alpha, r_work);
                        }
                        if c_neg > 0.0 {
                            value -= c_neg * special::power_tail(-alpha, r_work);
                        }
                    }
                    Ok(Some(value))
                }
            },
        }
    }

    /// ∫_{|r|≤1} |r|^beta ν(dr), the small-jump moment of the β-route.
    pub fn small_abs_moment(&self, beta: f64) -> Result<IntegralOutcome, LevyError> {
        self.integrate_small(beta, 1.0)
    }

    /// ∫_{0<|r|≤threshold} r² ν(dr) for arbitrary finite threshold (the
    /// part above 1 is bounded by threshold²·ν(|r|>1)).
    pub fn second_moment_below(&self, threshold: f64) -> Result<f64, LevyError> {
        assert!(threshold > 0.0);
        let small = self
            .integrate_small(2.0, threshold.min(1.0))?
            .expect_finite("second moment below 1");
        if threshold <= 1.0 {
            return Ok(small);
        }
        let upper = self.integrate_tail_weight(1.0, |r| r * r, TailPower::Bounded(threshold * threshold));
        // Restrict to |r| ≤ threshold by recomputing with the cut applied.
        let mid = match &self.kind {
            MeasureKind::Atoms(atoms) => atoms
                .iter()
                .filter(|&&(r, _)| r.abs() > 1.0 && r.abs() <= threshold)
                .map(|&(r, m)| m * r * r)
                .sum(),
            MeasureKind::Tabulated { radii, values } => {
                let hi = threshold.min(*radii.last().unwrap());
                if hi <= 1.0 {
                    0.0
                } else {
                    quad::integrate(
                        |r| 2.0 * r * r * Self::tabulated_eval(radii, values, r),
                        1.0,
                        hi,
                        QuadOpts::default(),
                    )
                    .value
                }
            }
            MeasureKind::Density {
                density, support, ..
            } => {
                let mut v = 0.0;
                let hi = support.1.min(threshold);
                if hi > 1.0 {
                    v += quad::integrate(|r| r * r * density(r), 1.0, hi, QuadOpts::default()).value;
                }
                let lo = support.0.max(-threshold);
                if lo < -1.0 {
                    v += quad::integrate(|r| r * r * density(r), lo, -1.0, QuadOpts::default()).value;
                }
                v
            }
        };
        let _ = upper;
        Ok(small + mid)
    }
}

enum TailPower {
    /// Weight ~ r^beta at infinity (exact model remainder).
    Power(f64),
    /// Weight ~ (ln r)^p at infinity.
    LogPower(u32),
    /// Weight bounded by a constant (remainder folded into the bound).
    Bounded(f64),
}

/// ∫_{|r|>1} |r|^beta ν(dr) with remainder bound, or a divergence flag when
/// the tail hint implies divergence.
pub fn moment_integral(beta: f64, nu: &LevyMeasure) -> Result<IntegralOutcome, LevyError> {
    if !(beta > 0.0) {
        return Err(LevyError::InvalidArgument(format!(
            "beta must be positive, got {beta}"
        )));
    }
    nu.integrate_tail_weight(1.0, |r| r.powf(beta), TailPower::Power(beta))
}

/// ∫_{|r|>1} log(|r|)^power ν(dr) with remainder bound.
pub fn log_moment_integral(power: u32, nu: &LevyMeasure) -> Result<IntegralOutcome, LevyError> {
    if power == 0 {
        return Err(LevyError::InvalidArgument("power must be ≥ 1".into()));
    }
    nu.integrate_tail_weight(1.0, |r| r.ln().powi(power as i32), TailPower::LogPower(power))
}

/// σ²(ε) = ∫_{0<|r|≤ε} r² ν(dr); the Gaussian substitute variance for jumps
/// below the truncation level.
pub fn small_jump_variance(eps: f64, nu: &LevyMeasure) -> Result<f64, LevyError> {
    nu.small_jump_variance(eps)
}

/// The characteristic triplet (a, γ, ν) of a Lévy white noise.
#[derive(Debug, Clone)]
pub struct LevyTriplet {
    pub gaussian: f64,
    pub drift: f64,
    pub jumps: LevyMeasure,
}

impl LevyTriplet {
    pub fn new(gaussian: f64, drift: f64, jumps: LevyMeasure) -> Result<Self, LevyError> {
        if gaussian < 0.0 {
            return Err(LevyError::InvalidArgument(format!(
                "Gaussian variance must be ≥ 0, got {gaussian}"
            )));
        }
        Ok(LevyTriplet {
            gaussian,
            drift,
            jumps,
        })
    }

    pub fn gaussian_only(variance: f64) -> Self {
        LevyTriplet::new(variance, 0.0, LevyMeasure::none()).expect("valid")
    }

    /// ψ(z) = iγz − az²/2 + ∫ (e^{irz} − 1 − irz·1_{|r|≤1}) ν(dr) at the
    /// default absolute tolerance 1e-8.
    pub fn psi(&self, z: f64) -> Result<Complex64, LevyError> {
        self.psi_with_tol(z, 1e-8)
    }

    pub fn psi_with_tol(&self, z: f64, tol: f64) -> Result<Complex64, LevyError> {
        let deterministic = Complex64::new(
            -0.5 * self.gaussian * z * z,
            self.drift * z,
        );
        let (jump, err) = self.jump_exponent(z, tol)?;
        if err > tol {
            return Err(LevyError::Accuracy {
                achieved: err,
                requested: tol,
            });
        }
        let mut out = deterministic + jump;
        // Re ψ ≤ 0 for any infinitely divisible law; clamp roundoff.
        debug_assert!(out.re <= err + 1e-12, "Re ψ = {} exceeds bound {}", out.re, err);
        if out.re > 0.0 {
            out.re = 0.0;
        }
        Ok(out)
    }

    fn jump_exponent(&self, z: f64, tol: f64) -> Result<(Complex64, f64), LevyError> {
        let nu = &self.jumps;
        match nu.kind() {
            MeasureKind::Atoms(atoms) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for &(r, m) in atoms {
                    acc += m * psi_integrand(r, z);
                }
                Ok((acc, 0.0))
            }
            MeasureKind::Tabulated { radii, values } => {
                let lo = radii[0];
                let hi = *radii.last().unwrap();
                let re = quad::integrate(
                    |r| {
                        let d = LevyMeasure::tabulated_eval(radii, values, r);
                        (psi_integrand(r, z).re + psi_integrand(-r, z).re) * d
                    },
                    lo,
                    hi,
                    QuadOpts::with_tol(tol * 0.25),
                );
                let im = quad::integrate(
                    |r| {
                        let d = LevyMeasure::tabulated_eval(radii, values, r);
                        (psi_integrand(r, z).im + psi_integrand(-r, z).im) * d
                    },
                    lo,
                    hi,
                    QuadOpts::with_tol(tol * 0.25),
                );
                Ok((
                    Complex64::new(re.value, im.value),
                    re.abs_error + im.abs_error,
                ))
            }
            MeasureKind::Density {
                density, support, ..
            } => {
                if nu.unbounded_without_hint() {
                    return Err(LevyError::MissingTailHint(
                        "ψ for an unbounded-support density needs a tail hint".into(),
                    ));
                }
                let mut acc = Complex64::new(0.0, 0.0);
                let mut err = 0.0;
                let r_work = nu.cutoffs.1;
                // Integrable singularity at 0 (integrand ~ r²z² × density);
                // quadrature ranges are clipped to the support per side.
                let mut side = |sign: f64, lo_abs: f64, hi_abs: f64| -> Result<(), LevyError> {
                    let lo_abs = lo_abs.max(0.0);
                    if hi_abs <= lo_abs {
                        return Ok(());
                    }
                    // Split at |r| = 1 where the compensator switches off.
                    let pieces = [(lo_abs, hi_abs.min(1.0)), (lo_abs.max(1.0), hi_abs)];
                    for &(a, b) in &pieces {
                        if b <= a {
                            continue;
                        }
                        let reim = |which_re: bool| {
                            let g = |r: f64| {
                                let c = psi_integrand(sign * r, z) * density(sign * r);
                                if which_re {
                                    c.re
                                } else {
                                    c.im
                                }
                            };
                            if a == 0.0 {
                                quad::integrate_to_zero(g, b, QuadOpts::with_tol(tol * 0.1))
                                    .converged()
                                    .map(|q| (q.value, q.abs_error))
                            } else {
                                let q = quad::integrate(g, a, b, QuadOpts::with_tol(tol * 0.1));
                                Some((q.value, q.abs_error))
                            }
                        };
                        let (re, re_err) = reim(true).ok_or(LevyError::Accuracy {
                            achieved: f64::INFINITY,
                            requested: tol,
                        })?;
                        let (im, im_err) = reim(false).ok_or(LevyError::Accuracy {
                            achieved: f64::INFINITY,
                            requested: tol,
                        })?;
                        acc += Complex64::new(re, im);
                        err += re_err + im_err;
                    }
                    Ok(())
                };
                side(1.0, support.0.max(0.0), support.1.min(r_work))?;
                side(-1.0, (-support.1).max(0.0), (-support.0).min(r_work))?;
                // Tail beyond the working cutoff: subtract the exact model
                // mass (the −1 term) and bound the oscillatory remainder by
                // a two-term stationary-phase expansion.
                if let Some((c_neg, c_pos, alpha)) = nu.tail_model() {
                    let c_total = c_neg + c_pos;
                    if c_total > 0.0 {
                        let mass = c_total * special::power_tail(-1.0 - alpha, r_work);
                        acc -= Complex64::new(mass, 0.0);
                        let osc = if z.abs() > 1e-12 {
                            // |∫_R^∞ e^{irz} c r^{-1-α} dr| ≲ c R^{-1-α}/|z| · (1 + (1+α)/(R|z|))
                            let base = c_total * r_work.powf(-1.0 - alpha) / z.abs();
                            (base * (1.0 + (1.0 + alpha) / (r_work * z.abs()))).min(2.0 * mass)
                        } else {
                            0.0
                        };
                        err += osc;
                    }
                }
                Ok((acc, err))
            }
        }
    }
}

/// e^{irz} − 1 − irz·1_{|r|≤1}, evaluated without cancellation.
fn psi_integrand(r: f64, z: f64) -> Complex64 {
    let x = r * z;
    let re = -2.0 * (0.5 * x).sin().powi(2); // cos(x) − 1
    let im = if r.abs() <= 1.0 {
        sin_minus_x(x)
    } else {
        x.sin()
    };
    Complex64::new(re, im)
}

/// sin(x) − x without cancellation.
fn sin_minus_x(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        -x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    } else {
        x.sin() - x
    }
}
