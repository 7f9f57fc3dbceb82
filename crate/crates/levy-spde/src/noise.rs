//! Lévy basis simulation on a lattice: independent, infinitely divisible
//! increments per cell, and pairings ⟨L̇, f⟩ against sampled functions.
//!
//! Per cell of volume v the increment is
//!
//!   γ·v + sqrt(a·v)·Z + Σ jumps(ν restricted to |r|>ε, rate ν(|r|>ε)·v)
//!        − v·∫_{ε<|r|≤1} r ν(dr) + sqrt(σ²(ε)·v)·Z′,
//!
//! i.e. exact compound-Poisson jumps above the truncation level ε and a
//! Gaussian substitute with the matched variance σ²(ε) below it. Cells use
//! counter-based RNG streams derived from (seed, cell index), so parallel
//! generation is order-independent and reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use rayon::prelude::*;
use thiserror::Error;

use crate::grid::GridSpec;
use crate::levy::{moment_integral, IntegralOutcome, LevyError, LevyMeasure, LevyTriplet, MeasureKind};
use crate::quad::{self, QuadOpts};

#[derive(Debug, Error)]
pub enum NoiseError {
    #[error(transparent)]
    Levy(#[from] LevyError),
    #[error("per-cell jump rate {rate:.3e} exceeds {cap:.1e}; increase eps or refine the grid")]
    JumpRateOverflow { rate: f64, cap: f64 },
    #[error("eps must lie in (0, 1], got {0}")]
    BadEps(f64),
}

/// Smooth compactly supported test function: the bump profile
/// exp(−1/(1−‖(x−c)/ρ‖²)) on ‖x−c‖ < ρ, optionally modulated.
#[derive(Debug, Clone)]
pub struct TestFunction {
    pub center: [f64; 3],
    pub radius: f64,
    pub modulation: Modulation,
}

#[derive(Debug, Clone)]
pub enum Modulation {
    None,
    /// cos(k·x) factor.
    Cosine { freq: [f64; 3] },
    /// (x_axis − center_axis) factor.
    Coordinate { axis: usize },
}

impl TestFunction {
    pub fn bump(center: [f64; 3], radius: f64) -> Self {
        assert!(radius > 0.0);
        TestFunction {
            center,
            radius,
            modulation: Modulation::None,
        }
    }

    pub fn with_cosine(mut self, freq: [f64; 3]) -> Self {
        self.modulation = Modulation::Cosine { freq };
        self
    }

    pub fn with_coordinate(mut self, axis: usize) -> Self {
        self.modulation = Modulation::Coordinate { axis };
        self
    }

    pub fn eval(&self, x: &[f64; 3]) -> f64 {
        let t2 = x
            .iter()
            .zip(&self.center)
            .map(|(a, c)| (a - c) * (a - c))
            .sum::<f64>()
            / (self.radius * self.radius);
        if t2 >= 1.0 {
            return 0.0;
        }
        let bump = (-1.0 / (1.0 - t2)).exp();
        let m = match &self.modulation {
            Modulation::None => 1.0,
            Modulation::Cosine { freq } => {
                let phase: f64 = freq.iter().zip(x).map(|(k, a)| k * a).sum();
                phase.cos()
            }
            Modulation::Coordinate { axis } => x[*axis] - self.center[*axis],
        };
        bump * m
    }

    /// Upper bound on ‖φ‖_∞.
    pub fn sup_norm_bound(&self) -> f64 {
        let peak = (-1.0f64).exp();
        match &self.modulation {
            Modulation::None | Modulation::Cosine { .. } => peak,
            Modulation::Coordinate { .. } => peak * self.radius,
        }
    }

    /// True when the support ball sits inside the grid box.
    pub fn supported_inside(&self, grid: &GridSpec) -> bool {
        (0..grid.dim()).all(|a| {
            let (lo, hi) = grid.bounds(a);
            self.center[a] - self.radius >= lo && self.center[a] + self.radius <= hi
        })
    }
}

/// Precomputed jump machinery for ν restricted to |r| > eps.
struct JumpSampler {
    rate_per_volume: f64,
    table: JumpTable,
}

enum JumpTable {
    Empty,
    Atoms {
        /// (position, cumulative mass), cumulative normalized to total.
        positions: Vec<f64>,
        cumulative: Vec<f64>,
    },
    Curve {
        /// Per-side inverse-CDF tables on [eps, r_work] plus optional exact
        /// Pareto continuation for the model tail.
        sides: Vec<CurveSide>,
        cumulative: Vec<f64>,
    },
}

struct CurveSide {
    sign: f64,
    /// Segment boundaries (increasing |r|) and cumulative masses.
    knots: Vec<f64>,
    cum: Vec<f64>,
    numeric_mass: f64,
    /// (c, alpha, r_work): exact tail inversion for the power model.
    tail: Option<(f64, f64, f64)>,
}

impl CurveSide {
    fn mass(&self) -> f64 {
        self.numeric_mass
            + self
                .tail
                .map(|(c, alpha, r)| c * r.powf(-alpha) / alpha)
                .unwrap_or(0.0)
    }

    fn sample(&self, u: f64) -> f64 {
        let total = self.mass();
        let target = u * total;
        if target >= self.numeric_mass {
            if let Some((_, alpha, r_work)) = self.tail {
                let tail_mass = total - self.numeric_mass;
                let q = ((target - self.numeric_mass) / tail_mass).min(1.0 - 1e-16);
                // P(R > s | R > r_work) = (s/r_work)^{-alpha}
                return self.sign * r_work * (1.0 - q).powf(-1.0 / alpha);
            }
        }
        let idx = self
            .cum
            .partition_point(|&c| c < target)
            .clamp(1, self.knots.len() - 1);
        let (c0, c1) = (self.cum[idx - 1], self.cum[idx]);
        let t = if c1 > c0 { (target - c0) / (c1 - c0) } else { 0.5 };
        self.sign * (self.knots[idx - 1] + t * (self.knots[idx] - self.knots[idx - 1]))
    }
}

const JUMP_RATE_CAP: f64 = 1e7;
const CURVE_SEGMENTS: usize = 4096;

impl JumpSampler {
    fn build(nu: &LevyMeasure, eps: f64) -> Result<Self, NoiseError> {
        let table = match nu.kind() {
            MeasureKind::Atoms(atoms) => {
                let kept: Vec<(f64, f64)> = atoms
                    .iter()
                    .copied()
                    .filter(|&(r, _)| r.abs() > eps)
                    .collect();
                if kept.is_empty() {
                    JumpTable::Empty
                } else {
                    let mut cumulative = Vec::with_capacity(kept.len());
                    let mut acc = 0.0;
                    for &(_, m) in &kept {
                        acc += m;
                        cumulative.push(acc);
                    }
                    JumpTable::Atoms {
                        positions: kept.iter().map(|&(r, _)| r).collect(),
                        cumulative,
                    }
                }
            }
            MeasureKind::Tabulated { radii, values } => {
                let hi = *radii.last().unwrap();
                let lo = radii[0].max(eps);
                if lo >= hi {
                    JumpTable::Empty
                } else {
                    let eval = {
                        let radii = radii.clone();
                        let values = values.clone();
                        move |r: f64| tabulated_interp(&radii, &values, r)
                    };
                    let side = build_curve_side(1.0, lo, hi, &eval, None);
                    // Symmetric two-sided density.
                    let neg = CurveSide {
                        sign: -1.0,
                        knots: side.knots.clone(),
                        cum: side.cum.clone(),
                        numeric_mass: side.numeric_mass,
                        tail: None,
                    };
                    let cumulative = vec![side.mass(), side.mass() + neg.mass()];
                    JumpTable::Curve {
                        sides: vec![side, neg],
                        cumulative,
                    }
                }
            }
            MeasureKind::Density {
                density,
                support,
                tail,
                ..
            } => {
                let r_work = nu.cutoffs.1;
                let mut sides = Vec::new();
                let pos_lo = eps.max(support.0.max(0.0));
                let pos_hi = support.1.min(r_work);
                if pos_hi > pos_lo {
                    let tail_model = if support.1.is_infinite() {
                        tail.map(|t| (density(r_work) * r_work.powf(1.0 + t.alpha), t.alpha, r_work))
                    } else {
                        None
                    };
                    let f = |r: f64| density(r);
                    sides.push(build_curve_side(1.0, pos_lo, pos_hi, &f, tail_model));
                }
                let neg_lo = eps.max((-support.1).max(0.0));
                let neg_hi = (-support.0).min(r_work);
                if neg_hi > neg_lo {
                    let tail_model = if support.0.is_infinite() {
                        tail.map(|t| (density(-r_work) * r_work.powf(1.0 + t.alpha), t.alpha, r_work))
                    } else {
                        None
                    };
                    let f = |r: f64| density(-r);
                    sides.push(build_curve_side(-1.0, neg_lo, neg_hi, &f, tail_model));
                }
                if sides.is_empty() {
                    JumpTable::Empty
                } else {
                    let mut cumulative = Vec::new();
                    let mut acc = 0.0;
                    for s in &sides {
                        acc += s.mass();
                        cumulative.push(acc);
                    }
                    JumpTable::Curve { sides, cumulative }
                }
            }
        };
        let rate = match &table {
            JumpTable::Empty => 0.0,
            JumpTable::Atoms { cumulative, .. } => *cumulative.last().unwrap(),
            JumpTable::Curve { cumulative, .. } => *cumulative.last().unwrap(),
        };
        Ok(JumpSampler {
            rate_per_volume: rate,
            table,
        })
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let u: f64 = rng.random();
        match &self.table {
            JumpTable::Empty => 0.0,
            JumpTable::Atoms {
                positions,
                cumulative,
            } => {
                let total = *cumulative.last().unwrap();
                let idx = cumulative.partition_point(|&c| c < u * total);
                positions[idx.min(positions.len() - 1)]
            }
            JumpTable::Curve { sides, cumulative } => {
                let total = *cumulative.last().unwrap();
                let target = u * total;
                let idx = cumulative.partition_point(|&c| c < target);
                let idx = idx.min(sides.len() - 1);
                let base = if idx == 0 { 0.0 } else { cumulative[idx - 1] };
                let local = (target - base) / (cumulative[idx] - base).max(1e-300);
                sides[idx].sample(local.clamp(0.0, 1.0 - 1e-16))
            }
        }
    }
}

fn tabulated_interp(radii: &[f64], values: &[f64], r: f64) -> f64 {
    if r < radii[0] || r > *radii.last().unwrap() {
        return 0.0;
    }
    let idx = radii.partition_point(|&x| x < r).clamp(1, radii.len() - 1);
    let (r0, r1) = (radii[idx - 1], radii[idx]);
    let t = (r - r0) / (r1 - r0);
    values[idx - 1] * (1.0 - t) + values[idx] * t
}

fn build_curve_side<F: Fn(f64) -> f64>(
    sign: f64,
    lo: f64,
    hi: f64,
    density: &F,
    tail: Option<(f64, f64, f64)>,
) -> CurveSide {
    // Geometric knot spacing resolves power-like densities.
    let ratio = (hi / lo).powf(1.0 / CURVE_SEGMENTS as f64);
    let mut knots = Vec::with_capacity(CURVE_SEGMENTS + 1);
    let mut cum = Vec::with_capacity(CURVE_SEGMENTS + 1);
    let mut acc = 0.0;
    let mut r = lo;
    knots.push(lo);
    cum.push(0.0);
    for _ in 0..CURVE_SEGMENTS {
        let next = (r * ratio).min(hi);
        let q = quad::integrate(density, r, next, QuadOpts {
            abs_tol: 1e-12,
            rel_tol: 1e-9,
            max_panels: 32,
        });
        acc += q.value.max(0.0);
        knots.push(next);
        cum.push(acc);
        r = next;
    }
    CurveSide {
        sign,
        knots,
        cum,
        numeric_mass: acc,
        tail: tail.filter(|&(c, _, _)| c > 0.0),
    }
}

/// One simulated noise realization: per-cell increments with full provenance.
#[derive(Debug, Clone)]
pub struct NoiseRealization {
    pub grid: GridSpec,
    pub triplet: LevyTriplet,
    pub eps: f64,
    pub seed: u64,
    pub increments: Vec<f64>,
}

/// Simulate a Lévy basis on the grid. Deterministic in (grid, triplet, eps,
/// seed); cells are generated in parallel on independent RNG streams.
pub fn sample_noise(
    grid: &GridSpec,
    triplet: &LevyTriplet,
    eps: f64,
    seed: u64,
) -> Result<NoiseRealization, NoiseError> {
    let plan = NoisePlan::new(grid, triplet, eps)?;
    Ok(plan.realize(seed))
}

/// Reusable sampling plan: all measure integrals and jump tables are built
/// once, so Monte Carlo batches only pay for the draws.
pub struct NoisePlan {
    grid: GridSpec,
    triplet: LevyTriplet,
    eps: f64,
    volume: f64,
    drift_term: f64,
    gauss_scale: f64,
    small_scale: f64,
    jump_rate: f64,
    sampler: JumpSampler,
}

impl NoisePlan {
    pub fn new(grid: &GridSpec, triplet: &LevyTriplet, eps: f64) -> Result<Self, NoiseError> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(NoiseError::BadEps(eps));
        }
        let v = grid.cell_volume();
        let sampler = JumpSampler::build(&triplet.jumps, eps)?;
        let rate = sampler.rate_per_volume * v;
        if rate > JUMP_RATE_CAP {
            return Err(NoiseError::JumpRateOverflow {
                rate,
                cap: JUMP_RATE_CAP,
            });
        }
        let compensator = triplet.jumps.interval_first_moment(eps)?;
        let sigma2 = triplet.jumps.small_jump_variance(eps)?;
        Ok(NoisePlan {
            grid: grid.clone(),
            triplet: triplet.clone(),
            eps,
            volume: v,
            drift_term: (triplet.drift - compensator) * v,
            gauss_scale: (triplet.gaussian * v).sqrt(),
            small_scale: (sigma2 * v).sqrt(),
            jump_rate: rate,
            sampler,
        })
    }

    pub fn realize(&self, seed: u64) -> NoiseRealization {
        let n = self.grid.len();
        let poisson = if self.jump_rate > 0.0 {
            Some(Poisson::new(self.jump_rate).expect("positive rate"))
        } else {
            None
        };
        let increments: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|cell| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(cell as u64 + 1);
                let mut inc = self.drift_term;
                if self.gauss_scale > 0.0 {
                    let z: f64 = rng.sample(StandardNormal);
                    inc += self.gauss_scale * z;
                }
                if let Some(p) = &poisson {
                    let count = p.sample(&mut rng) as u64;
                    for _ in 0..count {
                        inc += self.sampler.draw(&mut rng);
                    }
                }
                if self.small_scale > 0.0 {
                    let z: f64 = rng.sample(StandardNormal);
                    inc += self.small_scale * z;
                }
                inc
            })
            .collect();
        NoiseRealization {
            grid: self.grid.clone(),
            triplet: self.triplet.clone(),
            eps: self.eps,
            seed,
            increments,
        }
    }

    pub fn cell_volume(&self) -> f64 {
        self.volume
    }
}

impl NoiseRealization {
    /// ⟨L̇, f⟩ ≈ Σ_cells f(cell point)·L(cell), fixed lexicographic order.
    pub fn pair<F: Fn(&[f64; 3]) -> f64>(&self, f: F) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.grid.len() {
            let fv = f(&self.grid.position(i));
            if fv != 0.0 {
                acc += fv * self.increments[i];
            }
        }
        acc
    }

    /// Pairing against an already-sampled grid function.
    pub fn pair_values(&self, f: &[f64]) -> f64 {
        assert_eq!(f.len(), self.increments.len());
        f.iter()
            .zip(&self.increments)
            .map(|(a, b)| a * b)
            .sum::<f64>()
    }

    /// Pairing against a test function, reporting whether its support had to
    /// be truncated at the box (with a bound on the ignored mass fraction).
    pub fn pair_test_function(&self, phi: &TestFunction) -> (f64, Option<f64>) {
        let value = self.pair(|x| phi.eval(x));
        if phi.supported_inside(&self.grid) {
            (value, None)
        } else {
            // Crude mass-outside bound: sup-norm × support volume fraction
            // sticking out (support volume as the bound's scale).
            let outside = phi.sup_norm_bound()
                * crate::special::ball_volume(self.grid.dim(), phi.radius);
            (value, Some(outside))
        }
    }
}

/// m₁ = γ + ∫_{|r|>1} r ν(dr); `None` when the first moment is infinite.
pub fn mean_formula(triplet: &LevyTriplet) -> Result<Option<f64>, LevyError> {
    match moment_integral(1.0, &triplet.jumps)? {
        IntegralOutcome::Divergent { .. } => Ok(None),
        IntegralOutcome::Finite { .. } => {
            let tail = triplet
                .jumps
                .signed_tail_first_moment()?
                .expect("finite by the check above");
            Ok(Some(triplet.drift + tail))
        }
    }
}

/// Drift that centers the noise: γ := −∫_{|r|>1} r ν(dr).
pub fn centering_drift(nu: &LevyMeasure) -> Result<Option<f64>, LevyError> {
    Ok(nu.signed_tail_first_moment()?.map(|m| -m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn grid1d(n: usize) -> GridSpec {
        GridSpec::cube(1, -1.0, 1.0, n).unwrap()
    }

    #[test]
    fn gaussian_increments_have_cell_variance() {
        let grid = grid1d(100_000);
        let t = LevyTriplet::gaussian_only(1.0);
        let noise = sample_noise(&grid, &t, 0.5, 7).unwrap();
        let v = grid.cell_volume();
        let n = noise.increments.len() as f64;
        let mean = noise.increments.iter().sum::<f64>() / n;
        let var = noise
            .increments
            .iter()
            .map(|x| (x - mean) * (x - mean))
            .sum::<f64>()
            / n;
        assert!(mean.abs() < 4.0 * (v / n).sqrt(), "mean {mean}");
        assert_relative_eq!(var, v, max_relative = 0.02);
    }

    #[test]
    fn drift_only_increments_are_deterministic() {
        let grid = grid1d(64);
        let t = LevyTriplet::new(0.0, 5.0, LevyMeasure::none()).unwrap();
        let noise = sample_noise(&grid, &t, 0.5, 3).unwrap();
        let v = grid.cell_volume();
        for &inc in &noise.increments {
            assert_relative_eq!(inc, 5.0 * v, max_relative = 1e-14);
        }
    }

    #[test]
    fn atom_jumps_are_compound_poisson() {
        // ν = δ at r = 3 with mass 2: increments are 3·Poisson(2v).
        let grid = grid1d(100_000);
        let nu = LevyMeasure::atoms(vec![(3.0, 2.0)]).unwrap();
        let t = LevyTriplet::new(0.0, 0.0, nu).unwrap();
        let noise = sample_noise(&grid, &t, 0.5, 11).unwrap();
        let v = grid.cell_volume();
        // Values are integer multiples of 3.
        for &inc in noise.increments.iter().take(1000) {
            let k = inc / 3.0;
            assert!((k - k.round()).abs() < 1e-12);
        }
        // Empirical CF over cells vs exp(v·ψ(z)) on a z-grid.
        let n = noise.increments.len() as f64;
        let mut max_err: f64 = 0.0;
        for iz in 0..21 {
            let z = -3.0 + 6.0 * iz as f64 / 20.0;
            let ecf = noise
                .increments
                .iter()
                .map(|&x| Complex64::new(0.0, z * x).exp())
                .sum::<Complex64>()
                / n;
            let model = (t.psi(z).unwrap() * v).exp();
            max_err = max_err.max((ecf - model).norm());
        }
        assert!(max_err < 0.02, "max CF error {max_err}");
    }

    #[test]
    fn pair_zero_function_is_zero() {
        let grid = grid1d(128);
        let t = LevyTriplet::gaussian_only(1.0);
        let noise = sample_noise(&grid, &t, 0.5, 1).unwrap();
        assert_eq!(noise.pair(|_| 0.0), 0.0);
    }

    #[test]
    fn pair_indicator_is_partial_sum() {
        let grid = grid1d(128);
        let t = LevyTriplet::gaussian_only(1.0);
        let noise = sample_noise(&grid, &t, 0.5, 5).unwrap();
        let paired = noise.pair(|x| if x[0] >= -0.5 && x[0] <= 0.5 { 1.0 } else { 0.0 });
        let direct: f64 = (0..grid.len())
            .filter(|&i| {
                let x = grid.position(i)[0];
                (-0.5..=0.5).contains(&x)
            })
            .map(|i| noise.increments[i])
            .sum();
        assert_eq!(paired, direct);
    }

    #[test]
    fn pair_variance_matches_l2_norm() {
        // Gaussian noise, bump φ: Var[⟨L̇,φ⟩] = a Σ φ(x)² v → ∫φ².
        let grid = GridSpec::cube(1, -1.0, 1.0, 65).unwrap(); // h = 1/32
        let t = LevyTriplet::gaussian_only(1.0);
        let plan = NoisePlan::new(&grid, &t, 0.5).unwrap();
        let phi = TestFunction::bump([0.0; 3], 0.8);
        let phi_vals = grid.sample(|x| phi.eval(x));
        let n_samples = 10_000;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for s in 0..n_samples {
            let noise = plan.realize(1000 + s as u64);
            let p = noise.pair_values(&phi_vals);
            sum += p;
            sum2 += p * p;
        }
        let nf = n_samples as f64;
        let var = sum2 / nf - (sum / nf) * (sum / nf);
        // Quadrature oracle for ∫ φ² dx.
        let oracle = quad::integrate(
            |x| {
                let b = phi.eval(&[x, 0.0, 0.0]);
                b * b
            },
            -0.8,
            0.8,
            QuadOpts::with_tol(1e-12),
        )
        .value;
        assert_relative_eq!(var, oracle, max_relative = 0.05);
    }

    #[test]
    fn mean_formula_examples() {
        // Symmetric atoms ±2 with γ = 0 → mean 0.
        let nu = LevyMeasure::atoms(vec![(2.0, 1.0), (-2.0, 1.0)]).unwrap();
        let t = LevyTriplet::new(0.5, 0.0, nu).unwrap();
        assert_relative_eq!(mean_formula(&t).unwrap().unwrap(), 0.0);

        // γ = 1 plus atom at 2 with mass 3 → 1 + 6 = 7.
        let nu = LevyMeasure::atoms(vec![(2.0, 3.0)]).unwrap();
        let t = LevyTriplet::new(0.0, 1.0, nu).unwrap();
        assert_relative_eq!(mean_formula(&t).unwrap().unwrap(), 7.0);

        // Centering drift makes the mean vanish.
        let nu = LevyMeasure::atoms(vec![(2.0, 0.5), (-1.5, 0.8)]).unwrap();
        let gamma = centering_drift(&nu).unwrap().unwrap();
        let t = LevyTriplet::new(0.0, gamma, nu).unwrap();
        assert!(mean_formula(&t).unwrap().unwrap().abs() < 1e-14);
    }

    #[test]
    fn mean_formula_undefined_for_heavy_tail() {
        let density: crate::levy::DensityFn = std::sync::Arc::new(|r: f64| r.abs().powf(-1.8));
        let nu = LevyMeasure::density(
            density,
            (f64::NEG_INFINITY, f64::INFINITY),
            Some(crate::levy::TailHint { alpha: 0.8 }),
            None,
        )
        .unwrap();
        let t = LevyTriplet::new(0.0, 0.0, nu).unwrap();
        assert!(mean_formula(&t).unwrap().is_none());
    }

    #[test]
    fn identical_seeds_are_bit_identical() {
        let grid = GridSpec::cube(2, -1.0, 1.0, 33).unwrap();
        let nu = LevyMeasure::atoms(vec![(2.0, 1.0), (-0.4, 2.0)]).unwrap();
        let t = LevyTriplet::new(0.7, 0.1, nu).unwrap();
        let a = sample_noise(&grid, &t, 0.3, 42).unwrap();
        let b = sample_noise(&grid, &t, 0.3, 42).unwrap();
        assert_eq!(a.increments, b.increments);
        let c = sample_noise(&grid, &t, 0.3, 43).unwrap();
        assert_ne!(a.increments, c.increments);
    }

    #[test]
    fn disjoint_pairings_are_uncorrelated() {
        let grid = grid1d(256);
        let t = LevyTriplet::gaussian_only(1.0);
        let plan = NoisePlan::new(&grid, &t, 0.5).unwrap();
        let left = grid.sample(|x| if x[0] < -0.2 { 1.0 } else { 0.0 });
        let right = grid.sample(|x| if x[0] > 0.2 { 1.0 } else { 0.0 });
        let n = 10_000;
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        for s in 0..n {
            let noise = plan.realize(s as u64);
            xs.push(noise.pair_values(&left));
            ys.push(noise.pair_values(&right));
        }
        let nf = n as f64;
        let mx = xs.iter().sum::<f64>() / nf;
        let my = ys.iter().sum::<f64>() / nf;
        let mut sxy = 0.0;
        let mut sxx = 0.0;
        let mut syy = 0.0;
        for i in 0..n {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
            syy += (ys[i] - my) * (ys[i] - my);
        }
        let corr = sxy / (sxx * syy).sqrt();
        assert!(corr.abs() < 3.0 / nf.sqrt(), "corr = {corr}");
    }

    #[test]
    fn pairing_is_linear() {
        let grid = grid1d(200);
        let nu = LevyMeasure::atoms(vec![(1.5, 2.0)]).unwrap();
        let t = LevyTriplet::new(0.3, 0.0, nu).unwrap();
        let noise = sample_noise(&grid, &t, 0.5, 9).unwrap();
        let f = grid.sample(|x| (3.0 * x[0]).sin());
        let g = grid.sample(|x| x[0] * x[0]);
        let mu = 1.7;
        let combo: Vec<f64> = f.iter().zip(&g).map(|(a, b)| a + mu * b).collect();
        let lhs = noise.pair_values(&combo);
        let rhs = noise.pair_values(&f) + mu * noise.pair_values(&g);
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }

    #[test]
    fn power_tail_jump_sampling_matches_tail_law() {
        // Pareto-type ν with density |r|^{-2.5} on |r| > 1: jump magnitudes
        // beyond s occur with relative frequency (s)^{-1.5}.
        let density: crate::levy::DensityFn = std::sync::Arc::new(|r: f64| r.abs().powf(-2.5));
        let nu = LevyMeasure::density(
            density,
            (1.0, f64::INFINITY),
            Some(crate::levy::TailHint { alpha: 1.5 }),
            None,
        )
        .unwrap();
        let sampler = JumpSampler::build(&nu, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 200_000;
        let mut count3 = 0usize;
        for _ in 0..n {
            let j = sampler.draw(&mut rng);
            assert!(j >= 1.0);
            if j > 3.0 {
                count3 += 1;
            }
        }
        let expected = 3.0f64.powf(-1.5);
        let got = count3 as f64 / n as f64;
        assert!((got - expected).abs() < 0.005, "got {got}, want {expected}");
    }
}
