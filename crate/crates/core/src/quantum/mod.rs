//! Quantum differential cross sections in units of R.
//!
//! All of them are functions of `|sin(θ/2)|` and so symmetric under
//! `θ → 2π − θ`; the classical cross section is not.

pub mod bessel;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::classical::dcs_classical;
use crate::error::{require, require_finite, Error, Result};
use crate::fit::power_law;
use crate::params::PhysicalParams;
use crate::quad::{integrate, Quadrature, Tolerance};

pub use bessel::{bessel_j0, bessel_j1};

/// Angle and action parameters shared by every quantum DCS.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumDcsInput {
    pub theta: f64,
    pub s_p: f64,
    pub s_phi: f64,
}

impl QuantumDcsInput {
    /// Rejects `θ ∉ (0, 2π)`: the forward direction is a genuine divergence.
    pub fn new(theta: f64, s_p: f64, s_phi: f64) -> Result<Self> {
        require_finite("s_phi", s_phi)?;
        require(
            theta > 0.0 && theta < TAU,
            "theta",
            theta,
            "must lie in (0, 2π); forward scattering diverges",
        )?;
        require(s_p > 0.0 && s_p.is_finite(), "s_p", s_p, "must be positive")?;
        Ok(QuantumDcsInput { theta, s_p, s_phi })
    }

    /// `|sin(θ/2)|`, identical to the last bit for `θ` and `2π − θ`.
    ///
    /// Both members of a mirror pair are first mapped onto the representative
    /// in `[π, 2π)`, where `2π − θ` is exact.
    pub fn half_angle_sine(&self) -> f64 {
        let upper = if self.theta < PI { TAU - self.theta } else { self.theta };
        (0.5 * (TAU - upper)).sin()
    }
}

/// Aharonov–Bohm, zero radius: `sin²(s_Φ/2) / (2π s_p sin²(θ/2))`.
pub fn dcs_ab(input: &QuantumDcsInput) -> f64 {
    let s = input.half_angle_sine();
    let f = (0.5 * input.s_phi).sin();
    f * f / (2.0 * PI * input.s_p * s * s)
}

/// Small-angle, small-flux perturbative form `s_Φ² / (2π s_p θ²)`, with θ
/// measured from the forward direction on either side.
pub fn dcs_ll_small_angle(input: &QuantumDcsInput) -> f64 {
    let t = if input.theta > PI {
        TAU - input.theta
    } else {
        input.theta
    };
    input.s_phi * input.s_phi / (2.0 * PI * input.s_p * t * t)
}

/// First-order relativistic Born result for a finite solenoid:
/// `(1/8π)(s_Φ²/s_p³)·[J₁(2 s_p |sin(θ/2)|) / sin²(θ/2)]²`.
pub fn dcs_born(input: &QuantumDcsInput) -> f64 {
    let s = input.half_angle_sine();
    let j = bessel_j1(2.0 * input.s_p * s) / (s * s);
    input.s_phi * input.s_phi / (8.0 * PI * input.s_p.powi(3)) * j * j
}

/// Below this Bessel argument the large-argument form is flagged.
pub const ASYMPTOTIC_THRESHOLD: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticDcs {
    pub value: f64,
    /// `2 s_p |sin(θ/2)|`
    pub bessel_argument: f64,
    /// False when the argument is too small for the expansion to be trusted.
    pub in_regime: bool,
}

/// Large-`s_p` form of [`dcs_born`]:
/// `(1/8π²)(s_Φ²/s_p⁴)·cos²(2 s_p|sin(θ/2)| − 3π/4) / |sin(θ/2)|⁵`.
pub fn dcs_born_hbar_asymptotic(input: &QuantumDcsInput) -> AsymptoticDcs {
    let s = input.half_angle_sine();
    let x = 2.0 * input.s_p * s;
    let c = (x - 0.75 * PI).cos();
    AsymptoticDcs {
        value: input.s_phi * input.s_phi / (8.0 * PI * PI * input.s_p.powi(4)) * c * c / s.powi(5),
        bessel_argument: x,
        in_regime: x >= ASYMPTOTIC_THRESHOLD,
    }
}

/// [`dcs_born_hbar_asymptotic`] with `cos² → 1/2`.
pub fn dcs_born_asymptotic_envelope(input: &QuantumDcsInput) -> f64 {
    let s = input.half_angle_sine();
    input.s_phi * input.s_phi / (16.0 * PI * PI * input.s_p.powi(4) * s.powi(5))
}

const WINDOW_POINTS: usize = 64;

/// [`dcs_born`] with `J₁²` averaged over one period of its oscillation,
/// `x ∈ [x₀ − π/2, x₀ + π/2]`, keeping the slowly varying prefactor at `x₀`.
pub fn dcs_born_envelope(input: &QuantumDcsInput) -> f64 {
    let s = input.half_angle_sine();
    let x0 = 2.0 * input.s_p * s;
    let lo = (x0 - FRAC_PI_2).max(0.0);
    let hi = lo + PI;
    let dx = (hi - lo) / WINDOW_POINTS as f64;
    let mean = (0..WINDOW_POINTS)
        .map(|i| bessel_j1(lo + (i as f64 + 0.5) * dx).powi(2))
        .sum::<f64>()
        / WINDOW_POINTS as f64;
    input.s_phi * input.s_phi / (8.0 * PI * input.s_p.powi(3) * s.powi(4)) * mean
}

/// Born cross section along a sequence of `ħ → λħ` rescalings.
#[derive(Debug, Clone, PartialEq)]
pub struct HbarScan {
    pub theta: f64,
    /// Strictly decreasing.
    pub lambda_grid: Vec<f64>,
    pub s_p: Vec<f64>,
    pub s_phi: Vec<f64>,
    pub dcs_values: Vec<f64>,
    pub envelope_values: Vec<f64>,
    /// Classical DCS at the same physical parameters.
    pub classical_values: Vec<f64>,
    /// Log-log slope of the envelope against λ.
    pub fitted_slope: f64,
    pub fit_rms_residual: f64,
}

/// Holds `e, p, R, Φ, θ` fixed and sends `ħ → λħ` over `lambda_grid`.
pub fn hbar_scan(phys: &PhysicalParams, theta: f64, lambda_grid: &[f64]) -> Result<HbarScan> {
    phys.validate()?;
    if lambda_grid.len() < 2 {
        return Err(Error::DegenerateGrid("need at least two λ values"));
    }
    if lambda_grid.iter().any(|&l| l <= 0.0 || !l.is_finite()) {
        return Err(Error::DegenerateGrid("λ values must be positive and finite"));
    }
    let mut grid = lambda_grid.to_vec();
    grid.sort_by(|a, b| b.total_cmp(a));
    if grid.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DegenerateGrid("λ values must be distinct"));
    }
    let rho_l = phys.rho_l()?;

    let mut scan = HbarScan {
        theta,
        lambda_grid: grid.clone(),
        s_p: Vec::with_capacity(grid.len()),
        s_phi: Vec::with_capacity(grid.len()),
        dcs_values: Vec::with_capacity(grid.len()),
        envelope_values: Vec::with_capacity(grid.len()),
        classical_values: Vec::with_capacity(grid.len()),
        fitted_slope: f64::NAN,
        fit_rms_residual: f64::NAN,
    };
    for &lambda in &grid {
        let scaled = phys.scale_hbar(lambda)?;
        let d = scaled.to_dimensionless()?;
        let input = QuantumDcsInput::new(theta, d.s_p, d.s_phi)?;
        scan.s_p.push(d.s_p);
        scan.s_phi.push(d.s_phi);
        scan.dcs_values.push(dcs_born(&input));
        scan.envelope_values.push(dcs_born_envelope(&input));
        scan.classical_values.push(dcs_classical(theta, d.rho_l)?);
        debug_assert_eq!(d.rho_l, rho_l);
    }
    let fit = power_law(&scan.lambda_grid, &scan.envelope_values)
        .ok_or(Error::DegenerateGrid("envelope cannot be fitted"))?;
    scan.fitted_slope = fit.exponent;
    scan.fit_rms_residual = fit.rms_residual;
    Ok(scan)
}

/// Leading ħ powers carried by each ingredient of the perturbative series.
pub mod hbar_counting {
    /// Vertex `eΦ/(ħc)`.
    pub const VERTEX: i32 = -1;
    /// Magnetic propagator `∝ ħ²/R`; the Bessel factor counts as O(1).
    pub const MAGNETIC_PROPAGATOR: i32 = 2;
    /// Free fermion propagator `ħ/(q̸ − mc)`.
    pub const FERMION_PROPAGATOR: i32 = 1;
    /// `d⁴q/ħ⁴` with two conservation deltas `δ²(q∥/ħ) = ħ² δ²(q∥)` consumed.
    pub const LOOP_MEASURE: i32 = -2;
    /// Flux and phase-space assembly of the cross section from `|M|²`.
    pub const PHASE_SPACE: i32 = -1;
    /// Each radiative order in `α = e²/ħc` adds one loop.
    pub const RADIATIVE_ORDER: i32 = 1;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HbarPower {
    /// Power of ħ in the amplitude at order `n_beta` in the external field.
    pub amplitude: i32,
    /// Leading power in the cross section.
    pub dcs: i32,
}

/// Counts the leading ħ power of a diagram with `n_beta` insertions of the
/// solenoid field and `n_alpha` radiative orders.
pub fn hbar_power_breakdown(n_beta: u32, n_alpha: u32) -> Result<HbarPower> {
    use hbar_counting::*;
    require(
        n_beta >= 1,
        "n_beta",
        n_beta as f64,
        "no interaction without a field insertion",
    )?;
    let n = n_beta as i32;
    let tree = n * (VERTEX + MAGNETIC_PROPAGATOR) + (n - 1) * (FERMION_PROPAGATOR + LOOP_MEASURE);
    let amplitude = tree + n_alpha as i32 * RADIATIVE_ORDER;
    // leading term of |M|² interferes the corrected amplitude with the tree
    Ok(HbarPower {
        amplitude,
        dcs: tree + amplitude + PHASE_SPACE,
    })
}

pub fn hbar_power(n_beta: u32, n_alpha: u32) -> Result<i32> {
    Ok(hbar_power_breakdown(n_beta, n_alpha)?.dcs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantumDcs {
    AharonovBohm,
    LandauLifshitz,
    Born,
}

impl QuantumDcs {
    pub fn eval(self, input: &QuantumDcsInput) -> f64 {
        match self {
            QuantumDcs::AharonovBohm => dcs_ab(input),
            QuantumDcs::LandauLifshitz => dcs_ll_small_angle(input),
            QuantumDcs::Born => dcs_born(input),
        }
    }
}

/// `∫ dσ/dθ` over `[θ_min, 2π − θ_min]`. Grows without bound as
/// `θ_min → 0`.
pub fn partial_total_cross_section(kind: QuantumDcs, s_p: f64, s_phi: f64, theta_min: f64) -> Result<Quadrature> {
    require(
        theta_min > 0.0 && theta_min < PI,
        "theta_min",
        theta_min,
        "must lie in (0, π)",
    )?;
    QuantumDcsInput::new(PI, s_p, s_phi)?;
    let f = |t: f64| kind.eval(&QuantumDcsInput { theta: t, s_p, s_phi });
    integrate(
        f,
        theta_min,
        TAU - theta_min,
        Tolerance {
            abs: 0.0,
            rel: 1e-12,
            max_intervals: 20_000,
        },
    )
}

/// Closed form of the regulated Aharonov–Bohm integral,
/// `2 sin²(s_Φ/2) cot(θ_min/2) / (π s_p)`.
pub fn ab_regulated_total(s_p: f64, s_phi: f64, theta_min: f64) -> f64 {
    let f = (0.5 * s_phi).sin();
    2.0 * f * f / (PI * s_p * (0.5 * theta_min).tan())
}
