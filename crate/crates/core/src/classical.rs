//! Closed-form classical scattering off a uniform field confined to a disk.
//!
//! Lengths are in units of the solenoid radius. A particle enters moving
//! along +x with impact parameter `rho_b ∈ [-1, 1]`, follows a circular arc
//! of radius `|rho_l|` inside, and leaves at angle `θ ∈ [0, 2π)` measured
//! counter-clockwise from +x. Positive `rho_l` bends toward +y; a negative
//! value is the charge-reversed problem, the mirror image in the x axis.

use std::f64::consts::{PI, TAU};

use crate::error::{require, require_finite, Error, Result};
use crate::quad::{integrate, integrate_sqrt_endpoint, Quadrature, Tolerance};

/// `r_L = pc / (eB)`, in whatever consistent units the inputs carry.
pub fn larmor_radius(momentum: f64, charge: f64, field: f64, c: f64) -> Result<f64> {
    let eb = charge * field;
    require(
        eb != 0.0 && eb.is_finite(),
        "charge*field",
        eb,
        "zero coupling means straight-line motion",
    )?;
    Ok(momentum * c / eb)
}

fn check_rho_l(rho_l: f64) -> Result<()> {
    require_finite("rho_l", rho_l)?;
    require(rho_l != 0.0, "rho_l", rho_l, "must be non-zero")
}

fn check_theta(theta: f64) -> Result<()> {
    require((0.0..TAU).contains(&theta), "theta", theta, "must lie in [0, 2π)")
}

/// Exit angle for impact parameter `rho_b`.
///
/// `θ = 2·atan2(√(1−ρ_b²), ρ_b + ρ_L)` reduced to `[0, 2π)`. The
/// two-argument form covers all four quadrants, and also gives the mirrored
/// answer for negative `rho_l`.
pub fn scattering_angle(rho_b: f64, rho_l: f64) -> Result<f64> {
    require_finite("rho_b", rho_b)?;
    require(rho_b.abs() <= 1.0, "rho_b", rho_b, "particle misses the solenoid")?;
    check_rho_l(rho_l)?;
    let chord = (1.0 - rho_b * rho_b).sqrt();
    Ok(reduce_angle(2.0 * chord.atan2(rho_b + rho_l)))
}

pub(crate) fn reduce_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Largest reachable angle when `rho_l >= 1`: `sin(θ_max/2) = 1/ρ_L`.
pub fn theta_max(rho_l: f64) -> Result<f64> {
    require_finite("rho_l", rho_l)?;
    require(rho_l >= 1.0, "rho_l", rho_l, "no maximum angle below rho_l = 1")?;
    Ok(2.0 * (1.0 / rho_l).asin())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchSolution {
    pub plus: Option<f64>,
    pub minus: Option<f64>,
}

impl BranchSolution {
    pub fn n_branches(&self) -> usize {
        self.plus.is_some() as usize + self.minus.is_some() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> {
        self.plus.into_iter().chain(self.minus)
    }
}

/// Inverts the angle relation for `rho_l > 0`:
/// `ρ_b± = −ρ_L sin²(θ/2) ± cos(θ/2)·√(1 − ρ_L² sin²(θ/2))`.
///
/// Below `rho_l = 1` only the `+` branch is physical. At or above it both
/// branches exist up to `θ_max` and none beyond.
pub fn impact_parameters(theta: f64, rho_l: f64) -> Result<BranchSolution> {
    check_theta(theta)?;
    require_finite("rho_l", rho_l)?;
    require(rho_l > 0.0, "rho_l", rho_l, "must be positive")?;
    let (s, c) = (0.5 * theta).sin_cos();
    let arg = 1.0 - (rho_l * s) * (rho_l * s);
    let none = BranchSolution {
        plus: None,
        minus: None,
    };
    if rho_l < 1.0 {
        let root = arg.sqrt();
        let b = (-rho_l * s * s + c * root).clamp(-1.0, 1.0);
        return Ok(BranchSolution {
            plus: Some(b),
            minus: None,
        });
    }
    if theta > PI || arg < 0.0 {
        return Ok(none);
    }
    let root = arg.sqrt();
    let base = -rho_l * s * s;
    Ok(BranchSolution {
        plus: Some((base + c * root).clamp(-1.0, 1.0)),
        minus: Some((base - c * root).clamp(-1.0, 1.0)),
    })
}

/// `dσ/dθ` in units of R, summed over the physical branches.
///
/// `sinθ / (4 cos(θ/2))` is rewritten as `sin(θ/2)/2` before evaluation, so
/// θ = π stays finite for `rho_l < 1`. Returns `+∞` exactly at `θ_max` and 0 beyond it.
pub fn dcs_classical(theta: f64, rho_l: f64) -> Result<f64> {
    check_theta(theta)?;
    check_rho_l(rho_l)?;
    if rho_l < 0.0 {
        let mirrored = if theta == 0.0 { 0.0 } else { TAU - theta };
        return dcs_classical(if mirrored >= TAU { 0.0 } else { mirrored }, -rho_l);
    }
    let (s, c) = (0.5 * theta).sin_cos();
    if rho_l == 1.0 {
        // √(1 − sin²) = cos; the minus branch sits at ρ_b = −1 and drops out
        return Ok(if theta <= PI { theta.sin().max(0.0) } else { 0.0 });
    }
    let arg = 1.0 - (rho_l * s) * (rho_l * s);
    if rho_l > 1.0 {
        if theta > PI || arg < 0.0 {
            return Ok(0.0);
        }
        if arg == 0.0 {
            return Ok(f64::INFINITY);
        }
    }
    let root = arg.sqrt();
    let a = s * c * rho_l;
    let b = s * (1.0 + rho_l * rho_l * theta.cos()) / (2.0 * root);
    let mut dcs = (a + b).abs();
    if rho_l > 1.0 {
        dcs += (a - b).abs();
    }
    Ok(dcs)
}

/// `ρ_L → 0` limit: `(1/2)|sin(θ/2)|`.
pub fn dcs_low_energy_limit(theta: f64) -> f64 {
    0.5 * (0.5 * theta).sin().abs()
}

/// `ρ_L ≫ 1` form `θ(1+ρ_L²)/√(4 − ρ_L²θ²)`.
pub fn dcs_high_energy_approx(theta: f64, rho_l: f64) -> Result<f64> {
    require_finite("theta", theta)?;
    require_finite("rho_l", rho_l)?;
    require(rho_l >= 1.0, "rho_l", rho_l, "approximation needs rho_l >= 1")?;
    require(theta >= 0.0, "theta", theta, "must be non-negative")?;
    let x = rho_l * theta;
    require(x * x < 4.0, "theta", theta, "rho_l²θ² must stay below 4")?;
    Ok(theta * (1.0 + rho_l * rho_l) / (4.0 - x * x).sqrt())
}

fn classical_tolerance() -> Tolerance {
    Tolerance {
        abs: 1e-14,
        rel: 1e-12,
        max_intervals: 4000,
    }
}

/// `∫_a^b dσ/dθ dθ` for `0 ≤ a ≤ b ≤ 2π`, aware of the `θ_max` endpoint
/// singularity.
pub fn cross_section_between(a: f64, b: f64, rho_l: f64) -> Result<Quadrature> {
    check_rho_l(rho_l)?;
    require(a >= 0.0 && a <= b, "a", a, "need 0 <= a <= b")?;
    require(b <= TAU, "b", b, "need b <= 2π")?;
    if rho_l < 0.0 {
        return cross_section_between(TAU - b, TAU - a, -rho_l);
    }
    let f = |t: f64| dcs_classical(t, rho_l).unwrap_or(0.0);
    if rho_l > 1.0 {
        let tmax = theta_max(rho_l)?;
        if a >= tmax {
            return Ok(Quadrature {
                value: 0.0,
                abs_error: 0.0,
                evaluations: 0,
                intervals: 0,
            });
        }
        return integrate_sqrt_endpoint(f, a, b.min(tmax), classical_tolerance());
    }
    integrate(f, a, b, classical_tolerance())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymmetryReport {
    /// Cross section into `[0, π)`, units of R.
    pub sigma_plus: f64,
    /// Cross section into `[π, 2π)`, units of R.
    pub sigma_minus: f64,
    pub sigma_total: f64,
    pub asymmetry: f64,
    /// Combined quadrature error estimate.
    pub abs_error: f64,
}

/// Up/down asymmetry `A = (σ₊ − σ₋)/(σ₊ + σ₋)` by quadrature of the DCS.
pub fn asymmetry(rho_l: f64) -> Result<AsymmetryReport> {
    check_rho_l(rho_l)?;
    let plus = cross_section_between(0.0, PI, rho_l)?;
    let minus = if rho_l >= 1.0 {
        // identically zero past θ_max ≤ π
        Quadrature {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
            intervals: 0,
        }
    } else {
        cross_section_between(PI, TAU, rho_l)?
    };
    let total = plus.value + minus.value;
    if total.is_nan() || total <= 0.0 {
        return Err(Error::Quadrature {
            estimate: total,
            achieved: plus.abs_error + minus.abs_error,
            requested: 0.0,
        });
    }
    Ok(AsymmetryReport {
        sigma_plus: plus.value,
        sigma_minus: minus.value,
        sigma_total: total,
        asymmetry: (plus.value - minus.value) / total,
        abs_error: plus.abs_error + minus.abs_error,
    })
}

/// `A = min(ρ_L, 1)` with the sign of `rho_l`.
pub fn asymmetry_analytic(rho_l: f64) -> f64 {
    rho_l.clamp(-1.0, 1.0)
}
