//! Spinor amplitudes built from the solenoid Feynman rules.
//!
//! Momenta are in units of ħ/R, so every quantity here is dimensionless
//! except where the ħ rescaling check reassembles the dimensional factors.

mod gamma;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use gamma::{gamma, gammas, metric, minkowski_dot, on_shell, slash, spinor_u, FourVector, Matrix, Spin, Spinor};

use crate::error::{require, require_finite, Error, Result};
use crate::fit::power_law;
use crate::params::PhysicalParams;
use crate::quantum::bessel_j1;

/// Kernel of one magnetic propagator,
/// `−2i J₁(|q|) ε_{ij3} q_i γ^j / |q|³` in units of R.
#[derive(Debug, Clone, PartialEq)]
pub struct MagneticPropagator {
    /// Transverse momentum transfer in units of ħ/R.
    pub q_perp: [f64; 2],
    /// `−2i J₁(|q|)/|q|³`
    pub kernel: Complex64,
    /// `ε_{ij3} q_i γ^j = q₁γ² − q₂γ¹`
    pub structure: Matrix,
}

impl MagneticPropagator {
    pub fn matrix(&self) -> Matrix {
        self.structure * self.kernel
    }

    /// `ε_{ij3} q_i q_j`, zero by antisymmetry.
    pub fn transverse_contraction(&self) -> f64 {
        let eps = |i: usize, j: usize| match (i, j) {
            (0, 1) => 1.0,
            (1, 0) => -1.0,
            _ => 0.0,
        };
        let q = self.q_perp;
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| eps(i, j) * q[i] * q[j])
            .sum()
    }
}

/// `q_perp` is a physical momentum transfer and `s_scale = R/ħ`; pass 1 for
/// momenta already in units of ħ/R.
pub fn magnetic_propagator(q_perp: [f64; 2], s_scale: f64) -> Result<MagneticPropagator> {
    require_finite("q_perp", q_perp[0])?;
    require_finite("q_perp", q_perp[1])?;
    require(
        s_scale > 0.0 && s_scale.is_finite(),
        "s_scale",
        s_scale,
        "must be positive",
    )?;
    let q = [q_perp[0] * s_scale, q_perp[1] * s_scale];
    let norm = q[0].hypot(q[1]);
    require(
        norm > 0.0,
        "|q_perp|",
        norm,
        "kernel is singular at zero momentum transfer",
    )?;
    Ok(MagneticPropagator {
        q_perp: q,
        kernel: Complex64::new(0.0, -2.0 * bessel_j1(norm) / norm.powi(3)),
        structure: transverse_structure(q),
    })
}

fn transverse_structure(q: [f64; 2]) -> Matrix {
    gamma(2) * Complex64::from(q[0]) - gamma(1) * Complex64::from(q[1])
}

/// Incoming momentum along +x, outgoing at angle θ, both in the plane
/// transverse to the solenoid.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarKinematics {
    pub theta: f64,
    pub s_p: f64,
    pub s_phi: f64,
    /// Mass of the external lines, `mcR/ħ`.
    pub s_m: f64,
    /// Mass entering the internal fermion propagator.
    pub propagator_mass: f64,
    pub p_i: FourVector,
    pub p_f: FourVector,
}

/// How the mass term of the internal propagator is made dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MassConvention {
    /// `mcR/ħ`, consistent with the external lines.
    #[default]
    Reduced,
    /// The bare `mRc` with no division by ħ.
    Literal,
}

impl PlanarKinematics {
    pub fn new(theta: f64, s_p: f64, s_phi: f64, s_m: f64) -> Result<Self> {
        require(theta > 0.0 && theta < 2.0 * PI, "theta", theta, "must lie in (0, 2π)")?;
        require(s_p > 0.0 && s_p.is_finite(), "s_p", s_p, "must be positive")?;
        require_finite("s_phi", s_phi)?;
        require(s_m > 0.0 && s_m.is_finite(), "s_m", s_m, "must be positive")?;
        Ok(PlanarKinematics {
            theta,
            s_p,
            s_phi,
            s_m,
            propagator_mass: s_m,
            p_i: on_shell([s_p, 0.0, 0.0], s_m),
            p_f: on_shell([s_p * theta.cos(), s_p * theta.sin(), 0.0], s_m),
        })
    }

    pub fn from_physical(phys: &PhysicalParams, theta: f64, convention: MassConvention) -> Result<Self> {
        let d = phys.to_dimensionless()?;
        let mut k = Self::new(theta, d.s_p, d.s_phi, d.s_m)?;
        if convention == MassConvention::Literal {
            k.propagator_mass = phys.literal_mass_term();
        }
        Ok(k)
    }

    /// `p_f − p_i` restricted to the plane.
    pub fn transfer(&self) -> [f64; 2] {
        [self.p_f[1] - self.p_i[1], self.p_f[2] - self.p_i[2]]
    }

    pub fn spinors(&self, s_i: Spin, s_f: Spin) -> Result<(Spinor, Spinor)> {
        Ok((spinor_u(&self.p_i, self.s_m, s_i)?, spinor_u(&self.p_f, self.s_m, s_f)?))
    }
}

/// First-order amplitudes for each spin pair and the cross section they give.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeResult {
    /// Indexed `[initial][final]`, `Up` first.
    pub amplitudes: [[Complex64; 2]; 2],
    /// `|M|²` averaged over initial spins (or for initial spin up when
    /// polarized) and summed over final spins.
    pub squared: f64,
    /// In units of R.
    pub dcs: f64,
    pub polarized: bool,
}

/// First-order Born cross section from the spinor amplitude
/// `s_Φ ū_f K(p_f − p_i) u_i`, at unit mass. The result does not depend on
/// the mass; see [`m1_dcs_with_mass`].
pub fn m1_dcs(theta: f64, s_p: f64, s_phi: f64, polarized: bool) -> Result<AmplitudeResult> {
    m1_dcs_with_mass(theta, s_p, s_phi, 1.0, polarized)
}

pub fn m1_dcs_with_mass(theta: f64, s_p: f64, s_phi: f64, s_m: f64, polarized: bool) -> Result<AmplitudeResult> {
    let kin = PlanarKinematics::new(theta, s_p, s_phi, s_m)?;
    let vertex = magnetic_propagator(kin.transfer(), 1.0)?.matrix() * Complex64::from(s_phi);
    let amplitudes = first_order_amplitudes(&kin, &vertex)?;
    let squared = spin_sum(&amplitudes, polarized);
    Ok(AmplitudeResult {
        amplitudes,
        squared,
        dcs: phase_space(s_m, s_p) * squared,
        polarized,
    })
}

fn first_order_amplitudes(kin: &PlanarKinematics, vertex: &Matrix) -> Result<[[Complex64; 2]; 2]> {
    let mut out = [[Complex64::default(); 2]; 2];
    for (a, s_i) in Spin::BOTH.into_iter().enumerate() {
        for (b, s_f) in Spin::BOTH.into_iter().enumerate() {
            let (u_i, u_f) = kin.spinors(s_i, s_f)?;
            out[a][b] = u_f.sandwich(vertex, &u_i);
        }
    }
    Ok(out)
}

fn spin_sum(amps: &[[Complex64; 2]; 2], polarized: bool) -> f64 {
    if polarized {
        amps[0].iter().map(|z| z.norm_sqr()).sum()
    } else {
        0.5 * amps.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>()
    }
}

/// Flux and phase-space factor for `ū u = 1` spinors: `s_m² / (2π s_p)`.
fn phase_space(s_m: f64, s_p: f64) -> f64 {
    s_m * s_m / (2.0 * PI * s_p)
}

/// Integrand of the second-order amplitude at transverse loop momentum
/// `s_q` (units of ħ/R), in units of R:
///
/// `(−i)³ (2s_Φ)²/(2π)² ε_{lm3} ε_{ij3} ū_f γ^m [k̸ − s_m + iε]⁻¹ γ^j u_i`
/// `× (p_f − q)_l J₁(|p_f − q|)/|p_f − q|³ × (q − p_i)_i J₁(|q − p_i|)/|q − p_i|³`
///
/// with `k = (E, q₁, q₂, 0)`. Points closer than `epsilon` to the mass
/// shell of the internal line are rejected.
pub fn m2_integrand(s_q: [f64; 2], kin: &PlanarKinematics, s_i: Spin, s_f: Spin, epsilon: f64) -> Result<Complex64> {
    require(
        epsilon > 0.0 && epsilon.is_finite(),
        "epsilon",
        epsilon,
        "must be positive",
    )?;
    let (u_i, u_f) = kin.spinors(s_i, s_f)?;
    let k = [kin.p_i[0], s_q[0], s_q[1], 0.0];
    let m = kin.propagator_mass;
    let distance = (minkowski_dot(&k, &k) - m * m).abs();
    if distance < epsilon {
        return Err(Error::PoleProximity {
            distance,
            guard: epsilon,
        });
    }
    let outer = magnetic_propagator([kin.p_f[1] - s_q[0], kin.p_f[2] - s_q[1]], 1.0)?;
    let inner = magnetic_propagator([s_q[0] - kin.p_i[1], s_q[1] - kin.p_i[2]], 1.0)?;
    let chain = outer.matrix() * fermion_propagator(&k, m, epsilon) * inner.matrix();
    // the −2i of each kernel and the −i of the propagator combine to (−i)³·4
    let prefactor = Complex64::new(0.0, -1.0) * (kin.s_phi * kin.s_phi / (4.0 * PI * PI));
    Ok(prefactor * u_f.sandwich(&chain, &u_i))
}

/// `[k̸ − m + iε]⁻¹ = (k̸ + m − iε) / (k·k − (m − iε)²)`
fn fermion_propagator(k: &FourVector, m: f64, epsilon: f64) -> Matrix {
    let mc = Complex64::new(m, -epsilon);
    let num = slash(k) + Matrix::identity() * mc;
    num / (Complex64::from(minkowski_dot(k, k)) - mc * mc)
}

/// Reference configuration for [`hbar_scaling_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingSetup {
    pub phys: PhysicalParams,
    pub theta: f64,
    /// Transverse loop momentum for the second-order term, physical units.
    pub loop_momentum: [f64; 2],
    /// Keep every Bessel argument at its `λ = 1` value so only the explicit
    /// ħ factors of the Feynman rules are measured.
    pub freeze_bessel: bool,
}

impl Default for ScalingSetup {
    fn default() -> Self {
        ScalingSetup {
            phys: PhysicalParams {
                charge: 1.0,
                flux: 1.0,
                momentum: 1.0,
                radius: 1.0,
                mass: 1.0,
                hbar: 0.05,
                c: 1.0,
            },
            theta: 1.0,
            loop_momentum: [0.3, 0.7],
            freeze_bessel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingCheck {
    pub order: u32,
    pub lambda_grid: Vec<f64>,
    /// Leading cross-section contribution at each λ.
    pub dcs_values: Vec<f64>,
    pub dcs_exponent: f64,
    /// Second order only: `|M⁽²⁾/M⁽¹⁾|` at each λ and its exponent.
    pub ratio_values: Vec<f64>,
    pub ratio_exponent: Option<f64>,
    pub rms_residual: f64,
}

/// Residual above which the fit is reported as failed.
pub const SCALING_FIT_THRESHOLD: f64 = 1e-6;

pub fn hbar_scaling_check(order: u32, lambda_grid: &[f64]) -> Result<ScalingCheck> {
    hbar_scaling_check_with(&ScalingSetup::default(), order, lambda_grid)
}

/// Rescales `ħ → λħ` in the dimensional amplitudes at fixed `e, p, R, Φ, m, c`
/// and fits the leading power of the cross-section contribution.
pub fn hbar_scaling_check_with(setup: &ScalingSetup, order: u32, lambda_grid: &[f64]) -> Result<ScalingCheck> {
    require(
        order == 1 || order == 2,
        "order",
        order as f64,
        "only first and second order are implemented",
    )?;
    if lambda_grid.len() < 2 {
        return Err(Error::DegenerateGrid("need at least two λ values"));
    }
    let mut dcs_values = Vec::with_capacity(lambda_grid.len());
    let mut ratio_values = Vec::new();
    for &lambda in lambda_grid {
        let a = DimensionalAssembly::new(setup, lambda)?;
        let m1 = a.first_order();
        let squared = spin_sum(&m1, false);
        if order == 1 {
            dcs_values.push(a.phase_space() * squared);
        } else {
            let m2 = a.second_order_density()?;
            // leading second-order term is the interference with the first order
            let cross: f64 = m1
                .iter()
                .flatten()
                .zip(m2.iter().flatten())
                .map(|(x, y)| (x.conj() * y).norm())
                .sum();
            dcs_values.push(a.phase_space() * cross);
            ratio_values.push(spin_sum(&m2, false).sqrt() / squared.sqrt());
        }
    }
    let fit = power_law(lambda_grid, &dcs_values).ok_or(Error::DegenerateGrid("cannot fit power law"))?;
    let mut rms = fit.rms_residual;
    let ratio_exponent = if order == 2 {
        let r = power_law(lambda_grid, &ratio_values).ok_or(Error::DegenerateGrid("cannot fit power law"))?;
        rms = rms.max(r.rms_residual);
        Some(r.exponent)
    } else {
        None
    };
    if rms > SCALING_FIT_THRESHOLD {
        return Err(Error::FitResidual {
            residual: rms,
            threshold: SCALING_FIT_THRESHOLD,
        });
    }
    Ok(ScalingCheck {
        order,
        lambda_grid: lambda_grid.to_vec(),
        dcs_values,
        dcs_exponent: fit.exponent,
        ratio_values,
        ratio_exponent,
        rms_residual: rms,
    })
}

/// Amplitudes with every ħ written out explicitly, momenta in physical units.
struct DimensionalAssembly<'a> {
    setup: &'a ScalingSetup,
    hbar: f64,
    /// ħ used inside Bessel arguments.
    bessel_hbar: f64,
    p_i: Spinor,
    p_f_momentum: FourVector,
    mc: f64,
}

impl<'a> DimensionalAssembly<'a> {
    fn new(setup: &'a ScalingSetup, lambda: f64) -> Result<Self> {
        let phys = setup.phys.scale_hbar(lambda)?;
        phys.validate()?;
        require(phys.mass > 0.0, "mass", phys.mass, "must be positive for ū u = 1")?;
        let mc = phys.mass * phys.c;
        let p = phys.momentum;
        let th = setup.theta;
        let p_i = on_shell([p, 0.0, 0.0], mc);
        let p_f = on_shell([p * th.cos(), p * th.sin(), 0.0], mc);
        Ok(DimensionalAssembly {
            setup,
            hbar: phys.hbar,
            bessel_hbar: if setup.freeze_bessel {
                setup.phys.hbar
            } else {
                phys.hbar
            },
            p_i: spinor_u(&p_i, mc, Spin::Up)?,
            p_f_momentum: p_f,
            mc,
        })
    }

    fn vertex(&self) -> f64 {
        let ph = &self.setup.phys;
        ph.charge * ph.flux / (self.hbar * ph.c)
    }

    /// `−2i (ħ²/R) J₁(qR/ħ) ε_{ij3} q_i γ^j / q³`
    fn propagator(&self, q: [f64; 2]) -> Matrix {
        let r = self.setup.phys.radius;
        let norm = q[0].hypot(q[1]);
        let k = -2.0 * self.hbar * self.hbar / r * bessel_j1(norm * r / self.bessel_hbar) / norm.powi(3);
        transverse_structure(q) * Complex64::new(0.0, k)
    }

    fn spinors(&self) -> Result<[[(Spinor, Spinor); 2]; 2]> {
        let mk = |s_i, s_f| -> Result<(Spinor, Spinor)> {
            Ok((
                spinor_u(&self.p_i.momentum, self.mc, s_i)?,
                spinor_u(&self.p_f_momentum, self.mc, s_f)?,
            ))
        };
        Ok([
            [mk(Spin::Up, Spin::Up)?, mk(Spin::Up, Spin::Down)?],
            [mk(Spin::Down, Spin::Up)?, mk(Spin::Down, Spin::Down)?],
        ])
    }

    fn sandwich_all(&self, m: &Matrix) -> [[Complex64; 2]; 2] {
        let sp = self.spinors().expect("momenta are on shell by construction");
        sp.map(|row| row.map(|(u_i, u_f)| u_f.sandwich(m, &u_i)))
    }

    fn transfer(&self) -> [f64; 2] {
        [
            self.p_f_momentum[1] - self.p_i.momentum[1],
            self.p_f_momentum[2] - self.p_i.momentum[2],
        ]
    }

    fn first_order(&self) -> [[Complex64; 2]; 2] {
        let m = self.propagator(self.transfer()) * Complex64::from(self.vertex());
        self.sandwich_all(&m)
    }

    /// Second-order amplitude per unit `d²q⊥` at the setup's loop momentum:
    /// `(2π)⁻² ħ⁻² (eΦ/ħc)² ū_f K(p_f − q) [−iħ/(k̸ − mc)] K(q − p_i) u_i`.
    fn second_order_density(&self) -> Result<[[Complex64; 2]; 2]> {
        let q = self.setup.loop_momentum;
        let k = [self.p_i.momentum[0], q[0], q[1], 0.0];
        let distance = (minkowski_dot(&k, &k) - self.mc * self.mc).abs();
        let guard = 1e-9 * self.mc * self.mc;
        if distance < guard {
            return Err(Error::PoleProximity { distance, guard });
        }
        let pf = self.p_f_momentum;
        let pi = self.p_i.momentum;
        let chain = self.propagator([pf[1] - q[0], pf[2] - q[1]])
            * fermion_propagator(&k, self.mc, 0.0)
            * Complex64::new(0.0, -self.hbar)
            * self.propagator([q[0] - pi[1], q[1] - pi[2]]);
        let v = self.vertex();
        let factor = v * v / (4.0 * PI * PI * self.hbar * self.hbar);
        Ok(self.sandwich_all(&(chain * Complex64::from(factor))))
    }

    /// `(mc)² / (2π p ħ)`
    fn phase_space(&self) -> f64 {
        self.mc * self.mc / (2.0 * PI * self.setup.phys.momentum * self.hbar)
    }
}
