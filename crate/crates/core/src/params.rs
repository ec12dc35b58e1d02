//! Physical and dimensionless parameter sets.
//!
//! Physical inputs are Gaussian (esu / Gauss / cgs). Everything downstream
//! works in units where the solenoid radius is 1, so the classical problem
//! depends on `rho_l = r_L / R` alone and the quantum one on the action
//! ratios `s_p = pR/ħ` and `s_phi = eΦ/(ħc)`.

use std::f64::consts::PI;

use crate::error::{require, require_finite, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Charge in esu. The sign of `charge * flux` sets the sense of rotation.
    pub charge: f64,
    /// Magnetic flux through the solenoid, G·cm².
    pub flux: f64,
    /// Momentum magnitude, g·cm/s.
    pub momentum: f64,
    /// Solenoid radius, cm.
    pub radius: f64,
    /// Rest mass, g.
    pub mass: f64,
    /// Reduced Planck constant, erg·s. Kept as a field so it can be scaled.
    pub hbar: f64,
    /// Speed of light, cm/s.
    pub c: f64,
}

impl PhysicalParams {
    pub fn new(charge: f64, flux: f64, momentum: f64, radius: f64, mass: f64, hbar: f64, c: f64) -> Result<Self> {
        let p = PhysicalParams {
            charge,
            flux,
            momentum,
            radius,
            mass,
            hbar,
            c,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("charge", self.charge),
            ("flux", self.flux),
            ("momentum", self.momentum),
            ("radius", self.radius),
            ("mass", self.mass),
            ("hbar", self.hbar),
            ("c", self.c),
        ] {
            require_finite(name, v)?;
        }
        require(self.radius > 0.0, "radius", self.radius, "must be positive")?;
        require(self.momentum > 0.0, "momentum", self.momentum, "must be positive")?;
        require(self.c > 0.0, "c", self.c, "must be positive")?;
        require(self.hbar > 0.0, "hbar", self.hbar, "must be positive")?;
        require(self.mass >= 0.0, "mass", self.mass, "must be non-negative")?;
        Ok(())
    }

    /// Uniform interior field `B0 = Φ / (πR²)`.
    pub fn interior_field(&self) -> f64 {
        self.flux / (PI * self.radius * self.radius)
    }

    /// Larmor radius in units of the solenoid radius. Contains no ħ.
    pub fn rho_l(&self) -> Result<f64> {
        let eb = self.charge * self.interior_field();
        require(
            eb != 0.0,
            "charge*flux",
            self.charge * self.flux,
            "no magnetic coupling",
        )?;
        Ok(self.momentum * self.c / eb / self.radius)
    }

    pub fn to_dimensionless(&self) -> Result<DimensionlessParams> {
        self.validate()?;
        let rho_l = self.rho_l()?;
        let d = DimensionlessParams {
            rho_l,
            s_p: self.momentum * self.radius / self.hbar,
            s_phi: self.charge * self.flux / (self.hbar * self.c),
            s_m: self.mass * self.c * self.radius / self.hbar,
        };
        for (name, v) in [("rho_l", d.rho_l), ("s_p", d.s_p), ("s_phi", d.s_phi), ("s_m", d.s_m)] {
            require_finite(name, v)?;
        }
        Ok(d)
    }

    /// Same parameters with `ħ → λħ`.
    pub fn scale_hbar(&self, lambda: f64) -> Result<Self> {
        require(
            lambda > 0.0 && lambda.is_finite(),
            "lambda",
            lambda,
            "must be positive and finite",
        )?;
        Ok(PhysicalParams {
            hbar: self.hbar * lambda,
            ..*self
        })
    }

    /// The bare `m R c` of the second-order mass term, without dividing by ħ.
    pub fn literal_mass_term(&self) -> f64 {
        self.mass * self.radius * self.c
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    pub rho_l: f64,
    pub s_p: f64,
    pub s_phi: f64,
    /// `m c R / ħ`
    pub s_m: f64,
}

impl DimensionlessParams {
    /// Builds the quantum parameters, deriving `rho_l = π s_p / s_phi`.
    pub fn from_actions(s_p: f64, s_phi: f64, s_m: f64) -> Result<Self> {
        require_finite("s_p", s_p)?;
        require_finite("s_phi", s_phi)?;
        require_finite("s_m", s_m)?;
        require(s_p >= 0.0, "s_p", s_p, "must be non-negative")?;
        require(s_phi != 0.0, "s_phi", s_phi, "no magnetic coupling")?;
        Ok(DimensionlessParams {
            rho_l: PI * s_p / s_phi,
            s_p,
            s_phi,
            s_m,
        })
    }

    pub fn derived_lengths(&self) -> Result<DerivedLengths> {
        derived_lengths(self)
    }
}

/// Lengths in units of R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedLengths {
    pub larmor: f64,
    pub de_broglie: f64,
    pub magnetic_length: f64,
}

pub fn derived_lengths(d: &DimensionlessParams) -> Result<DerivedLengths> {
    require(d.s_p > 0.0, "s_p", d.s_p, "must be positive")?;
    require(
        d.s_phi > 0.0,
        "s_phi",
        d.s_phi,
        "magnetic length undefined for s_phi <= 0",
    )?;
    Ok(DerivedLengths {
        larmor: PI * d.s_p / d.s_phi,
        de_broglie: 1.0 / d.s_p,
        magnetic_length: (PI / d.s_phi).sqrt(),
    })
}
