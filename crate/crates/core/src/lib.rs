//! Classical and quantum scattering of charged particles by the field of a
//! long solenoid of finite radius.
//!
//! - [`classical`]: closed-form deflection, branch inversion and `dσ/dθ`.
//! - [`trajsim`]: trajectory propagation and Monte Carlo estimation, an
//!   independent check on the closed forms.
//! - [`quantum`]: Aharonov–Bohm, small-angle and Born cross sections and the
//!   `ħ → 0` analysis.
//! - [`dirac`]: spinor amplitudes assembled from the solenoid Feynman rules.
//!
//! Lengths are in units of the solenoid radius R; cross sections are per
//! radian in units of R.

pub mod classical;
pub mod dirac;
pub mod error;
pub mod fit;
pub mod params;
pub mod quad;
pub mod quantum;
pub mod trajsim;

pub use error::{Error, Result};
pub use params::{DerivedLengths, DimensionlessParams, PhysicalParams};
