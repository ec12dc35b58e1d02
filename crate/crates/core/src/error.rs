use thiserror::Error;

use crate::trajsim::Trajectory;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("quadrature did not converge: estimate {estimate} with error {achieved:e} (requested {requested:e})")]
    Quadrature {
        estimate: f64,
        achieved: f64,
        requested: f64,
    },

    #[error("step size underflow at t = {time} before the particle left the solenoid")]
    StepUnderflow { time: f64, partial: Box<Trajectory> },

    #[error("loop momentum is {distance:e} from the fermion pole (guard {guard:e})")]
    PoleProximity { distance: f64, guard: f64 },

    #[error("power-law fit residual {residual:e} exceeds {threshold:e}")]
    FitResidual { residual: f64, threshold: f64 },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(&'static str),
}

pub(crate) fn require(cond: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value, reason })
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<()> {
    require(value.is_finite(), name, value, "must be finite")
}
