//! Dirac matrices in the Dirac representation and free positive-energy
//! spinors, metric `(+, −, −, −)`.

use std::sync::OnceLock;

use nalgebra::{Matrix4, RowVector4, Vector4};
use num_complex::Complex64;

use crate::error::{require, Result};

pub type Matrix = Matrix4<Complex64>;
pub type FourVector = [f64; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `g^{μν}`
pub fn metric(mu: usize, nu: usize) -> f64 {
    match (mu, nu) {
        (0, 0) => 1.0,
        (a, b) if a == b => -1.0,
        _ => 0.0,
    }
}

pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

fn pauli(i: usize) -> [[Complex64; 2]; 2] {
    match i {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => unreachable!("Pauli index out of range"),
    }
}

fn build() -> [Matrix; 4] {
    let g0 = Matrix::from_diagonal(&Vector4::new(ONE, ONE, -ONE, -ONE));
    let spatial = |i: usize| {
        let s = pauli(i);
        Matrix::from_fn(|r, c| match (r < 2, c < 2) {
            (true, false) => s[r][c - 2],
            (false, true) => -s[r - 2][c],
            _ => ZERO,
        })
    };
    [g0, spatial(1), spatial(2), spatial(3)]
}

/// `γ⁰ … γ³`.
pub fn gammas() -> &'static [Matrix; 4] {
    static GAMMAS: OnceLock<[Matrix; 4]> = OnceLock::new();
    GAMMAS.get_or_init(build)
}

pub fn gamma(mu: usize) -> &'static Matrix {
    &gammas()[mu]
}

/// `v̸ = v⁰γ⁰ − v¹γ¹ − v²γ² − v³γ³` for a contravariant `v`.
pub fn slash(v: &FourVector) -> Matrix {
    let g = gammas();
    g[0] * Complex64::from(v[0])
        - g[1] * Complex64::from(v[1])
        - g[2] * Complex64::from(v[2])
        - g[3] * Complex64::from(v[3])
}

/// Projection of the spin on the solenoid axis in the rest frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

/// Positive-energy solution `u(p, s)` normalized to `ū u = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spinor {
    pub components: Vector4<Complex64>,
    pub momentum: FourVector,
    pub mass: f64,
    pub spin: Spin,
}

impl Spinor {
    /// `u† γ⁰`
    pub fn bar(&self) -> RowVector4<Complex64> {
        self.components.adjoint() * gamma(0)
    }

    /// `ū_self · m · other`
    pub fn sandwich(&self, m: &Matrix, other: &Spinor) -> Complex64 {
        (self.bar() * m * other.components)[(0, 0)]
    }
}

/// Energy for a given spatial momentum and mass.
pub fn on_shell(p: [f64; 3], mass: f64) -> FourVector {
    let e = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + mass * mass).sqrt();
    [e, p[0], p[1], p[2]]
}

/// Rejects off-shell or negative-energy momenta and non-positive mass.
pub fn spinor_u(p: &FourVector, mass: f64, spin: Spin) -> Result<Spinor> {
    require(
        mass > 0.0 && mass.is_finite(),
        "mass",
        mass,
        "must be positive for ū u = 1",
    )?;
    require(p[0] > 0.0, "p0", p[0], "energy must be positive")?;
    let shell = minkowski_dot(p, p) - mass * mass;
    require(
        shell.abs() <= 1e-12 * p[0] * p[0],
        "p·p - m²",
        shell,
        "momentum is off shell",
    )?;
    let (e, px, py, pz) = (p[0], p[1], p[2], p[3]);
    let norm = ((e + mass) / (2.0 * mass)).sqrt();
    let k = 1.0 / (e + mass);
    let plus = Complex64::new(px, py);
    let minus = Complex64::new(px, -py);
    let lower = match spin {
        Spin::Up => [Complex64::from(pz), plus],
        Spin::Down => [minus, Complex64::from(-pz)],
    };
    let mut upper = [ZERO; 2];
    upper[spin.index()] = ONE;
    let components = Vector4::new(upper[0], upper[1], lower[0] * k, lower[1] * k) * Complex64::from(norm);
    Ok(Spinor {
        components,
        momentum: *p,
        mass,
        spin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn max_abs(m: &Matrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn clifford_algebra_is_exact() {
        for mu in 0..4 {
            for nu in 0..4 {
                let anti = gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu);
                let want = Matrix::identity() * Complex64::from(2.0 * metric(mu, nu));
                assert_eq!(anti, want, "μ={mu} ν={nu}");
            }
        }
    }

    #[test]
    fn hermiticity() {
        assert_eq!(gamma(0).adjoint(), *gamma(0));
        for i in 1..4 {
            assert_eq!(gamma(i).adjoint(), -gamma(i));
        }
    }

    #[test]
    fn slash_basics() {
        assert_eq!(slash(&[1.0, 0.0, 0.0, 0.0]), *gamma(0));
        let p = [2.0, 0.3, -1.1, 0.7];
        let sq = slash(&p) * slash(&p);
        let want = Matrix::identity() * Complex64::from(minkowski_dot(&p, &p));
        assert!(max_abs(&(sq - want)) < 1e-14);
    }

    #[test]
    fn rest_frame_spinors() {
        let up = spinor_u(&[1.5, 0.0, 0.0, 0.0], 1.5, Spin::Up).unwrap();
        assert_eq!(up.components, Vector4::new(ONE, ZERO, ZERO, ZERO));
        let down = spinor_u(&[1.5, 0.0, 0.0, 0.0], 1.5, Spin::Down).unwrap();
        assert_eq!(down.components, Vector4::new(ZERO, ONE, ZERO, ZERO));
    }

    #[test]
    fn off_shell_rejected() {
        assert!(spinor_u(&[1.0, 1.0, 0.0, 0.0], 1.0, Spin::Up).is_err());
        assert!(spinor_u(&[-1.0, 0.0, 0.0, 0.0], 1.0, Spin::Up).is_err());
        assert!(spinor_u(&[0.0, 0.0, 0.0, 0.0], 0.0, Spin::Up).is_err());
    }

    #[test]
    fn dirac_equation_completeness_orthogonality() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let mass: f64 = 0.1 + 3.0 * rng.random::<f64>();
            let p = [0, 1, 2].map(|_| 10.0 * (rng.random::<f64>() - 0.5));
            let p4 = on_shell(p, mass);
            let us = Spin::BOTH.map(|s| spinor_u(&p4, mass, s).unwrap());
            let ps = slash(&p4);
            let scale = p4[0];
            for u in &us {
                let r = (ps * u.components) - u.components * Complex64::from(mass);
                assert!(r.iter().all(|z| z.norm() < 1e-12 * scale), "Dirac equation residual");
            }
            let mut sum = Matrix::zeros();
            for u in &us {
                sum += u.components * u.bar();
            }
            let want = (ps + Matrix::identity() * Complex64::from(mass)) / Complex64::from(2.0 * mass);
            assert!(max_abs(&(sum - want)) < 1e-12 * scale / mass);
            let id = Matrix::identity();
            for (a, ua) in us.iter().enumerate() {
                for (b, ub) in us.iter().enumerate() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((ua.sandwich(&id, ub) - want).norm() < 1e-12);
                }
            }
        }
    }
}
