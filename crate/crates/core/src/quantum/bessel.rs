//! Bessel functions of the first kind, orders 0 and 1.
//!
//! Below [`CROSSOVER`] the ascending power series is summed in double-double
//! arithmetic, which absorbs the cancellation between terms that grow to
//! ~1e8 near the switch point. Above it the Hankel asymptotic expansion is
//! truncated at its smallest term, which there is below 1e-17.

use std::f64::consts::{FRAC_2_PI, PI};

/// Switch point between the series and the asymptotic expansion.
pub const CROSSOVER: f64 = 21.0;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        DoubleDouble { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        DoubleDouble { hi: s, lo: b - (s - a) }
    }

    fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        let t = Self::two_sum(self.lo, o.lo);
        let s = Self::quick_two_sum(s.hi, s.lo + t.hi);
        Self::quick_two_sum(s.hi, s.lo + t.lo)
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let err = self.hi.mul_add(o.hi, -p);
        Self::quick_two_sum(p, err + (self.hi * o.lo + self.lo * o.hi))
    }

    fn div_f64(self, d: f64) -> Self {
        let q1 = self.hi / d;
        let prod = DoubleDouble::from(q1).mul(DoubleDouble::from(d));
        let r = self.add(DoubleDouble {
            hi: -prod.hi,
            lo: -prod.lo,
        });
        let q2 = r.hi / d;
        Self::quick_two_sum(q1, q2)
    }

    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// `Σ_k (−1)^k (x/2)^(2k+ν) / (k! (k+ν)!)` for ν ∈ {0, 1}.
fn ascending_series(x: f64, order: u32) -> f64 {
    let half = DoubleDouble::from(0.5 * x);
    let q = half.mul(half).neg();
    let mut term = if order == 0 { DoubleDouble::from(1.0) } else { half };
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term = term.mul(q).div_f64(k * (k + order as f64));
        sum = sum.add(term);
        if term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) || k > 500.0 {
            break;
        }
        k += 1.0;
    }
    sum.value()
}

/// Hankel expansion `J_ν(x) ≈ √(2/(πx)) (P cos χ − Q sin χ)`,
/// `χ = x − (ν/2 + 1/4)π`, truncated before the terms start to grow.
fn hankel(x: f64, order: u32) -> f64 {
    let mu = 4.0 * (order * order) as f64;
    let eight_x = 8.0 * x;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 0..200 {
        let size = a.abs();
        if size > prev || size < 1e-18 {
            break;
        }
        prev = size;
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
        let odd = (2 * k + 1) as f64;
        a *= (mu - odd * odd) / ((k + 1) as f64 * eight_x);
    }
    let chi = x - (0.5 * order as f64 + 0.25) * PI;
    (FRAC_2_PI / x).sqrt() * (p * chi.cos() - q * chi.sin())
}

pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= CROSSOVER {
        ascending_series(ax, 0)
    } else {
        hankel(ax, 0)
    }
}

pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= CROSSOVER {
        ascending_series(ax, 1)
    } else {
        hankel(ax, 1)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// Series and asymptotic forms evaluated at the same point, for checking the
/// crossover.
pub fn j1_both_forms(x: f64) -> (f64, f64) {
    (ascending_series(x, 1), hankel(x, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j1_reference_values() {
        // mpmath, 30 digits
        for &(x, want) in &[
            (2.0, 0.576_724_807_756_873_4),
            (10.0, 0.043_472_746_168_861_44),
            (25.0, -0.125_350_249_580_289_9),
            (50.0, -0.097_511_828_125_175_14),
            (1e4, 0.003_647_450_755_529_580_3),
        ] {
            let got = bessel_j1(x);
            assert!((got - want).abs() < 1e-13, "J1({x}) = {got}, want {want}");
        }
        assert!((bessel_j0(3.0) + 0.260_051_954_901_933_4).abs() < 1e-14);
    }

    #[test]
    fn j1_is_odd_and_zero_at_origin() {
        assert_eq!(bessel_j1(0.0), 0.0);
        for &x in &[0.3, 4.0, 17.5, 21.0, 33.3, 900.0] {
            assert_eq!(bessel_j1(-x), -bessel_j1(x));
            assert_eq!(bessel_j0(-x), bessel_j0(x));
        }
    }

    #[test]
    fn crossover_forms_agree() {
        for dx in [-0.5, -0.1, 0.0, 0.1, 0.5] {
            let (s, h) = j1_both_forms(CROSSOVER + dx);
            assert!(
                (s - h).abs() < 1e-11,
                "mismatch {:e} at {}",
                (s - h).abs(),
                CROSSOVER + dx
            );
        }
    }

    #[test]
    fn small_argument_limit() {
        let x = 1e-6;
        assert!((bessel_j1(x) - x / 2.0).abs() < 1e-18);
    }

    #[test]
    fn derivative_of_j0_is_minus_j1() {
        let h = 1e-5;
        for k in 0..200 {
            let x = 0.05 + 0.25 * k as f64;
            let d = (bessel_j0(x - 2.0 * h) - 8.0 * bessel_j0(x - h) + 8.0 * bessel_j0(x + h) - bessel_j0(x + 2.0 * h))
                / (12.0 * h);
            assert!(
                (d + bessel_j1(x)).abs() < 1e-10,
                "x = {x}: {:e}",
                (d + bessel_j1(x)).abs()
            );
        }
    }
}
