mod common;

use common::bessel_j1_reference;
use solscat::quantum::bessel::{bessel_j1, CROSSOVER};

#[test]
fn reference_reproduces_known_values() {
    assert!((bessel_j1_reference(2.0) - 0.576_724_807_756_873_4).abs() < 1e-16);
    assert!((bessel_j1_reference(50.0) + 0.097_511_828_125_175_14).abs() < 1e-16);
    assert!((bessel_j1_reference(1e-3) - 4.999_999_375e-4).abs() < 1e-17);
}

#[test]
fn j1_matches_reference_near_crossover() {
    for i in -200..=200 {
        let x = CROSSOVER + i as f64 * 1e-3;
        let d = (bessel_j1(x) - bessel_j1_reference(x)).abs();
        assert!(d < 1e-12, "x = {x}: {d:e}");
    }
}

#[test]
fn j1_matches_reference_on_coarse_grid() {
    for i in 0..=500 {
        let x = 0.1 * i as f64;
        let d = (bessel_j1(x) - bessel_j1_reference(x)).abs();
        assert!(d < 1e-12, "x = {x}: {d:e}");
    }
}
