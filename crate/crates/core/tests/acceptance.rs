//! End-to-end checks of the library against its headline results. Runs as a
//! plain binary so every line is printed whether it passes or not.

mod common;

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use solscat::classical::{asymmetry, cross_section_between, dcs_classical, scattering_angle};
use solscat::dirac::{hbar_scaling_check, m1_dcs};
use solscat::params::PhysicalParams;
use solscat::quantum::{
    ab_regulated_total, bessel::bessel_j1, dcs_ab, dcs_born, dcs_ll_small_angle, hbar_power, hbar_scan,
    partial_total_cross_section, QuantumDcs, QuantumDcsInput,
};
use solscat::trajsim::{mc_estimate_dcs, propagate_geometric, propagate_rk4};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn total_cross_section() -> Outcome {
    let mut worst: f64 = 0.0;
    for rho in [0.1, 0.5, 0.99, 1.0, 2.0, 10.0] {
        let q = cross_section_between(0.0, TAU, rho).map_err(|e| format!("ρ_L={rho}: {e}"))?;
        worst = worst.max(rel(q.value, 2.0));
    }
    check(worst < 1e-3, format!("max relative deviation from 2R: {worst:.2e}"))
}

fn asymmetry_law() -> Outcome {
    let mut worst: f64 = 0.0;
    let cases = (1..=9)
        .map(|i| (0.1 * i as f64, 0.1 * i as f64))
        .chain([(1.0, 1.0), (2.0, 1.0), (10.0, 1.0)]);
    for (rho, want) in cases {
        let a = asymmetry(rho).map_err(|e| format!("ρ_L={rho}: {e}"))?.asymmetry;
        worst = worst.max((a - want).abs());
    }
    check(worst < 1e-3, format!("max |A − A_expected|: {worst:.2e}"))
}

fn trajectory_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_rk: f64 = 0.0;
    let mut worst_geo: f64 = 0.0;
    let gap = |a: f64, b: f64| {
        let d = (a - b).abs();
        d.min(TAU - d)
    };
    for _ in 0..1000 {
        let rho_b = 2.0 * rng.random::<f64>() - 1.0;
        let rho_l = 10f64.powf(-1.0 + 2.0 * rng.random::<f64>());
        let geo = propagate_geometric(rho_b, rho_l).map_err(|e| e.to_string())?.theta;
        let rk = propagate_rk4(rho_b, rho_l, 1e-12)
            .map_err(|e| e.to_string())?
            .trajectory
            .theta;
        let closed = scattering_angle(rho_b, rho_l).map_err(|e| e.to_string())?;
        worst_rk = worst_rk.max(gap(rk, geo));
        worst_geo = worst_geo.max(gap(geo, closed));
    }
    check(
        worst_rk < 1e-8 && worst_geo < 1e-12,
        format!("max |θ_RK4 − θ_geo| {worst_rk:.2e}, max |θ_geo − θ_closed| {worst_geo:.2e}"),
    )
}

fn monte_carlo() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for rho in [0.5, 2.0] {
        let mc = mc_estimate_dcs(rho, 10_000_000, 256, 7).map_err(|e| e.to_string())?;
        let w = mc.bin_width();
        let (mut nonempty, mut inside) = (0, 0);
        for (i, &count) in mc.counts.iter().enumerate() {
            if count == 0 {
                continue;
            }
            nonempty += 1;
            let (a, b) = (mc.bin_edges[i], mc.bin_edges[i + 1]);
            let exact = cross_section_between(a, b, rho).map_err(|e| e.to_string())?.value / w;
            if (mc.dcs_estimate[i] - exact).abs() <= 4.0 * mc.std_error[i] {
                inside += 1;
            }
        }
        let frac = inside as f64 / nonempty as f64;
        ok &= frac >= 0.99;
        let (_, sigma_minus) = mc.sigma_split();
        if rho == 2.0 {
            ok &= sigma_minus == 0.0;
        }
        details.push(format!(
            "ρ_L={rho}: {inside}/{nonempty} bins within 4σ, σ₋={sigma_minus}"
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    details.push(format!("{secs:.1}s"));
    check(ok, details.join("; "))
}

fn quantum_symmetry() -> Outcome {
    let mut mismatches = 0;
    for &(s_p, s_phi) in &[(1e-3, 1e-3), (0.7, 2.1), (5.0, 0.01), (40.0, -3.0)] {
        for k in 0..1024 {
            let theta = TAU * (k as f64 + 0.5) / 1024.0;
            let a = QuantumDcsInput::new(theta, s_p, s_phi).map_err(|e| e.to_string())?;
            let b = QuantumDcsInput::new(TAU - theta, s_p, s_phi).map_err(|e| e.to_string())?;
            if dcs_ab(&a).to_bits() != dcs_ab(&b).to_bits() || dcs_born(&a).to_bits() != dcs_born(&b).to_bits() {
                mismatches += 1;
            }
        }
    }
    check(
        mismatches == 0,
        format!("{mismatches} bitwise mismatches over 4×1024 points"),
    )
}

fn consistency_chain() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..=256 {
        let theta = PI / 4.0 + 1.5 * PI * k as f64 / 256.0;
        let q = QuantumDcsInput::new(theta, 1e-3, 1e-3).map_err(|e| e.to_string())?;
        worst = worst.max(rel(dcs_born(&q), dcs_ab(&q)));
    }
    let q = QuantumDcsInput::new(0.01, 1.0, 0.01).map_err(|e| e.to_string())?;
    let ll = rel(dcs_ll_small_angle(&q), dcs_ab(&q));
    check(
        worst < 0.01 && ll < 0.01,
        format!("max |Born/AB − 1| {worst:.2e}; |LL/AB − 1| {ll:.2e}"),
    )
}

fn planck_limit() -> Outcome {
    let phys = PhysicalParams::new(1.0, TAU, 1.0, 1.0, 1.0, 1e-2, 1.0).map_err(|e| e.to_string())?;
    let grid: Vec<f64> = (0..=40).map(|i| 10f64.powf(-1.0 - 2.0 * i as f64 / 40.0)).collect();
    let scan = hbar_scan(&phys, 1.0, &grid).map_err(|e| e.to_string())?;
    let flat = scan.classical_values.iter().all(|&c| c == scan.classical_values[0]);
    check(
        (scan.fitted_slope - 2.0).abs() <= 0.02 && flat && scan.classical_values[0] > 0.0,
        format!(
            "envelope slope {:.4}; classical DCS constant = {flat} ({:.6})",
            scan.fitted_slope, scan.classical_values[0]
        ),
    )
}

fn dirac_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut worst_pol: f64 = 0.0;
    for &(s_p, s_phi) in &[(0.5, 0.01), (5.0, 0.01)] {
        for k in 0..64 {
            let theta = TAU * (k as f64 + 0.5) / 64.0;
            let born = dcs_born(&QuantumDcsInput::new(theta, s_p, s_phi).map_err(|e| e.to_string())?);
            let unpol = m1_dcs(theta, s_p, s_phi, false).map_err(|e| e.to_string())?.dcs;
            let pol = m1_dcs(theta, s_p, s_phi, true).map_err(|e| e.to_string())?.dcs;
            worst = worst.max(rel(unpol, born));
            worst_pol = worst_pol.max(rel(pol, unpol));
        }
    }
    check(
        worst < 1e-8 && worst_pol < 1e-8,
        format!("max |m1/Born − 1| {worst:.2e}; polarized vs unpolarized {worst_pol:.2e}"),
    )
}

fn power_counting() -> Outcome {
    let powers: Vec<i32> = (1..=4)
        .map(|k| hbar_power(k, 0))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let grid: Vec<f64> = (0..=12).map(|i| 2f64.powi(-i)).collect();
    let second = hbar_scaling_check(2, &grid).map_err(|e| e.to_string())?;
    let ratio = second.ratio_exponent.expect("second order reports a ratio");
    check(
        powers.iter().all(|&p| p == 1) && ratio.abs() <= 0.02,
        format!("hbar_power(1..4, 0) = {powers:?}; M2/M1 exponent {ratio:.2e}"),
    )
}

fn special_functions() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut at = 0.0;
    for i in 0..=5000 {
        let x = 0.01 * i as f64;
        let d = (bessel_j1(x) - common::bessel_j1_reference(x)).abs();
        if d > worst {
            worst = d;
            at = x;
        }
    }
    check(
        worst < 1e-10,
        format!("max |J₁ − series oracle| on [0, 50]: {worst:.2e} at x={at}"),
    )
}

fn removable_singularity() -> Outcome {
    // The DCS has slope −ρ_L/2 at π, so a single evaluation at π − h differs
    // from the limit by ~ρ_L h/2. The limit is estimated from π ± h.
    let h = 1e-6;
    let mut worst_exact: f64 = 0.0;
    let mut worst_limit: f64 = 0.0;
    let mut worst_one_sided: f64 = 0.0;
    for i in 1..=19 {
        let rho = 0.05 * i as f64;
        let at_pi = dcs_classical(PI, rho).map_err(|e| e.to_string())?;
        let lo = dcs_classical(PI - h, rho).map_err(|e| e.to_string())?;
        let hi = dcs_classical(PI + h, rho).map_err(|e| e.to_string())?;
        worst_exact = worst_exact.max((at_pi - (1.0 - rho * rho).sqrt() / 2.0).abs());
        worst_limit = worst_limit.max((at_pi - 0.5 * (lo + hi)).abs());
        worst_one_sided = worst_one_sided.max((lo - at_pi).abs());
    }
    check(
        worst_exact < 1e-9 && worst_limit < 1e-9,
        format!(
            "|DCS(π) − √(1−ρ²)/2| {worst_exact:.1e}; vs limit from π±1e-6 {worst_limit:.1e} (one-sided offset {worst_one_sided:.1e})"
        ),
    )
}

fn regulated_total() -> Outcome {
    let (s_p, s_phi) = (0.7, 1.3);
    let mut worst: f64 = 0.0;
    let mut prev: Option<f64> = None;
    let mut closed_form: f64 = 0.0;
    let mut grows = true;
    let mut t = 0.2;
    for _ in 0..8 {
        let v = partial_total_cross_section(QuantumDcs::AharonovBohm, s_p, s_phi, t)
            .map_err(|e| e.to_string())?
            .value;
        closed_form = closed_form.max(rel(v, ab_regulated_total(s_p, s_phi, t)));
        if let Some(p) = prev {
            worst = worst.max((v / p - 2.0f64).abs() / 2.0);
            grows &= v > p;
        }
        prev = Some(v);
        t /= 2.0;
    }
    let born_a = partial_total_cross_section(QuantumDcs::Born, 1e-3, 1e-3, 0.02)
        .map_err(|e| e.to_string())?
        .value;
    let born_b = partial_total_cross_section(QuantumDcs::Born, 1e-3, 1e-3, 0.01)
        .map_err(|e| e.to_string())?
        .value;
    grows &= born_b > born_a;
    check(
        worst < 0.05 && grows && closed_form < 1e-8,
        format!("max |σ(θ/2)/σ(θ) − 2|/2 = {worst:.2e}; closed form agreement {closed_form:.1e}; Born grows = {grows}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("classical total cross section is 2R", total_cross_section),
        ("asymmetry A(ρ_L) = min(ρ_L, 1)", asymmetry_law),
        ("RK4 and geometric trajectories agree", trajectory_oracle),
        ("Monte Carlo reproduces the analytic DCS", monte_carlo),
        ("quantum DCS mirror symmetry is bit-exact", quantum_symmetry),
        ("Born → AB → small-angle consistency", consistency_chain),
        ("Born envelope scales as ħ², classical DCS ħ-free", planck_limit),
        ("Dirac first-order amplitude reproduces Born", dirac_oracle),
        ("ħ power counting", power_counting),
        ("J₁ against exact series", special_functions),
        ("θ = π is a removable singularity", removable_singularity),
        ("regulated quantum total cross section diverges", regulated_total),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
