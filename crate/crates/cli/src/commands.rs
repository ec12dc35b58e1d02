use std::f64::consts::TAU;

use solscat::classical::{asymmetry, asymmetry_analytic, cross_section_between, dcs_classical, theta_max};
use solscat::dirac::m1_dcs;
use solscat::fit::power_law;
use solscat::quantum::{dcs_ab, dcs_born, dcs_born_hbar_asymptotic, dcs_ll_small_angle, hbar_scan, QuantumDcsInput};
use solscat::trajsim::{mc_estimate_dcs, mc_estimate_dcs_with_workers};

use crate::args::{AmplitudeCommand, AsymmetryCommand, GridCommand, LimitScanCommand, McCommand, Parameterization};
use crate::error::CliError;
use crate::table::ScanResult;

/// A finished table plus what to tell the user about it.
#[derive(Debug)]
pub struct Report {
    pub table: ScanResult,
    pub summary: Vec<String>,
    /// Outcome of the command's consistency check.
    pub check_passed: bool,
}

fn base_table(command: &str, params: Option<&Parameterization>, columns: &[&str]) -> ScanResult {
    let mut t = ScanResult::new(columns.iter().copied());
    t.meta("command", command);
    t.meta("solscat_version", env!("CARGO_PKG_VERSION"));
    if let Some(p) = params {
        for (k, v) in p.describe() {
            t.meta(k, v);
        }
    }
    t
}

pub fn classical(cmd: &GridCommand) -> Result<Report, CliError> {
    let params = cmd.params.resolve()?;
    let rho = params.rho_l()?;
    let grid = cmd.grid.grid()?;
    let mut t = base_table("classical", Some(&params), &["theta", "dcs_classical"]);
    t.meta("rho_l", rho);
    for &theta in &grid {
        t.push(vec![theta, dcs_classical(theta, rho)?]);
    }
    let total = cross_section_between(0.0, TAU, rho)?.value;
    t.meta("integral", total);
    if rho.abs() > 1.0 {
        t.meta("theta_max", theta_max(rho.abs())?);
    }
    let passed = ((total - 2.0) / 2.0).abs() < 1e-3;
    Ok(Report {
        table: t,
        summary: vec![format!("total cross section over [0, 2π): {total:.10} R")],
        check_passed: passed,
    })
}

pub fn quantum(cmd: &GridCommand) -> Result<Report, CliError> {
    let params = cmd.params.resolve()?;
    let (s_p, s_phi) = params.actions()?;
    let grid = cmd.grid.grid()?;
    let mut t = base_table(
        "quantum",
        Some(&params),
        &["theta", "dcs_ab", "dcs_ll", "dcs_born", "dcs_born_asymptotic"],
    );
    t.meta("s_p", s_p).meta("s_phi", s_phi);
    let mut symmetric = true;
    for &theta in &grid {
        let q = QuantumDcsInput::new(theta, s_p, s_phi)?;
        let mirror = QuantumDcsInput::new(TAU - theta, s_p, s_phi)?;
        symmetric &= dcs_ab(&q) == dcs_ab(&mirror) && dcs_born(&q) == dcs_born(&mirror);
        t.push(vec![
            theta,
            dcs_ab(&q),
            dcs_ll_small_angle(&q),
            dcs_born(&q),
            dcs_born_hbar_asymptotic(&q).value,
        ]);
    }
    Ok(Report {
        table: t,
        summary: vec![format!("{} angles, mirror symmetric: {symmetric}", grid.len())],
        check_passed: symmetric,
    })
}

pub fn compare(cmd: &GridCommand) -> Result<Report, CliError> {
    let params = cmd.params.resolve()?;
    let (s_p, s_phi) = params.actions()?;
    let rho = params.rho_l()?;
    let grid = cmd.grid.grid()?;
    let mut t = base_table(
        "compare",
        Some(&params),
        &["theta", "dcs_classical", "dcs_ab", "dcs_born"],
    );
    t.meta("rho_l", rho).meta("s_p", s_p).meta("s_phi", s_phi);
    for &theta in &grid {
        let q = QuantumDcsInput::new(theta, s_p, s_phi)?;
        t.push(vec![theta, dcs_classical(theta, rho)?, dcs_ab(&q), dcs_born(&q)]);
    }
    let classical = asymmetry(rho)?;
    t.meta("classical_asymmetry", classical.asymmetry);
    Ok(Report {
        table: t,
        summary: vec![format!(
            "classical asymmetry {:.6}; quantum cross sections are symmetric",
            classical.asymmetry
        )],
        check_passed: true,
    })
}

pub fn mc(cmd: &McCommand) -> Result<Report, CliError> {
    let params = cmd.params.resolve()?;
    let rho = params.rho_l()?;
    let dist = match cmd.workers {
        Some(w) => mc_estimate_dcs_with_workers(rho, cmd.samples, cmd.bins, cmd.seed, w)?,
        None => mc_estimate_dcs(rho, cmd.samples, cmd.bins, cmd.seed)?,
    };
    let mut t = base_table(
        "mc",
        Some(&params),
        &["theta_lo", "theta_hi", "count", "dcs_mc", "std_error", "dcs_exact"],
    );
    t.meta("rho_l", rho)
        .meta("samples", cmd.samples)
        .meta("bins", cmd.bins)
        .meta("seed", cmd.seed);
    let w = dist.bin_width();
    let (mut nonempty, mut inside) = (0u64, 0u64);
    for i in 0..dist.counts.len() {
        let (a, b) = (dist.bin_edges[i], dist.bin_edges[i + 1]);
        let exact = cross_section_between(a, b, rho)?.value / w;
        if dist.counts[i] > 0 {
            nonempty += 1;
            if (dist.dcs_estimate[i] - exact).abs() <= 4.0 * dist.std_error[i] {
                inside += 1;
            }
        }
        t.push(vec![
            a,
            b,
            dist.counts[i] as f64,
            dist.dcs_estimate[i],
            dist.std_error[i],
            exact,
        ]);
    }
    let (sp, sm) = dist.sigma_split();
    let (a, a_err) = dist.asymmetry();
    let frac = inside as f64 / nonempty.max(1) as f64;
    t.meta("sigma_plus", sp)
        .meta("sigma_minus", sm)
        .meta("asymmetry", a)
        .meta("asymmetry_std_error", a_err)
        .meta("fraction_within_4sigma", frac);
    Ok(Report {
        table: t,
        summary: vec![
            format!("σ₊ = {sp:.6} R, σ₋ = {sm:.6} R, A = {a:.6} ± {a_err:.1e}"),
            format!("{inside}/{nonempty} occupied bins within 4 standard errors of the analytic DCS"),
        ],
        check_passed: frac >= 0.99,
    })
}

fn parse_sweep(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Parameters(format!("--sweep expects MIN:MAX:COUNT, got `{s}`"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.parse().map_err(|_| bad())?;
    let hi: f64 = hi.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 || lo.is_nan() || hi.is_nan() || hi < lo {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

pub fn asymmetry_cmd(cmd: &AsymmetryCommand) -> Result<Report, CliError> {
    let (values, params) = match &cmd.sweep {
        Some(s) => (parse_sweep(s)?, None),
        None => {
            let p = cmd.params.resolve()?;
            (vec![p.rho_l()?], Some(p))
        }
    };
    let mut t = base_table(
        "asymmetry",
        params.as_ref(),
        &[
            "rho_l",
            "sigma_plus",
            "sigma_minus",
            "sigma_total",
            "asymmetry",
            "asymmetry_analytic",
        ],
    );
    let mut worst: f64 = 0.0;
    let mut summary = Vec::new();
    for rho in values {
        let r = asymmetry(rho)?;
        let expected = asymmetry_analytic(rho);
        worst = worst.max((r.asymmetry - expected).abs());
        t.push(vec![
            rho,
            r.sigma_plus,
            r.sigma_minus,
            r.sigma_total,
            r.asymmetry,
            expected,
        ]);
        if t.rows.len() <= 20 {
            summary.push(format!("ρ_L = {rho}: A = {:.10}", r.asymmetry));
        }
    }
    t.meta("max_deviation", worst);
    Ok(Report {
        table: t,
        summary,
        check_passed: worst < 1e-3,
    })
}

pub fn limit_scan(cmd: &LimitScanCommand) -> Result<Report, CliError> {
    let params = cmd.params.resolve()?;
    let Parameterization::Physical(phys) = params else {
        return Err(CliError::Parameters(
            "limit-scan rescales ħ at fixed e, Φ, p, R, c and needs the physical parameters".into(),
        ));
    };
    let (lo, hi, n) = (cmd.lambda_min, cmd.lambda_max, cmd.lambda_steps);
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(CliError::Parameters(format!(
            "need 0 < lambda-min < lambda-max and at least two steps (got {lo}, {hi}, {n})"
        )));
    }
    let grid: Vec<f64> = (0..n)
        .map(|i| (hi.ln() + (lo.ln() - hi.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect();
    let scan = hbar_scan(&phys, cmd.theta, &grid)?;
    let fit = power_law(&scan.lambda_grid, &scan.envelope_values)
        .ok_or_else(|| CliError::Parameters("envelope cannot be fitted".into()))?;
    let mut t = base_table(
        "limit-scan",
        Some(&params),
        &[
            "lambda",
            "hbar",
            "s_p",
            "s_phi",
            "dcs_born",
            "envelope",
            "dcs_classical",
        ],
    );
    t.meta("theta", cmd.theta)
        .meta("fitted_slope", scan.fitted_slope)
        .meta("fit_log_prefactor", fit.log_prefactor)
        .meta("fit_rms_residual", scan.fit_rms_residual);
    for i in 0..scan.lambda_grid.len() {
        let l = scan.lambda_grid[i];
        t.push(vec![
            l,
            phys.hbar * l,
            scan.s_p[i],
            scan.s_phi[i],
            scan.dcs_values[i],
            scan.envelope_values[i],
            scan.classical_values[i],
        ]);
    }
    let flat = scan.classical_values.iter().all(|&c| c == scan.classical_values[0]);
    Ok(Report {
        table: t,
        summary: vec![
            format!("Born envelope ∝ λ^{:.4}", scan.fitted_slope),
            format!(
                "classical DCS at θ = {}: {:.10} R (λ-independent: {flat})",
                cmd.theta, scan.classical_values[0]
            ),
        ],
        check_passed: (scan.fitted_slope - 2.0).abs() <= 0.02 && flat,
    })
}

pub fn amplitude(cmd: &AmplitudeCommand) -> Result<Report, CliError> {
    let params = cmd.params.resolve()?;
    let (s_p, s_phi) = params.actions()?;
    let grid = cmd.grid.grid()?;
    let mut t = base_table("amplitude", Some(&params), &["theta", "dcs_m1", "dcs_born", "rel_dev"]);
    t.meta("s_p", s_p).meta("s_phi", s_phi).meta("polarized", cmd.polarized);
    let mut worst: f64 = 0.0;
    for &theta in &grid {
        let m1 = m1_dcs(theta, s_p, s_phi, cmd.polarized)?.dcs;
        let born = dcs_born(&QuantumDcsInput::new(theta, s_p, s_phi)?);
        let dev = if born == 0.0 {
            (m1 - born).abs()
        } else {
            ((m1 - born) / born).abs()
        };
        worst = worst.max(dev);
        t.push(vec![theta, m1, born, dev]);
    }
    t.meta("max_rel_dev", worst);
    Ok(Report {
        table: t,
        summary: vec![format!(
            "max relative deviation of the spinor amplitude from Born: {worst:.3e}"
        )],
        check_passed: worst <= cmd.tolerance,
    })
}
