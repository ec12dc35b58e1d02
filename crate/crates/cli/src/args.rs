use std::f64::consts::{PI, TAU};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use solscat::params::PhysicalParams;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "solscat",
    version,
    about = "Scattering of charged particles by a finite solenoid",
    args_override_self = true
)]
pub struct Cli {
    /// key=value file supplying defaults for any flag; flags on the command
    /// line win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical dσ/dθ on an angle grid.
    Classical(GridCommand),
    /// Aharonov–Bohm, small-angle and Born cross sections.
    Quantum(GridCommand),
    /// Monte Carlo histogram of classical trajectories.
    Mc(McCommand),
    /// Upper/lower half-plane split and asymmetry of the classical DCS.
    Asymmetry(AsymmetryCommand),
    /// Born cross section as ħ → 0 at fixed physical parameters.
    LimitScan(LimitScanCommand),
    /// Classical and quantum cross sections on one grid.
    Compare(GridCommand),
    /// Spinor first-order amplitude against the closed-form Born result.
    Amplitude(AmplitudeCommand),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classical(_) => "classical",
            Command::Quantum(_) => "quantum",
            Command::Mc(_) => "mc",
            Command::Asymmetry(_) => "asymmetry",
            Command::LimitScan(_) => "limit-scan",
            Command::Compare(_) => "compare",
            Command::Amplitude(_) => "amplitude",
        }
    }

    pub const NAMES: [&'static str; 7] = [
        "classical",
        "quantum",
        "mc",
        "asymmetry",
        "limit-scan",
        "compare",
        "amplitude",
    ];

    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Classical(c) | Command::Quantum(c) | Command::Compare(c) => &c.output,
            Command::Mc(c) => &c.output,
            Command::Asymmetry(c) => &c.output,
            Command::LimitScan(c) => &c.output,
            Command::Amplitude(c) => &c.output,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Larmor radius in units of the solenoid radius.
    #[arg(long, allow_hyphen_values = true)]
    pub rho_l: Option<f64>,
    /// pR/ħ
    #[arg(long, requires = "s_phi")]
    pub s_p: Option<f64>,
    /// eΦ/(ħc)
    #[arg(long, requires = "s_p", allow_hyphen_values = true)]
    pub s_phi: Option<f64>,

    /// Charge e (Gaussian units); selects the physical parameterization.
    #[arg(long, allow_hyphen_values = true, help_heading = "Physical parameters")]
    pub charge: Option<f64>,
    #[arg(long, allow_hyphen_values = true, help_heading = "Physical parameters")]
    pub flux: Option<f64>,
    #[arg(long, help_heading = "Physical parameters")]
    pub momentum: Option<f64>,
    #[arg(long, help_heading = "Physical parameters")]
    pub radius: Option<f64>,
    #[arg(long, help_heading = "Physical parameters")]
    pub hbar: Option<f64>,
    #[arg(long, help_heading = "Physical parameters", default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long = "c", help_heading = "Physical parameters", default_value_t = 1.0)]
    pub speed_of_light: f64,
}

/// The one parameter set a run was given.
#[derive(Debug, Clone, PartialEq)]
pub enum Parameterization {
    RhoL(f64),
    Actions { s_p: f64, s_phi: f64 },
    Physical(PhysicalParams),
}

impl ParamArgs {
    pub fn resolve(&self) -> Result<Parameterization, CliError> {
        let physical = [self.charge, self.flux, self.momentum, self.radius, self.hbar];
        let any_physical = physical.iter().any(Option::is_some);
        let given = [self.rho_l.is_some(), self.s_p.is_some(), any_physical];
        match given.iter().filter(|&&g| g).count() {
            0 => Err(CliError::Parameters(
                "no parameters: give --rho-l, or --s-p with --s-phi, or the physical set --charge --flux --momentum --radius --hbar".into(),
            )),
            1 => {
                if let Some(r) = self.rho_l {
                    Ok(Parameterization::RhoL(r))
                } else if let (Some(s_p), Some(s_phi)) = (self.s_p, self.s_phi) {
                    Ok(Parameterization::Actions { s_p, s_phi })
                } else {
                    let names = ["--charge", "--flux", "--momentum", "--radius", "--hbar"];
                    let missing: Vec<&str> =
                        names.iter().zip(&physical).filter(|(_, v)| v.is_none()).map(|(n, _)| *n).collect();
                    if !missing.is_empty() {
                        return Err(CliError::Parameters(format!(
                            "physical parameters incomplete, missing {}",
                            missing.join(" ")
                        )));
                    }
                    let [e, phi, p, r, h] = physical.map(Option::unwrap);
                    Ok(Parameterization::Physical(PhysicalParams::new(
                        e,
                        phi,
                        p,
                        r,
                        self.mass,
                        h,
                        self.speed_of_light,
                    )?))
                }
            }
            _ => Err(CliError::Parameters(
                "give exactly one of --rho-l, --s-p/--s-phi, or physical parameters".into(),
            )),
        }
    }
}

impl Parameterization {
    pub fn rho_l(&self) -> Result<f64, CliError> {
        match self {
            Parameterization::RhoL(r) => Ok(*r),
            Parameterization::Actions { s_p, s_phi } => {
                if *s_phi == 0.0 {
                    return Err(CliError::Parameters("ρ_L is undefined for zero flux".into()));
                }
                Ok(PI * s_p / s_phi)
            }
            Parameterization::Physical(p) => Ok(p.rho_l()?),
        }
    }

    pub fn actions(&self) -> Result<(f64, f64), CliError> {
        match self {
            Parameterization::RhoL(_) => Err(CliError::Parameters(
                "quantum cross sections need --s-p/--s-phi or physical parameters; ρ_L alone does not fix ħ".into(),
            )),
            Parameterization::Actions { s_p, s_phi } => Ok((*s_p, *s_phi)),
            Parameterization::Physical(p) => {
                let d = p.to_dimensionless()?;
                Ok((d.s_p, d.s_phi))
            }
        }
    }

    /// `key=value` pairs describing the parameters, for table metadata.
    pub fn describe(&self) -> Vec<(&'static str, String)> {
        match self {
            Parameterization::RhoL(r) => vec![("rho_l", r.to_string())],
            Parameterization::Actions { s_p, s_phi } => vec![("s_p", s_p.to_string()), ("s_phi", s_phi.to_string())],
            Parameterization::Physical(p) => vec![
                ("charge", p.charge.to_string()),
                ("flux", p.flux.to_string()),
                ("momentum", p.momentum.to_string()),
                ("radius", p.radius.to_string()),
                ("mass", p.mass.to_string()),
                ("hbar", p.hbar.to_string()),
                ("c", p.c.to_string()),
            ],
        }
    }
}

/// Accepts a plain number or a multiple of π (`pi`, `2pi`, `pi/4`, `3*pi/2`).
/// Degrees are refused.
pub fn parse_radians(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    if t.ends_with("deg") || t.ends_with('°') || t.ends_with("degrees") || t.contains('°') {
        return Err(format!(
            "angles are in radians; `{s}` looks like degrees (use e.g. `pi/2` or `1.5708` for 90°)"
        ));
    }
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| format!("cannot read angle `{s}`"))?),
        None => (t.as_str(), 1.0),
    };
    let coeff = match num.strip_suffix("pi").map(|c| c.trim_end_matches('*')) {
        Some("") => 1.0,
        Some(c) => c.parse::<f64>().map_err(|_| format!("cannot read angle `{s}`"))?,
        None => return Err(format!("cannot read angle `{s}`")),
    };
    Ok(coeff * PI / den)
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Lower end of the angle grid, radians.
    #[arg(long, value_parser = parse_radians, default_value = "0")]
    pub theta_min: f64,
    /// Upper end of the angle grid, radians (at most 2π).
    #[arg(long, value_parser = parse_radians, default_value = "2pi")]
    pub theta_max: f64,
    /// Number of cells; angles are taken at cell midpoints.
    #[arg(long, default_value_t = 360)]
    pub theta_steps: usize,
}

impl GridArgs {
    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        let (a, b, n) = (self.theta_min, self.theta_max, self.theta_steps);
        if !(0.0..TAU).contains(&a) || !(b > a && b <= TAU) || n == 0 {
            return Err(CliError::Parameters(format!(
                "angle grid must satisfy 0 <= theta-min < theta-max <= 2π with at least one step (got {a}, {b}, {n})"
            )));
        }
        let h = (b - a) / n as f64;
        Ok((0..n).map(|k| a + (k as f64 + 0.5) * h).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; `-` for stdout. Defaults to `<command>.<format>` in
    /// $SOLSCAT_OUTPUT_DIR or the current directory.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also write a gnuplot script next to the table.
    #[arg(long)]
    pub plot: bool,
    /// Exit with status 1 if the command's consistency check fails.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GridCommand {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct McCommand {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 256)]
    pub bins: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; the result does not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AsymmetryCommand {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Sweep ρ_L linearly as MIN:MAX:COUNT instead of a single value.
    #[arg(long, value_name = "MIN:MAX:COUNT", conflicts_with_all = ["rho_l", "s_p", "charge"])]
    pub sweep: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LimitScanCommand {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Scattering angle, radians.
    #[arg(long, value_parser = parse_radians, default_value = "1")]
    pub theta: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub lambda_min: f64,
    #[arg(long, default_value_t = 1e-1)]
    pub lambda_max: f64,
    /// Log-spaced points between the λ bounds.
    #[arg(long, default_value_t = 41)]
    pub lambda_steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AmplitudeCommand {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Fix the initial spin instead of averaging.
    #[arg(long)]
    pub polarized: bool,
    /// Largest acceptable relative deviation for --check.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radians_parsing() {
        assert_eq!(parse_radians("1.5").unwrap(), 1.5);
        assert_eq!(parse_radians("pi").unwrap(), PI);
        assert_eq!(parse_radians("2pi").unwrap(), TAU);
        assert_eq!(parse_radians("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_radians("3*pi/2").unwrap(), 1.5 * PI);
        for bad in ["90deg", "90°", "45 deg", "1.2degrees"] {
            let e = parse_radians(bad).unwrap_err();
            assert!(e.contains("radians"), "{e}");
        }
        assert!(parse_radians("banana").is_err());
    }

    #[test]
    fn midpoint_grid() {
        let g = GridArgs {
            theta_min: 0.0,
            theta_max: TAU,
            theta_steps: 4,
        };
        assert_eq!(
            g.grid().unwrap(),
            vec![PI / 4.0, 3.0 * PI / 4.0, 5.0 * PI / 4.0, 7.0 * PI / 4.0]
        );
        let bad = GridArgs {
            theta_max: 7.0,
            ..g.clone()
        };
        assert!(bad.grid().is_err());
        assert!(GridArgs { theta_steps: 0, ..g }.grid().is_err());
    }
}
