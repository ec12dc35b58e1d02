//! Brute-force classical oracle.
//!
//! Two propagators trace a particle through the solenoid without using the
//! inverted cross-section formulas: an exact chord/arc construction and an
//! adaptive RK4 integration of the Lorentz force. A Monte Carlo estimator
//! histograms exit angles for a uniform beam.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classical::reduce_angle;
use crate::error::{require, require_finite, Error, Result};

pub type Vec2 = [f64; 2];

fn norm(v: Vec2) -> f64 {
    v[0].hypot(v[1])
}

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

/// Quarter turn counter-clockwise.
fn rot90(v: Vec2) -> Vec2 {
    [-v[1], v[0]]
}

/// One particle's passage, lengths in units of R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trajectory {
    pub entry: Vec2,
    pub exit: Vec2,
    pub arc_center: Vec2,
    /// Direction of the outgoing velocity, in `[0, 2π)`.
    pub theta: f64,
}

fn check_inputs(rho_b: f64, rho_l: f64) -> Result<()> {
    require_finite("rho_b", rho_b)?;
    require_finite("rho_l", rho_l)?;
    require(rho_b.abs() <= 1.0, "rho_b", rho_b, "particle misses the solenoid")?;
    require(rho_l != 0.0, "rho_l", rho_l, "must be non-zero")
}

fn entry_and_center(rho_b: f64, rho_l: f64) -> (Vec2, Vec2) {
    let x = -(1.0 - rho_b * rho_b).sqrt();
    ([x, rho_b], [x, rho_b + rho_l])
}

/// Exit direction of a particle at `r` on an arc about `center`. Dividing by
/// `rho_l` picks the sense of rotation.
fn exit_direction(r: Vec2, center: Vec2, rho_l: f64) -> f64 {
    let v = rot90(sub(r, center));
    reduce_angle((v[1] / rho_l).atan2(v[0] / rho_l))
}

/// Intersects the Larmor circle with the unit circle in closed form.
pub fn propagate_geometric(rho_b: f64, rho_l: f64) -> Result<Trajectory> {
    check_inputs(rho_b, rho_l)?;
    let (entry, center) = entry_and_center(rho_b, rho_l);
    let chord = -entry[0];
    let denom = 1.0 + 2.0 * rho_b * rho_l + rho_l * rho_l;
    let exit = if denom == 0.0 {
        // the orbit coincides with the boundary; the particle only grazes it
        entry
    } else {
        [
            chord * (rho_l * rho_l - 1.0) / denom,
            rho_b - 2.0 * (rho_b - 1.0) * (rho_b + 1.0) * rho_l / denom,
        ]
    };
    Ok(Trajectory {
        entry,
        exit,
        arc_center: center,
        theta: exit_direction(exit, center, rho_l),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RkTrajectory {
    pub trajectory: Trajectory,
    pub steps: usize,
    pub rejected_steps: usize,
    /// Relative change of |p| between entry and exit.
    pub speed_drift: f64,
    /// Path length inside the solenoid, units of R.
    pub path_length: f64,
}

#[derive(Debug, Clone, Copy)]
struct State {
    r: Vec2,
    v: Vec2,
}

/// Unit-speed motion with curvature `1/rho_l`: `dv/ds = rot90(v) / ρ_L`.
/// This is `dp/dt = −(e/mc) p × B` with lengths in units of R and time
/// replaced by arc length.
fn rk4_step(s: State, h: f64, kappa: f64) -> State {
    let acc = |v: Vec2| [-v[1] * kappa, v[0] * kappa];
    let k1v = acc(s.v);
    let k1r = s.v;
    let v2 = [s.v[0] + 0.5 * h * k1v[0], s.v[1] + 0.5 * h * k1v[1]];
    let k2v = acc(v2);
    let k2r = v2;
    let v3 = [s.v[0] + 0.5 * h * k2v[0], s.v[1] + 0.5 * h * k2v[1]];
    let k3v = acc(v3);
    let k3r = v3;
    let v4 = [s.v[0] + h * k3v[0], s.v[1] + h * k3v[1]];
    let k4v = acc(v4);
    let k4r = v4;
    let comb = |a: f64, b: f64, c: f64, d: f64| h / 6.0 * (a + 2.0 * b + 2.0 * c + d);
    State {
        r: [
            s.r[0] + comb(k1r[0], k2r[0], k3r[0], k4r[0]),
            s.r[1] + comb(k1r[1], k2r[1], k3r[1], k4r[1]),
        ],
        v: [
            s.v[0] + comb(k1v[0], k2v[0], k3v[0], k4v[0]),
            s.v[1] + comb(k1v[1], k2v[1], k3v[1], k4v[1]),
        ],
    }
}

/// Step doubling: one step of `h` against two of `h/2`. Returns the
/// Richardson-corrected state and the error estimate.
fn doubled_step(s: State, h: f64, kappa: f64) -> (State, f64) {
    let big = rk4_step(s, h, kappa);
    let half = rk4_step(rk4_step(s, 0.5 * h, kappa), 0.5 * h, kappa);
    let mut err: f64 = 0.0;
    let mut out = half;
    for i in 0..2 {
        let dr = half.r[i] - big.r[i];
        let dv = half.v[i] - big.v[i];
        err = err.max(dr.abs()).max(dv.abs());
        out.r[i] += dr / 15.0;
        out.v[i] += dv / 15.0;
    }
    (out, err / 15.0)
}

fn radius_excess(s: &State) -> f64 {
    s.r[0] * s.r[0] + s.r[1] * s.r[1] - 1.0
}

const EXIT_RADIUS_TOL: f64 = 1e-12;
const MIN_STEP: f64 = 1e-15;

/// Integrates the Lorentz force with adaptive RK4 until the particle leaves
/// the unit disk. The exit point is located by bisecting the final step to
/// `1e-12` in radius. `tol` bounds the local error per step.
pub fn propagate_rk4(rho_b: f64, rho_l: f64, tol: f64) -> Result<RkTrajectory> {
    check_inputs(rho_b, rho_l)?;
    require(tol > 0.0 && tol.is_finite(), "tol", tol, "must be positive")?;
    let (entry, center) = entry_and_center(rho_b, rho_l);
    let kappa = 1.0 / rho_l;
    let inward = -entry[0];
    if inward == 0.0 {
        // tangent at the top or bottom of the disk: never enters
        return Ok(RkTrajectory {
            trajectory: Trajectory {
                entry,
                exit: entry,
                arc_center: center,
                theta: 0.0,
            },
            steps: 0,
            rejected_steps: 0,
            speed_drift: 0.0,
            path_length: 0.0,
        });
    }

    let mut state = State {
        r: entry,
        v: [1.0, 0.0],
    };
    let mut s = 0.0;
    let mut h = (0.1 * inward / (1.0 + kappa.abs())).min(0.05 * rho_l.abs()).min(0.05);
    let mut steps = 0;
    let mut rejected = 0;

    let partial = |state: &State| Trajectory {
        entry,
        exit: state.r,
        arc_center: center,
        theta: reduce_angle(state.v[1].atan2(state.v[0])),
    };

    loop {
        if h < MIN_STEP {
            return Err(Error::StepUnderflow {
                time: s,
                partial: Box::new(partial(&state)),
            });
        }
        let (next, err) = doubled_step(state, h, kappa);
        if err > tol {
            rejected += 1;
            h *= (0.9 * (tol / err).powf(0.2)).clamp(0.1, 0.5);
            continue;
        }
        if radius_excess(&next) >= 0.0 {
            if s == 0.0 {
                // overshot the whole chord from the entry point
                rejected += 1;
                h *= 0.5;
                continue;
            }
            // bisect the fraction of this step at which the boundary is crossed
            let (mut lo, mut hi) = (0.0, 1.0);
            let mut out = next;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let trial = doubled_step(state, mid * h, kappa).0;
                let g = radius_excess(&trial);
                if g >= 0.0 {
                    hi = mid;
                    out = trial;
                } else {
                    lo = mid;
                }
                if g.abs() < EXIT_RADIUS_TOL || hi - lo < 1e-17 {
                    out = trial;
                    break;
                }
            }
            steps += 1;
            s += hi * h;
            let speed = norm(out.v);
            return Ok(RkTrajectory {
                trajectory: Trajectory {
                    entry,
                    exit: out.r,
                    arc_center: center,
                    theta: reduce_angle(out.v[1].atan2(out.v[0])),
                },
                steps,
                rejected_steps: rejected,
                speed_drift: (speed - 1.0).abs(),
                path_length: s,
            });
        }
        state = next;
        s += h;
        steps += 1;
        let grow = if err == 0.0 {
            4.0
        } else {
            (0.9 * (tol / err).powf(0.2)).clamp(1.0, 4.0)
        };
        h = (h * grow).min(0.25 * rho_l.abs()).min(0.5);
    }
}

/// Histogram of exit angles with a per-bin cross-section estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularDistribution {
    /// `n_bins + 1` edges spanning `[0, 2π]`.
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// `2·count / (n·Δθ)`, units of R.
    pub dcs_estimate: Vec<f64>,
    pub std_error: Vec<f64>,
    pub n_samples: u64,
    /// Samples that left into `[0, π)`.
    pub n_upper: u64,
    pub seed: u64,
    pub rho_l: f64,
}

impl AngularDistribution {
    pub fn bin_width(&self) -> f64 {
        TAU / self.counts.len() as f64
    }

    /// `Σ dcs·Δθ`; equals 2 up to rounding since every sample hits the disk.
    pub fn integral(&self) -> f64 {
        let w = self.bin_width();
        self.dcs_estimate.iter().map(|d| d * w).sum()
    }

    /// Empirical `(σ₊, σ₋)` in units of R.
    pub fn sigma_split(&self) -> (f64, f64) {
        let n = self.n_samples as f64;
        let up = 2.0 * self.n_upper as f64 / n;
        (up, 2.0 - up)
    }

    /// Empirical asymmetry and its binomial standard error.
    pub fn asymmetry(&self) -> (f64, f64) {
        let n = self.n_samples as f64;
        let a = (2.0 * self.n_upper as f64 - n) / n;
        (a, ((1.0 - a * a) / n).sqrt())
    }
}

const CHUNK: u64 = 1 << 16;

/// Sample `i` always consumes word positions `[2i, 2i+2)` of one ChaCha8
/// stream, so results do not depend on how chunks are scheduled.
fn sample_chunk(rho_l: f64, seed: u64, start: u64, end: u64, n_bins: usize) -> (Vec<u64>, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(2 * start as u128);
    let mut counts = vec![0u64; n_bins];
    let mut upper = 0;
    let width = TAU / n_bins as f64;
    for _ in start..end {
        // 53 random bits → uniform on [-1, 1]
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let rho_b = 2.0 * u - 1.0;
        let theta = propagate_geometric(rho_b, rho_l)
            .expect("rho_b sampled inside [-1, 1]")
            .theta;
        let bin = ((theta / width) as usize).min(n_bins - 1);
        counts[bin] += 1;
        if theta < PI {
            upper += 1;
        }
    }
    (counts, upper)
}

fn check_mc(rho_l: f64, n_samples: u64, n_bins: usize) -> Result<()> {
    require_finite("rho_l", rho_l)?;
    require(rho_l != 0.0, "rho_l", rho_l, "must be non-zero")?;
    require(
        n_samples >= 1,
        "n_samples",
        n_samples as f64,
        "need at least one sample",
    )?;
    require(n_bins >= 8, "n_bins", n_bins as f64, "need at least 8 bins")
}

fn run_mc(rho_l: f64, n_samples: u64, n_bins: usize, seed: u64) -> AngularDistribution {
    let n_chunks = n_samples.div_ceil(CHUNK);
    let (counts, n_upper) = (0..n_chunks)
        .into_par_iter()
        .map(|c| sample_chunk(rho_l, seed, c * CHUNK, ((c + 1) * CHUNK).min(n_samples), n_bins))
        .reduce(
            || (vec![0u64; n_bins], 0),
            |(mut a, ua), (b, ub)| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                (a, ua + ub)
            },
        );
    let width = TAU / n_bins as f64;
    let n = n_samples as f64;
    let dcs_estimate = counts.iter().map(|&k| 2.0 * k as f64 / (n * width)).collect();
    let std_error = counts
        .iter()
        .map(|&k| {
            let p = k as f64 / n;
            2.0 * (n * p * (1.0 - p)).sqrt() / (n * width)
        })
        .collect();
    AngularDistribution {
        bin_edges: (0..=n_bins).map(|i| width * i as f64).collect(),
        counts,
        dcs_estimate,
        std_error,
        n_samples,
        n_upper,
        seed,
        rho_l,
    }
}

/// Monte Carlo estimate of `dσ/dθ` for a uniform beam, `rho_b ~ U[-1, 1]`,
/// each particle carrying weight `2R/n`. Runs on the global rayon pool.
pub fn mc_estimate_dcs(rho_l: f64, n_samples: u64, n_bins: usize, seed: u64) -> Result<AngularDistribution> {
    check_mc(rho_l, n_samples, n_bins)?;
    Ok(run_mc(rho_l, n_samples, n_bins, seed))
}

/// As [`mc_estimate_dcs`] on a dedicated pool of `workers` threads.
pub fn mc_estimate_dcs_with_workers(
    rho_l: f64,
    n_samples: u64,
    n_bins: usize,
    seed: u64,
    workers: usize,
) -> Result<AngularDistribution> {
    check_mc(rho_l, n_samples, n_bins)?;
    require(workers >= 1, "workers", workers as f64, "need at least one worker")?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool construction");
    Ok(pool.install(|| run_mc(rho_l, n_samples, n_bins, seed)))
}
